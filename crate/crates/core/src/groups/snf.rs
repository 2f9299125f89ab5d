//! Smith normal form over the integers.

use alloc::vec;
use alloc::vec::Vec;

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

/// `left * original * right == diag`, with `left`, `right` unimodular and
/// the nonzero diagonal entries positive, each dividing the next.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diag: IntMatrix,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>, cols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix");
            data.extend(row);
        }
        IntMatrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0i64; self.cols];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o += x * self[(i, j)];
            }
        }
        out
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            let v = self[(src, j)];
            self[(dst, j)] += k * v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            let v = self[(i, src)];
            self[(i, dst)] += k * v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Smith normal form by repeated elimination with the smallest nonzero
    /// entry as pivot.
    pub fn smith(&self) -> SmithForm {
        let mut d = self.clone();
        let mut left = IntMatrix::identity(self.rows);
        let mut right = IntMatrix::identity(self.cols);
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            // pivot: minimal nonzero |entry| in the trailing block
            let mut best: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    let v = d[(i, j)].abs();
                    if v != 0 && best.is_none_or(|(bi, bj)| v < d[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            d.swap_rows(t, pi);
            left.swap_rows(t, pi);
            d.swap_cols(t, pj);
            right.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..d.rows {
                let q = d[(i, t)] / d[(t, t)];
                if q != 0 {
                    d.add_row(i, t, -q);
                    left.add_row(i, t, -q);
                }
                if d[(i, t)] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..d.cols {
                let q = d[(t, j)] / d[(t, t)];
                if q != 0 {
                    d.add_col(j, t, -q);
                    right.add_col(j, t, -q);
                }
                if d[(t, j)] != 0 {
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let p = d[(t, t)];
            let mut fix = None;
            'outer: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if d[(i, j)] % p != 0 {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            if let Some(i) = fix {
                d.add_row(t, i, 1);
                left.add_row(t, i, 1);
                continue;
            }
            if p < 0 {
                d.negate_row(t);
                left.negate_row(t);
            }
            t += 1;
        }
        SmithForm { diag: d, left, right }
    }

    /// Whether the row vector `v` is an integer combination of the rows.
    pub fn row_lattice_contains(&self, v: &[i64]) -> bool {
        assert_eq!(v.len(), self.cols);
        if v.iter().all(|&x| x == 0) {
            return true;
        }
        if self.rows == 0 {
            return false;
        }
        let s = self.smith();
        // rows(A) V = rows(D): test v V against the diagonal
        let w = s.right.apply_row(v);
        let factors = s.invariant_factors();
        for (j, &x) in w.iter().enumerate() {
            match factors.get(j) {
                Some(&d) if d != 0 => {
                    if x % d != 0 {
                        return false;
                    }
                }
                _ => {
                    if x != 0 {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl SmithForm {
    /// Nonzero diagonal entries in order.
    pub fn invariant_factors(&self) -> Vec<i64> {
        let n = self.diag.rows.min(self.diag.cols);
        (0..n).map(|i| self.diag[(i, i)]).take_while(|&x| x != 0).collect()
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.cols + j]
    }
}
