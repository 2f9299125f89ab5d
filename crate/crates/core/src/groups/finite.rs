//! Finite groups given by multiplication tables.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use super::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<alloc::string::String>,
}

impl FiniteGroup {
    /// Validates a Cayley table: closed, rows and columns are permutations,
    /// identity exists, associative.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::InvalidTable("empty table".into()));
        }
        for row in &table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(GroupError::InvalidTable("table is not square over 0..n".into()));
            }
            let mut seen = vec![false; n];
            for &x in row {
                if core::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidTable("row is not a permutation".into()));
                }
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for row in &table {
                if core::mem::replace(&mut seen[row[j]], true) {
                    return Err(GroupError::InvalidTable("column is not a permutation".into()));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::InvalidTable("not associative".into()));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == identity).expect("latin square has inverses"))
            .collect();
        let labels = (0..n).map(|i| alloc::format!("{i}")).collect();
        Ok(FiniteGroup { table, identity, inverse, labels })
    }

    /// ℤ_n with elements `0..n` under addition.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(table).expect("cyclic table is valid")
    }

    /// Symmetric group on `{1..k}`; elements are the permutations in
    /// lexicographic order of their image lists, product `(στ)(i) = σ(τ(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index: BTreeMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| {
                        let st: Vec<usize> = (0..k).map(|i| s[t[i]]).collect();
                        index[&st]
                    })
                    .collect()
            })
            .collect();
        let mut g = FiniteGroup::from_table(table).expect("symmetric table is valid");
        g.labels = perms.iter().map(|p| cycle_notation(p)).collect();
        g
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[alloc::string::String] {
        &self.labels
    }

    /// Element of `symmetric(k)` for a permutation given by images of
    /// `0..k`.
    pub fn permutation_index(images: &[usize]) -> Option<usize> {
        permutations(images.len()).iter().position(|p| p == images)
    }

    /// Element of `symmetric(k)` for a product of transpositions/cycles
    /// written 1-based, e.g. `&[&[1, 2]]` for (12).
    pub fn cycle_index(k: usize, cycles: &[&[usize]]) -> Option<usize> {
        let mut img: Vec<usize> = (0..k).collect();
        // cycles compose right-to-left
        for cyc in cycles.iter().rev() {
            let mut step: Vec<usize> = (0..k).collect();
            for (i, &x) in cyc.iter().enumerate() {
                let y = cyc[(i + 1) % cyc.len()];
                step[x - 1] = y - 1;
            }
            img = (0..k).map(|i| step[img[i]]).collect();
        }
        Self::permutation_index(&img)
    }

    /// Subgroup generated by `gens` (as a sorted element list).
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                for y in [self.mul(g, x), self.mul(self.inv(g), x)] {
                    if !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; k];
    fn rec(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(k, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    rec(k, &mut cur, &mut used, &mut out);
    out
}

fn cycle_notation(p: &[usize]) -> alloc::string::String {
    use core::fmt::Write;
    let mut s = alloc::string::String::new();
    let mut seen = vec![false; p.len()];
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            let _ = write!(s, "{}", i + 1);
            i = p[i];
        }
        s.push(')');
    }
    if s.is_empty() {
        s.push_str("()");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_group() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.order(), 3);
        assert_eq!(z3.mul(2, 2), 1);
        assert_eq!(z3.inv(1), 2);
        assert_eq!(z3.identity(), 0);
    }

    #[test]
    fn symmetric_group_products() {
        let s3 = FiniteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        let t12 = FiniteGroup::cycle_index(3, &[&[1, 2]]).unwrap();
        let t13 = FiniteGroup::cycle_index(3, &[&[1, 3]]).unwrap();
        assert_eq!(s3.label(t12), "(12)");
        assert_eq!(s3.label(t13), "(13)");
        assert_eq!(s3.mul(t12, t12), s3.identity());
        // (12)(13): apply (13) first: 1→3→3, 3→1→2, 2→2→1 : (132)
        let p = s3.mul(t12, t13);
        assert_eq!(s3.label(p), "(132)");
        assert_eq!(s3.generated_subgroup(&[t12, t13]).len(), 6);
        assert_eq!(s3.generated_subgroup(&[t12]).len(), 2);
    }

    #[test]
    fn invalid_tables_rejected() {
        assert!(FiniteGroup::from_table(vec![]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![0, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
        // latin square but not associative (order-5 loop)
        let loop5 = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(FiniteGroup::from_table(loop5).is_err());
    }

    #[test]
    fn inverse_table_consistent() {
        let s3 = FiniteGroup::symmetric(3);
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inv(a)), s3.identity());
            assert_eq!(s3.mul(s3.inv(a), a), s3.identity());
        }
    }
}
