//! Finite-domain constraint problems over at most 64 symbols.
//!
//! Domains are bitmasks. Binary constraints are propagated by arc
//! consistency; forbidden tuples by the single-tuple table rule. Search
//! picks the smallest open domain (lowest index on ties) and tries values
//! in ascending order, so results are deterministic.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

pub const MAX_SYMBOLS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
struct Relation {
    fwd: Vec<u64>,
    bwd: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// `(value(a), value(b))` must lie in relation `rel`.
    Binary { a: usize, b: usize, rel: usize },
    /// The cells must not take exactly these values together.
    Forbid { cells: Vec<usize>, values: Vec<u8> },
}

impl Constraint {
    fn vars(&self) -> Vec<usize> {
        match self {
            Constraint::Binary { a, b, .. } => vec![*a, *b],
            Constraint::Forbid { cells, .. } => cells.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Csp {
    symbols: usize,
    domains: Vec<u64>,
    relations: Vec<Relation>,
    constraints: Vec<Constraint>,
    watch: Vec<Vec<usize>>,
}

fn full_mask(k: usize) -> u64 {
    if k == 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    core::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(b)
        }
    })
}

impl Csp {
    pub fn new(vars: usize, symbols: usize) -> Self {
        assert!((1..=MAX_SYMBOLS).contains(&symbols), "alphabet size must be in 1..=64");
        Csp {
            symbols,
            domains: vec![full_mask(symbols); vars],
            relations: Vec::new(),
            constraints: Vec::new(),
            watch: vec![Vec::new(); vars],
        }
    }

    pub fn vars(&self) -> usize {
        self.domains.len()
    }

    pub fn symbols(&self) -> usize {
        self.symbols
    }

    pub fn domain(&self, v: usize) -> u64 {
        self.domains[v]
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Registers a relation given by `allowed[q]` = mask of partners of `q`.
    pub fn add_relation(&mut self, allowed: Vec<u64>) -> usize {
        assert_eq!(allowed.len(), self.symbols);
        let mut bwd = vec![0u64; self.symbols];
        for (q, &m) in allowed.iter().enumerate() {
            for r in bits(m) {
                bwd[r] |= 1 << q;
            }
        }
        self.relations.push(Relation { fwd: allowed, bwd });
        self.relations.len() - 1
    }

    pub fn add_binary(&mut self, a: usize, b: usize, rel: usize) {
        let id = self.constraints.len();
        self.constraints.push(Constraint::Binary { a, b, rel });
        self.watch[a].push(id);
        if b != a {
            self.watch[b].push(id);
        }
    }

    pub fn add_forbid(&mut self, cells: &[usize], values: &[u8]) {
        let mut pairs: Vec<(usize, u8)> = cells.iter().copied().zip(values.iter().copied()).collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.windows(2).any(|w| w[0].0 == w[1].0) {
            // one cell asked to hold two symbols: never matches
            return;
        }
        if pairs.iter().any(|&(_, v)| v as usize >= self.symbols) {
            return;
        }
        let id = self.constraints.len();
        for &(c, _) in &pairs {
            self.watch[c].push(id);
        }
        let (cells, values) = pairs.into_iter().unzip();
        self.constraints.push(Constraint::Forbid { cells, values });
    }

    pub fn restrict(&mut self, v: usize, mask: u64) {
        self.domains[v] &= mask;
    }

    /// Narrows `dom` for one constraint, recording changed variables;
    /// false on wipeout.
    fn revise(&self, c: usize, dom: &mut [u64], changed: &mut Vec<usize>) -> bool {
        match &self.constraints[c] {
            Constraint::Binary { a, b, rel } => {
                let r = &self.relations[*rel];
                let (a, b) = (*a, *b);
                if a == b {
                    let keep = bits(dom[a]).filter(|&q| r.fwd[q] >> q & 1 == 1).fold(0u64, |m, q| m | 1 << q);
                    if keep != dom[a] {
                        dom[a] = keep;
                        changed.push(a);
                    }
                    return keep != 0;
                }
                let na = bits(dom[a]).filter(|&q| r.fwd[q] & dom[b] != 0).fold(0u64, |m, q| m | 1 << q);
                if na != dom[a] {
                    dom[a] = na;
                    changed.push(a);
                }
                if na == 0 {
                    return false;
                }
                let nb = bits(dom[b]).filter(|&q| r.bwd[q] & dom[a] != 0).fold(0u64, |m, q| m | 1 << q);
                if nb != dom[b] {
                    dom[b] = nb;
                    changed.push(b);
                }
                nb != 0
            }
            Constraint::Forbid { cells, values } => {
                let mut open = None;
                for (&c, &v) in cells.iter().zip(values) {
                    let m = dom[c];
                    if m >> v & 1 == 0 {
                        return true;
                    }
                    if m != 1 << v {
                        if open.is_some() {
                            return true;
                        }
                        open = Some((c, v));
                    }
                }
                match open {
                    None => false,
                    Some((c, v)) => {
                        dom[c] &= !(1u64 << v);
                        changed.push(c);
                        true
                    }
                }
            }
        }
    }

    fn propagate(&self, dom: &mut [u64], mut queue: Vec<usize>) -> bool {
        if dom.contains(&0) {
            return false;
        }
        let mut queued = vec![false; self.constraints.len()];
        for &c in &queue {
            queued[c] = true;
        }
        let mut changed = Vec::new();
        while let Some(c) = queue.pop() {
            queued[c] = false;
            changed.clear();
            if !self.revise(c, dom, &mut changed) {
                return false;
            }
            for &v in &changed {
                for &c2 in &self.watch[v] {
                    if c2 != c && !queued[c2] {
                        queued[c2] = true;
                        queue.push(c2);
                    }
                }
            }
        }
        true
    }

    fn initial(&self) -> Option<Vec<u64>> {
        let mut dom = self.domains.clone();
        let all: Vec<usize> = (0..self.constraints.len()).rev().collect();
        self.propagate(&mut dom, all).then_some(dom)
    }

    /// Depth-first search restricted to `scope`; `visit` returns false to stop.
    fn search(&self, dom: Vec<u64>, scope: &[usize], visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        let pick = scope
            .iter()
            .copied()
            .filter(|&v| dom[v].count_ones() > 1)
            .min_by_key(|&v| (dom[v].count_ones(), v));
        let Some(v) = pick else {
            return visit(&dom);
        };
        for q in bits(dom[v]) {
            let mut d = dom.clone();
            d[v] = 1 << q;
            if self.propagate(&mut d, self.watch[v].clone()) && !self.search(d, scope, visit) {
                return false;
            }
        }
        true
    }

    /// First solution in search order.
    pub fn solve(&self) -> Option<Vec<u8>> {
        let dom = self.initial()?;
        let scope: Vec<usize> = (0..self.vars()).collect();
        let mut found = None;
        self.search(dom, &scope, &mut |d| {
            found = Some(d.iter().map(|m| m.trailing_zeros() as u8).collect());
            false
        });
        found
    }

    pub fn is_satisfiable(&self) -> bool {
        self.solve().is_some()
    }

    /// All solutions, at most `limit` of them.
    pub fn enumerate(&self, limit: usize) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        let Some(dom) = self.initial() else { return out };
        let scope: Vec<usize> = (0..self.vars()).collect();
        self.search(dom, &scope, &mut |d| {
            out.push(d.iter().map(|m| m.trailing_zeros() as u8).collect());
            out.len() < limit
        });
        out
    }

    /// Number of solutions; independent components are counted separately
    /// and multiplied.
    pub fn count(&self) -> BigUint {
        let Some(dom) = self.initial() else { return BigUint::zero() };
        let n = self.vars();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &self.constraints {
            let vs = c.vars();
            for w in vs.windows(2) {
                let (x, y) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
                parent[x] = y;
            }
        }
        let mut comps: alloc::collections::BTreeMap<usize, Vec<usize>> = alloc::collections::BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            comps.entry(r).or_default().push(v);
        }
        let mut total = BigUint::one();
        for scope in comps.values() {
            let c = if scope.len() == 1 && self.watch[scope[0]].is_empty() {
                BigUint::from(dom[scope[0]].count_ones())
            } else {
                let mut k = BigUint::zero();
                self.search(dom.clone(), scope, &mut |_| {
                    k += 1u32;
                    true
                });
                k
            };
            if c.is_zero() {
                return c;
            }
            total *= c;
        }
        total
    }

    /// The problem restricted to the kept variables: constraints touching a
    /// dropped variable are removed.
    pub fn induced(&self, keep: &[bool]) -> Csp {
        let mut out = Csp {
            symbols: self.symbols,
            domains: self.domains.iter().zip(keep).map(|(&d, &k)| if k { d } else { full_mask(self.symbols) }).collect(),
            relations: self.relations.clone(),
            constraints: Vec::new(),
            watch: vec![Vec::new(); self.vars()],
        };
        for c in &self.constraints {
            if c.vars().iter().all(|&v| keep[v]) {
                match c {
                    Constraint::Binary { a, b, rel } => out.add_binary(*a, *b, *rel),
                    Constraint::Forbid { cells, values } => out.add_forbid(cells, values),
                }
            }
        }
        out
    }

    /// A minimal unsatisfiable variable set, found by deleting variables in
    /// descending index order. `None` when the problem is satisfiable.
    pub fn core(&self) -> Option<Vec<usize>> {
        if self.is_satisfiable() {
            return None;
        }
        let mut keep = vec![true; self.vars()];
        for v in (0..self.vars()).rev() {
            keep[v] = false;
            if self.induced(&keep).is_satisfiable() {
                keep[v] = true;
            }
        }
        Some((0..self.vars()).filter(|&v| keep[v]).collect())
    }

    /// Whether an assignment meets every constraint and domain.
    pub fn check(&self, values: &[u8]) -> bool {
        if values.len() != self.vars() {
            return false;
        }
        if values.iter().zip(&self.domains).any(|(&v, &d)| d >> v & 1 == 0) {
            return false;
        }
        self.constraints.iter().all(|c| match c {
            Constraint::Binary { a, b, rel } => self.relations[*rel].fwd[values[*a] as usize] >> values[*b] & 1 == 1,
            Constraint::Forbid { cells, values: vs } => cells.iter().zip(vs).any(|(&c, &v)| values[c] != v),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(csp: &Csp) -> u64 {
        let n = csp.vars();
        let k = csp.symbols() as u64;
        let mut count = 0;
        let mut vals = vec![0u8; n];
        for code in 0..k.pow(n as u32) {
            let mut c = code;
            for v in vals.iter_mut() {
                *v = (c % k) as u8;
                c /= k;
            }
            if csp.check(&vals) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn path_without_adjacent_ones() {
        // golden mean on 5 cells: Fibonacci(7) = 13
        let mut csp = Csp::new(5, 2);
        for i in 0..4 {
            csp.add_forbid(&[i, i + 1], &[1, 1]);
        }
        assert_eq!(csp.count(), BigUint::from(13u32));
        assert_eq!(csp.solve(), Some(vec![0, 0, 0, 0, 0]));
    }

    #[test]
    fn odd_cycle_two_colouring_fails() {
        let mut csp = Csp::new(3, 2);
        let ne = csp.add_relation(vec![0b10, 0b01]);
        csp.add_binary(0, 1, ne);
        csp.add_binary(1, 2, ne);
        csp.add_binary(2, 0, ne);
        assert!(csp.solve().is_none());
        assert_eq!(csp.core(), Some(vec![0, 1, 2]));
    }

    #[test]
    fn core_drops_irrelevant_cells() {
        let mut csp = Csp::new(6, 2);
        let ne = csp.add_relation(vec![0b10, 0b01]);
        csp.add_binary(0, 1, ne);
        csp.add_binary(4, 5, ne);
        csp.add_binary(3, 4, ne);
        csp.add_binary(5, 3, ne);
        assert_eq!(csp.core(), Some(vec![3, 4, 5]));
    }

    #[test]
    fn isolated_cells_multiply() {
        let mut csp = Csp::new(20, 3);
        csp.restrict(0, 0b011);
        assert_eq!(csp.count(), BigUint::from(2u32) * BigUint::from(3u32).pow(19));
    }

    fn arb_csp() -> impl Strategy<Value = Csp> {
        (1usize..=6, 1usize..=3).prop_flat_map(|(n, k)| {
            let binaries = proptest::collection::vec((0..n, 0..n, proptest::collection::vec(0u64..(1 << k), k)), 0..6);
            let forbids = proptest::collection::vec(proptest::collection::vec((0..n, 0..k as u8), 1..4), 0..6);
            let restr = proptest::collection::vec((0..n, 1u64..(1 << k)), 0..3);
            (Just(n), Just(k), binaries, forbids, restr).prop_map(|(n, k, bs, fs, rs)| {
                let mut csp = Csp::new(n, k);
                for (a, b, rel) in bs {
                    let r = csp.add_relation(rel);
                    csp.add_binary(a, b, r);
                }
                for f in fs {
                    let (cells, values): (Vec<usize>, Vec<u8>) = f.into_iter().unzip();
                    csp.add_forbid(&cells, &values);
                }
                for (v, m) in rs {
                    csp.restrict(v, m);
                }
                csp
            })
        })
    }

    proptest! {
        #[test]
        fn agrees_with_enumeration(csp in arb_csp()) {
            let b = brute(&csp);
            prop_assert_eq!(csp.count(), BigUint::from(b));
            match csp.solve() {
                Some(s) => prop_assert!(csp.check(&s)),
                None => prop_assert_eq!(b, 0),
            }
            prop_assert_eq!(csp.enumerate(usize::MAX).len() as u64, b);
        }

        #[test]
        fn cores_are_minimal(csp in arb_csp()) {
            if let Some(core) = csp.core() {
                let n = csp.vars();
                let mut keep = vec![false; n];
                for &v in &core { keep[v] = true; }
                prop_assert!(!csp.induced(&keep).is_satisfiable());
                for &v in &core {
                    keep[v] = false;
                    prop_assert!(csp.induced(&keep).is_satisfiable());
                    keep[v] = true;
                }
            }
        }
    }
}
