//! Word-metric balls of a receiving group, with edges `v = η(s)^{±1}·u`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::groups::{GroupElem, GroupError, SGroup};
use crate::words::{Letter, SignedWord, TriState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("equality undecided within budget during ball construction")]
    EqualityUnknown,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub gen: usize,
    pub inverse: bool,
}

#[derive(Debug, Clone)]
pub struct CayleyBall {
    pub radius: usize,
    /// Index 0 is the identity; indices grow with the layer.
    pub elements: Vec<GroupElem>,
    pub layer: Vec<usize>,
    pub edges: Vec<Edge>,
    /// BFS parent and the letter applied on the left to reach the element.
    pub parent: Vec<Option<(usize, Letter)>>,
    /// Set when some pair could not be compared (generic family).
    pub approximate: bool,
    index: BTreeMap<GroupElem, usize>,
}

impl CayleyBall {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, g: &GroupElem) -> Option<usize> {
        self.index.get(g).copied()
    }

    /// Number of elements in layers `0..=r`.
    pub fn count_within(&self, r: usize) -> usize {
        self.layer.partition_point(|&l| l <= r)
    }

    /// The sub-ball of radius `r ≤ self.radius`.
    pub fn truncate(&self, r: usize) -> CayleyBall {
        let r = r.min(self.radius);
        let n = self.count_within(r);
        CayleyBall {
            radius: r,
            elements: self.elements[..n].to_vec(),
            layer: self.layer[..n].to_vec(),
            edges: self.edges.iter().copied().filter(|e| e.source < n && e.target < n).collect(),
            parent: self.parent[..n].to_vec(),
            approximate: self.approximate,
            index: self.index.iter().filter(|(_, &i)| i < n).map(|(k, &i)| (k.clone(), i)).collect(),
        }
    }

    /// A word of length `layer[idx]` whose product is the element.
    pub fn geodesic_word(&self, idx: usize) -> SignedWord {
        let mut letters = Vec::new();
        let mut cur = idx;
        while let Some((p, l)) = self.parent[cur] {
            letters.push(l);
            cur = p;
        }
        SignedWord::from_letters(letters)
    }

    /// DOT digraph of the ball; edges labelled by generator name and sign.
    pub fn export_dot(&self, sg: &SGroup) -> String {
        self.export_dot_subset(sg, None)
    }

    /// DOT digraph restricted to `cells` (all cells when `None`).
    pub fn export_dot_subset(&self, sg: &SGroup, cells: Option<&[usize]>) -> String {
        let keep = |i: usize| cells.is_none_or(|c| c.contains(&i));
        let names = &sg.semigroup.generators;
        let mut out = String::from("digraph ball {\n");
        for i in 0..self.len() {
            if keep(i) {
                let w = self.geodesic_word(i);
                let label = if w.is_empty() { String::from("1") } else { names.display_signed(&w) };
                let _ = writeln!(out, "  n{i} [label=\"{label}\"];");
            }
        }
        for e in &self.edges {
            if keep(e.source) && keep(e.target) {
                let sign = if e.inverse { "-" } else { "+" };
                let _ = writeln!(out, "  n{} -> n{} [label=\"{}{}\"];", e.source, e.target, names.name(e.gen), sign);
            }
        }
        out.push_str("}\n");
        out
    }

    /// Plain description `{radius, size, layers, edges}` for serialization.
    pub fn summary(&self) -> BallSummary {
        BallSummary {
            radius: self.radius,
            size: self.len(),
            layers: self.layer.clone(),
            edges: self.edges.iter().map(|e| (e.source, e.target, e.gen, if e.inverse { -1 } else { 1 })).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BallSummary {
    pub radius: usize,
    pub size: usize,
    pub layers: Vec<usize>,
    pub edges: Vec<(usize, usize, usize, i8)>,
}

enum Dedupe {
    Strict,
    Approximate,
}

fn lookup(
    sg: &SGroup,
    index: &BTreeMap<GroupElem, usize>,
    elements: &[GroupElem],
    g: &GroupElem,
    mode: &Dedupe,
    approximate: &mut bool,
) -> Result<Option<usize>, CayleyError> {
    if let Some(&i) = index.get(g) {
        return Ok(Some(i));
    }
    if sg.group.is_canonical() {
        return Ok(None);
    }
    for (i, e) in elements.iter().enumerate() {
        match sg.group.equal(e, g)? {
            TriState::Equal => return Ok(Some(i)),
            TriState::NotEqualProven => {}
            TriState::Unknown => match mode {
                Dedupe::Strict => return Err(CayleyError::EqualityUnknown),
                Dedupe::Approximate => *approximate = true,
            },
        }
    }
    Ok(None)
}

fn build(sg: &SGroup, r: usize, mode: Dedupe) -> Result<CayleyBall, CayleyError> {
    let steps = sg.steps();
    let mut elements = alloc::vec![sg.group.identity()];
    let mut layer = alloc::vec![0usize];
    let mut parent = alloc::vec![None];
    let mut index = BTreeMap::new();
    index.insert(sg.group.identity(), 0usize);
    let mut approximate = false;
    let mut frontier = 0..1;
    for depth in 1..=r {
        let start = elements.len();
        for u in frontier.clone() {
            for (letter, s) in &steps {
                let v = sg.group.mul(s, &elements[u])?;
                if lookup(sg, &index, &elements, &v, &mode, &mut approximate)?.is_none() {
                    index.insert(v.clone(), elements.len());
                    elements.push(v);
                    layer.push(depth);
                    parent.push(Some((u, *letter)));
                }
            }
        }
        frontier = start..elements.len();
    }
    let mut edges = Vec::new();
    for u in 0..elements.len() {
        for (letter, s) in &steps {
            let v = sg.group.mul(s, &elements[u])?;
            if let Some(t) = lookup(sg, &index, &elements, &v, &mode, &mut approximate)? {
                edges.push(Edge { source: u, target: t, gen: letter.gen, inverse: letter.inverse });
            }
        }
    }
    Ok(CayleyBall { radius: r, elements, layer, edges, parent, approximate, index })
}

/// Ball of radius `r` around the identity. Generic groups fail with
/// [`CayleyError::EqualityUnknown`] when a comparison is undecided.
pub fn build_ball(sg: &SGroup, r: usize) -> Result<CayleyBall, CayleyError> {
    build(sg, r, Dedupe::Strict)
}

/// Like [`build_ball`], but undecided pairs are kept apart and the ball is
/// flagged `approximate`.
pub fn build_ball_approximate(sg: &SGroup, r: usize) -> Result<CayleyBall, CayleyError> {
    build(sg, r, Dedupe::Approximate)
}

/// Human-readable cell list, one geodesic word per index.
pub fn describe_cells(ball: &CayleyBall, sg: &SGroup, cells: &[usize]) -> Vec<String> {
    cells
        .iter()
        .map(|&i| {
            let w = ball.geodesic_word(i);
            if w.is_empty() {
                String::from("1")
            } else {
                sg.semigroup.generators.display_signed(&w)
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::DyadicAffine;
    use crate::words::GeneratorSet;
    use proptest::prelude::*;

    #[test]
    fn small_balls() {
        assert_eq!(build_ball(&SGroup::nat_in_int(2), 1).unwrap().len(), 5);
        assert_eq!(build_ball(&SGroup::free(2), 2).unwrap().len(), 17);
        let z2 = build_ball(&SGroup::nat_in_int(2), 1).unwrap();
        assert_eq!(z2.edges.len(), 8);
        assert_eq!(build_ball(&SGroup::free(2), 0).unwrap().len(), 1);
    }

    #[test]
    fn free_group_ball_sizes() {
        for r in 0..=4 {
            let expected = 2 * 3usize.pow(r as u32) - 1;
            assert_eq!(build_ball(&SGroup::free(2), r).unwrap().len(), expected);
        }
    }

    #[test]
    fn lattice_ball_sizes() {
        for d in 1..=2usize {
            for r in 0..=6i64 {
                let ball = build_ball(&SGroup::nat_in_int(d), r as usize).unwrap();
                let mut count = 0;
                if d == 1 {
                    count = (-r..=r).count();
                } else {
                    for x in -r..=r {
                        for y in -r..=r {
                            if x.abs() + y.abs() <= r {
                                count += 1;
                            }
                        }
                    }
                }
                assert_eq!(ball.len(), count, "d={d} r={r}");
            }
        }
    }

    #[test]
    fn bs12_cycle_vertices() {
        let sg = SGroup::bs12();
        let ball = build_ball(&sg, 3).unwrap();
        let g = GeneratorSet::letters(2);
        for w in ["1", "b", "a b", "b^-1 a b", "b a", "a"] {
            let e = sg.eta_signed(&g.parse_signed(w).unwrap()).unwrap();
            assert!(ball.index_of(&e).is_some(), "{w}");
        }
        let target = GroupElem::DyadicAffine(DyadicAffine::new(1, crate::groups::Dyadic::new(1.into(), 1)));
        let idx = ball.index_of(&target).unwrap();
        let w = ball.geodesic_word(idx);
        assert_eq!(w.len(), 3);
        assert_eq!(sg.eta_signed(&w).unwrap(), target);
    }

    #[test]
    fn geodesics_in_z2() {
        let sg = SGroup::nat_in_int(2);
        let ball = build_ball(&sg, 2).unwrap();
        assert!(ball.geodesic_word(0).is_empty());
        let idx = ball.index_of(&GroupElem::IntVector(alloc::vec![0, -1])).unwrap();
        assert_eq!(sg.semigroup.generators.display_signed(&ball.geodesic_word(idx)), "y^-1");
    }

    #[test]
    fn dot_export() {
        let sg = SGroup::nat_in_int(2);
        let dot0 = build_ball(&sg, 0).unwrap().export_dot(&sg);
        assert_eq!(dot0.matches("->").count(), 0);
        assert_eq!(dot0.matches("[label=").count(), 1);
        let dot1 = build_ball(&sg, 1).unwrap().export_dot(&sg);
        assert_eq!(dot1.matches("->").count(), 8);
        assert!(dot1.starts_with("digraph"));
    }

    #[test]
    fn generic_ball_needs_decisions() {
        use crate::words::{EqualityBudget, SemigroupPresentation};
        let p = SemigroupPresentation::parse("gens: a b; rels: aab = bba;").unwrap();
        let sg = SGroup::generic(p, EqualityBudget::with_steps(200));
        let ball = build_ball_approximate(&sg, 2).unwrap();
        assert!(ball.len() <= 17);
    }

    fn check_ball(sg: &SGroup, r: usize) -> Result<(), TestCaseError> {
        let ball = build_ball(sg, r).unwrap();
        let small = ball.truncate(r.saturating_sub(1));
        prop_assert!(small.len() <= ball.len());
        for (i, e) in small.elements.iter().enumerate() {
            prop_assert_eq!(ball.index_of(e), Some(i));
        }
        let steps = sg.steps();
        for e in &ball.edges {
            let s = &steps[2 * e.gen + usize::from(e.inverse)].1;
            prop_assert_eq!(&sg.group.mul(s, &ball.elements[e.source]).unwrap(), &ball.elements[e.target]);
        }
        for i in 1..ball.len() {
            let (p, _) = ball.parent[i].unwrap();
            prop_assert_eq!(ball.layer[p] + 1, ball.layer[i]);
            let w = ball.geodesic_word(i);
            prop_assert_eq!(w.len(), ball.layer[i]);
            prop_assert_eq!(&sg.eta_signed(&w).unwrap(), &ball.elements[i]);
        }
        Ok(())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn ball_invariants(which in 0usize..5, r in 0usize..4) {
            let sg = match which {
                0 => SGroup::nat_in_int(2),
                1 => SGroup::free(2),
                2 => SGroup::bs12(),
                3 => SGroup::baumslag_solitar(2, 3),
                _ => SGroup::nat_in_int(3),
            };
            check_ball(&sg, r)?;
        }
    }
}
