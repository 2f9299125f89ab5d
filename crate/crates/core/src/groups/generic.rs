//! Finitely presented groups without a built-in normal form. Identity
//! testing is a bounded relator-substitution search.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::groups::snf::IntMatrix;
use crate::words::{free_reduce, EqualityBudget, GeneratorSet, SignedWord, TriState};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericGroup {
    pub generators: GeneratorSet,
    pub relators: Vec<SignedWord>,
    pub budget: EqualityBudget,
    /// Every rotation of every relator and of its inverse.
    rotations: Vec<SignedWord>,
}

impl GenericGroup {
    pub fn new(generators: GeneratorSet, relators: Vec<SignedWord>, budget: EqualityBudget) -> Self {
        let mut rot = BTreeSet::new();
        for r in &relators {
            let r = free_reduce(r);
            for w in [r.clone(), r.inverse()] {
                for k in 0..w.len().max(1) {
                    let c = w.rotate(k);
                    if !c.is_empty() {
                        rot.insert(c);
                    }
                }
            }
        }
        GenericGroup { generators, relators, budget, rotations: rot.into_iter().collect() }
    }

    fn abelian_lattice(&self) -> IntMatrix {
        let n = self.generators.len();
        IntMatrix::from_rows(self.relators.iter().map(|r| r.exponent_sums(n)).collect(), n)
    }

    /// Bounded identity test.
    pub fn is_trivial(&self, w: &SignedWord) -> TriState {
        let w = free_reduce(w);
        if w.is_empty() {
            return TriState::Equal;
        }
        let n = self.generators.len();
        if !self.abelian_lattice().row_lattice_contains(&w.exponent_sums(n)) {
            return TriState::NotEqualProven;
        }
        let cap = w.len() + self.budget.slack;
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w);
        let mut steps = 0;
        while let Some(cur) = queue.pop_front() {
            steps += 1;
            if steps > self.budget.steps {
                break;
            }
            let letters = cur.letters();
            for rel in &self.rotations {
                let rl = rel.letters();
                // replace a factor x of cur, where rel = x·y, by y⁻¹
                for split in 1..=rl.len() {
                    let (x, y) = rl.split_at(split);
                    if x.len() > letters.len() {
                        break;
                    }
                    let y_inv = SignedWord::from_letters(y.to_vec()).inverse();
                    for i in 0..=letters.len() - x.len() {
                        if &letters[i..i + x.len()] != x {
                            continue;
                        }
                        let mut nl = letters[..i].to_vec();
                        nl.extend_from_slice(y_inv.letters());
                        nl.extend_from_slice(&letters[i + x.len()..]);
                        let nw = free_reduce(&SignedWord::from_letters(nl));
                        if nw.is_empty() {
                            return TriState::Equal;
                        }
                        if nw.len() <= cap && seen.insert(nw.clone()) {
                            queue.push_back(nw);
                        }
                    }
                }
            }
        }
        TriState::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bs12_relator_consequences() {
        let g = GeneratorSet::letters(2);
        let rel = g.parse_signed("b^-1 a b a^-1 b^-1 a").unwrap();
        let grp = GenericGroup::new(g.clone(), alloc::vec![rel.clone()], EqualityBudget::default());
        assert_eq!(grp.is_trivial(&rel), TriState::Equal);
        assert_eq!(grp.is_trivial(&rel.rotate(3).inverse()), TriState::Equal);
        // conjugate of the relator
        let conj = g.parse_signed("a b").unwrap().concat(&rel).concat(&g.parse_signed("b^-1 a^-1").unwrap());
        assert_eq!(grp.is_trivial(&conj), TriState::Equal);
        // a has exponent sum (1,0), outside the relator lattice
        assert_eq!(grp.is_trivial(&g.parse_signed("a").unwrap()), TriState::NotEqualProven);
    }

    #[test]
    fn commutator_unknown_in_free_like_group() {
        let g = GeneratorSet::letters(2);
        let grp = GenericGroup::new(g.clone(), alloc::vec![], EqualityBudget::with_steps(50));
        // [a,b] has zero exponent sum; no relators to decide it
        assert_eq!(grp.is_trivial(&g.parse_signed("a b a^-1 b^-1").unwrap()), TriState::Unknown);
    }
}
