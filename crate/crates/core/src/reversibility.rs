//! Left reversibility, the preorder `g ≤_S h ⟺ hg⁻¹ ∈ η(S)`, and the
//! all-ones test for groups of right fractions. Every search states the
//! bound it exhausted.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cayley::{build_ball, CayleyBall, CayleyError};
use crate::groups::{free_s_group_of, Embedding, GroupElem, GroupError, Membership, SGroup};
use crate::words::{SemigroupPresentation, TriState, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReversibilityError {
    #[error("membership in η(S) is not decidable for this receiving group")]
    MembershipUndecidable,
    #[error("empty element set")]
    EmptySet,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReversibilityVerdict {
    /// `s·x = t·y`.
    WitnessFound { x: Word, y: Word },
    NoneUpTo { bound: usize },
    DisjointProven,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversibilityReport {
    pub s: usize,
    pub t: usize,
    pub verdict: ReversibilityVerdict,
}

fn common_right_multiple(sg: &SGroup, s: usize, t: usize, bound: usize) -> Result<Option<(Word, Word)>, ReversibilityError> {
    let words = Word::all_up_to(sg.rank(), bound);
    let left = |g: usize, w: &Word| sg.eta(&Word::new(alloc::vec![g]).concat(w));
    if sg.group.is_canonical() {
        let mut seen = alloc::collections::BTreeMap::new();
        for x in &words {
            seen.entry(left(s, x)).or_insert_with(|| x.clone());
        }
        for y in &words {
            if let Some(x) = seen.get(&left(t, y)) {
                return Ok(Some((x.clone(), y.clone())));
            }
        }
        return Ok(None);
    }
    let sx: Vec<(GroupElem, &Word)> = words.iter().map(|x| (left(s, x), x)).collect();
    for y in &words {
        let ty = left(t, y);
        for (e, x) in &sx {
            if sg.group.equal(e, &ty)? == TriState::Equal {
                return Ok(Some(((*x).clone(), y.clone())));
            }
        }
    }
    Ok(None)
}

/// Checks `sS ∩ tS ≠ ∅` for each generator pair `s < t` with words of
/// length ≤ `bound`.
pub fn left_reversible_bounded(sg: &SGroup, bound: usize) -> Result<Vec<ReversibilityReport>, ReversibilityError> {
    let free = sg.embedding == Embedding::FreeMonoidInFree && sg.semigroup.relations.is_empty();
    let mut out = Vec::new();
    for s in 0..sg.rank() {
        for t in s + 1..sg.rank() {
            let verdict = if free {
                // distinct first letters never meet in a free monoid
                ReversibilityVerdict::DisjointProven
            } else {
                match common_right_multiple(sg, s, t, bound)? {
                    Some((x, y)) => ReversibilityVerdict::WitnessFound { x, y },
                    None => ReversibilityVerdict::NoneUpTo { bound },
                }
            };
            out.push(ReversibilityReport { s, t, verdict });
        }
    }
    Ok(out)
}

pub fn left_reversible_presentation(p: &SemigroupPresentation, bound: usize) -> Result<Vec<ReversibilityReport>, ReversibilityError> {
    left_reversible_bounded(&free_s_group_of(p), bound)
}

/// `g ≤_S h`: membership of `hg⁻¹` in `η(S)`, with a witness word.
pub fn leq_s(sg: &SGroup, g: &GroupElem, h: &GroupElem, bound: usize) -> Result<Membership, ReversibilityError> {
    let d = sg.group.mul(h, &sg.group.inv(g)?)?;
    Ok(sg.membership(&d, bound)?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directed {
    LowerBound(GroupElem),
    NoneFound { radius: usize },
}

/// Searches `ball(radius)` for `m` with `m ≤_S f` for all `f ∈ set`;
/// returns a maximal one among those found.
pub fn directed_bounded(sg: &SGroup, set: &[GroupElem], radius: usize, bound: usize) -> Result<Directed, ReversibilityError> {
    if set.is_empty() {
        return Err(ReversibilityError::EmptySet);
    }
    let ball = build_ball(sg, radius)?;
    let mut best: Option<GroupElem> = None;
    for m in &ball.elements {
        let mut ok = true;
        for f in set {
            if !leq_s(sg, m, f, bound)?.is_yes() {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        best = match best {
            Some(b) if !leq_s(sg, &b, m, bound)?.is_yes() => Some(b),
            _ => Some(m.clone()),
        };
    }
    Ok(best.map_or(Directed::NoneFound { radius }, Directed::LowerBound))
}

/// The coloring `x*(g) = 1 ⟺ 1 ≤_S g` on the ball.
pub fn xstar_patch(sg: &SGroup, ball: &CayleyBall, bound: usize) -> Result<Vec<u8>, ReversibilityError> {
    if sg.embedding == Embedding::Generic {
        return Err(ReversibilityError::MembershipUndecidable);
    }
    ball.elements
        .iter()
        .map(|g| match sg.membership(g, bound)? {
            Membership::Yes(_) => Ok(1),
            Membership::No => Ok(0),
            Membership::Unknown => Err(ReversibilityError::MembershipUndecidable),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FractionsVerdict {
    /// `(g·x*)` is 1 on `ball(radius)`; `g` found within `searched`.
    AllOnesApproximable { radius: usize, witness: GroupElem, searched: usize },
    /// No `g` in `ball(searched)` works.
    FailsAt { radius: usize, searched: usize },
}

/// Searches `g ∈ ball(search)` with `hg ∈ η(S)` for every `h ∈ ball(radius)`.
pub fn check_fractions_by_subshift(sg: &SGroup, radius: usize, search: usize, bound: usize) -> Result<FractionsVerdict, ReversibilityError> {
    if sg.embedding == Embedding::Generic {
        return Err(ReversibilityError::MembershipUndecidable);
    }
    let big = build_ball(sg, search.max(radius))?;
    let small = big.truncate(radius);
    for g in big.elements.iter().take(big.count_within(search)) {
        let mut ok = true;
        for h in &small.elements {
            match sg.membership(&sg.group.mul(h, g)?, bound)? {
                Membership::Yes(_) => {}
                Membership::No => {
                    ok = false;
                    break;
                }
                Membership::Unknown => return Err(ReversibilityError::MembershipUndecidable),
            }
        }
        if ok {
            return Ok(FractionsVerdict::AllOnesApproximable { radius, witness: g.clone(), searched: search });
        }
    }
    Ok(FractionsVerdict::FailsAt { radius, searched: search })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::GeneratorSet;
    use alloc::vec;
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> GroupElem {
        GroupElem::IntVector(v.to_vec())
    }

    #[test]
    fn reversibility_examples() {
        let n2 = left_reversible_bounded(&SGroup::nat_in_int(2), 1).unwrap();
        let ReversibilityVerdict::WitnessFound { x, y } = &n2[0].verdict else { panic!("{n2:?}") };
        assert_eq!((x.letters(), y.letters()), (&[1usize][..], &[0usize][..]));
        let f2 = left_reversible_presentation(&SemigroupPresentation::free(2), 4).unwrap();
        assert_eq!(f2[0].verdict, ReversibilityVerdict::DisjointProven);
        for l in 1..=6 {
            let bs = left_reversible_bounded(&SGroup::bs12(), l).unwrap();
            assert_eq!(bs[0].verdict, ReversibilityVerdict::NoneUpTo { bound: l });
        }
    }

    #[test]
    fn bs12_standard_is_reversible() {
        // ab = bba: a·b = b·(ba)
        let p = SemigroupPresentation::parse("gens: a b; rels: ab = bba;").unwrap();
        let r = left_reversible_presentation(&p, 2).unwrap();
        let ReversibilityVerdict::WitnessFound { x, y } = &r[0].verdict else { panic!() };
        let sg = free_s_group_of(&p);
        assert_eq!(sg.eta(&Word::new(vec![0]).concat(x)), sg.eta(&Word::new(vec![1]).concat(y)));
    }

    #[test]
    fn preorder_examples() {
        let z2 = SGroup::nat_in_int(2);
        assert_eq!(leq_s(&z2, &iv(&[0, 0]), &iv(&[2, 3]), 0).unwrap(), Membership::Yes(Word::new(vec![0, 0, 1, 1, 1])));
        assert_eq!(leq_s(&z2, &iv(&[0, 0]), &iv(&[-1, 0]), 0).unwrap(), Membership::No);
        let bs = SGroup::bs12();
        let a_inv = bs.group.inv(&bs.eta[0]).unwrap();
        assert_eq!(leq_s(&bs, &bs.group.identity(), &a_inv, 0).unwrap(), Membership::No);
    }

    #[test]
    fn directed_examples() {
        let z2 = SGroup::nat_in_int(2);
        assert_eq!(directed_bounded(&z2, &[iv(&[1, 0]), iv(&[0, 1])], 2, 0).unwrap(), Directed::LowerBound(iv(&[0, 0])));
        assert_eq!(directed_bounded(&z2, &[iv(&[-2, 1]), iv(&[3, -1])], 4, 0).unwrap(), Directed::LowerBound(iv(&[-2, -1])));
        let f2 = SGroup::free(2);
        let g = GeneratorSet::letters(2);
        let e = |s: &str| f2.eta_signed(&g.parse_signed(s).unwrap()).unwrap();
        assert_eq!(directed_bounded(&f2, &[e("a"), e("b")], 3, 0).unwrap(), Directed::LowerBound(e("1")));
        for r in 1..=4 {
            assert_eq!(directed_bounded(&f2, &[e("a^-1"), e("b^-1")], r, 0).unwrap(), Directed::NoneFound { radius: r });
        }
    }

    #[test]
    fn xstar_examples() {
        let z = SGroup::nat_in_int(1);
        let ball = build_ball(&z, 2).unwrap();
        let x = xstar_patch(&z, &ball, 0).unwrap();
        for (e, v) in ball.elements.iter().zip(&x) {
            let GroupElem::IntVector(k) = e else { panic!() };
            assert_eq!(*v, u8::from(k[0] >= 0));
        }
        let f2 = SGroup::free(2);
        let ball = build_ball(&f2, 1).unwrap();
        let x = xstar_patch(&f2, &ball, 0).unwrap();
        assert_eq!(x.iter().filter(|&&v| v == 1).count(), 3);
        assert_eq!(x[0], 1);
        let generic = crate::groups::SGroup::generic(SemigroupPresentation::parse("gens: a b; rels: aab = bba;").unwrap(), Default::default());
        assert_eq!(xstar_patch(&generic, &ball, 0), Err(ReversibilityError::MembershipUndecidable));
    }

    #[test]
    fn fractions_examples() {
        let z = SGroup::nat_in_int(1);
        assert_eq!(
            check_fractions_by_subshift(&z, 2, 4, 0).unwrap(),
            FractionsVerdict::AllOnesApproximable { radius: 2, witness: iv(&[2]), searched: 4 }
        );
        let z2 = SGroup::nat_in_int(2);
        assert_eq!(
            check_fractions_by_subshift(&z2, 1, 4, 0).unwrap(),
            FractionsVerdict::AllOnesApproximable { radius: 1, witness: iv(&[1, 1]), searched: 4 }
        );
        for search in 1..=4 {
            assert_eq!(check_fractions_by_subshift(&SGroup::free(2), 1, search, 0).unwrap(), FractionsVerdict::FailsAt { radius: 1, searched: search });
        }
    }

    #[test]
    fn criteria_agree_on_builtins() {
        // lower bounds for all tested sets ⟺ all-ones test passes
        let z2 = SGroup::nat_in_int(2);
        let ball = build_ball(&z2, 2).unwrap();
        let sets: Vec<Vec<GroupElem>> = ball.elements.windows(2).map(|w| w.to_vec()).collect();
        let directed = sets.iter().all(|f| matches!(directed_bounded(&z2, f, 4, 0).unwrap(), Directed::LowerBound(_)));
        let fractions = (1..=2).all(|r| matches!(check_fractions_by_subshift(&z2, r, 2 * r, 0).unwrap(), FractionsVerdict::AllOnesApproximable { .. }));
        assert!(directed && fractions);

        let f2 = SGroup::free(2);
        let ball = build_ball(&f2, 1).unwrap();
        let pairs = |b: &CayleyBall| -> Vec<Vec<GroupElem>> {
            let e = &b.elements;
            (0..e.len()).flat_map(|i| (i + 1..e.len()).map(move |j| vec![e[i].clone(), e[j].clone()])).collect()
        };
        let directed = pairs(&ball).iter().all(|f| matches!(directed_bounded(&f2, f, 3, 0).unwrap(), Directed::LowerBound(_)));
        let fractions = matches!(check_fractions_by_subshift(&f2, 1, 3, 0).unwrap(), FractionsVerdict::AllOnesApproximable { .. });
        assert!(!directed && !fractions);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn lattice_lower_bound_is_min(pts in proptest::collection::vec((-5i64..=5, -5i64..=5), 1..=5)) {
            let z2 = SGroup::nat_in_int(2);
            let set: Vec<GroupElem> = pts.iter().map(|&(a, b)| iv(&[a, b])).collect();
            let min = iv(&[pts.iter().map(|p| p.0).min().unwrap(), pts.iter().map(|p| p.1).min().unwrap()]);
            let r = match &min { GroupElem::IntVector(v) => (v[0].abs() + v[1].abs()) as usize, _ => unreachable!() };
            let got = directed_bounded(&z2, &set, r, 0).unwrap();
            prop_assert_eq!(&got, &Directed::LowerBound(min.clone()));
            for f in &set {
                prop_assert!(leq_s(&z2, &min, f, 0).unwrap().is_yes());
            }
        }

        #[test]
        fn preorder_transitive(a in (-3i64..=3, -3i64..=3), b in (-3i64..=3, -3i64..=3), c in (-3i64..=3, -3i64..=3)) {
            let z2 = SGroup::nat_in_int(2);
            let (a, b, c) = (iv(&[a.0, a.1]), iv(&[b.0, b.1]), iv(&[c.0, c.1]));
            prop_assert!(leq_s(&z2, &a, &a, 0).unwrap().is_yes());
            if leq_s(&z2, &a, &b, 0).unwrap().is_yes() && leq_s(&z2, &b, &c, 0).unwrap().is_yes() {
                prop_assert!(leq_s(&z2, &a, &c, 0).unwrap().is_yes());
            }
        }
    }
}
