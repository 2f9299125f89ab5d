//! Receiving groups `(G, η)` for presented semigroups.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::affine::{affine_image, excludes_positive};
use super::{BaumslagSolitar, DyadicAffine, FiniteGroup, GenericGroup, Group, GroupElem, GroupError};
use crate::words::{EqualityBudget, Letter, SemigroupPresentation, SignedWord, TriState, Word};

/// Which concrete embedding an [`SGroup`] carries; selects the exact
/// membership test for `η(S)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    /// ℕ^d ⊂ ℤ^d.
    NatInInt,
    /// 𝔽_n⁺ ⊂ 𝔽_n.
    FreeMonoidInFree,
    /// 𝔽₂⁺ → BS(1,2), `a ↦ (x ↦ 2x)`, `b ↦ (x ↦ 2x + 1)`.
    FreeMonoidInBs12,
    /// BS(1,2)⁺ = ⟨a,b | ab = b²a⟩⁺ → dyadic maps, stable `x ↦ 2x`,
    /// base `x ↦ x + 1`.
    Bs12StandardPositive { stable: usize, base: usize },
    /// BS(m,n)⁺ → BS(m,n) letter-wise.
    BaumslagPositive { stable: usize, base: usize },
    /// BS(2,3)⁺ → BS(2,3) by `a ↦ a`, `b ↦ b²`.
    BaumslagTheta,
    /// Morphism into a finite group (usually not injective).
    FiniteImage,
    /// Presentation without a built-in normal form.
    Generic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    Yes(Word),
    No,
    Unknown,
}

impl Membership {
    pub fn is_yes(&self) -> bool {
        matches!(self, Membership::Yes(_))
    }
}

#[derive(Debug, Clone)]
pub struct SGroup {
    pub group: Group,
    pub semigroup: SemigroupPresentation,
    /// Image of each semigroup generator.
    pub eta: Vec<GroupElem>,
    pub embedding: Embedding,
    /// Relators of `G` written over the semigroup generators (as words in
    /// the `η`-images), when known.
    pub relators: Option<Vec<SignedWord>>,
}

impl SGroup {
    /// 𝔽_n⁺ inside 𝔽_n.
    pub fn free(n: usize) -> Self {
        let group = Group::Free { rank: n };
        let eta = (0..n).map(|i| group.generator(i)).collect();
        SGroup {
            group,
            semigroup: SemigroupPresentation::free(n),
            eta,
            embedding: Embedding::FreeMonoidInFree,
            relators: Some(Vec::new()),
        }
    }

    /// ℕ^d inside ℤ^d.
    pub fn nat_in_int(d: usize) -> Self {
        let group = Group::FreeAbelian { rank: d };
        let eta = (0..d).map(|i| group.generator(i)).collect();
        let relators = group.relators();
        SGroup {
            group,
            semigroup: SemigroupPresentation::free_commutative(d),
            eta,
            embedding: Embedding::NatInInt,
            relators,
        }
    }

    /// 𝔽₂⁺ embedded in BS(1,2) by `a ↦ x ↦ 2x`, `b ↦ x ↦ 2x + 1`.
    pub fn bs12() -> Self {
        let group = Group::DyadicBs12;
        let eta = vec![group.generator(0), group.generator(1)];
        SGroup {
            group,
            semigroup: SemigroupPresentation::free(2),
            eta,
            embedding: Embedding::FreeMonoidInBs12,
            relators: Some(vec![super::bs12_relator()]),
        }
    }

    /// BS(m,n)⁺ = ⟨a,b | ab^m = b^n a⟩⁺ inside BS(m,n). For (1,2) the
    /// dyadic model is attached.
    pub fn baumslag_solitar(m: i64, n: i64) -> Self {
        let mut rel_l = vec![0usize];
        rel_l.extend(core::iter::repeat_n(1, m as usize));
        let mut rel_r: Vec<usize> = core::iter::repeat_n(1, n as usize).collect();
        rel_r.push(0);
        let semigroup = SemigroupPresentation::new(
            crate::words::GeneratorSet::letters(2),
            vec![(Word::new(rel_l), Word::new(rel_r))],
        )
        .expect("valid presentation");
        baumslag_for(semigroup, m, n, 0, 1)
    }

    /// BS(2,3)⁺ → BS(2,3) through the endomorphism `θ(a) = a`, `θ(b) = b²`.
    pub fn bs23_theta() -> Self {
        let base = SGroup::baumslag_solitar(2, 3);
        let bs = BaumslagSolitar::new(2, 3);
        let b2 = SignedWord::from_letters(vec![Letter::pos(1), Letter::pos(1)]);
        SGroup {
            eta: vec![base.group.generator(0), GroupElem::Britton(bs.reduce(&b2))],
            embedding: Embedding::BaumslagTheta,
            relators: None,
            ..base
        }
    }

    /// A morphism `S → F` into a finite group.
    pub fn finite(semigroup: SemigroupPresentation, group: Arc<FiniteGroup>, images: &[usize]) -> Self {
        assert_eq!(images.len(), semigroup.rank());
        SGroup {
            eta: images.iter().map(|&i| GroupElem::Finite(i)).collect(),
            group: Group::Finite(group),
            semigroup,
            embedding: Embedding::FiniteImage,
            relators: None,
        }
    }

    /// The group with the same presentation and no normal form.
    pub fn generic(semigroup: SemigroupPresentation, budget: EqualityBudget) -> Self {
        let relators: Vec<SignedWord> =
            semigroup.relations.iter().map(|(u, v)| u.to_signed().concat(&v.to_signed().inverse())).collect();
        let gg = GenericGroup::new(semigroup.generators.clone(), relators.clone(), budget);
        let group = Group::Generic(Arc::new(gg));
        let eta = (0..semigroup.rank()).map(|i| group.generator(i)).collect();
        SGroup { group, semigroup, eta, embedding: Embedding::Generic, relators: Some(relators) }
    }

    pub fn rank(&self) -> usize {
        self.semigroup.rank()
    }

    /// True when η is known to be injective.
    pub fn is_faithful(&self) -> bool {
        !matches!(self.embedding, Embedding::FiniteImage | Embedding::Generic)
    }

    pub fn eta(&self, w: &Word) -> GroupElem {
        eta_apply(self, w)
    }

    /// η extended to signed words.
    pub fn eta_signed(&self, w: &SignedWord) -> Result<GroupElem, GroupError> {
        self.group.eval_with(&self.eta, w)
    }

    /// `η(s)^{±1}` for every generator, `(generator, inverse?)` order.
    pub fn steps(&self) -> Vec<(Letter, GroupElem)> {
        let mut out = Vec::with_capacity(2 * self.eta.len());
        for (i, e) in self.eta.iter().enumerate() {
            out.push((Letter::pos(i), e.clone()));
            out.push((Letter::neg(i), self.group.inv(e).expect("η image in family")));
        }
        out
    }

    /// Whether [`SGroup::membership`] never answers `Unknown`.
    pub fn membership_is_exact(&self) -> bool {
        matches!(
            self.embedding,
            Embedding::NatInInt
                | Embedding::FreeMonoidInFree
                | Embedding::FreeMonoidInBs12
                | Embedding::Bs12StandardPositive { .. }
                | Embedding::FiniteImage
        )
    }

    /// Is `g ∈ η(S)`? Exact for the built-in embeddings listed in
    /// [`SGroup::membership_is_exact`]; otherwise a search over positive
    /// words of length ≤ `bound`, with an affine exclusion test for the
    /// Baumslag–Solitar embeddings.
    pub fn membership(&self, g: &GroupElem, bound: usize) -> Result<Membership, GroupError> {
        self.group.inv(g)?;
        match (&self.embedding, g) {
            (Embedding::NatInInt, GroupElem::IntVector(v)) => {
                if v.iter().any(|&x| x < 0) {
                    return Ok(Membership::No);
                }
                let mut w = Word::empty();
                for (i, &x) in v.iter().enumerate() {
                    for _ in 0..x {
                        w.push(i);
                    }
                }
                Ok(Membership::Yes(w))
            }
            (Embedding::FreeMonoidInFree, GroupElem::FreeReduced(w)) => {
                Ok(w.to_positive().map(Membership::Yes).unwrap_or(Membership::No))
            }
            (Embedding::FreeMonoidInBs12, GroupElem::DyadicAffine(f)) => Ok(bs12_free_membership(f)),
            (Embedding::Bs12StandardPositive { stable, base }, GroupElem::DyadicAffine(f)) => {
                // β^c α^ℓ: x ↦ 2^ℓ x + c, ℓ ≥ 0, c ≥ 0 integer
                if f.slope_log < 0 || !f.intercept.is_integer() || f.intercept.is_negative() {
                    return Ok(Membership::No);
                }
                let c = f.intercept.numerator().to_usize().ok_or(GroupError::NoGeneratorWord)?;
                let mut w = Word::new(vec![*base; c]);
                for _ in 0..f.slope_log {
                    w.push(*stable);
                }
                Ok(Membership::Yes(w))
            }
            (Embedding::BaumslagPositive { .. } | Embedding::BaumslagTheta, GroupElem::Britton(form)) => {
                let Group::BaumslagSolitar(bs) = &self.group else { return Err(GroupError::FamilyMismatch) };
                let img = affine_image(bs, &form.to_word());
                if excludes_positive(&img) || (img.is_identity() && !form.is_identity()) {
                    return Ok(Membership::No);
                }
                self.search_membership(g, bound)
            }
            (Embedding::FiniteImage, GroupElem::Finite(_)) => self.finite_membership(g),
            (Embedding::Generic, _) => self.search_membership(g, bound),
            _ => Err(GroupError::FamilyMismatch),
        }
    }

    fn search_membership(&self, g: &GroupElem, bound: usize) -> Result<Membership, GroupError> {
        let canonical = self.group.is_canonical();
        let mut seen: BTreeMap<GroupElem, ()> = BTreeMap::new();
        let mut layer = vec![(Word::empty(), self.group.identity())];
        seen.insert(self.group.identity(), ());
        for len in 0..=bound {
            for (w, e) in &layer {
                if self.group.equal(e, g)? == TriState::Equal {
                    return Ok(Membership::Yes(w.clone()));
                }
            }
            if len == bound {
                break;
            }
            let mut next = Vec::new();
            for (w, e) in &layer {
                for (i, s) in self.eta.iter().enumerate() {
                    // prepend: η(s·w) = η(s)·η(w)
                    let ne = self.group.mul(s, e)?;
                    if canonical && seen.insert(ne.clone(), ()).is_some() {
                        continue;
                    }
                    let mut nw = Word::new(vec![i]);
                    nw = nw.concat(w);
                    next.push((nw, ne));
                }
            }
            layer = next;
        }
        Ok(Membership::Unknown)
    }

    fn finite_membership(&self, g: &GroupElem) -> Result<Membership, GroupError> {
        let Group::Finite(f) = &self.group else { return Err(GroupError::FamilyMismatch) };
        let GroupElem::Finite(target) = g else { return Err(GroupError::FamilyMismatch) };
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; f.order()];
        let mut seen = vec![false; f.order()];
        seen[f.identity()] = true;
        let mut queue = VecDeque::from([f.identity()]);
        while let Some(x) = queue.pop_front() {
            for (i, e) in self.eta.iter().enumerate() {
                let GroupElem::Finite(s) = e else { return Err(GroupError::FamilyMismatch) };
                let y = f.mul(*s, x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, i));
                    queue.push_back(y);
                }
            }
        }
        if !seen[*target] {
            return Ok(Membership::No);
        }
        let mut letters = Vec::new();
        let mut cur = *target;
        while let Some((prev, gen)) = parent[cur] {
            letters.push(gen);
            cur = prev;
        }
        Ok(Membership::Yes(Word::new(letters)))
    }
}

/// 𝔽₂⁺ in BS(1,2): `η(l_1⋯l_k) = x ↦ 2^k x + Σ d_i 2^{i-1}` with `d = 0`
/// for `a`, `1` for `b`. So membership means slope `2^k`, `k ≥ 0`, and
/// an integer intercept in `[0, 2^k)`.
fn bs12_free_membership(f: &DyadicAffine) -> Membership {
    if f.slope_log < 0 || !f.intercept.is_integer() || f.intercept.is_negative() {
        return Membership::No;
    }
    let mut c: BigInt = f.intercept.numerator().clone();
    if c >= (BigInt::one() << (f.slope_log as usize)) {
        return Membership::No;
    }
    let mut w = Word::empty();
    for _ in 0..f.slope_log {
        let bit = (&c % 2u32).is_one();
        w.push(usize::from(bit));
        c >>= 1u32;
    }
    debug_assert!(c.is_zero());
    Membership::Yes(w)
}

fn baumslag_for(semigroup: SemigroupPresentation, m: i64, n: i64, stable: usize, base: usize) -> SGroup {
    let mut rel = SignedWord::empty();
    rel.push(Letter::pos(stable));
    for _ in 0..m {
        rel.push(Letter::pos(base));
    }
    rel.push(Letter::neg(stable));
    for _ in 0..n {
        rel.push(Letter::neg(base));
    }
    let mut eta = vec![GroupElem::Finite(0); 2];
    if (m, n) == (1, 2) {
        eta[stable] = GroupElem::DyadicAffine(DyadicAffine::from_ints(1, 0));
        eta[base] = GroupElem::DyadicAffine(DyadicAffine::from_ints(0, 1));
        SGroup {
            group: Group::DyadicBs12,
            semigroup,
            eta,
            embedding: Embedding::Bs12StandardPositive { stable, base },
            relators: Some(vec![rel]),
        }
    } else {
        let group = Group::BaumslagSolitar(BaumslagSolitar::new(m, n));
        eta[stable] = group.generator(0);
        eta[base] = group.generator(1);
        SGroup { group, semigroup, eta, embedding: Embedding::BaumslagPositive { stable, base }, relators: Some(vec![rel]) }
    }
}

/// Product of generator images in order.
pub fn eta_apply(sg: &SGroup, w: &Word) -> GroupElem {
    let mut acc = sg.group.identity();
    for &g in w.letters() {
        acc = sg.group.mul(&acc, &sg.eta[g]).expect("η images share the family");
    }
    acc
}

/// `u = s^k`-style power count: `(s, k)` when `w` is `s` repeated.
fn as_power(w: &Word) -> Option<(usize, usize)> {
    let first = *w.letters().first()?;
    w.letters().iter().all(|&x| x == first).then_some((first, w.len()))
}

/// Matches `a b^m = b^n a` (either side order); returns `(stable, base, m, n)`.
fn match_baumslag(u: &Word, v: &Word) -> Option<(usize, usize, i64, i64)> {
    let try_match = |l: &Word, r: &Word| -> Option<(usize, usize, i64, i64)> {
        let (&stable, rest) = l.letters().split_first()?;
        let (base, m) = as_power(&Word::new(rest.to_vec()))?;
        let (&last, init) = r.letters().split_last()?;
        let (base2, n) = as_power(&Word::new(init.to_vec()))?;
        (stable != base && last == stable && base2 == base).then_some((stable, base, m as i64, n as i64))
    };
    try_match(u, v).or_else(|| try_match(v, u))
}

/// The group with the same generators and relations, η the letter-wise
/// inclusion. A built-in normal form is attached when the presentation
/// matches one: no relations (𝔽_n), commutators only (ℤ^d), or a single
/// Baumslag–Solitar relation `a b^m = b^n a`.
pub fn free_s_group_of(p: &SemigroupPresentation) -> SGroup {
    let n = p.rank();
    if p.relations.is_empty() {
        let mut sg = SGroup::free(n);
        sg.semigroup = p.clone();
        return sg;
    }
    let only_commutators = p.relations.iter().all(|(u, v)| {
        u.len() == 2 && v.len() == 2 && u.letters()[0] == v.letters()[1] && u.letters()[1] == v.letters()[0]
    });
    if only_commutators && p.has_all_commutators() {
        let mut sg = SGroup::nat_in_int(n);
        sg.semigroup = p.clone();
        return sg;
    }
    if n == 2 && p.relations.len() == 1 {
        let (u, v) = &p.relations[0];
        if let Some((stable, base, m, nn)) = match_baumslag(u, v) {
            if m != nn || m > 1 {
                return baumslag_for(p.clone(), m, nn, stable, base);
            }
        }
    }
    SGroup::generic(p.clone(), EqualityBudget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::GeneratorSet;

    #[test]
    fn eta_examples() {
        let sg = SGroup::bs12();
        assert_eq!(sg.eta(&Word::new(vec![0, 1])), GroupElem::DyadicAffine(DyadicAffine::from_ints(2, 2)));
        let f = SGroup::free(2);
        assert_eq!(
            f.eta(&Word::new(vec![0, 1])),
            GroupElem::FreeReduced(SignedWord::from_letters(vec![Letter::pos(0), Letter::pos(1)]))
        );
        let z = SGroup::nat_in_int(2);
        assert_eq!(z.eta(&Word::new(vec![0, 0, 1, 1, 1])), GroupElem::IntVector(vec![2, 3]));
    }

    #[test]
    fn free_s_group_detection() {
        let f = free_s_group_of(&SemigroupPresentation::parse("gens: a b;").unwrap());
        assert_eq!(f.group, Group::Free { rank: 2 });
        let z = free_s_group_of(&SemigroupPresentation::parse("gens: x y; rels: xy = yx;").unwrap());
        assert_eq!(z.group, Group::FreeAbelian { rank: 2 });
        let b = free_s_group_of(&SemigroupPresentation::parse("gens: a b; rels: ab = bba;").unwrap());
        assert_eq!(b.group, Group::DyadicBs12);
        assert_eq!(b.embedding, Embedding::Bs12StandardPositive { stable: 0, base: 1 });
        let b23 = free_s_group_of(&SemigroupPresentation::parse("gens: a b; rels: a b b = b b b a;").unwrap());
        assert_eq!(b23.group, Group::BaumslagSolitar(BaumslagSolitar::new(2, 3)));
        let swapped = free_s_group_of(&SemigroupPresentation::parse("gens: p q; rels: q p p = p p p q;").unwrap());
        assert_eq!(swapped.group, Group::BaumslagSolitar(BaumslagSolitar::new(2, 3)));
        assert_eq!(swapped.embedding, Embedding::BaumslagPositive { stable: 1, base: 0 });
        let g = free_s_group_of(&SemigroupPresentation::parse("gens: a b; rels: aab = bba;").unwrap());
        assert_eq!(g.embedding, Embedding::Generic);
    }

    #[test]
    fn relators_hold_in_the_group() {
        for sg in [
            SGroup::bs12(),
            SGroup::nat_in_int(3),
            SGroup::baumslag_solitar(2, 3),
            SGroup::baumslag_solitar(1, 2),
            free_s_group_of(&SemigroupPresentation::parse("gens: p q; rels: q p p = p p p q;").unwrap()),
        ] {
            for r in sg.relators.as_ref().unwrap() {
                let e = sg.eta_signed(r).unwrap();
                assert_eq!(sg.group.is_identity(&e), TriState::Equal, "{}", sg.group.name());
            }
        }
    }

    #[test]
    fn eta_is_a_morphism() {
        for sg in [SGroup::bs12(), SGroup::free(2), SGroup::baumslag_solitar(2, 3), SGroup::bs23_theta()] {
            let ws = Word::all_up_to(2, 3);
            for u in &ws {
                for v in &ws {
                    let l = sg.eta(&u.concat(v));
                    let r = sg.group.mul(&sg.eta(u), &sg.eta(v)).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
    }

    #[test]
    fn eta_injective_on_short_words() {
        // distinct semigroup elements have distinct normal forms (length ≤ 8)
        for sg in [SGroup::bs12(), SGroup::free(2)] {
            let mut seen = BTreeMap::new();
            for w in Word::all_up_to(2, 8) {
                assert!(seen.insert(sg.eta(&w), w.clone()).is_none(), "collision at {:?}", w);
            }
        }
        let ab = SGroup::nat_in_int(2);
        let mut seen = BTreeMap::new();
        for w in Word::all_up_to(2, 8) {
            let key = w.counts(2);
            if let Some(prev) = seen.insert(ab.eta(&w), key.clone()) {
                assert_eq!(prev, key);
            }
        }
        // BS(2,3)+ and θ∘γ: classes modulo ab² = b³a, separated by the affine model
        for sg in [SGroup::baumslag_solitar(2, 3), SGroup::bs23_theta()] {
            let Group::BaumslagSolitar(bs) = &sg.group else { panic!() };
            let mut by_form: BTreeMap<GroupElem, super::super::affine::RationalAffine> = BTreeMap::new();
            for w in Word::all_up_to(2, 8) {
                let img = affine_image(bs, &w.to_signed());
                if let Some(prev) = by_form.insert(sg.eta(&w), img.clone()) {
                    assert_eq!(prev, img);
                }
            }
        }
    }

    #[test]
    fn bs12_membership_matches_enumeration() {
        let sg = SGroup::bs12();
        let mut images = BTreeMap::new();
        for w in Word::all_up_to(2, 10) {
            images.insert(sg.eta(&w), w);
        }
        for (e, w) in &images {
            assert_eq!(sg.membership(e, 0).unwrap(), Membership::Yes(w.clone()));
        }
        // ball elements that are not positive
        let g = &sg.group;
        for s in ["a^-1", "b^-1", "b^-1 a b", "a b^-1", "a^-1 b"] {
            let w = GeneratorSet::letters(2).parse_signed(s).unwrap();
            let e = sg.eta_signed(&w).unwrap();
            assert_eq!(sg.membership(&e, 0).unwrap(), Membership::No, "{s}");
            let _ = g;
        }
    }

    #[test]
    fn bs12_standard_membership() {
        let sg = free_s_group_of(&SemigroupPresentation::parse("gens: a b; rels: ab = bba;").unwrap());
        for w in Word::all_up_to(2, 6) {
            match sg.membership(&sg.eta(&w), 0).unwrap() {
                Membership::Yes(found) => assert_eq!(sg.eta(&found), sg.eta(&w)),
                other => panic!("{other:?}"),
            }
        }
        let inv = sg.group.inv(&sg.eta[0]).unwrap();
        assert_eq!(sg.membership(&inv, 0).unwrap(), Membership::No);
    }

    #[test]
    fn baumslag_membership_is_sound() {
        let sg = SGroup::baumslag_solitar(2, 3);
        let w = Word::new(vec![0, 1, 1, 0, 1]);
        match sg.membership(&sg.eta(&w), 6).unwrap() {
            Membership::Yes(found) => assert_eq!(sg.eta(&found), sg.eta(&w)),
            other => panic!("{other:?}"),
        }
        let inv = sg.group.inv(&sg.eta[1]).unwrap();
        assert_eq!(sg.membership(&inv, 6).unwrap(), Membership::No);
    }

    #[test]
    fn finite_membership_is_subgroup_closure() {
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let t12 = FiniteGroup::cycle_index(3, &[&[1, 2]]).unwrap();
        let sg = SGroup::finite(SemigroupPresentation::free(1), s3.clone(), &[t12]);
        assert!(sg.membership(&GroupElem::Finite(t12), 0).unwrap().is_yes());
        assert!(sg.membership(&GroupElem::Finite(s3.identity()), 0).unwrap().is_yes());
        let t13 = FiniteGroup::cycle_index(3, &[&[1, 3]]).unwrap();
        assert_eq!(sg.membership(&GroupElem::Finite(t13), 0).unwrap(), Membership::No);
    }
}
