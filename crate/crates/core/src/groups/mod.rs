//! Normal-form engines for the receiving groups.
//!
//! A [`Group`] is a family descriptor; [`GroupElem`] values are canonical
//! within their family (except `Generic`, whose equality is only bounded).
//! Products follow composition order: `mul(g, h)` is `g·h`, and for the
//! affine families `(g·h)(x) = g(h(x))`.

pub mod abelian;
pub mod affine;
pub mod britton;
pub mod dyadic;
pub mod finite;
pub mod generic;
pub mod sgroup;
pub mod snf;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

pub use abelian::{grothendieck_group, AbelianStructure, Commutativity};
pub use britton::{BaumslagSolitar, BrittonForm};
pub use dyadic::{Dyadic, DyadicAffine};
pub use finite::FiniteGroup;
pub use generic::GenericGroup;
pub use sgroup::{eta_apply, free_s_group_of, Embedding, Membership, SGroup};

use crate::words::{free_reduce, Letter, SignedWord, TriState};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group family mismatch")]
    FamilyMismatch,
    #[error("invalid finite group table: {0}")]
    InvalidTable(String),
    #[error("element has no word over the family generators")]
    NoGeneratorWord,
    #[error("generator map has {got} images, family has {expected} generators")]
    GeneratorCount { expected: usize, got: usize },
    #[error("commutative presentation required (missing commutation relations)")]
    NotDeclaredCommutative,
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElem {
    /// Element of ℤ^d.
    IntVector(Vec<i64>),
    /// Reduced word in a free group.
    FreeReduced(SignedWord),
    /// BS(1,2) as `x ↦ 2^k x + c`.
    DyadicAffine(DyadicAffine),
    /// BS(m,n) Britton normal form.
    Britton(BrittonForm),
    /// Index into a finite group's table.
    Finite(usize),
    /// Freely reduced word; equality is bounded.
    Generic(SignedWord),
}

impl GroupElem {
    pub fn family_name(&self) -> &'static str {
        match self {
            GroupElem::IntVector(_) => "Z^d",
            GroupElem::FreeReduced(_) => "F_n",
            GroupElem::DyadicAffine(_) => "BS(1,2)",
            GroupElem::Britton(_) => "BS(m,n)",
            GroupElem::Finite(_) => "finite",
            GroupElem::Generic(_) => "generic",
        }
    }
}

/// Group family descriptor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    FreeAbelian { rank: usize },
    Free { rank: usize },
    /// BS(1,2) realized by dyadic affine maps; generators
    /// `a: x ↦ 2x`, `b: x ↦ 2x + 1`.
    DyadicBs12,
    BaumslagSolitar(BaumslagSolitar),
    Finite(Arc<FiniteGroup>),
    Generic(Arc<GenericGroup>),
}

impl Group {
    pub fn name(&self) -> String {
        match self {
            Group::FreeAbelian { rank } => alloc::format!("Z^{rank}"),
            Group::Free { rank } => alloc::format!("F_{rank}"),
            Group::DyadicBs12 => "BS(1,2)".into(),
            Group::BaumslagSolitar(b) => alloc::format!("BS({},{})", b.m, b.n),
            Group::Finite(f) => alloc::format!("finite({})", f.order()),
            Group::Generic(_) => "generic".into(),
        }
    }

    /// True when elements have canonical payloads (structural equality is
    /// group equality).
    pub fn is_canonical(&self) -> bool {
        !matches!(self, Group::Generic(_))
    }

    pub fn identity(&self) -> GroupElem {
        match self {
            Group::FreeAbelian { rank } => GroupElem::IntVector(vec![0; *rank]),
            Group::Free { .. } => GroupElem::FreeReduced(SignedWord::empty()),
            Group::DyadicBs12 => GroupElem::DyadicAffine(DyadicAffine::identity()),
            Group::BaumslagSolitar(_) => GroupElem::Britton(BrittonForm::identity()),
            Group::Finite(f) => GroupElem::Finite(f.identity()),
            Group::Generic(_) => GroupElem::Generic(SignedWord::empty()),
        }
    }

    /// Number of family generators (0 for finite groups).
    pub fn generator_count(&self) -> usize {
        match self {
            Group::FreeAbelian { rank } | Group::Free { rank } => *rank,
            Group::DyadicBs12 | Group::BaumslagSolitar(_) => 2,
            Group::Finite(_) => 0,
            Group::Generic(g) => g.generators.len(),
        }
    }

    pub fn generator(&self, i: usize) -> GroupElem {
        assert!(i < self.generator_count(), "generator index out of range");
        match self {
            Group::FreeAbelian { rank } => {
                let mut v = vec![0; *rank];
                v[i] = 1;
                GroupElem::IntVector(v)
            }
            Group::Free { .. } => GroupElem::FreeReduced(SignedWord::from_letters(vec![Letter::pos(i)])),
            Group::DyadicBs12 => GroupElem::DyadicAffine(DyadicAffine::from_ints(1, i as i64)),
            Group::BaumslagSolitar(b) => GroupElem::Britton(b.generator(i)),
            Group::Finite(_) => unreachable!(),
            Group::Generic(_) => GroupElem::Generic(SignedWord::from_letters(vec![Letter::pos(i)])),
        }
    }

    pub fn mul(&self, g: &GroupElem, h: &GroupElem) -> Result<GroupElem, GroupError> {
        use GroupElem as E;
        Ok(match (self, g, h) {
            (Group::FreeAbelian { rank }, E::IntVector(a), E::IntVector(b)) if a.len() == *rank && b.len() == *rank => {
                E::IntVector(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Group::Free { .. }, E::FreeReduced(a), E::FreeReduced(b)) => E::FreeReduced(free_reduce(&a.concat(b))),
            (Group::DyadicBs12, E::DyadicAffine(a), E::DyadicAffine(b)) => E::DyadicAffine(a.compose(b)),
            (Group::BaumslagSolitar(bs), E::Britton(a), E::Britton(b)) => E::Britton(bs.mul(a, b)),
            (Group::Finite(f), E::Finite(a), E::Finite(b)) if *a < f.order() && *b < f.order() => E::Finite(f.mul(*a, *b)),
            (Group::Generic(_), E::Generic(a), E::Generic(b)) => E::Generic(free_reduce(&a.concat(b))),
            _ => return Err(GroupError::FamilyMismatch),
        })
    }

    pub fn inv(&self, g: &GroupElem) -> Result<GroupElem, GroupError> {
        use GroupElem as E;
        Ok(match (self, g) {
            (Group::FreeAbelian { .. }, E::IntVector(a)) => E::IntVector(a.iter().map(|x| -x).collect()),
            (Group::Free { .. }, E::FreeReduced(a)) => E::FreeReduced(a.inverse()),
            (Group::DyadicBs12, E::DyadicAffine(a)) => E::DyadicAffine(a.inverse()),
            (Group::BaumslagSolitar(bs), E::Britton(a)) => E::Britton(bs.inv(a)),
            (Group::Finite(f), E::Finite(a)) => E::Finite(f.inv(*a)),
            (Group::Generic(_), E::Generic(a)) => E::Generic(a.inverse()),
            _ => return Err(GroupError::FamilyMismatch),
        })
    }

    pub fn is_identity(&self, g: &GroupElem) -> TriState {
        match (self, g) {
            (Group::Generic(gg), GroupElem::Generic(w)) => gg.is_trivial(w),
            _ => {
                if *g == self.identity() {
                    TriState::Equal
                } else {
                    TriState::NotEqualProven
                }
            }
        }
    }

    /// Equality: exact for canonical families, bounded for `Generic`.
    pub fn equal(&self, g: &GroupElem, h: &GroupElem) -> Result<TriState, GroupError> {
        if self.is_canonical() {
            self.inv(g)?;
            self.inv(h)?;
            return Ok(if g == h { TriState::Equal } else { TriState::NotEqualProven });
        }
        if g == h {
            return Ok(TriState::Equal);
        }
        let d = self.mul(g, &self.inv(h)?)?;
        Ok(self.is_identity(&d))
    }

    /// Evaluates a word over the family generators.
    pub fn eval(&self, w: &SignedWord) -> Result<GroupElem, GroupError> {
        match self {
            Group::BaumslagSolitar(bs) => Ok(GroupElem::Britton(bs.reduce(w))),
            Group::Free { .. } => Ok(GroupElem::FreeReduced(free_reduce(w))),
            Group::Generic(_) => Ok(GroupElem::Generic(free_reduce(w))),
            _ => {
                let gens: Vec<GroupElem> = (0..self.generator_count()).map(|i| self.generator(i)).collect();
                self.eval_with(&gens, w)
            }
        }
    }

    /// Evaluates `w` with letter `i` standing for `images[i]`.
    pub fn eval_with(&self, images: &[GroupElem], w: &SignedWord) -> Result<GroupElem, GroupError> {
        let invs: Vec<GroupElem> = images.iter().map(|g| self.inv(g)).collect::<Result<_, _>>()?;
        let mut acc = self.identity();
        for l in w.letters() {
            let x = if l.inverse { &invs[l.gen] } else { &images[l.gen] };
            acc = self.mul(&acc, x)?;
        }
        Ok(acc)
    }

    /// A word over the family generators representing `g`.
    pub fn to_word(&self, g: &GroupElem) -> Result<SignedWord, GroupError> {
        use GroupElem as E;
        match (self, g) {
            (Group::FreeAbelian { .. }, E::IntVector(v)) => {
                let mut w = SignedWord::empty();
                for (i, &x) in v.iter().enumerate() {
                    let l = if x < 0 { Letter::neg(i) } else { Letter::pos(i) };
                    for _ in 0..x.unsigned_abs() {
                        w.push(l);
                    }
                }
                Ok(w)
            }
            (Group::Free { .. }, E::FreeReduced(w)) | (Group::Generic(_), E::Generic(w)) => Ok(w.clone()),
            (Group::BaumslagSolitar(_), E::Britton(f)) => Ok(f.to_word()),
            (Group::DyadicBs12, E::DyadicAffine(f)) => dyadic_to_word(f),
            (Group::Finite(_), E::Finite(_)) => Err(GroupError::NoGeneratorWord),
            _ => Err(GroupError::FamilyMismatch),
        }
    }

    /// Relators over the family generators, when the family has a finite
    /// presentation built in.
    pub fn relators(&self) -> Option<Vec<SignedWord>> {
        match self {
            Group::FreeAbelian { rank } => {
                let mut out = Vec::new();
                for i in 0..*rank {
                    for j in i + 1..*rank {
                        out.push(SignedWord::from_letters(vec![
                            Letter::pos(i),
                            Letter::pos(j),
                            Letter::neg(i),
                            Letter::neg(j),
                        ]));
                    }
                }
                Some(out)
            }
            Group::Free { .. } => Some(Vec::new()),
            Group::DyadicBs12 => Some(vec![bs12_relator()]),
            Group::BaumslagSolitar(bs) => Some(vec![bs.relator()]),
            Group::Finite(_) => None,
            Group::Generic(g) => Some(g.relators.clone()),
        }
    }
}

/// `b⁻¹ a b a⁻¹ b⁻¹ a`, i.e. `b⁻¹ab = a⁻¹ba`, in the `a: 2x`, `b: 2x+1`
/// coordinates.
pub fn bs12_relator() -> SignedWord {
    SignedWord::from_letters(vec![
        Letter::neg(1),
        Letter::pos(0),
        Letter::pos(1),
        Letter::neg(0),
        Letter::neg(1),
        Letter::pos(0),
    ])
}

/// `x ↦ 2^k x + p/2^q` equals `α^{-q} β^p α^{q+k}` with `α = a`,
/// `β = b a⁻¹` (`β: x ↦ x + 1`).
fn dyadic_to_word(f: &DyadicAffine) -> Result<SignedWord, GroupError> {
    use num_traits::ToPrimitive;
    let q = f.intercept.exponent() as i64;
    let p = f.intercept.numerator().to_i64().ok_or(GroupError::NoGeneratorWord)?;
    let mut w = SignedWord::empty();
    let push_alpha = |w: &mut SignedWord, e: i64| {
        for _ in 0..e.unsigned_abs() {
            w.push(if e < 0 { Letter::neg(0) } else { Letter::pos(0) });
        }
    };
    push_alpha(&mut w, -q);
    for _ in 0..p.unsigned_abs() {
        if p > 0 {
            w.push(Letter::pos(1));
            w.push(Letter::neg(0));
        } else {
            w.push(Letter::pos(0));
            w.push(Letter::neg(1));
        }
    }
    push_alpha(&mut w, q + f.slope_log);
    Ok(free_reduce(&w))
}

/// Homomorphic image of `g` under the map sending source generator `i` to
/// `images[i]` in `target`.
pub fn homomorphism_apply(source: &Group, target: &Group, images: &[GroupElem], g: &GroupElem) -> Result<GroupElem, GroupError> {
    if images.len() != source.generator_count() {
        return Err(GroupError::GeneratorCount { expected: source.generator_count(), got: images.len() });
    }
    let w = source.to_word(g)?;
    target.eval_with(images, &w)
}

/// Endomorphism given by generator images, e.g. `θ(a) = a`, `θ(b) = b²`.
pub fn endomorphism_apply(group: &Group, theta: &[GroupElem], g: &GroupElem) -> Result<GroupElem, GroupError> {
    homomorphism_apply(group, group, theta, g)
}
