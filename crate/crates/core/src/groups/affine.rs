//! Rational affine image of BS(m,n): `a(x) = (n/m)·x`, `b(x) = x + 1`.
//!
//! The map is a homomorphism from BS(m,n) (it kills `a b^m a⁻¹ b^{-n}`)
//! but not injective in general. Restricted to the positive semigroup it
//! separates elements, which is what the injectivity checks rely on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::britton::BaumslagSolitar;
use crate::words::SignedWord;

/// `x ↦ (n/m)^power · x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAffine {
    pub power: i64,
    pub intercept: BigRational,
}

impl RationalAffine {
    pub fn identity() -> Self {
        RationalAffine { power: 0, intercept: BigRational::zero() }
    }

    pub fn is_identity(&self) -> bool {
        self.power == 0 && self.intercept.is_zero()
    }
}

fn ratio_pow(bs: &BaumslagSolitar, k: i64) -> BigRational {
    let base = BigRational::new(BigInt::from(bs.n), BigInt::from(bs.m));
    if k >= 0 {
        num_traits::pow(base, k as usize)
    } else {
        num_traits::pow(base.recip(), (-k) as usize)
    }
}

pub fn compose(bs: &BaumslagSolitar, f: &RationalAffine, g: &RationalAffine) -> RationalAffine {
    RationalAffine {
        power: f.power + g.power,
        intercept: ratio_pow(bs, f.power) * &g.intercept + &f.intercept,
    }
}

pub fn inverse(bs: &BaumslagSolitar, f: &RationalAffine) -> RationalAffine {
    RationalAffine { power: -f.power, intercept: -(ratio_pow(bs, -f.power) * &f.intercept) }
}

/// Image of a word over `{a, b}`.
pub fn affine_image(bs: &BaumslagSolitar, w: &SignedWord) -> RationalAffine {
    let a = RationalAffine { power: 1, intercept: BigRational::zero() };
    let b = RationalAffine { power: 0, intercept: BigRational::one() };
    let mut acc = RationalAffine::identity();
    for l in w.letters() {
        let g = if l.gen == 0 { &a } else { &b };
        let g = if l.inverse { inverse(bs, g) } else { g.clone() };
        acc = compose(bs, &acc, &g);
    }
    acc
}

/// True when the image cannot come from a positive word. Positive words
/// have `power = #a ≥ 0` and `intercept ≥ 0`; with `power == 0` the word
/// is `b^j` and the intercept is the integer `j`.
pub fn excludes_positive(image: &RationalAffine) -> bool {
    if image.power < 0 || image.intercept.is_negative() {
        return true;
    }
    image.power == 0 && !image.intercept.is_integer()
}
