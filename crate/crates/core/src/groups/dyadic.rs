//! Exact affine maps `x ↦ 2^k·x + c` with dyadic intercepts, a faithful
//! model of BS(1,2).

use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dyadic rational `num / 2^exp` in lowest terms (`num` odd or `exp == 0`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dyadic {
    num: BigInt,
    exp: u32,
}

impl Dyadic {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut d = Dyadic { num, exp };
        d.normalize();
        d
    }

    pub fn zero() -> Self {
        Dyadic { num: BigInt::zero(), exp: 0 }
    }

    pub fn integer(n: i64) -> Self {
        Dyadic { num: BigInt::from(n), exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && self.num.is_even() {
            self.num >>= 1u32;
            self.exp -= 1;
        }
    }

    pub fn numerator(&self) -> &BigInt {
        &self.num
    }

    pub fn exponent(&self) -> u32 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.exp == 0
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn neg(&self) -> Dyadic {
        Dyadic { num: -&self.num, exp: self.exp }
    }

    pub fn add(&self, other: &Dyadic) -> Dyadic {
        let e = self.exp.max(other.exp);
        let a = &self.num << (e - self.exp);
        let b = &other.num << (e - other.exp);
        Dyadic::new(a + b, e)
    }

    /// `2^k · self`
    pub fn shift(&self, k: i64) -> Dyadic {
        if k >= 0 {
            let k = k as u32;
            if k <= self.exp {
                Dyadic::new(self.num.clone(), self.exp - k)
            } else {
                Dyadic::new(&self.num << (k - self.exp), 0)
            }
        } else {
            Dyadic::new(self.num.clone(), self.exp + (-k) as u32)
        }
    }

    /// Integer value when the denominator is 1.
    pub fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.num.clone())
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, BigInt::one() << self.exp)
        }
    }
}

/// `x ↦ 2^slope_log · x + intercept`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DyadicAffine {
    pub slope_log: i64,
    pub intercept: Dyadic,
}

impl DyadicAffine {
    pub fn identity() -> Self {
        DyadicAffine { slope_log: 0, intercept: Dyadic::zero() }
    }

    pub fn new(slope_log: i64, intercept: Dyadic) -> Self {
        DyadicAffine { slope_log, intercept }
    }

    pub fn from_ints(slope_log: i64, intercept: i64) -> Self {
        DyadicAffine { slope_log, intercept: Dyadic::integer(intercept) }
    }

    /// `self ∘ other`: `(k, c)∘(m, d) = (k + m, 2^k·d + c)`.
    pub fn compose(&self, other: &DyadicAffine) -> DyadicAffine {
        DyadicAffine {
            slope_log: self.slope_log + other.slope_log,
            intercept: other.intercept.shift(self.slope_log).add(&self.intercept),
        }
    }

    pub fn inverse(&self) -> DyadicAffine {
        DyadicAffine { slope_log: -self.slope_log, intercept: self.intercept.shift(-self.slope_log).neg() }
    }

    pub fn is_identity(&self) -> bool {
        self.slope_log == 0 && self.intercept.is_zero()
    }

    pub fn apply(&self, x: &Dyadic) -> Dyadic {
        x.shift(self.slope_log).add(&self.intercept)
    }
}

impl fmt::Display for DyadicAffine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x ↦ 2^{}·x + {}", self.slope_log, self.intercept)
    }
}
