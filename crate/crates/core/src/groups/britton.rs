//! Britton normal forms for Baumslag–Solitar groups.
//!
//! Convention: `BS(m,n) = ⟨a, b | a·b^m·a⁻¹ = b^n⟩`, generator 0 is the
//! stable letter `a`, generator 1 the base letter `b`. This is the same as
//! `a b^m = b^n a`, so `BS(2,3) = ⟨a,b | ab² = b³a⟩`.
//!
//! A normal form is `b^{e_0} a^{ε_1} b^{e_1} ⋯ a^{ε_k} b^{tail}` with no
//! pinch `a b^{jm} a⁻¹` / `a⁻¹ b^{jn} a`, and `0 ≤ e_{i-1} < n` before
//! `a`, `0 ≤ e_{i-1} < m` before `a⁻¹`.

use alloc::vec::Vec;

use crate::words::{Letter, SignedWord};

pub const STABLE: usize = 0;
pub const BASE: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrittonForm {
    /// `(exponent of b before the stable letter, stable letter inverted?)`
    syllables: Vec<(i64, bool)>,
    tail: i64,
}

impl BrittonForm {
    pub fn identity() -> Self {
        BrittonForm { syllables: Vec::new(), tail: 0 }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty() && self.tail == 0
    }

    /// Number of stable letters.
    pub fn stable_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn tail(&self) -> i64 {
        self.tail
    }

    pub fn to_word(&self) -> SignedWord {
        let mut w = SignedWord::empty();
        let push_base = |w: &mut SignedWord, e: i64| {
            let l = if e < 0 { Letter::neg(BASE) } else { Letter::pos(BASE) };
            for _ in 0..e.unsigned_abs() {
                w.push(l);
            }
        };
        for &(e, inv) in &self.syllables {
            push_base(&mut w, e);
            w.push(if inv { Letter::neg(STABLE) } else { Letter::pos(STABLE) });
        }
        push_base(&mut w, self.tail);
        w
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BaumslagSolitar {
    pub m: i64,
    pub n: i64,
}

impl BaumslagSolitar {
    pub fn new(m: i64, n: i64) -> Self {
        assert!(m >= 1 && n >= 1, "BS(m,n) needs positive parameters");
        BaumslagSolitar { m, n }
    }

    fn push(&self, form: &mut BrittonForm, l: Letter) {
        if l.gen == BASE {
            form.tail = form.tail.checked_add(l.sign()).expect("exponent overflow");
            return;
        }
        let inverse = l.inverse;
        if let Some(&(before, top_inv)) = form.syllables.last() {
            if top_inv != inverse {
                // a b^tail a⁻¹ with m | tail, or a⁻¹ b^tail a with n | tail
                let (div, mul) = if top_inv { (self.n, self.m) } else { (self.m, self.n) };
                if form.tail % div == 0 {
                    form.syllables.pop();
                    let moved = (form.tail / div).checked_mul(mul).expect("exponent overflow");
                    form.tail = before.checked_add(moved).expect("exponent overflow");
                    return;
                }
            }
        }
        // b^{qn} a = a b^{qm};  b^{qm} a⁻¹ = a⁻¹ b^{qn}
        let (modulus, carry) = if inverse { (self.m, self.n) } else { (self.n, self.m) };
        let rem = form.tail.rem_euclid(modulus);
        let q = form.tail.div_euclid(modulus);
        form.syllables.push((rem, inverse));
        form.tail = q.checked_mul(carry).expect("exponent overflow");
    }

    /// Britton reduction of an arbitrary word over `{a, b}`.
    pub fn reduce(&self, w: &SignedWord) -> BrittonForm {
        let mut form = BrittonForm::identity();
        for &l in w.letters() {
            debug_assert!(l.gen < 2);
            self.push(&mut form, l);
        }
        form
    }

    pub fn mul(&self, g: &BrittonForm, h: &BrittonForm) -> BrittonForm {
        let mut form = g.clone();
        for &l in h.to_word().letters() {
            self.push(&mut form, l);
        }
        form
    }

    pub fn inv(&self, g: &BrittonForm) -> BrittonForm {
        self.reduce(&g.to_word().inverse())
    }

    pub fn generator(&self, i: usize) -> BrittonForm {
        self.reduce(&SignedWord::from_letters(alloc::vec![Letter::pos(i)]))
    }

    /// Defining relator `a b^m a⁻¹ b^{-n}`.
    pub fn relator(&self) -> SignedWord {
        let mut w = SignedWord::empty();
        w.push(Letter::pos(STABLE));
        for _ in 0..self.m {
            w.push(Letter::pos(BASE));
        }
        w.push(Letter::neg(STABLE));
        for _ in 0..self.n {
            w.push(Letter::neg(BASE));
        }
        w
    }
}
