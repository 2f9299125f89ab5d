//! Følner windows and cylinder-cover entropy `log N(F_n) / |F_n|`
//! (natural log), where `N(F)` counts locally admissible patterns on `F`.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::groups::{GroupElem, SGroup};
use crate::subshift::{window_csp, CountMethod, LocalRules, Side, SubshiftError, SubshiftSpec, TransferGraph, DEFAULT_MEMBERSHIP_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DynamicsError {
    #[error("no Følner sequence for this family")]
    NotAmenableFamily,
    #[error("generator {0} out of range")]
    BadGenerator(usize),
    #[error("window index must be at least 1")]
    ZeroWindow,
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FolnerFamily {
    /// Boxes `[0,n)^d` in ℕ^d.
    Nat(usize),
    /// Boxes `[0,n)^d` in ℤ^d.
    Int(usize),
    /// Boxes `[−n,n)^d` in ℤ^d.
    IntCentered(usize),
    /// Free monoid of the given rank; has no Følner sequence.
    FreeMonoid(usize),
}

impl FolnerFamily {
    pub fn dim(&self) -> usize {
        match *self {
            FolnerFamily::Nat(d) | FolnerFamily::Int(d) | FolnerFamily::IntCentered(d) | FolnerFamily::FreeMonoid(d) => d,
        }
    }

    pub fn window(&self, n: usize) -> Result<Vec<Vec<i64>>, DynamicsError> {
        if n == 0 {
            return Err(DynamicsError::ZeroWindow);
        }
        let (lo, hi) = match self {
            FolnerFamily::Nat(_) | FolnerFamily::Int(_) => (0, n as i64),
            FolnerFamily::IntCentered(_) => (-(n as i64), n as i64),
            FolnerFamily::FreeMonoid(_) => return Err(DynamicsError::NotAmenableFamily),
        };
        let mut out = vec![Vec::new()];
        for _ in 0..self.dim() {
            out = out.into_iter().flat_map(|p| (lo..hi).map(move |x| [p.as_slice(), &[x]].concat())).collect();
        }
        Ok(out)
    }

    fn side(&self) -> Side {
        match self {
            FolnerFamily::Nat(_) => Side::Semigroup { bound: DEFAULT_MEMBERSHIP_BOUND },
            _ => Side::Group,
        }
    }
}

/// `|sF_n △ F_n| / |F_n|` for the unit vector `s = e_gen`.
pub fn folner_defect(fam: FolnerFamily, gen: usize, n: usize) -> Result<Ratio<u64>, DynamicsError> {
    if gen >= fam.dim() {
        return Err(DynamicsError::BadGenerator(gen));
    }
    let f: BTreeSet<Vec<i64>> = fam.window(n)?.into_iter().collect();
    let shifted: BTreeSet<Vec<i64>> = f
        .iter()
        .map(|p| {
            let mut q = p.clone();
            q[gen] += 1;
            q
        })
        .collect();
    let diff = f.symmetric_difference(&shifted).count() as u64;
    Ok(Ratio::new(diff, f.len() as u64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EntropyMethod {
    /// Transfer matrix whenever it applies.
    Auto,
    /// Always count by search.
    Enumerate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyEstimate {
    pub n: usize,
    pub size: usize,
    pub count: BigUint,
    pub estimate: f64,
    pub method: CountMethod,
}

/// Natural logarithm of a big integer (0 for 0).
pub fn ln_big(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return 0.0;
    }
    if bits < 1000 {
        return libm::log(x.to_f64().unwrap_or(f64::MAX));
    }
    let shift = bits - 64;
    let top = (x >> shift).to_f64().unwrap_or(f64::MAX);
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

/// Counts patterns on `F_1, …, F_{n_max}`.
pub fn entropy_estimate(spec: &SubshiftSpec, fam: FolnerFamily, n_max: usize, method: EntropyMethod) -> Result<Vec<EntropyEstimate>, DynamicsError> {
    if matches!(fam, FolnerFamily::FreeMonoid(_)) {
        return Err(DynamicsError::NotAmenableFamily);
    }
    let sg = SGroup::nat_in_int(fam.dim());
    let rules = LocalRules::from_spec(&sg, spec)?;
    let transfer = if fam.dim() == 1 && method == EntropyMethod::Auto {
        TransferGraph::new(&rules, matches!(fam, FolnerFamily::Nat(_)))?
    } else {
        None
    };
    let mut out = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let window = fam.window(n)?;
        let (count, how) = match &transfer {
            Some(tg) => (tg.count(window.len()), CountMethod::TransferMatrix),
            None => {
                let cells: Vec<GroupElem> = window.into_iter().map(GroupElem::IntVector).collect();
                (window_csp(&sg, &rules, &cells, fam.side())?.count(), CountMethod::Enumeration)
            }
        };
        let size = fam.window(n)?.len();
        out.push(EntropyEstimate { n, size, estimate: ln_big(&count) / size as f64, count, method: how });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct EntropyComparison {
    /// `(semigroup side, group side, |difference|)` per `n`.
    pub rows: Vec<(EntropyEstimate, EntropyEstimate, f64)>,
    pub max_difference: f64,
    pub counts_identical: bool,
    /// Total variation of each sequence stays within its first term.
    pub variation_ok: (bool, bool),
}

pub fn entropy_compare(
    spec: &SubshiftSpec,
    fam_s: FolnerFamily,
    fam_g: FolnerFamily,
    n_max: usize,
    method: EntropyMethod,
) -> Result<EntropyComparison, DynamicsError> {
    let s = entropy_estimate(spec, fam_s, n_max, method)?;
    let g = entropy_estimate(spec, fam_g, n_max, method)?;
    let variation_ok = (variation_within_first(&s), variation_within_first(&g));
    let rows: Vec<_> = s.into_iter().zip(g).map(|(a, b)| {
        let d = libm::fabs(a.estimate - b.estimate);
        (a, b, d)
    }).collect();
    let max_difference = rows.iter().map(|r| r.2).fold(0.0, f64::max);
    let counts_identical = rows.iter().all(|(a, b, _)| a.count == b.count);
    Ok(EntropyComparison { rows, max_difference, counts_identical, variation_ok })
}

/// `(log N_{n+1} − log N_n) / (|F_{n+1}| − |F_n|)` for consecutive rows.
/// On one-dimensional boxes this has the same limit as the plain estimate
/// but converges geometrically instead of like `1/n`.
pub fn increment_estimates(est: &[EntropyEstimate]) -> Vec<f64> {
    est.windows(2)
        .map(|w| {
            let grow = w[1].size.saturating_sub(w[0].size).max(1) as f64;
            (ln_big(&w[1].count) - ln_big(&w[0].count)) / grow
        })
        .collect()
}

/// `Σ |e_{n+1} − e_n| ≤ e_1`; reported, never enforced.
pub fn variation_within_first(est: &[EntropyEstimate]) -> bool {
    let Some(first) = est.first() else { return true };
    let tv: f64 = est.windows(2).map(|w| libm::fabs(w[1].estimate - w[0].estimate)).sum();
    tv <= first.estimate + 1e-12
}
