//! The natural extension as a G-subshift, decided on Cayley balls.
//!
//! `z ∈ Ω^G` belongs to the extension when `(g·z)∘η ∈ X` for every `g`,
//! with `(g·z)(h) = z(hg)`. A forbidden pattern on `{t_i}` therefore sits
//! on the cells `η(t_i)·u` for each anchor `u`, and a generator rule links
//! `h` with `η(s)·h`.
//!
//! Ball consistency never proves the extension non-empty. The one
//! exception is a coset rule whose generator map kills every relator of
//! `G`: then `h ↦ θ(h)g` is a point.

use alloc::vec::Vec;

use thiserror::Error;

use crate::cayley::{build_ball, CayleyBall, CayleyError};
use crate::csp::Csp;
use crate::groups::{GroupError, SGroup};
use crate::subshift::{
    locally_admissible, pattern_cells, window_csp, LocalRules, Pattern, Side, SubshiftError, SubshiftKind,
    SubshiftSpec, DEFAULT_MEMBERSHIP_BOUND,
};
use crate::words::{SignedWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("base pattern cell lies outside the ball")]
    OutsideBall,
    #[error("base pattern is not locally admissible")]
    BaseNotAdmissible,
    #[error("the group carries no relator list")]
    NoRelatorList,
    #[error("spec is not a coset rule")]
    NotCosetRule,
    #[error("radius must be at least 1")]
    ZeroRadius,
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Pushes the spec forward along η (`P_η = P ∘ η⁻¹`).
pub fn pushforward_forbidden(sg: &SGroup, spec: &SubshiftSpec) -> Result<LocalRules, ExtensionError> {
    Ok(LocalRules::from_spec(sg, spec)?)
}

#[derive(Debug, Clone)]
pub struct ExtensionProblem {
    pub sg: SGroup,
    pub spec: SubshiftSpec,
    pub rules: LocalRules,
    pub ball: CayleyBall,
    pub csp: Csp,
}

impl ExtensionProblem {
    pub fn new(sg: &SGroup, spec: &SubshiftSpec, radius: usize) -> Result<Self, ExtensionError> {
        let ball = build_ball(sg, radius)?;
        Self::on_ball(sg, spec, ball)
    }

    pub fn on_ball(sg: &SGroup, spec: &SubshiftSpec, ball: CayleyBall) -> Result<Self, ExtensionError> {
        let rules = pushforward_forbidden(sg, spec)?;
        let csp = window_csp(sg, &rules, &ball.elements, Side::Group)?;
        Ok(ExtensionProblem { sg: sg.clone(), spec: spec.clone(), rules, ball, csp })
    }

    pub fn radius(&self) -> usize {
        self.ball.radius
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    EmptyProven { radius: usize },
    ConsistentUpTo { radius: usize },
    PointExtendsUpTo { radius: usize },
    SurjectiveUpTo { radius: usize },
    NoExtensionAt { radius: usize },
    NotSurjectiveAt { radius: usize },
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::EmptyProven { .. } => "EmptyProven",
            Verdict::ConsistentUpTo { .. } => "ConsistentUpTo",
            Verdict::PointExtendsUpTo { .. } => "PointExtendsUpTo",
            Verdict::SurjectiveUpTo { .. } => "SurjectiveUpTo",
            Verdict::NoExtensionAt { .. } => "NoExtensionAt",
            Verdict::NotSurjectiveAt { .. } => "NotSurjectiveAt",
        }
    }

    pub fn radius(&self) -> usize {
        match *self {
            Verdict::EmptyProven { radius }
            | Verdict::ConsistentUpTo { radius }
            | Verdict::PointExtendsUpTo { radius }
            | Verdict::SurjectiveUpTo { radius }
            | Verdict::NoExtensionAt { radius }
            | Verdict::NotSurjectiveAt { radius } => radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionReport {
    pub verdict: Verdict,
    pub ball_size: usize,
    /// Symbol per ball index.
    pub witness: Option<Vec<u8>>,
    /// Minimal unsatisfiable set of ball indices.
    pub core: Option<Vec<usize>>,
    pub core_words: Vec<SignedWord>,
    /// Non-emptiness of the extension is proven (coset rule, no obstruction).
    pub certified_nonempty: bool,
    /// The base pattern that failed, for surjectivity checks.
    pub failing_pattern: Option<Pattern>,
}

impl ExtensionReport {
    fn new(verdict: Verdict, ball_size: usize) -> Self {
        ExtensionReport {
            verdict,
            ball_size,
            witness: None,
            core: None,
            core_words: Vec::new(),
            certified_nonempty: false,
            failing_pattern: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mode {
    AnyColoring,
    Extend(Pattern),
}

fn with_core(mut report: ExtensionReport, prob: &ExtensionProblem, csp: &Csp) -> ExtensionReport {
    let core = csp.core().unwrap_or_default();
    report.core_words = core.iter().map(|&i| prob.ball.geodesic_word(i)).collect();
    report.core = Some(core);
    report
}

/// Cells and symbols of a base pattern inside the ball.
fn base_in_ball(prob: &ExtensionProblem, base: &Pattern) -> Result<Vec<(usize, u8)>, ExtensionError> {
    let (cells, values) = pattern_cells(&prob.sg, base)?;
    cells
        .iter()
        .zip(values)
        .map(|(c, v)| prob.ball.index_of(c).map(|i| (i, v)).ok_or(ExtensionError::OutsideBall))
        .collect()
}

pub fn solve_ball(prob: &ExtensionProblem, mode: &Mode) -> Result<ExtensionReport, ExtensionError> {
    let r = prob.radius();
    let n = prob.ball.len();
    match mode {
        Mode::AnyColoring => Ok(match prob.csp.solve() {
            Some(w) => ExtensionReport { witness: Some(w), ..ExtensionReport::new(Verdict::ConsistentUpTo { radius: r }, n) },
            None => with_core(ExtensionReport::new(Verdict::EmptyProven { radius: r }, n), prob, &prob.csp),
        }),
        Mode::Extend(base) => {
            let mut csp = prob.csp.clone();
            for (i, v) in base_in_ball(prob, base)? {
                csp.restrict(i, 1u64 << v);
            }
            Ok(match csp.solve() {
                Some(w) => ExtensionReport { witness: Some(w), ..ExtensionReport::new(Verdict::PointExtendsUpTo { radius: r }, n) },
                None => {
                    let mut rep = with_core(ExtensionReport::new(Verdict::NoExtensionAt { radius: r }, n), prob, &csp);
                    rep.failing_pattern = Some(base.clone());
                    rep
                }
            })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomObstruction {
    /// A relator of `G` (over the semigroup generators) with non-trivial image.
    Obstructed(SignedWord),
    Unobstructed,
}

/// Evaluates every relator of `G` through φ in `F`.
pub fn hom_obstruction(sg: &SGroup, spec: &SubshiftSpec) -> Result<HomObstruction, ExtensionError> {
    let SubshiftKind::CosetRule { group, phi } = &spec.kind else { return Err(ExtensionError::NotCosetRule) };
    let relators = sg.relators.as_ref().ok_or(ExtensionError::NoRelatorList)?;
    for r in relators {
        let img = r.letters().iter().fold(group.identity(), |acc, l| {
            let f = if l.inverse { group.inv(phi[l.gen]) } else { phi[l.gen] };
            group.mul(acc, f)
        });
        if img != group.identity() {
            return Ok(HomObstruction::Obstructed(r.clone()));
        }
    }
    Ok(HomObstruction::Unobstructed)
}

fn nonempty_certified(sg: &SGroup, spec: &SubshiftSpec) -> bool {
    matches!(hom_obstruction(sg, spec), Ok(HomObstruction::Unobstructed))
}

/// Solves balls of radius `1..=max_radius`; the first unsatisfiable one
/// proves the extension empty.
pub fn check_empty(sg: &SGroup, spec: &SubshiftSpec, max_radius: usize) -> Result<ExtensionReport, ExtensionError> {
    if max_radius == 0 {
        return Err(ExtensionError::ZeroRadius);
    }
    let full = build_ball(sg, max_radius)?;
    let mut last = None;
    for r in 1..=max_radius {
        let prob = ExtensionProblem::on_ball(sg, spec, full.truncate(r))?;
        let rep = solve_ball(&prob, &Mode::AnyColoring)?;
        if matches!(rep.verdict, Verdict::EmptyProven { .. }) {
            return Ok(rep);
        }
        last = Some(rep);
    }
    let mut rep = last.expect("at least one radius");
    rep.certified_nonempty = nonempty_certified(sg, spec);
    Ok(rep)
}

/// Does the S-pattern `x` extend to a coloring of the radius-`radius` ball?
pub fn check_point_extensible(sg: &SGroup, spec: &SubshiftSpec, x: &Pattern, radius: usize) -> Result<ExtensionReport, ExtensionError> {
    if !locally_admissible(sg, spec, x)? {
        return Err(ExtensionError::BaseNotAdmissible);
    }
    let prob = ExtensionProblem::new(sg, spec, radius)?;
    solve_ball(&prob, &Mode::Extend(x.clone()))
}

/// Locally admissible patterns on a semigroup window (coset rules: the
/// restrictions of the listed configurations).
pub fn window_patterns(sg: &SGroup, spec: &SubshiftSpec, window: &[Word]) -> Result<Vec<Pattern>, ExtensionError> {
    if let SubshiftKind::CosetRule { group, phi } = &spec.kind {
        let mut out: Vec<Pattern> = Vec::new();
        for g in 0..group.order() {
            let cells = window
                .iter()
                .map(|w| {
                    let t = w.letters().iter().fold(group.identity(), |acc, &s| group.mul(acc, phi[s]));
                    (w.clone(), group.mul(t, g) as u8)
                })
                .collect();
            let p = Pattern::new(cells);
            if !out.contains(&p) {
                out.push(p);
            }
        }
        return Ok(out);
    }
    let window = crate::subshift::canonical_window(sg, window);
    let cells: Vec<_> = window.iter().map(|w| sg.eta(w)).collect();
    let rules = LocalRules::from_spec(sg, spec)?;
    let csp = window_csp(sg, &rules, &cells, Side::Semigroup { bound: DEFAULT_MEMBERSHIP_BOUND })?;
    Ok(csp
        .enumerate(usize::MAX)
        .into_iter()
        .map(|vals| Pattern::new(window.iter().cloned().zip(vals).collect()))
        .collect())
}

/// Every admissible pattern on `s_window` extends to the ball.
pub fn check_surjective_up_to(sg: &SGroup, spec: &SubshiftSpec, radius: usize, s_window: &[Word]) -> Result<ExtensionReport, ExtensionError> {
    let prob = ExtensionProblem::new(sg, spec, radius)?;
    for p in window_patterns(sg, spec, s_window)? {
        let rep = solve_ball(&prob, &Mode::Extend(p))?;
        if !matches!(rep.verdict, Verdict::PointExtendsUpTo { .. }) {
            return Ok(ExtensionReport { verdict: Verdict::NotSurjectiveAt { radius }, ..rep });
        }
    }
    Ok(ExtensionReport::new(Verdict::SurjectiveUpTo { radius }, prob.ball.len()))
}
