//! S-subshifts over finite alphabets.
//!
//! Patterns are keyed by semigroup words; every rule is translated into
//! group elements through η before it is placed, so the same machinery
//! serves windows of `S` (anchors restricted to `η(S)`) and balls of `G`
//! (any anchor).
//!
//! "Locally admissible" means no forbidden occurrence inside the finite
//! domain. A locally admissible pattern need not extend to a point of the
//! subshift.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::Zero;
use thiserror::Error;

use crate::csp::{Csp, MAX_SYMBOLS};
use crate::groups::{FiniteGroup, Group, GroupElem, GroupError, Membership, SGroup};
use crate::words::{SemigroupPresentation, Word};

/// Anchor searches on the semigroup side use positive words up to this length.
pub const DEFAULT_MEMBERSHIP_BOUND: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubshiftError {
    #[error("forbidden pattern with empty domain")]
    EmptyPattern,
    #[error("two domain words have the same image under η but different values")]
    EtaCollision,
    #[error("symbol {0} outside the alphabet")]
    SymbolOutOfRange(u8),
    #[error("alphabet of {0} symbols exceeds the supported 64")]
    AlphabetTooLarge(usize),
    #[error("the generator map violates relation {0} of the semigroup")]
    MorphismInconsistent(usize),
    #[error("expected a single-generator spec")]
    NotSingleGenerator,
    #[error("pattern assigns two values to one cell")]
    InconsistentPattern,
    #[error("spec has {got} generator rules, semigroup has {expected}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("cell missing from a compared pattern")]
    MissingCell,
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Pattern {
    pub cells: Vec<(Word, u8)>,
}

impl Pattern {
    pub fn new(cells: Vec<(Word, u8)>) -> Self {
        Pattern { cells }
    }

    pub fn empty() -> Self {
        Pattern::default()
    }

    pub fn value_at(&self, w: &Word) -> Option<u8> {
        self.cells.iter().find(|(c, _)| c == w).map(|&(_, v)| v)
    }

    pub fn restrict(&self, domain: &[Word]) -> Pattern {
        Pattern { cells: self.cells.iter().filter(|(w, _)| domain.contains(w)).cloned().collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubshiftKind {
    ForbiddenPatterns(Vec<Pattern>),
    /// Per generator `s`, `allowed[s][q]` is the mask of symbols permitted
    /// at `s·t` when `t` holds `q`.
    NearestNeighbor(Vec<Vec<u64>>),
    /// `X = {t ↦ φ(t)·g : g ∈ F}`; symbols are element indices of `F`.
    CosetRule { group: Arc<FiniteGroup>, phi: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubshiftSpec {
    pub alphabet: Vec<String>,
    pub kind: SubshiftKind,
}

impl SubshiftSpec {
    pub fn forbidden(alphabet: Vec<String>, patterns: Vec<Pattern>) -> Result<Self, SubshiftError> {
        let spec = SubshiftSpec { alphabet, kind: SubshiftKind::ForbiddenPatterns(patterns) };
        spec.validate()?;
        Ok(spec)
    }

    /// Full shift on `k` symbols `0..k`.
    pub fn full(k: usize) -> Self {
        SubshiftSpec { alphabet: numeric_alphabet(k), kind: SubshiftKind::ForbiddenPatterns(Vec::new()) }
    }

    /// `matrices[s][q][q']` allows `q'` at `s·t` after `q` at `t`.
    pub fn nearest_neighbor(alphabet: Vec<String>, matrices: &[Vec<Vec<bool>>]) -> Result<Self, SubshiftError> {
        let k = alphabet.len();
        let masks = matrices
            .iter()
            .map(|m| {
                (0..k)
                    .map(|q| {
                        m.get(q).map_or(0, |row| row.iter().enumerate().filter(|(_, &b)| b).fold(0u64, |acc, (j, _)| acc | 1 << j))
                    })
                    .collect()
            })
            .collect();
        let spec = SubshiftSpec { alphabet, kind: SubshiftKind::NearestNeighbor(masks) };
        spec.validate()?;
        Ok(spec)
    }

    pub fn coset(group: Arc<FiniteGroup>, phi: Vec<usize>) -> Result<Self, SubshiftError> {
        let spec = SubshiftSpec { alphabet: group.labels().to_vec(), kind: SubshiftKind::CosetRule { group, phi } };
        spec.validate()?;
        Ok(spec)
    }

    /// Golden mean shift over one generator: `11` forbidden on `{1, s}`.
    pub fn golden_mean() -> Self {
        let p = Pattern::new(vec![(Word::empty(), 1), (Word::new(vec![0]), 1)]);
        SubshiftSpec { alphabet: numeric_alphabet(2), kind: SubshiftKind::ForbiddenPatterns(vec![p]) }
    }

    /// The ℤ₃-coloring of `𝔽₂⁺` with `x(as) = x(s) + 1`, `x(bs) = x(s) − 1`.
    pub fn fig1() -> Self {
        let shift = |d: usize| (0..3).map(|q| 1u64 << ((q + d) % 3)).collect::<Vec<_>>();
        SubshiftSpec { alphabet: numeric_alphabet(3), kind: SubshiftKind::NearestNeighbor(vec![shift(1), shift(2)]) }
    }

    pub fn symbols(&self) -> usize {
        self.alphabet.len()
    }

    pub fn validate(&self) -> Result<(), SubshiftError> {
        let k = self.symbols();
        if k == 0 || k > MAX_SYMBOLS {
            return Err(SubshiftError::AlphabetTooLarge(k));
        }
        match &self.kind {
            SubshiftKind::ForbiddenPatterns(ps) => {
                for p in ps {
                    if p.cells.is_empty() {
                        return Err(SubshiftError::EmptyPattern);
                    }
                    if let Some(&(_, v)) = p.cells.iter().find(|&&(_, v)| v as usize >= k) {
                        return Err(SubshiftError::SymbolOutOfRange(v));
                    }
                }
            }
            SubshiftKind::NearestNeighbor(ms) => {
                let full = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
                if ms.iter().any(|m| m.len() != k || m.iter().any(|&x| x & !full != 0)) {
                    return Err(SubshiftError::SymbolOutOfRange(k as u8));
                }
            }
            SubshiftKind::CosetRule { group, phi } => {
                if group.order() != k {
                    return Err(SubshiftError::AlphabetTooLarge(group.order()));
                }
                if let Some(&g) = phi.iter().find(|&&g| g >= k) {
                    return Err(SubshiftError::SymbolOutOfRange(g as u8));
                }
            }
        }
        Ok(())
    }
}

pub fn numeric_alphabet(k: usize) -> Vec<String> {
    (0..k).map(|i| alloc::format!("{i}")).collect()
}

/// A forbidden pattern transported to `G`: cells `offsets[i]·u` must not
/// read `values` at any anchor `u`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlacedPattern {
    pub offsets: Vec<GroupElem>,
    pub values: Vec<u8>,
}

/// Cells `h` and `step·h` must hold a pair allowed by `allowed`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRule {
    pub gen: usize,
    pub inverse: bool,
    pub step: GroupElem,
    pub allowed: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalRules {
    pub symbols: usize,
    pub patterns: Vec<PlacedPattern>,
    pub edges: Vec<EdgeRule>,
}

impl LocalRules {
    /// Transports the spec along η.
    pub fn from_spec(sg: &SGroup, spec: &SubshiftSpec) -> Result<Self, SubshiftError> {
        spec.validate()?;
        let k = spec.symbols();
        let mut patterns = Vec::new();
        let mut edges = Vec::new();
        match &spec.kind {
            SubshiftKind::ForbiddenPatterns(ps) => {
                for p in ps {
                    let mut merged: BTreeMap<GroupElem, u8> = BTreeMap::new();
                    for (w, v) in &p.cells {
                        if let Some(prev) = merged.insert(sg.eta(w), *v) {
                            if prev != *v {
                                return Err(SubshiftError::EtaCollision);
                            }
                        }
                    }
                    let (offsets, values) = merged.into_iter().unzip();
                    patterns.push(PlacedPattern { offsets, values });
                }
            }
            SubshiftKind::NearestNeighbor(ms) => {
                if ms.len() != sg.rank() {
                    return Err(SubshiftError::GeneratorCount { expected: sg.rank(), got: ms.len() });
                }
                for (s, m) in ms.iter().enumerate() {
                    edges.push(EdgeRule { gen: s, inverse: false, step: sg.eta[s].clone(), allowed: m.clone() });
                }
            }
            SubshiftKind::CosetRule { group, phi } => {
                if phi.len() != sg.rank() {
                    return Err(SubshiftError::GeneratorCount { expected: sg.rank(), got: phi.len() });
                }
                for (s, &f) in phi.iter().enumerate() {
                    let fwd = (0..k).map(|q| 1u64 << group.mul(f, q)).collect();
                    let back = (0..k).map(|q| 1u64 << group.mul(group.inv(f), q)).collect();
                    edges.push(EdgeRule { gen: s, inverse: false, step: sg.eta[s].clone(), allowed: fwd });
                    edges.push(EdgeRule { gen: s, inverse: true, step: sg.group.inv(&sg.eta[s])?, allowed: back });
                }
            }
        }
        Ok(LocalRules { symbols: k, patterns, edges })
    }
}

/// Where pattern anchors may sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// Anchors must lie in `η(S)` (membership searched up to `bound`).
    Semigroup { bound: usize },
    /// Any group element.
    Group,
}

/// Constraint problem over `cells` (deduplicated group elements).
pub fn window_csp(sg: &SGroup, rules: &LocalRules, cells: &[GroupElem], side: Side) -> Result<Csp, SubshiftError> {
    let index: BTreeMap<&GroupElem, usize> = cells.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut csp = Csp::new(cells.len(), rules.symbols);
    for rule in &rules.edges {
        let rel = csp.add_relation(rule.allowed.clone());
        for (i, c) in cells.iter().enumerate() {
            let t = sg.group.mul(&rule.step, c)?;
            if let Some(&j) = index.get(&t) {
                csp.add_binary(i, j, rel);
            }
        }
    }
    for p in &rules.patterns {
        let first_inv = sg.group.inv(&p.offsets[0])?;
        for c in cells {
            let anchor = sg.group.mul(&first_inv, c)?;
            if let Side::Semigroup { bound } = side {
                if !matches!(sg.membership(&anchor, bound)?, Membership::Yes(_)) {
                    continue;
                }
            }
            let mut placed = Vec::with_capacity(p.offsets.len());
            for o in &p.offsets {
                match index.get(&sg.group.mul(o, &anchor)?) {
                    Some(&j) => placed.push(j),
                    None => break,
                }
            }
            if placed.len() == p.offsets.len() {
                csp.add_forbid(&placed, &p.values);
            }
        }
    }
    Ok(csp)
}

/// `(image cells, value per cell)` of a semigroup pattern.
pub fn pattern_cells(sg: &SGroup, p: &Pattern) -> Result<(Vec<GroupElem>, Vec<u8>), SubshiftError> {
    let mut merged: BTreeMap<GroupElem, u8> = BTreeMap::new();
    for (w, v) in &p.cells {
        if let Some(prev) = merged.insert(sg.eta(w), *v) {
            if prev != *v {
                return Err(SubshiftError::InconsistentPattern);
            }
        }
    }
    Ok(merged.into_iter().unzip())
}

fn phi_of(group: &FiniteGroup, phi: &[usize], w: &Word) -> usize {
    w.letters().iter().fold(group.identity(), |acc, &s| group.mul(acc, phi[s]))
}

/// Does `p` avoid every forbidden occurrence inside its own domain? For a
/// coset rule this is the exact test "some `g` has `p(t) = φ(t)g`".
pub fn locally_admissible(sg: &SGroup, spec: &SubshiftSpec, p: &Pattern) -> Result<bool, SubshiftError> {
    if let Some(&(_, v)) = p.cells.iter().find(|&&(_, v)| v as usize >= spec.symbols()) {
        return Err(SubshiftError::SymbolOutOfRange(v));
    }
    if let SubshiftKind::CosetRule { group, phi } = &spec.kind {
        return Ok((0..group.order()).any(|g| p.cells.iter().all(|(w, v)| group.mul(phi_of(group, phi, w), g) == *v as usize)));
    }
    let (cells, values) = pattern_cells(sg, p)?;
    let rules = LocalRules::from_spec(sg, spec)?;
    let csp = window_csp(sg, &rules, &cells, Side::Semigroup { bound: DEFAULT_MEMBERSHIP_BOUND })?;
    Ok(csp.check(&values))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMethod {
    Enumeration,
    TransferMatrix,
    CosetList,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowCount {
    pub window: Vec<Word>,
    pub count: BigUint,
    pub method: CountMethod,
}

/// Canonical window: duplicates (same η-image) removed, sorted by length-lex.
pub fn canonical_window(sg: &SGroup, window: &[Word]) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out: Vec<Word> = window.iter().filter(|w| seen.insert(sg.eta(w))).cloned().collect();
    out.sort_by(|a, b| (a.len(), a.letters()).cmp(&(b.len(), b.letters())));
    out
}

/// Number of locally admissible patterns on the window.
pub fn window_count(sg: &SGroup, spec: &SubshiftSpec, window: &[Word]) -> Result<WindowCount, SubshiftError> {
    let window = canonical_window(sg, window);
    if let SubshiftKind::CosetRule { group, phi } = &spec.kind {
        let restrictions: BTreeSet<Vec<usize>> = (0..group.order())
            .map(|g| window.iter().map(|w| group.mul(phi_of(group, phi, w), g)).collect())
            .collect();
        return Ok(WindowCount { window, count: BigUint::from(restrictions.len()), method: CountMethod::CosetList });
    }
    let rules = LocalRules::from_spec(sg, spec)?;
    if let Some(n) = nat_interval_length(sg, &window) {
        if let Some(tg) = TransferGraph::new(&rules, true)? {
            return Ok(WindowCount { window, count: tg.count(n), method: CountMethod::TransferMatrix });
        }
    }
    let cells: Vec<GroupElem> = window.iter().map(|w| sg.eta(w)).collect();
    let csp = window_csp(sg, &rules, &cells, Side::Semigroup { bound: DEFAULT_MEMBERSHIP_BOUND })?;
    Ok(WindowCount { window, count: csp.count(), method: CountMethod::Enumeration })
}

/// `Some(n)` when the window is `{0, …, n−1}` in ℕ.
fn nat_interval_length(sg: &SGroup, window: &[Word]) -> Option<usize> {
    if !matches!(sg.group, Group::FreeAbelian { rank: 1 }) {
        return None;
    }
    let mut ks: Vec<i64> = window
        .iter()
        .map(|w| match sg.eta(w) {
            GroupElem::IntVector(v) => v[0],
            _ => -1,
        })
        .collect();
    ks.sort_unstable();
    (ks.iter().enumerate().all(|(i, &k)| k == i as i64)).then_some(ks.len())
}

/// De Bruijn graph of a one-dimensional rule set: states are locally
/// admissible blocks of length `span − 1`.
#[derive(Debug, Clone)]
pub struct TransferGraph {
    symbols: usize,
    block: usize,
    patterns: Vec<(Vec<usize>, Vec<u8>)>,
    pairs: Vec<Vec<u64>>,
    pub states: Vec<Vec<u8>>,
    pub adjacency: Vec<Vec<usize>>,
}

const MAX_STATES: usize = 1 << 14;

fn offset_1d(g: &GroupElem) -> Result<i64, SubshiftError> {
    match g {
        GroupElem::IntVector(v) if v.len() == 1 => Ok(v[0]),
        _ => Err(SubshiftError::NotSingleGenerator),
    }
}

impl TransferGraph {
    /// Builds the graph for rules over ℤ¹. With `anchored` (the ℕ side)
    /// every pattern must have its minimal offset at 0, else `None`.
    /// Also `None` when the state space is too large.
    pub fn new(rules: &LocalRules, anchored: bool) -> Result<Option<Self>, SubshiftError> {
        let mut patterns = Vec::new();
        let mut span = 2usize;
        for p in &rules.patterns {
            let offs: Vec<i64> = p.offsets.iter().map(offset_1d).collect::<Result<_, _>>()?;
            let min = *offs.iter().min().expect("non-empty pattern");
            if anchored && min != 0 {
                return Ok(None);
            }
            let shifted: Vec<usize> = offs.iter().map(|&o| (o - min) as usize).collect();
            span = span.max(shifted.iter().max().unwrap() + 1);
            patterns.push((shifted, p.values.clone()));
        }
        let mut pairs = Vec::new();
        for e in &rules.edges {
            match offset_1d(&e.step)? {
                1 => pairs.push(e.allowed.clone()),
                -1 => {
                    let mut fwd = vec![0u64; rules.symbols];
                    for (q, &m) in e.allowed.iter().enumerate() {
                        for (r, f) in fwd.iter_mut().enumerate() {
                            if m >> r & 1 == 1 {
                                *f |= 1 << q;
                            }
                        }
                    }
                    pairs.push(fwd);
                }
                _ => return Ok(None),
            }
        }
        let block = span - 1;
        let k = rules.symbols;
        if libm::pow(k as f64, block as f64) > MAX_STATES as f64 {
            return Ok(None);
        }
        let mut tg = TransferGraph { symbols: k, block, patterns, pairs, states: Vec::new(), adjacency: Vec::new() };
        tg.states = tg.all_admissible(block);
        let pos: BTreeMap<&[u8], usize> = tg.states.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut adjacency = vec![Vec::new(); tg.states.len()];
        for (i, s) in tg.states.iter().enumerate() {
            for q in 0..k as u8 {
                let mut w = s.clone();
                w.push(q);
                if tg.admissible(&w) {
                    if let Some(&j) = pos.get(&w[1..]) {
                        adjacency[i].push(j);
                    }
                }
            }
        }
        tg.adjacency = adjacency;
        Ok(Some(tg))
    }

    fn admissible(&self, w: &[u8]) -> bool {
        for (offs, vals) in &self.patterns {
            let width = offs.iter().max().unwrap() + 1;
            if width > w.len() {
                continue;
            }
            for a in 0..=w.len() - width {
                if offs.iter().zip(vals).all(|(&o, &v)| w[a + o] == v) {
                    return false;
                }
            }
        }
        for m in &self.pairs {
            for i in 1..w.len() {
                if m[w[i - 1] as usize] >> w[i] & 1 == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn all_admissible(&self, len: usize) -> Vec<Vec<u8>> {
        let mut out = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for q in 0..self.symbols as u8 {
                    let mut v = w.clone();
                    v.push(q);
                    if self.admissible(&v) {
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    /// Locally admissible words of length `n`.
    pub fn count(&self, n: usize) -> BigUint {
        if n < self.block {
            return BigUint::from(self.all_admissible(n).len());
        }
        let mut v: Vec<BigUint> = vec![BigUint::from(1u32); self.states.len()];
        for _ in self.block..n {
            let mut next = vec![BigUint::zero(); self.states.len()];
            for (i, succ) in self.adjacency.iter().enumerate() {
                for &j in succ {
                    next[j] += &v[i];
                }
            }
            v = next;
        }
        v.into_iter().sum()
    }

    /// Strong connectivity of the state graph.
    pub fn is_irreducible(&self) -> bool {
        let n = self.states.len();
        if n == 0 {
            return false;
        }
        let reach = |adj: &Vec<Vec<usize>>| {
            let mut seen = vec![false; n];
            seen[0] = true;
            let mut q = VecDeque::from([0usize]);
            while let Some(u) = q.pop_front() {
                for &v in &adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        q.push_back(v);
                    }
                }
            }
            seen.into_iter().all(|b| b)
        };
        let mut rev = vec![Vec::new(); n];
        for (u, succ) in self.adjacency.iter().enumerate() {
            for &v in succ {
                rev[v].push(u);
            }
        }
        reach(&self.adjacency) && reach(&rev)
    }
}

/// Irreducibility of the transition graph of a one-generator rule set
/// (either side of ℕ ⊂ ℤ).
pub fn check_transitive_matrix(rules: &LocalRules) -> Result<bool, SubshiftError> {
    if rules.edges.iter().any(|e| e.gen != 0) {
        return Err(SubshiftError::NotSingleGenerator);
    }
    match TransferGraph::new(rules, false)? {
        Some(tg) => Ok(tg.is_irreducible()),
        None => Err(SubshiftError::NotSingleGenerator),
    }
}

/// Coset subshift `X = {t ↦ φ(t)g}` with its configurations listed by the
/// value `g` at the identity.
#[derive(Debug, Clone)]
pub struct CosetSubshift {
    pub spec: SubshiftSpec,
    pub configurations: Vec<usize>,
    /// Whether the images of φ generate `F`.
    pub generates: bool,
}

pub fn coset_subshift(semigroup: &SemigroupPresentation, group: Arc<FiniteGroup>, phi: Vec<usize>) -> Result<CosetSubshift, SubshiftError> {
    if phi.len() != semigroup.rank() {
        return Err(SubshiftError::GeneratorCount { expected: semigroup.rank(), got: phi.len() });
    }
    for (i, (u, v)) in semigroup.relations.iter().enumerate() {
        if phi_of(&group, &phi, u) != phi_of(&group, &phi, v) {
            return Err(SubshiftError::MorphismInconsistent(i));
        }
    }
    let generates = group.generated_subgroup(&phi).len() == group.order();
    let configurations = (0..group.order()).collect();
    Ok(CosetSubshift { spec: SubshiftSpec::coset(group, phi)?, configurations, generates })
}

impl CosetSubshift {
    /// Value of configuration `g` at the word `t`.
    pub fn value(&self, g: usize, t: &Word) -> usize {
        let SubshiftKind::CosetRule { group, phi } = &self.spec.kind else { unreachable!() };
        group.mul(phi_of(group, phi, t), g)
    }

    pub fn action(&self) -> FiniteAction {
        let SubshiftKind::CosetRule { group, phi } = &self.spec.kind else { unreachable!() };
        // (s·x_g)(t) = x_g(ts) = φ(t)φ(s)g
        FiniteAction { points: self.configurations.len(), maps: phi.iter().map(|&f| (0..group.order()).map(|g| group.mul(f, g)).collect()).collect() }
    }
}

/// A semigroup acting on `0..points`, one map per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAction {
    pub points: usize,
    pub maps: Vec<Vec<usize>>,
}

impl FiniteAction {
    /// Every generator sends every point to `target`.
    pub fn constant(points: usize, gens: usize, target: usize) -> Self {
        FiniteAction { points, maps: vec![vec![target; points]; gens] }
    }

    /// Forward orbit of `x` under the monoid (includes `x`).
    pub fn orbit(&self, x: usize) -> Vec<bool> {
        let mut seen = vec![false; self.points];
        seen[x] = true;
        let mut q = VecDeque::from([x]);
        while let Some(u) = q.pop_front() {
            for m in &self.maps {
                if !seen[m[u]] {
                    seen[m[u]] = true;
                    q.push_back(m[u]);
                }
            }
        }
        seen
    }
}

pub fn check_surjective_finite(action: &FiniteAction) -> bool {
    action.maps.iter().all(|m| {
        let mut hit = vec![false; action.points];
        for &y in m {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    })
}

pub fn check_transitive_finite(action: &FiniteAction) -> bool {
    (0..action.points).any(|x| action.orbit(x).into_iter().all(|b| b))
}

pub fn check_minimal_finite(action: &FiniteAction) -> bool {
    (0..action.points).all(|x| action.orbit(x).into_iter().all(|b| b))
}

/// `d(x, y) ≤ 2^{-exponent}`; equality when `exact`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Distance {
    pub exponent: usize,
    pub exact: bool,
}

/// `2^{-m}` with `m` the first window index where `x` and `y` disagree.
pub fn config_distance(x: &Pattern, y: &Pattern, exhaustion: &[Vec<Word>]) -> Result<Distance, SubshiftError> {
    for (m, window) in exhaustion.iter().enumerate() {
        for w in window {
            let (a, b) = (x.value_at(w), y.value_at(w));
            match (a, b) {
                (Some(a), Some(b)) if a != b => return Ok(Distance { exponent: m, exact: true }),
                (Some(_), Some(_)) => {}
                _ => return Err(SubshiftError::MissingCell),
            }
        }
    }
    Ok(Distance { exponent: exhaustion.len().saturating_sub(1), exact: false })
}

/// Words `s^0, …, s^{n−1}` over generator 0.
pub fn interval(n: usize) -> Vec<Word> {
    (0..n).map(|k| Word::new(vec![0; k])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::SGroup;
    use proptest::prelude::*;

    fn w(s: &[usize]) -> Word {
        Word::new(s.to_vec())
    }

    #[test]
    fn fig1_admissibility() {
        let sg = SGroup::free(2);
        let spec = SubshiftSpec::fig1();
        assert!(locally_admissible(&sg, &spec, &Pattern::new(vec![(w(&[]), 0), (w(&[0]), 1)])).unwrap());
        assert!(!locally_admissible(&sg, &spec, &Pattern::new(vec![(w(&[]), 0), (w(&[0]), 2)])).unwrap());
        assert!(locally_admissible(&sg, &spec, &Pattern::empty()).unwrap());
        let wc = window_count(&sg, &spec, &[w(&[]), w(&[0]), w(&[1])]).unwrap();
        assert_eq!(wc.count, BigUint::from(3u32));
    }

    #[test]
    fn nat_counts() {
        let sg = SGroup::nat_in_int(1);
        let full = window_count(&sg, &SubshiftSpec::full(2), &interval(3)).unwrap();
        assert_eq!(full.count, BigUint::from(8u32));
        let gm = SubshiftSpec::golden_mean();
        for (n, f) in [(1, 2u32), (2, 3), (3, 5)] {
            assert_eq!(window_count(&sg, &gm, &interval(n)).unwrap().count, BigUint::from(f));
        }
        // a non-interval window goes through the backtracker
        let wc = window_count(&sg, &gm, &[w(&[]), w(&[0, 0])]).unwrap();
        assert_eq!(wc.method, CountMethod::Enumeration);
        assert_eq!(wc.count, BigUint::from(4u32));
    }

    #[test]
    fn coset_examples() {
        let free = SemigroupPresentation::free(2);
        let z3 = Arc::new(FiniteGroup::cyclic(3));
        let cs = coset_subshift(&free, z3.clone(), vec![1, 2]).unwrap();
        assert_eq!(cs.configurations.len(), 3);
        assert!(cs.generates);
        let act = cs.action();
        assert!(check_surjective_finite(&act));
        assert!(check_minimal_finite(&act));
        // the coset rule and the nearest-neighbor description agree on windows
        let sg = SGroup::free(2);
        let window = Word::all_up_to(2, 2);
        assert_eq!(window_count(&sg, &cs.spec, &window).unwrap().count, window_count(&sg, &SubshiftSpec::fig1(), &window).unwrap().count);

        let trivial = coset_subshift(&free, z3.clone(), vec![0, 0]).unwrap();
        assert_eq!(trivial.configurations.len(), 3);
        assert!(!check_transitive_finite(&trivial.action()));

        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let t12 = FiniteGroup::cycle_index(3, &[&[1, 2]]).unwrap();
        let t13 = FiniteGroup::cycle_index(3, &[&[1, 3]]).unwrap();
        let cs = coset_subshift(&free, s3, vec![t12, t13]).unwrap();
        assert_eq!(cs.configurations.len(), 6);
        let cfgs: BTreeSet<Vec<usize>> =
            cs.configurations.iter().map(|&g| Word::all_up_to(2, 2).iter().map(|t| cs.value(g, t)).collect()).collect();
        assert_eq!(cfgs.len(), 6);
        assert!(check_minimal_finite(&cs.action()));
    }

    #[test]
    fn coset_respects_relations() {
        let p = SemigroupPresentation::parse("gens: x y; rels: xy = yx;").unwrap();
        let s3 = Arc::new(FiniteGroup::symmetric(3));
        let t12 = FiniteGroup::cycle_index(3, &[&[1, 2]]).unwrap();
        let t13 = FiniteGroup::cycle_index(3, &[&[1, 3]]).unwrap();
        assert_eq!(coset_subshift(&p, s3.clone(), vec![t12, t13]).unwrap_err(), SubshiftError::MorphismInconsistent(0));
        assert!(coset_subshift(&p, s3, vec![t12, t12]).is_ok());
    }

    #[test]
    fn finite_action_examples() {
        let c = FiniteAction::constant(3, 2, 0);
        assert!(!check_surjective_finite(&c));
        assert!(check_surjective_finite(&FiniteAction::constant(1, 2, 0)));
        let two_fixed = FiniteAction { points: 2, maps: vec![vec![0, 1]] };
        assert!(!check_transitive_finite(&two_fixed));
    }

    #[test]
    fn matrix_transitivity() {
        let sg = SGroup::nat_in_int(1);
        let nn = |m: Vec<Vec<bool>>| SubshiftSpec::nearest_neighbor(numeric_alphabet(m.len()), &[m]).unwrap();
        let rules = |spec: &SubshiftSpec| LocalRules::from_spec(&sg, spec).unwrap();
        assert!(check_transitive_matrix(&rules(&nn(vec![vec![true, true], vec![true, false]]))).unwrap());
        assert!(!check_transitive_matrix(&rules(&nn(vec![vec![true, true], vec![false, true]]))).unwrap());
        assert!(check_transitive_matrix(&rules(&SubshiftSpec::full(3))).unwrap());
        assert!(check_transitive_matrix(&rules(&SubshiftSpec::golden_mean())).unwrap());
        let f2 = SGroup::free(2);
        let r = LocalRules::from_spec(&f2, &SubshiftSpec::fig1()).unwrap();
        assert_eq!(check_transitive_matrix(&r), Err(SubshiftError::NotSingleGenerator));
    }

    #[test]
    fn distances() {
        let word = |bits: &[u8]| Pattern::new(bits.iter().enumerate().map(|(i, &b)| (Word::new(vec![0; i]), b)).collect());
        let ex: Vec<Vec<Word>> = (0..5).map(|m| interval(m + 1)).collect();
        let x = word(&[1, 0, 0, 0, 0]);
        let y = word(&[1, 0, 0, 1, 0]);
        assert_eq!(config_distance(&x, &y, &ex).unwrap(), Distance { exponent: 3, exact: true });
        assert_eq!(config_distance(&x, &x, &ex).unwrap(), Distance { exponent: 4, exact: false });
        let z = word(&[0, 0, 0, 0, 0]);
        assert_eq!(config_distance(&x, &z, &ex[..1]).unwrap(), Distance { exponent: 0, exact: true });
    }

    #[test]
    fn eta_collision() {
        // in ℕ² the words xy and yx are the same cell
        let sg = SGroup::nat_in_int(2);
        let p = Pattern::new(vec![(w(&[0, 1]), 0), (w(&[1, 0]), 1)]);
        let spec = SubshiftSpec::forbidden(numeric_alphabet(2), vec![p]).unwrap();
        assert_eq!(LocalRules::from_spec(&sg, &spec), Err(SubshiftError::EtaCollision));
    }

    fn brute_nn_count(m: &[u64], k: usize, n: usize) -> u64 {
        let mut count = 0;
        for code in 0..(k as u64).pow(n as u32) {
            let mut c = code;
            let mut word = vec![0usize; n];
            for x in word.iter_mut() {
                *x = (c % k as u64) as usize;
                c /= k as u64;
            }
            if word.windows(2).all(|p| m[p[0]] >> p[1] & 1 == 1) {
                count += 1;
            }
        }
        count
    }

    proptest! {
        #[test]
        fn transfer_matches_enumeration(k in 1usize..=4, seed in proptest::collection::vec(any::<u64>(), 4), n in 1usize..=10) {
            let full = (1u64 << k) - 1;
            let m: Vec<u64> = seed.iter().take(k).map(|s| s & full).collect();
            let sg = SGroup::nat_in_int(1);
            let spec = SubshiftSpec { alphabet: numeric_alphabet(k), kind: SubshiftKind::NearestNeighbor(vec![m.clone()]) };
            let rules = LocalRules::from_spec(&sg, &spec).unwrap();
            let tg = TransferGraph::new(&rules, true).unwrap().unwrap();
            prop_assert_eq!(tg.count(n), BigUint::from(brute_nn_count(&m, k, n)));
            let cells: Vec<GroupElem> = interval(n).iter().map(|w| sg.eta(w)).collect();
            let csp = window_csp(&sg, &rules, &cells, Side::Semigroup { bound: 4 }).unwrap();
            prop_assert_eq!(csp.count(), BigUint::from(brute_nn_count(&m, k, n)));
        }

        #[test]
        fn admissibility_is_hereditary(values in proptest::collection::vec(0u8..3, 7), keep in proptest::collection::vec(any::<bool>(), 7)) {
            let sg = SGroup::free(2);
            let spec = SubshiftSpec::fig1();
            let cells: Vec<Word> = Word::all_up_to(2, 2);
            let p = Pattern::new(cells.iter().cloned().zip(values).collect());
            if locally_admissible(&sg, &spec, &p).unwrap() {
                let sub: Vec<Word> = cells.iter().zip(&keep).filter(|(_, &k)| k).map(|(c, _)| c.clone()).collect();
                prop_assert!(locally_admissible(&sg, &spec, &p.restrict(&sub)).unwrap());
            }
        }

        #[test]
        fn window_count_monotone(extra in 0usize..3, n in 1usize..6) {
            let sg = SGroup::nat_in_int(1);
            let gm = SubshiftSpec::golden_mean();
            let small = window_count(&sg, &gm, &interval(n)).unwrap().count;
            let big = window_count(&sg, &gm, &interval(n + extra)).unwrap().count;
            prop_assert!(big <= small.clone() * BigUint::from(2u32).pow(extra as u32));
            prop_assert!(big >= small);
        }
    }
}
