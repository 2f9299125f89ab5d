//! Generators, positive and signed words, semigroup presentations and
//! bounded congruence equality.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::groups::snf::IntMatrix;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("generator list is empty")]
    NoGenerators,
    #[error("generator name is empty")]
    EmptyName,
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("unknown generator in `{0}`")]
    UnknownGenerator(String),
    #[error("relation side is empty in `{0}`")]
    EmptyRelationSide(String),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("negative exponent in positive word `{0}`")]
    NegativeExponent(String),
}

/// Ordered set of distinct generator names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    names: Vec<String>,
}

impl GeneratorSet {
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(WordError::NoGenerators);
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if n.is_empty() {
                return Err(WordError::EmptyName);
            }
            if !seen.insert(n.as_str()) {
                return Err(WordError::DuplicateGenerator(n.clone()));
            }
        }
        Ok(GeneratorSet { names })
    }

    /// Single-letter names `a`, `b`, ... (or `x`, `y`, `z` when `xyz` is set).
    pub fn letters(n: usize) -> Self {
        let names = (0..n)
            .map(|i| {
                if n <= 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    alloc::format!("g{i}")
                }
            })
            .collect();
        GeneratorSet { names }
    }

    pub fn coordinates(d: usize) -> Self {
        let names = match d {
            1 => vec!["x".to_string()],
            2 => vec!["x".to_string(), "y".to_string()],
            3 => vec!["x".to_string(), "y".to_string(), "z".to_string()],
            _ => (0..d).map(|i| alloc::format!("x{}", i + 1)).collect(),
        };
        GeneratorSet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Splits a token such as `abba` or `xy1` into generator indices by
    /// greedy longest match.
    fn split_token(&self, token: &str) -> Option<Vec<usize>> {
        let mut out = Vec::new();
        let mut rest = token;
        while !rest.is_empty() {
            let best = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len())?;
            out.push(best.0);
            rest = &rest[best.1.len()..];
        }
        Some(out)
    }

    /// Parses a signed word: whitespace-separated tokens, each a run of
    /// generator names optionally followed by `^k` (k may be negative and
    /// applies to the last generator of the run). `1`, `e` or an empty
    /// string denote the identity unless they are generator names.
    pub fn parse_signed(&self, text: &str) -> Result<SignedWord, WordError> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if (token == "1" || token == "e" || token == "ε") && self.index(token).is_none() {
                continue;
            }
            let (body, exp) = match token.split_once('^') {
                Some((b, e)) => {
                    let e: i64 = e
                        .trim_matches(|c| c == '{' || c == '}')
                        .parse()
                        .map_err(|_| WordError::Malformed(token.to_string()))?;
                    (b, e)
                }
                None => (token, 1),
            };
            let gens = self
                .split_token(body)
                .filter(|g| !g.is_empty())
                .ok_or_else(|| WordError::UnknownGenerator(token.to_string()))?;
            let (last, init) = gens.split_last().expect("non-empty token");
            letters.extend(init.iter().map(|&g| Letter::pos(g)));
            let letter = if exp < 0 { Letter::neg(*last) } else { Letter::pos(*last) };
            for _ in 0..exp.unsigned_abs() {
                letters.push(letter);
            }
        }
        Ok(SignedWord::from_letters(letters))
    }

    /// Parses a positive word (no negative exponents).
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let sw = self.parse_signed(text)?;
        sw.to_positive()
            .ok_or_else(|| WordError::NegativeExponent(text.to_string()))
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let multi = self.names.iter().any(|n| n.chars().count() > 1);
        let mut s = String::new();
        for (i, &g) in w.letters().iter().enumerate() {
            if multi && i > 0 {
                s.push(' ');
            }
            s.push_str(self.name(g));
        }
        s
    }

    pub fn display_signed(&self, w: &SignedWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for l in w.letters() {
            if l.inverse {
                parts.push(alloc::format!("{}^-1", self.name(l.gen)));
            } else {
                parts.push(self.name(l.gen).to_string());
            }
        }
        parts.join(" ")
    }
}

/// Positive word; the empty word is the adjoined identity.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn push(&mut self, g: usize) {
        self.0.push(g);
    }

    pub fn to_signed(&self) -> SignedWord {
        SignedWord(self.0.iter().map(|&g| Letter::pos(g)).collect())
    }

    /// Letter-count vector over `n` generators.
    pub fn counts(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n];
        for &g in &self.0 {
            c[g] += 1;
        }
        c
    }

    /// All positive words over `n` generators of length exactly `len`, in
    /// lexicographic order.
    pub fn all_of_length(n: usize, len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..len {
            let mut next = Vec::with_capacity(out.len() * n);
            for w in &out {
                for g in 0..n {
                    let mut w2 = w.clone();
                    w2.push(g);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    }

    /// Length-lex enumeration of all words up to length `max_len`.
    pub fn all_up_to(n: usize, max_len: usize) -> Vec<Word> {
        (0..=max_len).flat_map(|l| Word::all_of_length(n, l)).collect()
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(gen: usize) -> Self {
        Letter { gen, inverse: false }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

/// Word in generators and their inverses.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedWord(Vec<Letter>);

impl SignedWord {
    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    /// Stores the letters as given, without reducing.
    pub fn from_letters(letters: Vec<Letter>) -> Self {
        SignedWord(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignedWord(v)
    }

    pub fn inverse(&self) -> SignedWord {
        SignedWord(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inverse)
    }

    pub fn to_positive(&self) -> Option<Word> {
        if self.is_positive() {
            Some(Word(self.0.iter().map(|l| l.gen).collect()))
        } else {
            None
        }
    }

    /// Exponent-sum vector over `n` generators.
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut c = vec![0i64; n];
        for l in &self.0 {
            c[l.gen] += l.sign();
        }
        c
    }

    /// Cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> SignedWord {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        SignedWord(v)
    }
}

impl From<Word> for SignedWord {
    fn from(w: Word) -> Self {
        w.to_signed()
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for l in &self.0 {
            let c = if l.gen < 26 { (b'a' + l.gen as u8) as char } else { '?' };
            if l.inverse {
                write!(f, "{c}⁻")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Free reduction: cancels adjacent `g g⁻¹` and `g⁻¹ g` pairs until none remain.
pub fn free_reduce(w: &SignedWord) -> SignedWord {
    let mut out: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w.letters() {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    SignedWord(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemigroupPresentation {
    pub generators: GeneratorSet,
    pub relations: Vec<(Word, Word)>,
}

impl SemigroupPresentation {
    pub fn new(generators: GeneratorSet, relations: Vec<(Word, Word)>) -> Result<Self, WordError> {
        for (u, v) in &relations {
            if u.is_empty() || v.is_empty() {
                return Err(WordError::EmptyRelationSide(alloc::format!(
                    "{} = {}",
                    generators.display_word(u),
                    generators.display_word(v)
                )));
            }
            for &g in u.letters().iter().chain(v.letters()) {
                if g >= generators.len() {
                    return Err(WordError::UnknownGenerator(alloc::format!("#{g}")));
                }
            }
        }
        Ok(SemigroupPresentation { generators, relations })
    }

    /// The free semigroup on `n` letters.
    pub fn free(n: usize) -> Self {
        SemigroupPresentation { generators: GeneratorSet::letters(n), relations: Vec::new() }
    }

    /// ℕ^d as the commutative monoid on `d` generators.
    pub fn free_commutative(d: usize) -> Self {
        let generators = GeneratorSet::coordinates(d);
        let mut relations = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                relations.push((Word(vec![i, j]), Word(vec![j, i])));
            }
        }
        SemigroupPresentation { generators, relations }
    }

    /// Parses `gens: a b; rels: ab = b b a; ...`. Each `;`-separated
    /// segment after `rels:` holds one relation.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        let mut generators: Option<GeneratorSet> = None;
        let mut pending: Vec<String> = Vec::new();
        let mut in_rels = false;
        for segment in text.split(';') {
            let seg = segment.trim();
            if seg.is_empty() {
                continue;
            }
            if let Some(rest) = seg.strip_prefix("gens:") {
                generators = Some(GeneratorSet::new(rest.split_whitespace())?);
                in_rels = false;
            } else if let Some(rest) = seg.strip_prefix("rels:") {
                in_rels = true;
                if !rest.trim().is_empty() {
                    pending.push(rest.trim().to_string());
                }
            } else if in_rels {
                pending.push(seg.to_string());
            } else {
                return Err(WordError::Malformed(seg.to_string()));
            }
        }
        let generators = generators.ok_or_else(|| WordError::Malformed("missing `gens:`".into()))?;
        let mut relations = Vec::new();
        for rel in pending {
            let (l, r) = rel
                .split_once('=')
                .ok_or_else(|| WordError::Malformed(rel.clone()))?;
            let u = generators.parse_word(l)?;
            let v = generators.parse_word(r)?;
            if u.is_empty() || v.is_empty() {
                return Err(WordError::EmptyRelationSide(rel));
            }
            relations.push((u, v));
        }
        Ok(SemigroupPresentation { generators, relations })
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// True when every relation preserves word length.
    pub fn is_homogeneous(&self) -> bool {
        self.relations.iter().all(|(u, v)| u.len() == v.len())
    }

    /// True when `xy = yx` (or `yx = xy`) is a relation for every pair of
    /// distinct generators.
    pub fn has_all_commutators(&self) -> bool {
        let n = self.rank();
        for i in 0..n {
            for j in i + 1..n {
                let ij = Word(vec![i, j]);
                let ji = Word(vec![j, i]);
                let found = self
                    .relations
                    .iter()
                    .any(|(u, v)| (u == &ij && v == &ji) || (u == &ji && v == &ij));
                if !found {
                    return false;
                }
            }
        }
        true
    }

    /// Letter-count differences `count(u) - count(v)`, one row per relation.
    pub fn relation_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let rows = self
            .relations
            .iter()
            .map(|(u, v)| {
                let cu = u.counts(n);
                let cv = v.counts(n);
                cu.iter().zip(&cv).map(|(a, b)| a - b).collect()
            })
            .collect();
        IntMatrix::from_rows(rows, n)
    }

    pub fn display(&self) -> String {
        let mut s = String::from("gens:");
        for n in self.generators.names() {
            s.push(' ');
            s.push_str(n);
        }
        s.push(';');
        if !self.relations.is_empty() {
            s.push_str(" rels:");
            for (i, (u, v)) in self.relations.iter().enumerate() {
                if i > 0 {
                    s.push(';');
                }
                s.push(' ');
                s.push_str(&self.generators.display_word(u));
                s.push_str(" = ");
                s.push_str(&self.generators.display_word(v));
            }
            s.push(';');
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TriState {
    Equal,
    NotEqualProven,
    Unknown,
}

/// Limits for the bounded rewrite search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EqualityBudget {
    /// Maximum number of expanded words (both directions together).
    pub steps: usize,
    /// Words may grow this many letters beyond `max(|u|, |v|)`.
    pub slack: usize,
}

impl Default for EqualityBudget {
    fn default() -> Self {
        EqualityBudget { steps: 20_000, slack: 4 }
    }
}

impl EqualityBudget {
    pub fn with_steps(steps: usize) -> Self {
        EqualityBudget { steps, ..Default::default() }
    }
}

fn rewrite_neighbours(w: &[usize], rules: &[(Word, Word)], cap: usize, out: &mut Vec<Vec<usize>>) -> bool {
    let mut truncated = false;
    for (l, r) in rules {
        for (from, to) in [(l, r), (r, l)] {
            let from = from.letters();
            let to = to.letters();
            if from.len() > w.len() {
                continue;
            }
            for i in 0..=w.len() - from.len() {
                if &w[i..i + from.len()] == from {
                    let new_len = w.len() - from.len() + to.len();
                    if new_len > cap {
                        truncated = true;
                        continue;
                    }
                    let mut nw = Vec::with_capacity(new_len);
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(to);
                    nw.extend_from_slice(&w[i + from.len()..]);
                    out.push(nw);
                }
            }
        }
    }
    truncated
}

/// True when `diff` lies in the integer row lattice of the relation matrix.
pub fn in_relation_lattice(p: &SemigroupPresentation, diff: &[i64]) -> bool {
    p.relation_matrix().row_lattice_contains(diff)
}

/// Bounded decision of `u = v` in the semigroup presented by `p`.
///
/// `Equal` is returned when a chain of relation rewrites joins the words
/// inside the budget (bidirectional breadth-first search over words no
/// longer than `max(|u|, |v|) + slack`). `NotEqualProven` needs an exact
/// separating invariant: the letter-count vectors differ modulo the
/// relation lattice, or the rewrite class of one side was exhausted
/// without ever hitting the length cap.
pub fn words_equal_bounded(p: &SemigroupPresentation, u: &Word, v: &Word, budget: EqualityBudget) -> TriState {
    if u == v {
        return TriState::Equal;
    }
    let n = p.rank();
    let cu = u.counts(n);
    let cv = v.counts(n);
    let diff: Vec<i64> = cu.iter().zip(&cv).map(|(a, b)| a - b).collect();
    if !in_relation_lattice(p, &diff) {
        return TriState::NotEqualProven;
    }
    if p.is_homogeneous() && u.len() != v.len() {
        return TriState::NotEqualProven;
    }
    let cap = u.len().max(v.len()) + budget.slack;

    // side 0 grows from u, side 1 from v
    let mut seen: [BTreeMap<Vec<usize>, ()>; 2] = [BTreeMap::new(), BTreeMap::new()];
    let mut queues: [VecDeque<Vec<usize>>; 2] = [VecDeque::new(), VecDeque::new()];
    let mut truncated = [false, false];
    seen[0].insert(u.letters().to_vec(), ());
    seen[1].insert(v.letters().to_vec(), ());
    queues[0].push_back(u.letters().to_vec());
    queues[1].push_back(v.letters().to_vec());
    let mut steps = 0usize;
    let mut buf = Vec::new();
    loop {
        for side in 0..2 {
            if queues[side].is_empty() && !truncated[side] {
                return TriState::NotEqualProven;
            }
        }
        if queues[0].is_empty() && queues[1].is_empty() {
            return TriState::Unknown;
        }
        let side = if queues[1].is_empty() || (!queues[0].is_empty() && queues[0].len() <= queues[1].len()) {
            0
        } else {
            1
        };
        let w = queues[side].pop_front().expect("non-empty queue");
        steps += 1;
        if steps > budget.steps {
            return TriState::Unknown;
        }
        buf.clear();
        if rewrite_neighbours(&w, &p.relations, cap, &mut buf) {
            truncated[side] = true;
        }
        for nw in buf.drain(..) {
            if seen[1 - side].contains_key(&nw) {
                return TriState::Equal;
            }
            if seen[side].insert(nw.clone(), ()).is_none() {
                queues[side].push_back(nw);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sw(g: &GeneratorSet, s: &str) -> SignedWord {
        g.parse_signed(s).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let g = GeneratorSet::letters(2);
        assert!(free_reduce(&sw(&g, "a a^-1")).is_empty());
        assert!(free_reduce(&sw(&g, "b^-1 a a^-1 b")).is_empty());
        let w = sw(&g, "b^-1 a b a^-1 b^-1 a");
        let r = free_reduce(&w);
        assert_eq!(r.len(), 6);
        assert_eq!(r, w);
        // independent scan: no adjacent inverse pair
        for p in r.letters().windows(2) {
            assert!(!(p[0].gen == p[1].gen && p[0].inverse != p[1].inverse));
        }
    }

    #[test]
    fn generator_set_rejects_bad_names() {
        assert_eq!(GeneratorSet::new(Vec::<String>::new()), Err(WordError::NoGenerators));
        assert!(matches!(GeneratorSet::new(["a", "a"]), Err(WordError::DuplicateGenerator(_))));
        assert_eq!(GeneratorSet::new(["a", ""]), Err(WordError::EmptyName));
        let g = GeneratorSet::new(["x", "y"]).unwrap();
        assert_eq!(g.index("y"), Some(1));
        assert_eq!(g.index("z"), None);
    }

    #[test]
    fn parse_presentation_text() {
        let p = SemigroupPresentation::parse("gens: a b; rels: ab = b b a;").unwrap();
        assert_eq!(p.rank(), 2);
        assert_eq!(p.relations, vec![(Word::new(vec![0, 1]), Word::new(vec![1, 1, 0]))]);
        let q = SemigroupPresentation::parse("gens: x y; rels: x^2 = y y; xy = yx;").unwrap();
        assert_eq!(q.relations.len(), 2);
        assert!(q.has_all_commutators());
        let free = SemigroupPresentation::parse("gens: a b;").unwrap();
        assert!(free.relations.is_empty());
        assert!(SemigroupPresentation::parse("gens: a; rels: a = c;").is_err());
        assert!(SemigroupPresentation::parse("rels: a = a;").is_err());
    }

    #[test]
    fn parse_is_case_sensitive_with_multichar_names() {
        let g = GeneratorSet::new(["A", "a", "ab"]).unwrap();
        assert_eq!(g.parse_word("aba").unwrap().letters(), &[2, 1]);
        assert_eq!(g.parse_word("Aa").unwrap().letters(), &[0, 1]);
    }

    #[test]
    fn commutation_rewrite_is_found() {
        let p = SemigroupPresentation::free_commutative(2);
        let u = Word::new(vec![0, 1, 0]);
        let v = Word::new(vec![0, 0, 1]);
        assert_eq!(words_equal_bounded(&p, &u, &v, EqualityBudget::default()), TriState::Equal);
    }

    #[test]
    fn free_semigroup_words_separate() {
        let p = SemigroupPresentation::free(2);
        let ab = Word::new(vec![0, 1]);
        let ba = Word::new(vec![1, 0]);
        assert_eq!(words_equal_bounded(&p, &ab, &ba, EqualityBudget::default()), TriState::NotEqualProven);
    }

    #[test]
    fn reflexive_at_budget_one() {
        let p = SemigroupPresentation::parse("gens: a b; rels: ab = bba;").unwrap();
        let w = Word::new(vec![0, 1, 1]);
        assert_eq!(words_equal_bounded(&p, &w, &w, EqualityBudget::with_steps(1)), TriState::Equal);
    }

    #[test]
    fn abelianization_separates() {
        let p = SemigroupPresentation::parse("gens: x y; rels: xx = yy; xy = yx;").unwrap();
        // x vs y differ by (1,-1), not in the lattice spanned by (2,-2)
        let r = words_equal_bounded(&p, &Word::new(vec![0]), &Word::new(vec![1]), EqualityBudget::default());
        assert_eq!(r, TriState::NotEqualProven);
        let r = words_equal_bounded(&p, &Word::new(vec![0, 0, 1]), &Word::new(vec![1, 1, 1]), EqualityBudget::default());
        assert_eq!(r, TriState::Equal);
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        // non-homogeneous relation: classes are infinite, search never completes
        let p = SemigroupPresentation::parse("gens: a b; rels: ab = bba;").unwrap();
        let u = Word::new(vec![0, 0, 0, 1]);
        let v = Word::new(vec![1, 0, 0, 0]);
        let r = words_equal_bounded(&p, &u, &v, EqualityBudget { steps: 3, slack: 2 });
        assert_eq!(r, TriState::Unknown);
    }

    #[test]
    fn enumeration_order_is_length_lex() {
        let ws = Word::all_up_to(2, 2);
        assert_eq!(ws.len(), 7);
        assert_eq!(ws[0], Word::empty());
        assert_eq!(ws[1], Word::new(vec![0]));
        assert_eq!(ws[3], Word::new(vec![0, 0]));
        assert_eq!(ws[6], Word::new(vec![1, 1]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn signed_word() -> impl Strategy<Value = SignedWord> {
            proptest::collection::vec((0usize..3, any::<bool>()), 0..24)
                .prop_map(|v| SignedWord::from_letters(v.into_iter().map(|(g, i)| Letter { gen: g, inverse: i }).collect()))
        }

        proptest! {
            #[test]
            fn reduction_idempotent_and_shrinking(w in signed_word()) {
                let r = free_reduce(&w);
                prop_assert_eq!(free_reduce(&r), r.clone());
                prop_assert!(r.len() <= w.len());
                prop_assert!(r.is_reduced());
                prop_assert_eq!(r.exponent_sums(3), w.exponent_sums(3));
                prop_assert_eq!((w.len() - r.len()) % 2, 0);
            }

            #[test]
            fn equality_is_symmetric(u in proptest::collection::vec(0usize..2, 0..5),
                                     v in proptest::collection::vec(0usize..2, 0..5)) {
                let p = SemigroupPresentation::parse("gens: a b; rels: ab = ba;").unwrap();
                let (u, v) = (Word::new(u), Word::new(v));
                let b = EqualityBudget::default();
                prop_assert_eq!(words_equal_bounded(&p, &u, &v, b), words_equal_bounded(&p, &v, &u, b));
            }
        }
    }
}
