//! JSON subshift specifications.
//!
//! ```json
//! { "alphabet": ["0", "1", "2"], "generators": ["a", "b"],
//!   "kind": "nearest_neighbor",
//!   "data": { "a": [[0,1,0],[0,0,1],[1,0,0]], "b": [[0,0,1],[1,0,0],[0,1,0]] } }
//! ```
//!
//! `kind` is one of
//! - `forbidden`: `data` is a list of patterns, each an object mapping a
//!   positive word (`"1"` is the identity) to a symbol name;
//! - `nearest_neighbor`: `data[g][q][q']` is 1 when `q'` may sit at `g·t`
//!   after `q` at `t`;
//! - `coset`: `data = {"group": "symmetric:3", "phi": {"a": "(12)", ...}}`;
//!   `group` may instead be a Cayley `table`. The alphabet is the group's
//!   element labels and may be omitted.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use natext::groups::FiniteGroup;
use natext::subshift::{Pattern, SubshiftError, SubshiftKind, SubshiftSpec};
use natext::words::{GeneratorSet, WordError};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::select::{finite_element, finite_group, SelectError};

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("reading spec: {0}")]
    Io(#[from] std::io::Error),
    #[error("spec JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown spec kind `{0}`")]
    UnknownKind(String),
    #[error("malformed `data`: {0}")]
    Data(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("spec declares {got} generators, the group has {expected}")]
    GeneratorCount { expected: usize, got: usize },
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error(transparent)]
    Select(#[from] SelectError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpecFile {
    #[serde(default)]
    pub alphabet: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<String>>,
    pub kind: String,
    pub data: Value,
}

pub fn read(path: &Path) -> Result<SpecFile, SpecFileError> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

fn symbol(alphabet: &[String], v: &Value) -> Result<u8, SpecFileError> {
    let name = match v {
        Value::String(s) => s.clone(),
        Value::Number(n) => n.to_string(),
        other => return Err(SpecFileError::Data(format!("symbol {other}"))),
    };
    alphabet.iter().position(|a| *a == name).map(|i| i as u8).ok_or(SpecFileError::UnknownSymbol(name))
}

fn bit(v: &Value) -> Result<bool, SpecFileError> {
    match v {
        Value::Bool(b) => Ok(*b),
        Value::Number(n) if n.as_u64() == Some(0) => Ok(false),
        Value::Number(n) if n.as_u64() == Some(1) => Ok(true),
        other => Err(SpecFileError::Data(format!("matrix entry {other}"))),
    }
}

fn per_generator<'a>(gens: &GeneratorSet, data: &'a Value) -> Result<Vec<&'a Value>, SpecFileError> {
    let obj = data.as_object().ok_or_else(|| SpecFileError::Data("expected an object keyed by generator".into()))?;
    if let Some(k) = obj.keys().find(|k| gens.index(k).is_none()) {
        return Err(SpecFileError::Data(format!("unknown generator `{k}`")));
    }
    gens.names()
        .iter()
        .map(|g| obj.get(g).ok_or_else(|| SpecFileError::Data(format!("missing generator `{g}`"))))
        .collect()
}

impl SpecFile {
    /// Builds the spec over a semigroup with the given generators (the
    /// file's own `generators` list, when present, renames them in order).
    pub fn to_spec(&self, semigroup_gens: &GeneratorSet) -> Result<SubshiftSpec, SpecFileError> {
        let gens = match &self.generators {
            Some(names) => {
                if names.len() != semigroup_gens.len() {
                    return Err(SpecFileError::GeneratorCount { expected: semigroup_gens.len(), got: names.len() });
                }
                GeneratorSet::new(names.iter().map(String::as_str))?
            }
            None => semigroup_gens.clone(),
        };
        let spec = match self.kind.as_str() {
            "forbidden" => {
                let list = self.data.as_array().ok_or_else(|| SpecFileError::Data("expected a list of patterns".into()))?;
                let mut patterns = Vec::new();
                for p in list {
                    let obj = p.as_object().ok_or_else(|| SpecFileError::Data("pattern must be an object".into()))?;
                    let cells = obj
                        .iter()
                        .map(|(w, v)| Ok((gens.parse_word(w)?, symbol(&self.alphabet, v)?)))
                        .collect::<Result<Vec<_>, SpecFileError>>()?;
                    patterns.push(Pattern::new(cells));
                }
                SubshiftSpec::forbidden(self.alphabet.clone(), patterns)?
            }
            "nearest_neighbor" => {
                let k = self.alphabet.len();
                let mut matrices = Vec::new();
                for m in per_generator(&gens, &self.data)? {
                    let rows = m.as_array().filter(|r| r.len() == k).ok_or_else(|| SpecFileError::Data(format!("matrix must have {k} rows")))?;
                    let mut matrix = Vec::new();
                    for row in rows {
                        let row = row.as_array().filter(|r| r.len() == k).ok_or_else(|| SpecFileError::Data(format!("rows must have {k} entries")))?;
                        matrix.push(row.iter().map(bit).collect::<Result<Vec<_>, _>>()?);
                    }
                    matrices.push(matrix);
                }
                SubshiftSpec::nearest_neighbor(self.alphabet.clone(), &matrices)?
            }
            "coset" => {
                let group = match (self.data.get("group").and_then(Value::as_str), self.data.get("table")) {
                    (Some(name), _) => finite_group(name)?.ok_or_else(|| SelectError::Unknown(name.into()))?,
                    (None, Some(t)) => Arc::new(FiniteGroup::from_table(serde_json::from_value(t.clone())?).map_err(SelectError::from)?),
                    (None, None) => return Err(SpecFileError::Data("missing `group` or `table`".into())),
                };
                let phi_data = self.data.get("phi").ok_or_else(|| SpecFileError::Data("missing `phi`".into()))?;
                let phi = per_generator(&gens, phi_data)?
                    .into_iter()
                    .map(|v| match v {
                        Value::String(s) => Ok(finite_element(&group, s)?),
                        Value::Number(n) => Ok(finite_element(&group, &n.to_string())?),
                        other => Err(SpecFileError::Data(format!("phi image {other}"))),
                    })
                    .collect::<Result<Vec<_>, SpecFileError>>()?;
                SubshiftSpec::coset(group, phi)?
            }
            other => return Err(SpecFileError::UnknownKind(other.into())),
        };
        Ok(spec)
    }

    /// Serializes a spec back to the file format.
    pub fn from_spec(spec: &SubshiftSpec, gens: &GeneratorSet) -> Self {
        let (kind, data) = match &spec.kind {
            SubshiftKind::ForbiddenPatterns(ps) => {
                let list = ps
                    .iter()
                    .map(|p| {
                        let m: BTreeMap<String, String> =
                            p.cells.iter().map(|(w, v)| (gens.display_word(w), spec.alphabet[*v as usize].clone())).collect();
                        serde_json::to_value(m).expect("string map")
                    })
                    .collect();
                ("forbidden", Value::Array(list))
            }
            SubshiftKind::NearestNeighbor(ms) => {
                let k = spec.symbols();
                let obj = ms
                    .iter()
                    .enumerate()
                    .map(|(g, masks)| {
                        let rows: Vec<Vec<u8>> = (0..k).map(|q| (0..k).map(|j| (masks[q] >> j & 1) as u8).collect()).collect();
                        (gens.name(g).to_string(), serde_json::to_value(rows).expect("matrix"))
                    })
                    .collect();
                ("nearest_neighbor", Value::Object(obj))
            }
            SubshiftKind::CosetRule { group, phi } => {
                let phi: serde_json::Map<String, Value> =
                    phi.iter().enumerate().map(|(g, &f)| (gens.name(g).to_string(), Value::from(f))).collect();
                ("coset", serde_json::json!({ "table": group.table(), "phi": phi }))
            }
        };
        SpecFile { alphabet: spec.alphabet.clone(), generators: Some(gens.names().to_vec()), kind: kind.into(), data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const FIG1: &str = include_str!("../examples/fig1_z3.json");

    #[test]
    fn shipped_fig1_matches_builtin() {
        let f: SpecFile = serde_json::from_str(FIG1).unwrap();
        assert_eq!(f.to_spec(&GeneratorSet::letters(2)).unwrap(), SubshiftSpec::fig1());
    }

    #[test]
    fn roundtrip_nearest_neighbor_and_forbidden() {
        let gens = GeneratorSet::letters(2);
        let f = SpecFile::from_spec(&SubshiftSpec::fig1(), &gens);
        assert_eq!(f.to_spec(&gens).unwrap(), SubshiftSpec::fig1());
        let g1 = GeneratorSet::letters(1);
        let f = SpecFile::from_spec(&SubshiftSpec::golden_mean(), &g1);
        assert_eq!(f.to_spec(&g1).unwrap(), SubshiftSpec::golden_mean());
    }

    #[test]
    fn coset_file() {
        let text = r#"{"kind": "coset", "data": {"group": "symmetric:3", "phi": {"a": "(12)", "b": "(13)"}}}"#;
        let f: SpecFile = serde_json::from_str(text).unwrap();
        let gens = GeneratorSet::letters(2);
        let spec = f.to_spec(&gens).unwrap();
        assert_eq!(spec.symbols(), 6);
        let back = SpecFile::from_spec(&spec, &gens).to_spec(&gens).unwrap();
        let (SubshiftKind::CosetRule { group: g1, phi: p1 }, SubshiftKind::CosetRule { group: g2, phi: p2 }) = (&back.kind, &spec.kind) else {
            panic!("coset kind lost")
        };
        assert_eq!((g1.table(), p1), (g2.table(), p2));
    }

    #[test]
    fn errors() {
        let gens = GeneratorSet::letters(2);
        let bad_symbol = r#"{"alphabet": ["0","1"], "kind": "forbidden", "data": [{"1": "2"}]}"#;
        let f: SpecFile = serde_json::from_str(bad_symbol).unwrap();
        assert!(matches!(f.to_spec(&gens), Err(SpecFileError::UnknownSymbol(_))));
        let bad_gen = r#"{"alphabet": ["0"], "kind": "nearest_neighbor", "data": {"a": [[1]], "c": [[1]]}}"#;
        let f: SpecFile = serde_json::from_str(bad_gen).unwrap();
        assert!(matches!(f.to_spec(&gens), Err(SpecFileError::Data(_))));
        let bad_kind = r#"{"alphabet": ["0"], "kind": "sofic", "data": null}"#;
        let f: SpecFile = serde_json::from_str(bad_kind).unwrap();
        assert!(matches!(f.to_spec(&gens), Err(SpecFileError::UnknownKind(_))));
    }
}
