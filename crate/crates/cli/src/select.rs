//! Group family names as accepted on the command line.

use std::path::Path;
use std::sync::Arc;

use natext::groups::{free_s_group_of, FiniteGroup, SGroup};
use natext::words::{EqualityBudget, SemigroupPresentation};
use serde::Deserialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SelectError {
    #[error("unknown group `{0}` (expected Z^d, F_n, BS(m,n), BS(m,n)+, BS(2,3):theta, cyclic:n, symmetric:n, finite:<file>, generic or auto)")]
    Unknown(String),
    #[error("group `{0}` needs --phi with one image per semigroup generator")]
    MissingPhi(String),
    #[error("group `{0}` needs --pres")]
    MissingPresentation(String),
    #[error("unknown finite group element `{0}`")]
    UnknownElement(String),
    #[error("phi has {got} images, the semigroup has {expected} generators")]
    PhiCount { expected: usize, got: usize },
    #[error("reading group table: {0}")]
    Io(#[from] std::io::Error),
    #[error("group table: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] natext::groups::GroupError),
}

#[derive(Deserialize)]
struct TableFile {
    table: Vec<Vec<usize>>,
}

/// A finite group from a name such as `cyclic:3`, `symmetric:3` or
/// `finite:table.json` (a JSON object `{"table": [[...], ...]}`).
pub fn finite_group(name: &str) -> Result<Option<Arc<FiniteGroup>>, SelectError> {
    let bad = || SelectError::Unknown(name.to_string());
    if let Some(n) = name.strip_prefix("cyclic:") {
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        return Ok(Some(Arc::new(FiniteGroup::cyclic(n))));
    }
    if let Some(k) = name.strip_prefix("symmetric:") {
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        if k == 0 || k > 5 {
            return Err(bad());
        }
        return Ok(Some(Arc::new(FiniteGroup::symmetric(k))));
    }
    if let Some(path) = name.strip_prefix("finite:") {
        let text = std::fs::read_to_string(Path::new(path))?;
        let t: TableFile = serde_json::from_str(&text)?;
        return Ok(Some(Arc::new(FiniteGroup::from_table(t.table)?)));
    }
    Ok(None)
}

/// Element by label (`(12)`, `2`) or by table index.
pub fn finite_element(group: &FiniteGroup, text: &str) -> Result<usize, SelectError> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some(i) = group.labels().iter().position(|l| *l == t) {
        return Ok(i);
    }
    match t.parse::<usize>() {
        Ok(i) if i < group.order() => Ok(i),
        _ => Err(SelectError::UnknownElement(text.to_string())),
    }
}

/// Splits `(12),(13)` or `1,2` into element tokens.
pub fn split_phi(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0;
    for c in text.chars() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if (c == ',' || c == ';') && depth == 0 {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(c);
        }
    }
    out.push(cur);
    out.into_iter().map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}

fn parse_dim(s: &str) -> Option<usize> {
    s.trim().parse().ok().filter(|&d| d >= 1)
}

fn parse_bs(body: &str) -> Option<(i64, i64)> {
    let inner = body.strip_prefix("BS(")?.strip_suffix(')')?;
    let (m, n) = inner.split_once(',')?;
    let (m, n): (i64, i64) = (m.trim().parse().ok()?, n.trim().parse().ok()?);
    (m >= 1 && n >= 1).then_some((m, n))
}

/// Resolves a group name into an S-group.
///
/// `BS(1,2)` means 𝔽₂⁺ in its dyadic-affine realization; `BS(m,n)+` is
/// the monoid `⟨a,b | ab^m = b^n a⟩⁺` in its free S-group. Finite groups
/// need `phi`; `generic` and `auto` need a presentation.
pub fn resolve(
    name: &str,
    pres: Option<&SemigroupPresentation>,
    phi: Option<&str>,
    budget: usize,
) -> Result<SGroup, SelectError> {
    let name = name.trim();
    if let Some(d) = name.strip_prefix("Z^").and_then(parse_dim) {
        return Ok(SGroup::nat_in_int(d));
    }
    if name == "Z" {
        return Ok(SGroup::nat_in_int(1));
    }
    if let Some(n) = name.strip_prefix("F_").and_then(parse_dim) {
        return Ok(SGroup::free(n));
    }
    if name == "BS(2,3):theta" {
        return Ok(SGroup::bs23_theta());
    }
    if let Some(body) = name.strip_suffix('+') {
        let (m, n) = parse_bs(body).ok_or_else(|| SelectError::Unknown(name.into()))?;
        return Ok(SGroup::baumslag_solitar(m, n));
    }
    if let Some((m, n)) = parse_bs(name) {
        return Ok(if (m, n) == (1, 2) { SGroup::bs12() } else { SGroup::baumslag_solitar(m, n) });
    }
    if name == "generic" {
        let p = pres.ok_or_else(|| SelectError::MissingPresentation(name.into()))?;
        return Ok(SGroup::generic(p.clone(), EqualityBudget::with_steps(budget.max(1) * 1000)));
    }
    if name == "auto" {
        let p = pres.ok_or_else(|| SelectError::MissingPresentation(name.into()))?;
        return Ok(free_s_group_of(p));
    }
    if let Some(group) = finite_group(name)? {
        let tokens = split_phi(phi.ok_or_else(|| SelectError::MissingPhi(name.into()))?);
        let semigroup = match pres {
            Some(p) => p.clone(),
            None => SemigroupPresentation::free(tokens.len()),
        };
        if tokens.len() != semigroup.rank() {
            return Err(SelectError::PhiCount { expected: semigroup.rank(), got: tokens.len() });
        }
        let images = tokens.iter().map(|t| finite_element(&group, t)).collect::<Result<Vec<_>, _>>()?;
        return Ok(SGroup::finite(semigroup, group, &images));
    }
    Err(SelectError::Unknown(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use natext::groups::{Embedding, Group};

    #[test]
    fn family_names() {
        assert_eq!(resolve("Z^2", None, None, 8).unwrap().embedding, Embedding::NatInInt);
        assert_eq!(resolve("F_3", None, None, 8).unwrap().rank(), 3);
        assert_eq!(resolve("BS(1,2)", None, None, 8).unwrap().embedding, Embedding::FreeMonoidInBs12);
        assert!(matches!(resolve("BS(1,2)+", None, None, 8).unwrap().embedding, Embedding::Bs12StandardPositive { .. }));
        assert!(matches!(resolve("BS(2,3)", None, None, 8).unwrap().group, Group::BaumslagSolitar(_)));
        assert!(resolve("Q_8", None, None, 8).is_err());
        assert!(resolve("Z^0", None, None, 8).is_err());
    }

    #[test]
    fn finite_with_phi() {
        let sg = resolve("symmetric:3", None, Some("(12),(13)"), 8).unwrap();
        assert_eq!(sg.rank(), 2);
        assert!(matches!(resolve("cyclic:3", None, None, 8), Err(SelectError::MissingPhi(_))));
        assert!(matches!(resolve("cyclic:3", None, Some("1,7"), 8), Err(SelectError::UnknownElement(_))));
        assert_eq!(split_phi("(1 2), (1 3)"), vec!["(1 2)", "(1 3)"]);
    }

    #[test]
    fn table_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("z2.json");
        std::fs::write(&path, r#"{"table": [[0,1],[1,0]]}"#).unwrap();
        let g = finite_group(&format!("finite:{}", path.display())).unwrap().unwrap();
        assert_eq!(g.order(), 2);
        std::fs::write(&path, r#"{"table": [[0,1],[0,1]]}"#).unwrap();
        assert!(finite_group(&format!("finite:{}", path.display())).is_err());
    }
}
