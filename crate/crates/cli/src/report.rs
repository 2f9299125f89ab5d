//! JSON rendering of core results. Every top-level report carries
//! `"schema": 1` and the bounds it was computed under.

use natext::cayley::CayleyBall;
use natext::dynamics::EntropyEstimate;
use natext::extension::{ExtensionReport, HomObstruction};
use natext::groups::{GroupElem, SGroup};
use natext::reversibility::{Directed, FractionsVerdict, ReversibilityReport, ReversibilityVerdict};
use natext::subshift::{CountMethod, Pattern};
use serde_json::{json, Value};

pub const SCHEMA: u64 = 1;

/// Wraps a command body with the schema tag, command name and bounds.
pub fn envelope(command: &str, bounds: Value, body: Value) -> Value {
    json!({ "schema": SCHEMA, "command": command, "bounds": bounds, "result": body })
}

pub fn elem(sg: &SGroup, g: &GroupElem) -> String {
    match g {
        GroupElem::IntVector(v) => format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")),
        GroupElem::FreeReduced(w) | GroupElem::Generic(w) => sg.semigroup.generators.display_signed(w),
        GroupElem::DyadicAffine(f) => f.to_string(),
        GroupElem::Britton(b) => sg.semigroup.generators.display_signed(&b.to_word()),
        GroupElem::Finite(i) => match &sg.group {
            natext::groups::Group::Finite(f) => f.label(*i).to_string(),
            _ => i.to_string(),
        },
    }
}

pub fn pattern(sg: &SGroup, alphabet: &[String], p: &Pattern) -> Value {
    let cells: serde_json::Map<String, Value> = p
        .cells
        .iter()
        .map(|(w, v)| (sg.semigroup.generators.display_word(w), Value::String(alphabet[*v as usize].clone())))
        .collect();
    Value::Object(cells)
}

/// Witnesses are listed cell by cell only for small balls.
pub const WITNESS_LIMIT: usize = 256;

pub fn extension(sg: &SGroup, alphabet: &[String], rep: &ExtensionReport, ball: Option<&CayleyBall>) -> Value {
    let gens = &sg.semigroup.generators;
    let witness = match (&rep.witness, ball) {
        (Some(w), Some(b)) if w.len() <= WITNESS_LIMIT => {
            let m: serde_json::Map<String, Value> =
                w.iter().enumerate().map(|(i, &v)| (gens.display_signed(&b.geodesic_word(i)), Value::String(alphabet[v as usize].clone()))).collect();
            Value::Object(m)
        }
        (Some(_), _) => Value::Bool(true),
        (None, _) => Value::Null,
    };
    json!({
        "verdict": rep.verdict.name(),
        "radius": rep.verdict.radius(),
        "ball_size": rep.ball_size,
        "witness": witness,
        "core": rep.core_words.iter().map(|w| gens.display_signed(w)).collect::<Vec<_>>(),
        "certified_nonempty": rep.certified_nonempty,
        "failing_pattern": rep.failing_pattern.as_ref().map(|p| pattern(sg, alphabet, p)),
    })
}

pub fn obstruction(sg: &SGroup, h: &HomObstruction) -> Value {
    match h {
        HomObstruction::Obstructed(r) => json!({ "verdict": "Obstructed", "relator": sg.semigroup.generators.display_signed(r) }),
        HomObstruction::Unobstructed => json!({ "verdict": "Unobstructed" }),
    }
}

pub fn reversibility(sg: &SGroup, reports: &[ReversibilityReport], bound: usize) -> Value {
    let gens = &sg.semigroup.generators;
    let pairs: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut v = json!({ "s": gens.name(r.s), "t": gens.name(r.t) });
            match &r.verdict {
                ReversibilityVerdict::WitnessFound { x, y } => {
                    v["verdict"] = "WitnessFound".into();
                    v["x"] = gens.display_word(x).into();
                    v["y"] = gens.display_word(y).into();
                }
                ReversibilityVerdict::NoneUpTo { bound } => {
                    v["verdict"] = "NoneUpTo".into();
                    v["bound"] = (*bound).into();
                }
                ReversibilityVerdict::DisjointProven => v["verdict"] = "DisjointProven".into(),
            }
            v
        })
        .collect();
    let all = reports.iter().all(|r| matches!(r.verdict, ReversibilityVerdict::WitnessFound { .. }));
    json!({ "bound": bound, "left_reversible_up_to_bound": all, "pairs": pairs })
}

pub fn fractions(sg: &SGroup, v: &FractionsVerdict) -> Value {
    match v {
        FractionsVerdict::AllOnesApproximable { radius, witness, searched } => json!({
            "verdict": "AllOnesApproximable", "radius": radius, "witness": elem(sg, witness), "searched": searched,
        }),
        FractionsVerdict::FailsAt { radius, searched } => json!({ "verdict": "FailsAt", "radius": radius, "searched": searched }),
    }
}

pub fn directed(sg: &SGroup, d: &Directed) -> Value {
    match d {
        Directed::LowerBound(g) => json!({ "verdict": "LowerBound", "element": elem(sg, g) }),
        Directed::NoneFound { radius } => json!({ "verdict": "NoneFound", "radius": radius }),
    }
}

pub fn method(m: CountMethod) -> &'static str {
    match m {
        CountMethod::Enumeration => "enumeration",
        CountMethod::TransferMatrix => "transfer-matrix",
        CountMethod::CosetList => "coset-list",
    }
}

/// Estimates are printed in nats, or bits when `log2`.
pub fn scale(x: f64, log2: bool) -> f64 {
    if log2 { x / std::f64::consts::LN_2 } else { x }
}

pub fn entropy_rows(est: &[EntropyEstimate], log2: bool) -> Value {
    est.iter()
        .map(|e| json!({ "n": e.n, "size": e.size, "count": e.count.to_string(), "estimate": scale(e.estimate, log2), "method": method(e.method) }))
        .collect()
}

pub fn entropy_csv(est: &[EntropyEstimate], log2: bool) -> String {
    let mut s = String::from("n,size,count,estimate\n");
    for e in est {
        s.push_str(&format!("{},{},{},{:.12}\n", e.n, e.size, e.count, scale(e.estimate, log2)));
    }
    s
}

pub fn ball(sg: &SGroup, b: &CayleyBall) -> Value {
    let s = b.summary();
    let gens = &sg.semigroup.generators;
    json!({
        "radius": s.radius,
        "size": s.size,
        "layers": s.layers,
        "approximate": b.approximate,
        "elements": (0..b.len()).map(|i| gens.display_signed(&b.geodesic_word(i))).collect::<Vec<_>>(),
        "edges": s.edges.iter().map(|&(u, v, g, sign)| json!([u, v, gens.name(g), sign])).collect::<Vec<_>>(),
    })
}
