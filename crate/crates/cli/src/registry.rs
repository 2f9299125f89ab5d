//! Built-in worked examples. Each runs a fixed pipeline with fixed
//! budgets and checks the verdicts it is expected to produce.

use std::collections::BTreeSet;
use std::sync::Arc;

use anyhow::{bail, Result};
use natext::cayley::build_ball;
use natext::dynamics::{entropy_compare, EntropyMethod, FolnerFamily};
use natext::extension::{check_empty, check_surjective_up_to, hom_obstruction, solve_ball, ExtensionProblem, HomObstruction, Mode, Verdict};
use natext::groups::{endomorphism_apply, grothendieck_group, BaumslagSolitar, Commutativity, FiniteGroup, Group, GroupElem, SGroup};
use natext::reversibility::{check_fractions_by_subshift, left_reversible_bounded, FractionsVerdict, ReversibilityVerdict};
use natext::subshift::{
    check_minimal_finite, check_surjective_finite, check_transitive_matrix, coset_subshift, interval, LocalRules, SubshiftSpec,
    TransferGraph,
};
use natext::words::{GeneratorSet, SemigroupPresentation, SignedWord};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::report;

pub struct Outcome {
    pub matched: bool,
    pub report: Value,
}

pub struct ExampleDescriptor {
    pub name: &'static str,
    /// Where the example comes from, as listed in the README index.
    pub anchor: &'static str,
    pub expected: &'static str,
    pub run: fn() -> Result<Outcome>,
}

pub fn registry() -> &'static [ExampleDescriptor] {
    &REGISTRY
}

pub fn find(name: &str) -> Option<&'static ExampleDescriptor> {
    REGISTRY.iter().find(|e| e.name == name)
}

/// Runs one example; `Err` only for unknown names or pipeline failures.
pub fn run_example(name: &str) -> Result<Value> {
    let Some(d) = find(name) else { bail!("unknown example `{name}` (see `natext examples list`)") };
    Ok(describe(d, (d.run)()?))
}

fn describe(d: &ExampleDescriptor, o: Outcome) -> Value {
    json!({
        "schema": report::SCHEMA,
        "example": d.name,
        "anchor": d.anchor,
        "expected": d.expected,
        "matched": o.matched,
        "report": o.report,
    })
}

/// Runs every example concurrently; output order is registry order.
pub fn run_all() -> Value {
    let results: Vec<Value> = REGISTRY
        .par_iter()
        .map(|d| match (d.run)() {
            Ok(o) => describe(d, o),
            Err(e) => json!({ "schema": report::SCHEMA, "example": d.name, "matched": false, "error": e.to_string() }),
        })
        .collect();
    let all = results.iter().all(|r| r["matched"] == true);
    json!({ "schema": report::SCHEMA, "all_matched": all, "examples": results })
}

static REGISTRY: [ExampleDescriptor; 11] = [
    ExampleDescriptor {
        name: "fig1-bs12",
        anchor: "Non-extensible Z3-coloring of the free monoid inside BS(1,2)",
        expected: "EmptyProven at radius <= 3; core = {1, b, ab, b^-1ab, ba, a}",
        run: fig1_bs12,
    },
    ExampleDescriptor {
        name: "fig1-free",
        anchor: "Free S-group feasibility",
        expected: "ConsistentUpTo(5) with a witness over F_2",
        run: fig1_free,
    },
    ExampleDescriptor {
        name: "coset-s3-bs12",
        anchor: "Finite coset subshift",
        expected: "relator test and ball solver agree for Z3 and S3 over BS(1,2)",
        run: coset_s3_bs12,
    },
    ExampleDescriptor {
        name: "nat-to-int-goldenmean",
        anchor: "Natural extension of an N-subshift",
        expected: "golden mean N -> Z: SurjectiveUpTo(4) on the window {0,1,2}",
        run: nat_to_int_goldenmean,
    },
    ExampleDescriptor {
        name: "fractions-test-z2",
        anchor: "All-ones configuration in the orbit closure",
        expected: "AllOnesApproximable for Z > N and Z^2 > N^2 at radii 1..4",
        run: fractions_z2,
    },
    ExampleDescriptor {
        name: "fractions-test-f2",
        anchor: "All-ones configuration in the orbit closure",
        expected: "FailsAt(1) for F_2 > F_2+",
        run: fractions_f2,
    },
    ExampleDescriptor {
        name: "reversible-f2plus",
        anchor: "Left reversibility",
        expected: "aF_2+ and bF_2+ disjoint; N^2 witnesses at length 1",
        run: reversible_f2plus,
    },
    ExampleDescriptor {
        name: "grothendieck-n2",
        anchor: "Grothendieck group",
        expected: "N^2 gives rank 2, no torsion; <x,y | xx=yy, xy=yx> gives rank 1, torsion [2]",
        run: grothendieck_n2,
    },
    ExampleDescriptor {
        name: "bs23-endo",
        anchor: "BS(2,3) endomorphism",
        expected: "theta(b) = b^2, theta surjective, [aba^-1, b] in the kernel",
        run: bs23_endo,
    },
    ExampleDescriptor {
        name: "transitive-lift-goldenmean",
        anchor: "Transitivity and minimality lifting",
        expected: "golden mean transitive on N and on Z; Z3 and S3 coset subshifts minimal",
        run: transitive_lift,
    },
    ExampleDescriptor {
        name: "golden-entropy",
        anchor: "Entropy of the natural extension",
        expected: "max |h_N - h_Z| = 0 over n <= 20",
        run: golden_entropy,
    },
];

fn signed(sg: &SGroup, text: &str) -> Result<SignedWord> {
    Ok(sg.semigroup.generators.parse_signed(text)?)
}

/// The six cells of the contradiction cycle.
pub fn fig1_cycle(sg: &SGroup) -> Result<BTreeSet<GroupElem>> {
    ["1", "b", "a b", "b^-1 a b", "b a", "a"].iter().map(|w| Ok(sg.eta_signed(&signed(sg, w)?)?)).collect()
}

fn fig1_bs12() -> Result<Outcome> {
    let sg = SGroup::bs12();
    let spec = SubshiftSpec::fig1();
    let rep = check_empty(&sg, &spec, 3)?;
    let core: BTreeSet<GroupElem> = rep.core_words.iter().map(|w| sg.eta_signed(w)).collect::<Result<_, _>>()?;
    let matched = matches!(rep.verdict, Verdict::EmptyProven { radius } if radius <= 3) && core == fig1_cycle(&sg)?;
    let ball = build_ball(&sg, rep.verdict.radius())?;
    let body = report::extension(&sg, &spec.alphabet, &rep, Some(&ball));
    Ok(Outcome { matched, report: report::envelope("check-empty", json!({ "max_radius": 3 }), body) })
}

fn fig1_free() -> Result<Outcome> {
    let sg = SGroup::free(2);
    let spec = SubshiftSpec::fig1();
    let mut rows = Vec::new();
    let mut matched = true;
    for r in 1..=5 {
        let prob = ExtensionProblem::new(&sg, &spec, r)?;
        let rep = solve_ball(&prob, &Mode::AnyColoring)?;
        matched &= rep.verdict == Verdict::ConsistentUpTo { radius: r } && rep.witness.is_some();
        rows.push(json!({ "radius": r, "verdict": rep.verdict.name(), "ball_size": rep.ball_size, "witness": rep.witness.is_some() }));
    }
    Ok(Outcome { matched, report: report::envelope("extend", json!({ "radii": [1, 5] }), Value::Array(rows)) })
}

fn coset_case(sg: &SGroup, spec: &SubshiftSpec) -> Result<(bool, Value)> {
    let obs = hom_obstruction(sg, spec)?;
    let rep = check_empty(sg, spec, 3)?;
    let empty = matches!(rep.verdict, Verdict::EmptyProven { .. });
    let agree = matches!(obs, HomObstruction::Obstructed(_)) == empty && (empty || rep.certified_nonempty);
    let body = json!({
        "hom_obstruction": report::obstruction(sg, &obs),
        "ball": report::extension(sg, &spec.alphabet, &rep, None),
        "agree": agree,
    });
    Ok((agree, body))
}

fn coset_s3_bs12() -> Result<Outcome> {
    let sg = SGroup::bs12();
    let z3 = coset_subshift(&SemigroupPresentation::free(2), Arc::new(FiniteGroup::cyclic(3)), vec![1, 2])?;
    let s3 = Arc::new(FiniteGroup::symmetric(3));
    let t12 = FiniteGroup::cycle_index(3, &[&[1, 2]]).expect("transposition");
    let t13 = FiniteGroup::cycle_index(3, &[&[1, 3]]).expect("transposition");
    let s3x = coset_subshift(&SemigroupPresentation::free(2), s3, vec![t12, t13])?;
    let (ok_z3, z3_body) = coset_case(&sg, &z3.spec)?;
    let (ok_s3, s3_body) = coset_case(&sg, &s3x.spec)?;
    let body = json!({ "Z3": z3_body, "S3": s3_body });
    Ok(Outcome { matched: ok_z3 && ok_s3, report: report::envelope("check-empty", json!({ "max_radius": 3 }), body) })
}

fn nat_to_int_goldenmean() -> Result<Outcome> {
    let sg = SGroup::nat_in_int(1);
    let spec = SubshiftSpec::golden_mean();
    let rep = check_surjective_up_to(&sg, &spec, 4, &interval(3))?;
    let matched = rep.verdict == Verdict::SurjectiveUpTo { radius: 4 };
    let body = report::extension(&sg, &spec.alphabet, &rep, None);
    Ok(Outcome { matched, report: report::envelope("extend", json!({ "radius": 4, "window": 3 }), body) })
}

const MEMBERSHIP_BOUND: usize = 12;

fn fractions_z2() -> Result<Outcome> {
    let mut rows = Vec::new();
    let mut matched = true;
    for d in 1..=2 {
        let sg = SGroup::nat_in_int(d);
        for r in 1..=4 {
            let v = check_fractions_by_subshift(&sg, r, d * r, MEMBERSHIP_BOUND)?;
            matched &= matches!(v, FractionsVerdict::AllOnesApproximable { .. });
            rows.push(json!({ "group": format!("Z^{d}"), "check": report::fractions(&sg, &v) }));
        }
    }
    Ok(Outcome { matched, report: report::envelope("fractions-test", json!({ "radii": [1, 4], "bound": MEMBERSHIP_BOUND }), Value::Array(rows)) })
}

fn fractions_f2() -> Result<Outcome> {
    let sg = SGroup::free(2);
    let v = check_fractions_by_subshift(&sg, 1, 3, MEMBERSHIP_BOUND)?;
    let matched = v == FractionsVerdict::FailsAt { radius: 1, searched: 3 };
    Ok(Outcome { matched, report: report::envelope("fractions-test", json!({ "radius": 1, "search": 3 }), report::fractions(&sg, &v)) })
}

fn reversible_f2plus() -> Result<Outcome> {
    let f2 = SGroup::free(2);
    let rf = left_reversible_bounded(&f2, 4)?;
    let n2 = SGroup::nat_in_int(2);
    let rn = left_reversible_bounded(&n2, 1)?;
    let matched = rf.iter().any(|r| (r.s, r.t) == (0, 1) && r.verdict == ReversibilityVerdict::DisjointProven)
        && rn.iter().all(|r| matches!(&r.verdict, ReversibilityVerdict::WitnessFound { x, y } if x.len() <= 1 && y.len() <= 1));
    let body = json!({ "F_2+": report::reversibility(&f2, &rf, 4), "N^2": report::reversibility(&n2, &rn, 1) });
    Ok(Outcome { matched, report: report::envelope("reversible", json!({ "bounds": [4, 1] }), body) })
}

fn grothendieck_n2() -> Result<Outcome> {
    let n2 = grothendieck_group(&SemigroupPresentation::free_commutative(2), Commutativity::FromRelations)?;
    let tor = grothendieck_group(&SemigroupPresentation::parse("gens: x y; rels: xx = yy; xy = yx;")?, Commutativity::FromRelations)?;
    let matched = (n2.rank, n2.torsion.as_slice()) == (2, &[][..]) && (tor.rank, tor.torsion.as_slice()) == (1, &[2][..]);
    let body = json!({
        "N^2": { "rank": n2.rank, "torsion": n2.torsion },
        "<x,y | xx=yy, xy=yx>": { "rank": tor.rank, "torsion": tor.torsion },
    });
    Ok(Outcome { matched, report: report::envelope("grothendieck", Value::Null, body) })
}

fn bs23_endo() -> Result<Outcome> {
    let bs = BaumslagSolitar::new(2, 3);
    let group = Group::BaumslagSolitar(bs);
    let gens = GeneratorSet::letters(2);
    let el = |t: &str| -> Result<GroupElem> { Ok(GroupElem::Britton(bs.reduce(&gens.parse_signed(t)?))) };
    let theta = [el("a")?, el("b^2")?];
    let apply = |g: &GroupElem| endomorphism_apply(&group, &theta, g);
    let show = |g: &GroupElem| match g {
        GroupElem::Britton(b) => gens.display_signed(&b.to_word()),
        _ => unreachable!(),
    };
    let theta_b = apply(&el("b")?)?;
    let (ab, ba) = (apply(&el("a b")?)?, apply(&el("b a")?)?);
    // θ(a b a⁻¹ b⁻¹) = b³ b⁻² = b, so b is in the image.
    let preimage = el("a b a^-1 b^-1")?;
    let image_of_preimage = apply(&preimage)?;
    let kernel = el("a b a^-1 b a b^-1 a^-1 b^-1")?;
    let kernel_image = apply(&kernel)?;
    let identity = group.identity();
    let matched = theta_b == el("b^2")?
        && ab != ba
        && image_of_preimage == el("b")?
        && kernel != identity
        && kernel_image == identity;
    let body = json!({
        "theta(a)": show(&theta[0]),
        "theta(b)": show(&theta_b),
        "theta(ab)": show(&ab),
        "theta(ba)": show(&ba),
        "surjectivity_witness": { "word": show(&preimage), "image": show(&image_of_preimage) },
        "kernel_witness": { "word": show(&kernel), "nontrivial": kernel != identity, "image": show(&kernel_image) },
    });
    Ok(Outcome { matched, report: report::envelope("bs23-endo", Value::Null, body) })
}

fn transitive_lift() -> Result<Outcome> {
    let sg = SGroup::nat_in_int(1);
    let rules = LocalRules::from_spec(&sg, &SubshiftSpec::golden_mean())?;
    let nat = TransferGraph::new(&rules, true)?.is_some_and(|tg| tg.is_irreducible());
    let int = check_transitive_matrix(&rules)?;
    let z3 = coset_subshift(&SemigroupPresentation::free(2), Arc::new(FiniteGroup::cyclic(3)), vec![1, 2])?.action();
    let t12 = FiniteGroup::cycle_index(3, &[&[1, 2]]).expect("transposition");
    let t13 = FiniteGroup::cycle_index(3, &[&[1, 3]]).expect("transposition");
    let s3 = coset_subshift(&SemigroupPresentation::free(2), Arc::new(FiniteGroup::symmetric(3)), vec![t12, t13])?.action();
    let (mz3, ms3) = (check_minimal_finite(&z3), check_minimal_finite(&s3));
    let body = json!({
        "golden_mean_N_transitive": nat,
        "golden_mean_Z_transitive": int,
        "Z3_coset": { "minimal": mz3, "surjective": check_surjective_finite(&z3) },
        "S3_coset": { "minimal": ms3, "surjective": check_surjective_finite(&s3) },
    });
    Ok(Outcome { matched: nat && int && mz3 && ms3, report: report::envelope("transitive-lift", Value::Null, body) })
}

fn golden_entropy() -> Result<Outcome> {
    let cmp = entropy_compare(&SubshiftSpec::golden_mean(), FolnerFamily::Nat(1), FolnerFamily::Int(1), 20, EntropyMethod::Auto)?;
    let matched = cmp.counts_identical && cmp.max_difference == 0.0;
    let body = json!({
        "max_difference": cmp.max_difference,
        "counts_identical": cmp.counts_identical,
        "final": cmp.rows.last().map(|r| r.0.estimate),
        "variation_within_first": [cmp.variation_ok.0, cmp.variation_ok.1],
    });
    Ok(Outcome { matched, report: report::envelope("entropy", json!({ "n_max": 20 }), body) })
}
