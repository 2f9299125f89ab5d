//! Command-line surface. [`execute`] returns the text to print and the
//! exit code, so the binary is a thin wrapper.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use natext::cayley::{build_ball, build_ball_approximate};
use natext::dynamics::{entropy_compare, entropy_estimate, EntropyMethod, FolnerFamily};
use natext::extension::{check_empty, check_point_extensible, check_surjective_up_to, solve_ball, ExtensionProblem, Mode};
use natext::groups::{grothendieck_group, Commutativity, SGroup};
use natext::reversibility::{check_fractions_by_subshift, left_reversible_bounded, FractionsVerdict};
use natext::subshift::{Pattern, SubshiftSpec};
use natext::words::{SemigroupPresentation, Word};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::{registry, report, select, spec_file};

#[derive(Debug, Parser)]
#[command(name = "natext", version, about = "Natural extensions of subshifts on semigroups")]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the extension problem on one ball.
    Extend(ExtendArgs),
    /// Search for a radius at which the extension is provably empty.
    CheckEmpty(CheckEmptyArgs),
    /// Bounded left-reversibility test on generator pairs.
    Reversible(ReversibleArgs),
    /// Test whether the group is a group of right fractions.
    FractionsTest(FractionsArgs),
    /// Grothendieck group of a commutative presentation.
    Grothendieck(GrothendieckArgs),
    /// Entropy estimates over Følner boxes.
    Entropy(EntropyArgs),
    /// Built-in worked examples.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Cayley ball as DOT or JSON.
    ExportDot(ExportDotArgs),
}

#[derive(Debug, Subcommand)]
pub enum ExamplesAction {
    List,
    Run { name: String },
    RunAll,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// Z^d, F_n, BS(m,n), BS(m,n)+, BS(2,3):theta, cyclic:n, symmetric:n,
    /// finite:<table.json>, generic or auto.
    #[arg(long)]
    pub group: String,
    /// Semigroup presentation, e.g. "gens: a b; rels: ab = bba;".
    #[arg(long)]
    pub pres: Option<String>,
    /// Images of the semigroup generators in a finite group, e.g. "(12),(13)".
    #[arg(long)]
    pub phi: Option<String>,
    /// Word-length budget (default from NATEXT_WORD_BUDGET or 12).
    #[arg(long)]
    pub word_budget: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpecArgs {
    /// JSON spec file.
    #[arg(long, conflicts_with = "builtin")]
    pub spec: Option<PathBuf>,
    /// fig1, golden-mean or full:<k>.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct ExtendArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub radius: Option<usize>,
    /// Base pattern to extend, as a JSON object from words to symbols.
    #[arg(long, conflicts_with = "surjective")]
    pub point: Option<String>,
    /// Check every admissible pattern on the first `window` words.
    #[arg(long)]
    pub surjective: bool,
    #[arg(long)]
    pub window: Option<usize>,
    /// Write the contradiction core (or the whole ball) as DOT.
    #[arg(long)]
    pub dot_core: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckEmptyArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long)]
    pub max_radius: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReversibleArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Word-length bound for common right multiples.
    #[arg(long)]
    pub bound: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FractionsArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    /// Check radii 1..=radius.
    #[arg(long)]
    pub radius: Option<usize>,
    /// Search radius for the translating element (default 2·radius).
    #[arg(long)]
    pub search: Option<usize>,
}

#[derive(Debug, Args)]
pub struct GrothendieckArgs {
    #[arg(long)]
    pub pres: String,
    /// Treat the presentation as commutative without listing commutators.
    #[arg(long)]
    pub declared: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Family {
    Nat,
    Int,
    IntCentered,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum, default_value = "nat")]
    pub family: Family,
    #[arg(long, default_value_t = 1)]
    pub dim: usize,
    #[arg(long)]
    pub n_max: Option<usize>,
    /// Count by enumeration even where a transfer matrix applies.
    #[arg(long)]
    pub enumerate: bool,
    /// Also compute the ℤ^d side and compare.
    #[arg(long)]
    pub compare: bool,
    /// Report estimates in bits.
    #[arg(long)]
    pub log2: bool,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExportDotArgs {
    #[command(flatten)]
    pub group: GroupArgs,
    #[arg(long, default_value_t = 2)]
    pub radius: usize,
    /// Emit the JSON ball dump instead of DOT.
    #[arg(long)]
    pub json: bool,
}

pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn json(v: &Value) -> Self {
        Output { text: serde_json::to_string_pretty(v).expect("json") + "\n", code: 0 }
    }
}

fn sgroup(g: &GroupArgs, cfg: &RunConfig) -> Result<SGroup> {
    let pres = g.pres.as_deref().map(SemigroupPresentation::parse).transpose()?;
    Ok(select::resolve(&g.group, pres.as_ref(), g.phi.as_deref(), g.word_budget.unwrap_or(cfg.word_budget))?)
}

fn load_spec(s: &SpecArgs, sg: &SGroup) -> Result<SubshiftSpec> {
    match (&s.spec, &s.builtin) {
        (Some(path), _) => {
            let f = spec_file::read(path).with_context(|| format!("loading {}", path.display()))?;
            Ok(f.to_spec(&sg.semigroup.generators)?)
        }
        (None, Some(name)) => builtin_spec(name),
        (None, None) => bail!("either --spec or --builtin is required"),
    }
}

pub fn builtin_spec(name: &str) -> Result<SubshiftSpec> {
    match name {
        "fig1" => Ok(SubshiftSpec::fig1()),
        "golden-mean" => Ok(SubshiftSpec::golden_mean()),
        _ => {
            let k = name.strip_prefix("full:").and_then(|k| k.parse::<usize>().ok()).filter(|&k| k >= 1);
            k.map(SubshiftSpec::full).ok_or_else(|| anyhow!("unknown builtin spec `{name}` (fig1, golden-mean, full:<k>)"))
        }
    }
}

/// The first `size` positive words in length-lexicographic order.
pub fn s_window(rank: usize, size: usize) -> Vec<Word> {
    let mut len = 0;
    while Word::all_up_to(rank, len).len() < size && len < size {
        len += 1;
    }
    let mut words = Word::all_up_to(rank, len);
    words.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    words.truncate(size);
    words
}

fn parse_point(text: &str, sg: &SGroup, spec: &SubshiftSpec) -> Result<Pattern> {
    let v: serde_json::Map<String, Value> = serde_json::from_str(text).context("--point must be a JSON object")?;
    let cells = v
        .iter()
        .map(|(w, s)| {
            let name = s.as_str().map(str::to_string).unwrap_or_else(|| s.to_string());
            let sym = spec.alphabet.iter().position(|a| *a == name).ok_or_else(|| anyhow!("unknown symbol `{name}`"))?;
            Ok((sg.semigroup.generators.parse_word(w)?, sym as u8))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Pattern::new(cells))
}

pub fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Output> {
    cfg.validate()?;
    match &cli.command {
        Command::Extend(a) => extend(a, cfg),
        Command::CheckEmpty(a) => {
            let sg = sgroup(&a.group, cfg)?;
            let spec = load_spec(&a.spec, &sg)?;
            let max = a.max_radius.unwrap_or(cfg.max_radius);
            let rep = check_empty(&sg, &spec, max)?;
            let ball = build_ball(&sg, rep.verdict.radius())?;
            let body = report::extension(&sg, &spec.alphabet, &rep, Some(&ball));
            Ok(Output::json(&report::envelope("check-empty", json!({ "max_radius": max, "group": sg.group.name() }), body)))
        }
        Command::Reversible(a) => {
            let sg = sgroup(&a.group, cfg)?;
            let bound = a.bound.unwrap_or(cfg.word_budget.min(6));
            let reps = left_reversible_bounded(&sg, bound)?;
            Ok(Output::json(&report::envelope("reversible", json!({ "bound": bound }), report::reversibility(&sg, &reps, bound))))
        }
        Command::FractionsTest(a) => {
            let sg = sgroup(&a.group, cfg)?;
            let radius = a.radius.unwrap_or(cfg.max_radius);
            let mut rows = Vec::new();
            let mut passed = true;
            for r in 1..=radius {
                let search = a.search.unwrap_or(2 * r);
                let v = check_fractions_by_subshift(&sg, r, search, cfg.word_budget)?;
                let fails = matches!(v, FractionsVerdict::FailsAt { .. });
                rows.push(report::fractions(&sg, &v));
                if fails {
                    passed = false;
                    break;
                }
            }
            let body = json!({ "passed": passed, "radii": rows });
            Ok(Output::json(&report::envelope("fractions-test", json!({ "radius": radius, "bound": cfg.word_budget }), body)))
        }
        Command::Grothendieck(a) => {
            let p = SemigroupPresentation::parse(&a.pres)?;
            let mode = if a.declared { Commutativity::Declared } else { Commutativity::FromRelations };
            let ab = grothendieck_group(&p, mode)?;
            let basis: serde_json::Map<String, Value> =
                p.generators.names().iter().cloned().zip(ab.basis.iter().map(|b| json!(b))).collect();
            let body = json!({ "rank": ab.rank, "torsion": ab.torsion, "basis": basis });
            Ok(Output::json(&report::envelope("grothendieck", Value::Null, body)))
        }
        Command::Entropy(a) => entropy(a, cfg),
        Command::Examples { action } => match action {
            ExamplesAction::List => {
                let mut s = String::new();
                for e in registry::registry() {
                    s.push_str(&format!("{:<28} {}\n", e.name, e.expected));
                }
                Ok(Output { text: s, code: 0 })
            }
            ExamplesAction::Run { name } => {
                let v = registry::run_example(name)?;
                let code = if v["matched"] == true { 0 } else { 1 };
                Ok(Output { code, ..Output::json(&v) })
            }
            ExamplesAction::RunAll => {
                let v = registry::run_all();
                let code = if v["all_matched"] == true { 0 } else { 1 };
                Ok(Output { code, ..Output::json(&v) })
            }
        },
        Command::ExportDot(a) => {
            let sg = sgroup(&a.group, cfg)?;
            let ball = if sg.group.is_canonical() { build_ball(&sg, a.radius)? } else { build_ball_approximate(&sg, a.radius)? };
            if a.json {
                Ok(Output::json(&json!({ "schema": report::SCHEMA, "ball": report::ball(&sg, &ball) })))
            } else {
                Ok(Output { text: ball.export_dot(&sg), code: 0 })
            }
        }
    }
}

fn extend(a: &ExtendArgs, cfg: &RunConfig) -> Result<Output> {
    let sg = sgroup(&a.group, cfg)?;
    let spec = load_spec(&a.spec, &sg)?;
    let radius = a.radius.unwrap_or(cfg.max_radius);
    let window = a.window.unwrap_or(cfg.window);
    let prob = ExtensionProblem::new(&sg, &spec, radius)?;
    let (rep, bounds) = if a.surjective {
        let rep = check_surjective_up_to(&sg, &spec, radius, &s_window(sg.rank(), window))?;
        (rep, json!({ "radius": radius, "window": window }))
    } else if let Some(p) = &a.point {
        (check_point_extensible(&sg, &spec, &parse_point(p, &sg, &spec)?, radius)?, json!({ "radius": radius }))
    } else {
        (solve_ball(&prob, &Mode::AnyColoring)?, json!({ "radius": radius }))
    };
    if let Some(path) = &a.dot_core {
        let dot = prob.ball.export_dot_subset(&sg, rep.core.as_deref());
        std::fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    let body = report::extension(&sg, &spec.alphabet, &rep, Some(&prob.ball));
    Ok(Output::json(&report::envelope("extend", bounds, body)))
}

fn entropy(a: &EntropyArgs, cfg: &RunConfig) -> Result<Output> {
    let d = a.dim;
    let fam = match a.family {
        Family::Nat => FolnerFamily::Nat(d),
        Family::Int => FolnerFamily::Int(d),
        Family::IntCentered => FolnerFamily::IntCentered(d),
    };
    let spec = match (&a.spec.spec, &a.spec.builtin) {
        (None, None) => bail!("either --spec or --builtin is required"),
        _ => load_spec(&a.spec, &SGroup::nat_in_int(d))?,
    };
    let n_max = a.n_max.unwrap_or(cfg.n_max);
    let method = if a.enumerate { EntropyMethod::Enumerate } else { EntropyMethod::Auto };
    let log2 = a.log2 || cfg.log2;
    let unit = if log2 { "bits" } else { "nats" };
    if a.compare {
        let cmp = entropy_compare(&spec, FolnerFamily::Nat(d), FolnerFamily::Int(d), n_max, method)?;
        if a.format == Format::Csv {
            let mut s = String::from("n,size,count_s,count_g,estimate_s,estimate_g,difference\n");
            for (x, y, diff) in &cmp.rows {
                s.push_str(&format!(
                    "{},{},{},{},{:.12},{:.12},{:.12}\n",
                    x.n, x.size, x.count, y.count, report::scale(x.estimate, log2), report::scale(y.estimate, log2), report::scale(*diff, log2)
                ));
            }
            return Ok(Output { text: s, code: 0 });
        }
        let s_rows: Vec<_> = cmp.rows.iter().map(|r| r.0.clone()).collect();
        let g_rows: Vec<_> = cmp.rows.iter().map(|r| r.1.clone()).collect();
        let body = json!({
            "unit": unit,
            "max_difference": report::scale(cmp.max_difference, log2),
            "counts_identical": cmp.counts_identical,
            "variation_within_first": [cmp.variation_ok.0, cmp.variation_ok.1],
            "semigroup": report::entropy_rows(&s_rows, log2),
            "group": report::entropy_rows(&g_rows, log2),
        });
        return Ok(Output::json(&report::envelope("entropy", json!({ "n_max": n_max, "dim": d }), body)));
    }
    let est = entropy_estimate(&spec, fam, n_max, method)?;
    if a.format == Format::Csv {
        return Ok(Output { text: report::entropy_csv(&est, log2), code: 0 });
    }
    let body = json!({
        "unit": unit,
        "final": est.last().map(|e| report::scale(e.estimate, log2)),
        "variation_within_first": natext::dynamics::variation_within_first(&est),
        "increments": natext::dynamics::increment_estimates(&est).into_iter().map(|x| report::scale(x, log2)).collect::<Vec<_>>(),
        "rows": report::entropy_rows(&est, log2),
    });
    Ok(Output::json(&report::envelope("entropy", json!({ "n_max": n_max, "dim": d }), body)))
}
