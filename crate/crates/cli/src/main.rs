mod load;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Result};
use clap::{Args, Parser, Subcommand};
use nilgrade_core::catalog::{self, Expected};
use nilgrade_core::grading::{ConditionReport, LemmaChecker, ParitySpace};
use nilgrade_core::linalg::format_scalar;
use nilgrade_core::search::{none_found_caveat, search};
use nilgrade_core::{
    betti_numbers, check_conditions, graded_betti, reproduce_table, theorem_guard, GradedBettiProfile, LieAlgebra,
    Mode, TableReport, WeightAssignment,
};
use serde::Serialize;
use serde_json::json;

use crate::load::{load_algebra, load_matrix, InputError};

/// Cohomology and grading search for nilpotent Lie algebras over Q.
#[derive(Parser)]
#[command(name = "nilgrade", version)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for searches and tables.
    #[arg(long, global = true, env = "NILGRADE_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AlgebraArgs {
    /// Catalog name (e.g. L5_8, "L6_19(-1)") or family spec (e.g. nmq:5,2).
    #[arg(long)]
    algebra: Option<String>,

    /// JSON algebra document.
    #[arg(long)]
    file: Option<PathBuf>,

    /// JSON n x n matrix whose rows are the new basis vectors.
    #[arg(long)]
    basis_change: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Brackets, lower central series, p-filiform degree and Betti numbers.
    Info {
        #[command(flatten)]
        source: AlgebraArgs,
    },
    /// Betti numbers, optionally graded by a weight assignment.
    Cohomology {
        #[command(flatten)]
        source: AlgebraArgs,
        /// Single cohomological degree.
        #[arg(long, conflicts_with = "max_degree")]
        degree: Option<usize>,
        /// Degrees 0..=k (default: the dimension).
        #[arg(long)]
        max_degree: Option<usize>,
        /// Comma-separated weights, e.g. -1,-1,-2.
        #[arg(long, allow_hyphen_values = true)]
        weights: Option<WeightAssignment>,
    },
    /// Checks homogeneity and the (W)/(H) conditions for a weight assignment.
    Verify {
        #[command(flatten)]
        source: AlgebraArgs,
        #[arg(long, allow_hyphen_values = true)]
        weights: WeightAssignment,
        #[arg(long, default_value = "wh")]
        mode: Mode,
    },
    /// Exhaustive basis-diagonal search for a grading passing the conditions.
    Search {
        #[command(flatten)]
        source: AlgebraArgs,
        /// Largest |weight| (default: twice the dimension).
        #[arg(long)]
        max_weight: Option<i64>,
        #[arg(long, default_value = "wh")]
        mode: Mode,
        /// Report every passing grading, not just the first.
        #[arg(long)]
        all: bool,
    },
    /// Recomputes the verdict table for one dimension, or all of 1..=6.
    Table {
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        max_weight: Option<i64>,
    },
    /// Lists or dumps catalog algebras.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// One canonical name per line.
    List,
    /// The JSON document of an algebra.
    Dump { name: String },
}

struct Loaded {
    algebra: LieAlgebra,
    /// Tabulated data, when the algebra is a catalog entry in its own basis.
    expected: Option<Expected>,
}

fn load(source: &AlgebraArgs) -> Result<Loaded> {
    let mut algebra = load_algebra(source.algebra.as_deref(), source.file.as_deref())?;
    let mut expected = match (&source.algebra, &source.file) {
        (Some(name), None) => catalog::get(name).ok().map(|e| e.expected.clone()),
        _ => None,
    };
    if let Some(path) = &source.basis_change {
        algebra = algebra.change_basis(&load_matrix(path)?)?.validated()?;
        expected = None;
    }
    Ok(Loaded { algebra, expected })
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn bracket_lines(l: &LieAlgebra) -> Vec<String> {
    l.entries()
        .iter()
        .map(|e| {
            let c = format_scalar(&e.c);
            let coeff = match c.as_str() {
                "1" => String::new(),
                "-1" => "-".to_string(),
                _ => format!("{c} "),
            };
            format!("[X{},X{}] = {coeff}X{}", e.i + 1, e.j + 1, e.k + 1)
        })
        .collect()
}

fn info(cli: &Cli, source: &AlgebraArgs) -> Result<u8> {
    let Loaded { algebra: l, expected } = load(source)?;
    let series = l.lower_central_series()?;
    let p = l.p_filiform_degree()?;
    let betti = betti_numbers(&l, l.dim())?;
    if cli.json {
        print_json(&json!({
            "name": l.name(),
            "dim": l.dim(),
            "brackets": l.to_document().brackets,
            "lcs_dims": series.dims,
            "nilpotency_class": series.nilpotency_class,
            "p_filiform": p,
            "betti": betti,
            "expected": expected,
        }))?;
        return Ok(0);
    }
    println!("name: {}", l.name());
    println!("dim: {}", l.dim());
    let brackets = bracket_lines(&l);
    println!("brackets: {}", if brackets.is_empty() { "none (abelian)".into() } else { brackets.join(", ") });
    println!("lower central series dims: {:?} (class {})", series.dims, series.nilpotency_class);
    match p {
        Some(p) => println!("p-filiform: p = {p}"),
        None => println!("p-filiform: no"),
    }
    println!("betti: {}", serde_json::to_string(&betti)?);
    if let Some(e) = expected {
        let grading = e.grading.map_or("none listed".to_string(), |g| g.to_string());
        let w = if e.w == catalog::Verdict::Unknown { "unknown (unresolved in source tables)".to_string() } else { e.w.to_string() };
        println!("tabulated: W {w}, WH {}, grading {grading}", e.wh);
    }
    Ok(0)
}

fn cohomology(
    cli: &Cli,
    source: &AlgebraArgs,
    degree: Option<usize>,
    max_degree: Option<usize>,
    weights: Option<&WeightAssignment>,
) -> Result<u8> {
    let Loaded { algebra: l, .. } = load(source)?;
    let n = l.dim();
    let (from, to) = match (degree, max_degree) {
        (Some(k), _) => (k, k),
        (None, Some(k)) => (0, k),
        (None, None) => (0, n),
    };
    if to > n {
        bail!(InputError(format!("degree {to} exceeds dimension {n}")));
    }
    let betti = betti_numbers(&l, to)?[from..].to_vec();
    let graded: Vec<GradedBettiProfile> = match weights {
        Some(w) => (from.max(1)..=to).map(|j| graded_betti(&l, w, j)).collect::<Result<_, _>>()?,
        None => Vec::new(),
    };
    if cli.json {
        print_json(&json!({
            "algebra": l.name(),
            "from_degree": from,
            "betti": betti,
            "graded": graded,
        }))?;
        return Ok(0);
    }
    if degree.is_some() {
        println!("b_{from} = {}", betti[0]);
    } else {
        println!("betti {}", serde_json::to_string(&betti)?);
    }
    for p in &graded {
        println!("H^{} by degree: {}", p.j, format_profile(p));
    }
    Ok(0)
}

fn format_profile(p: &GradedBettiProfile) -> String {
    if p.by_degree.is_empty() {
        return "0".to_string();
    }
    p.by_degree
        .iter()
        .map(|(k, d)| format!("{k}:{d}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn pass_word(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "pass",
        Some(false) => "fail",
        None => "n/a",
    }
}

fn verify(cli: &Cli, source: &AlgebraArgs, w: &WeightAssignment, mode: Mode) -> Result<u8> {
    let Loaded { algebra: l, .. } = load(source)?;
    let r: ConditionReport = check_conditions(&l, w)?;
    let pass = r.passes(mode);
    let lemmas = if r.homogeneous { Some(LemmaChecker::new(&l)?.check(w)?) } else { None };
    let alarm = if r.passes(Mode::Wh) { theorem_guard(&l, w)? } else { None };
    if cli.json {
        let violations: Vec<_> = r.homogeneity_violations.iter().map(|&(i, j, k)| [i + 1, j + 1, k + 1]).collect();
        print_json(&json!({
            "algebra": l.name(),
            "weights": w,
            "mode": mode,
            "homogeneous": r.homogeneous,
            "violations": violations,
            "w": r.w_pass,
            "h": r.h_pass,
            "h1": r.h1(),
            "h2": r.h2(),
            "component_dims": r.component_dims,
            "w_witnesses": r.w_witnesses,
            "h_witnesses": r.h_witnesses,
            "lemmas": lemmas,
            "alarms": alarm.iter().collect::<Vec<_>>(),
            "pass": pass,
        }))?;
    } else if !r.homogeneous {
        let violated: Vec<String> = r
            .homogeneity_violations
            .iter()
            .map(|&(i, j, k)| format!("[X{},X{}] -> X{}", i + 1, j + 1, k + 1))
            .collect();
        println!("not homogeneous; violated: {}", violated.join(", "));
    } else {
        println!("homogeneous; W: {}; H: {}", pass_word(r.w_pass), pass_word(r.h_pass));
        if let (Some(h1), Some(h2)) = (r.h1(), r.h2()) {
            println!("H^1 by degree: {}", format_profile(h1));
            println!("H^2 by degree: {}", format_profile(h2));
        }
        for x in &r.w_witnesses {
            println!("  W violated: dim H^{}_{} = {}", x.j, x.k, x.dim);
        }
        for x in &r.h_witnesses {
            let space = match x.space {
                ParitySpace::Component => format!("n_{{-{}}}", x.k),
                ParitySpace::Cohomology { j } => format!("H^{j}_{}", x.k),
            };
            println!("  H violated: dim {space} = {} is odd", x.dim);
        }
    }
    if let Some(a) = &alarm {
        eprintln!("ALARM: {} {:?}", a.message, a.details);
    }
    if let Some(lm) = lemmas.as_ref().filter(|lm| !lm.ok) {
        eprintln!("ALARM: structural checks failed: {lm:?}");
    }
    Ok(if pass { 0 } else { 1 })
}

fn search_cmd(cli: &Cli, source: &AlgebraArgs, max_weight: Option<i64>, mode: Mode, all: bool) -> Result<u8> {
    let Loaded { algebra: l, .. } = load(source)?;
    let bound = max_weight.unwrap_or(2 * l.dim() as i64);
    let outcome = search(&l, bound, mode, !all)?;
    if cli.json {
        print_json(&outcome)?;
    } else {
        if outcome.found.is_empty() {
            println!("{}", none_found_caveat(outcome.bound));
        } else {
            for w in &outcome.found {
                println!("found {w} (mode {mode}, bound {})", outcome.bound);
            }
        }
    }
    for a in &outcome.alarms {
        eprintln!("ALARM ({:?}) on {}: {} {:?}", a.kind, a.weights, a.message, a.details);
    }
    Ok(if outcome.found.is_empty() { 1 } else { 0 })
}

fn table(cli: &Cli, dim: Option<usize>, max_weight: Option<i64>) -> Result<u8> {
    let dims: Vec<usize> = match dim {
        Some(d) => vec![d],
        None => (1..=6).collect(),
    };
    let reports = dims
        .iter()
        .map(|&d| reproduce_table(d, max_weight))
        .collect::<Result<Vec<TableReport>, _>>()?;
    let ok = reports.iter().all(TableReport::ok);
    if cli.json {
        print_json(&reports)?;
        return Ok(if ok { 0 } else { 1 });
    }
    for t in &reports {
        println!("dimension {}", t.dim);
        println!("  {:<11} {:>3}  {:<22} {:<22} {:<8} {:<8} agreement", "name", "p", "W", "WH", "table W", "table WH");
        for r in &t.rows {
            let cell = |c: &nilgrade_core::table::Cell| c.grading.as_ref().map_or("none found".to_string(), |g| g.to_string());
            let agreement = serde_json::to_value(r.agreement)?;
            println!(
                "  {:<11} {:>3}  {:<22} {:<22} {:<8} {:<8} {}",
                r.name,
                r.p_filiform.map_or("-".to_string(), |p| p.to_string()),
                cell(&r.w),
                cell(&r.wh),
                r.expected.w.to_string(),
                r.expected.wh.to_string(),
                agreement.as_str().unwrap_or_default(),
            );
            for f in &r.failures {
                println!("      FAIL: {f}");
            }
        }
    }
    println!("\"none found\" means: {}", none_found_caveat(0).replace(", bound 0", ""));
    let alarms: usize = reports.iter().map(TableReport::alarm_count).sum();
    if alarms > 0 {
        eprintln!("ALARM: {alarms} guard alarm(s) raised");
    }
    Ok(if ok { 0 } else { 1 })
}

fn catalog_cmd(cli: &Cli, command: &CatalogCommand) -> Result<u8> {
    match command {
        CatalogCommand::List => {
            if cli.json {
                let rows: Vec<_> = catalog::catalog()
                    .iter()
                    .map(|e| json!({"name": e.name, "dim": e.algebra.dim(), "expected": e.expected}))
                    .collect();
                print_json(&rows)?;
            } else {
                for name in catalog::list() {
                    println!("{name}");
                }
            }
        }
        CatalogCommand::Dump { name } => {
            println!("{}", catalog::resolve(name)?.to_json());
        }
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!(InputError("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match &cli.command {
        Command::Info { source } => info(cli, source),
        Command::Cohomology {
            source,
            degree,
            max_degree,
            weights,
        } => cohomology(cli, source, *degree, *max_degree, weights.as_ref()),
        Command::Verify { source, weights, mode } => verify(cli, source, weights, *mode),
        Command::Search {
            source,
            max_weight,
            mode,
            all,
        } => search_cmd(cli, source, *max_weight, *mode, *all),
        Command::Table { dim, max_weight } => table(cli, *dim, *max_weight),
        Command::Catalog { command } => catalog_cmd(cli, command),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn weights_with_leading_minus_parse() {
        let cli = Cli::try_parse_from(["nilgrade", "verify", "--algebra", "L3_2", "--weights", "-1,-1,-2"]).unwrap();
        match cli.command {
            Command::Verify { weights, mode, .. } => {
                assert_eq!(weights.weights(), &[-1, -1, -2]);
                assert_eq!(mode, Mode::Wh);
            }
            _ => panic!("wrong subcommand"),
        }
    }
}
