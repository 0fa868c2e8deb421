//! Command-line front end: bound evaluation, coefficient tables, inverse
//! calculators, discrepancy of point-set files, cover and chain emission,
//! the proof auditor, and seeded Monte Carlo verification.
//!
//! Machine output is JSON tagged `"schema": "stardisc/1"`; `--format text`
//! produces aligned human-readable output that no tooling should parse.
//! Exit codes: 0 success, 2 usage or validation error, 3 capacity or
//! regime refusal, 1 internal error (including a failed audit).

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use stardisc::bounds::{
    audit_proof, coefficient_table, corollary_bound, corollary_coefficient,
    inverse_discrepancy_existence, inverse_discrepancy_theorem, theorem_bound,
    theorem_coefficient, trivial_regime_threshold,
};
use stardisc::budget::resolve_budget;
use stardisc::covers::{
    bracketing_cardinality_bound, build_chain, cover_cardinality_bound, equidistant_bracketing_cover,
    equidistant_cover,
};
use stardisc::discrepancy::{star_discrepancy_cover, star_discrepancy_exact, DiscrepancyResult};
use stardisc::error::{invalid, Error};
use stardisc::io::{format_brackets, format_point_set, write_point_set};
use stardisc::montecarlo::{
    generate_uniform, run_experiment, ExperimentConfig, ExperimentReport, MethodSpec, Parallelism,
    RNG_ID,
};
use stardisc::{Point, PointSet, Result};

const SCHEMA: &str = "stardisc/1";

#[derive(Parser)]
#[command(
    name = "stardisc",
    version,
    about = "Star-discrepancy bounds, covers, and seeded Monte Carlo verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the probabilistic star-discrepancy bound at (q, s, N)
    Bound(BoundArgs),
    /// Coefficient of sqrt(s/N) over lists of q and s
    Table(TableArgs),
    /// Smallest N whose bound is at most eps
    Inverse(InverseArgs),
    /// Star-discrepancy of a point-set file, exact or cover-bracketed
    Disc(DiscArgs),
    /// Emit an equidistant delta-cover or delta-bracketing cover
    Cover(CoverArgs),
    /// Dyadic chain decomposition of the box [0, x]
    Chain(ChainArgs),
    /// Re-check every inequality in the bound's derivation
    Audit(AuditArgs),
    /// Write a seeded uniform random point set
    Generate(GenerateArgs),
    /// Monte Carlo verification of the bound's probability guarantee
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Exact,
    Cover,
}

#[derive(Args)]
struct BoundArgs {
    /// Confidence level, in (0,1)
    #[arg(long)]
    q: f64,
    /// Dimension
    #[arg(long)]
    s: usize,
    /// Number of points
    #[arg(long)]
    n: u64,
    /// Use the dimension-uniform coefficient (no 1/s inside the root)
    #[arg(long)]
    uniform: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct TableArgs {
    /// Comma-separated confidence levels
    #[arg(long = "q-list", value_delimiter = ',', default_values_t = vec![0.01, 0.5, 0.9, 0.99, 0.999])]
    q_list: Vec<f64>,
    /// Comma-separated dimensions
    #[arg(long = "s-list", value_delimiter = ',', default_values_t = vec![10usize, 100])]
    s_list: Vec<usize>,
    #[arg(long, value_enum, default_value_t = TableFormat::Text)]
    format: TableFormat,
}

#[derive(Args)]
struct InverseArgs {
    /// Confidence level; required unless --existence
    #[arg(long, required_unless_present = "existence")]
    q: Option<f64>,
    /// Dimension
    #[arg(long)]
    s: usize,
    /// Target discrepancy
    #[arg(long)]
    eps: f64,
    /// Use the guaranteed-existence form ceil(100 s / eps^2) instead
    #[arg(long, conflicts_with = "q")]
    existence: bool,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct DiscArgs {
    /// Point-set file (header "s N", one point per row)
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    /// Cover resolution; required for --method cover
    #[arg(long)]
    delta: Option<f64>,
    /// Work budget override (also settable via STARDISC_BUDGET)
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct CoverArgs {
    /// Dimension
    #[arg(long)]
    s: usize,
    /// Cover resolution, in (0,1]
    #[arg(long)]
    delta: f64,
    /// Emit a bracketing cover (pairs) instead of a delta-cover (points)
    #[arg(long)]
    bracket: bool,
    /// Write to this file; without it the cover goes to stdout
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct ChainArgs {
    /// Dimension; must match the coordinate count of --x
    #[arg(long)]
    s: usize,
    /// Chain depth K
    #[arg(long)]
    k: usize,
    /// Query point, comma-separated coordinates in [0,1]
    #[arg(long)]
    x: String,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long)]
    q: f64,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    seed: u64,
    /// Substream index; trial i of a verify run uses stream i
    #[arg(long, default_value_t = 0)]
    stream: u64,
    /// Point-set file to write
    #[arg(long)]
    output: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    s: usize,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    q: f64,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = MethodArg::Exact)]
    method: MethodArg,
    /// Cover resolution; required for --method cover
    #[arg(long)]
    delta: Option<f64>,
    /// Worker threads: "auto" or an integer >= 1; never affects results
    #[arg(long, default_value = "auto")]
    parallelism: String,
    /// Confidence level of the Clopper-Pearson interval
    #[arg(long = "ci-level", default_value_t = 0.99)]
    ci_level: f64,
    /// Also write per-trial CSV (trial, value, pass) to this file
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Serialize)]
struct Envelope<T: Serialize> {
    schema: &'static str,
    command: &'static str,
    #[serde(flatten)]
    body: T,
}

fn print_json<T: Serialize>(command: &'static str, body: &T) -> Result<()> {
    let envelope = Envelope {
        schema: SCHEMA,
        command,
        body,
    };
    let text =
        serde_json::to_string_pretty(&envelope).map_err(|e| Error::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

/// Two-decimal display: round half away from zero, then format.
fn display_2dp(v: f64) -> String {
    format!("{:.2}", (v * 100.0).round() / 100.0)
}

/// Path flags are usage: a file that cannot be opened is exit 2, not 1.
fn usage_io(path: &Path, e: Error) -> Error {
    match e {
        Error::Io(io) => invalid(format!("cannot access {}: {io}", path.display())),
        other => other,
    }
}

fn parse_coords(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(|tok| {
            let tok = tok.trim();
            tok.parse::<f64>()
                .map_err(|_| invalid(format!("coordinate {tok:?} is not a number")))
        })
        .collect()
}

fn method_spec(method: MethodArg, delta: Option<f64>) -> Result<MethodSpec> {
    match (method, delta) {
        (MethodArg::Exact, None) => Ok(MethodSpec::Exact),
        (MethodArg::Exact, Some(_)) => {
            Err(invalid("--delta only applies with --method cover"))
        }
        (MethodArg::Cover, Some(delta)) => Ok(MethodSpec::Cover { delta }),
        (MethodArg::Cover, None) => Err(invalid("--method cover requires --delta")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Bound(args) => cmd_bound(args),
        Command::Table(args) => cmd_table(args),
        Command::Inverse(args) => cmd_inverse(args),
        Command::Disc(args) => cmd_disc(args),
        Command::Cover(args) => cmd_cover(args),
        Command::Chain(args) => cmd_chain(args),
        Command::Audit(args) => cmd_audit(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

fn cmd_bound(args: BoundArgs) -> Result<ExitCode> {
    let (coefficient, bound) = if args.uniform {
        (
            corollary_coefficient(args.q)?,
            corollary_bound(args.q, args.s, args.n)?,
        )
    } else {
        (
            theorem_coefficient(args.q, args.s)?,
            theorem_bound(args.q, args.s, args.n)?,
        )
    };
    let threshold = trivial_regime_threshold(args.q, args.s)?;
    let trivial = (args.n as f64) < threshold;
    match args.format {
        Format::Json => print_json(
            "bound",
            &json!({
                "inputs": {"q": args.q, "s": args.s, "n": args.n, "uniform": args.uniform},
                "coefficient": coefficient,
                "coefficient_display": display_2dp(coefficient),
                "bound": bound,
                "trivial_regime": trivial,
                "regime_threshold": threshold,
            }),
        )?,
        Format::Text => {
            println!("coefficient  {coefficient:.6} ({})", display_2dp(coefficient));
            println!("bound        {bound:.6}");
            if trivial {
                println!("regime       trivial (N below {threshold:.2}; the bound exceeds 1)");
            } else {
                println!("regime       ok (N >= {threshold:.2})");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(args: TableArgs) -> Result<ExitCode> {
    let coefficients = coefficient_table(&args.q_list, &args.s_list)?;
    match args.format {
        TableFormat::Text => {
            print!("{:>10}", "c(q,s)");
            for q in &args.q_list {
                print!("{q:>10}");
            }
            println!();
            for (i, s) in args.s_list.iter().enumerate() {
                print!("{:>10}", format!("s={s}"));
                for value in &coefficients[i] {
                    print!("{:>10}", display_2dp(*value));
                }
                println!();
            }
        }
        TableFormat::Csv => {
            let header: Vec<String> = args.q_list.iter().map(|q| q.to_string()).collect();
            println!("s,{}", header.join(","));
            for (i, s) in args.s_list.iter().enumerate() {
                let row: Vec<String> =
                    coefficients[i].iter().map(|v| format!("{v:.16e}")).collect();
                println!("{s},{}", row.join(","));
            }
        }
        TableFormat::Json => {
            let display: Vec<Vec<String>> = coefficients
                .iter()
                .map(|row| row.iter().map(|v| display_2dp(*v)).collect())
                .collect();
            print_json(
                "table",
                &json!({
                    "inputs": {"q": args.q_list, "s": args.s_list},
                    "coefficients": coefficients,
                    "display": display,
                }),
            )?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_inverse(args: InverseArgs) -> Result<ExitCode> {
    let body = if args.existence {
        let n = inverse_discrepancy_existence(args.s, args.eps)?;
        json!({
            "inputs": {"s": args.s, "eps": args.eps},
            "route": "existence",
            "n": n,
        })
    } else {
        let q = args.q.expect("clap enforces --q without --existence");
        let n = inverse_discrepancy_theorem(q, args.s, args.eps)?;
        json!({
            "inputs": {"q": q, "s": args.s, "eps": args.eps},
            "route": "theorem",
            "n": n,
            "bound_at_n": theorem_bound(q, args.s, n)?,
        })
    };
    match args.format {
        Format::Json => print_json("inverse", &body)?,
        Format::Text => println!("n  {}", body["n"]),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_disc_result(format: Format, input: &Path, ps: &PointSet, result: &DiscrepancyResult) -> Result<()> {
    match format {
        Format::Json => print_json(
            "disc",
            &json!({
                "inputs": {"input": input.display().to_string()},
                "s": ps.dim(),
                "n": ps.len(),
                "result": result,
            }),
        ),
        Format::Text => {
            println!("value    {}", result.value);
            if let Some(delta) = result.delta {
                println!("bracket  [{}, {}]", result.value, result.value + delta);
            }
            let coords: Vec<String> =
                result.witness.coords().iter().map(|c| c.to_string()).collect();
            println!("witness  ({})", coords.join(", "));
            Ok(())
        }
    }
}

fn cmd_disc(args: DiscArgs) -> Result<ExitCode> {
    let spec = method_spec(args.method, args.delta)?;
    let budget = resolve_budget(args.budget)?;
    let ps = stardisc::io::read_point_set(&args.input).map_err(|e| usage_io(&args.input, e))?;
    let result = match spec {
        MethodSpec::Exact => star_discrepancy_exact(&ps, budget)?,
        MethodSpec::Cover { delta } => star_discrepancy_cover(&ps, delta, budget)?,
    };
    print_disc_result(args.format, &args.input, &ps, &result)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_cover(args: CoverArgs) -> Result<ExitCode> {
    let budget = resolve_budget(args.budget)?;
    let (text, m, count, cardinality_bound) = if args.bracket {
        let cover = equidistant_bracketing_cover(args.s, args.delta, budget)?;
        (
            format_brackets(cover.dim, &cover.brackets),
            cover.m,
            cover.brackets.len(),
            bracketing_cardinality_bound(args.s, args.delta)?,
        )
    } else {
        let cover = equidistant_cover(args.s, args.delta, budget)?;
        let ps = PointSet::new(cover.dim, cover.members.clone())?;
        (
            format_point_set(&ps),
            cover.m,
            cover.members.len(),
            cover_cardinality_bound(args.s, args.delta)?,
        )
    };
    match &args.output {
        Some(path) => {
            std::fs::write(path, &text).map_err(|e| usage_io(path, Error::Io(e)))?;
            print_json(
                "cover",
                &json!({
                    "inputs": {"s": args.s, "delta": args.delta, "bracket": args.bracket},
                    "m": m,
                    "count": count,
                    "cardinality_bound": cardinality_bound,
                    "output": path.display().to_string(),
                }),
            )?;
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_chain(args: ChainArgs) -> Result<ExitCode> {
    let coords = parse_coords(&args.x)?;
    if coords.len() != args.s {
        return Err(invalid(format!(
            "--x has {} coordinates but --s is {}",
            coords.len(),
            args.s
        )));
    }
    let budget = resolve_budget(args.budget)?;
    let x = Point::new(coords)?;
    let chain = build_chain(&x, args.k, budget)?;
    let boxes: Vec<serde_json::Value> = chain
        .boxes()
        .iter()
        .map(|b| {
            json!({
                "lower": b.lower.coords(),
                "upper": b.upper.coords(),
                "measure": b.measure(),
            })
        })
        .collect();
    match args.format {
        Format::Json => print_json(
            "chain",
            &json!({
                "inputs": {"s": args.s, "k": args.k, "x": x.coords()},
                "chain": chain.chain,
                "boxes": boxes,
            }),
        )?,
        Format::Text => {
            for (i, p) in chain.chain.iter().enumerate() {
                let coords: Vec<String> = p.coords().iter().map(|c| c.to_string()).collect();
                println!("p_{i}  ({})", coords.join(", "));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_audit(args: AuditArgs) -> Result<ExitCode> {
    let report = audit_proof(args.q, args.s, args.n)?;
    match args.format {
        Format::Json => print_json(
            "audit",
            &json!({
                "inputs": {"q": args.q, "s": args.s, "n": args.n},
                "constants": report.constants,
                "checks": report.checks,
                "overall": report.overall,
            }),
        )?,
        Format::Text => {
            println!(
                "{:<14}{:>22}{:>22}{:>14}  pass",
                "check", "lhs", "rhs", "margin"
            );
            for c in &report.checks {
                println!(
                    "{:<14}{:>22.12}{:>22.12}{:>14.3e}  {}",
                    c.name, c.lhs, c.rhs, c.margin, c.pass
                );
            }
            println!("overall  {}", if report.overall { "pass" } else { "FAIL" });
        }
    }
    if report.overall {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(1))
    }
}

fn cmd_generate(args: GenerateArgs) -> Result<ExitCode> {
    let ps = generate_uniform(args.s, args.n, args.seed, args.stream)?;
    write_point_set(&args.output, &ps).map_err(|e| usage_io(&args.output, e))?;
    print_json(
        "generate",
        &json!({
            "inputs": {"s": args.s, "n": args.n, "seed": args.seed, "stream": args.stream},
            "rng": RNG_ID,
            "points": ps.len(),
            "output": args.output.display().to_string(),
        }),
    )?;
    Ok(ExitCode::SUCCESS)
}

fn write_trials_csv(path: &Path, report: &ExperimentReport) -> Result<()> {
    let mut text = String::from("trial,value,pass\n");
    for r in &report.per_trial {
        text.push_str(&format!("{},{:.16e},{}\n", r.index, r.value, r.pass));
    }
    std::fs::write(path, text).map_err(|e| usage_io(path, Error::Io(e)))
}

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode> {
    let method = method_spec(args.method, args.delta)?;
    let parallelism: Parallelism = args.parallelism.parse()?;
    let budget = resolve_budget(args.budget)?;
    let cfg = ExperimentConfig {
        s: args.s,
        n: args.n,
        q: args.q,
        trials: args.trials,
        seed: args.seed,
        method,
        parallelism,
        ci_level: args.ci_level,
        budget,
    };
    let report = run_experiment(&cfg)?;
    if let Some(path) = &args.csv {
        write_trials_csv(path, &report)?;
    }
    match args.format {
        Format::Json => print_json("verify", &report)?,
        Format::Text => {
            println!("threshold              {}", report.threshold);
            println!(
                "pass                   {}/{} ({})",
                report.pass_count, cfg.trials, report.empirical_probability
            );
            println!(
                "ci ({:.0}%)               [{}, {}]",
                cfg.ci_level * 100.0,
                report.ci_low,
                report.ci_high
            );
            let s = report.discrepancy_summary;
            println!(
                "scaled D* (min/median/max/mean)  {} / {} / {} / {}",
                s.min, s.median, s.max, s.mean
            );
            if report.conservative {
                println!("note                   cover surrogate; pass rate is a lower bound");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
