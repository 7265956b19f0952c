//! `skewid`: run one engine operation against a configured algebra and print
//! JSON-lines records to standard output.

mod commands;
mod config;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use commands::{CliError, Method, Outcome, Scope};
use config::{parse_config, SessionConfig};

#[derive(Parser)]
#[command(name = "skewid", version, about = "Exact noncommutative algebra experiments over configured coefficient algebras")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, short)]
    config: PathBuf,
    /// Override the seed from the configuration.
    #[arg(long)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a generalized group identity `w = 1`.
    CheckGgi(IdentityArgs),
    /// Check that every value of `w` has a central power.
    CheckGpcgi(IdentityArgs),
    /// Decide whether no power of `w` collapses into the coefficients.
    Nontrivial(WordArg),
    /// Make the first and last indeterminates of `w` differ.
    Retarget(WordArg),
    /// Substitute `u_r(a, x_i)` for every indeterminate of `w`.
    Reduce(ReduceArgs),
    /// Build `c_r(a, x)` (or `u_r(a, x)` with `--u`) along a series.
    BuildC(BuildArgs),
    /// Expand `w(1 + c_1 t, …, 1 + c_m t)` to the configured order.
    Expand(ExpandArgs),
    /// Invert `1 + a t` as a truncated series.
    SeriesInvert(InvertArgs),
    /// Central `β` with `1 + aβ` not invertible.
    BadBeta(ElementArg),
    /// Centrality of `f_{i₀}^α` for the expansion of `w^M` on seeded samples.
    Pipeline(PipelineArgs),
    /// Multiplicative order of `x`, up to `n_max`.
    Torsion(XArg),
    /// Least `n ≤ n_max` with `x^n` central.
    Radical(XArg),
    /// Search for relations between `c_r(u, v)` and `c_r(u, v²)`.
    FreeSearch(FreeArgs),
    /// `m = |GL_n(P_a)|` with `a^m = 1`, over finite fields.
    Exponent(ElementArg),
}

#[derive(Args)]
struct IdentityArgs {
    /// Monomial in the word DSL.
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, value_enum, default_value = "sampled")]
    scope: Scope,
    /// Generator of the subgroup, for `--scope generated`; repeatable.
    #[arg(long = "gen", allow_hyphen_values = true)]
    gens: Vec<String>,
    /// Number of sampled tuples.
    #[arg(long, default_value_t = 200)]
    count: u64,
}

#[derive(Args)]
struct WordArg {
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Series descriptor such as `n,f2`; `-` for the trivial series.
    #[arg(long, default_value = "-")]
    series: String,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "-")]
    series: String,
    /// Build `u_r = a⁻¹ c_r` instead.
    #[arg(long)]
    u: bool,
}

#[derive(Args)]
struct ExpandArgs {
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    /// Argument `c_i`; repeat once per indeterminate.
    #[arg(long = "arg", allow_hyphen_values = true)]
    args: Vec<String>,
    #[arg(long)]
    order: Option<i64>,
}

#[derive(Args)]
struct InvertArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long)]
    order: Option<i64>,
    #[arg(long, value_enum, default_value = "geometric")]
    method: Method,
}

#[derive(Args)]
struct ElementArg {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
}

#[derive(Args)]
struct XArg {
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args)]
struct PipelineArgs {
    #[arg(long, allow_hyphen_values = true)]
    w: String,
    #[arg(long, default_value_t = 20)]
    count: u64,
    /// Power `M` applied to the expansion.
    #[arg(long, default_value_t = 1)]
    m: u64,
    #[arg(long, default_value_t = 1)]
    alpha: u64,
    #[arg(long)]
    order: Option<i64>,
}

#[derive(Args)]
struct FreeArgs {
    #[arg(long, allow_hyphen_values = true)]
    u: String,
    /// Partner; without it every integral unit of height ≤ `--height` is scanned.
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, default_value_t = 2)]
    height: u64,
    #[arg(long, default_value = "-")]
    series: String,
    #[arg(long)]
    length: Option<u32>,
}

const SUBSTITUTION_NOTE: &str =
    "computations run in the configured algebra with exact arithmetic over a countable or finite center; sampled verdicts are evidence, not proofs";

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::CheckGgi(_) => "check-ggi",
        Command::CheckGpcgi(_) => "check-gpcgi",
        Command::Nontrivial(_) => "nontrivial",
        Command::Retarget(_) => "retarget",
        Command::Reduce(_) => "reduce",
        Command::BuildC(_) => "build-c",
        Command::Expand(_) => "expand",
        Command::SeriesInvert(_) => "series-invert",
        Command::BadBeta(_) => "bad-beta",
        Command::Pipeline(_) => "pipeline",
        Command::Torsion(_) => "torsion",
        Command::Radical(_) => "radical",
        Command::FreeSearch(_) => "free-search",
        Command::Exponent(_) => "exponent",
    }
}

fn dispatch(cfg: &SessionConfig, command: &Command) -> Result<Outcome, CliError> {
    use commands as c;
    match command {
        Command::CheckGgi(a) => c::check(cfg, false, &a.w, a.scope, &a.gens, a.count),
        Command::CheckGpcgi(a) => c::check(cfg, true, &a.w, a.scope, &a.gens, a.count),
        Command::Nontrivial(a) => c::nontrivial(cfg, &a.w),
        Command::Retarget(a) => c::retarget(cfg, &a.w),
        Command::Reduce(a) => c::reduce(cfg, &a.w, &a.a, &a.series),
        Command::BuildC(a) => c::build(cfg, &a.a, &a.series, a.u),
        Command::Expand(a) => c::expand(cfg, &a.w, &a.args, a.order),
        Command::SeriesInvert(a) => c::series_invert(cfg, &a.a, a.order, a.method),
        Command::BadBeta(a) => c::bad_beta(cfg, &a.a),
        Command::Pipeline(a) => c::pipeline(cfg, &a.w, a.count, a.m, a.alpha, a.order),
        Command::Torsion(a) => c::torsion(cfg, &a.x),
        Command::Radical(a) => c::radical(cfg, &a.x),
        Command::FreeSearch(a) => c::free_search(cfg, &a.u, a.v.as_deref(), a.height, &a.series, a.length),
        Command::Exponent(a) => c::exponent(cfg, &a.a),
    }
}

fn emit(out: &mut impl Write, record: &str, body: Value) {
    let mut obj = serde_json::Map::new();
    obj.insert("record".into(), Value::String(record.into()));
    if let Value::Object(fields) = body {
        obj.extend(fields);
    }
    let line = serde_json::to_string(&Value::Object(obj)).expect("JSON values serialize");
    let _ = writeln!(out, "{line}");
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.config.display());
            return ExitCode::from(2);
        }
    };
    let mut cfg = match parse_config(&text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{}: {e}", cli.config.display());
            return ExitCode::from(2);
        }
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    for (name, value) in &cfg.constants {
        if !value.is_unit() {
            eprintln!("warning: constant @{name} = {value} is not a unit and cannot be used as a coefficient");
        }
    }
    let name = command_name(&cli.command);
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    emit(
        &mut out,
        "header",
        json!({
            "tool": "skewid",
            "version": env!("CARGO_PKG_VERSION"),
            "command": name,
            "config_sha256": cfg.digest,
            "seed": cfg.seed,
            "algebra": cfg.algebra.to_string(),
            "note": SUBSTITUTION_NOTE,
        }),
    );
    match dispatch(&cfg, &cli.command) {
        Ok(outcome) => {
            for (record, body) in outcome.records {
                emit(&mut out, &record, body);
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            emit(&mut out, "error", json!({ "kind": e.kind(), "message": e.to_string() }));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
