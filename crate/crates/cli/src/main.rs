use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::Value;

mod commands;
mod input;

use commands::Outcome;

#[derive(Parser)]
#[command(
    name = "vflab",
    version,
    about = "Exact Bernstein-Sato polynomials, V-filtrations and multiplier ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Print the JSON envelope instead of text.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,

    /// Print human-readable text (the default).
    #[arg(long, global = true)]
    text: bool,

    /// Report `timing_ms` as 0 so output is byte-stable.
    #[arg(long, global = true)]
    no_timing: bool,

    /// Variable order, comma separated (default: alphabetical).
    #[arg(long, global = true)]
    vars: Option<String>,
}

#[derive(Subcommand)]
pub enum Command {
    /// b-function of a weighted homogeneous isolated singularity.
    Bs(PolyArgs),
    /// Minimal b-function by brute-force functional-equation search.
    OracleB(OracleArgs),
    /// Log canonical threshold from weights or monomial exponents.
    Lct(LctArgs),
    /// Minimal exponent, optionally with microlocal certificates.
    MinExp(MinExpArgs),
    /// Weighted degrees of a monomial basis of the Milnor algebra.
    Sigma(PolyArgs),
    /// Jumping numbers of a monomial divisor up to a bound.
    Jumping(JumpingArgs),
    /// Multiplier ideal of a monomial divisor.
    MultIdeal(MultIdealArgs),
    /// Solves and re-checks the functional equation for a given b.
    VerifyBeq(VerifyArgs),
    /// Checks the V-filtration axioms on truncated snapshots.
    Vcheck(VcheckArgs),
    /// lct, lct of a pair and minimal exponent bound from resolution data.
    ResolutionLct(DataArgs),
    /// Root candidates or root bounds from resolution data.
    RootBounds(RootBoundArgs),
    /// Images of falling factorials times f^s in B_f.
    TauDemo(TauArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Bs(_) => "bs",
            Command::OracleB(_) => "oracle-b",
            Command::Lct(_) => "lct",
            Command::MinExp(_) => "min-exp",
            Command::Sigma(_) => "sigma",
            Command::Jumping(_) => "jumping",
            Command::MultIdeal(_) => "mult-ideal",
            Command::VerifyBeq(_) => "verify-beq",
            Command::Vcheck(_) => "vcheck",
            Command::ResolutionLct(_) => "resolution-lct",
            Command::RootBounds(_) => "root-bounds",
            Command::TauDemo(_) => "tau-demo",
        }
    }
}

#[derive(Args, Clone)]
pub struct PolyArgs {
    #[arg(long)]
    pub f: String,
    /// Comma separated weights; inferred when omitted.
    #[arg(long)]
    pub weights: Option<String>,
}

#[derive(Args, Clone)]
pub struct OracleArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value = "1")]
    pub g: String,
    #[arg(long, default_value_t = 2)]
    pub max_order: u32,
    #[arg(long, default_value_t = 3)]
    pub max_sdeg: u32,
}

#[derive(Args, Clone)]
pub struct LctArgs {
    #[arg(long, conflicts_with = "a", required_unless_present = "a")]
    pub f: Option<String>,
    #[arg(long, requires = "f")]
    pub weights: Option<String>,
    /// Exponents of a monomial divisor.
    #[arg(long)]
    pub a: Option<String>,
}

#[derive(Args, Clone)]
pub struct Truncations {
    /// Largest dt order in the window.
    #[arg(long = "trunc-J")]
    pub trunc_j: Option<u32>,
    /// Largest x degree in the window.
    #[arg(long = "trunc-D")]
    pub trunc_d: Option<u32>,
    /// Cap on closure rounds.
    #[arg(long, default_value_t = 64)]
    pub max_words: u32,
}

#[derive(Args, Clone)]
pub struct MinExpArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Also certify dt^q delta in V^{>alpha} below the threshold.
    #[arg(long)]
    pub certify: bool,
    #[command(flatten)]
    pub trunc: Truncations,
}

#[derive(Args, Clone)]
pub struct JumpingArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long, default_value = "1")]
    pub bound: String,
}

#[derive(Args, Clone)]
pub struct MultIdealArgs {
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub lambda: String,
}

#[derive(Args, Clone)]
pub struct VerifyArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value = "1")]
    pub g: String,
    /// b as a polynomial in s, e.g. "(s+1)*(s+1/2)"; defaults to the
    /// weighted homogeneous formula.
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long)]
    pub weights: Option<String>,
    #[arg(long, default_value_t = 2)]
    pub max_order: u32,
    #[arg(long)]
    pub max_sdeg: Option<u32>,
}

#[derive(Args, Clone)]
pub struct VcheckArgs {
    /// Weighted homogeneous model.
    #[arg(long, conflicts_with_all = ["a", "smooth"])]
    pub f: Option<String>,
    #[arg(long, requires = "f")]
    pub weights: Option<String>,
    /// Normal crossing model x^a1 y^a2 ...
    #[arg(long, conflicts_with = "smooth")]
    pub a: Option<String>,
    /// Smooth model f = y.
    #[arg(long)]
    pub smooth: bool,
    /// Comma list or `lo:hi:step`; defaults to the grid on [0, 2].
    #[arg(long)]
    pub levels: Option<String>,
    #[command(flatten)]
    pub trunc: Truncations,
}

#[derive(Args, Clone)]
pub struct DataArgs {
    /// JSON list of rows {"a", "k", "b", "exceptional"}.
    #[arg(long)]
    pub data: std::path::PathBuf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Which {
    /// Candidate roots of b_f.
    Bf,
    /// Upper bound for b of g dt^m delta.
    GDtm,
    /// Upper bound for b of g delta.
    GDelta,
    /// Candidate roots of b of dt^m delta.
    Dtm,
}

#[derive(Args, Clone)]
pub struct RootBoundArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[arg(long, value_enum, default_value = "bf")]
    pub which: Which,
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Largest l in the candidate sets (default 3 max a).
    #[arg(long)]
    pub max_ell: Option<u32>,
    #[arg(long)]
    pub exceptional_only: bool,
}

#[derive(Args, Clone)]
pub struct TauArgs {
    #[arg(long)]
    pub f: String,
    #[arg(long, default_value_t = 3)]
    pub m: u32,
}

pub enum Failure {
    Usage(String),
    Domain(vflab_core::Error),
    Budget(u64),
}

impl From<vflab_core::Error> for Failure {
    fn from(e: vflab_core::Error) -> Self {
        Failure::Domain(e)
    }
}

#[derive(Serialize)]
struct ErrorBody {
    kind: String,
    message: String,
}

#[derive(Serialize)]
struct Envelope<'a> {
    status: &'a str,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
    timing_ms: u64,
}

fn budget() -> Result<Option<Duration>, Failure> {
    match std::env::var("VFLAB_MAX_MS") {
        Ok(v) => v
            .trim()
            .parse::<u64>()
            .map(|ms| Some(Duration::from_millis(ms)))
            .map_err(|_| Failure::Usage(format!("VFLAB_MAX_MS must be an integer, got `{v}`"))),
        Err(_) => Ok(None),
    }
}

/// Runs the command on a worker thread so a soft time budget can abandon
/// it without printing a partial answer.
fn run_with_budget(command: Command, vars: Option<String>) -> Result<Outcome, Failure> {
    let limit = budget()?;
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(commands::dispatch(&command, vars.as_deref()));
    });
    match limit {
        None => rx.recv().expect("worker thread finished"),
        Some(d) => match rx.recv_timeout(d) {
            Ok(r) => r,
            Err(_) => Err(Failure::Budget(d.as_millis() as u64)),
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let name = cli.command.name();
    let start = Instant::now();
    let outcome = run_with_budget(cli.command, cli.vars);
    let timing_ms = if cli.no_timing {
        0
    } else {
        start.elapsed().as_millis() as u64
    };
    let (code, envelope, text) = match outcome {
        Ok(o) => (
            0,
            Envelope {
                status: "ok",
                command: name,
                result: Some(o.json),
                error: None,
                timing_ms,
            },
            o.text,
        ),
        Err(f) => {
            let (code, kind, message) = match f {
                Failure::Usage(m) => (2, "usage".to_string(), m),
                Failure::Domain(e) => {
                    let code = match e {
                        vflab_core::Error::Parse { .. } | vflab_core::Error::UnknownVariable(_) => 2,
                        _ => 1,
                    };
                    (code, e.kind().to_string(), e.to_string())
                }
                Failure::Budget(ms) => (
                    1,
                    "time_budget_exceeded".to_string(),
                    format!("aborted after the {ms} ms budget set by VFLAB_MAX_MS"),
                ),
            };
            let text = format!("error: {message}\n");
            let body = ErrorBody { kind, message };
            (
                code,
                Envelope {
                    status: "error",
                    command: name,
                    result: None,
                    error: Some(body),
                    timing_ms,
                },
                text,
            )
        }
    };
    let mut out = std::io::stdout().lock();
    if cli.json {
        let _ = writeln!(out, "{}", serde_json::to_string(&envelope).expect("serializable"));
    } else if code == 0 {
        let _ = write!(out, "{text}");
        if !cli.no_timing {
            let _ = writeln!(out, "({timing_ms} ms)");
        }
    } else {
        let _ = write!(std::io::stderr(), "{text}");
    }
    ExitCode::from(code)
}
