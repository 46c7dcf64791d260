//! Command-line front end.
//!
//! Every command prints one JSON [`RunReport`] on stdout. Exit status: 0 when
//! every check passed, 1 when a check failed, 2 on usage or input errors
//! (with a JSON diagnostic on stderr).

mod commands;
pub mod input;
mod selftest;

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::assoc::Normalization;
use crate::config::{default_threshold, DEFAULT_DIGITS, DEFAULT_WEIGHT};
use crate::error::Error;
use crate::report::{InputDigest, ResidualReport, RunReport};

pub use input::MuArg;
pub use selftest::selftest_checks;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "grtkit", version, about = "Associators, GRT1, DMR0 and Kashiwara-Vergne checks on truncated series")]
pub struct Cli {
    /// Working precision in decimal digits for complex computations.
    #[arg(long, global = true)]
    pub digits: Option<u32>,
    /// Truncation weight N.
    #[arg(long, global = true)]
    pub weight: Option<usize>,
    /// Residual threshold for inexact rings (default 10^-(digits-15)).
    #[arg(long, global = true)]
    pub threshold: Option<f64>,
    /// MZV cache file (JSON) used by MZV-based commands.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pentagon equation in U(a4).
    CheckPentagon { input: PathBuf },
    /// Both hexagon equations in U(a3).
    CheckHexagon {
        input: PathBuf,
        /// `auto`, `2pii`, `-2pii`, a rational, or `re,im`.
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        mu: String,
    },
    /// Group-likeness, pentagon and hexagons.
    CheckAssoc {
        input: PathBuf,
        #[arg(long, default_value = "auto", allow_hyphen_values = true)]
        mu: String,
    },
    /// Regularised double shuffle relations.
    CheckDmr {
        input: PathBuf,
        /// Also require vanishing linear and quadratic terms (DMR0).
        #[arg(long)]
        as_dmr0: bool,
        /// Remove linear terms before regularising.
        #[arg(long)]
        kill_linear: bool,
    },
    /// GRT1 membership, by both characterisations.
    CheckGrt1 { input: PathBuf },
    #[command(subcommand)]
    Grt(GrtCommand),
    #[command(subcommand)]
    Pentagon(PentagonCommand),
    /// Coefficient identities of the pentagon with a symbolic group-like series.
    Relations {
        #[arg(long)]
        degree: usize,
        /// Evaluate every relation on the Drinfeld associator.
        #[arg(long)]
        verify_kz: bool,
    },
    #[command(subcommand)]
    Mzv(MzvCommand),
    /// Build the Drinfeld associator from MZVs.
    BuildKz {
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Zagier's formula for zeta(2,..,2,3,2,..,2).
    Zagier {
        #[arg(long)]
        a: usize,
        #[arg(long)]
        b: usize,
    },
    #[command(subcommand)]
    Kv(KvCommand),
    /// Exact-ring property suite.
    Selftest,
}

#[derive(Subcommand, Debug)]
pub enum GrtCommand {
    /// `phi2 ∘ phi1 = phi1(phi2 X0 phi2^-1, X1) phi2`.
    Mul {
        phi2: PathBuf,
        phi1: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum PentagonCommand {
    /// Degreewise exact solution of the pentagon over Q.
    Solve(SolveArgs),
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[arg(long)]
    pub degree: usize,
    #[arg(long, value_enum, default_value = "grt1")]
    pub normalization: NormalizationArg,
    /// Value of every free parameter above degree 2.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub param: String,
    /// Coefficient of [X0,X1] (free normalisation only); mu^2 = 24 times it.
    #[arg(long, default_value = "1/24", allow_hyphen_values = true)]
    pub quadratic: String,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum NormalizationArg {
    Grt1,
    Free,
}

impl From<NormalizationArg> for Normalization {
    fn from(n: NormalizationArg) -> Self {
        match n {
            NormalizationArg::Grt1 => Normalization::Grt1,
            NormalizationArg::Free => Normalization::Free,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum MzvCommand {
    /// Evaluate one MZV.
    Eval {
        /// Comma-separated index, e.g. `1,2` for zeta(1,2).
        #[arg(long)]
        index: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum KvCommand {
    /// The pair of an associator.
    FromAssoc {
        input: PathBuf,
        #[arg(long, default_value = "2pii", allow_hyphen_values = true)]
        mu: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// `P(e^X0 e^X1) = e^{X0+X1}`.
    CheckMain { input: PathBuf },
    /// Implementable KRV0 conditions.
    CheckKrv { input: PathBuf },
}

/// Settings shared by all commands.
pub struct Context {
    pub digits: u32,
    pub weight: Option<usize>,
    pub threshold: Option<f64>,
    pub cache: Option<PathBuf>,
}

impl Context {
    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn weight(&self) -> usize {
        self.weight.unwrap_or(DEFAULT_WEIGHT)
    }

    /// Threshold for a run at `precision` digits (`None` for exact rings).
    pub fn threshold_for(&self, precision: Option<u32>) -> f64 {
        match (self.threshold, precision) {
            (Some(t), _) => t,
            (None, Some(p)) => default_threshold(p),
            (None, None) => 0.0,
        }
    }
}

/// Report under construction.
pub struct ReportBuilder {
    command: String,
    start: Instant,
    pub inputs: Vec<InputDigest>,
    pub truncation: Option<usize>,
    pub ring: Option<String>,
    pub precision: Option<u32>,
    pub checks: Vec<ResidualReport>,
    pub details: serde_json::Map<String, serde_json::Value>,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        ReportBuilder {
            command: command.to_string(),
            start: Instant::now(),
            inputs: Vec::new(),
            truncation: None,
            ring: None,
            precision: None,
            checks: Vec::new(),
            details: serde_json::Map::new(),
        }
    }

    pub fn detail(&mut self, key: &str, value: serde_json::Value) {
        self.details.insert(key.to_string(), value);
    }

    pub fn finish(self, ctx: &Context) -> RunReport {
        let threshold = ctx.threshold_for(self.precision);
        let verdict = RunReport::verdict_of(&self.checks, threshold);
        RunReport {
            command: self.command,
            inputs: self.inputs,
            truncation: self.truncation,
            ring: self.ring,
            precision: self.precision,
            threshold,
            checks: self.checks,
            details: if self.details.is_empty() {
                serde_json::Value::Null
            } else {
                serde_json::Value::Object(self.details)
            },
            verdict,
            wall_time_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// Runs a parsed command line, returning the report.
pub fn run(cli: Cli) -> Result<RunReport, Error> {
    let ctx = Context {
        digits: cli.digits.unwrap_or(DEFAULT_DIGITS),
        weight: cli.weight,
        threshold: cli.threshold,
        cache: cli.cache,
    };
    if ctx.digits < 1 {
        return Err(Error::Precondition("--digits must be positive".into()));
    }
    commands::execute(&ctx, cli.command)
}

/// Parses `argv` (program name first) and runs the command. Usage errors
/// become [`Error::Parse`].
pub fn run_args<I, T>(argv: I) -> Result<RunReport, Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(|e| Error::Parse(e.to_string()))?;
    run(cli)
}

fn print_error(e: &Error) {
    let diag = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
    eprintln!("{}", serde_json::to_string_pretty(&diag).expect("serialisable"));
}

/// Entry point of the binary: runs and maps the outcome to an exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            if !e.use_stderr() {
                // --help and --version
                let _ = e.print();
                return EXIT_PASS;
            }
            let diag = json!({ "error": { "kind": "usage", "message": e.to_string() } });
            eprintln!("{}", serde_json::to_string_pretty(&diag).expect("serialisable"));
            return EXIT_ERROR;
        }
    };
    match run(cli) {
        Ok(report) => {
            println!("{}", serde_json::to_string_pretty(&report).expect("serialisable"));
            if report.verdict {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }
        Err(e) => {
            print_error(&e);
            EXIT_ERROR
        }
    }
}
