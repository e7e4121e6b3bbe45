//! Command-line front end for `reidemeister-core`.
//!
//! Every verb writes one JSON document to `--out` (standard output by
//! default). With `--out`, a one-line summary goes to standard output.
//! Errors are reported as `{"error": {...}}` on standard error.

pub mod codec;
mod commands;
pub mod error;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use reidemeister_core::matrix::GroupKind;
use reidemeister_core::tower::DEFAULT_MAX_DEPTH;
use reidemeister_core::twist::Base;

pub use error::CliError;

#[derive(Parser, Debug)]
#[command(name = "reidemeister", version, about = "Exact twisted-conjugacy witnesses for O_n, SO_n and Sp_2n")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// X = L Q by orthogonal or symplectic block Gram-Schmidt.
    Decompose(DecomposeArgs),
    /// Build and check a witness X_tot with E φ(X_tot) = X_tot A.
    Witness(WitnessArgs),
    /// Re-check a witness report from its recorded data.
    Verify(VerifyArgs),
    /// Count twisted classes over random group elements.
    Census(CensusArgs),
    /// Print a random group element as matrix JSON.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Orthogonal,
    SpecialOrthogonal,
    Symplectic,
}

impl From<GroupArg> for GroupKind {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Orthogonal => GroupKind::Orthogonal,
            GroupArg::SpecialOrthogonal => GroupKind::SpecialOrthogonal,
            GroupArg::Symplectic => GroupKind::Symplectic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BaseArg {
    #[value(name = "Q")]
    Q,
    #[value(name = "Q(t)")]
    Qt,
}

impl From<BaseArg> for Base {
    fn from(b: BaseArg) -> Self {
        match b {
            BaseArg::Q => Base::Rationals,
            BaseArg::Qt => Base::RationalFunctions,
        }
    }
}

#[derive(Args, Debug)]
struct Common {
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum number of quadratic layers in any tower.
    #[arg(long, default_value_t = DEFAULT_MAX_DEPTH)]
    max_tower_depth: usize,
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    /// Matrix JSON (`-` for standard input).
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    base: Option<BaseArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct WitnessArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    base: Option<BaseArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    spot_checks: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    report: PathBuf,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 5)]
    spot_checks: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 10)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "Q")]
    base: BaseArg,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    group: GroupArg,
    #[arg(long)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "Q")]
    base: BaseArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Result of a verb: the document to emit and, when the verb failed after
/// producing it, the error to report.
pub struct Outcome {
    pub document: Value,
    pub summary: String,
    pub failure: Option<CliError>,
}

fn dispatch(command: Command) -> Result<(Outcome, Option<PathBuf>), CliError> {
    Ok(match command {
        Command::Decompose(a) => (commands::decompose(&a)?, a.common.out),
        Command::Witness(a) => (commands::witness(&a)?, a.common.out),
        Command::Verify(a) => (commands::verify(&a)?, a.common.out),
        Command::Census(a) => (commands::census(&a)?, a.common.out),
        Command::Gen(a) => (commands::gen(&a)?, a.out),
    })
}

fn emit(doc: &Value, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(doc).expect("JSON values always serialize");
    text.push('\n');
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::usage(format!("cannot write output: {e}"))),
    }
}

fn report_error(err: &CliError, stderr: &mut dyn Write) -> i32 {
    let _ = writeln!(stderr, "{}", err.to_json());
    err.exit_code()
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            return report_error(&CliError::usage(e.to_string().trim_end()), stderr);
        }
    };
    match dispatch(cli.command) {
        Ok((outcome, out)) => {
            if let Err(e) = emit(&outcome.document, out.as_ref(), stdout) {
                return report_error(&e, stderr);
            }
            if out.is_some() {
                let _ = writeln!(stdout, "{}", outcome.summary);
            }
            match outcome.failure {
                Some(f) => report_error(&f, stderr),
                None => 0,
            }
        }
        Err(e) => report_error(&e, stderr),
    }
}

pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}
