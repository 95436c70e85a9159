//! The `qlab` command line: argument parsing, dispatch and report output.
//!
//! Every subcommand produces a list of [`CheckReport`]s. Human-readable text
//! goes to the output stream; `--json PATH` also writes the full report.
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 for
//! usage and input errors, 3 for internal errors.

mod fock;
mod logic;
mod qm;
mod qset;
mod structure;
mod suite;

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{CheckReport, ReportDocument, Verdict};
use crate::structures::DEFAULT_MAX_DOMAIN;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qlab",
    version,
    about = "Checks quasi-sets, finite structures, identity principles, quantum kernels and Fock-space counting"
)]
struct Cli {
    /// Also write the machine-readable report to this file.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Domain size above which exhaustive searches are flagged.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DOMAIN)]
    max_domain: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Automorphisms, orbits and rigidity of finite structures.
    #[command(subcommand)]
    Structure(structure::StructureCmd),
    /// Formulas, identity axioms and indiscernibility principles.
    #[command(subcommand)]
    Logic(logic::LogicCmd),
    /// Quasi-set files and quasi-set laws.
    #[command(subcommand)]
    Qset(qset::QsetCmd),
    /// Quantum structures, Born probabilities and evolution.
    #[command(subcommand)]
    Qm(qm::QmCmd),
    /// State counting and ladder-operator algebra.
    #[command(subcommand)]
    Fock(fock::FockCmd),
    /// The full seeded check suite, plus checks on any given input files.
    Report {
        /// `.qlog` and `.json` files to include.
        files: Vec<PathBuf>,
    },
}

/// Errors that stop a command before it produces a verdict.
#[derive(Debug)]
pub(crate) enum CliError {
    Usage(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

pub(crate) type CliResult<T = ()> = Result<T, CliError>;

/// Turns a library error into a usage error mentioning its source.
pub(crate) fn usage<E: std::fmt::Display>(context: &Path) -> impl Fn(E) -> CliError + '_ {
    move |e| CliError::Usage(format!("{}: {e}", context.display()))
}

pub(crate) fn read_input(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(usage(path))
}

/// Shared state for one command: options, the randomness source and the
/// collected output.
pub(crate) struct Ctx {
    pub seed: u64,
    pub max_domain: usize,
    pub rng: ChaCha8Rng,
    lines: Vec<String>,
    checks: Vec<CheckReport>,
}

impl Ctx {
    fn new(seed: u64, max_domain: usize) -> Self {
        Ctx {
            seed,
            max_domain,
            rng: ChaCha8Rng::seed_from_u64(seed),
            lines: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn say(&mut self, line: impl Into<String>) {
        self.lines.push(line.into());
    }

    pub fn check(&mut self, report: CheckReport) {
        self.lines
            .push(format!("{} {}: {}", report.verdict.label(), report.check, report.summary));
        self.checks.push(report);
    }

    /// Shorthand for a pass/fail check with details.
    pub fn verdict(
        &mut self,
        check: impl Into<String>,
        checker: &'static str,
        input: Option<&Path>,
        ok: bool,
        summary: impl Into<String>,
        details: impl Serialize,
    ) {
        let input = input.map(|p| p.display().to_string());
        self.check(
            CheckReport::new(check, checker, Verdict::from_bool(ok), summary)
                .with_input(input.as_deref())
                .with_details(details),
        );
    }

    /// A computed fact that is not a pass/fail claim; it always passes.
    pub fn info(
        &mut self,
        check: impl Into<String>,
        checker: &'static str,
        input: Option<&Path>,
        summary: impl Into<String>,
        details: impl Serialize,
    ) {
        self.verdict(check, checker, input, true, summary, details);
    }
}

fn dispatch(command: Command, ctx: &mut Ctx) -> CliResult<String> {
    match command {
        Command::Structure(c) => structure::run(c, ctx),
        Command::Logic(c) => logic::run(c, ctx),
        Command::Qset(c) => qset::run(c, ctx),
        Command::Qm(c) => qm::run(c, ctx),
        Command::Fock(c) => fock::run(c, ctx),
        Command::Report { files } => suite::run(&files, ctx).map(|()| "report".to_string()),
    }
}

/// Runs the command line `args` (program name first), writing human output
/// to `out` and errors to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_PASS
            };
        }
    };
    let json = cli.json.clone();
    let mut ctx = Ctx::new(cli.seed, cli.max_domain);

    let outcome = panic::catch_unwind(AssertUnwindSafe(|| dispatch(cli.command, &mut ctx)));
    let command = match outcome {
        Ok(Ok(command)) => command,
        Ok(Err(e)) => {
            let _ = writeln!(err, "{e}");
            return e.code();
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".to_string());
            let _ = writeln!(err, "internal error: {msg}");
            return EXIT_INTERNAL;
        }
    };

    for line in &ctx.lines {
        let _ = writeln!(out, "{line}");
    }
    let doc = ReportDocument::new(command, ctx.seed, std::mem::take(&mut ctx.checks));
    if let Some(path) = json {
        if let Err(e) = std::fs::write(&path, doc.to_json()) {
            let _ = writeln!(err, "internal error: cannot write {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    if doc.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Runs with the process arguments on stdout and stderr.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
