//! The `typea` command line: fusion tables, orbit counts, cover checks and
//! verification sweeps in plain text, CSV or JSON.
//!
//! Exit codes: 0 when everything requested passes, 1 when a verification
//! fails, 2 on usage or parse errors.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod render;
mod sweep;

pub use sweep::{AlgebraRecord, SweepReport, SweepSummary, TripleRecord};

#[derive(Parser, Debug)]
#[command(
    name = "typea",
    version,
    about = "Type A fusion rules, orbit counts and group covers"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Modulus N of Z_N^k; N = 2 is A1 and N = 3 is A2.
    #[arg(long, global = true)]
    pub rank: Option<u32>,
    /// Level k, or an inclusive range `A..B` for `verify`.
    #[arg(long, global = true)]
    pub level: Option<LevelSpec>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the fusion table of A1 (--rank 2) or A2 (--rank 3) at --level.
    Table {
        /// JSON object renaming labels, `{"new": "P(...)", ...}`; sets the
        /// label order too.
        #[arg(long)]
        labels: Option<PathBuf>,
    },
    /// Count S_k-orbits of zero-sum triples drawn from three orbits.
    Count {
        /// Orbit labels as comma-separated compositions, e.g. `1,1,1`.
        a: String,
        b: String,
        c: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Check every triple at the given levels against all counting methods
    /// and the fusion rule, plus axioms and covers of each algebra.
    Verify,
    /// Check a partition for associativity and, given an algebra, whether
    /// it covers the algebra.
    Cover {
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        algebra: Option<PathBuf>,
        /// JSON object from algebra label to block index; defaults to
        /// label position.
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// List the level-k modules as orbit labels.
    Orbits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    All,
    Brute,
    Kmatrix,
    Closed,
    Zaslavsky,
}

/// `K` or `A..B`, inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevelSpec {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for LevelSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("`{t}` is not a level"))
        };
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => {
                let k = num(s)?;
                (k, k)
            }
        };
        if lo == 0 || lo > hi {
            return Err(format!("level range `{s}` must satisfy 1 <= A <= B"));
        }
        Ok(LevelSpec { lo, hi })
    }
}

impl fmt::Display for LevelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Result of a command that ran to completion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit code 2.
    Usage(String),
    Io(io::Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.into())
    }
}

impl From<typea_core::Error> for CliError {
    fn from(e: typea_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub(crate) fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl Cli {
    fn rank(&self) -> Result<u32, CliError> {
        self.rank.ok_or_else(|| usage("--rank is required"))
    }

    fn level_range(&self) -> Result<LevelSpec, CliError> {
        self.level.ok_or_else(|| usage("--level is required"))
    }

    fn level(&self) -> Result<u32, CliError> {
        let spec = self.level_range()?;
        if spec.lo != spec.hi {
            return Err(usage(format!(
                "--level {spec}: a range is only accepted by `verify`"
            )));
        }
        Ok(spec.lo)
    }
}

/// Runs a parsed command line, writing the report to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Table { labels } => commands::table(
            cli.rank()?,
            cli.level()?,
            labels.as_deref(),
            cli.format,
            out,
        ),
        Command::Count { a, b, c, method } => {
            commands::count(cli.rank, cli.level, [a, b, c], *method, cli.format, out)
        }
        Command::Verify => sweep::verify(cli.rank()?, cli.level_range()?, cli.format, out),
        Command::Cover {
            partition,
            algebra,
            map,
        } => commands::cover(
            partition,
            algebra.as_deref(),
            map.as_deref(),
            cli.format,
            out,
        ),
        Command::Orbits => commands::orbits(cli.rank()?, cli.level()?, cli.format, out),
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(err, "{}", e.render());
            if !e.use_stderr() {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(outcome) => outcome.exit_code(),
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}
