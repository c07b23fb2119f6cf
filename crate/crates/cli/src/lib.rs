//! Command-line front end for the `labelcut` workbench.
//!
//! [`run_command`] parses an argument vector, runs one subcommand, and
//! returns the process exit status:
//!
//! | status | meaning |
//! |--------|---------|
//! | 0 | success |
//! | 1 | failed checks under `verify`, or an input/IO error |
//! | 2 | usage error |
//! | 3 | a solver guard was exceeded |

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

pub mod gap;
mod generate;
mod solve;
pub mod verify;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] labelcut::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("output: {0}")]
    Output(#[from] std::io::Error),
    #[error("{0} verification check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(labelcut::Error::Resource { .. }) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Debug, Parser)]
#[command(name = "labelcut", version, about = "Minimum label s-t cut workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a path or gap instance to a file (or stdout).
    Generate(GenerateArgs),
    /// Compute an exact minimum label cut.
    SolveExact(SolveExactArgs),
    /// Solve a path relaxation by cutting planes.
    SolveLp(SolveLpArgs),
    /// Tabulate optimum and relaxation values over a parameter grid.
    Gap(gap::GapArgs),
    /// Run the numeric checks of the gap analysis.
    Verify(verify::VerifyArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(subcommand)]
    pub family: Family,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// A path of `m` edges that all carry label 0.
    Path {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A random gap instance from explicit `--k --d --h` or from
    /// `--epsilon --k`.
    Gadget {
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "epsilon")]
        d: Option<usize>,
        #[arg(long, conflicts_with = "epsilon")]
        h: Option<usize>,
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Refuse instances with more edges than this.
        #[arg(long, default_value_t = labelcut::generators::DEFAULT_EDGE_CAP)]
        edge_cap: u128,
        /// Also writes `<out>.meta.json` with the permutation table.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExactMethod {
    Exhaustive,
    Bnb,
}

#[derive(Debug, Args)]
pub struct SolveExactArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = ExactMethod::Bnb)]
    pub method: ExactMethod,
    /// Stop the exhaustive search after this size and report `OPT > cap`.
    #[arg(long)]
    pub cap: Option<usize>,
    /// Node or per-level subset guard.
    #[arg(long, default_value_t = labelcut::exact::DEFAULT_EXACT_GUARD)]
    pub guard: u64,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Lp1,
    Lp2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Generic,
    Gadget,
}

#[derive(Debug, Args)]
pub struct SolveLpArgs {
    pub instance: PathBuf,
    #[arg(long, value_enum, default_value_t = Variant::Lp2)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value_t = OracleKind::Generic)]
    pub oracle: OracleKind,
    /// Gadget metadata; defaults to `<instance>.meta.json`.
    #[arg(long)]
    pub meta: Option<PathBuf>,
    /// Write the final restricted program in LP text format.
    #[arg(long)]
    pub emit_lp: Option<PathBuf>,
    #[arg(long, default_value_t = 100_000)]
    pub max_cuts: usize,
    #[arg(long)]
    pub json: bool,
}

/// Parses `args` (including the program name) and runs the command,
/// writing results to `out` and diagnostics to `err`.
pub fn run_command<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "labelcut: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut impl Write) -> CliResult<()> {
    match command {
        Command::Generate(args) => generate::run(args, out),
        Command::SolveExact(args) => solve::run_exact(args, out),
        Command::SolveLp(args) => solve::run_lp(args, out),
        Command::Gap(args) => gap::run(args, out),
        Command::Verify(args) => verify::run(args, out),
    }
}

pub(crate) fn read_instance(path: &std::path::Path) -> CliResult<labelcut::Instance> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    Ok(labelcut::format::parse(&text)?)
}

pub(crate) fn write_file(path: &std::path::Path, contents: &str) -> CliResult<()> {
    std::fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}
