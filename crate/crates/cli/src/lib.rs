//! Command-line front end: `analyze`, `chartab` and `cyclotomic`.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use greenring::exactmath::arith::is_prime;
use greenring::Error;

mod commands;
pub mod report;

pub use commands::{analyze, AnalyzeOptions, Source};
pub use report::{AnalysisReport, PointRow, PrimeRow};

/// Output of one invocation: exit status and the two streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Latex,
}

#[derive(Parser, Debug)]
#[command(
    name = "greenring",
    version,
    about = "Singularities of spectra of representation rings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Singular points and tangent dimensions above the primes dividing |G|.
    Analyze(AnalyzeArgs),
    /// Character table of a group, as JSON or a text grid.
    Chartab(ChartabArgs),
    /// Factorization of the n-th cyclotomic polynomial modulo p.
    Cyclotomic(CyclotomicArgs),
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    /// Group descriptor: A4, S5, C6, D8, C2xC4, perm:[(0,1,2),(0,1)(2,3)]
    #[arg(long)]
    group: Option<String>,
    /// Character table JSON file
    #[arg(long)]
    table: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Report every closed point, not only the singular ones
    #[arg(long)]
    all_points: bool,
    /// Analyze only this prime (which need not divide |G|)
    #[arg(long)]
    prime: Option<u64>,
    /// Print the multiplication-table relations
    #[arg(long)]
    show_relations: bool,
    #[arg(long, env = "GREENRING_SEED")]
    seed: Option<u64>,
}

#[derive(Args, Debug)]
struct ChartabArgs {
    #[arg(long)]
    group: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args, Debug)]
struct CyclotomicArgs {
    n: u64,
    p: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, env = "GREENRING_SEED")]
    seed: Option<u64>,
}

/// Exit status for an error: 3 for violated internal invariants, 2 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 {
                (text, String::new())
            } else {
                (String::new(), text)
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    match dispatch(cli.command) {
        Ok(stdout) => Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(command: Command) -> greenring::Result<String> {
    match command {
        Command::Analyze(a) => {
            let source = match (a.source.group, a.source.table) {
                (Some(g), None) => Source::Group(g),
                (None, Some(t)) => Source::Table(t),
                _ => unreachable!("clap enforces exactly one source"),
            };
            if let Some(p) = a.prime.filter(|&p| !is_prime(p)) {
                return Err(Error::NotPrime(p));
            }
            let opts = AnalyzeOptions {
                all_points: a.all_points,
                prime: a.prime,
                show_relations: a.show_relations,
                seed: a.seed.unwrap_or(greenring::DEFAULT_SEED),
            };
            let report = analyze(&source, &opts)?;
            report.render(a.format)
        }
        Command::Chartab(c) => commands::chartab(&c.group, c.format),
        Command::Cyclotomic(c) => commands::cyclotomic(
            c.n,
            c.p,
            c.format,
            c.seed.unwrap_or(greenring::DEFAULT_SEED),
        ),
    }
}
