//! Command-line front end: every command prints one JSON run report.
//!
//! Exit codes: 0 when a verdict was computed, 1 when `verify-cert` rejects a
//! certificate, 2 on input errors, 3 when a verdict is unknown or a size cap
//! was hit.

mod commands;
mod input;
mod report;

use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use commands::{
    ConfigCmd, GraphCmd, KtheoryCmd, MonoidCmd, ResolveArgs, SelfsimCmd, ShiftCmd, TypCmd, VerifyArgs,
};

#[derive(Parser, Debug)]
#[command(name = "typforge", version, about = "Exact invariants of graph algebras and their type semigroups")]
struct Cli {
    /// Output format; `dot` is accepted by `graph info`, `resolve` and `selfsim quotient`.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads; output does not depend on it.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Add wall-clock time to the report (excluded from the digest).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    #[command(subcommand)]
    Graph(GraphCmd),
    #[command(subcommand)]
    Monoid(MonoidCmd),
    #[command(subcommand)]
    Selfsim(SelfsimCmd),
    /// Resolution tower and its Bratteli diagram.
    Resolve(ResolveArgs),
    /// Order and equality in the limit of the tower.
    #[command(subcommand)]
    Typ(TypCmd),
    #[command(subcommand)]
    Shift(ShiftCmd),
    #[command(subcommand)]
    Configspace(ConfigCmd),
    #[command(subcommand)]
    Ktheory(KtheoryCmd),
    /// Checks every certificate in a report offline.
    VerifyCert(VerifyArgs),
}

pub enum CliError {
    Input(String),
    Cap(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Cap(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Cap(m) => m,
        }
    }
}

/// Arguments with `--threads` and `--timing` removed.
fn echoed_args() -> Vec<String> {
    let mut out = Vec::new();
    let mut args = std::env::args().skip(1);
    while let Some(a) = args.next() {
        if a == "--threads" {
            args.next();
        } else if !(a.starts_with("--threads=") || a == "--timing") {
            out.push(a);
        }
    }
    out
}

fn run(cli: Cli) -> Result<(Vec<u8>, u8), CliError> {
    let start = Instant::now();
    let format = cli.format;
    let (mut outcome, dot_ok) = match cli.command {
        Command::Graph(c) => commands::graph(c)?,
        Command::Monoid(c) => (commands::monoid(c)?, false),
        Command::Selfsim(c) => commands::selfsim(c)?,
        Command::Resolve(a) => {
            let emit = a.emit.unwrap_or(format);
            let o = commands::resolve(a)?;
            if emit == Format::Dot {
                let dot = o.dot.clone().unwrap_or_default();
                return Ok((dot.into_bytes(), o.exit_code()));
            }
            (o, true)
        }
        Command::Typ(c) => (commands::typ(c)?, false),
        Command::Shift(c) => (commands::shift(c)?, false),
        Command::Configspace(c) => (commands::configspace(c)?, false),
        Command::Ktheory(c) => (commands::ktheory(c)?, false),
        Command::VerifyCert(a) => (commands::verify_cert(a)?, false),
    };
    let code = outcome.exit_code();
    let bytes = match format {
        Format::Dot => {
            if !dot_ok {
                return Err(CliError::Input("unsupported format: dot is only available for graph and Bratteli output".into()));
            }
            outcome.dot.take().unwrap_or_default().into_bytes()
        }
        Format::Json | Format::Text => {
            let timing = cli.timing.then(|| start.elapsed().as_millis() as u64);
            let report = outcome.into_report(echoed_args(), timing);
            let json = serde_json::to_string_pretty(&report).expect("report serializes");
            if format == Format::Text {
                format!("{}\n{}\n", report.summary, json).into_bytes()
            } else {
                format!("{json}\n").into_bytes()
            }
        }
    };
    Ok((bytes, code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if rayon::ThreadPoolBuilder::new().num_threads(n).build_global().is_err() {
            eprintln!("error: cannot start the thread pool");
            return ExitCode::from(2);
        }
    }
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok((bytes, code))) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(&bytes).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Ok(Err(e)) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
        Err(_) => {
            eprintln!("error: internal failure");
            ExitCode::from(2)
        }
    }
}
