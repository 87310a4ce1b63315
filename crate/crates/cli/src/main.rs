use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use jordanlab::commutation::DEFAULT_TOL;
use jordanlab_cli::commands::{self, Format, Options};
use jordanlab_cli::{exit, CliError};

#[derive(Parser)]
#[command(name = "jordanlab", version, about = "Euclidean Jordan algebra workbench")]
struct Cli {
    /// Relative tolerance for all decisions
    #[arg(long, global = true, env = "JORDANLAB_TOL")]
    tol: Option<f64>,
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Human,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, basis labels and validation residuals of a family
    Describe { spec: String },
    /// Jordan product a*b of two element files
    Mul { a: PathBuf, b: PathBuf },
    /// Spectral values and idempotents of an element
    Spectrum { file: PathBuf },
    /// Whether T_a and T_b commute
    Commute { a: PathBuf, b: PathBuf },
    /// Equivalent commutation conditions for a pair (exit 4 if they disagree)
    Report { a: PathBuf, b: PathBuf },
    /// Sequential product a & b of two effects
    Seq { a: PathBuf, b: PathBuf },
    /// Run a named counterexample: pauli-q-identity, pauli-qq-commute
    Counterexample { name: String },
    /// Seeded randomized property suite for a family
    Suite {
        spec: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn run(cli: Cli) -> Result<u8, CliError> {
    let tol = cli.tol.unwrap_or(DEFAULT_TOL);
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::usage(format!("tolerance must be positive, got {tol}")));
    }
    let opts = Options {
        tol,
        format: match cli.format {
            FormatArg::Human => Format::Human,
            FormatArg::Records => Format::Records,
        },
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Describe { spec } => commands::describe(&spec, opts, &mut out),
        Command::Mul { a, b } => commands::mul(&a, &b, opts, &mut out),
        Command::Spectrum { file } => commands::spectrum(&file, opts, &mut out),
        Command::Commute { a, b } => commands::commute(&a, &b, opts, &mut out),
        Command::Report { a, b } => commands::report(&a, &b, opts, &mut out),
        Command::Seq { a, b } => commands::seq(&a, &b, opts, &mut out),
        Command::Counterexample { name } => commands::counterexample(&name, opts, &mut out),
        Command::Suite { spec, trials, seed } => {
            commands::suite(&spec, trials, seed, opts, &mut out, &mut io::stderr())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { exit::USAGE } else { exit::OK });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = io::stdout().flush();
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
