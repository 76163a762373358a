use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qhcore::intcoint::Side;
use qhcore::qhspec::cli::{self, Suite, DEFAULT_BUDGET, DEFAULT_SEED};
use qhcore::qhspec::{self, SpecDocument};
use qhcore::report::Report;
use qhcore::Error;

#[derive(Parser)]
#[command(name = "qhspec", version, about = "Exact checks for quasi-Hopf algebra data")]
struct Cli {
    /// Emit reports as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the quasi-Hopf and pivotal axioms.
    Check { spec: PathBuf },
    /// Left and right integrals and the modulus.
    Integrals { spec: PathBuf },
    /// Cointegral and symmetrised cointegral on one side.
    Cointegrals {
        spec: PathBuf,
        #[arg(long, default_value = "right")]
        side: Side,
    },
    /// Modified trace from the right symmetrised cointegral, evaluated on
    /// the generators and named elements.
    Modtrace { spec: PathBuf },
    /// Build the symplectic fermion algebra Q(N, β).
    Sympferm {
        #[arg(long)]
        n: usize,
        /// Scalar with β⁴ = (−1)^N, e.g. `z8^7`.
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
        /// Print the algebra as a spec document instead of a report.
        #[arg(long)]
        emit_spec: bool,
    },
    /// Reduction and pairing checks for the modified trace.
    Verify {
        spec: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
}

fn load(path: &Path) -> Result<SpecDocument, Error> {
    qhspec::load(path)
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(report: &Report, json: bool) {
    if json {
        emit(&format!("{}\n", report.to_json()));
    } else {
        emit(&report.to_text());
    }
}

fn run(cli: Cli) -> Result<i32, Error> {
    let (report, axioms) = match cli.command {
        Command::Check { spec } => (cli::check(&load(&spec)?), true),
        Command::Integrals { spec } => (cli::integrals(&load(&spec)?)?, false),
        Command::Cointegrals { spec, side } => (cli::cointegrals(&load(&spec)?, side)?, false),
        Command::Modtrace { spec } => (cli::modtrace(&load(&spec)?)?, false),
        Command::Sympferm { n, beta, emit_spec } => {
            if emit_spec {
                emit(&qhspec::serialize(&cli::sympferm_document(n, &beta)?)?);
                return Ok(cli::EXIT_OK);
            }
            (cli::sympferm_report(n, &beta)?, false)
        }
        Command::Verify {
            spec,
            suite,
            seed,
            budget,
        } => (cli::verify(&load(&spec)?, suite, seed, budget)?, false),
    };
    print(&report, cli.json);
    Ok(cli::report_exit_code(&report, axioms))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            if json {
                emit(&format!(
                    "{}\n",
                    serde_json::json!({ "error": err.to_string(), "exit": cli::exit_code(&err) })
                ));
            }
            eprintln!("error: {err}");
            ExitCode::from(cli::exit_code(&err) as u8)
        }
    }
}
