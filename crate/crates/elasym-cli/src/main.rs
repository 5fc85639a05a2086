use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use elasym::elasticity::generate_elasticity;
use elasym::verify::Suite;
use elasym::H4Class;
use elasym_cli::report::{self, Basis};
use elasym_cli::{read_input, CliError, Format, InputDocument};
use serde::Serialize;

const FORMATS: &str = "Input files are either a JSON object {\"format\": \"voigt\" | \"kelvin\" | \"components21\", \
\"matrix\": [[...], ...]} or plain text with 36 whitespace-separated numbers (21 for components21). \
Voigt pairs are ordered 11, 22, 33, 23, 13, 12; the Kelvin matrix is the Voigt matrix scaled by \
diag(1, 1, 1, √2, √2, √2) on both sides; components21 is the upper triangle of the Voigt matrix, row by row. \
Exit codes: 0 success, 1 failed check or write error, 2 parse error, 3 validation error.";

#[derive(Parser)]
#[command(name = "elasym", version, about = "Symmetry classes, harmonic decomposition and invariants of 3D elasticity tensors", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Stiffness matrix file (JSON or plain text)
    #[arg(long, short)]
    input: PathBuf,
    /// Layout of plain-text input; must match the tag of a JSON document
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Vanishing threshold, relative to a unit-norm tensor
    #[arg(long, env = "ELASYM_TOL", default_value_t = elasym::DEFAULT_TOL)]
    tol: f64,
    /// Emit the versioned JSON report instead of text
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the symmetry class
    Classify(InputArgs),
    /// Split into lambda, mu, the deviators a, b and the harmonic part H
    Decompose(InputArgs),
    /// Evaluate an invariant basis
    Invariants {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "boehler")]
        basis: Basis,
    },
    /// Evaluate the 70 covariant generators of the harmonic part
    Covariants(InputArgs),
    /// Write a random stiffness matrix of a given class
    Gen {
        /// One of: isotropic, cubic, transversely-isotropic, trigonal, tetragonal, orthotropic, monoclinic, triclinic
        #[arg(long, value_parser = parse_class)]
        class: H4Class,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Apply a random rotation
        #[arg(long, overrides_with = "no_rotate")]
        rotate: bool,
        /// Keep the normal position (default)
        #[arg(long)]
        no_rotate: bool,
        #[arg(long, value_enum, default_value = "voigt")]
        format: Format,
        /// Output file; standard output when absent
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the property suites and print their residual tables
    Verify {
        #[arg(long, default_value = "all", value_parser = parse_suite)]
        suite: Suite,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

fn parse_class(s: &str) -> Result<H4Class, String> {
    s.parse::<H4Class>().map_err(|e| e.to_string())
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}

/// Writes to standard output; a closed pipe is not an error.
fn write_out(s: &str) -> Result<(), CliError> {
    let mut out = std::io::stdout().lock();
    match out.write_all(s.as_bytes()).and_then(|_| out.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Failed(e.to_string())),
        _ => Ok(()),
    }
}

fn emit<T: Serialize>(value: &T, json: bool, text: impl FnOnce() -> String) -> Result<(), CliError> {
    if json {
        let s = serde_json::to_string_pretty(value).map_err(|e| CliError::Failed(e.to_string()))?;
        write_out(&(s + "\n"))
    } else {
        write_out(&text())
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Classify(a) => {
            let e = read_input(&a.input, a.format)?;
            let rep = report::classify(&e, a.tol)?;
            emit(&rep, a.json, || rep.render())
        }
        Command::Decompose(a) => {
            let e = read_input(&a.input, a.format)?;
            if !(a.tol > 0.0 && a.tol.is_finite()) {
                return Err(elasym::Error::Tolerance(a.tol).into());
            }
            let rep = report::decompose(&e, a.tol);
            emit(&rep, a.json, || rep.render())
        }
        Command::Invariants { input: a, basis } => {
            let e = read_input(&a.input, a.format)?;
            if !(a.tol > 0.0 && a.tol.is_finite()) {
                return Err(elasym::Error::Tolerance(a.tol).into());
            }
            let rep = report::invariants(&e, basis, a.tol);
            emit(&rep, a.json, || rep.render())
        }
        Command::Covariants(a) => {
            let e = read_input(&a.input, a.format)?;
            let rep = report::covariants(&e);
            emit(&rep, a.json, || rep.render())
        }
        Command::Gen { class, seed, rotate, no_rotate: _, format, out } => {
            let e = generate_elasticity(class, seed, rotate).map_err(|e| CliError::Failed(e.to_string()))?;
            let doc = InputDocument::from_tensor(&e, format, Some(format!("{class} seed {seed}")));
            let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Failed(e.to_string()))? + "\n";
            match out {
                Some(p) => std::fs::write(&p, text).map_err(|e| CliError::Failed(format!("cannot write {}: {e}", p.display()))),
                None => write_out(&text),
            }
        }
        Command::Verify { suite, seed, json } => {
            let (rep, table) = report::verify(suite, seed)?;
            emit(&rep, json, || table)?;
            if rep.passed {
                Ok(())
            } else {
                Err(CliError::Failed("some checks failed".into()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("elasym: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
