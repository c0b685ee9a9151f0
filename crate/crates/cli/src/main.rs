use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use twistor_cli::{batch_exit_code, batch_value, input_error, run_value, Command, ErrorKind, Report};

#[derive(Parser)]
#[command(name = "twistor", version = concat!(env!("CARGO_PKG_VERSION"), " (report schema ", "1", ")"))]
#[command(about = "Twistor lifts, Klein-quadric orbits and normal forms of quaternionic polynomials")]
struct Cli {
    /// Numerical tolerance; a value inside a request takes precedence.
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Seed for randomised witness searches; a value inside a request takes precedence.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Read JSON from this file instead of stdin.
    #[arg(long = "in", global = true)]
    input: Option<PathBuf>,
    /// Write the report(s) here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    action: Action,
}

#[derive(Subcommand)]
enum Action {
    /// Execute one full request {"command", "payload", "tolerance"?, "seed"?}.
    Run,
    /// Execute a JSON array of requests; reports come back in input order.
    Batch,
    /// Orbit type of a point {"zeta": [...]}.
    ClassifyPoint,
    /// Orbit type of the pole of a hyperplane {"z": [...]}.
    ClassifyHyperplane,
    /// Plücker coordinates of the lift {"coeffs": [...], "points": [...]}.
    Lift,
    /// Planarity report for {"coeffs": [...]}.
    Planarity,
    /// Containing hyperplanes for {"coeffs": [...]}.
    HyperplaneFamily,
    /// Monic normal form and its witness for {"coeffs": [...]}.
    NormalForm,
    /// Orbit equality of {"f": ..., "h": ...}.
    OrbitEqual,
    /// Transformed polynomial for {"t": ..., "f": ...}.
    Act,
    /// Admissibility of {"t": ..., "f": ...}.
    Admissible,
}

impl Action {
    fn command(&self) -> Option<Command> {
        Some(match self {
            Action::Run | Action::Batch => return None,
            Action::ClassifyPoint => Command::ClassifyPoint,
            Action::ClassifyHyperplane => Command::ClassifyHyperplane,
            Action::Lift => Command::Lift,
            Action::Planarity => Command::Planarity,
            Action::HyperplaneFamily => Command::HyperplaneFamily,
            Action::NormalForm => Command::NormalForm,
            Action::OrbitEqual => Command::OrbitEqual,
            Action::Act => Command::Act,
            Action::Admissible => Command::Admissible,
        })
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, (ErrorKind, String)> {
    match path {
        Some(p) => fs::read_to_string(p).map_err(|e| {
            let kind = if e.kind() == io::ErrorKind::NotFound {
                ErrorKind::FileNotFound
            } else {
                ErrorKind::MalformedInput
            };
            (kind, format!("{}: {e}", p.display()))
        }),
        None => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| (ErrorKind::MalformedInput, format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

fn emit<T: serde::Serialize>(value: &T, out: &Option<PathBuf>) -> io::Result<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(io::Error::other)?;
    text.push('\n');
    match out {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (tol, seed) = (cli.tolerance, cli.seed);
    let parsed = read_input(&cli.input).and_then(|text| {
        serde_json::from_str::<Value>(&text).map_err(|e| (ErrorKind::MalformedInput, format!("invalid JSON: {e}")))
    });
    let (written, code) = match (parsed, &cli.action) {
        (Err((kind, msg)), Action::Batch) => {
            let reports = vec![input_error(kind, msg, Value::Null, tol, seed)];
            (emit(&reports, &cli.out), kind.exit_code())
        }
        (Err((kind, msg)), _) => (emit(&input_error(kind, msg, Value::Null, tol, seed), &cli.out), kind.exit_code()),
        (Ok(raw), Action::Batch) => {
            let reports: Vec<Report> = batch_value(&raw, tol, seed);
            (emit(&reports, &cli.out), batch_exit_code(&reports))
        }
        (Ok(raw), action) => {
            let raw = match action.command() {
                Some(c) => serde_json::json!({ "command": c, "payload": raw }),
                None => raw,
            };
            let report = run_value(&raw, tol, seed);
            (emit(&report, &cli.out), report.exit_code())
        }
    };
    if let Err(e) = written {
        eprintln!("twistor: cannot write output: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(code as u8)
}
