//! `plumbing`: command-line access to the plumbing-core invariants.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use plumbing_core::ErrorClass;
use serde::Serialize;
use serde_json::{json, Value};

use commands::{CliError, Route, SearchArgs};
use report::Report;

const EXIT_DISAGREE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;
const EXIT_PARSE: u8 = 4;
const EXIT_MATH: u8 = 5;
const EXIT_CAP: u8 = 6;

#[derive(Parser)]
#[command(name = "plumbing", version, about = "Invariants of negative definite plumbing trees")]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Validate a graph and report definiteness, minimality and bad vertices.
    Check { file: PathBuf },
    /// Compute theta by the tree recursion and cross-check with the matrix oracle.
    Theta {
        file: PathBuf,
        /// Root vertex id (repeatable); defaults to the first vertex.
        #[arg(long = "root")]
        roots: Vec<String>,
        /// Print the per-vertex contribution table.
        #[arg(long)]
        table: bool,
        /// Recompute at every root and confirm the value is root independent.
        #[arg(long)]
        all_roots: bool,
    },
    /// Theta of a Seifert fibered space from its unnormalized invariants.
    ThetaSeifert {
        #[arg(long, allow_hyphen_values = true)]
        e0: i64,
        /// Leg p/q, meaning the fraction q/p (repeatable).
        #[arg(long = "leg", required = true)]
        legs: Vec<String>,
        #[arg(long, value_enum, default_value = "all")]
        route: Route,
    },
    /// Heegaard Floer d-invariant of the canonical spin^c structure.
    D { file: PathBuf },
    /// Enumerate rotation vectors and check that the canonical one minimizes theta.
    Rotations {
        file: PathBuf,
        #[arg(long, default_value_t = plumbing_core::rotation::DEFAULT_CAP)]
        cap: u64,
        /// Drop the parity constraint on rotation entries.
        #[arg(long)]
        no_parity: bool,
    },
    /// Search symmetric three-legged stars with theta = -2.
    #[command(name = "search-theta2")]
    SearchTheta2 {
        #[arg(long, default_value_t = 10)]
        max_vertices: i64,
        /// List the three infinite families instead of searching.
        #[arg(long)]
        families: bool,
        #[arg(long, default_value_t = 3)]
        max_ell: i64,
        /// Also search k < 3.
        #[arg(long)]
        include_small_k: bool,
        /// Also run the experimental search over general trees.
        #[arg(long)]
        general: bool,
        #[arg(long, default_value_t = 6)]
        max_weight: i64,
    },
    /// Check a lattice embedding certificate: N rows of N integers.
    VerifySsw { graph: PathBuf, certificate: PathBuf },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Check { .. } => "check",
        Command::Theta { .. } => "theta",
        Command::ThetaSeifert { .. } => "theta-seifert",
        Command::D { .. } => "d",
        Command::Rotations { .. } => "rotations",
        Command::SearchTheta2 { .. } => "search-theta2",
        Command::VerifySsw { .. } => "verify-ssw",
    }
}

fn run(command: &Command) -> commands::CmdResult {
    match command {
        Command::Check { file } => commands::check(file),
        Command::Theta {
            file,
            roots,
            table,
            all_roots,
        } => commands::theta(file, roots, *table, *all_roots),
        Command::ThetaSeifert { e0, legs, route } => commands::theta_seifert_cmd(*e0, legs, *route),
        Command::D { file } => commands::d(file),
        Command::Rotations { file, cap, no_parity } => commands::rotations(file, *cap, *no_parity),
        Command::SearchTheta2 {
            max_vertices,
            families,
            max_ell,
            include_small_k,
            general,
            max_weight,
        } => commands::search(&SearchArgs {
            max_vertices: *max_vertices,
            families: *families,
            max_ell: *max_ell,
            include_small_k: *include_small_k,
            general: *general,
            max_weight: *max_weight,
        }),
        Command::VerifySsw { graph, certificate } => commands::verify_ssw(graph, certificate),
    }
}

fn exit_code(e: &CliError) -> u8 {
    match e {
        CliError::Io { .. } => EXIT_IO,
        CliError::Usage(_) => EXIT_USAGE,
        CliError::Parse(_) => EXIT_PARSE,
        CliError::Core(err) => match err.class() {
            ErrorClass::Parse => EXIT_PARSE,
            ErrorClass::Math => EXIT_MATH,
            ErrorClass::Cap => EXIT_CAP,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((report, ok)) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_DISAGREE)
            }
        }
        Err(e) => {
            let code = exit_code(&e);
            if cli.json {
                let echo = match serde_json::to_value(&cli.command) {
                    Ok(Value::Object(mut m)) => m.remove(command_name(&cli.command)).unwrap_or(Value::Null),
                    _ => Value::Null,
                };
                let mut report = Report::new(command_name(&cli.command), echo);
                report.results = json!({"error": e.to_string(), "exit_code": code});
                report.diagnostics.push(format!("error: {e}"));
                println!("{}", report.to_json());
            }
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
