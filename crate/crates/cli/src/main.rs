//! `pcl`: command-line front-end for plane-curve and pencil computations.

mod commands;
mod corpus;
mod report;

use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "pcl", version, about = "Exact plane-curve, pencil and orbifold-group computations")]
pub struct Cli {
    /// Seed for the random coordinate frames used in elimination.
    #[arg(long, env = "PCL_SEED", default_value_t = 0, global = true)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct PairArgs {
    /// Branch curve C1.
    #[arg(long)]
    c1: String,
    /// Curve C2.
    #[arg(long)]
    c2: String,
    /// Parametrization of C2 as "a, b, c" forms in t, s.
    #[arg(long)]
    phi: Option<String>,
    /// Height bound for the rational point search on a conic C2.
    #[arg(long, default_value_t = pcl_core::splitting::DEFAULT_HEIGHT_BOUND)]
    height: u64,
}

#[derive(Args, Debug, Clone)]
pub struct PencilArgs {
    #[arg(long)]
    p: String,
    #[arg(long)]
    q: String,
    /// Form of the curve C; repeat for several components.
    #[arg(long = "c")]
    c: Vec<String>,
    /// Factorization degree bound (default: pencil degree).
    #[arg(long)]
    max_deg: Option<u32>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum PencilAction {
    /// Special fibers and their structure.
    Analyze(PencilArgs),
    /// Orbifold signature relative to C.
    Orbifold(PencilArgs),
    /// Whether every component of C lies in a member.
    Contains(PencilArgs),
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check the four hypotheses on (C1, C2).
    Check(PairArgs),
    /// Decide whether C2 splits in the double cover branched along C1.
    Split(PairArgs),
    /// Search for a witness identity F2 H z^k = G1^2 - G2^2 F1.
    Identity {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
    },
    /// Verify a proposed (G1, G2).
    Verify {
        #[arg(long)]
        c1: String,
        #[arg(long)]
        c2: String,
        #[arg(long)]
        g1: String,
        #[arg(long)]
        g2: String,
    },
    /// Pencil computations.
    Pencil {
        #[command(subcommand)]
        action: PencilAction,
    },
    /// Orbifold groups F_{n;(n_1..n_r)}.
    Group {
        #[arg(long, default_value_t = 0)]
        punctures: u32,
        #[arg(long, value_delimiter = ',')]
        weights: Vec<u32>,
        /// Replace each weight by the given divisor before the other steps.
        #[arg(long, value_delimiter = ',')]
        reduce: Option<Vec<u32>>,
        #[arg(long)]
        present: bool,
        #[arg(long)]
        normal_form: bool,
        #[arg(long)]
        identify: bool,
        /// Count epimorphisms onto the dihedral group of this order.
        #[arg(long)]
        count: Option<u32>,
    },
    /// Orbifold signature of a pencil pulled back by a Kummer cover.
    Kummer {
        /// Conic C.
        #[arg(long)]
        c: String,
        /// Three linear forms, comma separated.
        #[arg(long, value_delimiter = ',', num_args = 1)]
        lines: Vec<String>,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_deg: Option<u32>,
        /// Skip the tangency checks.
        #[arg(long)]
        unchecked: bool,
    },
    /// Run the built-in regression corpus.
    Corpus {
        /// Only run cases whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

/// Runs one invocation and returns the report with its exit status.
pub fn run(args: &[String]) -> (Value, i32) {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let report = json!({
                "command": args.get(1..).unwrap_or_default(),
                "inputs": {},
                "result": { "error": { "kind": "Usage", "message": e.to_string() } },
                "warnings": [],
                "exit_status": report::EXIT_INPUT,
            });
            return (report, report::EXIT_INPUT);
        }
    };
    let outcome = commands::execute(&cli.command, cli.seed);
    let exit = outcome.exit;
    (outcome.into_report(args.get(1..).unwrap_or_default()), exit)
}

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = match Cli::try_parse_from(&args) {
        Ok(cli) => cli.out,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(_) => None,
    };
    let (report, exit) = run(&args);
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    // A closed pipe (e.g. `| head`) is not an error worth reporting.
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    if let Some(path) = out {
        if let Err(e) = std::fs::write(&path, format!("{text}\n")) {
            eprintln!("pcl: cannot write {}: {e}", path.display());
            std::process::exit(report::EXIT_INPUT);
        }
    }
    std::process::exit(exit);
}
