//! Command-line driver: one JSON report on stdout, a short summary on stderr.

mod commands;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Chambers,
    Poset,
    Charpoly,
    Fiber,
    Smoosh,
    Retract,
    Betti,
    DumpComplex,
    Check,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Cech,
    Os,
}

#[derive(Debug, Parser)]
#[command(
    name = "smooshkit",
    version,
    about = "Chamber model of complexified arrangement complements"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    /// Arrangement file, or a directory of `.arr` files for `check`.
    pub input: std::path::PathBuf,
    /// Exact rational base point, e.g. "1/2 -3".
    #[arg(long)]
    pub point: Option<String>,
    /// Real part of a point of M(A).
    #[arg(long, allow_hyphen_values = true)]
    pub re: Option<String>,
    /// Imaginary part of a point of M(A).
    #[arg(long, allow_hyphen_values = true)]
    pub im: Option<String>,
    /// Point of (C^x)^n as JSON pairs, e.g. [[0,1],[-1,1]].
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long, value_enum)]
    pub method: Option<Method>,
    /// Highest Cech degree to build; defaults to d + 1.
    #[arg(long)]
    pub qmax: Option<usize>,
    /// Build every degree of the Cech complex.
    #[arg(long)]
    pub full: bool,
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value = "all")]
    pub suite: String,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = commands::run(&cli);
    let elapsed = start.elapsed();
    match outcome {
        Ok(out) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&out.report).expect("report serializes")
            );
            eprintln!("{} ({:.3}s)", out.summary, elapsed.as_secs_f64());
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let report = serde_json::json!({
                "command": commands::command_name(cli.command),
                "error": { "kind": e.kind(), "message": e.to_string() },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
