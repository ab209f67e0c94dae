//! `trb`: exact-rational workbench CLI. Subcommands are resolved through a
//! trait-object registry; every run emits one uniform report in text or JSON.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use commands::{registry, RunContext};

#[derive(Parser)]
#[command(
    name = "trb",
    about = "Exact-rational checks for twisted Rota-Baxter operators and NS-algebras",
    after_help = "Run `trb list` to see every subcommand with a one-line description."
)]
struct Cli {
    /// Subcommand name (see `trb list`)
    command: String,

    /// Instance files (JSON); most commands take exactly one
    files: Vec<PathBuf>,

    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Seed for randomized audits
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Number of random samples for sampled audits
    #[arg(long, global = true, default_value_t = 25)]
    samples: usize,

    /// Highest cochain degree for cohomology commands
    #[arg(long, global = true, default_value_t = 2)]
    nmax: usize,

    /// Truncation order for deformation commands (0 = use the file's order)
    #[arg(long, global = true, default_value_t = 0)]
    order: usize,

    /// Sparse 1-cocycle B for `gauge` (JSON triples)
    #[arg(long = "B", value_name = "FILE", global = true)]
    b_file: Option<PathBuf>,

    /// Sparse 1-cochain h for `shift` (JSON triples)
    #[arg(long = "h", value_name = "FILE", global = true)]
    h_file: Option<PathBuf>,

    /// Candidate elements for `nijenhuis` (JSON array of coefficient vectors)
    #[arg(long, value_name = "FILE", global = true)]
    candidates: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let registry = registry();

    if cli.command == "list" {
        for cmd in &registry {
            println!("{:<16} {}", cmd.name(), cmd.about());
        }
        return ExitCode::SUCCESS;
    }

    let Some(cmd) = registry.iter().find(|c| c.name() == cli.command) else {
        eprintln!("unknown command: {}", cli.command);
        eprintln!("available commands:");
        for cmd in &registry {
            eprintln!("  {:<16} {}", cmd.name(), cmd.about());
        }
        return ExitCode::from(2);
    };

    let ctx = RunContext {
        files: cli.files,
        seed: cli.seed,
        samples: cli.samples,
        nmax: cli.nmax,
        order: cli.order,
        b_file: cli.b_file,
        h_file: cli.h_file,
        candidates: cli.candidates,
    };

    match cmd.run(&ctx) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let code = e.exit_code();
            if cli.json {
                let payload = serde_json::json!({
                    "command": cli.command,
                    "error": e.message(),
                    "exit_code": code,
                });
                eprintln!("{}", serde_json::to_string_pretty(&payload).unwrap());
            } else {
                eprintln!("error: {}", e.message());
            }
            ExitCode::from(code as u8)
        }
    }
}
