//! `dcf`: good pairs, generic types and listings from the command line.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use dcf_core::ideal::limits::Limits;

use report::{exit_code, Failure};

#[derive(Parser, Debug)]
#[command(name = "dcf", version, about = "Good pairs and differential generic types over Q and Q(t)")]
struct Cli {
    /// Wall-clock budget per Gröbner computation, in seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    timeout: Option<u64>,
    /// Accept asserted primality without evidence (recorded as a warning).
    #[arg(long, global = true)]
    permissive: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate a pair manifest.
    CheckPair { manifest: PathBuf },
    /// Prolongation ideal of a manifest's V or of an ideal file.
    Prolong { file: PathBuf },
    /// Decide f = 0 in the generic type of a pair.
    Member {
        manifest: PathBuf,
        #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
        f: String,
    },
    /// Decide a quantifier-free formula in the generic type of a pair.
    Decide {
        manifest: PathBuf,
        #[arg(long, value_name = "EXPR", allow_hyphen_values = true)]
        phi: String,
    },
    /// Turn an ODE system in solved form into a good pair manifest.
    Stabilize { system: PathBuf },
    /// List good pairs in canonical order.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long = "r-max", default_value_t = 1)]
        r_max: u32,
        #[arg(long = "max-degree", default_value_t = 1)]
        max_degree: u32,
        #[arg(long = "max-height", default_value_t = 1)]
        max_height: u32,
        #[arg(long)]
        count: usize,
        /// Write one manifest per pair plus `ledger.tsv` here.
        #[arg(long = "emit-dir")]
        emit_dir: Option<PathBuf>,
        /// Continue the ledger in `--emit-dir` with `--count` more pairs.
        #[arg(long, requires = "emit_dir")]
        resume: bool,
    },
    /// Test f = 0 against a truncated power-series solution.
    SeriesCheck {
        manifest: PathBuf,
        #[arg(long = "f", value_name = "EXPR", allow_hyphen_values = true)]
        f: String,
        #[arg(long, default_value_t = dcf_core::oracle::DEFAULT_ORDER)]
        order: u32,
    },
    /// Reduced Gröbner basis of an ideal file.
    Gb {
        file: PathBuf,
        #[arg(long, default_value = "grevlex")]
        order: String,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(secs) = cli.timeout {
        Limits::set_global(Limits { timeout: Duration::from_secs(secs), ..Limits::default() });
    }
    match commands::run(&cli) {
        Ok(report) => {
            print!("{}", report);
            ExitCode::from(report.exit_code())
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {}", e);
            ExitCode::from(exit_code(&e))
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
    }
}
