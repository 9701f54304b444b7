//! `chamberscope`: enumerate genetic codes, realize chambers, compute their
//! invariants, and check everything against reference values.

mod commands;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use chamberscope::pipeline::DEFAULT_CHECKPOINT_INTERVAL;
use chamberscope::Error;

#[derive(Parser)]
#[command(name = "chamberscope", version, about = "Chambers, strata and invariants of polygon spaces")]
struct Cli {
    /// Worker threads; defaults to one per core. Output does not depend on it.
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CheckpointArgs {
    /// Directory for resumable checkpoints; falls back to $CHAMBERSCOPE_CACHE.
    #[arg(long)]
    checkpoint_dir: Option<PathBuf>,

    /// Records per committed chunk.
    #[arg(long, default_value_t = DEFAULT_CHECKPOINT_INTERVAL)]
    checkpoint_interval: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Subcommand)]
enum Command {
    /// All virtual genetic codes of type m, one JSON object per line.
    Enumerate {
        #[arg(long)]
        m: u8,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        checkpoint: CheckpointArgs,
    },
    /// Realizability, a_min, the in-image test and the toric test per code.
    Realize {
        #[arg(long)]
        m: u8,
        /// Codes to realize: JSONL from `enumerate`, or one code per line.
        /// Defaults to all of G_m.
        #[arg(long)]
        codes: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        checkpoint: CheckpointArgs,
    },
    /// Count the strata of R^(m-1), i.e. the chambers of R^m in the plus image.
    Strata {
        #[arg(long)]
        m: u8,
        /// Also write one stratum record per line here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach Betti numbers, Poincaré polynomial, r_cup and s to chamber records.
    Invariants {
        #[arg(long)]
        m: u8,
        /// Records from `realize`; computed from scratch when omitted.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        /// Cross-check the Betti numbers against the quotient-ring dimensions.
        #[arg(long)]
        ring_oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chambers with their invariants, sorted by (b, r_cup, s).
    Table {
        #[arg(long)]
        m: u8,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every check and print a PASS/FAIL line for each.
    Verify {
        #[arg(long, default_value_t = 8)]
        m: u8,
        /// Allow m = 9 (several minutes).
        #[arg(long)]
        long: bool,
    },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Inconsistency(_) | Error::Interrupted(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot start {jobs} workers: {e}");
            return ExitCode::from(1);
        }
    }
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
