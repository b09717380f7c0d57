//! Command-line surface over the meaning-automata library: recompute the
//! headline complexity figures, measure corpora, run the built-in
//! machines, minimize state-output machines, and estimate task profiles.

mod commands;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::{complexity::MeasureKind, Output};

#[derive(Parser)]
#[command(
    name = "meaning-automata",
    version,
    about = "Complexity measures for machines that answer questions about sentences"
)]
struct Cli {
    /// Print reports as JSON with a fixed key order.
    #[arg(long, global = true)]
    json: bool,
    /// Print bare name/value lines without notes or caveats.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recompute all thirteen headline figures and verify each one.
    Reproduce,
    /// Measure a corpus (built-in T or S, or a corpus file).
    Complexity {
        /// `T`, `S`, or a path to a corpus file.
        #[arg(long)]
        corpus: String,
        #[arg(long, value_enum)]
        measure: MeasureKind,
    },
    /// Run a built-in machine on an input, or export it with --emit.
    RunMachine {
        /// One of: yesno-tm, comparator, whatis-T, whatis-S, all-fsa,
        /// most-pda, eliza-model.
        #[arg(long)]
        machine: String,
        /// Input word, token, or space-separated tapes.
        #[arg(long)]
        input: Option<String>,
        /// Print the machine's text format instead of running it.
        #[arg(long)]
        emit: bool,
    },
    /// Minimize a state-output machine file (verifies equivalence first).
    Minimize {
        /// Machine file to read.
        #[arg(long = "in", value_name = "FILE")]
        in_file: PathBuf,
        /// File to write the minimized machine to.
        #[arg(long = "out", value_name = "FILE")]
        out_file: PathBuf,
    },
    /// Estimate task complexity from a profile (boris, mincal, or a file).
    Estimate {
        /// `boris`, `mincal`, or a path to a profile file.
        #[arg(long)]
        profile: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = Output {
        json: cli.json,
        quiet: cli.quiet,
    };
    let result = match &cli.command {
        Command::Reproduce => commands::reproduce::run(out),
        Command::Complexity { corpus, measure } => commands::complexity::run(corpus, *measure, out),
        Command::RunMachine {
            machine,
            input,
            emit,
        } => commands::run_machine::run(machine, input.as_deref(), *emit, out),
        Command::Minimize { in_file, out_file } => commands::minimize::run(in_file, out_file, out),
        Command::Estimate { profile } => commands::estimate::run(profile, out),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
