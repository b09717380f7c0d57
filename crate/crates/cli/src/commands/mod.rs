//! Command implementations and the shared error/output plumbing.

pub mod complexity;
pub mod estimate;
pub mod minimize;
pub mod reproduce;
pub mod run_machine;

use std::fmt;
use std::path::Path;

use meaning_automata::corpus::{builtin_corpus, load_corpus, Corpus};

use crate::report::ComplexityReport;

/// Environment variable naming a directory whose `T.corpus` / `S.corpus`
/// files replace the built-in corpora.
pub const DATA_DIR_VAR: &str = "MEANING_AUTOMATA_DATA";

/// Command failures, split by exit code: verification failures exit 1,
/// usage and parse problems exit 2.
#[derive(Debug)]
pub enum CliError {
    Check(String),
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Check(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Check(msg) | CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

pub fn usage(err: impl fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

/// How reports reach the terminal.
#[derive(Debug, Clone, Copy, Default)]
pub struct Output {
    pub json: bool,
    pub quiet: bool,
}

pub fn print_report(report: &ComplexityReport, out: Output) {
    if out.json {
        print!("{}", report.render_json());
    } else {
        print!("{}", report.render_human(out.quiet));
    }
}

/// Loads a corpus file in the corpus text format.
pub fn load_corpus_file(path: &Path) -> Result<Corpus, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    load_corpus(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// The corpus a built-in name refers to: the file from the data
/// directory when [`DATA_DIR_VAR`] is set, the compiled-in corpus
/// otherwise.
pub fn data_corpus(name: &str) -> Result<Corpus, CliError> {
    match std::env::var_os(DATA_DIR_VAR) {
        Some(dir) => load_corpus_file(&Path::new(&dir).join(format!("{name}.corpus"))),
        None => builtin_corpus(name).map_err(usage),
    }
}

/// Resolves a `--corpus` argument: the names `T` and `S` go through
/// [`data_corpus`], anything else is a file path.
pub fn resolve_corpus(arg: &str) -> Result<Corpus, CliError> {
    if arg == "T" || arg == "S" {
        data_corpus(arg)
    } else {
        load_corpus_file(Path::new(arg))
    }
}
