//! Table-driven multi-tape machines.
//!
//! A [`TransitionTable`] is a finite list of transition rows for a machine
//! whose read heads all advance one cell to the right on every step and
//! which writes one output symbol per step. Reading past the end of a tape
//! yields the blank symbol `b`. The machine halts by entering an accepting
//! state, or rejects when no row matches the current configuration.
//!
//! Besides the stored transition rows, each table carries the row and
//! column counts of its canonical printed form; their product is the
//! table-size measure.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Tape and output symbols are plain strings; most are single characters.
pub type Symbol = String;

/// The blank tape symbol.
pub const BLANK: &str = "b";

/// The output token that turns an accepting run into a `no` verdict.
pub const NO_MARK: &str = "no";

/// Errors from building, running or parsing a [`TransitionTable`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("tape count must be at least 1")]
    InvalidTapeCount,
    #[error("a table needs at least one transition row")]
    NoRows,
    #[error("row {row}: expected {expected} read symbols, found {found}")]
    RowArity {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("rows for state `{state}` reading ({reads}) appear more than once")]
    DuplicateRow { state: String, reads: String },
    #[error("counted rows {counted} is below the {states} distinct states")]
    CountedRowsTooSmall { counted: usize, states: usize },
    #[error("counted columns must be at least 2, got {counted}")]
    CountedColumnsTooSmall { counted: usize },
    #[error("machine reads {expected} tapes, got {found}")]
    TapeCountMismatch { expected: usize, found: usize },
    #[error("symbol `{symbol}` is not in the machine's alphabet")]
    AlphabetViolation { symbol: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One transition: in `state`, reading `reads` (one symbol per tape),
/// write `output` and move to `next`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionRow {
    pub state: String,
    pub reads: Vec<Symbol>,
    pub output: Symbol,
    pub next: String,
}

impl TransitionRow {
    pub fn new(
        state: impl Into<String>,
        reads: &[&str],
        output: impl Into<String>,
        next: impl Into<String>,
    ) -> TransitionRow {
        TransitionRow {
            state: state.into(),
            reads: reads.iter().map(|s| s.to_string()).collect(),
            output: output.into(),
            next: next.into(),
        }
    }
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HaltReason {
    /// The machine entered an accepting state.
    Accept,
    /// No row matched the current state and read symbols.
    NoMatchingRow,
    /// The machine kept cycling on blank input past every tape end.
    Diverged,
}

/// The yes/no reading of an accepting run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        })
    }
}

/// Result of running a [`TransitionTable`] on a set of input tapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    /// True iff the machine halted in an accepting state.
    pub accepted: bool,
    /// The symbols written to the output tape, one per step.
    pub output: Vec<Symbol>,
    /// Number of steps taken before halting.
    pub steps: usize,
    /// How the run ended.
    pub halt: HaltReason,
}

impl RunOutcome {
    /// True iff every written output symbol is blank.
    pub fn output_is_all_blank(&self) -> bool {
        self.output.iter().all(|s| s == BLANK)
    }

    /// True iff the output tape contains the `no` token.
    pub fn output_says_no(&self) -> bool {
        self.output.iter().any(|s| s == NO_MARK)
    }

    /// Reads the run as a yes/no answer: an accepting run with an all-blank
    /// output tape means yes, an accepting run whose output contains `no`
    /// means no, and anything else (including rejection) has no verdict.
    pub fn verdict(&self) -> Option<Verdict> {
        if !self.accepted {
            return None;
        }
        if self.output_says_no() {
            Some(Verdict::No)
        } else if self.output_is_all_blank() {
            Some(Verdict::Yes)
        } else {
            None
        }
    }

    /// The output tape as one compact string, for display.
    pub fn output_text(&self) -> String {
        self.output.concat()
    }
}

/// A deterministic multi-tape machine given as a table of transition rows.
///
/// `tape_count` counts the read tapes; the write-only output tape is
/// implicit. The start state is the state of the first row. `counted_rows`
/// and `counted_columns` record the dimensions of the machine's canonical
/// printed table (which may include a bare accept row and a state column
/// that the stored rows do not), and their product is the size measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionTable {
    tape_count: usize,
    rows: Vec<TransitionRow>,
    accepting_states: BTreeSet<String>,
    counted_rows: usize,
    counted_columns: usize,
}

impl TransitionTable {
    pub fn new(
        tape_count: usize,
        rows: Vec<TransitionRow>,
        accepting_states: impl IntoIterator<Item = String>,
        counted_rows: usize,
        counted_columns: usize,
    ) -> Result<TransitionTable, TableError> {
        if tape_count == 0 {
            return Err(TableError::InvalidTapeCount);
        }
        if rows.is_empty() {
            return Err(TableError::NoRows);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.reads.len() != tape_count {
                return Err(TableError::RowArity {
                    row: i,
                    expected: tape_count,
                    found: row.reads.len(),
                });
            }
        }
        let mut seen: HashSet<(&str, &[Symbol])> = HashSet::new();
        for row in &rows {
            if !seen.insert((row.state.as_str(), row.reads.as_slice())) {
                return Err(TableError::DuplicateRow {
                    state: row.state.clone(),
                    reads: row.reads.join(","),
                });
            }
        }
        let accepting_states: BTreeSet<String> = accepting_states.into_iter().collect();
        let mut states: BTreeSet<&str> = accepting_states.iter().map(|s| s.as_str()).collect();
        for row in &rows {
            states.insert(&row.state);
            states.insert(&row.next);
        }
        if counted_rows < states.len() {
            return Err(TableError::CountedRowsTooSmall {
                counted: counted_rows,
                states: states.len(),
            });
        }
        if counted_columns < 2 {
            return Err(TableError::CountedColumnsTooSmall {
                counted: counted_columns,
            });
        }
        Ok(TransitionTable {
            tape_count,
            rows,
            accepting_states,
            counted_rows,
            counted_columns,
        })
    }

    /// Number of read tapes the machine scans.
    pub fn tape_count(&self) -> usize {
        self.tape_count
    }

    pub fn rows(&self) -> &[TransitionRow] {
        &self.rows
    }

    pub fn accepting_states(&self) -> &BTreeSet<String> {
        &self.accepting_states
    }

    pub fn counted_rows(&self) -> usize {
        self.counted_rows
    }

    pub fn counted_columns(&self) -> usize {
        self.counted_columns
    }

    /// The size measure: rows times columns of the canonical printed table.
    pub fn table_size(&self) -> usize {
        self.counted_rows * self.counted_columns
    }

    /// The state the machine starts in (the state of the first row).
    pub fn start_state(&self) -> &str {
        &self.rows[0].state
    }

    /// All distinct state labels mentioned by the table.
    pub fn states(&self) -> BTreeSet<String> {
        let mut states: BTreeSet<String> = self.accepting_states.clone();
        for row in &self.rows {
            states.insert(row.state.clone());
            states.insert(row.next.clone());
        }
        states
    }

    /// Every symbol the machine can read, including the blank.
    pub fn read_alphabet(&self) -> BTreeSet<Symbol> {
        let mut alphabet: BTreeSet<Symbol> = BTreeSet::new();
        alphabet.insert(BLANK.to_string());
        for row in &self.rows {
            for sym in &row.reads {
                alphabet.insert(sym.clone());
            }
        }
        alphabet
    }

    /// Runs the machine on one input string per read tape. All heads move
    /// right together, one cell per step; reading past the end of a tape
    /// yields blanks.
    pub fn run(&self, tapes: &[Vec<Symbol>]) -> Result<RunOutcome, TableError> {
        if tapes.len() != self.tape_count {
            return Err(TableError::TapeCountMismatch {
                expected: self.tape_count,
                found: tapes.len(),
            });
        }
        let alphabet = self.read_alphabet();
        for tape in tapes {
            for sym in tape {
                if !alphabet.contains(sym) {
                    return Err(TableError::AlphabetViolation {
                        symbol: sym.clone(),
                    });
                }
            }
        }

        let mut lookup: HashMap<(&str, Vec<&str>), &TransitionRow> = HashMap::new();
        for row in &self.rows {
            let reads: Vec<&str> = row.reads.iter().map(|s| s.as_str()).collect();
            lookup.insert((row.state.as_str(), reads), row);
        }

        let longest = tapes.iter().map(|t| t.len()).max().unwrap_or(0);
        // Once every head is past its tape end the machine only reads
        // blanks, so it must accept within one visit per state or cycle
        // forever; cutting off there makes divergence detectable.
        let cutoff = longest + self.states().len() + 1;

        let mut state = self.start_state().to_string();
        let mut pos = 0usize;
        let mut output: Vec<Symbol> = Vec::new();
        loop {
            if self.accepting_states.contains(&state) {
                return Ok(RunOutcome {
                    accepted: true,
                    output,
                    steps: pos,
                    halt: HaltReason::Accept,
                });
            }
            if pos >= cutoff {
                return Ok(RunOutcome {
                    accepted: false,
                    output,
                    steps: pos,
                    halt: HaltReason::Diverged,
                });
            }
            let reads: Vec<&str> = tapes
                .iter()
                .map(|t| t.get(pos).map(|s| s.as_str()).unwrap_or(BLANK))
                .collect();
            match lookup.get(&(state.as_str(), reads)) {
                Some(row) => {
                    output.push(row.output.clone());
                    state = row.next.clone();
                    pos += 1;
                }
                None => {
                    return Ok(RunOutcome {
                        accepted: false,
                        output,
                        steps: pos,
                        halt: HaltReason::NoMatchingRow,
                    });
                }
            }
        }
    }
}

/// Splits a compact tape string like `01101` into one symbol per character.
pub fn parse_tape(text: &str) -> Vec<Symbol> {
    text.chars().map(|c| c.to_string()).collect()
}

impl fmt::Display for TransitionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "tapes={} rows={} cols={}",
            self.tape_count, self.counted_rows, self.counted_columns
        )?;
        for row in &self.rows {
            write!(f, "{}", row.state)?;
            for sym in &row.reads {
                write!(f, "\t{sym}")?;
            }
            writeln!(f, "\t{}\t{}", row.output, row.next)?;
        }
        let accept: Vec<&str> = self.accepting_states.iter().map(|s| s.as_str()).collect();
        writeln!(f, "accept={}", accept.join(","))
    }
}

impl FromStr for TransitionTable {
    type Err = TableError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_err = |line: usize, message: &str| TableError::Parse {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty machine description"))?;
        let mut tape_count = None;
        let mut counted_rows = None;
        let mut counted_columns = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| parse_err(1, "header fields must look like key=value"))?;
            let value: usize = value
                .parse()
                .map_err(|_| parse_err(1, "header values must be integers"))?;
            match key {
                "tapes" => tape_count = Some(value),
                "rows" => counted_rows = Some(value),
                "cols" => counted_columns = Some(value),
                _ => return Err(parse_err(1, "unknown header field")),
            }
        }
        let tape_count = tape_count.ok_or_else(|| parse_err(1, "header is missing tapes="))?;
        let counted_rows = counted_rows.ok_or_else(|| parse_err(1, "header is missing rows="))?;
        let counted_columns =
            counted_columns.ok_or_else(|| parse_err(1, "header is missing cols="))?;

        let mut rows = Vec::new();
        let mut accepting = None;
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            if let Some(labels) = line.strip_prefix("accept=") {
                if accepting.is_some() {
                    return Err(parse_err(lineno, "duplicate accept= line"));
                }
                accepting = Some(
                    labels
                        .split(',')
                        .filter(|l| !l.is_empty())
                        .map(|l| l.to_string())
                        .collect::<Vec<String>>(),
                );
                continue;
            }
            if accepting.is_some() {
                return Err(parse_err(lineno, "rows after the accept= line"));
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != tape_count + 3 {
                return Err(parse_err(
                    lineno,
                    "row needs state, one read per tape, output and next state",
                ));
            }
            rows.push(TransitionRow {
                state: fields[0].to_string(),
                reads: fields[1..1 + tape_count]
                    .iter()
                    .map(|s| s.to_string())
                    .collect(),
                output: fields[1 + tape_count].to_string(),
                next: fields[2 + tape_count].to_string(),
            });
        }
        let accepting =
            accepting.ok_or_else(|| parse_err(text.lines().count(), "missing accept= line"))?;
        TransitionTable::new(tape_count, rows, accepting, counted_rows, counted_columns)
    }
}
