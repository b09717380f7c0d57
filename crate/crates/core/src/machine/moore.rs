//! Moore machines: finite-state machines that attach an output to every
//! state, used here as the concrete machine class whose minimized state
//! count measures question complexity.
//!
//! The machine answers an input string with the output of the state it
//! lands in after consuming the whole string. Minimization is by partition
//! refinement seeded on the outputs, and equivalence checking walks the
//! reachable product of two machines, so a `false` verdict always comes
//! with a concrete distinguishing input.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::answer::Answer;
use crate::machine::table::Symbol;

/// Errors from building, running or parsing a [`MooreMachine`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum MooreError {
    #[error("a machine needs at least one state")]
    NoStates,
    #[error("duplicate state label `{label}`")]
    DuplicateState { label: String },
    #[error("start state `{label}` is not a state of the machine")]
    UnknownStart { label: String },
    #[error("state `{state}` has no transition on `{symbol}`")]
    IncompleteMachine { state: String, symbol: String },
    #[error("state `{state}` moves on `{symbol}` to unknown state `{target}`")]
    UnknownSuccessor {
        state: String,
        symbol: String,
        target: String,
    },
    #[error("input symbol `{symbol}` is not in the machine's alphabet")]
    AlphabetViolation { symbol: String },
    #[error("machines have different alphabets")]
    AlphabetMismatch,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// One state given by label, output and successor per input symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreState {
    pub label: String,
    pub output: Answer,
    pub next: BTreeMap<Symbol, String>,
}

impl MooreState {
    pub fn new(label: impl Into<String>, output: Answer, next: &[(&str, &str)]) -> MooreState {
        MooreState {
            label: label.into(),
            output,
            next: next
                .iter()
                .map(|(sym, target)| (sym.to_string(), target.to_string()))
                .collect(),
        }
    }
}

/// A complete deterministic Moore machine.
///
/// The alphabet is the union of the symbols appearing on transitions, and
/// every state must carry exactly one transition per alphabet symbol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MooreMachine {
    labels: Vec<String>,
    alphabet: Vec<Symbol>,
    /// `transitions[state][symbol index]` in `alphabet` order.
    transitions: Vec<Vec<usize>>,
    outputs: Vec<Answer>,
    start: usize,
}

impl MooreMachine {
    pub fn new(states: Vec<MooreState>, start: &str) -> Result<MooreMachine, MooreError> {
        if states.is_empty() {
            return Err(MooreError::NoStates);
        }
        let mut index: HashMap<&str, usize> = HashMap::new();
        for (i, st) in states.iter().enumerate() {
            if index.insert(&st.label, i).is_some() {
                return Err(MooreError::DuplicateState {
                    label: st.label.clone(),
                });
            }
        }
        let start = *index.get(start).ok_or_else(|| MooreError::UnknownStart {
            label: start.to_string(),
        })?;
        let alphabet: Vec<Symbol> = states
            .iter()
            .flat_map(|st| st.next.keys().cloned())
            .collect::<BTreeSet<Symbol>>()
            .into_iter()
            .collect();
        let mut transitions = Vec::with_capacity(states.len());
        for st in &states {
            let mut row = Vec::with_capacity(alphabet.len());
            for sym in &alphabet {
                let target = st
                    .next
                    .get(sym)
                    .ok_or_else(|| MooreError::IncompleteMachine {
                        state: st.label.clone(),
                        symbol: sym.clone(),
                    })?;
                let target_idx =
                    *index
                        .get(target.as_str())
                        .ok_or_else(|| MooreError::UnknownSuccessor {
                            state: st.label.clone(),
                            symbol: sym.clone(),
                            target: target.clone(),
                        })?;
                row.push(target_idx);
            }
            transitions.push(row);
        }
        Ok(MooreMachine {
            labels: states.iter().map(|st| st.label.clone()).collect(),
            alphabet,
            transitions,
            outputs: states.into_iter().map(|st| st.output).collect(),
            start,
        })
    }

    /// Number of states.
    pub fn state_count(&self) -> usize {
        self.labels.len()
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn state_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn start_label(&self) -> &str {
        &self.labels[self.start]
    }

    /// Output of the state reached from the start state after consuming
    /// `input` symbol by symbol.
    pub fn run(&self, input: &[Symbol]) -> Result<Answer, MooreError> {
        let mut state = self.start;
        for sym in input {
            let sym_idx = self.alphabet.iter().position(|s| s == sym).ok_or_else(|| {
                MooreError::AlphabetViolation {
                    symbol: sym.clone(),
                }
            })?;
            state = self.transitions[state][sym_idx];
        }
        Ok(self.outputs[state].clone())
    }

    /// Restricts the machine to the states reachable from the start state.
    pub fn prune(&self) -> MooreMachine {
        let order = self.reachable_order();
        self.restrict_to(&order)
    }

    /// Reachable state indices in breadth-first order from the start.
    fn reachable_order(&self) -> Vec<usize> {
        let mut order = Vec::new();
        let mut seen = vec![false; self.labels.len()];
        let mut queue = VecDeque::new();
        seen[self.start] = true;
        queue.push_back(self.start);
        while let Some(state) = queue.pop_front() {
            order.push(state);
            for &next in &self.transitions[state] {
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        order
    }

    /// Builds the sub-machine on `kept` (old indices), which must be closed
    /// under transitions and contain the start state.
    fn restrict_to(&self, kept: &[usize]) -> MooreMachine {
        let mut renumber: HashMap<usize, usize> = HashMap::new();
        for (new, &old) in kept.iter().enumerate() {
            renumber.insert(old, new);
        }
        MooreMachine {
            labels: kept.iter().map(|&old| self.labels[old].clone()).collect(),
            alphabet: self.alphabet.clone(),
            transitions: kept
                .iter()
                .map(|&old| {
                    self.transitions[old]
                        .iter()
                        .map(|next| renumber[next])
                        .collect()
                })
                .collect(),
            outputs: kept.iter().map(|&old| self.outputs[old].clone()).collect(),
            start: renumber[&self.start],
        }
    }

    /// Returns the minimal machine with the same input/output behavior,
    /// computed by partition refinement over the reachable states, with
    /// states relabeled `s0`, `s1`, ... in breadth-first order from the
    /// start. Two behaviorally equal machines therefore minimize to
    /// structurally identical machines regardless of their original labels.
    pub fn minimize(&self) -> MooreMachine {
        let pruned = self.prune();
        let n = pruned.labels.len();

        // Seed the partition with one block per distinct output.
        let mut block_of: Vec<usize> = Vec::with_capacity(n);
        let mut output_blocks: BTreeMap<&Answer, usize> = BTreeMap::new();
        for out in &pruned.outputs {
            let next_id = output_blocks.len();
            let id = *output_blocks.entry(out).or_insert(next_id);
            block_of.push(id);
        }

        // Split blocks until every pair of co-blocked states agrees on the
        // blocks of all successors.
        loop {
            let mut signatures: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next_block_of = Vec::with_capacity(n);
            for state in 0..n {
                let succ_blocks: Vec<usize> = pruned.transitions[state]
                    .iter()
                    .map(|&next| block_of[next])
                    .collect();
                let next_id = signatures.len();
                let id = *signatures
                    .entry((block_of[state], succ_blocks))
                    .or_insert(next_id);
                next_block_of.push(id);
            }
            let stable = next_block_of == block_of;
            block_of = next_block_of;
            if stable {
                break;
            }
        }

        let block_count = block_of.iter().max().map(|&m| m + 1).unwrap_or(0);
        let mut representative: Vec<usize> = vec![usize::MAX; block_count];
        for (state, &b) in block_of.iter().enumerate() {
            if representative[b] == usize::MAX {
                representative[b] = state;
            }
        }

        let quotient = MooreMachine {
            labels: (0..block_count).map(|b| format!("b{b}")).collect(),
            alphabet: pruned.alphabet.clone(),
            transitions: (0..block_count)
                .map(|b| {
                    pruned.transitions[representative[b]]
                        .iter()
                        .map(|&next| block_of[next])
                        .collect()
                })
                .collect(),
            outputs: (0..block_count)
                .map(|b| pruned.outputs[representative[b]].clone())
                .collect(),
            start: block_of[pruned.start],
        };

        // Canonical form: breadth-first renumbering with fresh labels.
        let order = quotient.reachable_order();
        let mut canonical = quotient.restrict_to(&order);
        canonical.labels = (0..canonical.labels.len())
            .map(|i| format!("s{i}"))
            .collect();
        canonical
    }

    /// True iff both machines produce the same output on every input.
    /// Decided exactly by exploring the reachable product machine.
    pub fn equivalent(&self, other: &MooreMachine) -> Result<bool, MooreError> {
        Ok(self.distinguishing_input(other)?.is_none())
    }

    /// Finds a shortest input on which the two machines answer differently,
    /// or `None` if they are equivalent.
    pub fn distinguishing_input(
        &self,
        other: &MooreMachine,
    ) -> Result<Option<Vec<Symbol>>, MooreError> {
        if self.alphabet != other.alphabet {
            return Err(MooreError::AlphabetMismatch);
        }
        let mut seen = vec![false; self.labels.len() * other.labels.len()];
        let mut queue: VecDeque<(usize, usize, Vec<usize>)> = VecDeque::new();
        seen[self.start * other.labels.len() + other.start] = true;
        queue.push_back((self.start, other.start, Vec::new()));
        while let Some((p, q, path)) = queue.pop_front() {
            if self.outputs[p] != other.outputs[q] {
                return Ok(Some(
                    path.into_iter().map(|i| self.alphabet[i].clone()).collect(),
                ));
            }
            for sym_idx in 0..self.alphabet.len() {
                let np = self.transitions[p][sym_idx];
                let nq = other.transitions[q][sym_idx];
                let key = np * other.labels.len() + nq;
                if !seen[key] {
                    seen[key] = true;
                    let mut next_path = path.clone();
                    next_path.push(sym_idx);
                    queue.push_back((np, nq, next_path));
                }
            }
        }
        Ok(None)
    }
}

impl fmt::Display for MooreMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "alphabet={} start={}",
            self.alphabet.join(","),
            self.labels[self.start]
        )?;
        for (i, label) in self.labels.iter().enumerate() {
            write!(f, "{label}\t{}", self.outputs[i])?;
            for &next in &self.transitions[i] {
                write!(f, "\t{}", self.labels[next])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for MooreMachine {
    type Err = MooreError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_err = |line: usize, message: &str| MooreError::Parse {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty machine description"))?;
        let mut alphabet: Option<Vec<Symbol>> = None;
        let mut start: Option<String> = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| parse_err(1, "header fields must look like key=value"))?;
            match key {
                "alphabet" => {
                    alphabet = Some(
                        value
                            .split(',')
                            .filter(|s| !s.is_empty())
                            .map(|s| s.to_string())
                            .collect(),
                    )
                }
                "start" => start = Some(value.to_string()),
                _ => return Err(parse_err(1, "unknown header field")),
            }
        }
        let alphabet = alphabet.ok_or_else(|| parse_err(1, "header is missing alphabet="))?;
        let start = start.ok_or_else(|| parse_err(1, "header is missing start="))?;

        let mut states = Vec::new();
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 2 + alphabet.len() {
                return Err(parse_err(
                    lineno,
                    "state line needs label, output and one successor per alphabet symbol",
                ));
            }
            let next: BTreeMap<Symbol, String> = alphabet
                .iter()
                .cloned()
                .zip(fields[2..].iter().map(|s| s.to_string()))
                .collect();
            states.push(MooreState {
                label: fields[0].to_string(),
                output: Answer::token(fields[1]),
                next,
            });
        }
        MooreMachine::new(states, &start)
    }
}
