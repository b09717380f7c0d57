//! `complexity`: measure a corpus — built-in or user-supplied — by pair
//! count, minimized encoded states, definition-lookup size, or the
//! iterated definition-chase estimate.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use clap::ValueEnum;
use meaning_automata::canonical::{what_is_machine_s, what_is_machine_t, WhatIsMachine};
use meaning_automata::corpus::{yes_no_questions, Corpus, BARE_NOUNS};
use meaning_automata::estimate::{iterated_what_is_estimate, DEFAULT_TOKENS_PER_FACT};
use meaning_automata::meaning::{build_qa_table, q_complexity, QATable};

use super::{resolve_corpus, usage, CliError, Output};
use crate::report::{ComplexityReport, MeasureValue};

/// Which measure `complexity` computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureKind {
    /// Defined (sentence, question) cells of the diagonal yes/no table.
    Pairs,
    /// States of the minimized bit-encoded machine for that table.
    YesnoStates,
    /// Entries of the definition-lookup machine.
    Whatis,
    /// Tokens touched by a two-round definition chase.
    Iterated,
}

/// The corpus's diagonal yes/no table: one question per canonical index
/// that occurs in the corpus. A corpus with no indexed sentences gets an
/// empty question set and a zero-cell table.
fn diagonal_table(corpus: &Corpus) -> Result<QATable, CliError> {
    let indices: BTreeSet<u32> = corpus
        .sentences
        .iter()
        .filter_map(|s| s.canonical_index)
        .collect();
    let mut questions = Vec::new();
    for index in indices {
        questions.extend(yes_no_questions(corpus, index..=index).map_err(usage)?);
    }
    build_qa_table(corpus.sentences.clone(), questions).map_err(usage)
}

fn distinct_tokens(corpus: &Corpus) -> BTreeSet<String> {
    corpus
        .sentences
        .iter()
        .flat_map(|s| s.text.iter().cloned())
        .collect()
}

/// A lookup machine for an arbitrary corpus: one entry per distinct
/// token, each glossed with itself.
fn token_lookup_machine(corpus: &Corpus) -> Result<WhatIsMachine, CliError> {
    let definitions: BTreeMap<String, String> = distinct_tokens(corpus)
        .into_iter()
        .map(|tok| (tok.clone(), tok))
        .collect();
    WhatIsMachine::new(definitions).map_err(usage)
}

/// Seed-term count and vocabulary openness for the iterated chase:
/// fixed for the built-in corpora, token-derived and open otherwise.
fn chase_parameters(arg: &str, corpus: &Corpus) -> (u64, bool, String) {
    match arg {
        "T" => (
            what_is_machine_t().what_is_complexity() as u64,
            false,
            "closed-vocabulary chase over the clock lookup entries, 2 rounds".to_string(),
        ),
        "S" => (
            BARE_NOUNS.len() as u64,
            true,
            "open-vocabulary chase over the idiom nouns, 2 rounds".to_string(),
        ),
        _ => (
            distinct_tokens(corpus).len() as u64,
            true,
            "open-vocabulary chase over all distinct tokens, 2 rounds".to_string(),
        ),
    }
}

pub fn run(corpus_arg: &str, measure: MeasureKind, out: Output) -> Result<(), CliError> {
    let corpus = resolve_corpus(corpus_arg)?;
    let mut report = ComplexityReport::new(format!("complexity of corpus {}", corpus.name));
    match measure {
        MeasureKind::Pairs => {
            let table = diagonal_table(&corpus)?;
            report.push(
                "pair-complexity",
                MeasureValue::Count(table.pair_complexity() as u64),
                format!(
                    "defined cells of the diagonal table ({} sentences, {} questions)",
                    table.sentences().len(),
                    table.questions().len()
                ),
            );
        }
        MeasureKind::YesnoStates => {
            let table = diagonal_table(&corpus)?;
            let record = q_complexity(&table).map_err(usage)?;
            report.push(
                "yes-no-states",
                MeasureValue::Count(record.minimized_state_count as u64),
                format!(
                    "minimized states of the bit-encoded machine (width {})",
                    record.encoding_width
                ),
            );
            report.push(
                "pair-complexity",
                MeasureValue::Count(record.pair_count as u64),
                "defined cells of the same table".to_string(),
            );
            report.caveat(record.caveat);
        }
        MeasureKind::Whatis => {
            let (machine, note) = match corpus_arg {
                "T" => (
                    what_is_machine_t(),
                    "askable entries of the clock-corpus lookup machine",
                ),
                "S" => (
                    what_is_machine_s(),
                    "askable entries of the idiom-corpus lookup machine",
                ),
                _ => (
                    token_lookup_machine(&corpus)?,
                    "one identity entry per distinct corpus token",
                ),
            };
            report.push(
                "what-is-complexity",
                MeasureValue::Count(machine.what_is_complexity() as u64),
                note,
            );
        }
        MeasureKind::Iterated => {
            let (seed, open, note) = chase_parameters(corpus_arg, &corpus);
            let estimate =
                iterated_what_is_estimate(seed, 2, DEFAULT_TOKENS_PER_FACT, open).map_err(usage)?;
            report.push("iterated-what-is", MeasureValue::Count(estimate), note);
            report.caveat("calibrated heuristic estimate");
        }
    }
    super::print_report(&report, out);
    Ok(())
}
