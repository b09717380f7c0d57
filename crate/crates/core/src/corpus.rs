//! Built-in corpora and corpus file handling.
//!
//! Two fixed 24-sentence corpora ship with the crate: `T`, the clock-time
//! sentences `the-meeting is at X am/pm`, indexed on the 24-hour scale,
//! and `S`, the bare-noun idiom sentences `john is at_X`, indexed in their
//! traditional listing order. Both pair naturally with the diagonal
//! yes/no question set produced by [`yes_no_questions`].
//!
//! User corpora use a small text format: one sentence per line, tokens
//! separated by spaces, `#` comments, and optional `name=`/`template=`
//! directive lines plus an `index=<n>` suffix per sentence for canonical
//! indices. Loading and emitting are mutual inverses.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::answer::Answer;
use crate::canonical::{canonicalize_time, Meridiem};
use crate::meaning::{build_qa_table, MeaningError, QATable, Question, QuestionKind, Sentence};

/// Errors from building, loading or questioning corpora.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CorpusError {
    #[error("no built-in corpus named `{name}` (the built-ins are T and S)")]
    UnknownCorpus { name: String },
    #[error("the question index range is empty")]
    EmptyRange,
    #[error("the corpus has no sentences")]
    EmptyCorpus,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Table(#[from] MeaningError),
}

/// The 24 bare nouns of the idiom corpus, in their traditional listing
/// order (the 19th is `grass`).
pub const BARE_NOUNS: [&str; 24] = [
    "breakfast",
    "lunch",
    "dinner",
    "school",
    "work",
    "rest",
    "ease",
    "liberty",
    "peace",
    "sea",
    "home",
    "church",
    "college",
    "court",
    "town",
    "market",
    "hand",
    "meat",
    "grass",
    "bat",
    "play",
    "uncertainty",
    "battle",
    "age",
];

/// A named list of sentences, optionally with a question template whose
/// `{}` slot takes the part of a sentence that varies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    pub name: String,
    pub sentences: Vec<Sentence>,
    pub template: Option<String>,
}

/// Returns a built-in corpus by name: `T` (clock times) or `S` (idioms).
pub fn builtin_corpus(name: &str) -> Result<Corpus, CorpusError> {
    match name {
        "T" | "t" => Ok(corpus_t()),
        "S" | "s" => Ok(corpus_s()),
        other => Err(CorpusError::UnknownCorpus {
            name: other.to_string(),
        }),
    }
}

fn corpus_t() -> Corpus {
    let mut sentences = Vec::with_capacity(24);
    for meridiem in [Meridiem::Am, Meridiem::Pm] {
        for hour in 1..=12u32 {
            let index = canonicalize_time(hour, meridiem).expect("hours 1..=12 are valid");
            let hour_token = hour.to_string();
            let meridiem_token = meridiem.to_string();
            sentences.push(Sentence::new(
                index,
                &[
                    "the-meeting",
                    "is",
                    "at",
                    hour_token.as_str(),
                    meridiem_token.as_str(),
                ],
                Some(index),
            ));
        }
    }
    sentences.sort_by_key(|s| s.id);
    Corpus {
        name: "T".to_string(),
        sentences,
        template: Some("is the-meeting at {}".to_string()),
    }
}

fn corpus_s() -> Corpus {
    let sentences = BARE_NOUNS
        .iter()
        .enumerate()
        .map(|(i, noun)| {
            let id = i as u32 + 1;
            let place = format!("at_{noun}");
            Sentence::new(id, &["john", "is", place.as_str()], Some(id))
        })
        .collect();
    Corpus {
        name: "S".to_string(),
        sentences,
        template: Some("is john {}".to_string()),
    }
}

/// The sentence tokens that fill a template's `{}` slot: the sentence
/// minus one occurrence of each fixed template token.
fn slot_tokens(template: &str, sentence: &Sentence) -> Vec<String> {
    let mut fixed: Vec<&str> = template
        .split_whitespace()
        .filter(|tok| *tok != "{}")
        .collect();
    sentence
        .text
        .iter()
        .filter(|tok| {
            if let Some(pos) = fixed.iter().position(|f| *f == tok.as_str()) {
                fixed.remove(pos);
                false
            } else {
                true
            }
        })
        .cloned()
        .collect()
}

fn question_text(corpus: &Corpus, index: u32) -> Vec<String> {
    let Some(template) = &corpus.template else {
        return vec![format!("q{index}")];
    };
    let slot = corpus
        .sentences
        .iter()
        .find(|s| s.canonical_index == Some(index))
        .map(|s| slot_tokens(template, s))
        .unwrap_or_else(|| vec![index.to_string()]);
    let mut text = Vec::new();
    for tok in template.split_whitespace() {
        if tok == "{}" {
            text.extend(slot.iter().cloned());
        } else {
            text.push(tok.to_string());
        }
    }
    text
}

/// Builds one yes/no question per index in `indices`: question `X` answers
/// yes for the sentence whose canonical index is `X` and no for every
/// other sentence. Indices may run past the corpus (such questions answer
/// no everywhere), which is how overgeneralization is probed.
pub fn yes_no_questions(
    corpus: &Corpus,
    indices: std::ops::RangeInclusive<u32>,
) -> Result<Vec<Question>, CorpusError> {
    if indices.is_empty() {
        return Err(CorpusError::EmptyRange);
    }
    Ok(indices
        .map(|index| {
            let extension: BTreeMap<u32, Answer> = corpus
                .sentences
                .iter()
                .map(|s| {
                    let answer = if s.canonical_index == Some(index) {
                        Answer::token("yes")
                    } else {
                        Answer::token("no")
                    };
                    (s.id, answer)
                })
                .collect();
            Question {
                id: index,
                text: question_text(corpus, index),
                kind: QuestionKind::YesNo,
                extension,
            }
        })
        .collect())
}

/// The corpus with its diagonal yes/no question set as a question-answer
/// table.
pub fn yes_no_table(
    corpus: &Corpus,
    indices: std::ops::RangeInclusive<u32>,
) -> Result<QATable, CorpusError> {
    let questions = yes_no_questions(corpus, indices)?;
    Ok(build_qa_table(corpus.sentences.clone(), questions)?)
}

/// Parses the corpus text format. Tokens are lowercased; sentence ids are
/// assigned sequentially from 1 in file order.
pub fn load_corpus(text: &str) -> Result<Corpus, CorpusError> {
    let parse_err = |line: usize, message: &str| CorpusError::Parse {
        line,
        message: message.to_string(),
    };
    let mut name = "corpus".to_string();
    let mut template = None;
    let mut sentences: Vec<Sentence> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(value) = line.strip_prefix("name=") {
            name = value.trim().to_string();
            continue;
        }
        if let Some(value) = line.strip_prefix("template=") {
            template = Some(value.trim().to_lowercase());
            continue;
        }
        let mut tokens: Vec<String> = line.split_whitespace().map(|t| t.to_lowercase()).collect();
        let mut canonical_index = None;
        if let Some(last) = tokens.last() {
            if let Some(value) = last.strip_prefix("index=") {
                canonical_index = Some(
                    value
                        .parse::<u32>()
                        .map_err(|_| parse_err(lineno, "index= needs a positive integer"))?,
                );
                tokens.pop();
            }
        }
        if tokens.is_empty() {
            return Err(parse_err(lineno, "sentence line has no tokens"));
        }
        sentences.push(Sentence {
            id: sentences.len() as u32 + 1,
            text: tokens,
            canonical_index,
        });
    }
    if sentences.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    Ok(Corpus {
        name,
        sentences,
        template,
    })
}

/// Serializes a corpus in the text format accepted by [`load_corpus`].
pub fn emit_corpus(corpus: &Corpus) -> String {
    let mut out = format!("name={}\n", corpus.name);
    if let Some(template) = &corpus.template {
        out.push_str(&format!("template={template}\n"));
    }
    for sentence in &corpus.sentences {
        out.push_str(&sentence.text.join(" "));
        if let Some(index) = sentence.canonical_index {
            out.push_str(&format!(" index={index}"));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_has_24_sentences_with_indices_1_to_24() {
        let t = builtin_corpus("T").unwrap();
        assert_eq!(t.sentences.len(), 24);
        let indices: Vec<u32> = t
            .sentences
            .iter()
            .map(|s| s.canonical_index.unwrap())
            .collect();
        assert_eq!(indices, (1..=24).collect::<Vec<u32>>());
        for s in &t.sentences {
            assert_eq!(Some(s.id), s.canonical_index);
        }
    }

    #[test]
    fn t_sentence_13_is_one_pm() {
        let t = builtin_corpus("T").unwrap();
        let s13 = &t.sentences[12];
        assert_eq!(s13.id, 13);
        assert_eq!(s13.text, ["the-meeting", "is", "at", "1", "pm"]);
        let s7 = &t.sentences[6];
        assert_eq!(s7.text, ["the-meeting", "is", "at", "7", "am"]);
    }

    #[test]
    fn s_has_24_sentences_in_listing_order() {
        let s = builtin_corpus("S").unwrap();
        assert_eq!(s.sentences.len(), 24);
        let nineteenth = &s.sentences[18];
        assert_eq!(nineteenth.id, 19);
        assert_eq!(nineteenth.text, ["john", "is", "at_grass"]);
        assert_eq!(s.sentences[0].text, ["john", "is", "at_breakfast"]);
        assert_eq!(s.sentences[23].text, ["john", "is", "at_age"]);
    }

    #[test]
    fn builtin_corpora_are_stable_across_calls() {
        assert_eq!(builtin_corpus("T").unwrap(), builtin_corpus("T").unwrap());
        assert_eq!(builtin_corpus("S").unwrap(), builtin_corpus("S").unwrap());
    }

    #[test]
    fn unknown_corpus_names_are_rejected() {
        assert_eq!(
            builtin_corpus("U").unwrap_err(),
            CorpusError::UnknownCorpus {
                name: "U".to_string()
            }
        );
    }

    #[test]
    fn question_13_asks_about_one_pm_and_matches_sentence_13() {
        let t = builtin_corpus("T").unwrap();
        let questions = yes_no_questions(&t, 13..=13).unwrap();
        assert_eq!(questions.len(), 1);
        let q13 = &questions[0];
        assert_eq!(q13.text, ["is", "the-meeting", "at", "1", "pm"]);
        assert_eq!(q13.extension[&13], Answer::token("yes"));
        assert_eq!(q13.extension[&7], Answer::token("no"));
    }

    #[test]
    fn diagonal_table_over_t_has_576_defined_pairs() {
        let t = builtin_corpus("T").unwrap();
        let table = yes_no_table(&t, 1..=24).unwrap();
        assert_eq!(table.pair_complexity(), 576);
        for s in table.sentences() {
            for q in table.questions() {
                let expected = if s.id == q.id { "yes" } else { "no" };
                assert_eq!(table.answer(s.id, q.id), Answer::token(expected));
            }
        }
    }

    #[test]
    fn questions_past_the_corpus_answer_no_everywhere() {
        let t = builtin_corpus("T").unwrap();
        let q25 = &yes_no_questions(&t, 25..=25).unwrap()[0];
        assert!(q25.extension.values().all(|a| *a == Answer::token("no")));
        assert_eq!(q25.text, ["is", "the-meeting", "at", "25"]);
    }

    #[test]
    #[allow(clippy::reversed_empty_ranges)]
    fn empty_index_ranges_are_rejected() {
        let t = builtin_corpus("T").unwrap();
        assert_eq!(
            yes_no_questions(&t, 5..=4).unwrap_err(),
            CorpusError::EmptyRange
        );
    }

    #[test]
    fn s_questions_use_the_idiom_template() {
        let s = builtin_corpus("S").unwrap();
        let q19 = &yes_no_questions(&s, 19..=19).unwrap()[0];
        assert_eq!(q19.text, ["is", "john", "at_grass"]);
    }

    #[test]
    fn builtin_corpora_round_trip_through_the_text_format() {
        for name in ["T", "S"] {
            let corpus = builtin_corpus(name).unwrap();
            let text = emit_corpus(&corpus);
            let loaded = load_corpus(&text).unwrap();
            assert_eq!(loaded, corpus);
            assert_eq!(emit_corpus(&loaded), text);
        }
    }

    #[test]
    fn loader_assigns_sequential_ids_and_lowercases() {
        let corpus = load_corpus("# a comment\nJohn IS at_Work\nmary sleeps\n").unwrap();
        assert_eq!(corpus.sentences.len(), 2);
        assert_eq!(corpus.sentences[0].id, 1);
        assert_eq!(corpus.sentences[0].text, ["john", "is", "at_work"]);
        assert_eq!(corpus.sentences[1].id, 2);
        assert_eq!(corpus.name, "corpus");
        assert_eq!(corpus.template, None);
    }

    #[test]
    fn loader_reads_index_suffixes() {
        let corpus = load_corpus("a b index=7\n").unwrap();
        assert_eq!(corpus.sentences[0].canonical_index, Some(7));
        assert_eq!(corpus.sentences[0].text, ["a", "b"]);
    }

    #[test]
    fn loader_rejects_bad_lines_with_line_numbers() {
        let err = load_corpus("ok line\nbad index=x\n").unwrap_err();
        assert_eq!(
            err,
            CorpusError::Parse {
                line: 2,
                message: "index= needs a positive integer".to_string()
            }
        );
        let err = load_corpus("index=3\n").unwrap_err();
        assert!(matches!(err, CorpusError::Parse { line: 1, .. }));
    }

    #[test]
    fn empty_input_is_not_a_corpus() {
        assert_eq!(
            load_corpus("# only comments\n").unwrap_err(),
            CorpusError::EmptyCorpus
        );
    }

    #[test]
    fn three_line_files_load_as_three_sentences() {
        let corpus = load_corpus("a a\nb b\nc c\n").unwrap();
        let ids: Vec<u32> = corpus.sentences.iter().map(|s| s.id).collect();
        assert_eq!(ids, [1, 2, 3]);
    }
}
