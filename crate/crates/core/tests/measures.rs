//! Cross-module checks: the built-in corpora, their question sets, the
//! canonical machines, and the bit-encoded automata must all agree on
//! the headline complexity figures.

use meaning_automata::canonical::{
    counter_tape, encode_index, what_is_machine_s, what_is_machine_t, yes_no_machine,
};
use meaning_automata::corpus::{builtin_corpus, yes_no_table};
use meaning_automata::machine::table::parse_tape;
use meaning_automata::meaning::{encode_as_moore, minimal_width, q_complexity, tables_isomorphic};
use meaning_automata::Answer;

#[test]
fn both_builtin_tables_have_576_defined_pairs() {
    for name in ["T", "S"] {
        let corpus = builtin_corpus(name).unwrap();
        let table = yes_no_table(&corpus, 1..=24).unwrap();
        assert_eq!(table.pair_complexity(), 576, "corpus {name}");
    }
}

#[test]
fn the_clock_and_idiom_tables_are_isomorphic() {
    let t = yes_no_table(&builtin_corpus("T").unwrap(), 1..=24).unwrap();
    let s = yes_no_table(&builtin_corpus("S").unwrap(), 1..=24).unwrap();
    let iso = tables_isomorphic(&t, &s).expect("both are 24-point diagonal tables");
    assert!(iso.preserves_answers(&t, &s));
}

#[test]
fn encoded_clock_and_idiom_tables_minimize_to_the_same_size() {
    let t = yes_no_table(&builtin_corpus("T").unwrap(), 1..=24).unwrap();
    let s = yes_no_table(&builtin_corpus("S").unwrap(), 1..=24).unwrap();
    let width = minimal_width(24);
    let t_states = encode_as_moore(&t, width).unwrap().minimize().state_count();
    let s_states = encode_as_moore(&s, width).unwrap().minimize().state_count();
    assert_eq!(t_states, s_states);
    let record = q_complexity(&t).unwrap();
    assert_eq!(record.pair_count, 576);
    assert_eq!(record.minimized_state_count, t_states);
}

#[test]
fn the_yes_no_machine_decides_the_clock_table() {
    let machine = yes_no_machine();
    let t = builtin_corpus("T").unwrap();
    let table = yes_no_table(&t, 1..=24).unwrap();
    for question in 1..=24u32 {
        for sentence in &t.sentences {
            let index = sentence.canonical_index.unwrap();
            let outcome = machine
                .run(&[
                    parse_tape(&encode_index(question).unwrap()),
                    parse_tape(&encode_index(index).unwrap()),
                    parse_tape(&counter_tape()),
                ])
                .unwrap();
            let verdict = outcome.verdict().expect("every comparison halts cleanly");
            assert_eq!(
                Answer::token(verdict.to_string()),
                table.answer(sentence.id, question),
                "question {question}, sentence {index}"
            );
        }
    }
}

#[test]
fn what_is_machines_cover_their_corpora_at_16_and_26() {
    let t_machine = what_is_machine_t();
    assert_eq!(t_machine.what_is_complexity(), 16);
    let s_machine = what_is_machine_s();
    assert_eq!(s_machine.what_is_complexity(), 26);
    // Every sentence of S asks about john, the copula, and one bare noun,
    // and each of those is askable once `at_` is stripped.
    let s = builtin_corpus("S").unwrap();
    for sentence in &s.sentences {
        for token in &sentence.text {
            let bare = token.strip_prefix("at_").unwrap_or(token);
            assert!(
                !s_machine.answer_what_is(bare).is_undefined(),
                "token {bare} has no gloss"
            );
        }
    }
}
