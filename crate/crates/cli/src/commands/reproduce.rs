//! `reproduce`: recompute every headline complexity figure from scratch
//! and verify each against its expected value or range. All thirteen
//! checks run even if an early one fails; the report lists every measure
//! and the command exits nonzero naming each failed one.

use meaning_automata::canonical::{
    all_machine, counter_tape, eliza_model, encode_index, most_machine,
    overgeneralizing_comparator, what_is_machine_s, what_is_machine_t, yes_no_machine,
};
use meaning_automata::corpus::{yes_no_table, Corpus, BARE_NOUNS};
use meaning_automata::estimate::{
    boris_profile, calendar_schema, iterated_what_is_estimate, mincal_profile, profile_estimate,
    DEFAULT_TOKENS_PER_FACT,
};
use meaning_automata::machine::moore::MooreState;
use meaning_automata::machine::table::{parse_tape, Verdict};
use meaning_automata::meaning::{q_complexity, tables_isomorphic, QATable, MINIMALITY_CAVEAT};
use meaning_automata::{Answer, MooreMachine};
use rand::{Rng, SeedableRng};

use super::{data_corpus, CliError, Output};
use crate::report::{ComplexityReport, MeasureValue};

struct Checks {
    report: ComplexityReport,
    failures: Vec<String>,
}

impl Checks {
    fn record(&mut self, name: &str, value: MeasureValue, note: &str, ok: bool, detail: String) {
        self.report.push(name, value, note);
        if !ok {
            self.failures.push(format!("{name}: {detail}"));
        }
    }
}

/// A word over {a, b} from the low `len` bits of `bits`.
fn ab_word(bits: u32, len: u32) -> String {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { 'b' } else { 'a' })
        .collect()
}

/// A 5-character bit string from the low five bits of `v`.
fn five_bits(v: u32) -> String {
    (0..5)
        .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

fn random_machine(rng: &mut impl Rng) -> MooreMachine {
    let state_count = rng.gen_range(1..=64usize);
    let alphabet = &["a", "b", "c", "d"][..rng.gen_range(1..=4usize)];
    let states = (0..state_count)
        .map(|i| {
            let output = match rng.gen_range(0..3u8) {
                0 => Answer::token("yes"),
                1 => Answer::token("no"),
                _ => Answer::Undefined,
            };
            let successors: Vec<String> = alphabet
                .iter()
                .map(|_| format!("m{}", rng.gen_range(0..state_count)))
                .collect();
            let pairs: Vec<(&str, &str)> = alphabet
                .iter()
                .zip(&successors)
                .map(|(sym, next)| (*sym, next.as_str()))
                .collect();
            MooreState::new(format!("m{i}"), output, &pairs)
        })
        .collect();
    MooreMachine::new(states, "m0").expect("generated machines are complete")
}

/// Builds the full report from the given corpora. Infallible: problems
/// with the corpora become check failures, not errors, so a damaged data
/// directory is reported measure by measure.
pub fn report_for(t: &Corpus, s: &Corpus) -> (ComplexityReport, Vec<String>) {
    let mut checks = Checks {
        report: ComplexityReport::new("headline complexity figures"),
        failures: Vec::new(),
    };

    // Check 1: both diagonal tables define 24 × 24 pairs.
    let mut tables: Vec<Option<QATable>> = Vec::new();
    for (corpus, label) in [(t, "T"), (s, "S")] {
        let name = format!("pair-complexity-{label}");
        match yes_no_table(corpus, 1..=24) {
            Ok(table) => {
                let pairs = table.pair_complexity() as u64;
                checks.record(
                    &name,
                    MeasureValue::Count(pairs),
                    "defined cells of the 24-question diagonal table",
                    pairs == 576,
                    format!("expected 576, got {pairs}"),
                );
                tables.push(Some(table));
            }
            Err(e) => {
                checks.record(
                    &name,
                    MeasureValue::Text("error".to_string()),
                    "defined cells of the 24-question diagonal table",
                    false,
                    format!("table not built: {e}"),
                );
                tables.push(None);
            }
        }
    }

    // Check 2: printed table sizes of the two index comparators.
    let exact = yes_no_machine();
    let loose = overgeneralizing_comparator();
    let exact_size = exact.table_size() as u64;
    checks.record(
        "yes-no-table-size",
        MeasureValue::Count(exact_size),
        "6 rows by 5 symbol columns",
        exact_size == 30,
        format!("expected 30, got {exact_size}"),
    );
    let loose_size = loose.table_size() as u64;
    checks.record(
        "comparator-table-size",
        MeasureValue::Count(loose_size),
        "5 rows by 5 symbol columns after dropping the counter tape",
        loose_size == 25,
        format!("expected 25, got {loose_size}"),
    );

    // Check 3: the exact machine is string equality on all 5-bit pairs.
    let counter = parse_tape(&counter_tape());
    let mut equality_agreements = 0u64;
    for q in 0..32u32 {
        for s_bits in 0..32u32 {
            let outcome = exact
                .run(&[
                    parse_tape(&five_bits(q)),
                    parse_tape(&five_bits(s_bits)),
                    counter.clone(),
                ])
                .expect("bits and blanks are in the alphabet");
            let said_yes = outcome.verdict() == Some(Verdict::Yes);
            if said_yes == (q == s_bits) {
                equality_agreements += 1;
            }
        }
    }
    checks.record(
        "yes-no-equality-agreement",
        MeasureValue::Count(equality_agreements),
        "runs agreeing with 5-bit string equality, out of 1024",
        equality_agreements == 1024,
        format!("expected 1024, got {equality_agreements}"),
    );

    // Check 4: the 25-cell comparator matches the exact machine on the
    // 24 index encodings, and still accepts the 25th.
    let mut comparator_agreements = 0u64;
    for qi in 1..=24u32 {
        let q_tape = parse_tape(&encode_index(qi).expect("1..=32 encodes"));
        for si in 1..=24u32 {
            let s_tape = parse_tape(&encode_index(si).expect("1..=32 encodes"));
            let exact_verdict = exact
                .run(&[q_tape.clone(), s_tape.clone(), counter.clone()])
                .expect("bits and blanks are in the alphabet")
                .verdict();
            let loose_verdict = loose
                .run(&[q_tape.clone(), s_tape])
                .expect("bits and blanks are in the alphabet")
                .verdict();
            if exact_verdict == loose_verdict {
                comparator_agreements += 1;
            }
        }
    }
    checks.record(
        "comparator-agreement",
        MeasureValue::Count(comparator_agreements),
        "index pairs where both comparators give the same verdict, out of 576",
        comparator_agreements == 576,
        format!("expected 576, got {comparator_agreements}"),
    );
    let beyond = parse_tape(&encode_index(25).expect("1..=32 encodes"));
    let accepts_beyond = loose
        .run(&[beyond.clone(), beyond])
        .expect("bits and blanks are in the alphabet")
        .verdict()
        == Some(Verdict::Yes);
    checks.record(
        "comparator-accepts-index-25",
        MeasureValue::Flag(accepts_beyond),
        "the smaller machine also matches indices past the corpus",
        accepts_beyond,
        "index 25 was not accepted".to_string(),
    );

    // Check 5: definition-lookup sizes.
    let what_t = what_is_machine_t().what_is_complexity() as u64;
    checks.record(
        "what-is-T",
        MeasureValue::Count(what_t),
        "askable entries of the clock-corpus lookup machine",
        what_t == 16,
        format!("expected 16, got {what_t}"),
    );
    let what_s = what_is_machine_s().what_is_complexity() as u64;
    checks.record(
        "what-is-S",
        MeasureValue::Count(what_s),
        "askable entries of the idiom-corpus lookup machine",
        what_s == 26,
        format!("expected 26, got {what_s}"),
    );

    // Check 6: iterated definition-chase estimates, within ±20% of their
    // targets (20 and 250).
    let iterated_t = iterated_what_is_estimate(16, 2, DEFAULT_TOKENS_PER_FACT, false)
        .expect("positive rounds and token cost");
    checks.record(
        "iterated-what-is-T",
        MeasureValue::Count(iterated_t),
        "closed-vocabulary chase over 16 seed terms, 2 rounds; tolerance ±20% around 20",
        (16..=24).contains(&iterated_t),
        format!("expected within 16..24, got {iterated_t}"),
    );
    let iterated_s =
        iterated_what_is_estimate(BARE_NOUNS.len() as u64, 2, DEFAULT_TOKENS_PER_FACT, true)
            .expect("positive rounds and token cost");
    checks.record(
        "iterated-what-is-S",
        MeasureValue::Count(iterated_s),
        "open-vocabulary chase over the 24 idiom nouns, 2 rounds; tolerance ±20% around 250",
        (200..=300).contains(&iterated_s),
        format!("expected within 200..300, got {iterated_s}"),
    );

    // Check 7: keyword-chatbot size model.
    let eliza = eliza_model().q_complexity();
    checks.record(
        "keyword-model-size",
        MeasureValue::Count(eliza),
        "50 keywords with 2 structures each, plus 18 control states",
        eliza == 118,
        format!("expected 118, got {eliza}"),
    );

    // Check 8: the majority stack machine, exhaustively against letter
    // counting on every nonempty word up to length 12.
    let most = most_machine();
    let most_states = most.state_count() as u64;
    checks.record(
        "most-machine-states",
        MeasureValue::Count(most_states),
        "control states of the majority stack machine (bound 5)",
        most_states <= 5,
        format!("expected at most 5, got {most_states}"),
    );
    let mut most_agreements = 0u64;
    let mut most_total = 0u64;
    for len in 1..=12u32 {
        for bits in 0..1u32 << len {
            let word = ab_word(bits, len);
            let accepted = most.run(&word).expect("words over a/b are legal");
            let expected = 2 * bits.count_ones() > len;
            most_total += 1;
            if accepted == expected {
                most_agreements += 1;
            }
        }
    }
    checks.record(
        "most-machine-agreement",
        MeasureValue::Count(most_agreements),
        "words where acceptance equals count(b) > count(a), out of 8190",
        most_agreements == 8190 && most_total == 8190,
        format!("expected 8190 of {most_total}, got {most_agreements}"),
    );

    // Check 9: the universal-quantifier automaton, exhaustively against
    // the no-`a` predicate, and its minimized size.
    let all = all_machine();
    let mut all_agreements = 0u64;
    let mut all_total = 0u64;
    for len in 0..=12u32 {
        for bits in 0..1u32 << len {
            let word: Vec<String> = ab_word(bits, len).chars().map(|c| c.to_string()).collect();
            let answer = all.run(&word).expect("words over a/b are legal");
            let expected = bits.count_ones() == len;
            all_total += 1;
            if (answer == Answer::token("yes")) == expected {
                all_agreements += 1;
            }
        }
    }
    checks.record(
        "all-machine-agreement",
        MeasureValue::Count(all_agreements),
        "words where the verdict equals the no-a predicate, out of 8191",
        all_agreements == 8191 && all_total == 8191,
        format!("expected 8191 of {all_total}, got {all_agreements}"),
    );
    let all_states = all.minimize().state_count() as u64;
    checks.record(
        "all-machine-states",
        MeasureValue::Count(all_states),
        "states after minimization",
        all_states == 2,
        format!("expected 2, got {all_states}"),
    );

    // Check 10: the two tables are isomorphic and their bit encodings
    // minimize to the same size.
    match (&tables[0], &tables[1]) {
        (Some(t_table), Some(s_table)) => {
            let witness = tables_isomorphic(t_table, s_table);
            let preserved = witness
                .as_ref()
                .is_some_and(|w| w.preserves_answers(t_table, s_table));
            checks.record(
                "tables-isomorphic",
                MeasureValue::Flag(preserved),
                "an answer-preserving relabeling of one table onto the other exists",
                preserved,
                "no witness found".to_string(),
            );
            match (q_complexity(t_table), q_complexity(s_table)) {
                (Ok(t_record), Ok(s_record)) => {
                    let t_states = t_record.minimized_state_count as u64;
                    let s_states = s_record.minimized_state_count as u64;
                    checks.record(
                        "encoded-T-states",
                        MeasureValue::Count(t_states),
                        "minimized bit-encoded machine for the clock table",
                        true,
                        String::new(),
                    );
                    checks.record(
                        "encoded-S-states",
                        MeasureValue::Count(s_states),
                        "minimized bit-encoded machine for the idiom table",
                        t_states == s_states,
                        format!("expected {t_states} to match, got {s_states}"),
                    );
                }
                (t_result, s_result) => {
                    let detail = [t_result.err(), s_result.err()]
                        .into_iter()
                        .flatten()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join("; ");
                    checks.record(
                        "encoded-S-states",
                        MeasureValue::Text("error".to_string()),
                        "minimized bit-encoded machine for the idiom table",
                        false,
                        format!("encoding failed: {detail}"),
                    );
                }
            }
        }
        _ => {
            checks.record(
                "tables-isomorphic",
                MeasureValue::Text("error".to_string()),
                "an answer-preserving relabeling of one table onto the other exists",
                false,
                "one of the tables was not built".to_string(),
            );
        }
    }

    // Check 11: minimization is behavior-preserving and idempotent on
    // 1000 seeded random machines.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6d65616e);
    let mut minimize_ok = 0u64;
    for _ in 0..1000 {
        let machine = random_machine(&mut rng);
        let minimized = machine.minimize();
        let equivalent = machine.equivalent(&minimized).unwrap_or(false);
        let idempotent = minimized.minimize() == minimized;
        if equivalent && idempotent {
            minimize_ok += 1;
        }
    }
    checks.record(
        "random-minimize",
        MeasureValue::Count(minimize_ok),
        "seeded random machines (to 64 states, alphabet to 4) minimized equivalently and idempotently, out of 1000",
        minimize_ok == 1000,
        format!("expected 1000, got {minimize_ok}"),
    );

    // Check 12: profile estimates land in their decades.
    let (boris_low, boris_high) = profile_estimate(&boris_profile());
    checks.record(
        "story-dialogue-estimate",
        MeasureValue::Range(boris_low, boris_high),
        "estimate range for the story-dialogue profile, within 10^5..10^7",
        boris_low >= 100_000 && boris_high <= 10_000_000,
        format!("expected within 100000..10000000, got {boris_low}..{boris_high}"),
    );
    let (mincal_low, mincal_high) = profile_estimate(&mincal_profile());
    checks.record(
        "calendar-estimate",
        MeasureValue::Range(mincal_low, mincal_high),
        "estimate range for the calendar-assistant profile, below 10^4",
        mincal_high < 10_000,
        format!("expected high below 10000, got {mincal_low}..{mincal_high}"),
    );

    // Check 13: exact calendar answer-space size.
    let space = calendar_schema().answer_space_size();
    let space_value = match u64::try_from(&space) {
        Ok(v) => MeasureValue::Count(v),
        Err(_) => MeasureValue::Text(space.to_string()),
    };
    checks.record(
        "calendar-answer-space",
        space_value,
        "date and time slot values plus the decline answer",
        space.to_string() == "3721501",
        format!("expected 3721501, got {space}"),
    );

    checks.report.caveat(MINIMALITY_CAVEAT);
    (checks.report, checks.failures)
}

pub fn run(out: Output) -> Result<(), CliError> {
    let t = data_corpus("T")?;
    let s = data_corpus("S")?;
    let (report, failures) = report_for(&t, &s);
    super::print_report(&report, out);
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Check(format!(
            "checks failed — {}",
            failures.join("; ")
        )))
    }
}
