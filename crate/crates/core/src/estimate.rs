//! Order-of-magnitude complexity estimates for question-answering tasks.
//!
//! Everything here is a calibrated heuristic, not a measurement: the goal
//! is to place a task's complexity within a decade or two, from a handful
//! of coarse counts (facts, constructions, question modes, dialogue
//! rounds). Estimates grow monotonically in every input and are exact
//! integers, so repeated runs agree byte for byte.
//!
//! Answer-space sizes for slot-structured domains (dates, times) are
//! computed exactly as big integers via [`SlotSchema`].

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use thiserror::Error;

/// Errors from estimate construction and profile parsing.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum EstimateError {
    #[error("rounds must be at least 1, got {rounds}")]
    InvalidRounds { rounds: u32 },
    #[error("tokens-per-fact must be positive")]
    InvalidTokensPerFact,
    #[error("fact `{head}` has an empty body")]
    EmptyFactBody { head: String },
    #[error("slot range {lo}..={hi} is empty")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("unknown question mode `{mode}`")]
    UnknownMode { mode: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Working figure for how many tokens one stored fact occupies.
pub const DEFAULT_TOKENS_PER_FACT: u64 = 10;

/// Working figure for how many words of running text yield one fact.
pub const WORDS_PER_FACT: u64 = 10;

/// Fraction of a closed vocabulary's derivable facts that iteration
/// actually reaches per round, on average.
pub const CLOSED_VOCABULARY_CLOSURE_FACTOR: f64 = 0.625;

/// How many facts a text of `words` words is worth, to the nearest fact.
pub fn word_to_fact_estimate(words: u64) -> u64 {
    (words + WORDS_PER_FACT / 2) / WORDS_PER_FACT
}

/// Estimated token cost of answering a what-is question and then asking
/// what-is of every term the answer introduced, `rounds` times over.
///
/// With an open vocabulary each round multiplies the frontier by
/// `tokens_per_fact`; with a closed one the chase saturates and the cost
/// stays near the seed times the round count.
pub fn iterated_what_is_estimate(
    seed_terms: u64,
    rounds: u32,
    tokens_per_fact: u64,
    open_vocabulary: bool,
) -> Result<u64, EstimateError> {
    if rounds == 0 {
        return Err(EstimateError::InvalidRounds { rounds });
    }
    if tokens_per_fact == 0 {
        return Err(EstimateError::InvalidTokensPerFact);
    }
    if open_vocabulary {
        let mut total: u128 = 0;
        let mut frontier: u128 = 1;
        for _ in 0..rounds {
            total = total.saturating_add(u128::from(seed_terms).saturating_mul(frontier));
            frontier = frontier.saturating_mul(u128::from(tokens_per_fact));
        }
        Ok(u64::try_from(total).unwrap_or(u64::MAX))
    } else {
        let raw = seed_terms as f64 * rounds as f64 * CLOSED_VOCABULARY_CLOSURE_FACTOR;
        Ok(raw.round() as u64)
    }
}

/// A head term with the terms its stored definition mentions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact {
    pub head: String,
    pub body: Vec<String>,
}

/// A store of facts with a fixed per-fact token cost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactBase {
    facts: Vec<Fact>,
    tokens_per_fact: u64,
}

impl FactBase {
    pub fn new(facts: Vec<Fact>, tokens_per_fact: u64) -> Result<FactBase, EstimateError> {
        if tokens_per_fact == 0 {
            return Err(EstimateError::InvalidTokensPerFact);
        }
        for fact in &facts {
            if fact.body.is_empty() {
                return Err(EstimateError::EmptyFactBody {
                    head: fact.head.clone(),
                });
            }
        }
        Ok(FactBase {
            facts,
            tokens_per_fact,
        })
    }

    pub fn fact_count(&self) -> u64 {
        self.facts.len() as u64
    }

    pub fn tokens_per_fact(&self) -> u64 {
        self.tokens_per_fact
    }

    /// Token cost of reciting the whole store once.
    pub fn token_budget(&self) -> u64 {
        self.fact_count().saturating_mul(self.tokens_per_fact)
    }

    pub fn facts(&self) -> &[Fact] {
        &self.facts
    }
}

/// One independent dimension of a structured answer, with its exact
/// number of possible values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slot {
    pub name: String,
    pub cardinality: BigUint,
}

impl Slot {
    /// A slot whose values are tuples drawn from the given inclusive
    /// ranges; its cardinality is the product of the range sizes.
    pub fn from_ranges(name: &str, ranges: &[(u64, u64)]) -> Result<Slot, EstimateError> {
        let mut cardinality = BigUint::from(1u32);
        for &(lo, hi) in ranges {
            if lo > hi {
                return Err(EstimateError::InvalidRange { lo, hi });
            }
            cardinality *= BigUint::from(hi - lo + 1);
        }
        Ok(Slot {
            name: name.to_string(),
            cardinality,
        })
    }
}

/// A set of answer slots; an answer fills exactly one slot or declines.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SlotSchema {
    slots: Vec<Slot>,
}

impl SlotSchema {
    pub fn new(slots: Vec<Slot>) -> SlotSchema {
        SlotSchema { slots }
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    /// The schema answering questions of either component schema.
    pub fn union(&self, other: &SlotSchema) -> SlotSchema {
        let mut slots = self.slots.clone();
        slots.extend(other.slots.iter().cloned());
        SlotSchema { slots }
    }

    /// Exact number of distinct answers: one per slot value, plus the
    /// shared decline-to-answer option.
    pub fn answer_space_size(&self) -> BigUint {
        let mut total = BigUint::from(1u32);
        for slot in &self.slots {
            total += &slot.cardinality;
        }
        total
    }
}

/// The schema of a scheduling assistant that answers date and time
/// questions: dates are month/day/year triples (years up to 10000) and
/// times are minute-resolution clock readings.
pub fn calendar_schema() -> SlotSchema {
    let date = Slot::from_ranges("date", &[(1, 12), (1, 31), (1, 10000)])
        .expect("date ranges are nonempty");
    let time = Slot::from_ranges("time", &[(0, 24), (0, 59)]).expect("time ranges are nonempty");
    SlotSchema::new(vec![date, time])
}

/// The kinds of question a task is expected to field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum QuestionMode {
    YesNo,
    WhatIs,
    IteratedWhatIs,
    IteratedWhy,
    Alternative,
}

impl QuestionMode {
    /// Whether the mode chases answers with follow-up questions.
    pub fn is_iterated(&self) -> bool {
        matches!(
            self,
            QuestionMode::IteratedWhatIs | QuestionMode::IteratedWhy
        )
    }
}

impl fmt::Display for QuestionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuestionMode::YesNo => "yes-no",
            QuestionMode::WhatIs => "what-is",
            QuestionMode::IteratedWhatIs => "iterated-what-is",
            QuestionMode::IteratedWhy => "iterated-why",
            QuestionMode::Alternative => "alternative",
        })
    }
}

impl FromStr for QuestionMode {
    type Err = EstimateError;

    fn from_str(s: &str) -> Result<QuestionMode, EstimateError> {
        match s.trim() {
            "yes-no" => Ok(QuestionMode::YesNo),
            "what-is" => Ok(QuestionMode::WhatIs),
            "iterated-what-is" => Ok(QuestionMode::IteratedWhatIs),
            "iterated-why" => Ok(QuestionMode::IteratedWhy),
            "alternative" => Ok(QuestionMode::Alternative),
            other => Err(EstimateError::UnknownMode {
                mode: other.to_string(),
            }),
        }
    }
}

/// Coarse description of a question-answering task, sufficient for an
/// order-of-magnitude complexity estimate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskProfile {
    pub vocabulary_size: u64,
    pub fact_count: u64,
    pub construction_count: u64,
    pub question_modes: BTreeSet<QuestionMode>,
    pub rounds: u32,
}

impl TaskProfile {
    pub fn new(
        vocabulary_size: u64,
        fact_count: u64,
        construction_count: u64,
        question_modes: BTreeSet<QuestionMode>,
        rounds: u32,
    ) -> Result<TaskProfile, EstimateError> {
        if rounds == 0 {
            return Err(EstimateError::InvalidRounds { rounds });
        }
        Ok(TaskProfile {
            vocabulary_size,
            fact_count,
            construction_count,
            question_modes,
            rounds,
        })
    }
}

/// Profile of a story-understanding dialogue system: a large fact store
/// probed by chained what-is and why questions over several rounds.
pub fn boris_profile() -> TaskProfile {
    TaskProfile::new(
        350,
        500,
        0,
        BTreeSet::from([QuestionMode::IteratedWhatIs, QuestionMode::IteratedWhy]),
        3,
    )
    .expect("rounds is positive")
}

/// Profile of a single-shot calendar assistant: facts and constructions
/// answered directly, no follow-up chasing.
pub fn mincal_profile() -> TaskProfile {
    TaskProfile::new(
        350,
        200,
        100,
        BTreeSet::from([QuestionMode::YesNo, QuestionMode::WhatIs]),
        1,
    )
    .expect("rounds is positive")
}

fn clamp_u64(v: u128) -> u64 {
    u64::try_from(v).unwrap_or(u64::MAX)
}

/// Low and high complexity estimates for a task profile.
///
/// The base cost counts facts and constructions once. Iterated question
/// modes compound it: each extra round multiplies the frontier by the
/// per-fact token cost, once per iterated mode at the low end and
/// jointly at the high end.
pub fn profile_estimate(profile: &TaskProfile) -> (u64, u64) {
    let base = u128::from(profile.fact_count) + u128::from(profile.construction_count);
    let iterated_modes = profile
        .question_modes
        .iter()
        .filter(|m| m.is_iterated())
        .count() as u32;
    let extra_rounds = profile.rounds.saturating_sub(1);
    if base == 0 {
        return (0, 0);
    }
    if iterated_modes == 0 || extra_rounds == 0 {
        let flat = clamp_u64(base);
        return (flat, flat);
    }
    let tokens = u128::from(DEFAULT_TOKENS_PER_FACT);
    let low = base
        .saturating_mul(u128::from(iterated_modes))
        .saturating_mul(tokens.saturating_pow(extra_rounds));
    let high = base.saturating_mul(tokens.saturating_pow(iterated_modes * extra_rounds));
    (clamp_u64(low), clamp_u64(high))
}

/// Parses a task profile from `key = value` lines: `vocabulary_size`,
/// `fact_count`, `construction_count`, `rounds`, and `modes` (a
/// comma-separated list of question mode names). `#` starts a comment.
pub fn parse_profile(text: &str) -> Result<TaskProfile, EstimateError> {
    let parse_err = |line: usize, message: String| EstimateError::Parse { line, message };
    let mut vocabulary_size = 0u64;
    let mut fact_count = 0u64;
    let mut construction_count = 0u64;
    let mut rounds = 1u32;
    let mut question_modes = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(parse_err(
                lineno,
                format!("expected key = value, got `{line}`"),
            ));
        };
        let key = key.trim();
        let value = value.trim();
        let number = |value: &str| {
            value
                .parse::<u64>()
                .map_err(|_| parse_err(lineno, format!("`{key}` needs a nonnegative integer")))
        };
        match key {
            "vocabulary_size" => vocabulary_size = number(value)?,
            "fact_count" => fact_count = number(value)?,
            "construction_count" => construction_count = number(value)?,
            "rounds" => {
                rounds = u32::try_from(number(value)?)
                    .map_err(|_| parse_err(lineno, "`rounds` is too large".to_string()))?;
            }
            "modes" => {
                for mode in value.split(',') {
                    question_modes.insert(mode.parse::<QuestionMode>()?);
                }
            }
            other => {
                return Err(parse_err(lineno, format!("unknown key `{other}`")));
            }
        }
    }
    TaskProfile::new(
        vocabulary_size,
        fact_count,
        construction_count,
        question_modes,
        rounds,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn closed_vocabulary_chase_stays_near_the_seed() {
        let estimate = iterated_what_is_estimate(16, 2, DEFAULT_TOKENS_PER_FACT, false).unwrap();
        assert_eq!(estimate, 20);
        assert!((16..=24).contains(&estimate));
    }

    #[test]
    fn open_vocabulary_chase_compounds_per_round() {
        let estimate = iterated_what_is_estimate(24, 2, DEFAULT_TOKENS_PER_FACT, true).unwrap();
        assert_eq!(estimate, 264);
        assert!((200..=300).contains(&estimate));
    }

    #[test]
    fn one_round_open_chase_is_just_the_seed() {
        assert_eq!(
            iterated_what_is_estimate(42, 1, DEFAULT_TOKENS_PER_FACT, true).unwrap(),
            42
        );
    }

    #[test]
    fn zero_rounds_and_zero_token_costs_are_rejected() {
        assert_eq!(
            iterated_what_is_estimate(5, 0, 10, true).unwrap_err(),
            EstimateError::InvalidRounds { rounds: 0 }
        );
        assert_eq!(
            iterated_what_is_estimate(5, 2, 0, true).unwrap_err(),
            EstimateError::InvalidTokensPerFact
        );
    }

    #[test]
    fn word_counts_round_to_the_nearest_fact() {
        assert_eq!(word_to_fact_estimate(0), 0);
        assert_eq!(word_to_fact_estimate(4), 0);
        assert_eq!(word_to_fact_estimate(5), 1);
        assert_eq!(word_to_fact_estimate(10), 1);
        assert_eq!(word_to_fact_estimate(350), 35);
    }

    #[test]
    fn fact_bases_reject_empty_bodies_and_zero_costs() {
        let fact = |head: &str, body: &[&str]| Fact {
            head: head.to_string(),
            body: body.iter().map(|t| t.to_string()).collect(),
        };
        let base = FactBase::new(vec![fact("two", &["one", "plus", "one"])], 10).unwrap();
        assert_eq!(base.fact_count(), 1);
        assert_eq!(base.token_budget(), 10);
        assert_eq!(
            FactBase::new(vec![fact("two", &[])], 10).unwrap_err(),
            EstimateError::EmptyFactBody {
                head: "two".to_string()
            }
        );
        assert_eq!(
            FactBase::new(vec![], 0).unwrap_err(),
            EstimateError::InvalidTokensPerFact
        );
    }

    #[test]
    fn calendar_answer_space_is_exact() {
        let schema = calendar_schema();
        assert_eq!(schema.answer_space_size(), BigUint::from(3_721_501u64));
    }

    #[test]
    fn answer_space_counts_each_slot_plus_decline() {
        let empty = SlotSchema::default();
        assert_eq!(empty.answer_space_size(), BigUint::from(1u32));
        let yes_no = SlotSchema::new(vec![Slot::from_ranges("truth", &[(1, 2)]).unwrap()]);
        assert_eq!(yes_no.answer_space_size(), BigUint::from(3u32));
    }

    #[test]
    fn union_adds_sizes_minus_the_shared_decline() {
        let a = calendar_schema();
        let b = SlotSchema::new(vec![Slot::from_ranges("truth", &[(1, 2)]).unwrap()]);
        let both = a.union(&b);
        assert_eq!(
            both.answer_space_size(),
            a.answer_space_size() + b.answer_space_size() - BigUint::from(1u32)
        );
    }

    #[test]
    fn empty_slot_ranges_are_rejected() {
        assert_eq!(
            Slot::from_ranges("bad", &[(3, 2)]).unwrap_err(),
            EstimateError::InvalidRange { lo: 3, hi: 2 }
        );
    }

    #[test]
    fn question_modes_round_trip_through_their_names() {
        let modes = [
            QuestionMode::YesNo,
            QuestionMode::WhatIs,
            QuestionMode::IteratedWhatIs,
            QuestionMode::IteratedWhy,
            QuestionMode::Alternative,
        ];
        for mode in modes {
            assert_eq!(mode.to_string().parse::<QuestionMode>().unwrap(), mode);
        }
        assert!(matches!(
            "sideways".parse::<QuestionMode>(),
            Err(EstimateError::UnknownMode { .. })
        ));
    }

    #[test]
    fn story_dialogue_profile_lands_between_1e5_and_1e7() {
        let (low, high) = profile_estimate(&boris_profile());
        assert_eq!(low, 100_000);
        assert_eq!(high, 5_000_000);
        assert!(low >= 100_000 && high <= 10_000_000);
    }

    #[test]
    fn calendar_profile_stays_under_1e4() {
        let (low, high) = profile_estimate(&mincal_profile());
        assert_eq!((low, high), (300, 300));
        assert!(high < 10_000);
    }

    #[test]
    fn empty_profiles_estimate_to_zero() {
        let profile = TaskProfile::new(100, 0, 0, BTreeSet::new(), 5).unwrap();
        assert_eq!(profile_estimate(&profile), (0, 0));
    }

    #[test]
    fn single_round_profiles_are_flat_even_with_iterated_modes() {
        let profile =
            TaskProfile::new(100, 40, 2, BTreeSet::from([QuestionMode::IteratedWhy]), 1).unwrap();
        assert_eq!(profile_estimate(&profile), (42, 42));
    }

    #[test]
    fn profiles_parse_from_key_value_text() {
        let text = "# story system\nvocabulary_size = 350\nfact_count = 500\n\
                    construction_count = 0\nmodes = iterated-what-is, iterated-why\nrounds = 3\n";
        assert_eq!(parse_profile(text).unwrap(), boris_profile());
    }

    #[test]
    fn profile_parse_errors_carry_line_numbers() {
        assert_eq!(
            parse_profile("fact_count = ten\n").unwrap_err(),
            EstimateError::Parse {
                line: 1,
                message: "`fact_count` needs a nonnegative integer".to_string()
            }
        );
        assert!(matches!(
            parse_profile("shape = round\n").unwrap_err(),
            EstimateError::Parse { line: 1, .. }
        ));
        assert!(matches!(
            parse_profile("modes = upside-down\n").unwrap_err(),
            EstimateError::UnknownMode { .. }
        ));
        assert_eq!(
            parse_profile("rounds = 0\n").unwrap_err(),
            EstimateError::InvalidRounds { rounds: 0 }
        );
    }

    proptest! {
        #[test]
        fn estimates_grow_with_seed_terms(
            seed in 0u64..1000,
            extra in 1u64..100,
            rounds in 1u32..6,
            open in proptest::bool::ANY,
        ) {
            let small = iterated_what_is_estimate(seed, rounds, 10, open).unwrap();
            let large = iterated_what_is_estimate(seed + extra, rounds, 10, open).unwrap();
            prop_assert!(small <= large);
        }

        #[test]
        fn estimates_grow_with_rounds(
            seed in 1u64..1000,
            rounds in 1u32..6,
            open in proptest::bool::ANY,
        ) {
            let fewer = iterated_what_is_estimate(seed, rounds, 10, open).unwrap();
            let more = iterated_what_is_estimate(seed, rounds + 1, 10, open).unwrap();
            prop_assert!(fewer <= more);
        }

        #[test]
        fn profile_low_never_exceeds_high(
            facts in 0u64..10_000,
            constructions in 0u64..10_000,
            rounds in 1u32..5,
            with_what_is in proptest::bool::ANY,
            with_why in proptest::bool::ANY,
        ) {
            let mut modes = BTreeSet::from([QuestionMode::YesNo]);
            if with_what_is {
                modes.insert(QuestionMode::IteratedWhatIs);
            }
            if with_why {
                modes.insert(QuestionMode::IteratedWhy);
            }
            let profile = TaskProfile::new(100, facts, constructions, modes, rounds).unwrap();
            let (low, high) = profile_estimate(&profile);
            prop_assert!(low <= high);
        }
    }
}
