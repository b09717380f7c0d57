//! Named built-in machines and constants.
//!
//! Everything here is a fixed construction: the 3-read-tape yes/no
//! comparison machine and its overgeneralizing 2-tape variant, the index
//! and clock-time encodings they operate on, the "what is" lookup machines
//! for the two built-in corpora, the quantifier automata for "all" and
//! "most", a size model of a keyword-matching chatbot, and two dialog-state
//! constants. The constructors are pure and always return the same value.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::answer::Answer;
use crate::corpus::BARE_NOUNS;
use crate::machine::moore::{MooreMachine, MooreState};
use crate::machine::stack::{AcceptCondition, StackAction, StackMachine, StackRule, StackSymbol};
use crate::machine::table::{TransitionRow, TransitionTable, BLANK, NO_MARK};

/// Errors from the fixed constructions and encodings.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CanonicalError {
    #[error("hour {hour} is outside 1..=12")]
    HourOutOfRange { hour: u32 },
    #[error("index {index} is outside 1..=32")]
    IndexOutOfRange { index: u32 },
    #[error("definition for `{token}` must be a single nonempty token")]
    BadDefinition { token: String },
    #[error("keyword `{keyword}` has {count} key-list structures; 1 or 2 allowed")]
    StructureCountOutOfRange { keyword: String, count: u32 },
    #[error("the keyword model requires a default rule")]
    MissingDefaultRule,
}

/// Number of bits in the fixed-width index encoding.
pub const INDEX_BITS: usize = 5;

/// Half-day marker for clock times.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Meridiem {
    Am,
    Pm,
}

impl fmt::Display for Meridiem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Meridiem::Am => "am",
            Meridiem::Pm => "pm",
        })
    }
}

/// Maps a 12-hour clock time to its index on the 24-hour scale: am hours
/// map to themselves and pm hours to hour+12, so `1 pm` is 13. The rule is
/// applied literally, which sends `12 pm` to 24.
pub fn canonicalize_time(hour: u32, meridiem: Meridiem) -> Result<u32, CanonicalError> {
    if !(1..=12).contains(&hour) {
        return Err(CanonicalError::HourOutOfRange { hour });
    }
    Ok(match meridiem {
        Meridiem::Am => hour,
        Meridiem::Pm => hour + 12,
    })
}

/// Encodes an index from 1..=32 as a 5-character bit string: the binary
/// digits of `index - 1`, least significant bit first. Index 1 is `00000`.
pub fn encode_index(index: u32) -> Result<String, CanonicalError> {
    if !(1..=32).contains(&index) {
        return Err(CanonicalError::IndexOutOfRange { index });
    }
    let value = index - 1;
    Ok((0..INDEX_BITS)
        .map(|bit| if value >> bit & 1 == 1 { '1' } else { '0' })
        .collect())
}

/// The counter tape matching the fixed 5-bit index encoding: five `1`s.
pub fn counter_tape() -> String {
    "1".repeat(INDEX_BITS)
}

/// The 3-read-tape yes/no machine: scans two 5-bit index encodings against
/// a counter tape of five `1`s, writing blanks while the bits agree and
/// `no` where they differ, and accepts when all three tapes are exhausted.
/// Its canonical printed form is a 6-row, 5-column table, so its table
/// size is 30.
pub fn yes_no_machine() -> TransitionTable {
    TransitionTable::new(
        3,
        vec![
            TransitionRow::new("1", &["1", "1", "1"], BLANK, "1"),
            TransitionRow::new("1", &["0", "0", "1"], BLANK, "1"),
            TransitionRow::new("1", &["1", "0", "1"], NO_MARK, "1"),
            TransitionRow::new("1", &["0", "1", "1"], NO_MARK, "1"),
            TransitionRow::new("1", &[BLANK, BLANK, BLANK], BLANK, "acc"),
        ],
        ["acc".to_string()],
        6,
        5,
    )
    .expect("fixed machine is well-formed")
}

/// The 2-read-tape comparator: like [`yes_no_machine`] but with no counter
/// tape, so it compares bit strings of any equal length. On the 24 index
/// encodings it agrees with the yes/no machine; beyond them it still
/// accepts any matched pair. Its canonical printed form is a 5-row,
/// 5-column table, so its table size is 25 rather than 30.
pub fn overgeneralizing_comparator() -> TransitionTable {
    TransitionTable::new(
        2,
        vec![
            TransitionRow::new("1", &["1", "1"], BLANK, "1"),
            TransitionRow::new("1", &["0", "0"], BLANK, "1"),
            TransitionRow::new("1", &["1", "0"], NO_MARK, "1"),
            TransitionRow::new("1", &["0", "1"], NO_MARK, "1"),
            TransitionRow::new("1", &[BLANK, BLANK], BLANK, "acc"),
        ],
        ["acc".to_string()],
        5,
        5,
    )
    .expect("fixed machine is well-formed")
}

/// A lookup machine answering `what is u` with a one-token definition for
/// every askable token, and `⊥` for everything else. Its size measure is
/// the number of askable tokens.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WhatIsMachine {
    definitions: BTreeMap<String, String>,
}

impl WhatIsMachine {
    /// Builds the machine from a token → definition map. Definitions must
    /// be single nonempty tokens (no whitespace).
    pub fn new(definitions: BTreeMap<String, String>) -> Result<WhatIsMachine, CanonicalError> {
        for (token, def) in &definitions {
            if def.is_empty() || def.contains(char::is_whitespace) {
                return Err(CanonicalError::BadDefinition {
                    token: token.clone(),
                });
            }
        }
        Ok(WhatIsMachine { definitions })
    }

    /// The tokens the machine can define.
    pub fn askable_tokens(&self) -> impl Iterator<Item = &str> {
        self.definitions.keys().map(|k| k.as_str())
    }

    /// The size measure: one definition entry per askable token.
    pub fn what_is_complexity(&self) -> usize {
        self.definitions.len()
    }

    /// The definition of `token`, or `⊥` if the token is not askable.
    pub fn answer_what_is(&self, token: &str) -> Answer {
        match self.definitions.get(token) {
            Some(def) => Answer::token(def.clone()),
            None => Answer::Undefined,
        }
    }
}

impl fmt::Display for WhatIsMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (token, def) in &self.definitions {
            writeln!(f, "{token}\t{def}")?;
        }
        Ok(())
    }
}

const NUMERAL_DEFINITIONS: [&str; 12] = [
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "eleven",
    "twelve",
];

/// One-token glosses for the bare nouns of the idiom corpus, in the same
/// order as [`BARE_NOUNS`].
const NOUN_DEFINITIONS: [&str; 24] = [
    "morning-meal",
    "midday-meal",
    "evening-meal",
    "lessons",
    "labor",
    "repose",
    "comfort",
    "freedom",
    "calm",
    "ocean",
    "dwelling",
    "worship",
    "studies",
    "tribunal",
    "settlement",
    "trading",
    "nearby",
    "food",
    "pasture",
    "cricket",
    "recreation",
    "doubt",
    "combat",
    "era",
];

/// The lookup machine for the clock-time corpus: the twelve numerals plus
/// `the-meeting`, `is`, `am` and `pm` are askable — 16 entries in all.
pub fn what_is_machine_t() -> WhatIsMachine {
    let mut definitions = BTreeMap::new();
    for (i, def) in NUMERAL_DEFINITIONS.iter().enumerate() {
        definitions.insert((i + 1).to_string(), def.to_string());
    }
    definitions.insert("the-meeting".to_string(), "appointment".to_string());
    definitions.insert("is".to_string(), "copula".to_string());
    definitions.insert("am".to_string(), "morning".to_string());
    definitions.insert("pm".to_string(), "afternoon".to_string());
    WhatIsMachine::new(definitions).expect("fixed definitions are well-formed")
}

/// The lookup machine for the idiom corpus: the 24 bare nouns plus `is`
/// and `john` are askable — 26 entries in all.
pub fn what_is_machine_s() -> WhatIsMachine {
    let mut definitions = BTreeMap::new();
    for (noun, def) in BARE_NOUNS.iter().zip(NOUN_DEFINITIONS.iter()) {
        definitions.insert(noun.to_string(), def.to_string());
    }
    definitions.insert("is".to_string(), "copula".to_string());
    definitions.insert("john".to_string(), "person".to_string());
    WhatIsMachine::new(definitions).expect("fixed definitions are well-formed")
}

/// The 2-state machine computing `all A are B` over enumeration words:
/// each `a` codes an element of A outside B, each `b` one inside. It
/// answers yes exactly when no `a` has been seen.
pub fn all_machine() -> MooreMachine {
    MooreMachine::new(
        vec![
            MooreState::new("ok", Answer::token("yes"), &[("a", "seen-a"), ("b", "ok")]),
            MooreState::new(
                "seen-a",
                Answer::token("no"),
                &[("a", "seen-a"), ("b", "seen-a")],
            ),
        ],
        "ok",
    )
    .expect("fixed machine is well-formed")
}

/// The stack machine computing `most A are B` by cancellation: matching
/// `a`s and `b`s cancel against the stack, and the word is accepted when
/// only `b`s remain above the bottom marker — that is, when the `b`s
/// strictly outnumber the `a`s.
pub fn most_machine() -> StackMachine {
    let rules = vec![
        StackRule::new(
            "scan",
            Some('a'),
            StackSymbol::Bottom,
            StackAction::Push(StackSymbol::A),
            "scan",
        ),
        StackRule::new(
            "scan",
            Some('a'),
            StackSymbol::A,
            StackAction::Push(StackSymbol::A),
            "scan",
        ),
        StackRule::new("scan", Some('a'), StackSymbol::B, StackAction::Pop, "scan"),
        StackRule::new(
            "scan",
            Some('b'),
            StackSymbol::Bottom,
            StackAction::Push(StackSymbol::B),
            "scan",
        ),
        StackRule::new(
            "scan",
            Some('b'),
            StackSymbol::B,
            StackAction::Push(StackSymbol::B),
            "scan",
        ),
        StackRule::new("scan", Some('b'), StackSymbol::A, StackAction::Pop, "scan"),
    ];
    StackMachine::new(rules, "scan", AcceptCondition::StackOnlyBs)
        .expect("fixed machine is well-formed")
}

/// One keyword of the chatbot model with its number of key-list structures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeywordEntry {
    pub keyword: String,
    pub structure_count: u32,
}

/// A size model of a keyword-matching chatbot: a list of keywords, each
/// with one or two key-list structures, a control mechanism with a fixed
/// number of states, and a default rule for when no keyword matches.
/// Only the sizes matter here; the model holds no response text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElizaModel {
    keywords: Vec<KeywordEntry>,
    control_state_count: u32,
    default_rule: bool,
}

impl ElizaModel {
    pub fn new(
        keywords: Vec<KeywordEntry>,
        control_state_count: u32,
        default_rule: bool,
    ) -> Result<ElizaModel, CanonicalError> {
        for entry in &keywords {
            if !(1..=2).contains(&entry.structure_count) {
                return Err(CanonicalError::StructureCountOutOfRange {
                    keyword: entry.keyword.clone(),
                    count: entry.structure_count,
                });
            }
        }
        if !default_rule {
            return Err(CanonicalError::MissingDefaultRule);
        }
        Ok(ElizaModel {
            keywords,
            control_state_count,
            default_rule,
        })
    }

    pub fn keywords(&self) -> &[KeywordEntry] {
        &self.keywords
    }

    pub fn control_state_count(&self) -> u32 {
        self.control_state_count
    }

    /// The question-answering size measure of the model: the total number
    /// of key-list structures plus the control states.
    pub fn q_complexity(&self) -> u64 {
        let structures: u64 = self
            .keywords
            .iter()
            .map(|k| u64::from(k.structure_count))
            .sum();
        structures + u64::from(self.control_state_count)
    }
}

impl fmt::Display for ElizaModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "control-states={} default-rule={}",
            self.control_state_count,
            if self.default_rule {
                "present"
            } else {
                "absent"
            }
        )?;
        for entry in &self.keywords {
            writeln!(f, "{}\t{}", entry.keyword, entry.structure_count)?;
        }
        Ok(())
    }
}

const ELIZA_KEYWORDS: [&str; 50] = [
    "alike",
    "always",
    "am",
    "are",
    "because",
    "believe",
    "can",
    "cant",
    "certainly",
    "computer",
    "deutsch",
    "dream",
    "dreams",
    "else",
    "everybody",
    "everyone",
    "father",
    "feel",
    "francais",
    "friend",
    "hello",
    "how",
    "i",
    "if",
    "im",
    "machine",
    "maybe",
    "me",
    "mother",
    "my",
    "name",
    "no",
    "nobody",
    "noone",
    "perhaps",
    "problem",
    "remember",
    "sad",
    "same",
    "sorry",
    "think",
    "unhappy",
    "was",
    "we",
    "what",
    "when",
    "why",
    "wish",
    "yes",
    "you",
];

/// The built-in chatbot size model: 50 keywords with 2 key-list structures
/// each and an 18-state control mechanism, for a Q-complexity of 118.
pub fn eliza_model() -> ElizaModel {
    let keywords = ELIZA_KEYWORDS
        .iter()
        .map(|k| KeywordEntry {
            keyword: k.to_string(),
            structure_count: 2,
        })
        .collect();
    ElizaModel::new(keywords, 18, true).expect("fixed model is well-formed")
}

/// Fixed dialog-state constants: the 9-state conversation-for-action
/// model and the 18 basic dialog control acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DialogConstants {
    pub conversation_for_action_states: u32,
    pub bunt_dialog_acts: u32,
}

pub fn dialog_constants() -> DialogConstants {
    DialogConstants {
        conversation_for_action_states: 9,
        bunt_dialog_acts: 18,
    }
}
