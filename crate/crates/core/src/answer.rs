//! Answers produced by meaning machines.

use std::fmt;
use std::str::FromStr;

/// The undefined-answer marker used in text formats and displays.
pub const UNDEFINED_MARK: &str = "\u{22a5}"; // ⊥

/// An answer to a question about a sentence.
///
/// Answers are either a concrete token (`yes`, `no`, `24`, ...) or the
/// distinguished undefined answer, written `⊥`, meaning the question does
/// not apply to the sentence. The undefined answer is a first-class value:
/// question extensions and machine outputs may produce it, and lookups into
/// a question-answer table default to it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Answer {
    /// The question has no defined answer for this sentence.
    Undefined,
    /// A concrete answer token.
    Token(String),
}

impl Answer {
    /// Builds an answer from a token, mapping the reserved `⊥` mark to
    /// [`Answer::Undefined`].
    pub fn token(tok: impl Into<String>) -> Answer {
        let tok = tok.into();
        if tok == UNDEFINED_MARK {
            Answer::Undefined
        } else {
            Answer::Token(tok)
        }
    }

    /// Returns `true` for the undefined answer.
    pub fn is_undefined(&self) -> bool {
        matches!(self, Answer::Undefined)
    }

    /// The answer as a display token; `⊥` for the undefined answer.
    pub fn as_str(&self) -> &str {
        match self {
            Answer::Undefined => UNDEFINED_MARK,
            Answer::Token(tok) => tok,
        }
    }
}

impl fmt::Display for Answer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Answer {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Answer::token(s))
    }
}

impl From<&str> for Answer {
    fn from(s: &str) -> Self {
        Answer::token(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undefined_round_trips_through_display() {
        let a: Answer = UNDEFINED_MARK.parse().unwrap();
        assert_eq!(a, Answer::Undefined);
        assert_eq!(a.to_string(), UNDEFINED_MARK);
        assert!(a.is_undefined());
    }

    #[test]
    fn token_round_trips_through_display() {
        let a = Answer::token("yes");
        assert_eq!(a, Answer::Token("yes".to_string()));
        assert_eq!(a.to_string(), "yes");
        assert!(!a.is_undefined());
    }

    #[test]
    fn reserved_mark_cannot_be_a_token() {
        assert_eq!(Answer::token(UNDEFINED_MARK), Answer::Undefined);
    }

    #[test]
    fn undefined_sorts_before_tokens() {
        let mut v = [Answer::token("a"), Answer::Undefined, Answer::token("z")];
        v.sort();
        assert_eq!(v[0], Answer::Undefined);
    }
}
