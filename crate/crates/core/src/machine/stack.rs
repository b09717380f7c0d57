//! Deterministic stack machines over the input alphabet `{a, b}`.
//!
//! A [`StackMachine`] reads its input left to right, consulting at most one
//! rule per (state, input symbol, stack top) triple; rules may also fire on
//! the end-of-input marker. The stack holds `a`s and `b`s above a bottom
//! marker that is never popped. Acceptance is either by final state or by
//! the shape of the stack once the input is exhausted.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Errors from building, running or parsing a [`StackMachine`].
#[derive(Debug, Error, PartialEq, Eq)]
pub enum StackError {
    #[error("input symbol `{symbol}` is not `a` or `b`")]
    BadInputSymbol { symbol: char },
    #[error("rules may not push the bottom marker")]
    PushBottom,
    #[error("rules may not pop the bottom marker")]
    PopBottom,
    #[error("more than one rule for state `{state}`, input `{input}`, top `{top}`")]
    DuplicateRule {
        state: String,
        input: String,
        top: String,
    },
    #[error("accept state `{label}` does not appear in any rule")]
    UnknownAcceptState { label: String },
    #[error("word symbol `{symbol}` is not `a` or `b`")]
    AlphabetViolation { symbol: char },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Symbols that may appear on the stack.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StackSymbol {
    A,
    B,
    Bottom,
}

impl StackSymbol {
    fn as_str(self) -> &'static str {
        match self {
            StackSymbol::A => "a",
            StackSymbol::B => "b",
            StackSymbol::Bottom => "bottom",
        }
    }
}

impl fmt::Display for StackSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// What a rule does to the stack when it fires.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StackAction {
    Push(StackSymbol),
    Pop,
    Noop,
}

impl fmt::Display for StackAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StackAction::Push(sym) => write!(f, "push {sym}"),
            StackAction::Pop => f.write_str("pop"),
            StackAction::Noop => f.write_str("noop"),
        }
    }
}

/// One rule: in `state`, seeing `input` (`None` is the end-of-input
/// marker) with `top` on the stack, perform `action` and enter `next`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackRule {
    pub state: String,
    pub input: Option<char>,
    pub top: StackSymbol,
    pub action: StackAction,
    pub next: String,
}

impl StackRule {
    pub fn new(
        state: impl Into<String>,
        input: Option<char>,
        top: StackSymbol,
        action: StackAction,
        next: impl Into<String>,
    ) -> StackRule {
        StackRule {
            state: state.into(),
            input,
            top,
            action,
            next: next.into(),
        }
    }
}

/// When a finished run counts as accepting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AcceptCondition {
    /// The stack above the bottom marker is a nonempty run of `b`s.
    StackOnlyBs,
    /// The machine ends in one of these states.
    InState(BTreeSet<String>),
}

/// A deterministic pushdown machine over `{a, b}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackMachine {
    rules: Vec<StackRule>,
    start: String,
    accept: AcceptCondition,
}

impl StackMachine {
    pub fn new(
        rules: Vec<StackRule>,
        start: impl Into<String>,
        accept: AcceptCondition,
    ) -> Result<StackMachine, StackError> {
        for rule in &rules {
            if let Some(c) = rule.input {
                if c != 'a' && c != 'b' {
                    return Err(StackError::BadInputSymbol { symbol: c });
                }
            }
            if rule.action == StackAction::Push(StackSymbol::Bottom) {
                return Err(StackError::PushBottom);
            }
            if rule.top == StackSymbol::Bottom && rule.action == StackAction::Pop {
                return Err(StackError::PopBottom);
            }
        }
        let mut seen: BTreeSet<(&str, Option<char>, StackSymbol)> = BTreeSet::new();
        for rule in &rules {
            if !seen.insert((rule.state.as_str(), rule.input, rule.top)) {
                return Err(StackError::DuplicateRule {
                    state: rule.state.clone(),
                    input: rule.input.map(String::from).unwrap_or_else(|| "end".into()),
                    top: rule.top.to_string(),
                });
            }
        }
        let start = start.into();
        let machine = StackMachine {
            rules,
            start,
            accept,
        };
        if let AcceptCondition::InState(labels) = &machine.accept {
            let states = machine.states();
            for label in labels {
                if !states.contains(label) {
                    return Err(StackError::UnknownAcceptState {
                        label: label.clone(),
                    });
                }
            }
        }
        Ok(machine)
    }

    /// All distinct state labels.
    pub fn states(&self) -> BTreeSet<String> {
        let mut states: BTreeSet<String> = BTreeSet::new();
        states.insert(self.start.clone());
        for rule in &self.rules {
            states.insert(rule.state.clone());
            states.insert(rule.next.clone());
        }
        states
    }

    /// Number of states.
    pub fn state_count(&self) -> usize {
        self.states().len()
    }

    pub fn rules(&self) -> &[StackRule] {
        &self.rules
    }

    pub fn start_state(&self) -> &str {
        &self.start
    }

    pub fn accept_condition(&self) -> &AcceptCondition {
        &self.accept
    }

    /// Runs the machine on a word over `{a, b}` and reports acceptance.
    /// A configuration with no applicable rule rejects.
    pub fn run(&self, word: &str) -> Result<bool, StackError> {
        for c in word.chars() {
            if c != 'a' && c != 'b' {
                return Err(StackError::AlphabetViolation { symbol: c });
            }
        }
        let mut lookup: HashMap<(&str, Option<char>, StackSymbol), &StackRule> = HashMap::new();
        for rule in &self.rules {
            lookup.insert((rule.state.as_str(), rule.input, rule.top), rule);
        }

        let mut state = self.start.clone();
        let mut stack: Vec<StackSymbol> = vec![StackSymbol::Bottom];
        for c in word.chars() {
            let top = *stack.last().expect("bottom marker is never popped");
            let Some(rule) = lookup.get(&(state.as_str(), Some(c), top)) else {
                return Ok(false);
            };
            Self::apply(&mut stack, rule.action);
            state = rule.next.clone();
        }
        // End-of-input rules can only fire finitely often before the run is
        // declared dead: each state/stack-height pair may repeat only via a
        // push loop, which would grow the stack without bound.
        let mut budget = (self.state_count() + 1) * (stack.len() + 2);
        loop {
            let top = *stack.last().expect("bottom marker is never popped");
            let Some(rule) = lookup.get(&(state.as_str(), None, top)) else {
                break;
            };
            if budget == 0 {
                return Ok(false);
            }
            budget -= 1;
            Self::apply(&mut stack, rule.action);
            state = rule.next.clone();
        }

        Ok(match &self.accept {
            AcceptCondition::StackOnlyBs => {
                stack.len() > 1 && stack[1..].iter().all(|&s| s == StackSymbol::B)
            }
            AcceptCondition::InState(labels) => labels.contains(&state),
        })
    }

    fn apply(stack: &mut Vec<StackSymbol>, action: StackAction) {
        match action {
            StackAction::Push(sym) => stack.push(sym),
            StackAction::Pop => {
                if stack.len() > 1 {
                    stack.pop();
                }
            }
            StackAction::Noop => {}
        }
    }
}

impl fmt::Display for StackMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let accept = match &self.accept {
            AcceptCondition::StackOnlyBs => "stack-only-bs".to_string(),
            AcceptCondition::InState(labels) => {
                let labels: Vec<&str> = labels.iter().map(|s| s.as_str()).collect();
                format!("state:{}", labels.join(","))
            }
        };
        writeln!(f, "start={} accept={}", self.start, accept)?;
        for rule in &self.rules {
            let input = rule.input.map(String::from).unwrap_or_else(|| "end".into());
            writeln!(
                f,
                "{}\t{}\t{}\t{}\t{}",
                rule.state, input, rule.top, rule.action, rule.next
            )?;
        }
        Ok(())
    }
}

impl FromStr for StackMachine {
    type Err = StackError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let parse_err = |line: usize, message: &str| StackError::Parse {
            line,
            message: message.to_string(),
        };
        let mut lines = text.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "empty machine description"))?;
        let mut start = None;
        let mut accept = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| parse_err(1, "header fields must look like key=value"))?;
            match key {
                "start" => start = Some(value.to_string()),
                "accept" => {
                    accept = Some(if value == "stack-only-bs" {
                        AcceptCondition::StackOnlyBs
                    } else if let Some(labels) = value.strip_prefix("state:") {
                        AcceptCondition::InState(
                            labels
                                .split(',')
                                .filter(|l| !l.is_empty())
                                .map(|l| l.to_string())
                                .collect(),
                        )
                    } else {
                        return Err(parse_err(1, "accept must be stack-only-bs or state:..."));
                    })
                }
                _ => return Err(parse_err(1, "unknown header field")),
            }
        }
        let start = start.ok_or_else(|| parse_err(1, "header is missing start="))?;
        let accept = accept.ok_or_else(|| parse_err(1, "header is missing accept="))?;

        let mut rules = Vec::new();
        for (idx, line) in lines {
            let lineno = idx + 1;
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 5 {
                return Err(parse_err(
                    lineno,
                    "rule needs state, input, top, action and next state",
                ));
            }
            let input = match fields[1] {
                "end" => None,
                s if s.len() == 1 => s.chars().next(),
                _ => return Err(parse_err(lineno, "input must be a, b or end")),
            };
            let top = match fields[2] {
                "a" => StackSymbol::A,
                "b" => StackSymbol::B,
                "bottom" => StackSymbol::Bottom,
                _ => return Err(parse_err(lineno, "top must be a, b or bottom")),
            };
            let action = match fields[3] {
                "push a" => StackAction::Push(StackSymbol::A),
                "push b" => StackAction::Push(StackSymbol::B),
                "pop" => StackAction::Pop,
                "noop" => StackAction::Noop,
                _ => {
                    return Err(parse_err(
                        lineno,
                        "action must be push a, push b, pop or noop",
                    ))
                }
            };
            rules.push(StackRule {
                state: fields[0].to_string(),
                input,
                top,
                action,
                next: fields[4].to_string(),
            });
        }
        StackMachine::new(rules, start, accept)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Accepts words ending in state `even` after flipping on every `a`:
    /// i.e. words with an even number of `a`s. Exercises state-based accept.
    fn even_as_machine() -> StackMachine {
        let mut rules = Vec::new();
        for state in ["even", "odd"] {
            let flip = if state == "even" { "odd" } else { "even" };
            for top in [StackSymbol::A, StackSymbol::B, StackSymbol::Bottom] {
                rules.push(StackRule::new(
                    state,
                    Some('a'),
                    top,
                    StackAction::Noop,
                    flip,
                ));
                rules.push(StackRule::new(
                    state,
                    Some('b'),
                    top,
                    StackAction::Noop,
                    state,
                ));
            }
        }
        StackMachine::new(
            rules,
            "even",
            AcceptCondition::InState(["even".to_string()].into()),
        )
        .unwrap()
    }

    /// Pushes every symbol; accepts by stack shape. Used to exercise
    /// stack-based accept without canonical machines.
    fn pusher() -> StackMachine {
        let mut rules = Vec::new();
        for top in [StackSymbol::A, StackSymbol::B, StackSymbol::Bottom] {
            rules.push(StackRule::new(
                "s",
                Some('a'),
                top,
                StackAction::Push(StackSymbol::A),
                "s",
            ));
            rules.push(StackRule::new(
                "s",
                Some('b'),
                top,
                StackAction::Push(StackSymbol::B),
                "s",
            ));
        }
        StackMachine::new(rules, "s", AcceptCondition::StackOnlyBs).unwrap()
    }

    #[test]
    fn state_accept_condition() {
        let m = even_as_machine();
        assert!(m.run("").unwrap());
        assert!(m.run("aba").unwrap());
        assert!(!m.run("ab").unwrap());
        assert_eq!(m.state_count(), 2);
    }

    #[test]
    fn stack_accept_condition_wants_nonempty_all_bs() {
        let m = pusher();
        assert!(m.run("bbb").unwrap());
        assert!(!m.run("").unwrap());
        assert!(!m.run("ba").unwrap());
    }

    #[test]
    fn missing_rule_rejects() {
        let only_a = StackMachine::new(
            vec![StackRule::new(
                "s",
                Some('a'),
                StackSymbol::Bottom,
                StackAction::Noop,
                "s",
            )],
            "s",
            AcceptCondition::InState(["s".to_string()].into()),
        )
        .unwrap();
        assert!(only_a.run("a").unwrap());
        assert!(!only_a.run("b").unwrap());
    }

    #[test]
    fn end_marker_rules_fire_after_input() {
        // After the input, drain `a`s off the stack and accept on bottom.
        let mut rules = vec![
            StackRule::new("s", None, StackSymbol::A, StackAction::Pop, "s"),
            StackRule::new("s", None, StackSymbol::Bottom, StackAction::Noop, "done"),
        ];
        for top in [StackSymbol::A, StackSymbol::Bottom] {
            rules.push(StackRule::new(
                "s",
                Some('a'),
                top,
                StackAction::Push(StackSymbol::A),
                "s",
            ));
        }
        let m = StackMachine::new(
            rules,
            "s",
            AcceptCondition::InState(["done".to_string()].into()),
        )
        .unwrap();
        assert!(m.run("aaa").unwrap());
        assert_eq!(m.state_count(), 2);
    }

    #[test]
    fn foreign_word_symbols_are_an_error() {
        let err = pusher().run("abc").unwrap_err();
        assert_eq!(err, StackError::AlphabetViolation { symbol: 'c' });
    }

    #[test]
    fn bottom_marker_is_protected() {
        let err = StackMachine::new(
            vec![StackRule::new(
                "s",
                Some('a'),
                StackSymbol::Bottom,
                StackAction::Pop,
                "s",
            )],
            "s",
            AcceptCondition::StackOnlyBs,
        )
        .unwrap_err();
        assert_eq!(err, StackError::PopBottom);

        let err = StackMachine::new(
            vec![StackRule::new(
                "s",
                Some('a'),
                StackSymbol::A,
                StackAction::Push(StackSymbol::Bottom),
                "s",
            )],
            "s",
            AcceptCondition::StackOnlyBs,
        )
        .unwrap_err();
        assert_eq!(err, StackError::PushBottom);
    }

    #[test]
    fn conflicting_rules_are_rejected() {
        let err = StackMachine::new(
            vec![
                StackRule::new("s", Some('a'), StackSymbol::A, StackAction::Pop, "s"),
                StackRule::new("s", Some('a'), StackSymbol::A, StackAction::Noop, "s"),
            ],
            "s",
            AcceptCondition::StackOnlyBs,
        )
        .unwrap_err();
        assert!(matches!(err, StackError::DuplicateRule { .. }));
    }

    #[test]
    fn endless_end_marker_loops_reject_instead_of_hanging() {
        let m = StackMachine::new(
            vec![StackRule::new(
                "s",
                None,
                StackSymbol::Bottom,
                StackAction::Noop,
                "s",
            )],
            "s",
            AcceptCondition::InState(["s".to_string()].into()),
        )
        .unwrap();
        assert!(!m.run("").unwrap());
    }

    #[test]
    fn text_format_round_trips() {
        for machine in [even_as_machine(), pusher()] {
            let text = machine.to_string();
            let parsed: StackMachine = text.parse().unwrap();
            assert_eq!(parsed, machine);
            assert_eq!(parsed.to_string(), text);
        }
    }
}
