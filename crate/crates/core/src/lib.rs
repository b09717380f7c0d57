//! Meaning automata: machines that map (sentence, question) pairs to answers,
//! together with the size measures used to compare them.
//!
//! The crate is organized around a handful of machine classes and the
//! measures computed over them:
//!
//! * [`machine`] — generic table-driven multi-tape machines, Moore machines
//!   (with minimization and equivalence checking) and deterministic stack
//!   machines, each with a round-trippable text format.
//! * [`meaning`] — sentences, questions, answers and the question-answer
//!   table `M : S x Q -> A`, plus the complexity measures defined over a
//!   table (pair count, minimized state count, isomorphism).
//! * [`canonical`] — the named built-in machines: the yes/no comparison
//!   machine, the overgeneralizing comparator, the "what is" lookup
//!   machines, the quantifier automata for "all" and "most", the keyword
//!   chatbot model and the dialog-state constants.
//! * [`corpus`] — the built-in 24-sentence corpora `T` (clock times) and
//!   `S` (bare-noun idioms), question-set generators and corpus file I/O.
//! * [`estimate`] — calibrated heuristic estimators: iterated "what is"
//!   fact counts, interface answer-space sizes and task-profile ranges.

pub mod answer;
pub mod canonical;
pub mod corpus;
pub mod estimate;
pub mod machine;
pub mod meaning;

pub use answer::Answer;
pub use machine::moore::MooreMachine;
pub use machine::stack::StackMachine;
pub use machine::table::{TransitionRow, TransitionTable};
