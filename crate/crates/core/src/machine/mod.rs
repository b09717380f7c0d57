//! Machine classes: table-driven multi-tape machines, Moore machines and
//! deterministic stack machines.
//!
//! All three share a few conventions: states and tape symbols are plain
//! strings, the blank symbol is `b`, and every machine type has a text
//! format whose parse and emit functions are mutual inverses.

pub mod moore;
pub mod stack;
pub mod table;
