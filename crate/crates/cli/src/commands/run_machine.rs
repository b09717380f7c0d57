//! `run-machine`: run any named built-in machine on an input, or export
//! its text form with `--emit`. A run that halts — accepting or not —
//! exits 0; unknown machines and ill-formed inputs exit 2.

use meaning_automata::canonical::{
    all_machine, eliza_model, most_machine, overgeneralizing_comparator, what_is_machine_s,
    what_is_machine_t, yes_no_machine,
};
use meaning_automata::machine::table::{parse_tape, RunOutcome, TransitionTable};

use super::{CliError, Output};
use crate::report::{ComplexityReport, MeasureValue};

pub const MACHINE_NAMES: [&str; 7] = [
    "yesno-tm",
    "comparator",
    "whatis-T",
    "whatis-S",
    "all-fsa",
    "most-pda",
    "eliza-model",
];

fn unknown_machine(name: &str) -> CliError {
    CliError::Usage(format!(
        "unknown machine `{name}`; the machines are {}",
        MACHINE_NAMES.join(", ")
    ))
}

fn push_table_outcome(report: &mut ComplexityReport, outcome: &RunOutcome) {
    report.push(
        "accepted",
        MeasureValue::Flag(outcome.accepted),
        "halted in an accepting state",
    );
    let answer = match outcome.verdict() {
        Some(verdict) => verdict.to_string(),
        None => "\u{22a5}".to_string(),
    };
    report.push(
        "answer",
        MeasureValue::Text(answer),
        "verdict read off the output tape",
    );
    report.push(
        "steps",
        MeasureValue::Count(outcome.steps as u64),
        "head movements before halting",
    );
}

/// Splits a multi-tape input into exactly `expected` whitespace-separated
/// fields.
fn split_tapes(input: &str, expected: usize, machine: &str) -> Result<Vec<Vec<String>>, CliError> {
    let fields: Vec<&str> = input.split_whitespace().collect();
    if fields.len() != expected {
        return Err(CliError::Usage(format!(
            "{machine} reads {expected} tapes; give {expected} space-separated fields, got {}",
            fields.len()
        )));
    }
    Ok(fields.into_iter().map(parse_tape).collect())
}

fn run_table(
    machine: &TransitionTable,
    name: &str,
    input: &str,
) -> Result<ComplexityReport, CliError> {
    let tapes = split_tapes(input, machine.tape_count(), name)?;
    let outcome = machine.run(&tapes).map_err(usage_from_run)?;
    let mut report = ComplexityReport::new(format!("run of {name}"));
    push_table_outcome(&mut report, &outcome);
    Ok(report)
}

fn usage_from_run(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

pub fn run(name: &str, input: Option<&str>, emit: bool, out: Output) -> Result<(), CliError> {
    if emit {
        let text = match name {
            "yesno-tm" => yes_no_machine().to_string(),
            "comparator" => overgeneralizing_comparator().to_string(),
            "whatis-T" => what_is_machine_t().to_string(),
            "whatis-S" => what_is_machine_s().to_string(),
            "all-fsa" => all_machine().to_string(),
            "most-pda" => most_machine().to_string(),
            "eliza-model" => eliza_model().to_string(),
            other => return Err(unknown_machine(other)),
        };
        print!("{text}");
        return Ok(());
    }
    let input = input.ok_or_else(|| {
        CliError::Usage("give --input to run the machine, or --emit to export it".to_string())
    })?;
    let report = match name {
        "yesno-tm" => run_table(&yes_no_machine(), name, input)?,
        "comparator" => run_table(&overgeneralizing_comparator(), name, input)?,
        "whatis-T" | "whatis-S" => {
            let machine = if name == "whatis-T" {
                what_is_machine_t()
            } else {
                what_is_machine_s()
            };
            let token = input.trim();
            let answer = machine.answer_what_is(token);
            let mut report = ComplexityReport::new(format!("run of {name}"));
            report.push(
                "askable",
                MeasureValue::Flag(!answer.is_undefined()),
                "the token has a stored definition",
            );
            report.push(
                "answer",
                MeasureValue::Text(answer.to_string()),
                "one-token definition, or \u{22a5} when unknown",
            );
            report
        }
        "all-fsa" => {
            let machine = all_machine();
            let symbols: Vec<String> = input.chars().map(|c| c.to_string()).collect();
            let answer = machine.run(&symbols).map_err(usage_from_run)?;
            let mut report = ComplexityReport::new("run of all-fsa");
            report.push(
                "answer",
                MeasureValue::Text(answer.to_string()),
                "output of the state reached on the full word",
            );
            report.push(
                "steps",
                MeasureValue::Count(symbols.len() as u64),
                "symbols consumed",
            );
            report
        }
        "most-pda" => {
            let machine = most_machine();
            let accepted = machine.run(input.trim()).map_err(usage_from_run)?;
            let mut report = ComplexityReport::new("run of most-pda");
            report.push(
                "answer",
                MeasureValue::Text(if accepted { "accept" } else { "reject" }.to_string()),
                "stack condition after the whole word",
            );
            report.push(
                "steps",
                MeasureValue::Count(input.trim().len() as u64),
                "symbols consumed",
            );
            report
        }
        "eliza-model" => {
            let model = eliza_model();
            let token = input.trim().to_lowercase();
            let entry = model.keywords().iter().find(|k| k.keyword == token);
            let mut report = ComplexityReport::new("run of eliza-model");
            report.push(
                "keyword",
                MeasureValue::Flag(entry.is_some()),
                "the token is in the keyword list",
            );
            report.push(
                "structures",
                MeasureValue::Count(entry.map_or(0, |k| k.structure_count as u64)),
                "key-list structures consulted (0 means the default rule)",
            );
            report
        }
        other => return Err(unknown_machine(other)),
    };
    super::print_report(&report, out);
    Ok(())
}
