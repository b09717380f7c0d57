//! `estimate`: order-of-magnitude complexity range for a task profile,
//! with the component counts that produced it.

use std::path::Path;

use meaning_automata::estimate::{
    boris_profile, mincal_profile, parse_profile, profile_estimate, TaskProfile,
};

use super::{CliError, Output};
use crate::report::{ComplexityReport, MeasureValue};

fn resolve_profile(arg: &str) -> Result<(TaskProfile, String), CliError> {
    match arg {
        "boris" => Ok((boris_profile(), "story-dialogue profile".to_string())),
        "mincal" => Ok((mincal_profile(), "calendar-assistant profile".to_string())),
        path => {
            let text = std::fs::read_to_string(Path::new(path))
                .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")))?;
            let profile =
                parse_profile(&text).map_err(|e| CliError::Usage(format!("{path}: {e}")))?;
            Ok((profile, format!("profile from {path}")))
        }
    }
}

pub fn run(arg: &str, out: Output) -> Result<(), CliError> {
    let (profile, subject) = resolve_profile(arg)?;
    let (low, high) = profile_estimate(&profile);
    let modes = profile
        .question_modes
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    let mut report = ComplexityReport::new(subject);
    report.push(
        "vocabulary-size",
        MeasureValue::Count(profile.vocabulary_size),
        "distinct words the task handles",
    );
    report.push(
        "fact-count",
        MeasureValue::Count(profile.fact_count),
        "stored facts",
    );
    report.push(
        "construction-count",
        MeasureValue::Count(profile.construction_count),
        "grammatical constructions handled",
    );
    report.push(
        "question-modes",
        MeasureValue::Text(if modes.is_empty() {
            "none".to_string()
        } else {
            modes
        }),
        "kinds of question fielded",
    );
    report.push(
        "rounds",
        MeasureValue::Count(u64::from(profile.rounds)),
        "dialogue rounds over which follow-ups chain",
    );
    report.push(
        "estimate",
        MeasureValue::Range(low, high),
        "facts and constructions, compounded per extra round by the 10-token fact cost",
    );
    report.caveat("calibrated heuristic estimate");
    super::print_report(&report, out);
    Ok(())
}
