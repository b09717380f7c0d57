//! `minimize`: read a state-output machine file, minimize it, verify the
//! result is behaviorally equivalent, and only then write it out.

use std::path::Path;

use meaning_automata::MooreMachine;

use super::{CliError, Output};
use crate::report::{ComplexityReport, MeasureValue};

pub fn run(in_path: &Path, out_path: &Path, out: Output) -> Result<(), CliError> {
    let text = std::fs::read_to_string(in_path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", in_path.display())))?;
    let machine: MooreMachine = text
        .parse()
        .map_err(|e| CliError::Usage(format!("{}: {e}", in_path.display())))?;
    let minimized = machine.minimize();
    let equivalent = machine
        .equivalent(&minimized)
        .map_err(|e| CliError::Check(format!("equivalence check did not run: {e}")))?;
    if !equivalent {
        return Err(CliError::Check(
            "minimized machine is not equivalent to the input; nothing written".to_string(),
        ));
    }
    std::fs::write(out_path, minimized.to_string())
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", out_path.display())))?;
    let mut report = ComplexityReport::new(format!(
        "minimize {} -> {}",
        in_path.display(),
        out_path.display()
    ));
    report.push(
        "states-before",
        MeasureValue::Count(machine.state_count() as u64),
        "states in the input machine",
    );
    report.push(
        "states-after",
        MeasureValue::Count(minimized.state_count() as u64),
        "states after merging equivalent ones (equivalence verified)",
    );
    report.push(
        "states-removed",
        MeasureValue::Count((machine.state_count() - minimized.state_count()) as u64),
        "reduction achieved",
    );
    super::print_report(&report, out);
    Ok(())
}
