//! Report structure shared by every command: a subject, a list of named
//! measures (each with a note saying how the value was obtained), and
//! optional caveats. Renders as an aligned text table or as JSON with a
//! fixed key order, so identical invocations print identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

/// One measured value and how it was obtained.
#[derive(Debug, Clone, Serialize)]
pub struct Measure {
    pub name: String,
    pub value: MeasureValue,
    pub note: String,
}

/// The shapes a measure's value can take.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum MeasureValue {
    Count(u64),
    Range(u64, u64),
    Flag(bool),
    Text(String),
}

impl std::fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MeasureValue::Count(n) => write!(f, "{n}"),
            MeasureValue::Range(lo, hi) => write!(f, "{lo}..{hi}"),
            MeasureValue::Flag(b) => write!(f, "{b}"),
            MeasureValue::Text(s) => f.write_str(s),
        }
    }
}

/// A command's full output.
#[derive(Debug, Clone, Serialize)]
pub struct ComplexityReport {
    pub subject: String,
    pub measures: Vec<Measure>,
    pub caveats: Vec<String>,
}

impl ComplexityReport {
    pub fn new(subject: impl Into<String>) -> ComplexityReport {
        ComplexityReport {
            subject: subject.into(),
            measures: Vec::new(),
            caveats: Vec::new(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, value: MeasureValue, note: impl Into<String>) {
        self.measures.push(Measure {
            name: name.into(),
            value,
            note: note.into(),
        });
    }

    pub fn caveat(&mut self, text: impl Into<String>) {
        self.caveats.push(text.into());
    }

    #[cfg(test)]
    pub fn find(&self, name: &str) -> Option<&Measure> {
        self.measures.iter().find(|m| m.name == name)
    }

    /// Aligned human-readable table. With `quiet`, notes and caveats are
    /// dropped and only `name  value` lines remain.
    pub fn render_human(&self, quiet: bool) -> String {
        let mut out = String::new();
        if !quiet {
            let _ = writeln!(out, "subject: {}", self.subject);
        }
        let name_width = self
            .measures
            .iter()
            .map(|m| m.name.len())
            .max()
            .unwrap_or(0);
        let value_width = self
            .measures
            .iter()
            .map(|m| m.value.to_string().len())
            .max()
            .unwrap_or(0);
        for measure in &self.measures {
            if quiet {
                let _ = writeln!(out, "{}\t{}", measure.name, measure.value);
            } else {
                let rendered = measure.value.to_string();
                let _ = writeln!(
                    out,
                    "  {:<name_width$}  {rendered:>value_width$}  {}",
                    measure.name, measure.note
                );
            }
        }
        if !quiet {
            for caveat in &self.caveats {
                let _ = writeln!(out, "caveat: {caveat}");
            }
        }
        out
    }

    /// JSON with key order fixed by the struct layout.
    pub fn render_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ComplexityReport {
        let mut report = ComplexityReport::new("sample");
        report.push("alpha", MeasureValue::Count(576), "counted");
        report.push("beta-range", MeasureValue::Range(100, 200), "estimated");
        report.push("gamma", MeasureValue::Flag(true), "checked");
        report.caveat("smallest constructed, not proven minimal");
        report
    }

    #[test]
    fn human_table_aligns_names_and_values() {
        let text = sample().render_human(false);
        assert!(text.starts_with("subject: sample\n"));
        // Names pad to the longest name (10), values right-align to the
        // longest value (8).
        assert!(text.contains("  alpha            576  counted\n"));
        assert!(text.contains("  beta-range  100..200  estimated\n"));
        assert!(text.contains("caveat: smallest constructed"));
    }

    #[test]
    fn quiet_drops_notes_and_caveats() {
        let text = sample().render_human(true);
        assert_eq!(text, "alpha\t576\nbeta-range\t100..200\ngamma\ttrue\n");
    }

    #[test]
    fn json_is_deterministic_and_typed() {
        let a = sample().render_json();
        let b = sample().render_json();
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(parsed["measures"][0]["value"], 576);
        assert_eq!(parsed["measures"][1]["value"][0], 100);
        assert_eq!(parsed["measures"][2]["value"], true);
    }

    #[test]
    fn find_locates_measures_by_name() {
        let report = sample();
        assert!(report.find("beta-range").is_some());
        assert!(report.find("delta").is_none());
    }
}
