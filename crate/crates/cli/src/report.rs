//! The uniform report emitted by every subcommand, in text or JSON form.

use serde::Serialize;
use trb_core::{CheckReport, Violation};

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    pub seed: u64,
    pub verdict: &'static str,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Report {
    pub fn new(command: &str, instance: Option<String>, seed: u64) -> Self {
        Report {
            command: command.to_string(),
            instance,
            seed,
            verdict: "pass",
            failures: Vec::new(),
            dims: None,
            data: None,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn fail(mut self) -> Self {
        self.verdict = "fail";
        self
    }

    pub fn with_check(mut self, check: &CheckReport) -> Self {
        if !check.passed() {
            self.verdict = "fail";
            self.failures.extend(check.violations.iter().cloned());
        }
        self
    }

    pub fn with_dims(mut self, dims: Vec<usize>) -> Self {
        self.dims = Some(dims);
        self
    }

    pub fn with_data(mut self, data: serde_json::Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let inst = self
            .instance
            .as_deref()
            .map(|d| format!(" [{d}]"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{}{}: {} (seed {})\n",
            self.command,
            inst,
            self.verdict.to_uppercase(),
            self.seed
        ));
        for v in &self.failures {
            out.push_str(&format!(
                "  FAIL {} at {:?}: residual {}\n",
                v.identity, v.at, v.residual
            ));
        }
        if let Some(dims) = &self.dims {
            out.push_str(&format!("  dims: {dims:?}\n"));
        }
        if let Some(data) = &self.data {
            out.push_str(&format!(
                "  data: {}\n",
                serde_json::to_string_pretty(data).unwrap_or_default()
            ));
        }
        if let Some(note) = &self.note {
            out.push_str(&format!("  note: {note}\n"));
        }
        out
    }

    pub fn render_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
