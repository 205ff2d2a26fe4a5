//! Residual reports shared by all identity checks.
//!
//! A check never fails with an error for a mathematical reason; it collects
//! the nonzero residuals per generator tuple instead.

use serde_json::{json, Value};

use crate::lcsa::{Element, Signature};

#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    /// Which identity within the check produced the residual.
    pub label: String,
    /// Generator indices of the tuple the identity was evaluated on.
    pub tuple: Vec<usize>,
    pub value: Element,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub check: String,
    pub failures: Vec<Residual>,
    /// Hypotheses the check relied on without verifying them.
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records `value` if it is nonzero.
    pub fn record(&mut self, label: &str, tuple: &[usize], value: Element) {
        if !value.is_zero() {
            self.failures.push(Residual {
                label: label.to_string(),
                tuple: tuple.to_vec(),
                value,
            });
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.check = format!("{} + {}", self.check, other.check);
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
        self
    }

    pub fn find(&self, label: &str, tuple: &[usize]) -> Option<&Element> {
        self.failures
            .iter()
            .find(|r| r.label == label && r.tuple == tuple)
            .map(|r| &r.value)
    }

    fn tuple_text(tuple: &[usize], names: &Signature) -> String {
        let parts: Vec<&str> = tuple.iter().map(|&i| names.name(i)).collect();
        format!("({})", parts.join(", "))
    }

    /// Human-readable text; `tuple_sig` names the tuple entries and
    /// `value_sig` the generators residuals are expressed in.
    pub fn render(&self, tuple_sig: &Signature, value_sig: &Signature) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.check,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for r in &self.failures {
            out.push_str(&format!(
                "  {} {}: residual {}\n",
                r.label,
                Self::tuple_text(&r.tuple, tuple_sig),
                r.value.display(value_sig)
            ));
        }
        for n in &self.notes {
            out.push_str(&format!("  note: {n}\n"));
        }
        out
    }

    pub fn to_json(&self, tuple_sig: &Signature, value_sig: &Signature) -> Value {
        let failures: Vec<Value> = self
            .failures
            .iter()
            .map(|r| {
                json!({
                    "identity": r.label,
                    "tuple": r.tuple.iter().map(|&i| tuple_sig.name(i)).collect::<Vec<_>>(),
                    "residual": r.value.to_source(value_sig),
                })
            })
            .collect();
        json!({
            "check": self.check,
            "passed": self.passed(),
            "failures": failures,
            "notes": self.notes,
        })
    }
}
