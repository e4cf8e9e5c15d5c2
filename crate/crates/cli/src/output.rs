//! JSON report documents.

use std::io::Write;
use std::path::Path;

use qdouble::IdentityReport;
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Document {
    pub config: Value,
    pub results: Vec<IdentityReport>,
}

/// Pretty JSON with a trailing newline; byte-identical for identical input.
pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("reports serialize");
    s.push('\n');
    s
}

pub fn parse(text: &str) -> serde_json::Result<Document> {
    serde_json::from_str(text)
}

/// Write to `path`, or stdout when `path` is `None`.
pub fn emit_report(doc: &Document, path: Option<&Path>) -> std::io::Result<()> {
    let text = to_json(doc);
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Exit status per the CLI contract.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Met,
    Unexpected,
    Errored,
}

impl Outcome {
    pub fn of(results: &[IdentityReport]) -> Outcome {
        if results.iter().any(|r| r.error.is_some()) {
            Outcome::Errored
        } else if results.iter().all(IdentityReport::meets_expectation) {
            Outcome::Met
        } else {
            Outcome::Unexpected
        }
    }

    pub fn code(self) -> u8 {
        match self {
            Outcome::Met => 0,
            Outcome::Unexpected => 1,
            Outcome::Errored => 2,
        }
    }

    pub fn worst(self, other: Outcome) -> Outcome {
        if self.code() >= other.code() {
            self
        } else {
            other
        }
    }
}
