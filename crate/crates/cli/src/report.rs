//! Text and JSON rendering, and the mapping from outcomes to exit codes.

use conequant_core::algebra::laurent::EXACT;
use conequant_core::Error;
use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::expr::ParseError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A checked predicate came out false.
    Failed,
    /// The requested precision does not decide the answer.
    Undecidable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("in {what}: {source}")]
    Syntax {
        what: String,
        #[source]
        source: ParseError,
    },
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::PrecisionTooShallow { .. }) => 3,
            _ => 2,
        }
    }
}

pub fn exit_code(status: Status) -> u8 {
    match status {
        Status::Ok => 0,
        Status::Failed => 1,
        Status::Undecidable => 3,
    }
}

/// A command's outcome: the JSON envelope fields plus a text rendering.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub precision: i64,
    pub result: Value,
    /// Lowest degree (or series exponent) asserted, `None` when exact.
    pub achieved: Option<i64>,
    pub text: String,
    pub status: Status,
}

impl Report {
    pub fn new(command: &'static str, precision: i64) -> Self {
        Report {
            command,
            inputs: Map::new(),
            precision,
            result: Value::Null,
            achieved: None,
            text: String::new(),
            status: Status::Ok,
        }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": self.inputs,
            "precision": self.precision,
            "result": self.result,
            "achieved_precision": achieved_json(self.achieved),
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(&self.envelope()).expect("values serialize") + "\n",
            Format::Text => {
                let mut out = self.text.clone();
                if !out.ends_with('\n') {
                    out.push('\n');
                }
                out.push_str(&format!("achieved precision: {}\n", achieved_text(self.achieved)));
                out
            }
        }
    }
}

/// Collapses the series sentinel for exact results.
pub fn achieved_from(lo: Option<i64>) -> Option<i64> {
    lo.filter(|&l| l < EXACT)
}

fn achieved_json(a: Option<i64>) -> Value {
    a.map_or_else(|| json!("exact"), |l| json!(l))
}

fn achieved_text(a: Option<i64>) -> String {
    a.map_or_else(|| "exact".into(), |l| format!("known down to {l}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn envelope_keys_are_sorted() {
        let r = Report::new("psido-eval", 16).input("expr", "D").input("a", 1);
        let s = r.render(Format::Json);
        let keys: Vec<usize> = ["achieved_precision", "command", "inputs", "precision", "result"]
            .iter()
            .map(|k| s.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
        assert!(s.find("\"a\"").unwrap() < s.find("\"expr\"").unwrap());
        assert!(r.render(Format::Text).ends_with("achieved precision: exact\n"));
    }

    #[test]
    fn codes() {
        assert_eq!(CliError::Core(Error::PrecisionTooShallow { needed: -3, known: -1 }).exit_code(), 3);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(exit_code(Status::Failed), 1);
    }
}
