//! Run configuration and deterministic report records.
//!
//! Structured output is one JSON object per line: a header with the
//! command and configuration, one record per check, and a closing summary.
//! Field order is fixed by the struct definitions and maps are sorted, so
//! identical inputs give byte-identical output.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::embed::EmbedConfig;
use crate::kite::RunBudget;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Self::Text),
            "json" | "structured" => Ok(Self::Json),
            _ => Err(format!("unknown format `{s}` (text, json)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub depth: usize,
    pub samples: u64,
    pub seed: u64,
    /// Truncation bound for the embedding products.
    pub trunc_k: usize,
    /// Cap on evaluations per check.
    pub budget: u64,
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            depth: 2,
            samples: 1000,
            seed: 0,
            trunc_k: 8,
            budget: 1_000_000,
            format: Format::Text,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.samples == 0 {
            return Err("--samples must be positive".into());
        }
        if self.budget == 0 {
            return Err("--budget must be positive".into());
        }
        if self.trunc_k == 0 {
            return Err("--trunc-k must be positive".into());
        }
        Ok(())
    }

    pub fn run_budget(&self) -> RunBudget {
        RunBudget {
            depth: self.depth,
            samples: self.samples,
            seed: self.seed,
            budget: self.budget,
        }
    }

    pub fn embed_config(&self) -> EmbedConfig {
        EmbedConfig {
            depth: self.depth,
            samples: self.samples.min(self.budget),
            seed: self.seed,
            k_max: self.trunc_k,
            ..EmbedConfig::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// Informational; never affects the exit status.
    Info,
    /// Passed on what was checked, but the budget cut the run short.
    Budget,
    Fail,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Pass => "PASS",
            Self::Info => "INFO",
            Self::Budget => "BUDGET",
            Self::Fail => "FAIL",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub status: Status,
    pub summary: String,
    pub data: Value,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    command: String,
    config: RunConfig,
    inputs: Vec<(String, String)>,
    records: Vec<Record>,
}

impl Report {
    pub fn new(command: &str, config: RunConfig) -> Self {
        Self {
            command: command.to_string(),
            config,
            inputs: Vec::new(),
            records: Vec::new(),
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<String>) {
        self.inputs.push((name.to_string(), value.into()));
    }

    pub fn push(&mut self, check: &str, status: Status, summary: impl Into<String>, data: impl Serialize) {
        self.records.push(Record {
            check: check.to_string(),
            status,
            summary: summary.into(),
            data: serde_json::to_value(data).unwrap_or(Value::Null),
        });
    }

    /// Pass or fail from a boolean, downgraded to [`Status::Budget`] when
    /// a passing run was truncated.
    pub fn verdict(
        &mut self,
        check: &str,
        passed: bool,
        truncated: bool,
        summary: impl Into<String>,
        data: impl Serialize,
    ) {
        let status = match (passed, truncated) {
            (false, _) => Status::Fail,
            (true, true) => Status::Budget,
            (true, false) => Status::Pass,
        };
        self.push(check, status, summary, data);
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    /// The worst status over all records.
    pub fn status(&self) -> Status {
        self.records
            .iter()
            .map(|r| r.status)
            .filter(|&s| s != Status::Info)
            .max()
            .unwrap_or(Status::Pass)
    }

    /// 0 pass, 1 failure, 3 budget exhausted.
    pub fn exit_code(&self) -> i32 {
        match self.status() {
            Status::Pass | Status::Info => 0,
            Status::Fail => 1,
            Status::Budget => 3,
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Text => {
                out.push_str(&format!("{}\n", self.command));
                for (k, v) in &self.inputs {
                    out.push_str(&format!("  {k}: {v}\n"));
                }
                for r in &self.records {
                    out.push_str(&format!("{:<6} {}: {}\n", r.status.to_string(), r.check, r.summary));
                }
                out.push_str(&format!("result: {}\n", self.status()));
            }
            Format::Json => {
                let inputs: serde_json::Map<String, Value> = self
                    .inputs
                    .iter()
                    .map(|(k, v)| (k.clone(), Value::String(v.clone())))
                    .collect();
                let header =
                    json!({"record": "header", "command": self.command, "config": self.config, "inputs": inputs});
                out.push_str(&header.to_string());
                out.push('\n');
                for r in &self.records {
                    let mut line = json!({"record": "check"});
                    if let (Value::Object(o), Ok(Value::Object(body))) = (&mut line, serde_json::to_value(r)) {
                        o.extend(body);
                    }
                    out.push_str(&line.to_string());
                    out.push('\n');
                }
                let summary = json!({"record": "summary", "status": self.status(), "exit": self.exit_code()});
                out.push_str(&summary.to_string());
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_worst_status() {
        let mut r = Report::new("x", RunConfig::default());
        assert_eq!(r.exit_code(), 0);
        r.push("a", Status::Info, "", ());
        r.verdict("b", true, true, "", ());
        assert_eq!(r.exit_code(), 3);
        r.verdict("c", false, false, "", ());
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn json_lines_are_stable() {
        let mut r = Report::new("verify-lattice", RunConfig::default());
        r.input("lattice", "builtin:c2");
        r.push("axioms", Status::Pass, "all laws hold", json!({"b": 1, "a": [1, 2]}));
        let out = r.render(Format::Json);
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[1],
            r#"{"check":"axioms","data":{"a":[1,2],"b":1},"record":"check","status":"pass","summary":"all laws hold"}"#
        );
        assert_eq!(out, r.render(Format::Json));
        assert!(r.render(Format::Text).ends_with("result: PASS\n"));
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::default().validate().is_ok());
        assert!(RunConfig {
            samples: 0,
            ..RunConfig::default()
        }
        .validate()
        .is_err());
        assert_eq!("structured".parse::<Format>(), Ok(Format::Json));
    }
}
