//! Command reports: one structure rendered both as text and as JSON.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

/// Version tag of the JSON report layout.
pub const SCHEMA: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    InputError,
    LimitExceeded,
}

impl Verdict {
    /// The process exit code for this verdict.
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::InputError => 2,
            Verdict::LimitExceeded => 3,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::InputError => "INPUT ERROR",
            Verdict::LimitExceeded => "LIMIT EXCEEDED",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

/// Everything a command reports. Lists that a command does not produce
/// stay empty. Wall-clock timing is printed with the text form only so
/// that JSON reports are reproducible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub command: String,
    /// Canonical text of the input document.
    pub input: String,
    pub seed: u64,
    pub verdict: Verdict,
    pub facts: Vec<Fact>,
    /// Rewriting rules, one per line.
    pub rules: Vec<String>,
    /// Derived equations and action identities.
    pub equations: Vec<String>,
    /// Failing instances and counterexamples.
    pub witnesses: Vec<String>,
    pub normal_forms: Vec<String>,
    /// Enumerated extensions.
    pub rows: Vec<String>,
    /// Multiplication table rows, by element name.
    pub table: Vec<String>,
}

impl Report {
    pub fn new(command: &str, input: String, seed: u64) -> Self {
        Report {
            schema: SCHEMA.into(),
            command: command.into(),
            input,
            seed,
            verdict: Verdict::Pass,
            facts: Vec::new(),
            rules: Vec::new(),
            equations: Vec::new(),
            witnesses: Vec::new(),
            normal_forms: Vec::new(),
            rows: Vec::new(),
            table: Vec::new(),
        }
    }

    pub fn fact(&mut self, name: &str, value: impl ToString) {
        self.facts.push(Fact {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn get_fact(&self, name: &str) -> Option<&str> {
        self.facts.iter().find(|f| f.name == name).map(|f| f.value.as_str())
    }

    pub fn fail(&mut self) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Fail;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// The human-readable form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}: {}", self.command, self.verdict);
        let width = self.facts.iter().map(|f| f.name.len()).max().unwrap_or(0);
        for f in &self.facts {
            let _ = writeln!(out, "  {:width$}  {}", f.name, f.value);
        }
        let sections: [(&str, &[String]); 6] = [
            ("rules", &self.rules),
            ("equations", &self.equations),
            ("witnesses", &self.witnesses),
            ("normal forms", &self.normal_forms),
            ("extensions", &self.rows),
            ("group table", &self.table),
        ];
        for (title, lines) in sections {
            if lines.is_empty() {
                continue;
            }
            let _ = writeln!(out, "{title} ({}):", lines.len());
            for l in lines {
                let _ = writeln!(out, "  {l}");
            }
        }
        out
    }
}
