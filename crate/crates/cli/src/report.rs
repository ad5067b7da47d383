//! Versioned report structure and its json / tsv / text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// A reported discrepancy that is not a verification failure.
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Finding => "finding",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub status: Status,
    /// Exact values use the canonical `c * 2^(a/2) * pi^(b/2)` form; floating
    /// values are decimal strings.
    pub values: BTreeMap<String, String>,
    /// `"exact"` or the working precision, e.g. `"352 bits"`.
    pub precision: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub status: Status,
    pub cases: Vec<Case>,
    pub findings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<f64>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            parameters: BTreeMap::new(),
            status: Status::Pass,
            cases: Vec::new(),
            findings: Vec::new(),
            total_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    /// Overall status: fail if any case fails, else pass.
    pub fn finish(&mut self) {
        self.status = if self.cases.iter().any(|c| c.status == Status::Fail) {
            Status::Fail
        } else {
            Status::Pass
        };
    }

    pub fn strip_timings(&mut self) {
        self.total_ms = None;
        for c in &mut self.cases {
            c.elapsed_ms = None;
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    /// One row per case: `id  status  precision  key=value ...`.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("# schema_version={} command={} status={}\n", self.schema_version, self.command, self.status.as_str());
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "# param {k}={v}");
        }
        for f in &self.findings {
            let _ = writeln!(out, "# finding {f}");
        }
        out.push_str("id\tstatus\tprecision\tvalues\n");
        for c in &self.cases {
            let values: Vec<String> = c.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(out, "{}\t{}\t{}\t{}", c.id, c.status.as_str(), c.precision, values.join(";"));
        }
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.status.as_str().to_uppercase());
        for (k, v) in &self.parameters {
            let _ = writeln!(out, "  {k} = {v}");
        }
        for c in &self.cases {
            let _ = write!(out, "[{}] {} ({})", c.status.as_str(), c.id, c.precision);
            if let Some(ms) = c.elapsed_ms {
                let _ = write!(out, " {ms:.1} ms");
            }
            out.push('\n');
            for (k, v) in &c.values {
                let _ = writeln!(out, "    {k}: {v}");
            }
        }
        for f in &self.findings {
            let _ = writeln!(out, "finding: {f}");
        }
        if let Some(ms) = self.total_ms {
            let _ = writeln!(out, "total: {ms:.1} ms");
        }
        out
    }
}
