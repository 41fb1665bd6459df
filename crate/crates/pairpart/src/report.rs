//! Suite reports as line-delimited `key=value` records.
//!
//! A record starts with `suite=`, lists parameters as `param.<key>=`, then
//! `status`, `checked`, any `counterexample` and `note.<key>` lines, an
//! optional `wall_ms`, and ends with a line `end`.

use std::fmt::Write;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub suite: String,
    pub params: Vec<(String, String)>,
    pub passed: bool,
    pub checked: u64,
    pub counterexamples: Vec<String>,
    pub notes: Vec<(String, String)>,
    pub wall_ms: Option<u128>,
}

impl Report {
    pub fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            params: Vec::new(),
            passed: true,
            checked: 0,
            counterexamples: Vec::new(),
            notes: Vec::new(),
            wall_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) {
        self.params.push((key.to_string(), value.to_string()));
    }

    pub fn note(&mut self, key: &str, value: impl ToString) {
        self.notes.push((key.to_string(), value.to_string()));
    }

    /// Records one check; failures keep at most a few counterexamples.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(witness());
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.passed = false;
        if self.counterexamples.len() < 5 {
            self.counterexamples.push(witness.replace('\n', " "));
        }
    }

    /// Folds a sub-report into this one.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        self.checked += other.checked;
        if !other.passed {
            self.passed = false;
        }
        for c in other.counterexamples {
            if self.counterexamples.len() < 5 {
                self.counterexamples.push(format!("{}: {}", prefix, c));
            }
        }
        for (k, v) in other.notes {
            self.notes.push((format!("{}.{}", prefix, k), v));
        }
    }

    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_records(&self, with_time: bool) -> String {
        let mut s = String::new();
        writeln!(s, "suite={}", self.suite).unwrap();
        for (k, v) in &self.params {
            writeln!(s, "param.{}={}", k, v).unwrap();
        }
        writeln!(s, "status={}", self.status()).unwrap();
        writeln!(s, "checked={}", self.checked).unwrap();
        for c in &self.counterexamples {
            writeln!(s, "counterexample={}", c).unwrap();
        }
        for (k, v) in &self.notes {
            writeln!(s, "note.{}={}", k, v).unwrap();
        }
        if let (true, Some(ms)) = (with_time, self.wall_ms) {
            writeln!(s, "wall_ms={}", ms).unwrap();
        }
        s.push_str("end\n");
        s
    }

    pub fn to_plain(&self, with_time: bool) -> String {
        let mut s = format!("{} {} (checked {})", self.status().to_uppercase(), self.suite, self.checked);
        if let (true, Some(ms)) = (with_time, self.wall_ms) {
            write!(s, " in {} ms", ms).unwrap();
        }
        s.push('\n');
        for c in &self.counterexamples {
            writeln!(s, "  counterexample: {}", c).unwrap();
        }
        for (k, v) in &self.notes {
            writeln!(s, "  {}: {}", k, v).unwrap();
        }
        s
    }

    /// Parses a stream of records produced by `to_records`.
    pub fn parse_records(text: &str) -> Result<Vec<Report>> {
        let bad = |line: usize, msg: &str| Error::InvalidParam(format!("record line {}: {}", line + 1, msg));
        let mut out = Vec::new();
        let mut cur: Option<Report> = None;
        let mut status_seen = false;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            if line == "end" {
                let r = cur.take().ok_or_else(|| bad(i, "'end' outside a record"))?;
                if !status_seen {
                    return Err(bad(i, "record without status"));
                }
                out.push(r);
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| bad(i, "expected key=value"))?;
            if k == "suite" {
                if cur.is_some() {
                    return Err(bad(i, "nested record"));
                }
                cur = Some(Report::new(v));
                status_seen = false;
                continue;
            }
            let r = cur.as_mut().ok_or_else(|| bad(i, "field outside a record"))?;
            match k {
                "status" => {
                    r.passed = match v {
                        "pass" => true,
                        "fail" => false,
                        _ => return Err(bad(i, "status must be pass or fail")),
                    };
                    status_seen = true;
                }
                "checked" => r.checked = v.parse().map_err(|_| bad(i, "bad count"))?,
                "counterexample" => r.counterexamples.push(v.to_string()),
                "wall_ms" => r.wall_ms = Some(v.parse().map_err(|_| bad(i, "bad time"))?),
                _ => {
                    if let Some(p) = k.strip_prefix("param.") {
                        r.params.push((p.to_string(), v.to_string()));
                    } else if let Some(n) = k.strip_prefix("note.") {
                        r.notes.push((n.to_string(), v.to_string()));
                    } else {
                        return Err(bad(i, "unknown key"));
                    }
                }
            }
        }
        if cur.is_some() {
            return Err(Error::InvalidParam("unterminated record".into()));
        }
        Ok(out)
    }
}
