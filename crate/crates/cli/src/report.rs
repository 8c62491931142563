//! Verification reports: a suite name and a list of uniquely named checks.

use std::collections::BTreeSet;
use std::time::Instant;

use drinfeld::check::CheckOutcome;
use serde::Serialize;

#[derive(Serialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub witness: String,
    pub duration_ms: u64,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {}\n", self.suite);
        for c in &self.checks {
            out.push_str(&format!("{} {} [{}] {}", c.status.label(), c.id, c.anchor, c.witness));
            if c.duration_ms > 0 {
                out.push_str(&format!(" ({} ms)", c.duration_ms));
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} skipped\n",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        ));
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

/// Collects checks for one suite. Durations are recorded only when `timings`
/// is set, so that reports are byte-identical across runs by default.
pub struct Recorder {
    prefix: String,
    timings: bool,
    ids: BTreeSet<String>,
    checks: Vec<Check>,
}

impl Recorder {
    pub fn new(prefix: &str, timings: bool) -> Self {
        Recorder { prefix: prefix.to_string(), timings, ids: BTreeSet::new(), checks: Vec::new() }
    }

    /// Switches the id prefix, for reports that span several suites.
    pub fn set_prefix(&mut self, prefix: &str) {
        self.prefix = prefix.to_string();
    }

    fn push(&mut self, id: &str, anchor: &str, status: Status, witness: String, duration_ms: u64) {
        let id = format!("{}.{id}", self.prefix);
        assert!(self.ids.insert(id.clone()), "duplicate check id {id}");
        self.checks.push(Check { id, anchor: anchor.to_string(), status, witness, duration_ms });
    }

    /// Runs `f` and records its outcome; a library error counts as a failure.
    pub fn run(&mut self, id: &str, anchor: &str, f: impl FnOnce() -> drinfeld::Result<CheckOutcome>) {
        let start = Instant::now();
        let outcome = f();
        let ms = if self.timings { start.elapsed().as_millis() as u64 } else { 0 };
        match outcome {
            Ok(c) => self.push(id, anchor, if c.passed { Status::Pass } else { Status::Fail }, c.witness, ms),
            Err(e) => self.push(id, anchor, Status::Fail, format!("error: {e}"), ms),
        }
    }

    pub fn skip(&mut self, id: &str, anchor: &str, reason: impl Into<String>) {
        self.push(id, anchor, Status::Skipped, reason.into(), 0);
    }

    pub fn finish(self, suite: &str) -> Report {
        Report { suite: suite.to_string(), checks: self.checks }
    }
}
