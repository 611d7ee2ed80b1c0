//! The JSON report. Field order in these structs is the key order on disk.

use std::time::Duration;

use sandwich_core::chevgroup::HypothesisReport;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Assert,
    /// The model is a negative control or fails the hypotheses.
    ExpectException,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    /// Failed on a model where failure is expected.
    ExpectedException,
    /// Held on a model where it was not required to.
    Informational,
}

impl CheckVerdict {
    pub fn resolve(mode: Mode, held: bool) -> Self {
        match (mode, held) {
            (Mode::Assert, true) => CheckVerdict::Pass,
            (Mode::Assert, false) => CheckVerdict::Fail,
            (Mode::ExpectException, true) => CheckVerdict::Informational,
            (Mode::ExpectException, false) => CheckVerdict::ExpectedException,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub suite: &'static str,
    pub model: Option<String>,
    pub name: String,
    /// Where the checked statement lives, e.g. "Theorem cong-N".
    pub anchor: &'static str,
    pub mode: Mode,
    pub verdict: CheckVerdict,
    pub witness: Value,
}

/// Suite, model and mode shared by a run of records.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub suite: &'static str,
    pub model: Option<String>,
    pub mode: Mode,
}

impl Scope {
    pub fn new(suite: &'static str, model: Option<String>, mode: Mode) -> Self {
        Scope { suite, model, mode }
    }

    /// The same scope with every record asserted.
    pub fn asserted(&self) -> Self {
        Scope { mode: Mode::Assert, ..self.clone() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SuiteVerdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub checks: usize,
    pub passed: usize,
    pub failed: usize,
    pub expected_exceptions: usize,
    pub informational: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StageTiming {
    pub suite: &'static str,
    pub model: Option<String>,
    pub seconds: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Timing {
    pub total_seconds: f64,
    pub stages: Vec<StageTiming>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub config: RunConfig,
    pub hypotheses: Vec<HypothesisReport>,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    pub verdict: SuiteVerdict,
    /// The only block that varies between identical runs.
    pub timing: Timing,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            config,
            hypotheses: Vec::new(),
            checks: Vec::new(),
            summary: Summary::default(),
            verdict: SuiteVerdict::Pass,
            timing: Timing::default(),
        }
    }

    pub fn push(&mut self, scope: &Scope, name: &str, anchor: &'static str, held: bool, witness: impl Serialize) {
        self.checks.push(CheckRecord {
            suite: scope.suite,
            model: scope.model.clone(),
            name: name.to_string(),
            anchor,
            mode: scope.mode,
            verdict: CheckVerdict::resolve(scope.mode, held),
            witness: serde_json::to_value(witness).expect("witness data serializes"),
        });
    }

    pub fn time(&mut self, suite: &'static str, model: Option<String>, elapsed: Duration) {
        self.timing.stages.push(StageTiming { suite, model, seconds: elapsed.as_secs_f64() });
    }

    /// Tallies the records and sets the overall verdict.
    pub fn finish(&mut self, total: Duration) {
        let count = |v: CheckVerdict| self.checks.iter().filter(|c| c.verdict == v).count();
        self.summary = Summary {
            checks: self.checks.len(),
            passed: count(CheckVerdict::Pass),
            failed: count(CheckVerdict::Fail),
            expected_exceptions: count(CheckVerdict::ExpectedException),
            informational: count(CheckVerdict::Informational),
        };
        self.verdict = if self.summary.failed == 0 { SuiteVerdict::Pass } else { SuiteVerdict::Fail };
        self.timing.total_seconds = total.as_secs_f64();
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_resolution() {
        assert_eq!(CheckVerdict::resolve(Mode::Assert, false), CheckVerdict::Fail);
        assert_eq!(CheckVerdict::resolve(Mode::ExpectException, false), CheckVerdict::ExpectedException);
        assert_eq!(CheckVerdict::resolve(Mode::ExpectException, true), CheckVerdict::Informational);
    }

    #[test]
    fn expected_exceptions_do_not_fail_the_run() {
        let mut r = Report::new(RunConfig::default());
        let control = Scope::new("group", None, Mode::ExpectException);
        r.push(&control, "a", "Lemma ABe", false, ());
        r.push(&control.asserted(), "b", "Lemma const", true, ());
        r.finish(Duration::ZERO);
        assert_eq!(r.verdict, SuiteVerdict::Pass);
        assert_eq!(r.summary.expected_exceptions, 1);
        r.push(&control.asserted(), "c", "Lemma const", false, ());
        r.finish(Duration::ZERO);
        assert_eq!(r.verdict, SuiteVerdict::Fail);
    }

    #[test]
    fn key_order_is_fixed() {
        let json = Report::new(RunConfig::default()).to_json();
        let keys: Vec<usize> = ["schema_version", "config", "hypotheses", "checks", "summary", "verdict", "timing"]
            .iter()
            .map(|k| json.find(&format!("\"{k}\"")).unwrap())
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }
}
