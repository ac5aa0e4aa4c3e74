use std::time::Instant;

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

/// Outcome of one suite. Serializes as
/// `{suite, cases, failures: [{input, expected, actual}], millis}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub millis: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report is plain data")
    }
}

/// Accumulates cases and failures while a suite runs.
pub(crate) struct Recorder {
    suite: &'static str,
    start: Instant,
    cases: usize,
    failures: Vec<Failure>,
}

impl Recorder {
    pub fn new(suite: &'static str) -> Self {
        Self {
            suite,
            start: Instant::now(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    /// Records one case; `expected` and `actual` are only rendered on failure.
    pub fn check<T: PartialEq + std::fmt::Display>(
        &mut self,
        input: impl FnOnce() -> String,
        expected: T,
        actual: T,
    ) {
        self.cases += 1;
        if expected != actual {
            self.failures.push(Failure {
                input: input(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    pub fn finish(self) -> VerificationReport {
        VerificationReport {
            suite: self.suite.to_string(),
            cases: self.cases,
            failures: self.failures,
            millis: self.start.elapsed().as_millis() as u64,
        }
    }
}
