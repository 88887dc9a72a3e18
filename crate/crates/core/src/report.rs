//! Verification reports shared by all suites.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::state::State;

/// A single failed check together with its witnesses.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub check: String,
    pub description: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<State>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actual: Option<State>,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: u64,
    pub skipped: u64,
    pub failure_count: u64,
    pub failures: Vec<Counterexample>,
    pub metadata: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<String>,
}

impl Report {
    pub fn first_failure(&self) -> Option<&Counterexample> {
        self.failures.first()
    }
}

const KEPT_FAILURES: usize = 16;

/// Accumulates checks and produces a [`Report`].
#[derive(Debug)]
pub struct ReportBuilder {
    report: Report,
}

impl ReportBuilder {
    pub fn new(suite: impl Into<String>) -> Self {
        ReportBuilder {
            report: Report {
                suite: suite.into(),
                passed: true,
                checks: 0,
                skipped: 0,
                failure_count: 0,
                failures: Vec::new(),
                metadata: BTreeMap::new(),
                findings: Vec::new(),
            },
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.report.metadata.insert(key.to_string(), value.to_string());
        self
    }

    pub fn finding(&mut self, text: impl Into<String>) -> &mut Self {
        self.report.findings.push(text.into());
        self
    }

    pub fn skip(&mut self) {
        self.report.skipped += 1;
    }

    /// Records a check; the counterexample is only built on failure.
    pub fn check(&mut self, ok: bool, failure: impl FnOnce() -> Counterexample) -> bool {
        self.report.checks += 1;
        if !ok {
            self.fail(failure());
        }
        ok
    }

    /// Records an equality check between two states.
    pub fn check_eq(&mut self, check: &str, description: impl FnOnce() -> String, expected: &State, actual: &State) -> bool {
        let ok = expected == actual;
        self.check(ok, || Counterexample {
            check: check.to_string(),
            description: description(),
            expected: Some(expected.clone()),
            actual: Some(actual.clone()),
        })
    }

    pub fn fail(&mut self, c: Counterexample) {
        self.report.passed = false;
        self.report.failure_count += 1;
        if self.report.failures.len() < KEPT_FAILURES {
            self.report.failures.push(c);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.report.checks += other.checks;
        self.report.skipped += other.skipped;
        for c in other.failures {
            if self.report.failures.len() < KEPT_FAILURES {
                self.report.failures.push(c);
            }
        }
        self.report.failure_count += other.failure_count;
        self.report.passed &= other.passed;
        self.report.findings.extend(other.findings);
    }

    pub fn finish(mut self) -> Report {
        self.report
            .metadata
            .insert("checks".into(), self.report.checks.to_string());
        self.report
    }
}

/// Deterministically picks at most `budget` items, keeping their order.
pub fn sample_cases<T>(cases: Vec<T>, budget: usize, seed: u64) -> Vec<T> {
    if cases.len() <= budget {
        return cases;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = sample(&mut rng, cases.len(), budget).into_vec();
    keep.sort_unstable();
    let mut it = keep.into_iter().peekable();
    cases
        .into_iter()
        .enumerate()
        .filter_map(|(i, c)| {
            if it.peek() == Some(&i) {
                it.next();
                Some(c)
            } else {
                None
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let a = sample_cases((0..100).collect(), 10, 7);
        let b = sample_cases((0..100).collect(), 10, 7);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(sample_cases(vec![1, 2], 10, 0), vec![1, 2]);
    }

    #[test]
    fn failures_mark_report() {
        let mut b = ReportBuilder::new("t");
        b.check(true, || unreachable!());
        b.check_eq("eq", || "x".into(), &State::vacuum(), &State::zero());
        let r = b.finish();
        assert!(!r.passed);
        assert_eq!(r.checks, 2);
        assert_eq!(r.failure_count, 1);
    }
}
