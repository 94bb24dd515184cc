use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Failures kept verbatim in a report; the rest are only counted.
pub const MAX_RECORDED_FAILURES: usize = 20;

/// One failed trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub input: String,
    pub observed: String,
    pub expected: String,
    pub residual: f64,
}

/// Result of a property suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub trials: usize,
    /// Trials excluded from comparison, such as points inside a margin band.
    pub skipped: usize,
    pub failure_count: usize,
    pub max_residual: f64,
    pub failures: Vec<Failure>,
    pub passed: bool,
}

/// Outcome of a single trial.
#[derive(Debug, Clone, Default)]
pub struct Trial {
    pub residual: f64,
    pub skipped: bool,
    pub failure: Option<Failure>,
}

impl Trial {
    pub fn pass(residual: f64) -> Self {
        Self { residual, ..Self::default() }
    }

    pub fn skip() -> Self {
        Self { skipped: true, ..Self::default() }
    }

    pub fn fail(
        residual: f64,
        input: impl Into<String>,
        observed: impl Into<String>,
        expected: impl Into<String>,
    ) -> Self {
        Self {
            residual,
            skipped: false,
            failure: Some(Failure {
                input: input.into(),
                observed: observed.into(),
                expected: expected.into(),
                residual,
            }),
        }
    }

    /// Passes when `ok`, otherwise fails with the given descriptions.
    pub fn check(
        ok: bool,
        residual: f64,
        input: impl FnOnce() -> String,
        observed: impl FnOnce() -> String,
        expected: &str,
    ) -> Self {
        if ok {
            Self::pass(residual)
        } else {
            Self::fail(residual, input(), observed(), expected)
        }
    }

    /// Keeps the first failure and the larger residual.
    pub fn and(self, other: Trial) -> Trial {
        Trial {
            residual: self.residual.max(other.residual),
            skipped: self.skipped && other.skipped,
            failure: self.failure.or(other.failure),
        }
    }
}

impl VerificationReport {
    /// Folds trial outcomes; failures are ordered by input text so the
    /// report does not depend on scheduling.
    pub fn from_trials(suite: &str, trials: Vec<Trial>) -> Self {
        let total = trials.len();
        let mut skipped = 0;
        let mut max_residual = 0.0f64;
        let mut failures = Vec::new();
        for t in trials {
            if t.skipped {
                skipped += 1;
                continue;
            }
            if t.residual.is_nan() {
                max_residual = f64::NAN;
            } else if !max_residual.is_nan() {
                max_residual = max_residual.max(t.residual);
            }
            failures.extend(t.failure);
        }
        failures.sort_by(|a, b| a.input.cmp(&b.input).then(a.observed.cmp(&b.observed)));
        let failure_count = failures.len();
        failures.truncate(MAX_RECORDED_FAILURES);
        Self {
            suite: suite.to_string(),
            trials: total,
            skipped,
            failure_count,
            max_residual,
            failures,
            passed: failure_count == 0,
        }
    }

    /// Runs `trial(i)` for `i < count` in parallel.
    pub fn run(suite: &str, count: usize, trial: impl Fn(usize) -> Trial + Sync + Send) -> Self {
        let trials: Vec<Trial> = (0..count).into_par_iter().map(trial).collect();
        Self::from_trials(suite, trials)
    }

    /// Combines reports of sub-runs under one suite name.
    pub fn merge(suite: &str, parts: Vec<VerificationReport>) -> Self {
        let mut failures: Vec<Failure> = Vec::new();
        let mut out = Self {
            suite: suite.to_string(),
            trials: 0,
            skipped: 0,
            failure_count: 0,
            max_residual: 0.0,
            failures: Vec::new(),
            passed: true,
        };
        for p in parts {
            out.trials += p.trials;
            out.skipped += p.skipped;
            out.failure_count += p.failure_count;
            out.max_residual = if p.max_residual.is_nan() { f64::NAN } else { out.max_residual.max(p.max_residual) };
            out.passed &= p.passed;
            failures.extend(p.failures);
        }
        failures.sort_by(|a, b| a.input.cmp(&b.input).then(a.observed.cmp(&b.observed)));
        failures.truncate(MAX_RECORDED_FAILURES);
        out.failures = failures;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_reduction_matches_serial() {
        let f = |i: usize| {
            let r = ((i * 7919) % 1000) as f64 / 1000.0;
            if i % 97 == 3 {
                Trial::fail(r, format!("{i:05}"), "x", "y")
            } else if i % 11 == 0 {
                Trial::skip()
            } else {
                Trial::pass(r)
            }
        };
        let par = VerificationReport::run("s", 5000, f);
        let ser = VerificationReport::from_trials("s", (0..5000).map(f).collect());
        assert_eq!(par, ser);
        let serial_max = (0..5000).filter(|i| i % 11 != 0 || i % 97 == 3).map(|i| f(i).residual).fold(0.0, f64::max);
        assert_eq!(par.max_residual, serial_max);
        assert!(!par.passed);
        assert_eq!(par.failures.len(), MAX_RECORDED_FAILURES);
        assert!(par.failures.windows(2).all(|w| w[0].input <= w[1].input));
    }

    #[test]
    fn merge_sums_counts() {
        let a = VerificationReport::from_trials("a", vec![Trial::pass(0.5), Trial::skip()]);
        let b = VerificationReport::from_trials("b", vec![Trial::fail(2.0, "p", "o", "e")]);
        let m = VerificationReport::merge("m", vec![a, b]);
        assert_eq!((m.trials, m.skipped, m.failure_count, m.max_residual, m.passed), (3, 1, 1, 2.0, false));
    }
}
