//! Outcome record shared by every inequality check in the crate.

use serde::{Deserialize, Serialize};

/// Outcome of a single inequality evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Degenerate,
}

/// One inequality evaluation: both sides, the constant used, the
/// constant-free quotient, and the quadrature error budget applied when
/// deciding the verdict.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub constant_used: f64,
    /// Quotient `lhs / (rhs / constant_used)`, i.e. the empirical constant.
    pub ratio: f64,
    pub verdict: Verdict,
    pub quad_error: f64,
}

impl InequalityReport {
    /// Builds a report from both sides, deciding the verdict one-sidedly:
    /// the inequality holds when `lhs <= rhs + quad_error`.
    pub fn decide(lhs: f64, rhs: f64, constant_used: f64, quad_error: f64) -> Self {
        let denom = rhs / constant_used;
        let (ratio, verdict) = if denom <= f64::MIN_POSITIVE || !denom.is_finite() {
            (f64::NAN, Verdict::Degenerate)
        } else if lhs <= rhs + quad_error {
            (lhs / denom, Verdict::Holds)
        } else {
            (lhs / denom, Verdict::Violated)
        };
        InequalityReport {
            lhs,
            rhs,
            constant_used,
            ratio,
            verdict,
            quad_error,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}
