//! Outcome records for a single inequality or equality check.

use serde::{Deserialize, Serialize};

use crate::tol;

/// `lhs >= rhs` style check. `margin` is signed so that a nonnegative value
/// means the inequality holds exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl InequalityCheck {
    /// Checks `lhs >= rhs` with slack `tol * max(1, |lhs|)`.
    pub fn at_least(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let tolerance = tol::slack_with(tol, lhs);
        Self::with_margin(name, lhs, rhs, lhs - rhs, tolerance)
    }

    /// Checks `lhs <= rhs` with slack `tol * max(1, |lhs|)`.
    pub fn at_most(name: &str, lhs: f64, rhs: f64, tol: f64) -> Self {
        let tolerance = tol::slack_with(tol, lhs);
        Self::with_margin(name, lhs, rhs, rhs - lhs, tolerance)
    }

    pub fn with_margin(name: &str, lhs: f64, rhs: f64, margin: f64, tolerance: f64) -> Self {
        InequalityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            margin,
            tolerance,
            holds: margin >= -tolerance,
        }
    }
}

/// `lhs == rhs` within an absolute tolerance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EqualityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub deviation: f64,
    pub tolerance: f64,
    pub holds: bool,
}

impl EqualityCheck {
    pub fn new(name: &str, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        let deviation = (lhs - rhs).abs();
        EqualityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            deviation,
            tolerance,
            holds: deviation <= tolerance,
        }
    }
}
