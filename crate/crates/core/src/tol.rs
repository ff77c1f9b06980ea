//! Numerical thresholds shared across the crate.

/// `|P(z)|` below this multiple of `max |c_k|` counts as a zero of `P`.
pub const ZERO_PROXIMITY_REL: f64 = 1e-12;

/// A root `a` is on the unit circle when `||a| - 1| <= ON_CIRCLE`.
pub const ON_CIRCLE: f64 = 1e-9;

/// Additive slack for inequality checks, scaled by `max(1, |value|)`.
pub const CHECK_SLACK: f64 = 1e-9;

/// `|c_0|` and `|c_n|` are treated as equal within this relative distance.
pub const DEGENERATE_REL: f64 = 1e-12;

/// Minimal distance of a witness root from `z = 1`.
pub const WITNESS_EXCLUSION: f64 = 1e-6;

/// A root closer than this to `z = 1` voids the Blaschke normalization.
pub const ROOT_AT_ONE: f64 = 1e-12;

/// Poles must satisfy `|a| > 1 + POLE_MARGIN`.
pub const POLE_MARGIN: f64 = 1e-12;

/// `||f'(0)| - 1|` below this makes the distortion bound degenerate.
pub const DEGENERATE_DERIVATIVE: f64 = 1e-12;

/// Default absolute threshold below which a leading coefficient counts as zero.
pub const LEADING_ZERO: f64 = f64::MIN_POSITIVE;

/// Default samples per half-arc for increment tracking.
pub const DEFAULT_ARC_SAMPLES: usize = 4096;

/// Slack applied to `value` when checking `lhs >= rhs`.
pub fn slack(scale: f64) -> f64 {
    slack_with(CHECK_SLACK, scale)
}

pub fn slack_with(tol: f64, scale: f64) -> f64 {
    tol * scale.abs().max(1.0)
}
