//! Finite-difference oracle for the rotation speed and continuous phase
//! tracking along arcs of the unit circle.
//!
//! Nothing here uses `P'`: derivatives come from differences of the unwrapped
//! argument of `P(e^{iθ})`, so agreement with [`Polynomial::rotation_speed`]
//! is a genuine cross-check of the analytic formula.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, UnitCirclePoint};
use crate::roots::{self, RootSolveConfig, Zone};
use crate::tol;

/// Largest step accepted by [`arg_derivative_fd`].
pub const MAX_FD_STEP: f64 = 1e-3;

/// Bisection depth before giving up on a phase jump.
const MAX_REFINE_DEPTH: u32 = 30;

/// Maps an angle difference into `(-π, π]`.
pub fn wrap_angle(d: f64) -> f64 {
    let w = d.rem_euclid(2.0 * PI);
    if w > PI {
        w - 2.0 * PI
    } else {
        w
    }
}

fn guarded_phase(p: &Polynomial, theta: f64) -> Result<f64> {
    Ok(p.eval_guarded(UnitCirclePoint::new(theta).z())?.arg())
}

/// Central difference of the unwrapped `arg P(e^{iθ})` with step `h`.
pub fn arg_derivative_fd(p: &Polynomial, theta: f64, h: f64) -> Result<f64> {
    if !(h > 0.0 && h <= MAX_FD_STEP) {
        return Err(Error::InvalidArgument(format!("step {h} outside (0, {MAX_FD_STEP}]")));
    }
    guarded_phase(p, theta)?;
    let forward = guarded_phase(p, theta + h)?;
    let backward = guarded_phase(p, theta - h)?;
    Ok(wrap_angle(forward - backward) / (2.0 * h))
}

/// A priori bound on `|arg_derivative_fd(p, θ, h) - (arg P)'(θ)|` for `P`
/// with the given zeros.
///
/// Truncation: `h²/6 · max |g'''|` with `g = Σ arg(z - a)` and
/// `|g'''| <= Σ |a|(1 + |a|) / |z - a|³` on the stencil. Rounding: the phase
/// error of the compensated evaluation plus the representation error of
/// `θ ± h`, both divided by `h`.
pub fn fd_error_bound(zeros: &[Complex64], theta: f64, h: f64) -> f64 {
    let z = UnitCirclePoint::new(theta).z();
    let mut third = 0.0;
    let mut first = 0.0;
    for &a in zeros {
        let d = ((z - a).norm() - h).max(f64::MIN_POSITIVE);
        third += a.norm() * (1.0 + a.norm()) / (d * d * d);
        first += (1.0 + a.norm()) / d;
    }
    let truncation = h * h / 6.0 * third;
    let rounding = 8.0 * f64::EPSILON * (1.0 + (1.0 + theta.abs()) * first) / h;
    truncation + rounding
}

pub const VALID_POINT_STEP: f64 = 1e-5;
pub const VALID_POINT_ERROR: f64 = 1e-7;

/// True when `θ` is far enough from every zero that the central difference
/// with step [`VALID_POINT_STEP`] is accurate to [`VALID_POINT_ERROR`].
pub fn is_valid_point(zeros: &[Complex64], theta: f64) -> bool {
    fd_error_bound(zeros, theta, VALID_POINT_STEP) <= VALID_POINT_ERROR
}

/// Open arc `{e^{iθ} : |θ - center| < half_width}`, tracked with `samples`
/// steps on each side of the center.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArcSpec {
    pub center: f64,
    pub half_width: f64,
    pub samples: usize,
}

impl ArcSpec {
    pub fn new(center: f64, half_width: f64) -> Result<Self> {
        Self::with_samples(center, half_width, tol::DEFAULT_ARC_SAMPLES)
    }

    pub fn with_samples(center: f64, half_width: f64, samples: usize) -> Result<Self> {
        let arc = ArcSpec { center, half_width, samples };
        arc.validate()?;
        Ok(arc)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.half_width > 0.0 && self.half_width < PI) || !self.center.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "arc half-width {} outside (0, π)",
                self.half_width
            )));
        }
        if self.samples < 64 {
            return Err(Error::InvalidArgument(format!(
                "arc needs at least 64 samples, got {}",
                self.samples
            )));
        }
        Ok(())
    }

    /// Whether the angle of `a` lies strictly inside the arc.
    pub fn contains_angle(&self, angle: f64) -> bool {
        wrap_angle(angle - self.center).abs() < self.half_width
    }

    /// Worst-case gap between the sampled and the true supremum for a
    /// function whose derivative is bounded by `rate`.
    pub fn discretization_bound(&self, rate: f64) -> f64 {
        rate * self.half_width / self.samples as f64
    }
}

/// Phase change of `P(e^{iθ})` from `t0` to `t1`, refining until every step
/// is below `π/2`.
fn phase_step(p: &Polynomial, t0: f64, ph0: f64, t1: f64, ph1: f64, depth: u32) -> Result<f64> {
    let d = wrap_angle(ph1 - ph0);
    if d.abs() < FRAC_PI_2 {
        return Ok(d);
    }
    if depth >= MAX_REFINE_DEPTH {
        return Err(Error::UnwrapAmbiguity { theta: t0 });
    }
    let mid = 0.5 * (t0 + t1);
    let ph_mid =
        guarded_phase(p, mid).map_err(|_| Error::ArcContainsRoot { angle: mid })?;
    Ok(phase_step(p, t0, ph0, mid, ph_mid, depth + 1)?
        + phase_step(p, mid, ph_mid, t1, ph1, depth + 1)?)
}

/// `sup |Δ(2 arg P(z) - n arg z)|` over the arc, measured from its center.
///
/// This is the smallest admissible `β` in the arc hypothesis of the upper
/// rotation bound. Zeros of `P` are located first; any zero on the open arc
/// is an error.
pub fn arc_increment(p: &Polynomial, arc: &ArcSpec) -> Result<f64> {
    let zeros = roots::find_roots(p, &RootSolveConfig::default())?;
    arc_increment_with_zeros(p, arc, &zeros)
}

/// Same as [`arc_increment`] with the zeros of `P` already known.
pub fn arc_increment_with_zeros(p: &Polynomial, arc: &ArcSpec, zeros: &[Complex64]) -> Result<f64> {
    arc.validate()?;
    if let Some(r) = zeros
        .iter()
        .find(|r| Zone::of(**r) == Zone::OnCircle && arc.contains_angle(r.arg()))
    {
        return Err(Error::ArcContainsRoot { angle: r.arg() });
    }
    let n = p.degree() as f64;
    let phase0 = guarded_phase(p, arc.center)
        .map_err(|_| Error::ArcContainsRoot { angle: arc.center })?;
    let mut sup: f64 = 0.0;
    for dir in [1.0, -1.0] {
        let mut prev_theta = arc.center;
        let mut prev_phase = phase0;
        let mut unwrapped = 0.0;
        for j in 1..=arc.samples {
            let offset = dir * arc.half_width * j as f64 / arc.samples as f64;
            let theta = arc.center + offset;
            let phase = match guarded_phase(p, theta) {
                Ok(ph) => ph,
                // The endpoint is not part of the open arc.
                Err(_) if j == arc.samples => break,
                Err(_) => return Err(Error::ArcContainsRoot { angle: theta }),
            };
            unwrapped += phase_step(p, prev_theta, prev_phase, theta, phase, 0)?;
            sup = sup.max((2.0 * unwrapped - n * offset).abs());
            prev_theta = theta;
            prev_phase = phase;
        }
    }
    Ok(sup)
}

/// Five-point central difference `f'(x)` for a complex-valued function of a
/// real variable.
pub fn five_point_derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
}

/// Five-point central difference `f''(x)`.
pub fn five_point_second_derivative<F: Fn(f64) -> Complex64>(f: F, x: f64, h: f64) -> Complex64 {
    (-f(x + 2.0 * h) + 16.0 * f(x + h) - 30.0 * f(x) + 16.0 * f(x - h) - f(x - 2.0 * h))
        / (12.0 * h * h)
}
