//! All zeros of a polynomial by Aberth–Ehrlich simultaneous iteration, and
//! their location relative to the unit circle.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSolveConfig {
    pub max_iterations: usize,
    /// Stop once every correction is below `convergence_tol * max(1, |z|)`.
    pub convergence_tol: f64,
    /// Accept `|P(a)| <= residual_tol * Σ|c_k| max(1, |a|)^n`.
    pub residual_tol: f64,
}

impl Default for RootSolveConfig {
    fn default() -> Self {
        RootSolveConfig { max_iterations: 1000, convergence_tol: 1e-14, residual_tol: 1e-10 }
    }
}

impl RootSolveConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations == 0
            || !(self.convergence_tol > 0.0 && self.convergence_tol < 1.0)
            || self.residual_tol.is_nan()
            || self.residual_tol <= 0.0
        {
            return Err(Error::InvalidArgument(format!("bad root solver config {self:?}")));
        }
        Ok(())
    }
}

/// Plain Horner; the iteration only needs the Newton ratio, not full accuracy.
fn newton_ratio(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// `Σ |c_k| |z|^k`, the rounding-error scale of Horner's scheme at `z`.
fn horner_scale(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
}

/// Returns the `n` zeros of `p`, counted with multiplicity.
pub fn find_roots(p: &Polynomial, cfg: &RootSolveConfig) -> Result<Vec<Complex64>> {
    cfg.validate()?;
    let n = p.degree();
    let lead = p.leading();
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|&c| c / lead).collect();

    if n == 1 {
        return Ok(vec![-coeffs[0]]);
    }

    // Starting points on a circle with an irrational angular offset.
    let max_ratio = coeffs[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = (1.0 + max_ratio).sqrt();
    let offset = (5f64.sqrt() - 1.0) / 2.0;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, TAU * k as f64 / n as f64 + offset))
        .collect();
    let mut done = vec![false; n];

    for _ in 0..cfg.max_iterations {
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (value, deriv) = newton_ratio(&coeffs, z[k]);
            // Residual at rounding level: the root is as good as it gets.
            if value.norm() <= 4.0 * f64::EPSILON * horner_scale(&coeffs, z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = value / deriv;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            let step = if step.re.is_finite() && step.im.is_finite() {
                step
            } else if ratio.re.is_finite() && ratio.im.is_finite() {
                ratio
            } else {
                // Stationary point of P; kick off it.
                Complex64::from_polar(cfg.convergence_tol.sqrt() * z[k].norm().max(1.0), offset)
            };
            z[k] -= step;
            if step.norm() <= cfg.convergence_tol * z[k].norm().max(1.0) {
                done[k] = true;
            }
        }
        if done.iter().all(|&d| d) {
            return accept(p, z, cfg);
        }
    }
    Err(Error::NonConvergence { iterations: cfg.max_iterations })
}

fn accept(p: &Polynomial, roots: Vec<Complex64>, cfg: &RootSolveConfig) -> Result<Vec<Complex64>> {
    let n = p.degree() as i32;
    let total: f64 = p.coeffs().iter().map(|c| c.norm()).sum();
    for &r in &roots {
        let bound = cfg.residual_tol * total * r.norm().max(1.0).powi(n);
        if p.eval(r).norm() > bound {
            return Err(Error::NonConvergence { iterations: cfg.max_iterations });
        }
    }
    Ok(roots)
}

/// Location of the zeros relative to the unit circle.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZoneSummary {
    pub inside: usize,
    pub on_circle: usize,
    pub outside: usize,
    pub all_in_closed_disk: bool,
    pub all_on_circle: bool,
    pub none_inside_open_disk: bool,
    #[serde(skip)]
    pub roots: Vec<Complex64>,
}

impl ZoneSummary {
    pub fn from_roots(roots: Vec<Complex64>) -> Self {
        let mut inside = 0;
        let mut on_circle = 0;
        let mut outside = 0;
        for r in &roots {
            match Zone::of(*r) {
                Zone::Inside => inside += 1,
                Zone::OnCircle => on_circle += 1,
                Zone::Outside => outside += 1,
            }
        }
        ZoneSummary {
            inside,
            on_circle,
            outside,
            all_in_closed_disk: outside == 0,
            all_on_circle: inside == 0 && outside == 0,
            none_inside_open_disk: inside == 0,
            roots,
        }
    }

    /// Zeros lying on the unit circle.
    pub fn unimodular_roots(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.roots.iter().copied().filter(|r| Zone::of(*r) == Zone::OnCircle)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Zone {
    Inside,
    OnCircle,
    Outside,
}

impl Zone {
    pub fn of(r: Complex64) -> Zone {
        let m = r.norm();
        if (m - 1.0).abs() <= tol::ON_CIRCLE {
            Zone::OnCircle
        } else if m < 1.0 {
            Zone::Inside
        } else {
            Zone::Outside
        }
    }
}

pub fn classify_zeros(p: &Polynomial, cfg: &RootSolveConfig) -> Result<ZoneSummary> {
    Ok(ZoneSummary::from_roots(find_roots(p, cfg)?))
}
