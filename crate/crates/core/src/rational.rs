//! Rotation of rational functions `R(z) = P(z) / ∏ (z - a_k)` with every pole
//! outside the closed unit disk.
//!
//! The comparison function is `B(z) = ∏ (1 - conj(a_k) z) / (z - a_k)`. With
//! `m = deg P` and `n` poles,
//!
//! * all `m` zeros of `R` in `|z| <= 1` gives
//!   `(arg R)'_θ >= (m - n + (arg B)'_θ) / 2`,
//! * no zero of `R` in `|z| < 1` gives the reverse inequality,
//!
//! with equality for `R = αB + β`, `|α| = |β|`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::check::InequalityCheck;
use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, UnitCirclePoint};
use crate::roots::{self, RootSolveConfig, ZoneSummary};
use crate::tol;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// `B(z) = ∏ (1 - conj(a_k) z) / (z - a_k)` for poles off the unit circle.
#[derive(Clone, Debug, PartialEq)]
pub struct BlaschkeB {
    poles: Vec<Complex64>,
}

impl BlaschkeB {
    pub fn new(poles: &[Complex64]) -> Result<Self> {
        if let Some(&a) = poles.iter().find(|a| (a.norm() - 1.0).abs() <= tol::POLE_MARGIN) {
            return Err(Error::PoleOnCircle(a));
        }
        Ok(BlaschkeB { poles: poles.to_vec() })
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles.iter().fold(one(), |acc, &a| acc * (one() - a.conj() * z) / (z - a))
    }

    /// `B'(z) / B(z) = Σ (-conj(a) / (1 - conj(a) z) - 1 / (z - a))`.
    pub fn log_derivative(&self, z: Complex64) -> Complex64 {
        self.poles
            .iter()
            .map(|&a| -a.conj() / (one() - a.conj() * z) - 1.0 / (z - a))
            .sum()
    }

    /// `(arg B(e^{iθ}))'_θ = Re(z B'(z) / B(z))`.
    pub fn arg_derivative(&self, pt: UnitCirclePoint) -> f64 {
        let z = pt.z();
        (z * self.log_derivative(z)).re
    }
}

/// `P(z) / ∏ (z - a_k)` with all `|a_k| > 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRational", into = "RawRational")]
pub struct RationalFunction {
    numerator: Polynomial,
    poles: Vec<Complex64>,
}

#[derive(Clone, Serialize, Deserialize)]
struct RawRational {
    numerator: Vec<Complex64>,
    poles: Vec<Complex64>,
}

impl TryFrom<RawRational> for RationalFunction {
    type Error = Error;

    fn try_from(raw: RawRational) -> Result<Self> {
        RationalFunction::new(Polynomial::new_allowing_constant(raw.numerator)?, raw.poles)
    }
}

impl From<RationalFunction> for RawRational {
    fn from(r: RationalFunction) -> Self {
        RawRational { numerator: r.numerator.into(), poles: r.poles }
    }
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, poles: Vec<Complex64>) -> Result<Self> {
        for &a in &poles {
            let m = a.norm();
            if (m - 1.0).abs() <= tol::POLE_MARGIN {
                return Err(Error::PoleOnCircle(a));
            }
            if m < 1.0 {
                return Err(Error::InvalidArgument(format!("pole {a} inside the unit disk")));
            }
        }
        Ok(RationalFunction { numerator, poles })
    }

    /// `αB + β` written over the common denominator `∏ (z - a_k)`.
    pub fn blaschke_combination(poles: &[Complex64], alpha: Complex64, beta: Complex64) -> Result<Self> {
        // α ∏ (1 - conj(a) z) + β ∏ (z - a)
        let mut num_b = vec![one()];
        let mut den = vec![one()];
        for &a in poles {
            num_b = mul_linear(&num_b, one(), -a.conj());
            den = mul_linear(&den, -a, one());
        }
        let coeffs: Vec<Complex64> =
            num_b.iter().zip(&den).map(|(&x, &y)| alpha * x + beta * y).collect();
        let mut coeffs = coeffs;
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.norm() == 0.0) {
            coeffs.pop();
        }
        Self::new(Polynomial::new_allowing_constant(coeffs)?, poles.to_vec())
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn poles(&self) -> &[Complex64] {
        &self.poles
    }

    /// Numerator degree `m`.
    pub fn numerator_degree(&self) -> usize {
        self.numerator.degree()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.poles.iter().fold(self.numerator.eval(z), |acc, &a| acc / (z - a))
    }

    pub fn blaschke(&self) -> BlaschkeB {
        BlaschkeB { poles: self.poles.clone() }
    }
}

/// `(c_0 + c_1 z + ...)(u + v z)`.
fn mul_linear(coeffs: &[Complex64], u: Complex64, v: Complex64) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
    for (k, &c) in coeffs.iter().enumerate() {
        out[k] += c * u;
        out[k + 1] += c * v;
    }
    out
}

/// `(arg R(e^{iθ}))'_θ = Re(z P'/P) - Σ Re(z / (z - a_k))`.
pub fn arg_derivative_r(r: &RationalFunction, pt: UnitCirclePoint) -> Result<f64> {
    let z = pt.z();
    let numer = if r.numerator.degree() == 0 {
        r.numerator.eval_guarded(z)?;
        0.0
    } else {
        r.numerator.rotation_speed(pt)?
    };
    let poles: f64 = r.poles.iter().map(|&a| (z / (z - a)).re).sum();
    Ok(numer - poles)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalReport {
    pub theta: f64,
    pub arg_derivative: f64,
    /// `(m - n + (arg B)'_θ) / 2`.
    pub rhs: f64,
    /// Lower bound, applicable when all `m` zeros lie in `|z| <= 1`.
    pub lower: Option<InequalityCheck>,
    /// Upper bound, applicable when no zero lies in `|z| < 1`.
    pub upper: Option<InequalityCheck>,
}

impl RationalReport {
    pub fn passes(&self) -> bool {
        self.lower.as_ref().is_none_or(|c| c.holds) && self.upper.as_ref().is_none_or(|c| c.holds)
    }
}

/// A rational function with its numerator zeros located once.
#[derive(Clone, Debug)]
pub struct RationalChecker {
    r: RationalFunction,
    b: BlaschkeB,
    zones: ZoneSummary,
}

impl RationalChecker {
    pub fn new(r: RationalFunction) -> Result<Self> {
        let zones = if r.numerator.degree() == 0 {
            ZoneSummary::from_roots(Vec::new())
        } else {
            roots::classify_zeros(&r.numerator, &RootSolveConfig::default())?
        };
        Ok(Self::with_zones(r, zones))
    }

    pub fn with_zones(r: RationalFunction, zones: ZoneSummary) -> Self {
        let b = r.blaschke();
        RationalChecker { r, b, zones }
    }

    pub fn function(&self) -> &RationalFunction {
        &self.r
    }

    pub fn zones(&self) -> &ZoneSummary {
        &self.zones
    }

    pub fn check(&self, pt: UnitCirclePoint, tolerance: f64) -> Result<RationalReport> {
        let lhs = arg_derivative_r(&self.r, pt)?;
        let m = self.r.numerator_degree() as f64;
        let n = self.r.poles.len() as f64;
        let rhs = 0.5 * (m - n + self.b.arg_derivative(pt));
        let lower = self
            .zones
            .all_in_closed_disk
            .then(|| InequalityCheck::at_least("rational_lower", lhs, rhs, tolerance));
        let upper = self
            .zones
            .none_inside_open_disk
            .then(|| InequalityCheck::at_most("rational_upper", lhs, rhs, tolerance));
        Ok(RationalReport { theta: pt.theta(), arg_derivative: lhs, rhs, lower, upper })
    }
}

/// Both rotation inequalities at `pt`, after classifying the numerator zeros.
pub fn check_eq13_eq14(r: &RationalFunction, pt: UnitCirclePoint) -> Result<RationalReport> {
    RationalChecker::new(r.clone())?.check(pt, tol::CHECK_SLACK)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn blaschke_b_examples() {
        let b = BlaschkeB::new(&[c(2.0, 0.0)]).unwrap();
        assert!((b.eval(one()) - one()).norm() < 1e-15);
        assert!((b.arg_derivative(UnitCirclePoint::new(0.0)) - 3.0).abs() < 1e-14);
        let empty = BlaschkeB::new(&[]).unwrap();
        assert_eq!(empty.eval(c(0.3, 0.2)), one());
        assert_eq!(empty.arg_derivative(UnitCirclePoint::new(1.0)), 0.0);
        assert!(matches!(BlaschkeB::new(&[c(0.0, 1.0)]), Err(Error::PoleOnCircle(_))));
    }

    #[test]
    fn blaschke_b_unimodular_and_closed_form() {
        let poles = [c(1.5, 0.5), c(-2.0, 1.0), c(0.0, -1.2)];
        let b = BlaschkeB::new(&poles).unwrap();
        for k in 0..100 {
            let pt = UnitCirclePoint::new(TAU * k as f64 / 100.0);
            assert!((b.eval(pt.z()).norm() - 1.0).abs() < 1e-10);
            let closed: f64 =
                poles.iter().map(|&a| (a.norm_sqr() - 1.0) / (pt.z() - a).norm_sqr()).sum();
            assert!((b.arg_derivative(pt) - closed).abs() < 1e-12);
            assert!(b.arg_derivative(pt) > 0.0);
        }
    }

    #[test]
    fn arg_derivative_examples() {
        let r = RationalFunction::new(Polynomial::from_real(&[1.0, -2.0]).unwrap(), vec![c(2.0, 0.0)])
            .unwrap();
        assert!((arg_derivative_r(&r, UnitCirclePoint::new(0.0)).unwrap() - 3.0).abs() < 1e-14);
        let constant =
            RationalFunction::new(Polynomial::new_allowing_constant(vec![c(2.0, 1.0)]).unwrap(), vec![])
                .unwrap();
        assert_eq!(arg_derivative_r(&constant, UnitCirclePoint::new(0.4)).unwrap(), 0.0);
    }

    #[test]
    fn b_itself_gives_twice_the_bound() {
        let r = RationalFunction::new(Polynomial::from_real(&[1.0, -2.0]).unwrap(), vec![c(2.0, 0.0)])
            .unwrap();
        for &theta in &[0.0, 1.0, 2.5] {
            let rep = check_eq13_eq14(&r, UnitCirclePoint::new(theta)).unwrap();
            let low = rep.lower.unwrap();
            assert!((rep.arg_derivative - 2.0 * rep.rhs).abs() < 1e-12);
            assert!((low.margin - rep.rhs).abs() < 1e-12);
            assert!(rep.upper.is_none());
        }
    }

    #[test]
    fn blaschke_combination_is_extremal() {
        let r = RationalFunction::blaschke_combination(&[c(2.0, 0.0), c(0.0, -1.7)], one(), one())
            .unwrap();
        for k in 0..20 {
            let pt = UnitCirclePoint::new(0.1 + TAU * k as f64 / 20.0);
            let rep = check_eq13_eq14(&r, pt).unwrap();
            assert!(rep.lower.as_ref().unwrap().margin.abs() < 1e-8, "{rep:?}");
            assert!(rep.upper.as_ref().unwrap().margin.abs() < 1e-8);
        }
    }

    #[test]
    fn strict_inequality_example() {
        let r = RationalFunction::new(Polynomial::from_real(&[-0.5, 1.0]).unwrap(), vec![c(2.0, 0.0)])
            .unwrap();
        let rep = check_eq13_eq14(&r, UnitCirclePoint::new(PI)).unwrap();
        let low = rep.lower.unwrap();
        assert!(low.holds && low.margin > 0.1);
    }

    #[test]
    fn pole_validation() {
        let p = Polynomial::from_real(&[1.0, 1.0]).unwrap();
        assert!(matches!(
            RationalFunction::new(p.clone(), vec![c(1.0, 0.0)]),
            Err(Error::PoleOnCircle(_))
        ));
        assert!(RationalFunction::new(p, vec![c(0.5, 0.0)]).is_err());
    }

    #[test]
    fn json_format() {
        let r: RationalFunction =
            serde_json::from_str(r#"{"numerator": [[1, 0], [-2, 0]], "poles": [[2, 0]]}"#).unwrap();
        assert_eq!(r.numerator_degree(), 1);
        let back: RationalFunction = serde_json::from_str(&serde_json::to_string(&r).unwrap()).unwrap();
        assert_eq!(back, r);
        assert!(serde_json::from_str::<RationalFunction>(r#"{"numerator": [[1, 0]], "poles": [[0, 1]]}"#)
            .is_err());
    }
}
