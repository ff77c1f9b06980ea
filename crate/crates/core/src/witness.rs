//! Constructors for the equality cases of the rotation bounds, and a runner
//! that measures how close each construction comes to equality.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blaschke::{self, BlaschkeProduct};
use crate::bounds::{self, LambdaValue};
use crate::check::{EqualityCheck, InequalityCheck};
use crate::error::{Error, Result};
use crate::oracle::{self, ArcSpec};
use crate::polynomial::{Polynomial, RootForm, UnitCirclePoint};
use crate::rational::{RationalChecker, RationalFunction};
use crate::roots::ZoneSummary;
use crate::tol;

/// Tolerance for the value-dependent bound at `z = 1`.
pub const THM1_EQUALITY_TOL: f64 = 1e-8;
/// Tolerance for `Λ(P, 1) = 1` in the arc family.
pub const THM3_EQUALITY_TOL: f64 = 1e-10;
pub const GORYAINOV_EQUALITY_TOL: f64 = 1e-9;
pub const UNIMODULAR_EQUALITY_TOL: f64 = 1e-9;
pub const RATIONAL_EQUALITY_TOL: f64 = 1e-8;

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn check_unimodular(roots: &[Complex64]) -> Result<()> {
    for &r in roots {
        if (r.norm() - 1.0).abs() > tol::ON_CIRCLE {
            return Err(Error::InvalidWitnessParams(format!("root {r} is not unimodular")));
        }
        if (r - one()).norm() <= tol::WITNESS_EXCLUSION {
            return Err(Error::InvalidWitnessParams(format!("root {r} too close to 1")));
        }
    }
    Ok(())
}

fn check_interior(a: Complex64) -> Result<()> {
    if a.norm().is_nan() || a.norm() >= 1.0 {
        return Err(Error::InvalidWitnessParams(format!("|a| = {} is not below 1", a.norm())));
    }
    Ok(())
}

/// `(z - a) ∏ (z - a_k)` with `|a| < 1` and unimodular `a_k != 1`.
pub fn witness_thm1(a: Complex64, unimodular_roots: &[Complex64]) -> Result<RootForm> {
    check_interior(a)?;
    check_unimodular(unimodular_roots)?;
    let mut roots = vec![a];
    roots.extend_from_slice(unimodular_roots);
    RootForm::monic(roots)
}

/// `c_n z ∏ (z - a_k)` with unimodular `a_k != 1` off the open arc of
/// half-width `alpha` around `1`.
pub fn witness_thm3(leading: Complex64, unimodular_roots: &[Complex64], alpha: f64) -> Result<RootForm> {
    check_unimodular(unimodular_roots)?;
    let arc = ArcSpec::new(0.0, alpha).map_err(|e| Error::InvalidWitnessParams(e.to_string()))?;
    if let Some(r) = unimodular_roots.iter().find(|r| arc.contains_angle(r.arg())) {
        return Err(Error::ArcContainsRoot { angle: r.arg() });
    }
    let mut roots = vec![Complex64::new(0.0, 0.0)];
    roots.extend_from_slice(unimodular_roots);
    RootForm::new(leading, roots).map_err(|e| Error::InvalidWitnessParams(e.to_string()))
}

/// `f*(z) = z (1 - conj a)/(1 - a) · (z - a)/(1 - conj(a) z)`.
pub fn witness_goryainov(a: Complex64) -> Result<BlaschkeProduct> {
    check_interior(a)?;
    let pre = (one() - a.conj()) / (one() - a);
    BlaschkeProduct::new(pre / pre.norm(), 1, &[a])
}

/// `n` seeded random roots on the unit circle.
pub fn witness_unimodular(n: usize, seed: u64) -> Result<RootForm> {
    if n == 0 {
        return Err(Error::InvalidWitnessParams("n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    RootForm::monic((0..n).map(|_| Complex64::from_polar(1.0, rng.gen_range(0.0..TAU))).collect())
}

/// `αB + β` with `|α| = |β|`.
pub fn witness_rational(poles: &[Complex64], alpha: Complex64, beta: Complex64) -> Result<RationalFunction> {
    if alpha.norm() == 0.0 || (alpha.norm() - beta.norm()).abs() > 1e-12 * alpha.norm() {
        return Err(Error::InvalidWitnessParams("need |alpha| = |beta| > 0".into()));
    }
    RationalFunction::blaschke_combination(poles, alpha, beta)
        .map_err(|e| Error::InvalidWitnessParams(e.to_string()))
}

/// Parameters of one equality family, as read from JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "theorem", rename_all = "snake_case")]
pub enum WitnessSpec {
    Thm1 {
        a: Complex64,
        #[serde(default)]
        unimodular_roots: Vec<Complex64>,
    },
    Thm3 {
        #[serde(default = "one")]
        leading: Complex64,
        #[serde(default)]
        unimodular_roots: Vec<Complex64>,
        alpha: f64,
    },
    Goryainov {
        a: Complex64,
    },
    Unimodular {
        n: usize,
        seed: u64,
        /// Number of sample points on the circle.
        #[serde(default = "default_points")]
        points: usize,
    },
    Rational {
        poles: Vec<Complex64>,
        alpha: Complex64,
        beta: Complex64,
        #[serde(default = "default_points")]
        points: usize,
    },
}

fn default_points() -> usize {
    16
}

/// The constructed object and its equality diagnostics.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub spec: WitnessSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<Polynomial>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub root_form: Option<RootForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<RationalFunction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub blaschke: Option<BlaschkeProduct>,
    pub equalities: Vec<EqualityCheck>,
    pub inequalities: Vec<InequalityCheck>,
}

impl WitnessReport {
    fn new(spec: &WitnessSpec) -> Self {
        WitnessReport {
            spec: spec.clone(),
            polynomial: None,
            root_form: None,
            rational: None,
            blaschke: None,
            equalities: Vec::new(),
            inequalities: Vec::new(),
        }
    }

    pub fn passes(&self) -> bool {
        self.equalities.iter().all(|c| c.holds) && self.inequalities.iter().all(|c| c.holds)
    }
}

/// Evenly spaced angles with a small offset so that none hits a root of unity.
fn sample_points(count: usize) -> impl Iterator<Item = UnitCirclePoint> {
    (0..count).map(move |k| UnitCirclePoint::new(0.1234 + TAU * k as f64 / count as f64))
}

pub fn run_witness(spec: &WitnessSpec) -> Result<WitnessReport> {
    let mut report = WitnessReport::new(spec);
    let at_one = UnitCirclePoint::new(0.0);
    match spec {
        WitnessSpec::Thm1 { a, unimodular_roots } => {
            let rf = witness_thm1(*a, unimodular_roots)?;
            let p = rf.to_polynomial()?;
            let lam = bounds::lambda_at(&p, at_one)?;
            let rhs = bounds::bound_value_thm1(&p, at_one, lam)?;
            report.equalities.push(EqualityCheck::new("thm1_value_bound", lam.0, rhs, THM1_EQUALITY_TOL));
            let f = blaschke::from_polynomial_thm1(&rf)?;
            let g = blaschke::check_goryainov(&f, lam.0 + 1.0)?;
            report.equalities.push(EqualityCheck::new(
                "goryainov",
                g.lhs,
                g.rhs,
                GORYAINOV_EQUALITY_TOL,
            ));
            report.polynomial = Some(p);
            report.root_form = Some(rf);
        }
        WitnessSpec::Thm3 { leading, unimodular_roots, alpha } => {
            let rf = witness_thm3(*leading, unimodular_roots, *alpha)?;
            let p = rf.to_polynomial()?;
            let lam = bounds::lambda_at(&p, at_one)?;
            report
                .equalities
                .push(EqualityCheck::new("thm3_lambda_at_one", lam.0, 1.0, THM3_EQUALITY_TOL));
            let arc = ArcSpec::new(0.0, *alpha)?;
            let beta = oracle::arc_increment_with_zeros(&p, &arc, &rf.roots)?;
            report.equalities.push(EqualityCheck::new(
                "thm3_arc_increment",
                beta,
                *alpha,
                TAU / arc.samples as f64,
            ));
            let f = blaschke::from_polynomial_thm3(&rf)?;
            let worst = sample_points(32)
                .map(|pt| (f.eval(pt.z() * 0.7) - pt.z() * 0.7).norm())
                .fold(0.0, f64::max);
            report.equalities.push(EqualityCheck::new("thm3_identity_map", worst, 0.0, THM3_EQUALITY_TOL));
            report.polynomial = Some(p);
            report.root_form = Some(rf);
        }
        WitnessSpec::Goryainov { a } => {
            let f = witness_goryainov(*a)?;
            let rf = RootForm::monic(vec![*a])?;
            let p = rf.to_polynomial()?;
            let fp1 = blaschke::boundary_derivative_modulus(&p, at_one)?;
            let g = blaschke::check_goryainov(&f, fp1)?;
            report.equalities.push(EqualityCheck::new("goryainov", g.lhs, g.rhs, GORYAINOV_EQUALITY_TOL));
            report.blaschke = Some(f);
        }
        WitnessSpec::Unimodular { n, seed, points } => {
            let rf = witness_unimodular(*n, *seed)?;
            let p = rf.to_polynomial()?;
            for pt in sample_points(*points) {
                let lam = match bounds::lambda_at(&p, pt) {
                    Ok(l) => l,
                    Err(Error::ZeroProximity { .. }) => continue,
                    Err(e) => return Err(e),
                };
                report.equalities.push(EqualityCheck::new(
                    "lambda_zero",
                    lam.0,
                    0.0,
                    UNIMODULAR_EQUALITY_TOL,
                ));
            }
            report.equalities.push(EqualityCheck::new(
                "thm2_rhs_zero",
                bounds::bound_coeff2_thm2(&p),
                0.0,
                UNIMODULAR_EQUALITY_TOL,
            ));
            report.polynomial = Some(p);
            report.root_form = Some(rf);
        }
        WitnessSpec::Rational { poles, alpha, beta, points } => {
            let r = witness_rational(poles, *alpha, *beta)?;
            let checker = RationalChecker::new(r.clone())?;
            for pt in sample_points(*points) {
                let rep = match checker.check(pt, tol::CHECK_SLACK) {
                    Ok(rep) => rep,
                    Err(Error::ZeroProximity { .. }) => continue,
                    Err(e) => return Err(e),
                };
                report.equalities.push(EqualityCheck::new(
                    "rational_equality",
                    rep.arg_derivative,
                    rep.rhs,
                    RATIONAL_EQUALITY_TOL,
                ));
            }
            report.rational = Some(r);
        }
    }
    Ok(report)
}

/// Equality residual `|Λ - RHS|` of the value-dependent bound at `z = 1`.
pub fn thm1_residual(rf: &RootForm) -> Result<f64> {
    let p = rf.to_polynomial()?;
    let at_one = UnitCirclePoint::new(0.0);
    let lam: LambdaValue = bounds::lambda_at(&p, at_one)?;
    Ok((lam.0 - bounds::bound_value_thm1(&p, at_one, lam)?).abs())
}

/// Zone summary of a witness built from known roots, without re-solving.
pub fn zones_of(rf: &RootForm) -> ZoneSummary {
    ZoneSummary::from_roots(rf.roots.clone())
}
