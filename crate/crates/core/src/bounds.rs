//! The excess rotation `Λ(P, z) = 2 (arg P(e^{iθ}))'_θ - n` and its bounds.
//!
//! Lower bounds (valid when every zero of `P` lies in `|z| <= 1`), all in
//! `Λ`-form:
//!
//! | name          | value                                                        |
//! |---------------|--------------------------------------------------------------|
//! | `classic`     | `0`                                                          |
//! | `coeff`       | `(|c_n| - |c_0|) / (|c_n| + |c_0|)`                          |
//! | `sqrt_weak`   | `(√|c_n| - √|c_0|) / √|c_n|`                                 |
//! | `value_thm1`  | `|(Λ + 1) conj(c_0) P(z) / (c_n z^n conj(P(z))) - 1|`        |
//! | `coeff2_thm2` | `2(|c_0| - |c_n|)² / (|c_n|² - |c_0|² + |conj(c_n) c_1 - c_0 conj(c_{n-1})|)` |
//!
//! Upper bounds:
//!
//! * `arc_thm3`: `tan(β/2) / tan(α/2)` when the arc of half-width `α` around
//!   `z` is zero-free and `2 arg P - n arg z` moves by at most `β` on it.
//! * `upper_zero_free`: `n/2 + (|c_n| - |c_0|) / (2(|c_n| + |c_0|))` on the
//!   rotation speed itself, for `P` without zeros in `|z| < 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::{self, ArcSpec};
use crate::polynomial::{Polynomial, UnitCirclePoint};
use crate::roots::{self, RootSolveConfig, ZoneSummary};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LambdaValue(pub f64);

impl LambdaValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

pub fn lambda_at(p: &Polynomial, pt: UnitCirclePoint) -> Result<LambdaValue> {
    Ok(LambdaValue(2.0 * p.rotation_speed(pt)? - p.degree() as f64))
}

/// `(|c_n| - |c_0|) / (|c_n| + |c_0|)`.
pub fn bound_coefficient(p: &Polynomial) -> f64 {
    let cn = p.leading().norm();
    let c0 = p.constant().norm();
    (cn - c0) / (cn + c0)
}

/// `(√|c_n| - √|c_0|) / √|c_n|`, the older and weaker coefficient bound.
pub fn bound_sqrt_weak(p: &Polynomial) -> f64 {
    let cn = p.leading().norm().sqrt();
    let c0 = p.constant().norm().sqrt();
    (cn - c0) / cn
}

/// Right-hand side of the value-dependent lower bound at `pt`, given `Λ`
/// at the same point.
pub fn bound_value_thm1(p: &Polynomial, pt: UnitCirclePoint, lam: LambdaValue) -> Result<f64> {
    let z = pt.z();
    let value = p.eval_guarded(z)?;
    let unit = value / value.norm();
    let zn = z.powu(p.degree() as u32);
    let w = (lam.0 + 1.0) * p.constant().conj() * unit * unit / (p.leading() * zn);
    Ok((w - 1.0).norm())
}

/// `conj(c_n) c_1 - c_0 conj(c_{n-1})`; equals `conj(c_n)² f''(0) / 2` for
/// the Blaschke product `P(z) / (z^{n-1} conj(P(1/conj z)))`.
pub(crate) fn mercer_cross_term(p: &Polynomial) -> num_complex::Complex64 {
    let n = p.degree();
    p.leading().conj() * p.coeff(1) - p.constant() * p.coeff(n - 1).conj()
}

/// Right-hand side of the second-coefficient lower bound; zero when
/// `|c_0| = |c_n|`.
pub fn bound_coeff2_thm2(p: &Polynomial) -> f64 {
    let cn = p.leading().norm();
    let c0 = p.constant().norm();
    if (cn - c0).abs() <= tol::DEGENERATE_REL * cn.max(c0) {
        return 0.0;
    }
    let denom = cn * cn - c0 * c0 + mercer_cross_term(p).norm();
    2.0 * (c0 - cn).powi(2) / denom
}

fn check_arc_params(alpha: f64, beta: f64) -> Result<()> {
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if !(v > 0.0 && v < std::f64::consts::PI) {
            return Err(Error::InvalidArgument(format!("{name} = {v} outside (0, π)")));
        }
    }
    Ok(())
}

/// `tan(β/2) / tan(α/2)`.
pub fn arc_ratio(alpha: f64, beta: f64) -> f64 {
    (beta / 2.0).tan() / (alpha / 2.0).tan()
}

/// Upper bound on `Λ(P, z_0)` from the arc hypothesis, after verifying it:
/// all zeros in the closed disk, none on the open arc, and the measured
/// increment of `2 arg P - n arg z` not above `beta`.
pub fn bound_arc_thm3(p: &Polynomial, pt: UnitCirclePoint, alpha: f64, beta: f64) -> Result<f64> {
    check_arc_params(alpha, beta)?;
    let zones = roots::classify_zeros(p, &RootSolveConfig::default())?;
    if !zones.all_in_closed_disk {
        return Err(Error::HypothesisViolated(format!(
            "{} zeros outside the closed unit disk",
            zones.outside
        )));
    }
    let arc = ArcSpec::new(pt.theta(), alpha)?;
    let measured = match oracle::arc_increment_with_zeros(p, &arc, &zones.roots) {
        Ok(m) => m,
        Err(Error::ArcContainsRoot { angle }) => {
            return Err(Error::HypothesisViolated(format!("zero on the arc at angle {angle}")))
        }
        Err(e) => return Err(e),
    };
    if measured > beta + tol::slack(beta) {
        return Err(Error::HypothesisViolated(format!(
            "arc increment {measured} exceeds beta = {beta}"
        )));
    }
    Ok(arc_ratio(alpha, beta))
}

fn zero_free_bound(p: &Polynomial) -> f64 {
    p.degree() as f64 / 2.0 + bound_coefficient(p) / 2.0
}

/// Upper bound on the rotation speed for `P` without zeros in `|z| < 1`.
pub fn upper_bound_zero_free(p: &Polynomial, pt: UnitCirclePoint) -> Result<f64> {
    let zones = roots::classify_zeros(p, &RootSolveConfig::default())?;
    if !zones.none_inside_open_disk {
        return Err(Error::HypothesisViolated(format!(
            "{} zeros inside the open unit disk",
            zones.inside
        )));
    }
    p.eval_guarded(pt.z())?;
    Ok(zero_free_bound(p))
}

/// One value per bound, in the fixed report order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BoundSet<T> {
    pub classic: T,
    pub coeff: T,
    pub sqrt_weak: T,
    pub value_thm1: T,
    pub coeff2_thm2: T,
    pub arc_thm3: T,
    pub upper_zero_free: T,
}

impl<T: Copy> BoundSet<T> {
    pub fn splat(v: T) -> Self {
        BoundSet {
            classic: v,
            coeff: v,
            sqrt_weak: v,
            value_thm1: v,
            coeff2_thm2: v,
            arc_thm3: v,
            upper_zero_free: v,
        }
    }

    pub fn values(&self) -> [T; 7] {
        [
            self.classic,
            self.coeff,
            self.sqrt_weak,
            self.value_thm1,
            self.coeff2_thm2,
            self.arc_thm3,
            self.upper_zero_free,
        ]
    }

    pub fn get(&self, kind: BoundKind) -> T {
        self.values()[kind as usize]
    }

    pub fn set(&mut self, kind: BoundKind, v: T) {
        let slot = match kind {
            BoundKind::Classic => &mut self.classic,
            BoundKind::Coeff => &mut self.coeff,
            BoundKind::SqrtWeak => &mut self.sqrt_weak,
            BoundKind::ValueThm1 => &mut self.value_thm1,
            BoundKind::Coeff2Thm2 => &mut self.coeff2_thm2,
            BoundKind::ArcThm3 => &mut self.arc_thm3,
            BoundKind::UpperZeroFree => &mut self.upper_zero_free,
        };
        *slot = v;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundKind {
    Classic = 0,
    Coeff,
    SqrtWeak,
    ValueThm1,
    Coeff2Thm2,
    ArcThm3,
    UpperZeroFree,
}

impl BoundKind {
    pub const ALL: [BoundKind; 7] = [
        BoundKind::Classic,
        BoundKind::Coeff,
        BoundKind::SqrtWeak,
        BoundKind::ValueThm1,
        BoundKind::Coeff2Thm2,
        BoundKind::ArcThm3,
        BoundKind::UpperZeroFree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundKind::Classic => "classic",
            BoundKind::Coeff => "coeff",
            BoundKind::SqrtWeak => "sqrt_weak",
            BoundKind::ValueThm1 => "value_thm1",
            BoundKind::Coeff2Thm2 => "coeff2_thm2",
            BoundKind::ArcThm3 => "arc_thm3",
            BoundKind::UpperZeroFree => "upper_zero_free",
        }
    }

    pub fn from_name(name: &str) -> Option<BoundKind> {
        BoundKind::ALL.into_iter().find(|k| k.name() == name)
    }
}

/// Everything known about `Λ` at one point of the circle.
///
/// `None` in `bounds`, `margins` or `flags` means the bound is not
/// applicable (its hypothesis fails) or was not requested. Margins are signed
/// so that nonnegative means the inequality holds exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub theta: f64,
    pub lambda: LambdaValue,
    pub rotation_speed: f64,
    pub bounds: BoundSet<Option<f64>>,
    pub margins: BoundSet<Option<f64>>,
    pub flags: BoundSet<Option<bool>>,
}

impl BoundReport {
    /// True when no applicable bound failed.
    pub fn passes(&self) -> bool {
        self.flags.values().iter().all(|f| f.unwrap_or(true))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportOptions {
    pub enabled: BoundSet<bool>,
    /// Half-width `α` of the arc for the arc bound.
    pub arc_half_width: Option<f64>,
    pub arc_samples: usize,
    pub tolerance: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        let mut enabled = BoundSet::splat(true);
        enabled.arc_thm3 = false;
        ReportOptions {
            enabled,
            arc_half_width: None,
            arc_samples: tol::DEFAULT_ARC_SAMPLES,
            tolerance: tol::CHECK_SLACK,
        }
    }
}

impl ReportOptions {
    pub fn with_arc(mut self, half_width: f64) -> Self {
        self.enabled.arc_thm3 = true;
        self.arc_half_width = Some(half_width);
        self
    }
}

/// A polynomial together with the location of its zeros, so that per-point
/// reports do not re-solve for roots.
#[derive(Clone, Debug)]
pub struct BoundContext {
    poly: Polynomial,
    zones: ZoneSummary,
}

impl BoundContext {
    pub fn new(poly: Polynomial) -> Result<Self> {
        let zones = roots::classify_zeros(&poly, &RootSolveConfig::default())?;
        Ok(BoundContext { poly, zones })
    }

    pub fn with_zones(poly: Polynomial, zones: ZoneSummary) -> Self {
        BoundContext { poly, zones }
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn zones(&self) -> &ZoneSummary {
        &self.zones
    }

    pub fn report(&self, pt: UnitCirclePoint, opts: &ReportOptions) -> Result<BoundReport> {
        let p = &self.poly;
        let speed = p.rotation_speed(pt)?;
        let lambda = LambdaValue(2.0 * speed - p.degree() as f64);
        let lower_ok = self.zones.all_in_closed_disk;

        let mut bounds = BoundSet::<Option<f64>>::default();
        let mut margins = BoundSet::<Option<f64>>::default();
        let mut flags = BoundSet::<Option<bool>>::default();
        let lam_slack = tol::slack_with(opts.tolerance, lambda.0);

        let mut lower = |kind: BoundKind, value: f64| {
            let margin = lambda.0 - value;
            bounds.set(kind, Some(value));
            margins.set(kind, Some(margin));
            flags.set(kind, Some(margin >= -lam_slack));
        };
        if lower_ok {
            let en = &opts.enabled;
            if en.classic {
                lower(BoundKind::Classic, 0.0);
            }
            if en.coeff {
                lower(BoundKind::Coeff, bound_coefficient(p));
            }
            if en.sqrt_weak {
                lower(BoundKind::SqrtWeak, bound_sqrt_weak(p));
            }
            if en.value_thm1 {
                lower(BoundKind::ValueThm1, bound_value_thm1(p, pt, lambda)?);
            }
            if en.coeff2_thm2 {
                lower(BoundKind::Coeff2Thm2, bound_coeff2_thm2(p));
            }
        }

        if lower_ok && opts.enabled.arc_thm3 {
            if let Some(bound) = self.arc_bound(pt, opts)? {
                let margin = bound - lambda.0;
                bounds.arc_thm3 = Some(bound);
                margins.arc_thm3 = Some(margin);
                flags.arc_thm3 = Some(margin >= -lam_slack);
            }
        }

        if self.zones.none_inside_open_disk && opts.enabled.upper_zero_free {
            let bound = zero_free_bound(p);
            let margin = bound - speed;
            bounds.upper_zero_free = Some(bound);
            margins.upper_zero_free = Some(margin);
            flags.upper_zero_free = Some(margin >= -tol::slack_with(opts.tolerance, speed));
        }

        Ok(BoundReport { theta: pt.theta(), lambda, rotation_speed: speed, bounds, margins, flags })
    }

    /// Arc bound with `β` set to the measured increment; `None` when the arc
    /// holds a zero or the increment reaches `π`.
    fn arc_bound(&self, pt: UnitCirclePoint, opts: &ReportOptions) -> Result<Option<f64>> {
        let alpha = opts.arc_half_width.unwrap_or(std::f64::consts::FRAC_PI_4);
        let arc = ArcSpec::with_samples(pt.theta(), alpha, opts.arc_samples)?;
        match oracle::arc_increment_with_zeros(&self.poly, &arc, &self.zones.roots) {
            Ok(beta) if beta > 0.0 && beta < std::f64::consts::PI => Ok(Some(arc_ratio(alpha, beta))),
            Ok(_) | Err(Error::ArcContainsRoot { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Report at `pt` with default options; locates the zeros of `p` first.
pub fn full_report(p: &Polynomial, pt: UnitCirclePoint) -> Result<BoundReport> {
    BoundContext::new(p.clone())?.report(pt, &ReportOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::{from_roots, RootForm};
    use num_complex::Complex64;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn roots_of_unity(n: usize) -> Polynomial {
        let roots = (0..n).map(|k| Complex64::from_polar(1.0, TAU * k as f64 / n as f64)).collect();
        from_roots(&RootForm::monic(roots).unwrap()).unwrap()
    }

    fn z_minus_half() -> Polynomial {
        Polynomial::from_real(&[-0.5, 1.0]).unwrap()
    }

    #[test]
    fn lambda_examples() {
        for n in 1..5 {
            let l = lambda_at(&Polynomial::monomial(n).unwrap(), UnitCirclePoint::new(2.0)).unwrap();
            assert!((l.0 - n as f64).abs() < 1e-13);
        }
        let p = roots_of_unity(6);
        let l = lambda_at(&p, UnitCirclePoint::new(PI / 6.0)).unwrap();
        assert!(l.0.abs() < 1e-9);
        let l = lambda_at(&z_minus_half(), UnitCirclePoint::new(0.0)).unwrap();
        assert!((l.0 - 3.0).abs() < 1e-15);
    }

    #[test]
    fn coefficient_bounds() {
        assert!((bound_coefficient(&z_minus_half()) - 1.0 / 3.0).abs() < 1e-15);
        assert!(bound_coefficient(&roots_of_unity(5)).abs() < 1e-14);
        assert_eq!(bound_coefficient(&Polynomial::monomial(3).unwrap()), 1.0);
        assert!((bound_sqrt_weak(&z_minus_half()) - (1.0 - 0.5f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn value_thm1_examples() {
        let p = Polynomial::monomial(2).unwrap();
        let pt = UnitCirclePoint::new(0.0);
        let rhs = bound_value_thm1(&p, pt, lambda_at(&p, pt).unwrap()).unwrap();
        assert!((rhs - 1.0).abs() < 1e-15);

        let p = z_minus_half();
        let lam = lambda_at(&p, pt).unwrap();
        let rhs = bound_value_thm1(&p, pt, lam).unwrap();
        assert!((rhs - 3.0).abs() < 1e-14 && (lam.0 - rhs).abs() < 1e-14);

        let rf = RootForm::monic(vec![c(0.4, 0.0), Complex64::from_polar(1.0, PI / 3.0)]).unwrap();
        let p = from_roots(&rf).unwrap();
        let lam = lambda_at(&p, pt).unwrap();
        assert!((lam.0 - bound_value_thm1(&p, pt, lam).unwrap()).abs() < 1e-8);
    }

    #[test]
    fn coeff2_thm2_examples() {
        assert_eq!(bound_coeff2_thm2(&roots_of_unity(7)), 0.0);
        assert!((bound_coeff2_thm2(&z_minus_half()) - 1.0 / 3.0).abs() < 1e-15);
        let p = Polynomial::monomial(2).unwrap();
        assert!((bound_coeff2_thm2(&p) - 2.0).abs() < 1e-15);
        let l = lambda_at(&p, UnitCirclePoint::new(1.0)).unwrap();
        assert!((l.0 - 2.0).abs() < 1e-14);
    }

    #[test]
    fn arc_thm3_examples() {
        assert!((arc_ratio(1.0, 1.0) - 1.0).abs() < 1e-15);
        assert!((arc_ratio(FRAC_PI_2, FRAC_PI_4) - (2f64.sqrt() - 1.0)).abs() < 1e-15);

        let p = Polynomial::from_real(&[0.0, 1.0, 1.0]).unwrap();
        let pt = UnitCirclePoint::new(0.0);
        let b = bound_arc_thm3(&p, pt, FRAC_PI_2, FRAC_PI_2).unwrap();
        assert!((b - 1.0).abs() < 1e-15);
        assert!((lambda_at(&p, pt).unwrap().0 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn arc_thm3_hypothesis_errors() {
        let p = Polynomial::from_real(&[0.0, 1.0, 1.0]).unwrap();
        let pt = UnitCirclePoint::new(0.0);
        // β smaller than the measured increment α
        assert!(matches!(
            bound_arc_thm3(&p, pt, FRAC_PI_2, FRAC_PI_4),
            Err(Error::HypothesisViolated(_))
        ));
        // zero -1 on the arc
        let q = Polynomial::from_real(&[0.0, 1.0, 1.0]).unwrap();
        assert!(matches!(
            bound_arc_thm3(&q, UnitCirclePoint::new(PI - 0.1), FRAC_PI_2, 3.0),
            Err(Error::HypothesisViolated(_))
        ));
        assert!(matches!(bound_arc_thm3(&p, pt, PI, 1.0), Err(Error::InvalidArgument(_))));
        let outside = Polynomial::from_real(&[-2.0, 1.0]).unwrap();
        assert!(matches!(
            bound_arc_thm3(&outside, pt, 1.0, 1.0),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn zero_free_examples() {
        let p = Polynomial::from_real(&[-2.0, 1.0]).unwrap();
        let pt = UnitCirclePoint::new(0.0);
        let b = upper_bound_zero_free(&p, pt).unwrap();
        assert!((b - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.rotation_speed(pt).unwrap() + 1.0).abs() < 1e-15);

        let p = roots_of_unity(4);
        let pt = UnitCirclePoint::new(FRAC_PI_4);
        let b = upper_bound_zero_free(&p, pt).unwrap();
        assert!((b - 2.0).abs() < 1e-12);
        assert!((p.rotation_speed(pt).unwrap() - 2.0).abs() < 1e-12);

        assert!(matches!(
            upper_bound_zero_free(&z_minus_half(), pt),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn zero_free_against_oracle() {
        let p = from_roots(&RootForm::monic(vec![c(2.0, 0.0), c(3.0, 0.0)]).unwrap()).unwrap();
        let b = upper_bound_zero_free(&p, UnitCirclePoint::new(PI)).unwrap();
        let fd = oracle::arg_derivative_fd(&p, PI, 1e-5).unwrap();
        assert!(fd <= b);
    }

    #[test]
    fn full_report_example() {
        let r = full_report(&z_minus_half(), UnitCirclePoint::new(0.0)).unwrap();
        assert!((r.lambda.0 - 3.0).abs() < 1e-15);
        let b = r.bounds;
        assert_eq!(b.classic, Some(0.0));
        assert!((b.coeff.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((b.sqrt_weak.unwrap() - 0.29289321881345254).abs() < 1e-15);
        assert!((b.value_thm1.unwrap() - 3.0).abs() < 1e-14);
        assert!((b.coeff2_thm2.unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(b.upper_zero_free, None);
        assert!(r.passes());
    }

    #[test]
    fn report_gates_lower_bounds_on_zone() {
        let p = from_roots(&RootForm::monic(vec![c(1.5, 0.0), c(0.2, 0.0)]).unwrap()).unwrap();
        let r = full_report(&p, UnitCirclePoint::new(1.0)).unwrap();
        assert_eq!(r.bounds.classic, None);
        assert_eq!(r.flags.value_thm1, None);
        assert_eq!(r.flags.upper_zero_free, None);
        assert!(r.passes());
    }

    #[test]
    fn report_with_arc_bound() {
        let p = Polynomial::from_real(&[0.0, 1.0, 1.0]).unwrap();
        let ctx = BoundContext::new(p).unwrap();
        let r = ctx
            .report(UnitCirclePoint::new(0.0), &ReportOptions::default().with_arc(FRAC_PI_2))
            .unwrap();
        let b = r.bounds.arc_thm3.unwrap();
        assert!((b - 1.0).abs() < 2e-3);
        assert!(r.flags.arc_thm3.unwrap());
    }

    #[test]
    fn bound_kind_names_round_trip() {
        for k in BoundKind::ALL {
            assert_eq!(BoundKind::from_name(k.name()), Some(k));
        }
        assert_eq!(BoundKind::from_name("nope"), None);
    }
}
