//! Finite Blaschke products built from the zeros of a polynomial, and the
//! three self-map inequalities they are fed into.
//!
//! For `P(z) = c_n ∏ (z - a_k)` with all `|a_k| <= 1` the quotient
//! `P(z) / (z^{n-1} conj(P(1/conj z)))` is `(c_n / conj c_n) z ∏ m_k(z)`
//! with `m_k(z) = (z - a_k) / (1 - conj(a_k) z)`. A unimodular `a_k` makes
//! `m_k` the constant `-a_k`, so it is folded into the prefactor.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bounds;
use crate::check::InequalityCheck;
use crate::error::{Error, Result};
use crate::polynomial::{Polynomial, RootForm, UnitCirclePoint};
use crate::roots::{self, RootSolveConfig, Zone};
use crate::tol;

/// `prefactor · z^power · ∏ (z - a_k) / (1 - conj(a_k) z)` with
/// `|prefactor| = 1` and `0 < |a_k| < 1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeProduct {
    prefactor: Complex64,
    monomial_power: usize,
    zeros: Vec<Complex64>,
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

impl BlaschkeProduct {
    /// Builds a product from arbitrary zeros in the closed disk: zeros at the
    /// origin raise the monomial power, unimodular ones are folded into the
    /// prefactor as `-a`.
    pub fn new(prefactor: Complex64, monomial_power: usize, zeros: &[Complex64]) -> Result<Self> {
        if (prefactor.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidArgument(format!("prefactor {prefactor} is not unimodular")));
        }
        let mut out = BlaschkeProduct { prefactor, monomial_power, zeros: Vec::new() };
        for &a in zeros {
            match Zone::of(a) {
                Zone::Outside => {
                    return Err(Error::HypothesisViolated(format!(
                        "zero {a} outside the closed unit disk"
                    )))
                }
                Zone::OnCircle => out.prefactor *= -a / a.norm(),
                Zone::Inside if a == Complex64::new(0.0, 0.0) => out.monomial_power += 1,
                Zone::Inside => out.zeros.push(a),
            }
        }
        out.prefactor /= out.prefactor.norm();
        Ok(out)
    }

    pub fn prefactor(&self) -> Complex64 {
        self.prefactor
    }

    pub fn monomial_power(&self) -> usize {
        self.monomial_power
    }

    /// Zeros strictly inside the disk, other than the origin.
    pub fn zeros(&self) -> &[Complex64] {
        &self.zeros
    }

    /// Total number of zeros in the open disk, with multiplicity.
    pub fn degree(&self) -> usize {
        self.monomial_power + self.zeros.len()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.zeros
            .iter()
            .fold(self.prefactor * z.powu(self.monomial_power as u32), |acc, &a| {
                acc * (z - a) / (one() - a.conj() * z)
            })
    }

    /// `f'(z)` by the product rule; valid at the origin and at the zeros.
    pub fn derivative(&self, z: Complex64) -> Complex64 {
        let k = self.monomial_power;
        let factors: Vec<Complex64> =
            self.zeros.iter().map(|&a| (z - a) / (one() - a.conj() * z)).collect();
        let m = factors.len();
        // prefix[i] = ∏_{j<i} m_j, suffix[i] = ∏_{j>=i} m_j
        let mut prefix = vec![one(); m + 1];
        for i in 0..m {
            prefix[i + 1] = prefix[i] * factors[i];
        }
        let mut suffix = vec![one(); m + 1];
        for i in (0..m).rev() {
            suffix[i] = suffix[i + 1] * factors[i];
        }
        let zk = z.powu(k as u32);
        let mut total = if k == 0 {
            Complex64::new(0.0, 0.0)
        } else {
            k as f64 * z.powu(k as u32 - 1) * prefix[m]
        };
        for (i, &a) in self.zeros.iter().enumerate() {
            let d = one() - a.conj() * z;
            let dm = Complex64::new(1.0 - a.norm_sqr(), 0.0) / (d * d);
            total += zk * dm * prefix[i] * suffix[i + 1];
        }
        self.prefactor * total
    }
}

fn reject_root_at_one(roots: &[Complex64]) -> Result<()> {
    if roots.iter().any(|r| (r - one()).norm() <= tol::ROOT_AT_ONE) {
        Err(Error::RootAtOne)
    } else {
        Ok(())
    }
}

/// `∏ (1 - conj a) / (1 - a)` over the zeros that stay as factors; folded
/// unimodular zeros contribute exactly `1` after this normalization.
fn normalization(roots: &[Complex64]) -> Complex64 {
    roots
        .iter()
        .filter(|r| Zone::of(**r) == Zone::Inside)
        .fold(one(), |acc, &a| acc * (one() - a.conj()) / (one() - a))
}

/// Strips unimodular zeros, which become the constant `1` under the
/// normalization `f(1) = 1`.
fn interior(roots: &[Complex64]) -> Vec<Complex64> {
    roots.iter().copied().filter(|r| Zone::of(*r) != Zone::OnCircle).collect()
}

/// `f(z) = z ∏ (1 - conj a_k)/(1 - a_k) · (z - a_k)/(1 - conj(a_k) z)`,
/// normalized by `f(0) = 0`, `f(1) = 1`.
pub fn from_polynomial_thm1(rf: &RootForm) -> Result<BlaschkeProduct> {
    reject_root_at_one(&rf.roots)?;
    let pre = normalization(&rf.roots);
    BlaschkeProduct::new(pre / pre.norm(), 1, &interior(&rf.roots))
}

/// `f(z) = P(z) / (z^{n-1} conj(P(1/conj z)))` without normalization.
pub fn from_polynomial_thm2(rf: &RootForm) -> Result<BlaschkeProduct> {
    let pre = rf.leading / rf.leading.conj();
    BlaschkeProduct::new(pre / pre.norm(), 1, &rf.roots)
}

/// `f(z) = ∏ (1 - conj a_k)/(1 - a_k) · (z - a_k)/(1 - conj(a_k) z)`,
/// normalized by `f(1) = 1`.
pub fn from_polynomial_thm3(rf: &RootForm) -> Result<BlaschkeProduct> {
    reject_root_at_one(&rf.roots)?;
    let pre = normalization(&rf.roots);
    BlaschkeProduct::new(pre / pre.norm(), 0, &interior(&rf.roots))
}

/// `|f'(z)| = 2 Re(z P'(z) / P(z)) - n + 1 = Λ(P, z) + 1` on the circle.
pub fn boundary_derivative_modulus(p: &Polynomial, pt: UnitCirclePoint) -> Result<f64> {
    Ok(bounds::lambda_at(p, pt)?.0 + 1.0)
}

/// `f'(0) = c_0 / conj(c_n)` for the unnormalized product.
pub fn f_prime_0(rf: &RootForm) -> Complex64 {
    rf.constant_coeff() / rf.leading.conj()
}

/// `f''(0) = 2 (conj(c_n) c_1 - c_0 conj(c_{n-1})) / conj(c_n)²`.
pub fn f_second_0(rf: &RootForm) -> Result<Complex64> {
    Ok(f_second_0_coeffs(&rf.to_polynomial()?))
}

pub fn f_prime_0_coeffs(p: &Polynomial) -> Complex64 {
    p.constant() / p.leading().conj()
}

pub fn f_second_0_coeffs(p: &Polynomial) -> Complex64 {
    let cn = p.leading().conj();
    2.0 * bounds::mercer_cross_term(p) / (cn * cn)
}

/// `|f'(0) - 1/f'(1)| <= 1 - 1/f'(1)` for a self-map with `f(0) = 0`,
/// `f(1) = 1` and angular derivative `fp1 >= 1` at `1`.
pub fn check_goryainov(f: &BlaschkeProduct, fp1: f64) -> Result<InequalityCheck> {
    if !fp1.is_finite() || fp1 < 1.0 - tol::CHECK_SLACK {
        return Err(Error::HypothesisViolated(format!("angular derivative {fp1} < 1")));
    }
    let zero = Complex64::new(0.0, 0.0);
    if f.eval(zero).norm() > 1e-12 || (f.eval(one()) - one()).norm() > 1e-10 {
        return Err(Error::HypothesisViolated("f(0) = 0 and f(1) = 1 required".into()));
    }
    let fp0 = f.derivative(zero);
    let lhs = (fp0 - 1.0 / fp1).norm();
    let rhs = 1.0 - 1.0 / fp1;
    Ok(InequalityCheck::with_margin("goryainov", lhs, rhs, rhs - lhs, tol::CHECK_SLACK))
}

/// Right-hand side `1 + 2(1 - |f'(0)|)² / (1 - |f'(0)|² + |f''(0)/2|)`.
pub fn mercer_bound(fp0: Complex64, fpp0: Complex64) -> Result<f64> {
    let a = fp0.norm();
    if (a - 1.0).abs() < tol::DEGENERATE_DERIVATIVE {
        return Err(Error::DegenerateDerivative);
    }
    Ok(1.0 + 2.0 * (1.0 - a).powi(2) / (1.0 - a * a + (fpp0 / 2.0).norm()))
}

/// `|f'(z)| >= 1 + 2(1 - |f'(0)|)² / (1 - |f'(0)|² + |f''(0)/2|)` at a boundary
/// point with `|f'(z)| = boundary_mod`.
pub fn check_mercer(fp0: Complex64, fpp0: Complex64, boundary_mod: f64) -> Result<InequalityCheck> {
    let rhs = mercer_bound(fp0, fpp0)?;
    Ok(InequalityCheck::at_least("mercer", boundary_mod, rhs, tol::CHECK_SLACK))
}

/// `|conj(c_n) c_1 - c_0 conj(c_{n-1})| <= |c_n|² - |c_0|²`, the coefficient
/// form of `|f''(0)| <= 2(1 - |f'(0)|²)`.
pub fn check_mercer_remark(p: &Polynomial) -> Result<InequalityCheck> {
    let zones = roots::classify_zeros(p, &RootSolveConfig::default())?;
    if !zones.all_in_closed_disk {
        return Err(Error::HypothesisViolated(format!(
            "{} zeros outside the closed unit disk",
            zones.outside
        )));
    }
    Ok(mercer_remark_unchecked(p))
}

/// [`check_mercer_remark`] for a polynomial already known to have its zeros
/// in the closed disk.
pub fn mercer_remark_unchecked(p: &Polynomial) -> InequalityCheck {
    let lhs = bounds::mercer_cross_term(p).norm();
    let rhs = p.leading().norm_sqr() - p.constant().norm_sqr();
    let scale = p.max_coeff_norm().powi(2);
    InequalityCheck::with_margin("mercer_remark", lhs, rhs, rhs - lhs, tol::CHECK_SLACK * scale)
}

/// Goryainov check at `z_0 = e^{iθ}`: rotates the zeros so that `z_0` maps to
/// `1` and builds the normalized product. `f'(1)` is taken from the product,
/// so both sides see the same zeros; it equals `Λ(P, z_0) + 1`.
pub fn goryainov_at(rf: &RootForm, pt: UnitCirclePoint) -> Result<InequalityCheck> {
    let z0 = pt.z();
    let rotated = RootForm {
        leading: rf.leading,
        roots: rf.roots.iter().map(|&a| a / z0).collect(),
    };
    let f = from_polynomial_thm1(&rotated)?;
    let fp1 = f.derivative(one()).norm();
    check_goryainov(&f, fp1)
}
