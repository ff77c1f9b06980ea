//! Coefficient and root forms of complex polynomials, and the rotation speed
//! `(arg P(e^{iθ}))'_θ = Re(z P'(z) / P(z))` on the unit circle.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::horner;
use crate::roots::{self, RootSolveConfig};
use crate::tol;

/// `P(z) = c_0 + c_1 z + ... + c_n z^n` with `c_n != 0`.
///
/// Serialized as a JSON array of `[re, im]` pairs in ascending degree.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Complex64>", into = "Vec<Complex64>")]
pub struct Polynomial {
    coeffs: Vec<Complex64>,
}

impl Polynomial {
    /// Builds a polynomial of degree at least one.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::with_zero_threshold(coeffs, tol::LEADING_ZERO)
    }

    /// Like [`Polynomial::new`], rejecting `|c_n| <= threshold`.
    pub fn with_zero_threshold(coeffs: Vec<Complex64>, threshold: f64) -> Result<Self> {
        let p = Self::any_degree(coeffs, threshold)?;
        if p.degree() == 0 {
            return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
        }
        Ok(p)
    }

    /// Builds a polynomial that may be a nonzero constant. Used for
    /// numerators of rational functions.
    pub fn new_allowing_constant(coeffs: Vec<Complex64>) -> Result<Self> {
        Self::any_degree(coeffs, tol::LEADING_ZERO)
    }

    fn any_degree(coeffs: Vec<Complex64>, threshold: f64) -> Result<Self> {
        let Some(leading) = coeffs.last() else {
            return Err(Error::InvalidPolynomial("empty coefficient list".into()));
        };
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidPolynomial("non-finite coefficient".into()));
        }
        if leading.norm() <= threshold {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient {leading} is zero"
            )));
        }
        Ok(Polynomial { coeffs })
    }

    /// Convenience constructor from real coefficients.
    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect())
    }

    /// `z^n`.
    pub fn monomial(n: usize) -> Result<Self> {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n + 1];
        coeffs[n] = Complex64::new(1.0, 0.0);
        Self::new(coeffs)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs[k]
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs[self.degree()]
    }

    pub fn constant(&self) -> Complex64 {
        self.coeffs[0]
    }

    /// `max_k |c_k|`, the scale for relative thresholds.
    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner::eval(&self.coeffs, z)
    }

    /// `(P(z), P'(z))` from a single compensated Horner pass.
    pub fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        horner::eval_with_derivative(&self.coeffs, z)
    }

    pub fn derivative(&self) -> Option<Polynomial> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        Some(Polynomial { coeffs })
    }

    /// `Q(z) = z^n conj(P(1 / conj z))`, with coefficients `conj(c_{n-k})`.
    /// `|Q| = |P|` on the unit circle, and zeros are reflected in the circle.
    pub fn reverse_conjugate(&self) -> Polynomial {
        let coeffs: Vec<Complex64> = self.coeffs.iter().rev().map(|c| c.conj()).collect();
        Polynomial { coeffs }
    }

    /// Returns `Q(z) = P(w z)`.
    pub fn compose_rotation(&self, w: Complex64) -> Polynomial {
        let mut power = Complex64::new(1.0, 0.0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * power;
                power *= w;
                out
            })
            .collect();
        Polynomial { coeffs }
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: Complex64) -> Result<Polynomial> {
        Self::any_degree(self.coeffs.iter().map(|&x| x * c).collect(), 0.0)
    }

    /// Threshold on `|P(z)|` for the zero-proximity guard.
    pub fn zero_threshold(&self) -> f64 {
        tol::ZERO_PROXIMITY_REL * self.max_coeff_norm()
    }

    /// Evaluates `P(z)` and rejects points too close to a zero.
    pub fn eval_guarded(&self, z: Complex64) -> Result<Complex64> {
        let value = self.eval(z);
        self.guard(value)?;
        Ok(value)
    }

    fn guard(&self, value: Complex64) -> Result<()> {
        let threshold = self.zero_threshold();
        let modulus = value.norm();
        if modulus < threshold {
            Err(Error::ZeroProximity { modulus, threshold })
        } else {
            Ok(())
        }
    }

    /// `z P'(z) / P(z)` at a point of the unit circle.
    pub fn log_derivative_at(&self, pt: UnitCirclePoint) -> Result<Complex64> {
        let z = pt.z();
        let (value, deriv) = self.eval_with_derivative(z);
        self.guard(value)?;
        Ok(z * deriv / value)
    }

    /// `(arg P(e^{iθ}))'_θ = Re(z P'(z) / P(z))`.
    pub fn rotation_speed(&self, pt: UnitCirclePoint) -> Result<f64> {
        Ok(self.log_derivative_at(pt)?.re)
    }

    /// Finds the zeros with the default solver settings.
    pub fn to_root_form(&self) -> Result<RootForm> {
        self.to_root_form_with(&RootSolveConfig::default())
    }

    pub fn to_root_form_with(&self, cfg: &RootSolveConfig) -> Result<RootForm> {
        let roots = roots::find_roots(self, cfg)?;
        Ok(RootForm { leading: self.leading(), roots })
    }
}

impl TryFrom<Vec<Complex64>> for Polynomial {
    type Error = Error;

    fn try_from(coeffs: Vec<Complex64>) -> Result<Self> {
        Polynomial::new(coeffs)
    }
}

impl From<Polynomial> for Vec<Complex64> {
    fn from(p: Polynomial) -> Self {
        p.coeffs
    }
}

/// `c_n (z - a_1) ... (z - a_n)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRootForm")]
pub struct RootForm {
    pub leading: Complex64,
    pub roots: Vec<Complex64>,
}

#[derive(Deserialize)]
struct RawRootForm {
    leading: Complex64,
    roots: Vec<Complex64>,
}

impl TryFrom<RawRootForm> for RootForm {
    type Error = Error;

    fn try_from(raw: RawRootForm) -> Result<Self> {
        RootForm::new(raw.leading, raw.roots)
    }
}

impl RootForm {
    pub fn new(leading: Complex64, roots: Vec<Complex64>) -> Result<Self> {
        if leading.norm() <= tol::LEADING_ZERO || !leading.re.is_finite() || !leading.im.is_finite()
        {
            return Err(Error::InvalidPolynomial(format!(
                "leading coefficient {leading} is zero"
            )));
        }
        if roots.iter().any(|r| !r.re.is_finite() || !r.im.is_finite()) {
            return Err(Error::InvalidPolynomial("non-finite root".into()));
        }
        Ok(RootForm { leading, roots })
    }

    pub fn monic(roots: Vec<Complex64>) -> Result<Self> {
        Self::new(Complex64::new(1.0, 0.0), roots)
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Expands the product by multiplying in one linear factor at a time.
    pub fn to_polynomial(&self) -> Result<Polynomial> {
        from_roots(self)
    }

    /// `c_0 = c_n ∏(-a_k)`.
    pub fn constant_coeff(&self) -> Complex64 {
        self.roots.iter().fold(self.leading, |acc, &r| acc * -r)
    }

    /// Evaluates the product directly, without expanding.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.roots.iter().fold(self.leading, |acc, &r| acc * (z - r))
    }
}

/// Expands `c_n ∏ (z - a_k)` into coefficient form.
pub fn from_roots(rf: &RootForm) -> Result<Polynomial> {
    if rf.roots.is_empty() {
        return Err(Error::InvalidPolynomial("degree must be at least 1".into()));
    }
    let mut coeffs = vec![rf.leading];
    for &r in &rf.roots {
        // (c_0 + ... + c_k z^k)(z - r)
        let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
        for (k, &c) in coeffs.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * r;
        }
        coeffs = next;
    }
    Polynomial::new(coeffs)
}

/// A point `e^{iθ}` of the unit circle, stored by its angle.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UnitCirclePoint {
    theta: f64,
}

impl UnitCirclePoint {
    pub fn new(theta: f64) -> Self {
        debug_assert!(theta.is_finite());
        UnitCirclePoint { theta }
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn z(self) -> Complex64 {
        let (s, c) = self.theta.sin_cos();
        Complex64::new(c, s)
    }

    /// The point at angle `θ + φ`.
    pub fn rotated(self, phi: f64) -> Self {
        UnitCirclePoint { theta: self.theta + phi }
    }
}
