//! Compensated Horner evaluation.
//!
//! Values and first derivatives are accumulated in double-double arithmetic,
//! so the result is as accurate as if the scheme ran at twice the working
//! precision. This keeps `z P'(z) / P(z)` usable close to zeros of `P`.

use num_complex::Complex64;

#[derive(Clone, Copy, Debug, Default)]
struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> Dd {
    let s = a + b;
    Dd { hi: s, lo: b - (s - a) }
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    #[inline]
    fn from(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn add(self, o: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, o.hi);
        quick_two_sum(s, e + self.lo + o.lo)
    }

    #[inline]
    fn mul_f(self, b: f64) -> Dd {
        let (p, e) = two_prod(self.hi, b);
        quick_two_sum(p, e + self.lo * b)
    }

    #[inline]
    fn neg(self) -> Dd {
        Dd { hi: -self.hi, lo: -self.lo }
    }
}

#[derive(Clone, Copy, Debug, Default)]
struct DdComplex {
    re: Dd,
    im: Dd,
}

impl DdComplex {
    #[inline]
    fn from(c: Complex64) -> Self {
        DdComplex { re: Dd::from(c.re), im: Dd::from(c.im) }
    }

    #[inline]
    fn mul_c(self, z: Complex64) -> Self {
        DdComplex {
            re: self.re.mul_f(z.re).add(self.im.mul_f(z.im).neg()),
            im: self.re.mul_f(z.im).add(self.im.mul_f(z.re)),
        }
    }

    #[inline]
    fn add(self, o: DdComplex) -> Self {
        DdComplex { re: self.re.add(o.re), im: self.im.add(o.im) }
    }

    #[inline]
    fn to_complex(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }
}

/// `P(z)` with coefficients in ascending order.
pub(crate) fn eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = DdComplex::default();
    for &c in coeffs.iter().rev() {
        acc = acc.mul_c(z).add(DdComplex::from(c));
    }
    acc.to_complex()
}

/// `(P(z), P'(z))` with coefficients in ascending order.
pub(crate) fn eval_with_derivative(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut value = DdComplex::default();
    let mut deriv = DdComplex::default();
    for &c in coeffs.iter().rev() {
        deriv = deriv.mul_c(z).add(value);
        value = value.mul_c(z).add(DdComplex::from(c));
    }
    (value.to_complex(), deriv.to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_naive_horner_on_benign_input() {
        let coeffs = [
            Complex64::new(1.0, -2.0),
            Complex64::new(0.5, 0.25),
            Complex64::new(-3.0, 1.0),
        ];
        let z = Complex64::new(0.3, -0.7);
        let naive = coeffs[0] + coeffs[1] * z + coeffs[2] * z * z;
        let naive_d = coeffs[1] + 2.0 * coeffs[2] * z;
        let (v, d) = eval_with_derivative(&coeffs, z);
        assert!((v - naive).norm() < 1e-15);
        assert!((d - naive_d).norm() < 1e-15);
        assert!((eval(&coeffs, z) - v).norm() == 0.0);
    }

    #[test]
    fn resolves_cancellation_near_a_multiple_root() {
        // (x - 1)^5 expanded; plain Horner loses everything near x = 1.
        let coeffs: Vec<Complex64> = [-1.0, 5.0, -10.0, 10.0, -5.0, 1.0]
            .iter()
            .map(|&c| Complex64::new(c, 0.0))
            .collect();
        let x = 1.0 + 1e-3;
        let exact = 1e-15_f64;
        let v = eval(&coeffs, Complex64::new(x, 0.0));
        assert!((v.re - exact).abs() / exact < 1e-6, "{}", v.re);
    }
}
