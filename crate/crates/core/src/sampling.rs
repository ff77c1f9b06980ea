//! Random polynomials with zeros in a prescribed zone.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polynomial::{Polynomial, RootForm};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum RootZone {
    /// Area-uniform in the closed unit disk.
    InDisk,
    /// Uniform on the unit circle; the polynomial is made self-reciprocal.
    OnCircle,
    /// Reflection of an area-uniform disk point, radius capped at 10.
    Outside,
    /// Each zero drawn from one of the three zones above.
    Mixed,
}

/// Smallest `u` used for outside radii `1 / sqrt(u)`.
const OUTSIDE_U_MIN: f64 = 1e-2;

pub fn random_root<R: Rng + ?Sized>(rng: &mut R, zone: RootZone) -> Complex64 {
    let angle = rng.gen_range(0.0..TAU);
    let radius = match zone {
        RootZone::InDisk => rng.gen::<f64>().sqrt(),
        RootZone::OnCircle => 1.0,
        RootZone::Outside => 1.0 / rng.gen_range(OUTSIDE_U_MIN..1.0f64).sqrt(),
        RootZone::Mixed => {
            let zone = match rng.gen_range(0..3) {
                0 => RootZone::InDisk,
                1 => RootZone::OnCircle,
                _ => RootZone::Outside,
            };
            return random_root(rng, zone);
        }
    };
    Complex64::from_polar(radius, angle)
}

/// Random leading coefficient with modulus in `[0.5, 2)`.
pub fn random_leading<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..TAU))
}

pub fn random_root_form<R: Rng + ?Sized>(rng: &mut R, degree: usize, zone: RootZone) -> RootForm {
    let roots = (0..degree).map(|_| random_root(rng, zone)).collect();
    RootForm { leading: random_leading(rng), roots }
}

pub fn random_polynomial<R: Rng + ?Sized>(
    rng: &mut R,
    degree: usize,
    zone: RootZone,
) -> Result<(RootForm, Polynomial)> {
    let mut rf = random_root_form(rng, degree, zone);
    if zone != RootZone::OnCircle {
        let p = rf.to_polynomial()?;
        return Ok((rf, p));
    }
    // Phase the leading coefficient so that c_n = conj(c_0), then make the
    // rounded coefficients exactly self-reciprocal so the stored polynomial
    // keeps its simple zeros on the circle.
    let monic_constant = rf.roots.iter().fold(Complex64::new(1.0, 0.0), |acc, &a| -acc * a);
    rf.leading = Complex64::from_polar(rf.leading.norm(), -monic_constant.arg() / 2.0);
    let mut c = rf.to_polynomial()?.coeffs().to_vec();
    let n = c.len() - 1;
    for k in 0..=n / 2 {
        let m = (c[k] + c[n - k].conj()) / 2.0;
        c[k] = m;
        c[n - k] = m.conj();
    }
    Ok((rf, Polynomial::new(c)?))
}

/// Random pole set: `count` poles outside the closed disk.
pub fn random_poles<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<Complex64> {
    (0..count)
        .map(|_| {
            // Keep poles a visible distance from the circle.
            let r = 1.0 / rng.gen_range(OUTSIDE_U_MIN..0.95f64).sqrt();
            Complex64::from_polar(r, rng.gen_range(0.0..TAU))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zones_respected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            assert!(random_root(&mut rng, RootZone::InDisk).norm() <= 1.0);
            assert!((random_root(&mut rng, RootZone::OnCircle).norm() - 1.0).abs() < 1e-15);
            let r = random_root(&mut rng, RootZone::Outside).norm();
            assert!(r > 1.0 && r <= 10.0 + 1e-12);
            assert!(random_poles(&mut rng, 1)[0].norm() > 1.02);
        }
    }
}
