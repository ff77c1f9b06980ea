//! Rotation speed of complex polynomials on the unit circle.
//!
//! For `P(z) = c_0 + c_1 z + ... + c_n z^n` the quantity `(arg P(e^{iθ}))'_θ`
//! equals `Re(z P'(z) / P(z))` on `|z| = 1`. This crate evaluates it, the
//! normalized excess `Λ(P, z) = 2 (arg P)'_θ - n`, and a family of sharp lower
//! and upper bounds for `Λ` that hold when the zeros of `P` are confined to
//! (or excluded from) the closed unit disk. Every analytic quantity can be
//! cross-checked against an independent finite-difference oracle, and the
//! extremal families that attain equality can be constructed directly.
//!
//! Module map:
//!
//! * [`polynomial`]: coefficient and root forms, evaluation, rotation speed.
//! * [`roots`]: simultaneous (Aberth–Ehrlich) root finding and zone counts.
//! * [`bounds`]: `Λ` and every bound, assembled into a [`bounds::BoundReport`].
//! * [`blaschke`]: finite Blaschke products built from polynomial zeros and the
//!   self-map inequalities they satisfy.
//! * [`rational`]: rotation of rational functions with poles outside the disk.
//! * [`witness`]: equality families.
//! * [`oracle`]: finite differences with phase unwrapping, arc increments.
//! * [`cli`]: the `scan`, `fuzz` and `witness` commands behind the binary.

pub mod blaschke;
pub mod bounds;
pub mod check;
pub mod cli;
pub mod error;
mod horner;
pub mod oracle;
pub mod polynomial;
pub mod rational;
pub mod roots;
pub mod sampling;
pub mod tol;
pub mod witness;

pub use num_complex::Complex64;

pub use crate::bounds::{BoundContext, BoundReport, LambdaValue};
pub use crate::error::{Error, Result};
pub use crate::polynomial::{Polynomial, RootForm, UnitCirclePoint};
pub use crate::rational::RationalFunction;
pub use crate::roots::{RootSolveConfig, ZoneSummary};
