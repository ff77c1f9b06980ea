use num_complex::Complex64;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    /// `|P(z)|` is too small for rotation quantities to be meaningful.
    #[error("|P(z)| = {modulus:e} is below the zero-proximity threshold {threshold:e}")]
    ZeroProximity { modulus: f64, threshold: f64 },

    #[error("root iteration did not converge after {iterations} iterations")]
    NonConvergence { iterations: usize },

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("a zero of P lies at z = 1")]
    RootAtOne,

    #[error("|f'(0)| = 1, the distortion bound is undefined")]
    DegenerateDerivative,

    #[error("pole {0} lies on the unit circle")]
    PoleOnCircle(Complex64),

    #[error("arc contains a zero of P near angle {angle}")]
    ArcContainsRoot { angle: f64 },

    #[error("phase unwrapping is ambiguous near theta = {theta}")]
    UnwrapAmbiguity { theta: f64 },

    #[error("invalid witness parameters: {0}")]
    InvalidWitnessParams(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
