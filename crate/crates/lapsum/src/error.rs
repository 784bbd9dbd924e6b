use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain violation: {0}")]
    Domain(String),

    #[error("inverse transform has no density component")]
    NoDensity,

    #[error("kernel pole at t = {0}")]
    KernelPole(Complex64),

    #[error("integral did not converge (best {best}, err_est {err_est:.3e})")]
    NonConvergence { best: Complex64, err_est: f64 },

    #[error("integrand returned a non-finite value at t = {0}")]
    BadIntegrand(f64),

    #[error("non-integrable endpoint: composed singularity order {0} <= -1")]
    NonIntegrable(f64),

    #[error("series diverges: {0}")]
    Divergent(String),

    #[error("series shape is not alternating")]
    NotAlternating,

    #[error("unsupported order {0}")]
    UnsupportedOrder(usize),

    #[error("transform unsuitable for numerical inversion: {0}")]
    UnsuitableTransform(String),

    #[error("transform pole on the inversion contour at s = {0}")]
    TransformPole(Complex64),

    #[error("type-B shape of {0} is not numerically evaluable")]
    NonEvaluableShape(String),

    #[error("syntax error at offset {offset}: expected {expected}")]
    Parse { offset: usize, expected: String },

    #[error("invalid combination: {0}")]
    InvalidCombination(String),
}

pub type Result<T> = std::result::Result<T, Error>;
