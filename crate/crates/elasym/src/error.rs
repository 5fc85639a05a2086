use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("order {0} exceeds the supported maximum")]
    OrderTooLarge(usize),
    #[error("polynomial has {got} coefficients, degree {degree} needs {expected}")]
    DegreeMismatch { degree: usize, expected: usize, got: usize },
    #[error("contraction index r = {r} out of range for orders {p} and {q}")]
    ContractionRange { r: usize, p: usize, q: usize },
    #[error("operation needs order at least {needed}, got {got}")]
    OrderTooSmall { needed: usize, got: usize },
    #[error("expected order {expected}, got {got}")]
    WrongOrder { expected: usize, got: usize },
    #[error("tensor is not harmonic (trace residual {0:e})")]
    NotHarmonic(f64),
    #[error("second-order tensor is not traceless (trace {0:e})")]
    NotTraceless(f64),
    #[error("matrix is not symmetric (residual {0:e})")]
    Asymmetric(f64),
    #[error("matrix is not a rotation (residual {0:e})")]
    NotRotation(f64),
    #[error("tolerance must be positive, got {0}")]
    Tolerance(f64),
    #[error("empty family")]
    EmptyFamily,
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("no generic draw found after {0} attempts")]
    Exhausted(usize),
    #[error("outside the domain: {0}")]
    Domain(&'static str),
    #[error("expression error: {0}")]
    Expr(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::Tolerance(tol))
    }
}
