use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("derivative of order {order} requested, activation supports at most {max}")]
    UnsupportedDerivative { order: usize, max: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("growth exponent {gamma} is below the minimum {gamma_min}; the norm is infinite")]
    NormDiverges { gamma: f64, gamma_min: f64 },

    #[error("Fourier density is undefined at xi = 0")]
    SingularPoint,

    #[error("invalid test function: {0}")]
    InvalidTestFunction(String),

    #[error("invalid profile support [{zeta1}, {zeta2}]")]
    InvalidSupport { zeta1: f64, zeta2: f64 },

    #[error("admissibility constant has modulus {0:e}, the pair is not admissible")]
    DegenerateAdmissibility(f64),

    #[error("direct ridgelet quadrature is limited to m <= 3 (got m = {0}); use the slice route")]
    UseSliceRoute(usize),

    #[error("quadrature did not converge: error estimate {abserr:e} above tolerance {tol:e}")]
    QuadratureFailure { abserr: f64, tol: f64 },

    #[error("ridgelet slice transform needs a nonzero direction")]
    InvalidDirection,

    /// The reconstruction finished, but its imaginary residue is large compared
    /// with the result. The value is still carried along.
    #[error("reconstruction imaginary residue {residue:e} exceeds 5% of |result|")]
    TruncationWarning { value: Vec<f64>, residue: f64 },

    #[error("weight integral still growing after truncation doubling")]
    DivergentWeight,

    #[error("derivatives of order {requested} requested, only {available} available")]
    MissingDerivatives { requested: usize, available: usize },

    #[error("truncation did not converge: {0}")]
    TruncationFailure(String),

    #[error("exponent p = {0} must exceed 1")]
    InvalidExponent(f64),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
