use thiserror::Error;

/// Errors produced by the calculus operations.
#[derive(Debug, Error)]
pub enum CalcError {
    #[error("point outside domain: {0}")]
    OutsideDomain(String),
    #[error("singular prefactor at origin")]
    SingularOrigin,
    #[error("empty or reversed interval [{0}, {1}]")]
    EmptyInterval(f64, f64),
    #[error("negative abscissa {0}")]
    NegativeAbscissa(f64),
    #[error("magnitude overflow: exponent {0} too large")]
    MagnitudeOverflow(f64),
    #[error("division by near-zero at t = {0}")]
    DivisionByNearZero(f64),
    #[error("mean value point not bracketed")]
    NotBracketed,
    #[error("invalid case parameters: {0}")]
    InvalidCaseParameters(String),
    #[error("singular curve point at parameter {0}")]
    SingularCurvePoint(f64),
    #[error("singular measure density")]
    SingularMeasure,
    #[error("normal not normalized: |n| = {0}")]
    NotNormalized(f64),
    #[error("quadrature budget exceeded: {attempted} evaluations > budget {budget}")]
    BudgetExceeded { attempted: u64, budget: u64 },
    #[error("time step exceeds stability bound: dt = {dt}, bound = {bound}")]
    CflViolation { dt: f64, bound: f64 },
    #[error("singular diffusion coefficient at origin")]
    SingularDiffusion,
    #[error("solution magnitude overflow at t = {0}")]
    SolutionOverflow(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, CalcError>;
