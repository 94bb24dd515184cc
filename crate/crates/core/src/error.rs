use thiserror::Error;

/// Errors raised by the kernel operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not a contraction (operator norm {norm})")]
    NotAContraction { norm: f64 },
    #[error("resolvent 1 - Z*X is numerically singular")]
    SingularResolvent,
    #[error("known row or column is not contractive (column {column}, row {row})")]
    RowColumnNotContractive { column: f64, row: f64 },
    #[error("root finder did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("z = {z} is a pole of Phi_{j}")]
    PoleAtZ { j: usize, z: String },
    #[error("|y_(n-j)| = {value} is not below binom(n, j) = {bound} for j = {j}")]
    GuardViolated { j: usize, value: f64, bound: f64 },
    #[error("|q| = {modulus} is not inside the unit disc")]
    QOnCircle { modulus: f64 },
    #[error("no contraction of norm below 1 for j = {j} (best norm {norm})")]
    ConstructionFailed { j: usize, norm: f64 },
    #[error("determinants disagree (spread {spread})")]
    DetMismatch { spread: f64 },
    #[error("degenerate denominator {value}: the derivative bound is tight")]
    DegenerateDenominator { value: f64 },
    #[error("derivative data violates the Schwarz bound (slack {slack})")]
    BoundViolated { slack: f64 },
    #[error("interpolant prefactor has a pole at lambda = {lambda}")]
    PoleHit { lambda: String },
    #[error("closed-form and Mobius evaluations disagree by {residual}")]
    ClosedFormMismatch { residual: f64 },
    #[error("derivative data is not in K_n")]
    NotInKn,
    #[error("map {map} expects {expected} ambient index, got n = {n}")]
    ParityMismatch { map: String, expected: String, n: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("sampler {sampler} does not accept mode {mode}")]
    WrongMode { sampler: &'static str, mode: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
