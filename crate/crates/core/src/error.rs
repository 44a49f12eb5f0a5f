use thiserror::Error;

/// Errors raised by the solvers, verifiers and the finite-volume oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("left and right states are identical; the solution is constant")]
    DegenerateData,

    #[error("data is not in the delta-shock regime (u_- < u_+ + mu/rho_+)")]
    NotDeltaRegime,

    #[error("negative discriminant {0} in the generalized Rankine-Hugoniot quadratic")]
    NegativeDiscriminant(f64),

    #[error("invalid time {0}: sampling requires t > 0")]
    InvalidTime(f64),

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("mu = {mu} does not exceed the critical value mu0 = {mu0}")]
    MuBelowCritical { mu: f64, mu0: f64 },

    #[error("quadrature failure: {0}")]
    QuadratureFailure(String),

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("time step underflow (dt = {dt:e}) at t = {t}")]
    CflViolation { dt: f64, t: f64 },

    #[error("waves reached the domain boundary at t = {t}")]
    BoundaryContamination { t: f64 },

    #[error("no density spike found: excess mass {excess} is below 1% of the expected weight {expected}")]
    NoSpike { excess: f64, expected: f64 },

    #[error("exact profile carries a singular part; L1 error is undefined")]
    SingularProfile,

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
