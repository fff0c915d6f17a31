use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A matrix handed to `compose` is not unimodular.
    #[error("determinant {det} violates the unit-determinant invariant")]
    DetViolation { det: f64 },

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: f64 },

    #[error("degenerate: {0}")]
    DegenerateInput(&'static str),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `dθ/dξ = -sin θ / β` diverges as β → 0 off the axis.
    #[error(
        "near-singular speed |beta| = {beta:e} at theta = {theta}: the direction of a \
         (near-)zero velocity is undefined, so dtheta/dxi diverges"
    )]
    NearSingularBeta { beta: f64, theta: f64 },

    #[error(
        "step too large: local truncation estimate {estimate:e} exceeds {tolerance:e} at xi = {xi}"
    )]
    StepTooLarge {
        xi: f64,
        estimate: f64,
        tolerance: f64,
    },

    #[error("speed {beta} outside the open interval (-1, 1)")]
    SpeedOutOfRange { beta: f64 },

    #[error("transformation is not orthochronous (M00 = {m00})")]
    NotOrthochronous { m00: f64 },
}
