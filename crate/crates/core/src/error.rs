use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("tangent directions are parallel (|alpha x beta| = {cross:e})")]
    ParallelTangents { cross: f64 },
    #[error("corner O coincides with an endpoint")]
    DegenerateCorner,
    #[error("supplied corner O is {distance:e} away from the tangent-line intersection")]
    InconsistentCorner { distance: f64 },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("projection of B - A on the half-angle axis is not positive (b_tilde = {0:e})")]
    NonPositiveBTilde(f64),
    #[error("infeasible geometry: u0 = {u0}, v0 = {v0} (both must be > 0)")]
    InfeasibleGeometry { u0: f64, v0: f64 },
    #[error("RadiusTooLarge: R = {radius} exceeds R_a = {r_a}")]
    RadiusTooLarge { radius: f64, r_a: f64 },
    #[error("negative turning angle {theta} at piece {index}")]
    NegativeTurning { index: usize, theta: f64 },
    #[error("arc chain misses B by {distance:e} (tolerance {tol:e})")]
    EndpointMismatch { distance: f64, tol: f64 },
    #[error("invalid piece: {0}")]
    InvalidPiece(String),
    #[error("path is not G1: {0}")]
    Discontinuous(String),
    #[error("discrete problem has no feasible chain for p = {p}")]
    DiscreteInfeasible { p: usize },
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("simplex breakdown: pivot magnitude {0:e}")]
    NumericalBreakdown(f64),
    #[error("simplex stopped after {0} iterations")]
    IterationLimit(usize),
    #[error("curve failed validation: {0}")]
    Validation(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by the instance geometry itself rather than by
    /// I/O or a numerical fault.
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::ParallelTangents { .. }
                | Error::DegenerateCorner
                | Error::NonPositiveBTilde(_)
                | Error::InfeasibleGeometry { .. }
                | Error::RadiusTooLarge { .. }
                | Error::DiscreteInfeasible { .. }
        )
    }
}
