use thiserror::Error;

use crate::picard::PicardDiagnostics;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the solver, norms, and certificate machinery can report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("grid of {grid} points per dimension is too small for truncation {truncation}: need at least {required}")]
    GridTooSmall {
        grid: usize,
        truncation: usize,
        required: usize,
    },

    #[error("synthesized samples have imaginary residue {residue:e}, above {limit:e}")]
    ImaginaryResidue { residue: f64, limit: f64 },

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("invalid trajectory: {0}")]
    InvalidTrajectory(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pointwise exponential overflows: max of -Δh on the grid is {max_value}")]
    ExponentialOverflow { max_value: f64 },

    #[error("adaptive Taylor depth exceeded cap {cap}; achieved tail bound {tail_bound:e} against tolerance {tolerance:e}")]
    TaylorDepthCap {
        cap: usize,
        tail_bound: f64,
        tolerance: f64,
    },

    #[error("input has zero norm")]
    ZeroNorm,

    #[error("non-finite value: {0}")]
    NonFinite(String),

    #[error("radius fit needs at least {required} distinct |k| above the floor, found {found}")]
    InsufficientModes { found: usize, required: usize },

    #[error("r0 = {r0} is not below the smallness threshold 1/4")]
    AboveThreshold { r0: f64 },

    #[error("certificate failed (r0 = {r0}, alpha = {alpha}); pass an override to iterate anyway")]
    CertificateFailed { r0: f64, alpha: f64 },

    #[error("Picard iteration did not converge in {} iterations (last delta {:e})", .0.iterations, .0.deltas.last().copied().unwrap_or(f64::NAN))]
    NotConverged(Box<PicardDiagnostics>),

    #[error("iterate left the ball: distance {distance} exceeds radius {radius}")]
    BallViolation { distance: f64, radius: f64 },

    #[error("operator bound exceeded in {failures} of {cases} cases")]
    BoundExceeded { failures: usize, cases: usize },

    #[error("time step produced non-finite amplitudes; last good time {last_good_time}")]
    StepRejected { last_good_time: f64 },

    #[error("configuration error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::GridTooSmall { .. }
            | Error::InvalidField(_)
            | Error::InvalidTrajectory(_)
            | Error::InvalidParameter(_)
            | Error::AboveThreshold { .. }
            | Error::Config(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::CertificateFailed { .. } => 3,
            Error::ImaginaryResidue { .. }
            | Error::ExponentialOverflow { .. }
            | Error::TaylorDepthCap { .. }
            | Error::ZeroNorm
            | Error::NonFinite(_)
            | Error::InsufficientModes { .. }
            | Error::NotConverged(_)
            | Error::BallViolation { .. }
            | Error::BoundExceeded { .. }
            | Error::StepRejected { .. } => 4,
        }
    }

    /// Short machine-readable tag used in error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::GridTooSmall { .. } => "grid_too_small",
            Error::ImaginaryResidue { .. } => "imaginary_residue",
            Error::InvalidField(_) => "invalid_field",
            Error::InvalidTrajectory(_) => "invalid_trajectory",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::ExponentialOverflow { .. } => "exponential_overflow",
            Error::TaylorDepthCap { .. } => "taylor_depth_cap",
            Error::ZeroNorm => "zero_norm",
            Error::NonFinite(_) => "non_finite",
            Error::InsufficientModes { .. } => "insufficient_modes",
            Error::AboveThreshold { .. } => "above_threshold",
            Error::CertificateFailed { .. } => "certificate_failed",
            Error::NotConverged(_) => "not_converged",
            Error::BallViolation { .. } => "ball_violation",
            Error::BoundExceeded { .. } => "bound_exceeded",
            Error::StepRejected { .. } => "step_rejected",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
