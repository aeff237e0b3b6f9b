use alloc::boxed::Box;
use alloc::string::String;

use crate::linalg::CMat;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("covariance is not positive definite (smallest eigenvalue {smallest:e})")]
    NotPositiveDefinite { smallest: f64 },

    #[error("ill-conditioned whitener: eigenvalue {min:e} below 1e-12 x {max:e}")]
    IllConditioned { min: f64, max: f64 },

    #[error("distance {distance} m is below the 1 m reference distance")]
    BelowReferenceDistance { distance: f64 },

    #[error("unit-diagonal SDP did not reach tolerance (residual {residual:e})")]
    SdpNotConverged {
        residual: f64,
        best_q: Box<CMat>,
        best_value: f64,
    },

    #[error("inner SCA solver failed to ascend ({before} -> {after})")]
    NonAscent { before: f64, after: f64 },

    #[error("gradient is not finite")]
    NonFiniteGradient,

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),

    #[error("joint optimization failed at outer iteration {iteration}: {source}")]
    Joint {
        iteration: usize,
        #[source]
        source: Box<Error>,
    },
}
