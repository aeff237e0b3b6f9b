//! System parameters, channel data, transmit hypotheses, artificial noise
//! and whitening.

mod an;
mod channels;
mod config;
mod constellation;
mod detect;
mod hypotheses;
mod precoder;

pub use an::{
    analog_matrix, build_an_projection, interference_covariances, reference_analog_blocks,
    AnProjection, AnSettings, AnStrategy, SecrecyLink,
};
pub use channels::{reflected, whiten, ChannelSet, WhitenedChannels};
pub use config::{dbm_to_mw, Geometry, SystemConfig};
pub use constellation::Constellation;
pub use detect::{ml_detect, noiseless_bob_signal};
pub use hypotheses::{
    difference_operators, enumerate_hypotheses, DiffOperator, DifferencePair, TransmitHypothesis,
};
pub use precoder::{project_to_ball, BlockFit, Factorization, HybridPrecoder};
