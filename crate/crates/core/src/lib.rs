//! Secrecy-rate optimization for IRS-aided hybrid secure spatial modulation.
//!
//! The crate is split along the signal chain:
//!
//! - [`model`]: system parameters, channels, transmit hypotheses, artificial
//!   noise, whitening and ML detection.
//! - [`rates`]: cut-off rates, the approximate secrecy rate and a Monte Carlo
//!   mutual-information estimator used for validation.
//! - [`irs_opt`]: quadratic-form reduction in the reflection vector and the
//!   ADMM, block-coordinate and semidefinite-relaxation beamformers.
//! - [`precoder_opt`]: precoder-domain quadratics and the SCA / gradient
//!   ascent hybrid precoders.
//! - [`joint`]: alternating optimization over both variables.
//! - [`scenario`] and [`flops`]: geometry-based channel generation and
//!   operation-count models.
//!
//! Everything here is `no_std` + `alloc` when the default `std` feature is
//! disabled. IO and experiment orchestration live in the harness crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

mod error;
pub mod flops;
pub mod irs_opt;
pub mod joint;
pub mod linalg;
pub mod model;
pub mod precoder_opt;
pub mod rates;
mod real;
pub mod rng;
pub mod scenario;

pub use error::{Error, Result};
pub use irs_opt::IrsPhaseVector;
pub use model::{
    ChannelSet, Constellation, HybridPrecoder, SystemConfig, TransmitHypothesis,
    WhitenedChannels,
};
pub use rates::RateReport;
