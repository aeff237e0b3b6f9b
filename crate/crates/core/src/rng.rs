//! Counter-based random streams.
//!
//! Every random draw in the crate comes from a `(seed, stream)` pair so that
//! results do not depend on evaluation order or thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{CMat, CVec};
use crate::real::sqrt;

/// Well-known stream identifiers.
pub mod streams {
    pub const CHANNEL_H: u64 = 1;
    pub const CHANNEL_Q: u64 = 2;
    pub const CHANNEL_F: u64 = 3;
    pub const CHANNEL_G: u64 = 4;
    pub const CHANNEL_M: u64 = 5;
    pub const RANDOM_PHASE: u64 = 16;
    pub const AN_UNITARY: u64 = 17;
    pub const SDP_INIT: u64 = 1 << 32;
    pub const MC_NOISE: u64 = 2 << 32;
    pub const GAUSSIAN_ROUNDING: u64 = 3 << 32;
}

pub fn stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// One `CN(0, variance)` sample.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R, variance: f64) -> Complex64 {
    let s = sqrt(variance / 2.0);
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(s * re, s * im)
}

/// `rows x cols` matrix of i.i.d. `CN(0, variance)` entries, filled column by
/// column.
pub fn complex_normal_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    rows: usize,
    cols: usize,
    variance: f64,
) -> CMat {
    let mut m = CMat::zeros(rows, cols);
    for j in 0..cols {
        for i in 0..rows {
            m[(i, j)] = complex_normal(rng, variance);
        }
    }
    m
}

pub fn complex_normal_vector<R: Rng + ?Sized>(rng: &mut R, len: usize, variance: f64) -> CVec {
    CVec::from_iterator(len, (0..len).map(|_| complex_normal(rng, variance)))
}

/// Uniform phase in `[0, 2π)`.
pub fn uniform_phase<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random::<f64>() * core::f64::consts::TAU
}
