use alloc::format;

use crate::real::powf;
use crate::{Error, Result};

/// Converts dBm (or dB relative to 1 mW) to linear milliwatts.
pub fn dbm_to_mw(dbm: f64) -> f64 {
    powf(10.0, dbm / 10.0)
}

/// Node coordinates in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Geometry {
    pub alice: [f64; 3],
    pub irs: [f64; 3],
    pub bob: [f64; 3],
    pub eve: [f64; 3],
}

impl Geometry {
    /// Alice at `(10, 0, 2)`, IRS at `(0, irs_y, 2)`, Bob at `(10, 45, 0)`,
    /// Eve at `(10, eve_y, 0)`.
    pub fn reference(irs_y: f64, eve_y: f64) -> Self {
        Self {
            alice: [10.0, 0.0, 2.0],
            irs: [0.0, irs_y, 2.0],
            bob: [10.0, 45.0, 0.0],
            eve: [10.0, eve_y, 0.0],
        }
    }
}

impl Default for Geometry {
    fn default() -> Self {
        Self::reference(45.0, 35.0)
    }
}

/// Scalar system parameters. Powers and noise variances are linear mW.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SystemConfig {
    /// RF chains, one per subarray.
    pub n_rf: usize,
    /// Antennas per subarray.
    pub n_k: usize,
    pub n_b: usize,
    pub n_e: usize,
    /// Reflecting elements.
    pub n_irs: usize,
    pub m_ary: usize,
    pub p_total: f64,
    /// Share of `p_total` carrying the confidential message.
    pub beta: f64,
    pub sigma_b2: f64,
    pub sigma_e2: f64,
    pub geometry: Geometry,
    /// Alice-IRS path-loss exponent.
    pub alpha_ai: f64,
    /// Alice-Bob / Alice-Eve path-loss exponent.
    pub alpha_ab: f64,
    /// IRS-Bob / IRS-Eve path-loss exponent.
    pub alpha_ib: f64,
    pub pl0_db: f64,
}

impl SystemConfig {
    /// Full-size parameter point: 8 RF chains of 4 antennas, QPSK, 50
    /// elements, 30 dBm, -80 dBm noise.
    pub fn reference() -> Self {
        Self {
            n_rf: 8,
            n_k: 4,
            n_b: 2,
            n_e: 2,
            n_irs: 50,
            m_ary: 4,
            p_total: dbm_to_mw(30.0),
            beta: 0.35,
            sigma_b2: dbm_to_mw(-80.0),
            sigma_e2: dbm_to_mw(-80.0),
            geometry: Geometry::default(),
            alpha_ai: 2.2,
            alpha_ab: 2.7,
            alpha_ib: 2.5,
            pl0_db: -30.0,
        }
    }

    /// Reduced size used for Monte Carlo campaigns: 4 RF chains of 2
    /// antennas and 16 elements.
    pub fn desk_scale() -> Self {
        Self {
            n_rf: 4,
            n_k: 2,
            n_irs: 16,
            ..Self::reference()
        }
    }

    /// Total transmit antennas `N_RF * N_k`.
    pub fn n_t(&self) -> usize {
        self.n_rf * self.n_k
    }

    /// Number of transmit hypotheses `N_RF * M`.
    pub fn n_hyp(&self) -> usize {
        self.n_rf * self.m_ary
    }

    /// `β P / 4`.
    pub fn tau(&self) -> f64 {
        self.beta * self.p_total / 4.0
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: alloc::string::String| Err(Error::InvalidConfig(msg));
        if self.n_rf == 0 || self.n_k == 0 || self.n_irs == 0 || self.n_b == 0 || self.n_e == 0 {
            return bad(format!(
                "antenna and element counts must be positive (n_rf={}, n_k={}, n_b={}, n_e={}, n_irs={})",
                self.n_rf, self.n_k, self.n_b, self.n_e, self.n_irs
            ));
        }
        if self.m_ary < 2 || !self.m_ary.is_power_of_two() {
            return bad(format!("m_ary must be a power of two >= 2, got {}", self.m_ary));
        }
        if !(self.beta > 0.0 && self.beta <= 1.0) {
            return bad(format!("beta must lie in (0, 1], got {}", self.beta));
        }
        if !(self.p_total > 0.0 && self.p_total.is_finite()) {
            return bad(format!("p_total must be positive, got {}", self.p_total));
        }
        if !(self.sigma_b2 > 0.0 && self.sigma_e2 > 0.0) {
            return bad(format!(
                "noise variances must be positive, got {} and {}",
                self.sigma_b2, self.sigma_e2
            ));
        }
        Ok(())
    }
}
