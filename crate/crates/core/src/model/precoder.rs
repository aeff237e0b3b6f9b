use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::CVec;
use crate::model::SystemConfig;
use crate::real::sqrt;
use crate::{Error, Result};

/// Outcome of splitting one precoder block into analog and digital parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockFit {
    /// Constant-modulus block, reconstructed within 1e-6 relative.
    Exact,
    /// Reconstruction error above 1e-6 relative; the block is not a valid
    /// phase-shifter output.
    Flagged,
    /// All-zero block; no factorization attempted.
    Skipped,
}

/// Per-block analog vectors `f_i` (entries of modulus `1/√N_k`) and digital
/// gains `d_i` with `f_i d_i ≈ p_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Factorization {
    pub f_blocks: Vec<CVec>,
    pub d_gains: Vec<Complex64>,
    /// `‖p_i - f_i d_i‖`.
    pub block_errors: Vec<f64>,
    pub fits: Vec<BlockFit>,
}

impl Factorization {
    pub fn is_hybrid_feasible(&self) -> bool {
        self.fits.iter().all(|f| *f == BlockFit::Exact)
    }
}

/// Stacked hybrid precoding vector `p = F_A F_D` of length `N_RF N_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct HybridPrecoder {
    p: CVec,
    n_rf: usize,
    n_k: usize,
    pub factorization: Option<Factorization>,
}

impl HybridPrecoder {
    pub fn new(p: CVec, n_rf: usize, n_k: usize) -> Result<Self> {
        if p.len() != n_rf * n_k {
            return Err(Error::Dimension(format!(
                "precoder length {} != N_RF * N_k = {}",
                p.len(),
                n_rf * n_k
            )));
        }
        Ok(Self {
            p,
            n_rf,
            n_k,
            factorization: None,
        })
    }

    /// Equal-power constant-modulus start point on the boundary `‖p‖ = N_RF`.
    pub fn equal_power(cfg: &SystemConfig) -> Self {
        let n_t = cfg.n_t();
        let amp = cfg.n_rf as f64 / sqrt(n_t as f64);
        Self {
            p: CVec::from_element(n_t, Complex64::new(amp, 0.0)),
            n_rf: cfg.n_rf,
            n_k: cfg.n_k,
            factorization: None,
        }
    }

    pub fn zeros(cfg: &SystemConfig) -> Self {
        Self {
            p: CVec::zeros(cfg.n_t()),
            n_rf: cfg.n_rf,
            n_k: cfg.n_k,
            factorization: None,
        }
    }

    pub fn vector(&self) -> &CVec {
        &self.p
    }

    pub fn into_vector(self) -> CVec {
        self.p
    }

    pub fn n_rf(&self) -> usize {
        self.n_rf
    }

    pub fn n_k(&self) -> usize {
        self.n_k
    }

    pub fn block(&self, i: usize) -> nalgebra::DVectorView<'_, Complex64> {
        self.p.rows(i * self.n_k, self.n_k)
    }

    pub fn norm(&self) -> f64 {
        self.p.norm()
    }

    /// `‖p‖ ≤ N_RF` (+1e-9).
    pub fn within_power_budget(&self) -> bool {
        self.norm() <= self.n_rf as f64 + 1e-9
    }

    /// Same dimensions, new vector; any factorization is dropped.
    pub fn with_vector(&self, p: CVec) -> Self {
        debug_assert_eq!(p.len(), self.p.len());
        Self {
            p,
            n_rf: self.n_rf,
            n_k: self.n_k,
            factorization: None,
        }
    }
}

/// Radial projection onto `‖p‖ ≤ radius`.
pub fn project_to_ball(p: &CVec, radius: f64) -> CVec {
    let n = p.norm();
    if n > radius {
        p.scale(radius / n)
    } else {
        p.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn equal_power_sits_on_budget() {
        let cfg = SystemConfig::desk_scale();
        let p = HybridPrecoder::equal_power(&cfg);
        assert!((p.norm() - cfg.n_rf as f64).abs() < 1e-12);
        assert!(p.within_power_budget());
        let m0 = p.vector()[0].norm();
        assert!(p.vector().iter().all(|z| (z.norm() - m0).abs() < 1e-15));
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(HybridPrecoder::new(CVec::zeros(5), 2, 2).is_err());
    }

    #[test]
    fn ball_projection() {
        let p = CVec::from_element(4, Complex64::new(3.0, 4.0));
        let q = project_to_ball(&p, 2.0);
        assert!((q.norm() - 2.0).abs() < 1e-12);
        let small = p.scale(0.01);
        assert_eq!(project_to_ball(&small, 2.0), small);
    }
}
