//! Precoder-domain quadratics `p^H B_mn p = ‖W D_mn p‖²`.
//!
//! `D_mn` touches at most two subarray blocks, so each `B_mn` is stored as a
//! dense `(#blocks N_k)²` matrix over the touched blocks only.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::irs_opt::IrsPhaseVector;
use crate::linalg::{CMat, CVec, ZERO};
use crate::model::{DifferencePair, SystemConfig, WhitenedChannels};
use crate::rates::HypothesisSet;
use crate::real::{exp, log2};

/// One `B_mn` restricted to the blocks `D_mn` touches.
#[derive(Debug, Clone, PartialEq)]
pub struct PairQuadratic {
    /// Touched subarrays, ascending; empty for `m = n`.
    pub blocks: Vec<usize>,
    pub mat: CMat,
}

impl PairQuadratic {
    fn build(effective: &CMat, pair: &DifferencePair, n_k: usize) -> Self {
        let mut terms: Vec<(usize, Complex64)> = pair.op.terms().collect();
        terms.sort_by_key(|t| t.0);
        let rows = effective.nrows();
        let mut m = CMat::zeros(rows, terms.len() * n_k);
        for (slot, (block, coeff)) in terms.iter().enumerate() {
            let src = effective.columns(block * n_k, n_k);
            for c in 0..n_k {
                for r in 0..rows {
                    m[(r, slot * n_k + c)] = src[(r, c)] * coeff;
                }
            }
        }
        Self {
            blocks: terms.iter().map(|t| t.0).collect(),
            mat: m.adjoint() * m,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    fn gather(&self, p: &CVec, n_k: usize) -> CVec {
        let mut x = CVec::zeros(self.blocks.len() * n_k);
        for (slot, b) in self.blocks.iter().enumerate() {
            x.rows_mut(slot * n_k, n_k).copy_from(&p.rows(b * n_k, n_k));
        }
        x
    }

    /// `out += scale * B y` scattered back to full length, with `y` given in
    /// gathered coordinates.
    fn scatter_mul(&self, y: &CVec, scale: f64, out: &mut CVec, n_k: usize) {
        let by = &self.mat * y;
        for (slot, b) in self.blocks.iter().enumerate() {
            for c in 0..n_k {
                out[b * n_k + c] += by[slot * n_k + c] * scale;
            }
        }
    }

    /// `p^H B p`.
    pub fn energy(&self, p: &CVec, n_k: usize) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let x = self.gather(p, n_k);
        x.dotc(&(&self.mat * &x)).re
    }

    /// `Re{p0^H B p}`.
    pub fn cross(&self, p0: &CVec, p: &CVec, n_k: usize) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let x0 = self.gather(p0, n_k);
        let x = self.gather(p, n_k);
        x0.dotc(&(&self.mat * &x)).re
    }

    /// `out += scale * B p`.
    pub fn add_product(&self, p: &CVec, scale: f64, out: &mut CVec, n_k: usize) {
        if self.is_zero() {
            return;
        }
        let x = self.gather(p, n_k);
        self.scatter_mul(&x, scale, out, n_k);
    }

    /// Full `N_t x N_t` matrix.
    pub fn dense(&self, n_t: usize, n_k: usize) -> CMat {
        let mut out = CMat::from_element(n_t, n_t, ZERO);
        for (si, bi) in self.blocks.iter().enumerate() {
            for (sj, bj) in self.blocks.iter().enumerate() {
                out.view_mut((bi * n_k, bj * n_k), (n_k, n_k))
                    .copy_from(&self.mat.view((si * n_k, sj * n_k), (n_k, n_k)));
            }
        }
        out
    }
}

/// All `B_mn` (Bob) and `E_mn` (Eve) for a fixed reflection vector.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecoderQuadratics {
    pub b_mats: Vec<PairQuadratic>,
    pub e_mats: Vec<PairQuadratic>,
    pub tau: f64,
    pub n_rf: usize,
    pub n_k: usize,
}

pub fn build_precoder_quadratics(
    cfg: &SystemConfig,
    wch: &WhitenedChannels,
    v: &IrsPhaseVector,
    hs: &HypothesisSet,
) -> PrecoderQuadratics {
    let wb = wch.effective_bob(v);
    let we = wch.effective_eve(v);
    PrecoderQuadratics {
        b_mats: hs.diffs.iter().map(|d| PairQuadratic::build(&wb, d, cfg.n_k)).collect(),
        e_mats: hs.diffs.iter().map(|d| PairQuadratic::build(&we, d, cfg.n_k)).collect(),
        tau: cfg.tau(),
        n_rf: cfg.n_rf,
        n_k: cfg.n_k,
    }
}

impl PrecoderQuadratics {
    pub fn n_t(&self) -> usize {
        self.n_rf * self.n_k
    }

    /// `Σ exp(-τ p^H B p)` over one receiver's matrices.
    pub fn kappa(&self, mats: &[PairQuadratic], p: &CVec) -> f64 {
        mats.iter().map(|b| exp(-self.tau * b.energy(p, self.n_k))).sum()
    }

    /// `R_s^a(p) = log2 κ_E - log2 κ_B`.
    pub fn rate(&self, p: &CVec) -> f64 {
        log2(self.kappa(&self.e_mats, p)) - log2(self.kappa(&self.b_mats, p))
    }

    /// Bob's and Eve's `log2 κ`.
    pub fn log_kappas(&self, p: &CVec) -> (f64, f64) {
        (log2(self.kappa(&self.b_mats, p)), log2(self.kappa(&self.e_mats, p)))
    }
}
