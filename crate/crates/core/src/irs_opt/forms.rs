//! Reduction of the pairwise exponent norms to quadratic forms in `v`.
//!
//! For hypothesis `k = (i, j)` with `x_k = X_k p`:
//!
//! ```text
//! a_k = W̃ x_k        (direct response, receiver dimension)
//! s_k = F x_k        (IRS-incident response, length N)
//! ‖(W̃ + G̃ V F) (x_k - x_l)‖² = ‖A + C v‖²,   A = a_k - a_l,  C = G̃ diag(s_k - s_l)
//!                           = v^H B v + 2 Re{A^H C v} + ‖A‖²,   B = C^H C
//! ```
//!
//! Aggregates over all ordered pairs are formed from per-hypothesis sums, so
//! the cost is linear in the number of hypotheses rather than quadratic.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::irs_opt::IrsPhaseVector;
use crate::linalg::{hermitian_part, quad_form, CMat, CVec};
use crate::model::{HybridPrecoder, SystemConfig, WhitenedChannels};
use crate::rates::{block_responses, HypothesisSet};
use crate::real::LOG2_E;

/// Per-receiver part of the reduction.
#[derive(Debug, Clone)]
pub struct ReceiverForms {
    /// `a_k` for every hypothesis.
    pub a_vec: Vec<CVec>,
    /// `s_k` for every hypothesis (the diagonal of `S_k`).
    pub s_diag: Vec<CVec>,
    /// Whitened IRS -> receiver channel.
    pub reflect: CMat,
    /// `log2(e) τ Σ B`.
    pub phi: CMat,
    /// `log2(e) τ Σ A^H C`, a row vector stored as a column.
    pub d_row: CVec,
    /// `Σ ‖A‖²` over all pairs (unscaled).
    pub a_energy: f64,
}

impl ReceiverForms {
    fn build(direct: &CMat, reflect: &CMat, f: &CMat, hs: &HypothesisSet, p: &HybridPrecoder, scale: f64) -> Self {
        let n_k = p.n_k();
        let direct_resp = block_responses(direct, p.vector(), n_k);
        let incident_resp = block_responses(f, p.vector(), n_k);
        let k = hs.len() as f64;
        let n = f.nrows();
        let rows = direct.nrows();

        let mut a_vec = Vec::with_capacity(hs.len());
        let mut s_diag = Vec::with_capacity(hs.len());
        for h in &hs.hypotheses {
            a_vec.push(&direct_resp[h.subarray] * h.symbol_value);
            s_diag.push(&incident_resp[h.subarray] * h.symbol_value);
        }

        // Σ_{k,l} f(x_k - x_l) g(x_k - x_l)^* = 2K Σ f g^* - 2 (Σf)(Σg)^*
        let s_sum: CVec = s_diag.iter().fold(CVec::zeros(n), |acc, s| acc + s);
        let a_sum: CVec = a_vec.iter().fold(CVec::zeros(rows), |acc, a| acc + a);
        let w_vec: Vec<CVec> = a_vec.iter().map(|a| reflect.adjoint() * a).collect();
        let w_sum: CVec = w_vec.iter().fold(CVec::zeros(n), |acc, w| acc + w);

        let mut t = CMat::zeros(n, n);
        for s in &s_diag {
            let sc = s.conjugate();
            t.ger(Complex64::new(2.0 * k, 0.0), &sc, s, Complex64::new(1.0, 0.0));
        }
        let sc = s_sum.conjugate();
        t.ger(Complex64::new(-2.0, 0.0), &sc, &s_sum, Complex64::new(1.0, 0.0));

        let gram = reflect.adjoint() * reflect;
        let phi = hermitian_part(&gram.component_mul(&t).scale(scale));

        let mut d_row = CVec::zeros(n);
        for (w, s) in w_vec.iter().zip(&s_diag) {
            for b in 0..n {
                d_row[b] += w[b].conj() * s[b] * (2.0 * k);
            }
        }
        for b in 0..n {
            d_row[b] -= w_sum[b].conj() * s_sum[b] * 2.0;
        }
        d_row.scale_mut(scale);

        let a_energy =
            2.0 * k * a_vec.iter().map(|a| a.norm_squared()).sum::<f64>() - 2.0 * a_sum.norm_squared();

        Self {
            a_vec,
            s_diag,
            reflect: reflect.clone(),
            phi,
            d_row,
            a_energy,
        }
    }

    /// `A^{mn}_{ij} = a_k - a_l`.
    pub fn pair_a(&self, k: usize, l: usize) -> CVec {
        &self.a_vec[k] - &self.a_vec[l]
    }

    /// `C^{mn}_{ij} = G̃ diag(s_k - s_l)`.
    pub fn pair_c(&self, k: usize, l: usize) -> CMat {
        let ds = &self.s_diag[k] - &self.s_diag[l];
        let mut c = self.reflect.clone();
        for (j, d) in ds.iter().enumerate() {
            c.column_mut(j).iter_mut().for_each(|x| *x *= *d);
        }
        c
    }

    /// `B^{mn}_{ij} = C^H C`.
    pub fn pair_b(&self, k: usize, l: usize) -> CMat {
        let c = self.pair_c(k, l);
        c.adjoint() * c
    }

    /// `v^H B v + 2 Re{A^H C v} + ‖A‖²` for one pair.
    pub fn pair_energy(&self, k: usize, l: usize, v: &IrsPhaseVector) -> f64 {
        let a = self.pair_a(k, l);
        let c = self.pair_c(k, l);
        let cv = &c * v.as_vector();
        quad_form(&self.pair_b(k, l), v.as_vector()) + 2.0 * a.dotc(&cv).re + a.norm_squared()
    }
}

/// Aggregated quadratic forms for both receivers.
#[derive(Debug, Clone)]
pub struct QuadraticForms {
    pub bob: ReceiverForms,
    pub eve: ReceiverForms,
    pub tau: f64,
    /// `log2(e) τ (Σ‖A_B‖² - Σ‖A_E‖²)`.
    pub c_const: f64,
}

impl QuadraticForms {
    pub fn phi_b(&self) -> &CMat {
        &self.bob.phi
    }

    pub fn phi_e(&self) -> &CMat {
        &self.eve.phi
    }

    pub fn d_row(&self) -> &CVec {
        &self.bob.d_row
    }

    pub fn d_prime_row(&self) -> &CVec {
        &self.eve.d_row
    }

    pub fn n(&self) -> usize {
        self.bob.phi.nrows()
    }

    pub fn surrogate(&self) -> SurrogateObjective {
        SurrogateObjective {
            phi: hermitian_part(&(&self.bob.phi - &self.eve.phi)),
            delta: &self.bob.d_row - &self.eve.d_row,
            c: self.c_const,
        }
    }
}

/// Builds the IRS-domain quadratic forms for a fixed precoder.
pub fn build_quadratic_forms(
    cfg: &SystemConfig,
    wch: &WhitenedChannels,
    p: &HybridPrecoder,
    hs: &HypothesisSet,
) -> QuadraticForms {
    let tau = cfg.tau();
    let scale = LOG2_E * tau;
    let bob = ReceiverForms::build(&wch.h_tilde, &wch.g_tilde, &wch.f, hs, p, scale);
    let eve = ReceiverForms::build(&wch.q_tilde, &wch.m_tilde, &wch.f, hs, p, scale);
    let c_const = scale * (bob.a_energy - eve.a_energy);
    QuadraticForms { bob, eve, tau, c_const }
}

/// `f(v) = v^H Φ v + 2 Re{Δ v} + C` with `Φ = Φ_B - Φ_E`, `Δ = D - D'`.
#[derive(Debug, Clone, PartialEq)]
pub struct SurrogateObjective {
    pub phi: CMat,
    /// Row vector `Δ`, stored as a column.
    pub delta: CVec,
    pub c: f64,
}

impl SurrogateObjective {
    pub fn n(&self) -> usize {
        self.phi.nrows()
    }

    pub fn value(&self, v: &IrsPhaseVector) -> f64 {
        self.value_raw(v.as_vector())
    }

    pub(crate) fn value_raw(&self, v: &CVec) -> f64 {
        let quad = quad_form(&self.phi, v);
        let lin: Complex64 = self.delta.iter().zip(v.iter()).map(|(d, x)| d * x).sum();
        quad + 2.0 * lin.re + self.c
    }

    /// `Δ^H` as a column vector.
    pub fn delta_h(&self) -> CVec {
        self.delta.conjugate()
    }
}
