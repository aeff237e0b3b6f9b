//! Successive convex approximation of `R_s^a(p)`.
//!
//! At an expansion point `p0`, with `χ⁰ = exp(-τ e⁰)`:
//!
//! ```text
//! R_E^l(p; p0) = log2 Σ χ⁰_mn (1 + τ e⁰_mn - τ p^H E_mn p)      ≤ log2 κ_E(p)
//! R_B^u(p; p0) = log2 Σ exp(τ b⁰_mn - 2τ Re{p0^H B_mn p})     ≥ log2 κ_B(p)
//! ```
//!
//! Both are tight at `p0` and `R_E^l - R_B^u` is concave, so each step is a
//! minorize-maximize step on `R_s^a`.

use alloc::vec::Vec;

use crate::irs_opt::SolverOutcome;
use crate::linalg::{quad_form, CMat, CVec};
use crate::model::{project_to_ball, HybridPrecoder};
use crate::precoder_opt::{check_precoder, PrecoderQuadratics};
use crate::real::{abs, exp, log2, log_sum_exp, LN_2, LOG2_E};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaSettings {
    /// Outer stop on `‖p_k - p_{k-1}‖`.
    pub tol: f64,
    pub max_iters: usize,
    /// Inner stop on `‖P(p + ∇) - p‖ ≤ inner_tol (1 + ‖∇‖)`.
    pub inner_tol: f64,
    pub max_inner: usize,
}

impl Default for ScaSettings {
    fn default() -> Self {
        Self {
            tol: 0.01,
            max_iters: 100,
            inner_tol: 1e-8,
            max_inner: 2000,
        }
    }
}

/// Both bounds expanded at one point.
#[derive(Debug, Clone)]
pub struct ScaBounds {
    tau: f64,
    /// `Σ χ⁰ (1 + τ e⁰)`.
    eve_const: f64,
    /// `Σ χ⁰ E_mn`.
    eve_mat: CMat,
    /// `τ b⁰_mn` per pair.
    bob_offsets: Vec<f64>,
    /// `B_mn p0` per pair.
    bob_dirs: Vec<CVec>,
}

impl ScaBounds {
    pub fn new(pq: &PrecoderQuadratics, p0: &CVec) -> Self {
        let tau = pq.tau;
        let n_t = pq.n_t();
        let mut eve_const = 0.0;
        let mut eve_mat = CMat::zeros(n_t, n_t);
        for e in &pq.e_mats {
            let e0 = e.energy(p0, pq.n_k);
            let chi = exp(-tau * e0);
            eve_const += chi * (1.0 + tau * e0);
            if chi > 0.0 && !e.is_zero() {
                eve_mat += e.dense(n_t, pq.n_k).scale(chi);
            }
        }
        let mut bob_offsets = Vec::with_capacity(pq.b_mats.len());
        let mut bob_dirs = Vec::with_capacity(pq.b_mats.len());
        for b in &pq.b_mats {
            bob_offsets.push(tau * b.energy(p0, pq.n_k));
            let mut dir = CVec::zeros(n_t);
            b.add_product(p0, 1.0, &mut dir, pq.n_k);
            bob_dirs.push(dir);
        }
        Self {
            tau,
            eve_const,
            eve_mat,
            bob_offsets,
            bob_dirs,
        }
    }

    fn eve_sum(&self, p: &CVec) -> f64 {
        self.eve_const - self.tau * quad_form(&self.eve_mat, p)
    }

    /// `R_E^l(p; p0)`; `-∞` where the affine sum is not positive.
    pub fn eve_lower(&self, p: &CVec) -> f64 {
        let s = self.eve_sum(p);
        if s > 0.0 {
            log2(s)
        } else {
            f64::NEG_INFINITY
        }
    }

    fn bob_exponents(&self, p: &CVec) -> Vec<f64> {
        self.bob_offsets
            .iter()
            .zip(&self.bob_dirs)
            .map(|(a, d)| a - 2.0 * self.tau * d.dotc(p).re)
            .collect()
    }

    /// `R_B^u(p; p0)`.
    pub fn bob_upper(&self, p: &CVec) -> f64 {
        let x = self.bob_exponents(p);
        LOG2_E * log_sum_exp(x.iter().copied())
    }

    /// `R_E^l - R_B^u`.
    pub fn value(&self, p: &CVec) -> f64 {
        self.eve_lower(p) - self.bob_upper(p)
    }

    /// `2 ∂/∂p^*` of [`Self::value`].
    pub fn gradient(&self, p: &CVec) -> CVec {
        let s = self.eve_sum(p);
        let eve = (&self.eve_mat * p).unscale(s);
        let x = self.bob_exponents(p);
        let lse = log_sum_exp(x.iter().copied());
        let mut bob = CVec::zeros(p.len());
        for (xi, d) in x.iter().zip(&self.bob_dirs) {
            let w = exp(xi - lse);
            if w > 0.0 {
                bob.axpy(num_complex::Complex64::new(w, 0.0), d, num_complex::Complex64::new(1.0, 0.0));
            }
        }
        (eve - bob).scale(-2.0 * self.tau / LN_2)
    }
}

/// `R_E^l(p; p0)`.
pub fn eve_lower_bound(pq: &PrecoderQuadratics, p: &CVec, p0: &CVec) -> f64 {
    ScaBounds::new(pq, p0).eve_lower(p)
}

/// `R_B^u(p; p0)`.
pub fn bob_upper_bound(pq: &PrecoderQuadratics, p: &CVec, p0: &CVec) -> f64 {
    ScaBounds::new(pq, p0).bob_upper(p)
}

/// Projected gradient with Armijo backtracking on the ball. Returns the
/// final point and its bound value.
fn maximize_bounds(bounds: &ScaBounds, start: &CVec, radius: f64, settings: &ScaSettings) -> (CVec, f64) {
    let mut p = start.clone();
    let mut f = bounds.value(&p);
    let mut step = f64::NAN;
    for _ in 0..settings.max_inner {
        let g = bounds.gradient(&p);
        let gnorm = g.norm();
        if !gnorm.is_finite() {
            break;
        }
        let pg = project_to_ball(&(&p + &g), radius) - &p;
        if pg.norm() <= settings.inner_tol * (1.0 + gnorm) {
            break;
        }
        if !step.is_finite() {
            step = 0.1 * radius / gnorm.max(f64::MIN_POSITIVE);
        }
        let mut accepted = false;
        while step * gnorm > 1e-16 * (1.0 + p.norm()) {
            let trial = project_to_ball(&(&p + g.scale(step)), radius);
            let ft = bounds.value(&trial);
            let predicted = g.dotc(&(&trial - &p)).re;
            if ft >= f + 1e-4 * predicted && ft >= f {
                p = trial;
                f = ft;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
        step *= 2.0;
    }
    (p, f)
}

/// Trace entries are `R_s^a` at `p0` and after each outer step.
pub fn asr_sca(
    pq: &PrecoderQuadratics,
    p0: &HybridPrecoder,
    settings: &ScaSettings,
) -> Result<SolverOutcome<HybridPrecoder>> {
    check_precoder(pq, p0)?;
    let radius = pq.n_rf as f64;
    if p0.norm() > radius + 1e-9 {
        return Err(Error::InvalidArgument("start point violates the power budget"));
    }
    let mut p = p0.vector().clone();
    let mut r = pq.rate(&p);
    let mut best = (p.clone(), r);
    let mut trace = Vec::with_capacity(16);
    trace.push(r);
    let mut iterations = 0;
    let mut converged = false;
    let mut last_move = f64::INFINITY;

    while iterations < settings.max_iters {
        iterations += 1;
        let bounds = ScaBounds::new(pq, &p);
        let f0 = bounds.value(&p);
        let (next, f1) = maximize_bounds(&bounds, &p, radius, settings);
        let r_next = pq.rate(&next);
        let slack = 1e-9 * f64::max(1.0, abs(r));
        if f1 < f0 - slack || r_next < r - slack {
            return Err(Error::NonAscent {
                before: r,
                after: r_next,
            });
        }
        last_move = (&next - &p).norm();
        p = next;
        r = r_next;
        trace.push(r);
        if r > best.1 {
            best = (p.clone(), r);
        }
        if last_move <= settings.tol {
            converged = true;
            break;
        }
    }

    Ok(SolverOutcome {
        solution: p0.with_vector(best.0),
        value: best.1,
        iterations,
        converged,
        trace,
        residual: if last_move.is_finite() { last_move } else { 0.0 },
    })
}
