//! DC-linearized ADMM on the unit-modulus surrogate.
//!
//! The convex term `v^H Φ_B v` is replaced by its first-order expansion at
//! `u_o`, and the splitting `u = v` moves the unit-modulus constraint onto a
//! projection step:
//!
//! ```text
//! (2Φ_E + ρI) u = 2Φ_B u_o + λ + ρ v + 2Δ^H
//! v = phase(u - λ/ρ)
//! λ = λ - ρ (u - v)
//! ```

use alloc::vec::Vec;

use nalgebra::Cholesky;

use crate::irs_opt::{check_len, IrsPhaseVector, QuadraticForms, SolverOutcome};
use crate::linalg::{CMat, CVec};
use crate::real::abs;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdmmSettings {
    /// Penalty; `None` selects `2 tr(Φ_E)/N + 1`.
    pub rho: Option<f64>,
    /// Inner stop on `‖v_k - v_{k-1}‖`.
    pub tol: f64,
    /// Outer stop on the absolute surrogate change between linearizations.
    pub outer_tol: f64,
    pub max_inner: usize,
    pub max_outer: usize,
}

impl Default for AdmmSettings {
    fn default() -> Self {
        Self {
            rho: None,
            tol: 0.01,
            outer_tol: 0.01,
            max_inner: 200,
            max_outer: 50,
        }
    }
}

/// Elementwise `w_n / |w_n|`, keeping `prev_n` where `w_n = 0`.
pub fn project_unit_modulus(w: &CVec, prev: &CVec) -> CVec {
    CVec::from_iterator(
        w.len(),
        w.iter().zip(prev.iter()).map(|(z, p)| {
            let n = z.norm();
            if n > 0.0 {
                z / n
            } else {
                *p
            }
        }),
    )
}

/// Runs the outer linearization loop. The returned vector is the best
/// surrogate iterate seen, `v0` included.
pub fn irs_admm(
    qf: &QuadraticForms,
    v0: &IrsPhaseVector,
    settings: &AdmmSettings,
) -> Result<SolverOutcome<IrsPhaseVector>> {
    let n = qf.n();
    check_len(v0, n)?;
    let sur = qf.surrogate();
    let phi_b = qf.phi_b();
    let phi_e = qf.phi_e();
    let rho = settings.rho.unwrap_or_else(|| 2.0 * phi_e.trace().re / n as f64 + 1.0);
    if !(rho > 0.0) {
        return Err(Error::InvalidArgument("ADMM penalty must be positive"));
    }
    let system = phi_e.scale(2.0) + CMat::identity(n, n).scale(rho);
    let chol = Cholesky::new(system).ok_or(Error::NotPositiveDefinite { smallest: rho })?;
    let two_delta_h = sur.delta_h().scale(2.0);

    let mut v = v0.as_vector().clone();
    let mut best = v.clone();
    let mut best_value = sur.value_raw(&v);
    let mut prev_outer = best_value;
    let mut trace = Vec::with_capacity(settings.max_outer + 1);
    trace.push(best_value);
    let mut iterations = 0;
    let mut converged = false;
    let mut residual = 0.0;

    for _ in 0..settings.max_outer {
        iterations += 1;
        let linear = (phi_b * &v).scale(2.0) + &two_delta_h;
        let mut u = v.clone();
        let mut lambda = CVec::zeros(n);
        for _ in 0..settings.max_inner {
            let rhs = &linear + &lambda + v.scale(rho);
            u = chol.solve(&rhs);
            let v_next = project_unit_modulus(&(&u - lambda.unscale(rho)), &v);
            lambda -= (&u - &v_next).scale(rho);
            let step = (&v_next - &v).norm();
            v = v_next;
            let f = sur.value_raw(&v);
            if f > best_value {
                best_value = f;
                best.copy_from(&v);
            }
            if step <= settings.tol {
                break;
            }
        }
        residual = (&u - &v).norm();
        let f = sur.value_raw(&v);
        trace.push(f);
        if abs(f - prev_outer) <= settings.outer_tol {
            converged = true;
            break;
        }
        prev_outer = f;
    }

    Ok(SolverOutcome {
        solution: IrsPhaseVector::from_raw(best),
        value: best_value,
        iterations,
        converged,
        trace,
        residual,
    })
}
