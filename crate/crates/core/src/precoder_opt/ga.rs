//! Gradient ascent on `R_s^a(p)` with step halving and radial projection.

use alloc::vec::Vec;

use crate::irs_opt::SolverOutcome;
use crate::linalg::CVec;
use crate::model::{project_to_ball, HybridPrecoder};
use crate::precoder_opt::{check_precoder, PairQuadratic, PrecoderQuadratics};
use crate::real::{abs, exp, LN_2};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaSettings {
    /// Initial step; `None` selects `0.1 N_RF / ‖∇R_s^a(p0)‖`.
    pub mu0: Option<f64>,
    /// Stop once an accepted step changes `R_s^a` by at most `tol`.
    pub tol: f64,
    /// Step attempts, accepted or not.
    pub max_iters: usize,
}

impl Default for GaSettings {
    fn default() -> Self {
        Self {
            mu0: None,
            tol: 1e-5,
            max_iters: 500,
        }
    }
}

/// `Σ χ_mn B_mn p` and `κ = Σ χ_mn` with `χ_mn = exp(-τ p^H B_mn p)`.
fn weighted_product(mats: &[PairQuadratic], p: &CVec, tau: f64, n_k: usize) -> (CVec, f64) {
    let mut acc = CVec::zeros(p.len());
    let mut kappa = 0.0;
    for b in mats {
        let chi = exp(-tau * b.energy(p, n_k));
        kappa += chi;
        if chi > 0.0 {
            b.add_product(p, chi, &mut acc, n_k);
        }
    }
    (acc, kappa)
}

/// `∇ R_s^a = (2τ / ln 2) (Σ χ_B B p / κ_B - Σ χ_E E p / κ_E)`.
///
/// This is `2 ∂R/∂p^*`, so a first-order change is `Re{∇^H δp}`.
pub fn secrecy_gradient(pq: &PrecoderQuadratics, p: &CVec) -> CVec {
    let (gb, kb) = weighted_product(&pq.b_mats, p, pq.tau, pq.n_k);
    let (ge, ke) = weighted_product(&pq.e_mats, p, pq.tau, pq.n_k);
    (gb.unscale(kb) - ge.unscale(ke)).scale(2.0 * pq.tau / LN_2)
}

/// Trace entries are `R_s^a` after each accepted step, `p0` first.
pub fn cor_ga(
    pq: &PrecoderQuadratics,
    p0: &HybridPrecoder,
    settings: &GaSettings,
) -> Result<SolverOutcome<HybridPrecoder>> {
    check_precoder(pq, p0)?;
    let radius = pq.n_rf as f64;
    let mut p = p0.vector().clone();
    let mut r = pq.rate(&p);
    let mut grad = secrecy_gradient(pq, &p);
    let mut gnorm = grad.norm();
    if !gnorm.is_finite() {
        return Err(Error::NonFiniteGradient);
    }
    let mut trace = Vec::with_capacity(64);
    trace.push(r);
    if gnorm == 0.0 {
        return Ok(SolverOutcome {
            solution: p0.with_vector(p),
            value: r,
            iterations: 0,
            converged: true,
            trace,
            residual: 0.0,
        });
    }
    let mu0 = settings.mu0.unwrap_or(0.1 * radius / gnorm);
    if !(mu0 > 0.0) {
        return Err(Error::InvalidArgument("step size must be positive"));
    }
    let mut mu = mu0;
    let mut streak = 0;
    let mut iterations = 0;
    let mut converged = false;

    while iterations < settings.max_iters {
        iterations += 1;
        let trial = project_to_ball(&(&p + grad.scale(mu)), radius);
        let r_trial = pq.rate(&trial);
        if r_trial >= r {
            let delta = r_trial - r;
            p = trial;
            r = r_trial;
            trace.push(r);
            grad = secrecy_gradient(pq, &p);
            gnorm = grad.norm();
            if !gnorm.is_finite() {
                return Err(Error::NonFiniteGradient);
            }
            streak += 1;
            if streak >= 5 {
                mu = f64::min(2.0 * mu, mu0);
                streak = 0;
            }
            if abs(delta) <= settings.tol || gnorm == 0.0 {
                converged = true;
                break;
            }
        } else {
            mu *= 0.5;
            streak = 0;
            if mu < 1e-12 * mu0 {
                converged = true;
                break;
            }
        }
    }

    Ok(SolverOutcome {
        solution: p0.with_vector(p),
        value: r,
        iterations,
        converged,
        trace,
        residual: gnorm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::precoder_opt::tests::random_quadratics;
    use crate::rng;

    #[test]
    fn origin_is_stationary() {
        let (cfg, pq) = random_quadratics(2, 1.0);
        let p0 = HybridPrecoder::zeros(&cfg);
        assert_eq!(secrecy_gradient(&pq, p0.vector()).norm(), 0.0);
        let out = cor_ga(&pq, &p0, &GaSettings::default()).unwrap();
        assert_eq!(out.solution.vector(), p0.vector());
        assert_eq!(out.residual, 0.0);
        assert!(out.converged);
    }

    #[test]
    fn gradient_matches_central_differences() {
        let h = 1e-5;
        for seed in 0..5 {
            let (_, pq) = random_quadratics(seed, 0.3);
            let mut r = rng::stream(seed, 77);
            for _ in 0..4 {
                let p = rng::complex_normal_vector(&mut r, pq.n_t(), 0.5);
                let g = secrecy_gradient(&pq, &p);
                for k in 0..pq.n_t() {
                    for (dir, part) in [(c(1.0, 0.0), g[k].re), (c(0.0, 1.0), g[k].im)] {
                        let mut plus = p.clone();
                        let mut minus = p.clone();
                        plus[k] += dir * h;
                        minus[k] -= dir * h;
                        let fd = (pq.rate(&plus) - pq.rate(&minus)) / (2.0 * h);
                        assert!((fd - part).abs() <= 1e-4 * g.norm().max(1e-3), "{fd} vs {part}");
                    }
                }
            }
        }
    }

    #[test]
    fn accepted_steps_never_decrease() {
        for seed in 0..10 {
            let (cfg, pq) = random_quadratics(seed, 1.0);
            let p0 = HybridPrecoder::equal_power(&cfg);
            let out = cor_ga(&pq, &p0, &GaSettings::default()).unwrap();
            for w in out.trace.windows(2) {
                assert!(w[1] >= w[0] - 1e-12);
            }
            assert!(out.solution.within_power_budget());
            assert!(out.value >= pq.rate(p0.vector()));
        }
    }
}
