//! Cyclic per-element maximization of the surrogate.
//!
//! With all other elements fixed the surrogate is
//! `const + 2 Re{conj(v_n) g_n}` where `g_n = Σ_{j≠n} Φ_nj v_j + conj(Δ_n)`,
//! maximized by `v_n = g_n / |g_n|`.

use alloc::vec::Vec;

use crate::irs_opt::{check_len, IrsPhaseVector, SolverOutcome, SurrogateObjective};
use crate::real::abs;
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BcaSettings {
    /// Stop when a sweep improves the surrogate by at most
    /// `tol * max(1, |f|)`.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for BcaSettings {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_sweeps: 500,
        }
    }
}

/// The trace holds the surrogate after every single-element update.
pub fn irs_bca(
    sur: &SurrogateObjective,
    v0: &IrsPhaseVector,
    settings: &BcaSettings,
) -> Result<SolverOutcome<IrsPhaseVector>> {
    let n = sur.n();
    check_len(v0, n)?;
    let phi = &sur.phi;
    let mut v = v0.as_vector().clone();
    let mut z = phi * &v;
    let mut f = sur.value_raw(&v);
    let mut trace = Vec::with_capacity(n * 4 + 1);
    trace.push(f);
    let mut sweeps = 0;
    let mut converged = false;

    while sweeps < settings.max_sweeps {
        sweeps += 1;
        let start = f;
        for k in 0..n {
            let g = z[k] - phi[(k, k)] * v[k] + sur.delta[k].conj();
            let mag = g.norm();
            if mag == 0.0 {
                trace.push(f);
                continue;
            }
            let new = g / mag;
            let diff = new - v[k];
            // change of 2 Re{conj(v_n) g_n}; never negative up to rounding
            f += 2.0 * (diff.conj() * g).re;
            z += phi.column(k) * diff;
            v[k] = new;
            trace.push(f);
        }
        if f - start <= settings.tol * f64::max(1.0, abs(f)) {
            converged = true;
            break;
        }
    }

    let value = sur.value_raw(&v);
    Ok(SolverOutcome {
        solution: IrsPhaseVector::from_raw(v),
        value,
        iterations: sweeps,
        converged,
        trace,
        residual: 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, hermitian_part, CMat, CVec};
    use crate::rng;

    fn random_surrogate(n: usize, seed: u64) -> SurrogateObjective {
        let mut r = rng::stream(seed, 0);
        let a = rng::complex_normal_matrix(&mut r, n, n, 1.0);
        SurrogateObjective {
            phi: hermitian_part(&a),
            delta: rng::complex_normal_vector(&mut r, n, 1.0),
            c: 0.3,
        }
    }

    #[test]
    fn single_element_takes_conjugate_phase() {
        let sur = SurrogateObjective {
            phi: CMat::from_element(1, 1, c(2.0, 0.0)),
            delta: CVec::from_element(1, c(3.0, 4.0)),
            c: 0.0,
        };
        let out = irs_bca(&sur, &IrsPhaseVector::ones(1), &BcaSettings::default()).unwrap();
        assert!((out.solution.as_vector()[0] - c(0.6, -0.8)).norm() < 1e-15);
        assert!((out.value - (2.0 + 10.0)).abs() < 1e-12);
    }

    #[test]
    fn zero_gradient_keeps_element() {
        let mut sur = random_surrogate(3, 1);
        for j in 0..3 {
            if j != 1 {
                sur.phi[(1, j)] = c(0.0, 0.0);
                sur.phi[(j, 1)] = c(0.0, 0.0);
            }
        }
        sur.delta[1] = c(0.0, 0.0);
        let v0 = IrsPhaseVector::from_phases(&[0.1, 1.3, -0.4]);
        let out = irs_bca(&sur, &v0, &BcaSettings::default()).unwrap();
        assert_eq!(out.solution.as_vector()[1], v0.as_vector()[1]);
    }

    #[test]
    fn trace_is_monotone_and_tracks_value() {
        for seed in 0..20 {
            let sur = random_surrogate(8, seed);
            let out = irs_bca(&sur, &IrsPhaseVector::random(8, seed), &BcaSettings::default()).unwrap();
            for w in out.trace.windows(2) {
                assert!(w[1] >= w[0] - 1e-10);
            }
            assert!((out.trace.last().unwrap() - out.value).abs() < 1e-9 * out.value.abs().max(1.0));
            assert!(out.solution.modulus_error() < 1e-12);
            assert!(out.converged);
        }
    }
}
