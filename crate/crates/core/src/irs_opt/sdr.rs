//! Semidefinite relaxation with Gaussian randomization.
//!
//! With `v̄ = [v; 1]` the surrogate is `v̄^H Ψ v̄ + C` for
//! `Ψ = [[Φ, Δ^H], [Δ, 0]]`. Relaxing `v̄ v̄^H` to `Q ⪰ 0` with unit diagonal
//! gives an upper bound; candidates are drawn as `ξ ~ CN(0, Q)` and mapped to
//! `v_n = phase(ξ_n conj(ξ_{N+1}))`.

use alloc::vec::Vec;

use crate::irs_opt::{
    project_unit_modulus, sdp_unit_diag, IrsPhaseVector, SdpSettings, SolverOutcome,
    SurrogateObjective,
};
use crate::linalg::{hermitian_part, CMat, CVec, ONE};
use crate::rng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdrSettings {
    pub n_randomizations: usize,
    /// Seeds both the SDP initialization and the randomization draws.
    pub seed: u64,
    pub sdp: SdpSettings,
}

impl Default for SdrSettings {
    fn default() -> Self {
        Self {
            n_randomizations: 200,
            seed: 0,
            sdp: SdpSettings::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdrOutcome {
    /// Best rounded candidate. The trace holds the running best after each
    /// draw.
    pub outcome: SolverOutcome<IrsPhaseVector>,
    /// SDP optimum plus `C`: an upper bound on the surrogate over all
    /// unit-modulus `v`.
    pub upper_bound: f64,
    pub q: CMat,
}

/// The Hermitian `(N+1) x (N+1)` lifted matrix `Ψ`.
pub fn lift(sur: &SurrogateObjective) -> CMat {
    let n = sur.n();
    let mut psi = CMat::zeros(n + 1, n + 1);
    psi.view_mut((0, 0), (n, n)).copy_from(&sur.phi);
    for j in 0..n {
        psi[(n, j)] = sur.delta[j];
        psi[(j, n)] = sur.delta[j].conj();
    }
    hermitian_part(&psi)
}

pub fn irs_sdr(sur: &SurrogateObjective, settings: &SdrSettings) -> Result<SdrOutcome> {
    if settings.n_randomizations == 0 {
        return Err(Error::InvalidArgument("at least one randomization draw is required"));
    }
    let n = sur.n();
    let psi = lift(sur);
    let sdp = sdp_unit_diag(
        &psi,
        &SdpSettings {
            seed: settings.seed,
            ..settings.sdp
        },
    )?;
    let y = &sdp.factor;
    let r = y.ncols();
    let ones = CVec::from_element(n, ONE);

    let mut best: Option<(CVec, f64)> = None;
    let mut trace = Vec::with_capacity(settings.n_randomizations);
    for draw in 0..settings.n_randomizations {
        let mut g = rng::stream(settings.seed, rng::streams::GAUSSIAN_ROUNDING + draw as u64);
        let z = rng::complex_normal_vector(&mut g, r, 1.0);
        let xi = y * z;
        let anchor = xi[n].conj();
        let rotated = CVec::from_iterator(n, xi.rows(0, n).iter().map(|x| x * anchor));
        let v = project_unit_modulus(&rotated, &ones);
        let f = sur.value_raw(&v);
        if best.as_ref().is_none_or(|(_, b)| f > *b) {
            best = Some((v, f));
        }
        trace.push(best.as_ref().map_or(f, |(_, b)| *b));
    }
    let (v, value) = best.unwrap_or_else(|| unreachable!());
    Ok(SdrOutcome {
        outcome: SolverOutcome {
            solution: IrsPhaseVector::from_raw(v),
            value,
            iterations: sdp.sweeps,
            converged: true,
            trace,
            residual: sdp.residual,
        },
        upper_bound: sdp.value + sur.c,
        q: sdp.q,
    })
}
