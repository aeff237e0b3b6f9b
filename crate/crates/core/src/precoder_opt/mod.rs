//! Hybrid precoder optimization for a fixed reflection vector: the pairwise
//! quadratics, SCA and gradient ascent under `‖p‖ ≤ N_RF`, and the
//! analog/digital split of the result.

use alloc::format;

use crate::model::HybridPrecoder;
use crate::{Error, Result};

mod factorize;
mod ga;
mod quadratics;
mod sca;

pub use factorize::{factorize_hybrid, FIT_TOLERANCE};
pub use ga::{cor_ga, secrecy_gradient, GaSettings};
pub use quadratics::{build_precoder_quadratics, PairQuadratic, PrecoderQuadratics};
pub use sca::{asr_sca, bob_upper_bound, eve_lower_bound, ScaBounds, ScaSettings};

pub(crate) fn check_precoder(pq: &PrecoderQuadratics, p: &HybridPrecoder) -> Result<()> {
    if p.n_rf() != pq.n_rf || p.n_k() != pq.n_k {
        return Err(Error::Dimension(format!(
            "precoder is {}x{}, quadratics expect {}x{}",
            p.n_rf(),
            p.n_k(),
            pq.n_rf,
            pq.n_k
        )));
    }
    Ok(())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::irs_opt::IrsPhaseVector;
    use crate::linalg::CMat;
    use crate::model::{whiten, ChannelSet, Constellation, SystemConfig};
    use crate::rates::HypothesisSet;
    use crate::rng;

    /// Small random instance (`N_RF = 2`, `N_k = 2`, QPSK) with unit-variance
    /// channels and identity whiteners.
    pub(crate) fn random_quadratics(seed: u64, p_total: f64) -> (SystemConfig, PrecoderQuadratics) {
        let cfg = SystemConfig {
            n_rf: 2,
            n_k: 2,
            n_b: 2,
            n_e: 2,
            n_irs: 4,
            m_ary: 4,
            p_total,
            ..SystemConfig::desk_scale()
        };
        let hs = HypothesisSet::new(&cfg, &Constellation::psk(4).unwrap());
        let mut r = rng::stream(seed, 0);
        let ch = ChannelSet {
            h: rng::complex_normal_matrix(&mut r, 2, 4, 1.0),
            q: rng::complex_normal_matrix(&mut r, 2, 4, 1.0),
            f: rng::complex_normal_matrix(&mut r, 4, 4, 1.0),
            g: rng::complex_normal_matrix(&mut r, 2, 4, 1.0),
            m: rng::complex_normal_matrix(&mut r, 2, 4, 1.0),
        };
        let id = CMat::identity(2, 2);
        let w = whiten(&ch, &id, &id).unwrap();
        let v = IrsPhaseVector::random(4, seed);
        (cfg.clone(), build_precoder_quadratics(&cfg, &w, &v, &hs))
    }
}
