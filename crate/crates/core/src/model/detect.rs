use crate::irs_opt::IrsPhaseVector;
use crate::linalg::CVec;
use crate::model::{ChannelSet, Constellation, HybridPrecoder, SystemConfig};
use crate::real::sqrt;

/// Maximum-likelihood `(subarray, symbol)` decision at Bob, zero-based.
///
/// Exhaustive over all `N_RF M` hypotheses; ties go to the smallest `(i, j)`
/// in lexicographic order.
pub fn ml_detect(
    cfg: &SystemConfig,
    ch: &ChannelSet,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
    cons: &Constellation,
    y: &CVec,
) -> (usize, usize) {
    let eff = ch.effective_bob(v);
    let amp = sqrt(cfg.beta * cfg.p_total);
    let mut best = (0, 0);
    let mut best_metric = f64::INFINITY;
    for i in 0..cfg.n_rf {
        // response of subarray i to its precoder block
        let cols = eff.columns(i * cfg.n_k, cfg.n_k);
        let r = (cols * p.block(i)).scale(amp);
        for (j, &b) in cons.symbols().iter().enumerate() {
            let metric = (y - &r * b).norm_squared();
            if metric < best_metric {
                best_metric = metric;
                best = (i, j);
            }
        }
    }
    best
}

/// Noiseless received vector at Bob for hypothesis `(i, j)`.
pub fn noiseless_bob_signal(
    cfg: &SystemConfig,
    ch: &ChannelSet,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
    cons: &Constellation,
    i: usize,
    j: usize,
) -> CVec {
    let eff = ch.effective_bob(v);
    let cols = eff.columns(i * cfg.n_k, cfg.n_k);
    (cols * p.block(i)) * (cons.symbols()[j] * sqrt(cfg.beta * cfg.p_total))
}
