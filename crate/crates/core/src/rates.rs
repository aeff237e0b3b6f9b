//! Cut-off rates, the approximate secrecy rate and a Monte Carlo
//! mutual-information estimator.

use alloc::vec::Vec;

use crate::irs_opt::IrsPhaseVector;
use crate::linalg::{CMat, CVec};
use crate::model::{
    difference_operators, enumerate_hypotheses, AnSettings, ChannelSet, Constellation,
    DifferencePair, HybridPrecoder, SecrecyLink, SystemConfig, TransmitHypothesis,
    WhitenedChannels,
};
use crate::real::{exp, ln, log2, sqrt, LOG2_E};
use crate::rng;
use crate::Result;

/// Hypotheses and their ordered difference pairs, built once per
/// configuration.
#[derive(Debug, Clone)]
pub struct HypothesisSet {
    pub hypotheses: Vec<TransmitHypothesis>,
    pub diffs: Vec<DifferencePair>,
    pub constellation: Constellation,
    pub n_k: usize,
}

impl HypothesisSet {
    pub fn new(cfg: &SystemConfig, cons: &Constellation) -> Self {
        let hypotheses = enumerate_hypotheses(cfg, cons);
        let diffs = difference_operators(&hypotheses);
        Self {
            hypotheses,
            diffs,
            constellation: cons.clone(),
            n_k: cfg.n_k,
        }
    }

    pub fn len(&self) -> usize {
        self.hypotheses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hypotheses.is_empty()
    }
}

/// Per-subarray responses `W_i p_i` of an effective channel `W`.
pub(crate) fn block_responses(effective: &CMat, p: &CVec, n_k: usize) -> Vec<CVec> {
    let n_rf = p.len() / n_k;
    (0..n_rf)
        .map(|i| effective.columns(i * n_k, n_k) * p.rows(i * n_k, n_k))
        .collect()
}

/// `‖W D p‖²` for one pair given the block responses of `W`.
#[inline]
pub(crate) fn pair_energy(pair: &DifferencePair, responses: &[CVec]) -> f64 {
    let mut terms = pair.op.terms();
    match (terms.next(), terms.next()) {
        (None, _) => 0.0,
        (Some((a, ca)), None) => responses[a].norm_squared() * ca.norm_sqr(),
        (Some((a, ca)), Some((b, cb))) => {
            let ra = &responses[a];
            let rb = &responses[b];
            ra.iter().zip(rb.iter()).map(|(x, y)| (x * ca + y * cb).norm_sqr()).sum()
        }
    }
}

/// `κ = Σ_{m,n} exp(-τ ‖W D_mn p‖²)` for a whitened effective channel `W`.
///
/// Each term lies in `(0, 1]`, with the diagonal contributing exactly 1, so
/// the plain sum is already max-shifted. Terms that underflow contribute 0.
pub fn kappa(effective: &CMat, diffs: &[DifferencePair], p: &HybridPrecoder, tau: f64) -> f64 {
    let responses = block_responses(effective, p.vector(), p.n_k());
    diffs
        .iter()
        .map(|d| exp(-tau * pair_energy(d, &responses)))
        .sum()
}

/// Monte Carlo mutual-information estimate with standard errors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mi_bob: f64,
    pub mi_eve: f64,
    pub se_bob: f64,
    pub se_eve: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateReport {
    /// Bob's cut-off rate, bits.
    pub i0_bob: f64,
    pub i0_eve: f64,
    /// `log2 κ_E - log2 κ_B`, bits; negative when Eve is better off.
    pub r_approx: f64,
    pub kappa_b: f64,
    pub kappa_e: f64,
    pub mc: Option<McEstimate>,
}

impl RateReport {
    fn from_kappas(n_hyp: usize, kappa_b: f64, kappa_e: f64) -> Self {
        let full = 2.0 * log2(n_hyp as f64);
        let (lb, le) = (log2(kappa_b), log2(kappa_e));
        Self {
            i0_bob: full - lb,
            i0_eve: full - le,
            r_approx: le - lb,
            kappa_b,
            kappa_e,
            mc: None,
        }
    }
}

/// Cut-off rates and approximate secrecy rate for fixed whitened channels.
pub fn approx_secrecy_rate(
    cfg: &SystemConfig,
    hs: &HypothesisSet,
    wch: &WhitenedChannels,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
) -> RateReport {
    let tau = cfg.tau();
    let kb = kappa(&wch.effective_bob(v), &hs.diffs, p, tau);
    let ke = kappa(&wch.effective_eve(v), &hs.diffs, p, tau);
    RateReport::from_kappas(hs.len(), kb, ke)
}

/// Rates with the AN projection and whitening rebuilt for `v`.
pub fn secrecy_rate(
    cfg: &SystemConfig,
    ch: &ChannelSet,
    hs: &HypothesisSet,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
    an: &AnSettings,
) -> Result<RateReport> {
    let link = SecrecyLink::build(cfg, ch, v, an)?;
    Ok(approx_secrecy_rate(cfg, hs, &link.whitened, v, p))
}

/// Noiseless whitened constellation points `√(βP) W X_k p`.
fn received_points(effective: &CMat, hs: &HypothesisSet, p: &HybridPrecoder, amp: f64) -> Vec<CVec> {
    let responses = block_responses(effective, p.vector(), p.n_k());
    hs.hypotheses
        .iter()
        .map(|h| &responses[h.subarray] * (h.symbol_value * amp))
        .collect()
}

fn mc_one(points: &[CVec], n_samples: usize, seed: u64, stream_base: u64) -> (f64, f64) {
    let k = points.len();
    let dim = points[0].len();
    let mut vals = Vec::with_capacity(n_samples);
    let mut buf = alloc::vec![0.0f64; k];
    for t in 0..n_samples {
        let mut r = rng::stream(seed, stream_base + t as u64);
        let noise = rng::complex_normal_vector(&mut r, dim, 1.0);
        let nn = noise.norm_squared();
        let mut acc = 0.0;
        for sm in points {
            for (slot, sn) in buf.iter_mut().zip(points) {
                let mut d = 0.0;
                for a in 0..dim {
                    d += (sm[a] - sn[a] + noise[a]).norm_sqr();
                }
                *slot = -(d - nn);
            }
            let max = buf.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let s: f64 = buf.iter().map(|x| exp(x - max)).sum();
            acc += (max + ln(s)) * LOG2_E;
        }
        vals.push(acc / k as f64);
    }
    let mean = vals.iter().sum::<f64>() / n_samples as f64;
    let var = vals.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n_samples as f64 - 1.0);
    (log2(k as f64) - mean, sqrt(var / n_samples as f64))
}

/// Sample-mean estimate of the discrete-input mutual information at both
/// receivers, in the whitened domain where the noise is `CN(0, I)`.
///
/// Draw `t` uses its own random stream, so the result depends only on
/// `seed` and `n_noise_samples`.
pub fn mc_mutual_information(
    cfg: &SystemConfig,
    hs: &HypothesisSet,
    wch: &WhitenedChannels,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
    n_noise_samples: usize,
    seed: u64,
) -> McEstimate {
    let n = n_noise_samples.max(2);
    let amp = sqrt(cfg.beta * cfg.p_total);
    let pb = received_points(&wch.effective_bob(v), hs, p, amp);
    let pe = received_points(&wch.effective_eve(v), hs, p, amp);
    let (mi_bob, se_bob) = mc_one(&pb, n, seed, rng::streams::MC_NOISE);
    let (mi_eve, se_eve) = mc_one(&pe, n, seed, rng::streams::MC_NOISE + (1 << 31));
    McEstimate {
        mi_bob,
        mi_eve,
        se_bob,
        se_eve,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMat;
    use crate::model::whiten;

    fn setup(seed: u64, scale: f64) -> (SystemConfig, HypothesisSet, WhitenedChannels) {
        let cfg = SystemConfig {
            n_rf: 4,
            n_k: 2,
            n_b: 2,
            n_e: 2,
            n_irs: 6,
            p_total: 4.0,
            beta: 1.0,
            sigma_b2: 1.0,
            sigma_e2: 1.0,
            ..SystemConfig::desk_scale()
        };
        let hs = HypothesisSet::new(&cfg, &Constellation::psk(4).unwrap());
        let mut r = rng::stream(seed, 0);
        let n_t = cfg.n_t();
        let ch = ChannelSet {
            h: rng::complex_normal_matrix(&mut r, cfg.n_b, n_t, scale),
            q: rng::complex_normal_matrix(&mut r, cfg.n_e, n_t, scale),
            f: rng::complex_normal_matrix(&mut r, cfg.n_irs, n_t, scale),
            g: rng::complex_normal_matrix(&mut r, cfg.n_b, cfg.n_irs, scale),
            m: rng::complex_normal_matrix(&mut r, cfg.n_e, cfg.n_irs, scale),
        };
        let w = whiten(&ch, &CMat::identity(2, 2), &CMat::identity(2, 2)).unwrap();
        (cfg, hs, w)
    }

    #[test]
    fn zero_channel_gives_maximal_kappa() {
        let cfg = SystemConfig::reference();
        let hs = HypothesisSet::new(&cfg, &Constellation::psk(4).unwrap());
        let k = kappa(
            &CMat::zeros(cfg.n_b, cfg.n_t()),
            &hs.diffs,
            &HybridPrecoder::equal_power(&cfg),
            cfg.tau(),
        );
        assert_eq!(k, 1024.0);
    }

    #[test]
    fn huge_tau_leaves_diagonal() {
        let cfg = SystemConfig::reference();
        let hs = HypothesisSet::new(&cfg, &Constellation::psk(4).unwrap());
        let mut r = rng::stream(4, 0);
        let w = rng::complex_normal_matrix(&mut r, 2, cfg.n_t(), 1.0);
        let k = kappa(&w, &hs.diffs, &HybridPrecoder::equal_power(&cfg), 1e9);
        assert_eq!(k, 32.0);
    }

    #[test]
    fn kappa_bounds_and_monotone_in_tau() {
        for seed in 0..10 {
            let (cfg, hs, w) = setup(seed, 1.0);
            let v = IrsPhaseVector::random(cfg.n_irs, seed);
            let p = HybridPrecoder::equal_power(&cfg);
            let eff = w.effective_bob(&v);
            let k = hs.len() as f64;
            let mut prev = f64::INFINITY;
            for tau in [0.0, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0] {
                let kap = kappa(&eff, &hs.diffs, &p, tau);
                assert!(kap >= k - 1e-12 && kap <= k * k + 1e-9);
                assert!(kap <= prev + 1e-12);
                prev = kap;
            }
        }
    }

    #[test]
    fn identical_links_give_zero_rate() {
        let (cfg, hs, mut w) = setup(3, 1.0);
        w.q_tilde = w.h_tilde.clone();
        w.m_tilde = w.g_tilde.clone();
        let v = IrsPhaseVector::random(cfg.n_irs, 1);
        let rep = approx_secrecy_rate(&cfg, &hs, &w, &v, &HybridPrecoder::equal_power(&cfg));
        assert_eq!(rep.r_approx, 0.0);
    }

    #[test]
    fn silent_eve_gives_positive_rate() {
        let (cfg, hs, mut w) = setup(5, 1.0);
        w.q_tilde.fill(crate::linalg::ZERO);
        w.m_tilde.fill(crate::linalg::ZERO);
        let v = IrsPhaseVector::ones(cfg.n_irs);
        let rep = approx_secrecy_rate(&cfg, &hs, &w, &v, &HybridPrecoder::equal_power(&cfg));
        assert_eq!(rep.kappa_e, 256.0);
        assert!(rep.kappa_b < 256.0);
        assert!(rep.r_approx > 0.0);
        assert!((rep.r_approx - (rep.i0_bob - rep.i0_eve)).abs() < 1e-12);
        assert!(rep.i0_bob <= log2(16.0) + 1e-9 && rep.i0_bob >= -1e-9);
    }

    #[test]
    fn mc_limits() {
        // zero channel: no information
        let (cfg, hs, w) = setup(1, 0.0);
        let v = IrsPhaseVector::ones(cfg.n_irs);
        let p = HybridPrecoder::equal_power(&cfg);
        let mc = mc_mutual_information(&cfg, &hs, &w, &v, &p, 200, 1);
        assert!(mc.mi_bob.abs() <= 3.0 * mc.se_bob + 1e-12);
        // very strong channel: log2(16) bits
        let (cfg, hs, w) = setup(1, 1e8);
        let mc = mc_mutual_information(&cfg, &hs, &w, &v, &p, 200, 2);
        assert!((mc.mi_bob - 4.0).abs() < 0.05);
        assert!((mc.mi_eve - 4.0).abs() < 0.05);
    }

    #[test]
    fn mc_is_seed_deterministic() {
        let (cfg, hs, w) = setup(2, 0.05);
        let v = IrsPhaseVector::ones(cfg.n_irs);
        let p = HybridPrecoder::equal_power(&cfg);
        let a = mc_mutual_information(&cfg, &hs, &w, &v, &p, 150, 9);
        let b = mc_mutual_information(&cfg, &hs, &w, &v, &p, 150, 9);
        assert_eq!(a, b);
    }
}
