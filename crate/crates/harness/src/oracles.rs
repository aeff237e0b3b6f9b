//! Brute-force reference implementations.
//!
//! Nothing here shares code with the optimized paths beyond the data types:
//! rates are evaluated with dense hypothesis matrices, the surrogate with
//! explicit difference vectors, and optima by exhaustive search.

use irs_ssm::linalg::{CMat, CVec};
use irs_ssm::model::{whiten, ChannelSet, Constellation, HybridPrecoder, SystemConfig, WhitenedChannels};
use irs_ssm::rates::HypothesisSet;
use irs_ssm::rng;
use irs_ssm::IrsPhaseVector;
use num_complex::Complex64;

const LOG2_E: f64 = std::f64::consts::LOG2_E;

/// `W_d + W_r diag(v) F` with an explicit diagonal matrix.
pub fn dense_effective(direct: &CMat, reflect: &CMat, v: &IrsPhaseVector, f: &CMat) -> CMat {
    direct + reflect * CMat::from_diagonal(v.as_vector()) * f
}

/// Full transmit vector `X_k p` of every hypothesis.
fn transmit_vectors(hs: &HypothesisSet, p: &CVec) -> Vec<CVec> {
    hs.hypotheses
        .iter()
        .map(|h| CMat::from_diagonal(&h.x_vec) * p)
        .collect()
}

/// `κ` by the double loop over all ordered hypothesis pairs.
pub fn naive_kappa(effective: &CMat, hs: &HypothesisSet, p: &CVec, tau: f64) -> f64 {
    let rx: Vec<CVec> = transmit_vectors(hs, p).iter().map(|x| effective * x).collect();
    let mut k = 0.0;
    for a in &rx {
        for b in &rx {
            k += (-tau * (a - b).norm_squared()).exp();
        }
    }
    k
}

/// `(κ_B, κ_E, R_s^a)` on whitened channels.
pub fn naive_rates(
    cfg: &SystemConfig,
    hs: &HypothesisSet,
    w: &WhitenedChannels,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
) -> (f64, f64, f64) {
    let tau = cfg.tau();
    let kb = naive_kappa(&dense_effective(&w.h_tilde, &w.g_tilde, v, &w.f), hs, p.vector(), tau);
    let ke = naive_kappa(&dense_effective(&w.q_tilde, &w.m_tilde, v, &w.f), hs, p.vector(), tau);
    (kb, ke, ke.log2() - kb.log2())
}

/// `log2(e) τ Σ (‖W_B(v) d‖² - ‖W_E(v) d‖²)` over all ordered pairs.
pub fn naive_surrogate(
    cfg: &SystemConfig,
    hs: &HypothesisSet,
    w: &WhitenedChannels,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
) -> f64 {
    let x = transmit_vectors(hs, p.vector());
    let wb = dense_effective(&w.h_tilde, &w.g_tilde, v, &w.f);
    let we = dense_effective(&w.q_tilde, &w.m_tilde, v, &w.f);
    let mut total = 0.0;
    for a in &x {
        for b in &x {
            let d = a - b;
            total += (&wb * &d).norm_squared() - (&we * &d).norm_squared();
        }
    }
    LOG2_E * cfg.tau() * total
}

/// `v^H Φ v + 2 Re{Δ v} + C` evaluated term by term.
pub fn quadratic_value(phi: &CMat, delta: &CVec, c: f64, v: &CVec) -> f64 {
    let n = v.len();
    let mut quad = Complex64::new(0.0, 0.0);
    let mut lin = Complex64::new(0.0, 0.0);
    for i in 0..n {
        lin += delta[i] * v[i];
        for j in 0..n {
            quad += v[i].conj() * phi[(i, j)] * v[j];
        }
    }
    quad.re + 2.0 * lin.re + c
}

/// Maximum of a 3-element unit-modulus quadratic over a `step_deg` phase
/// grid. Returns the value and the maximizing phases in radians.
pub fn grid_optimum_3(phi: &CMat, delta: &CVec, c: f64, step_deg: f64) -> (f64, [f64; 3]) {
    assert_eq!(phi.nrows(), 3);
    let steps = (360.0 / step_deg).round() as usize;
    let units: Vec<Complex64> = (0..steps)
        .map(|k| Complex64::from_polar(1.0, (k as f64 * step_deg).to_radians()))
        .collect();
    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    let re = |z: Complex64| z.re;
    for (a, &va) in units.iter().enumerate() {
        for (b, &vb) in units.iter().enumerate() {
            // Terms not involving v3, then linear and constant parts in v3.
            let fixed = re(phi[(0, 0)]) + re(phi[(1, 1)]) + re(phi[(2, 2)])
                + 2.0 * re(va.conj() * phi[(0, 1)] * vb)
                + 2.0 * re(delta[0] * va + delta[1] * vb)
                + c;
            let coeff = 2.0 * (va.conj() * phi[(0, 2)] + vb.conj() * phi[(1, 2)]) + 2.0 * delta[2];
            for (k, &vc) in units.iter().enumerate() {
                let val = fixed + re(coeff * vc);
                if val > best.0 {
                    let deg = |i: usize| (i as f64 * step_deg).to_radians();
                    best = (val, [deg(a), deg(b), deg(k)]);
                }
            }
        }
    }
    best
}

/// Central-difference gradient in the `∂/∂Re + i ∂/∂Im` convention.
pub fn central_gradient(f: &dyn Fn(&CVec) -> f64, p: &CVec, h: f64) -> CVec {
    let mut g = CVec::zeros(p.len());
    for k in 0..p.len() {
        let mut part = [0.0; 2];
        for (slot, dir) in [Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)].into_iter().enumerate() {
            let mut plus = p.clone();
            let mut minus = p.clone();
            plus[k] += dir * h;
            minus[k] -= dir * h;
            part[slot] = (f(&plus) - f(&minus)) / (2.0 * h);
        }
        g[k] = Complex64::new(part[0], part[1]);
    }
    g
}

/// A point drawn uniformly from the ball `‖p‖ ≤ radius` in `C^len`.
pub fn random_in_ball(len: usize, radius: f64, seed: u64, stream: u64) -> CVec {
    let mut r = rng::stream(seed, stream);
    let g = rng::complex_normal_vector(&mut r, len, 1.0);
    let u = rng::uniform_phase(&mut r) / std::f64::consts::TAU;
    let scale = u.powf(1.0 / (2.0 * len as f64));
    g.unscale(g.norm()).scale(radius * scale)
}

/// A small instance with unit-variance Rayleigh channels and identity
/// whiteners, so the reflected path is as strong as the direct one.
#[derive(Debug, Clone)]
pub struct Instance {
    pub cfg: SystemConfig,
    pub hs: HypothesisSet,
    pub ch: ChannelSet,
    pub w: WhitenedChannels,
    pub p: HybridPrecoder,
}

/// `N_RF = 2`, `N_k = 2`, `M = 2`, two antennas at each receiver, `τ = 0.05`.
pub fn random_instance(seed: u64, n_irs: usize) -> Instance {
    let cfg = SystemConfig {
        n_rf: 2,
        n_k: 2,
        n_b: 2,
        n_e: 2,
        n_irs,
        m_ary: 2,
        p_total: 0.2,
        beta: 1.0,
        sigma_b2: 1.0,
        sigma_e2: 1.0,
        ..SystemConfig::desk_scale()
    };
    let mut r = rng::stream(seed, 0xa11ce);
    let n_t = cfg.n_t();
    let ch = ChannelSet {
        h: rng::complex_normal_matrix(&mut r, cfg.n_b, n_t, 1.0),
        q: rng::complex_normal_matrix(&mut r, cfg.n_e, n_t, 1.0),
        f: rng::complex_normal_matrix(&mut r, n_irs, n_t, 1.0),
        g: rng::complex_normal_matrix(&mut r, cfg.n_b, n_irs, 1.0),
        m: rng::complex_normal_matrix(&mut r, cfg.n_e, n_irs, 1.0),
    };
    let w = whiten(&ch, &CMat::identity(2, 2), &CMat::identity(2, 2)).expect("identity whiteners");
    let hs = HypothesisSet::new(&cfg, &Constellation::psk(cfg.m_ary).expect("BPSK"));
    let p = HybridPrecoder::new(random_in_ball(n_t, cfg.n_rf as f64, seed, 0xb0b), cfg.n_rf, cfg.n_k)
        .expect("precoder shape");
    Instance { cfg, hs, ch, w, p }
}
