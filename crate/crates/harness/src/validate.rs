//! Oracle suites shared by `irs-ssm validate` and the acceptance tests.
//!
//! Each suite returns a [`Check`] with the worst observed deviation, so a
//! caller can print it and decide what to do with a failure.

use std::time::Instant;

use irs_ssm::flops::{flop_estimate, FlopMethod};
use irs_ssm::irs_opt::{
    build_quadratic_forms, irs_admm, irs_bca, irs_sdr, lift, sdp_unit_diag, AdmmSettings, BcaSettings,
    SdpSettings, SdrSettings,
};
use irs_ssm::joint::{joint_optimize, Combination, JointProblem, JointSettings};
use irs_ssm::linalg::{min_eigenvalue, CVec};
use irs_ssm::model::{dbm_to_mw, AnSettings, Constellation, HybridPrecoder, SecrecyLink, SystemConfig};
use irs_ssm::precoder_opt::{build_precoder_quadratics, cor_ga, secrecy_gradient, GaSettings, ScaBounds};
use irs_ssm::rates::{approx_secrecy_rate, HypothesisSet};
use irs_ssm::scenario::draw_channels;
use irs_ssm::IrsPhaseVector;

use crate::oracles::{central_gradient, grid_optimum_3, naive_rates, naive_surrogate, random_in_ball, random_instance};

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl std::fmt::Display for Check {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "[{tag}] {:>2} {}: {}", self.id, self.name, self.detail)
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1.0)
}

fn rel_strict(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / a.abs().max(b.abs())
    }
}

pub const KAPPA_TOL: f64 = 1e-10;
pub const KAPPA_TIME_S: f64 = 10.0;

/// Transmit powers cycled through by [`kappa_oracle`]; the low ones keep
/// Bob's `κ` away from its floor of `K`.
pub const KAPPA_POWERS_DBM: [f64; 3] = [-10.0, 0.0, 30.0];

/// Sparse `κ_B`, `κ_E`, `R_s^a` against the dense double loop on
/// desk-scale scenario channels with a random `v` and `p`.
pub fn kappa_oracle(seeds: u64) -> Check {
    let start = Instant::now();
    let base = SystemConfig::desk_scale();
    let hs = HypothesisSet::new(&base, &Constellation::psk(base.m_ary).expect("QPSK"));
    let mut worst = 0.0f64;
    let mut kb_range = (f64::INFINITY, 0.0f64);
    let mut error = None;
    for seed in 0..seeds {
        let cfg = SystemConfig {
            p_total: dbm_to_mw(KAPPA_POWERS_DBM[seed as usize % 3]),
            ..base.clone()
        };
        let mut run = || -> irs_ssm::Result<f64> {
            let ch = draw_channels(&cfg, seed)?;
            let v = IrsPhaseVector::random(cfg.n_irs, seed);
            let link = SecrecyLink::build(&cfg, &ch, &v, &AnSettings::new(&cfg, seed))?;
            let p = HybridPrecoder::new(random_in_ball(cfg.n_t(), cfg.n_rf as f64, seed, 1), cfg.n_rf, cfg.n_k)?;
            let fast = approx_secrecy_rate(&cfg, &hs, &link.whitened, &v, &p);
            let (kb, ke, r) = naive_rates(&cfg, &hs, &link.whitened, &v, &p);
            kb_range = (kb_range.0.min(kb), kb_range.1.max(kb));
            Ok(rel_strict(fast.kappa_b, kb).max(rel_strict(fast.kappa_e, ke)).max(rel(fast.r_approx, r)))
        };
        match run() {
            Ok(d) => worst = worst.max(d),
            Err(e) => error = Some(format!("seed {seed}: {e}")),
        }
    }
    let secs = start.elapsed().as_secs_f64();
    Check {
        id: 1,
        name: "oracle equivalence",
        passed: error.is_none() && worst <= KAPPA_TOL && secs < KAPPA_TIME_S,
        detail: match error {
            Some(e) => e,
            None => format!(
                "{seeds} seeds, kappa_B in [{:.3}, {:.3}], max rel dev {worst:.2e} (tol {KAPPA_TOL:e}), {secs:.2} s (limit {KAPPA_TIME_S} s)",
                kb_range.0, kb_range.1
            ),
        },
    }
}

pub const SURROGATE_TOL: f64 = 1e-8;

/// Assembled surrogate against direct exponent norms on random `v`.
pub fn surrogate_consistency(instances: u64, points: u64) -> Check {
    let mut worst = 0.0f64;
    for seed in 0..instances {
        let inst = random_instance(seed, 8);
        let sur = build_quadratic_forms(&inst.cfg, &inst.w, &inst.p, &inst.hs).surrogate();
        for t in 0..points {
            let v = IrsPhaseVector::random(8, 10_000 * seed + t);
            let direct = naive_surrogate(&inst.cfg, &inst.hs, &inst.w, &v, &inst.p);
            worst = worst.max(rel(sur.value(&v), direct));
        }
    }
    Check {
        id: 2,
        name: "quadratic-form consistency",
        passed: worst <= SURROGATE_TOL,
        detail: format!(
            "{instances} instances x {points} points, max rel dev {worst:.2e} (tol {SURROGATE_TOL:e})"
        ),
    }
}

pub const SDR_GAP: f64 = 0.02;
pub const ADMM_GAP: f64 = 0.02;
pub const BCA_GAP: f64 = 0.05;
pub const GRID_STEP_DEG: f64 = 1.0;
pub const GRID_TIME_S: f64 = 60.0;

/// N = 3 surrogate optima against an exhaustive phase grid.
pub fn grid_optimality(seeds: u64) -> Check {
    let mut worst = [0.0f64; 3];
    let mut slowest = 0.0f64;
    let mut error = None;
    for seed in 0..seeds {
        let inst = random_instance(seed, 3);
        let qf = build_quadratic_forms(&inst.cfg, &inst.w, &inst.p, &inst.hs);
        let sur = qf.surrogate();
        let (best, _) = grid_optimum_3(&sur.phi, &sur.delta, sur.c, GRID_STEP_DEG);
        let v0 = IrsPhaseVector::ones(3);
        let runs: [&dyn Fn() -> irs_ssm::Result<f64>; 3] = [
            &|| Ok(irs_sdr(&sur, &SdrSettings { seed, ..SdrSettings::default() })?.outcome.value),
            &|| Ok(irs_admm(&qf, &v0, &AdmmSettings::default())?.value),
            &|| Ok(irs_bca(&sur, &v0, &BcaSettings::default())?.value),
        ];
        for (k, run) in runs.iter().enumerate() {
            let t = Instant::now();
            match run() {
                Ok(value) => {
                    let gap = ((best - value) / best.abs().max(1e-12)).max(0.0);
                    worst[k] = worst[k].max(gap);
                }
                Err(e) => error = Some(format!("seed {seed}: {e}")),
            }
            slowest = slowest.max(t.elapsed().as_secs_f64());
        }
    }
    Check {
        id: 3,
        name: "grid-oracle optimality",
        passed: error.is_none()
            && worst[0] <= SDR_GAP
            && worst[1] <= ADMM_GAP
            && worst[2] <= BCA_GAP
            && slowest < GRID_TIME_S,
        detail: match error {
            Some(e) => e,
            None => format!(
                "{seeds} seeds, worst gap SDR {:.3}% (tol {}%), ADMM {:.3}% (tol {}%), BCA {:.3}% (tol {}%), slowest run {slowest:.3} s",
                100.0 * worst[0],
                100.0 * SDR_GAP,
                100.0 * worst[1],
                100.0 * ADMM_GAP,
                100.0 * worst[2],
                100.0 * BCA_GAP
            ),
        },
    }
}

pub const SDP_DIAG_TOL: f64 = 1e-6;
pub const SDP_EIG_TOL: f64 = 1e-6;
/// Relative slack on the upper-bound comparison, matching the solver's
/// certificate tolerance.
pub const SDP_BOUND_SLACK: f64 = 1e-6;

/// Unit diagonal, PSD and upper-bound checks of the lifted SDP.
pub fn sdp_validity(instances: u64, samples: u64) -> Check {
    let mut diag = 0.0f64;
    let mut eig = f64::INFINITY;
    let mut bound = f64::NEG_INFINITY;
    let mut error = None;
    for seed in 0..instances {
        let n = [3, 5, 8][seed as usize % 3];
        let inst = random_instance(seed, n);
        let sur = build_quadratic_forms(&inst.cfg, &inst.w, &inst.p, &inst.hs).surrogate();
        let sol = match sdp_unit_diag(&lift(&sur), &SdpSettings { seed, ..SdpSettings::default() }) {
            Ok(s) => s,
            Err(e) => {
                error = Some(format!("seed {seed}: {e}"));
                continue;
            }
        };
        for i in 0..sol.q.nrows() {
            diag = diag.max((sol.q[(i, i)].re - 1.0).abs().max(sol.q[(i, i)].im.abs()));
        }
        eig = eig.min(min_eigenvalue(&sol.q));
        let upper = sol.value + sur.c;
        for t in 0..samples {
            let f = sur.value(&IrsPhaseVector::random(n, 1_000_000 * seed + t));
            bound = bound.max((f - upper) / f.abs().max(1.0));
        }
    }
    Check {
        id: 4,
        name: "SDP validity",
        passed: error.is_none() && diag <= SDP_DIAG_TOL && eig >= -SDP_EIG_TOL && bound <= SDP_BOUND_SLACK,
        detail: match error {
            Some(e) => e,
            None => format!(
                "{instances} instances, max |Q_ii - 1| {diag:.2e}, min eig {eig:.2e}, max rel excess of sampled surrogate over bound {bound:.2e} ({samples} samples each)"
            ),
        },
    }
}

pub const GRADIENT_TOL: f64 = 1e-4;
pub const FD_STEP: f64 = 1e-5;

/// Closed-form `∇R_s^a` against central finite differences.
pub fn gradient_check(pairs: u64) -> Check {
    let mut worst = 0.0f64;
    for seed in 0..pairs {
        let inst = random_instance(seed, 6);
        let v = IrsPhaseVector::random(6, seed);
        let pq = build_precoder_quadratics(&inst.cfg, &inst.w, &v, &inst.hs);
        let p = random_in_ball(inst.cfg.n_t(), inst.cfg.n_rf as f64, seed, 2);
        let g = secrecy_gradient(&pq, &p);
        let fd = central_gradient(&|x: &CVec| pq.rate(x), &p, FD_STEP);
        worst = worst.max((&g - &fd).norm() / fd.norm().max(1e-12));
    }
    Check {
        id: 5,
        name: "gradient check",
        passed: worst <= GRADIENT_TOL,
        detail: format!("{pairs} (instance, point) pairs, max rel error {worst:.2e} (tol {GRADIENT_TOL:e})"),
    }
}

pub const TIGHTNESS_TOL: f64 = 1e-10;
pub const BOUND_TOL: f64 = 1e-10;

/// Tightness at the expansion point and bound directions elsewhere.
pub fn sca_bounds(instances: u64, points: u64) -> Check {
    let mut tight = 0.0f64;
    let mut violation = 0.0f64;
    for seed in 0..instances {
        let inst = random_instance(seed, 6);
        let v = IrsPhaseVector::random(6, seed);
        let pq = build_precoder_quadratics(&inst.cfg, &inst.w, &v, &inst.hs);
        let radius = inst.cfg.n_rf as f64;
        let p0 = random_in_ball(inst.cfg.n_t(), radius, seed, 3);
        let bounds = ScaBounds::new(&pq, &p0);
        let (lb0, le0) = pq.log_kappas(&p0);
        tight = tight.max((bounds.eve_lower(&p0) - le0).abs()).max((bounds.bob_upper(&p0) - lb0).abs());
        for t in 0..points {
            let p = random_in_ball(inst.cfg.n_t(), radius, seed, 1000 + t);
            let (lb, le) = pq.log_kappas(&p);
            violation = violation.max(bounds.eve_lower(&p) - le).max(lb - bounds.bob_upper(&p));
        }
    }
    Check {
        id: 6,
        name: "SCA bound behavior",
        passed: tight <= TIGHTNESS_TOL && violation <= BOUND_TOL,
        detail: format!(
            "{instances} instances x {points} points, max gap at p0 {tight:.2e} (tol {TIGHTNESS_TOL:e}), max bound violation {violation:.2e} (tol {BOUND_TOL:e})"
        ),
    }
}

pub const MONOTONE_TOL: f64 = -1e-9;

fn min_step(trace: &[f64]) -> f64 {
    trace
        .windows(2)
        .map(|w| (w[1] - w[0]) / w[0].abs().max(1.0))
        .fold(f64::INFINITY, f64::min)
}

/// BCA per-element updates, COR-GA accepted steps and guarded outer steps.
pub fn monotone_ascent(seeds: u64) -> Check {
    let mut worst = [f64::INFINITY; 3];
    let mut error = None;
    for seed in 0..seeds {
        let inst = random_instance(seed, 6);
        let v0 = IrsPhaseVector::random(6, seed);
        let sur = build_quadratic_forms(&inst.cfg, &inst.w, &inst.p, &inst.hs).surrogate();
        let pq = build_precoder_quadratics(&inst.cfg, &inst.w, &v0, &inst.hs);
        let an = AnSettings::new(&inst.cfg, seed);
        let problem = JointProblem {
            cfg: &inst.cfg,
            ch: &inst.ch,
            hs: &inst.hs,
            an: &an,
        };
        let comb = Combination::ALL[seed as usize % 3];
        let run = || -> irs_ssm::Result<[f64; 3]> {
            let bca = irs_bca(&sur, &v0, &BcaSettings::default())?;
            let ga = cor_ga(&pq, &inst.p, &GaSettings::default())?;
            let joint = joint_optimize(&problem, comb.schedule(), &v0, &inst.p, &JointSettings::default())?;
            let mut outer = vec![joint.initial_value];
            for t in &joint.trace {
                outer.push(t.irs_value);
                outer.push(t.value);
            }
            Ok([min_step(&bca.trace), min_step(&ga.trace), min_step(&outer)])
        };
        match run() {
            Ok(m) => {
                for k in 0..3 {
                    worst[k] = worst[k].min(m[k]);
                }
            }
            Err(e) => error = Some(format!("seed {seed}: {e}")),
        }
    }
    Check {
        id: 7,
        name: "monotone ascent",
        passed: error.is_none() && worst.iter().all(|&w| w >= MONOTONE_TOL),
        detail: match error {
            Some(e) => e,
            None => format!(
                "{seeds} seeds, min rel step BCA {:.2e}, GA {:.2e}, joint {:.2e} (tol {MONOTONE_TOL:e})",
                worst[0], worst[1], worst[2]
            ),
        },
    }
}

pub const FLOP_SIZES: [usize; 3] = [25, 50, 100];

/// Per-iteration counts ordered BCA < ADMM < SDR with one iteration each.
pub fn flop_ordering() -> Check {
    let mut lines = Vec::new();
    let mut ok = true;
    for n in FLOP_SIZES {
        let cfg = SystemConfig {
            n_irs: n,
            ..SystemConfig::reference()
        };
        let [bca, admm, sdr] = [FlopMethod::IrsBca, FlopMethod::IrsAdmm, FlopMethod::IrsSdr]
            .map(|m| flop_estimate(&cfg, m, 1));
        ok &= bca < admm && admm < sdr;
        lines.push(format!("N={n}: {bca:.3e} < {admm:.3e} < {sdr:.3e}"));
    }
    Check {
        id: 9,
        name: "FLOP model ordering",
        passed: ok,
        detail: lines.join("; "),
    }
}

/// Criteria 1-7 and 9 at full size, or reduced when `quick`.
pub fn run_all(quick: bool) -> Vec<Check> {
    let (a, b) = if quick { (10, 5) } else { (50, 20) };
    vec![
        kappa_oracle(a),
        surrogate_consistency(b, 50),
        grid_optimality(if quick { 3 } else { 10 }),
        sdp_validity(b, 1000),
        gradient_check(20),
        sca_bounds(b, 100),
        monotone_ascent(a),
        flop_ordering(),
    ]
}
