//! Acceptance suite.
//!
//! One test per criterion, each printing a single `[PASS]`/`[FAIL]` line
//! (criterion 8 also prints one line per sub-claim). Run with
//! `cargo test -p irs-ssm-harness --test acceptance -- --nocapture` to see
//! the lines.

use std::path::PathBuf;
use std::time::Instant;

use irs_ssm_harness::config::{ExperimentKind, GridPoint, Method, RunConfig};
use irs_ssm_harness::experiment::{run_experiment, Campaign};
use irs_ssm_harness::output::{to_csv_string, write_campaign};
use irs_ssm_harness::stats::{paired_t_greater, CDF_LEVELS};
use irs_ssm_harness::validate::{self, Check};

fn finish(check: Check) {
    println!("{check}");
    assert!(check.passed, "criterion {} failed", check.id);
}

// ============================================================================
// Criteria 1-7 and 9: oracle suites
// ============================================================================

#[test]
fn criterion_01_oracle_equivalence() {
    finish(validate::kappa_oracle(50));
}

#[test]
fn criterion_02_quadratic_form_consistency() {
    finish(validate::surrogate_consistency(20, 50));
}

#[test]
fn criterion_03_grid_oracle_optimality() {
    finish(validate::grid_optimality(10));
}

#[test]
fn criterion_04_sdp_validity() {
    finish(validate::sdp_validity(20, 1000));
}

#[test]
fn criterion_05_gradient_check() {
    finish(validate::gradient_check(20));
}

#[test]
fn criterion_06_sca_bounds() {
    finish(validate::sca_bounds(20, 100));
}

#[test]
fn criterion_07_monotone_ascent() {
    finish(validate::monotone_ascent(50));
}

#[test]
fn criterion_09_flop_ordering() {
    finish(validate::flop_ordering());
}

// ============================================================================
// Criterion 8: qualitative replication at desk scale
// ============================================================================

const TRIALS: usize = 100;
const SIGNIFICANCE: f64 = 0.05;
const MAX_OUTER: usize = 10;
const RUNTIME_TARGET_S: f64 = 30.0 * 60.0;

fn shipped_config(name: &str) -> RunConfig {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs").join(name);
    let mut cfg = RunConfig::load(&path).unwrap();
    assert_eq!(cfg.system.to_config(), irs_ssm::SystemConfig::desk_scale());
    cfg.experiment.n_channel_trials = TRIALS;
    cfg.experiment.timing = false;
    cfg
}

fn values(c: &Campaign, point: &GridPoint, method: Method) -> Vec<f64> {
    let mut rows: Vec<_> = c
        .records
        .iter()
        .filter(|r| r.method == method && &r.grid_point() == point)
        .collect();
    rows.sort_by_key(|r| r.trial);
    rows.iter().map(|r| r.sr_bits.unwrap_or(f64::NAN)).collect()
}

fn mean_sr(c: &Campaign, point: &GridPoint, method: Method) -> f64 {
    c.summary.group(point, method).and_then(|g| g.mean_sr).unwrap_or(f64::NAN)
}

struct Sub {
    label: &'static str,
    passed: bool,
    detail: String,
}

fn sub_a_b_c(c: &Campaign) -> Vec<Sub> {
    let grid = c.summary.config.grid();
    let irs = [Method::IrsSdr, Method::IrsAdmm, Method::IrsBca];

    let mut a_ok = true;
    let mut a_lines = Vec::new();
    for p in &grid {
        let base = mean_sr(c, p, Method::RandomPhase);
        let means: Vec<f64> = irs.iter().map(|&m| mean_sr(c, p, m)).collect();
        a_ok &= means.iter().all(|&m| m > base);
        a_lines.push(format!(
            "{} dBm: random {base:.4}, SDR {:.4}, ADMM {:.4}, BCA {:.4}",
            p.p_dbm, means[0], means[1], means[2]
        ));
    }

    let top = grid.iter().copied().fold(grid[0], |a, b| if b.p_dbm > a.p_dbm { b } else { a });
    let sdr = values(c, &top, Method::IrsSdr);
    let admm = values(c, &top, Method::IrsAdmm);
    let bca = values(c, &top, Method::IrsBca);
    let t1 = paired_t_greater(&sdr, &admm).unwrap();
    let t2 = paired_t_greater(&admm, &bca).unwrap();
    let b_ok = t1.p_value < SIGNIFICANCE && t2.p_value < SIGNIFICANCE;

    let sca = mean_sr(c, &top, Method::AsrSca);
    let ga = mean_sr(c, &top, Method::CorGa);

    vec![
        Sub {
            label: "8a IRS methods beat random phase at every power",
            passed: a_ok,
            detail: a_lines.join("; "),
        },
        Sub {
            label: "8b SDR >= ADMM >= BCA at the top power (paired, one-sided)",
            passed: b_ok,
            detail: format!(
                "{} dBm: SDR-ADMM mean {:.2e} p={:.3}; ADMM-BCA mean {:.2e} p={:.3} (need p < {SIGNIFICANCE})",
                top.p_dbm, t1.mean_diff, t1.p_value, t2.mean_diff, t2.p_value
            ),
        },
        Sub {
            label: "8c ASR-SCA >= COR-GA at the top power",
            passed: sca >= ga,
            detail: format!("{} dBm: SCA {sca:.4}, GA {ga:.4}", top.p_dbm),
        },
    ]
}

/// Every quantile non-increasing from one `N_e` to the next, and at least
/// one strictly lower.
fn sub_d(c: &Campaign) -> Sub {
    let grid = c.summary.config.grid();
    let mut ok = true;
    let mut lines = Vec::new();
    for &m in &c.summary.config.experiment.combinations {
        let q: Vec<Vec<f64>> = grid
            .iter()
            .map(|p| c.summary.group(p, m).unwrap().quantiles.iter().map(|q| q.sr_bits).collect())
            .collect();
        for k in 1..grid.len() {
            let (hi, lo) = (&q[k - 1], &q[k]);
            let weak = hi.iter().zip(lo).all(|(a, b)| a >= b);
            let strict = hi.iter().zip(lo).any(|(a, b)| a > b);
            ok &= weak && strict;
            lines.push(format!(
                "{} N_e {}->{}: {}",
                m.name(),
                grid[k - 1].n_e,
                grid[k].n_e,
                if weak && strict {
                    "left".to_string()
                } else {
                    format!("{hi:.3?} vs {lo:.3?}")
                }
            ));
        }
    }
    Sub {
        label: "8d CDF shifts left as N_e grows (5 quantiles)",
        passed: ok,
        detail: format!("levels {CDF_LEVELS:?}; {}", lines.join("; ")),
    }
}

fn sub_e(c: &Campaign) -> Sub {
    let bad = c
        .records
        .iter()
        .filter(|r| r.failed() || !r.converged || r.iterations > MAX_OUTER)
        .count();
    let worst = c.records.iter().map(|r| r.iterations).max().unwrap_or(0);
    Sub {
        label: "8e joint combinations converge within 10 outer iterations",
        passed: bad == 0,
        detail: format!("{} runs, {bad} outside the limit, max outer iterations {worst}", c.records.len()),
    }
}

fn sub_f(c: &Campaign) -> Sub {
    let cfg = &c.summary.config;
    let mut ok = true;
    let mut lines = Vec::new();
    for &p_dbm in &cfg.experiment.power_dbm {
        for &m in &[Method::JointI, Method::JointII, Method::JointIII] {
            let means: Vec<f64> = cfg
                .grid()
                .iter()
                .filter(|g| g.p_dbm == p_dbm)
                .map(|g| mean_sr(c, g, m))
                .collect();
            let mono = means.windows(2).all(|w| w[1] >= w[0]);
            ok &= mono;
            lines.push(format!("{} @ {p_dbm} dBm {means:.4?}", m.name()));
        }
    }
    Sub {
        label: "8f mean SR non-decreasing in N over {20, 30, 40, 50}",
        passed: ok,
        detail: lines.join("; "),
    }
}

#[test]
fn criterion_08_qualitative_replication() {
    let start = Instant::now();
    let run = |name: &str, kind: ExperimentKind| {
        let cfg = shipped_config(name);
        assert_eq!(cfg.experiment.kind, kind);
        let c = run_experiment(&cfg, None).unwrap();
        assert_eq!(c.summary.failures, 0, "{name}: failed trials");
        c
    };
    let power = run("sr_vs_power.toml", ExperimentKind::SrVsPower);
    let cdf = run("cdf.toml", ExperimentKind::Cdf);
    let conv = run("convergence.toml", ExperimentKind::Convergence);
    let elements = run("sr_vs_elements.toml", ExperimentKind::SrVsElements);
    let secs = start.elapsed().as_secs_f64();

    let mut subs = sub_a_b_c(&power);
    subs.push(sub_d(&cdf));
    subs.push(sub_e(&conv));
    subs.push(sub_f(&elements));
    for s in &subs {
        println!("    [{}] {}: {}", if s.passed { "PASS" } else { "FAIL" }, s.label, s.detail);
    }

    let grid = power.summary.config.grid();
    let increasing: Vec<String> = power
        .summary
        .config
        .experiment
        .combinations
        .iter()
        .map(|&m| {
            let means: Vec<f64> = grid.iter().map(|p| mean_sr(&power, p, m)).collect();
            let up = means.windows(2).all(|w| w[1] > w[0]);
            format!("{} {}", m.name(), if up { "increasing" } else { "not increasing" })
        })
        .collect();
    println!("    [INFO] mean SR against power: {}", increasing.join(", "));
    println!("    [INFO] campaign runtime {secs:.0} s (target {RUNTIME_TARGET_S:.0} s on a laptop)");

    let failed: Vec<&str> = subs.iter().filter(|s| !s.passed).map(|s| s.label).collect();
    finish(Check {
        id: 8,
        name: "qualitative replication",
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("all {} sub-claims hold", subs.len())
        } else {
            format!("failing: {}", failed.join(" | "))
        },
    });
}

// ============================================================================
// Criterion 10: thread-count independence
// ============================================================================

const THREAD_COUNTS: [usize; 3] = [1, 2, 4];

#[test]
fn criterion_10_reproducibility() {
    let mut cfg = shipped_config("sr_vs_power.toml");
    cfg.experiment.n_channel_trials = 4;
    cfg.experiment.power_dbm = vec![10.0, 30.0];
    cfg.experiment.combinations = vec![Method::RandomPhase, Method::IrsSdr, Method::CorGa, Method::JointII];
    let dir = tempfile::tempdir().unwrap();

    let mut files = Vec::new();
    for (k, &threads) in THREAD_COUNTS.iter().enumerate() {
        let c = run_experiment(&cfg, Some(threads)).unwrap();
        let paths = write_campaign(&dir.path().join(format!("t{k}")), &c).unwrap();
        assert_eq!(std::fs::read_to_string(&paths.csv).unwrap(), to_csv_string(&c.records).unwrap());
        files.push(std::fs::read(&paths.csv).unwrap());
    }
    let identical = files.windows(2).all(|w| w[0] == w[1]);
    finish(Check {
        id: 10,
        name: "reproducibility",
        passed: identical,
        detail: format!(
            "CSV of {} bytes {} across {THREAD_COUNTS:?} threads",
            files[0].len(),
            if identical { "byte-identical" } else { "differs" }
        ),
    });
}
