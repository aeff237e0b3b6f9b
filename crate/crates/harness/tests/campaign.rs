//! Small end-to-end campaigns.

use irs_ssm_harness::config::{ExperimentKind, Method, RunConfig};
use irs_ssm_harness::run_experiment;

fn small() -> RunConfig {
    let mut cfg = RunConfig::default();
    cfg.experiment.n_channel_trials = 3;
    cfg.experiment.timing = false;
    cfg.experiment.combinations = Method::ALL.to_vec();
    cfg
}

#[test]
fn records_are_in_grid_trial_method_order() {
    let mut cfg = small();
    cfg.experiment.power_dbm = vec![10.0, 20.0];
    let c = run_experiment(&cfg, Some(2)).unwrap();
    assert_eq!(c.records.len(), 2 * 3 * Method::ALL.len());
    assert_eq!(c.traces.len(), c.records.len());
    for (i, r) in c.records.iter().enumerate() {
        let m = i % Method::ALL.len();
        let trial = (i / Method::ALL.len()) % 3;
        assert_eq!(r.method, Method::ALL[m]);
        assert_eq!(r.trial, trial);
        assert_eq!(r.seed, 1 + trial as u64);
        assert_eq!(r.p_dbm, if i < c.records.len() / 2 { 10.0 } else { 20.0 });
        assert!(!r.failed(), "{}", r.error);
        assert_eq!(r.wall_ms, 0.0);
    }
}

#[test]
fn methods_share_channels_within_a_trial() {
    let c = run_experiment(&small(), Some(1)).unwrap();
    for chunk in c.records.chunks(Method::ALL.len()) {
        assert!(chunk.iter().all(|r| r.channel_digest == chunk[0].channel_digest));
    }
    assert_ne!(c.records[0].channel_digest, c.records[Method::ALL.len()].channel_digest);
}

#[test]
fn optimized_methods_never_fall_below_their_start() {
    let c = run_experiment(&small(), Some(1)).unwrap();
    for chunk in c.records.chunks(Method::ALL.len()) {
        let random = chunk[0].sr_bits.unwrap();
        for r in &chunk[1..] {
            assert!(r.sr_bits.unwrap() >= random - 1e-9, "{:?} below random phase", r.method);
        }
    }
    for t in &c.traces {
        assert!(t.windows(2).all(|w| w[1] >= w[0] - 1e-9));
    }
}

#[test]
fn same_seed_same_records() {
    let mut cfg = small();
    cfg.experiment.kind = ExperimentKind::Cdf;
    cfg.experiment.n_e_values = vec![2, 4];
    let a = run_experiment(&cfg, Some(1)).unwrap();
    let b = run_experiment(&cfg, Some(3)).unwrap();
    assert_eq!(a.records, b.records);
    cfg.experiment.base_seed = 50;
    let c = run_experiment(&cfg, Some(1)).unwrap();
    assert_ne!(a.records[0].channel_digest, c.records[0].channel_digest);
}

#[test]
fn timing_flag_controls_wall_clock() {
    let mut cfg = small();
    cfg.experiment.timing = true;
    cfg.experiment.combinations = vec![Method::JointII];
    let c = run_experiment(&cfg, Some(1)).unwrap();
    assert!(c.records.iter().all(|r| r.wall_ms > 0.0 && r.flops > 0.0));
}
