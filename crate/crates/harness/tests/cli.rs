//! Smoke tests of the `irs-ssm` binary.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_irs-ssm"))
}

#[test]
fn run_writes_csv_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(
        &cfg,
        "[experiment]\nkind = \"sr_vs_power\"\npower_dbm = [10.0]\ncombinations = [\"random_phase\", \"irs_bca\"]\n",
    )
    .unwrap();
    let out = dir.path().join("out");
    let status = bin()
        .args(["run", cfg.to_str().unwrap(), "--trials", "2", "--threads", "1", "--out"])
        .arg(&out)
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    let csv = std::fs::read_to_string(out.join("sr_vs_power.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 2 * 2);
    assert!(out.join("sr_vs_power_summary.json").exists());
    assert!(String::from_utf8_lossy(&status.stdout).contains("irs_bca"));
}

#[test]
fn bad_config_exits_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[experiment]\nn_channel_trials = 0\n").unwrap();
    let status = bin().arg("run").arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn flops_prints_every_method() {
    let out = bin().args(["flops", "--n", "25,50"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 1 + 2 * irs_ssm::flops::FlopMethod::ALL.len());
}

#[test]
fn validate_quick_reports_every_criterion() {
    let out = bin().args(["validate", "--quick"]).output().unwrap();
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8, "{text}");
    assert!(lines.iter().all(|l| l.starts_with("[PASS]") || l.starts_with("[FAIL]")));
    assert_eq!(out.status.success(), lines.iter().all(|l| l.starts_with("[PASS]")));
}
