use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use irs_ssm::flops::{flop_estimate, irs_setup_flops, FlopMethod};
use irs_ssm::SystemConfig;
use irs_ssm_harness::output::write_campaign;
use irs_ssm_harness::{run_experiment, validate, RunConfig};

/// Campaigns whose failed-trial share exceeds this exit nonzero.
const MAX_FAILURE_FRACTION: f64 = 0.01;

#[derive(Parser)]
#[command(name = "irs-ssm", version, about = "Secrecy-rate experiments for IRS-aided hybrid secure spatial modulation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the campaign described by a TOML file.
    Run {
        config: PathBuf,
        /// Overrides `experiment.base_seed`.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides `experiment.n_channel_trials`.
        #[arg(long)]
        trials: Option<usize>,
        /// Worker threads; defaults to all cores.
        #[arg(long)]
        threads: Option<usize>,
        /// Overrides `experiment.output`.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use 8 RF chains of 4 antennas and 50 elements.
        #[arg(long)]
        full_scale: bool,
    },
    /// Print operation-count estimates per method.
    Flops {
        /// Element counts to evaluate.
        #[arg(long, value_delimiter = ',', default_values_t = vec![25, 50, 100])]
        n: Vec<usize>,
        /// Iterations per method.
        #[arg(long, default_value_t = 1)]
        iterations: usize,
        #[arg(long)]
        full_scale: bool,
    },
    /// Run the oracle suites.
    Validate {
        /// Reduced instance counts.
        #[arg(long)]
        quick: bool,
    },
}

fn run(
    config: PathBuf,
    seed: Option<u64>,
    trials: Option<usize>,
    threads: Option<usize>,
    out: Option<PathBuf>,
    full_scale: bool,
) -> irs_ssm_harness::Result<ExitCode> {
    let mut cfg = RunConfig::load(&config)?;
    if let Some(s) = seed {
        cfg.experiment.base_seed = s;
    }
    if let Some(t) = trials {
        cfg.experiment.n_channel_trials = t;
    }
    if let Some(o) = out {
        cfg.experiment.output = o;
    }
    if full_scale {
        cfg.system.full_scale();
    }
    let campaign = run_experiment(&cfg, threads)?;
    let paths = write_campaign(&cfg.experiment.output, &campaign)?;
    for g in &campaign.summary.groups {
        println!(
            "p={:>5.1} dBm N={:>3} N_e={} y={:>5.1} {:<13} mean SR {} ({} of {} failed)",
            g.point.p_dbm,
            g.point.n_irs,
            g.point.n_e,
            g.point.irs_y,
            g.method.name(),
            g.mean_sr.map_or("n/a".into(), |m| format!("{m:.4}")),
            g.failures,
            g.trials
        );
    }
    println!("wrote {} and {}", paths.csv.display(), paths.summary.display());
    for r in campaign.records.iter().filter(|r| r.failed()) {
        eprintln!("trial {} ({}): {}", r.trial, r.method.name(), r.error);
    }
    let frac = campaign.failure_fraction();
    if frac > MAX_FAILURE_FRACTION {
        eprintln!("{:.1}% of trials failed", 100.0 * frac);
        return Ok(ExitCode::FAILURE);
    }
    Ok(ExitCode::SUCCESS)
}

fn flops(ns: &[usize], iterations: usize, full_scale: bool) {
    let base = if full_scale { SystemConfig::reference() } else { SystemConfig::desk_scale() };
    println!("{:>5} {:<9} {:>14} {:>14}  order", "N", "method", "setup", "total");
    for &n in ns {
        let cfg = SystemConfig { n_irs: n, ..base.clone() };
        for m in FlopMethod::ALL {
            let setup = match m {
                FlopMethod::Sca | FlopMethod::Ga => 0.0,
                _ => irs_setup_flops(&cfg),
            };
            println!(
                "{n:>5} {:<9} {setup:>14.4e} {:>14.4e}  {}",
                m.name(),
                flop_estimate(&cfg, m, iterations),
                m.big_o()
            );
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            seed,
            trials,
            threads,
            out,
            full_scale,
        } => match run(config, seed, trials, threads, out, full_scale) {
            Ok(code) => code,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        },
        Command::Flops { n, iterations, full_scale } => {
            flops(&n, iterations, full_scale);
            ExitCode::SUCCESS
        }
        Command::Validate { quick } => {
            let checks = validate::run_all(quick);
            for c in &checks {
                println!("{c}");
            }
            if checks.iter().all(|c| c.passed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
