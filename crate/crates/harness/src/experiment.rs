//! Monte Carlo campaigns.
//!
//! Every (grid point, trial, method) job is independent: it draws its own
//! channels from `base_seed + trial` and runs one method from the random
//! phase vector and the equal-power precoder. The precoder-only methods
//! first move the phase vector with the guarded BCA step. Jobs run on a
//! rayon pool and are collected in job order, so records do not depend on
//! the thread count.

use std::time::Instant;

use irs_ssm::flops::{flop_estimate, FlopMethod};
use irs_ssm::joint::{
    joint_optimize, Combination, IrsMethod, JointProblem, JointResult, JointSettings,
    PrecoderMethod, Schedule,
};
use irs_ssm::model::{AnSettings, ChannelSet, Constellation, HybridPrecoder, SystemConfig};
use irs_ssm::rates::{secrecy_rate, HypothesisSet};
use irs_ssm::scenario::draw_channels;
use irs_ssm::IrsPhaseVector;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::{GridPoint, Method, RunConfig};
use crate::output::{summarize, CampaignSummary};
use crate::Result;

/// One CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub trial: usize,
    pub seed: u64,
    pub p_dbm: f64,
    pub n_irs: usize,
    pub n_e: usize,
    pub irs_y: f64,
    pub method: Method,
    /// Empty when the trial failed.
    pub sr_bits: Option<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub wall_ms: f64,
    pub flops: f64,
    /// SHA-256 of the drawn channels.
    pub channel_digest: String,
    pub error: String,
}

impl ExperimentRecord {
    pub fn grid_point(&self) -> GridPoint {
        GridPoint {
            p_dbm: self.p_dbm,
            n_irs: self.n_irs,
            n_e: self.n_e,
            irs_y: self.irs_y,
        }
    }

    pub fn failed(&self) -> bool {
        self.sr_bits.is_none()
    }
}

/// Records, the `R_s^a` trace of each record (start value first) and the
/// summary.
#[derive(Debug, Clone)]
pub struct Campaign {
    pub records: Vec<ExperimentRecord>,
    pub traces: Vec<Vec<f64>>,
    pub summary: CampaignSummary,
}

impl Campaign {
    pub fn failure_fraction(&self) -> f64 {
        if self.records.is_empty() {
            return 0.0;
        }
        self.records.iter().filter(|r| r.failed()).count() as f64 / self.records.len() as f64
    }
}

/// Hex SHA-256 over the little-endian bytes of `H, Q, F, G, M`.
pub fn channel_digest(ch: &ChannelSet) -> String {
    let mut hasher = Sha256::new();
    for m in [&ch.h, &ch.q, &ch.f, &ch.g, &ch.m] {
        hasher.update((m.nrows() as u64).to_le_bytes());
        hasher.update((m.ncols() as u64).to_le_bytes());
        for z in m.iter() {
            hasher.update(z.re.to_le_bytes());
            hasher.update(z.im.to_le_bytes());
        }
    }
    hasher.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn schedule(method: Method) -> Option<Schedule> {
    let irs = |m| Schedule { irs: Some(m), precoder: None };
    let pre = |m| Schedule { irs: None, precoder: Some(m) };
    Some(match method {
        Method::RandomPhase => return None,
        Method::IrsAdmm => irs(IrsMethod::Admm),
        Method::IrsBca => irs(IrsMethod::Bca),
        Method::IrsSdr => irs(IrsMethod::Sdr),
        Method::AsrSca => pre(PrecoderMethod::Sca),
        Method::CorGa => pre(PrecoderMethod::Ga),
        Method::JointI => Combination::I.schedule(),
        Method::JointII => Combination::II.schedule(),
        Method::JointIII => Combination::III.schedule(),
    })
}

fn irs_flop_method(m: IrsMethod) -> FlopMethod {
    match m {
        IrsMethod::Admm => FlopMethod::IrsAdmm,
        IrsMethod::Bca => FlopMethod::IrsBca,
        IrsMethod::Sdr => FlopMethod::IrsSdr,
    }
}

fn precoder_flop_method(m: PrecoderMethod) -> FlopMethod {
    match m {
        PrecoderMethod::Sca => FlopMethod::Sca,
        PrecoderMethod::Ga => FlopMethod::Ga,
    }
}

/// FLOP estimate of a run from its measured per-call iteration counts.
pub fn run_flops(cfg: &SystemConfig, result: &JointResult) -> f64 {
    let s = result.schedule;
    result
        .trace
        .iter()
        .map(|t| {
            let irs = s.irs.map_or(0.0, |m| flop_estimate(cfg, irs_flop_method(m), t.irs_iterations));
            let pre = s
                .precoder
                .map_or(0.0, |m| flop_estimate(cfg, precoder_flop_method(m), t.precoder_iterations));
            irs + pre
        })
        .sum()
}

/// Reported iteration count: solver iterations for single-step schedules,
/// outer iterations for full combinations.
fn reported_iterations(result: &JointResult) -> usize {
    match (result.schedule.irs, result.schedule.precoder) {
        (Some(_), None) => result.irs_iterations(),
        (None, Some(_)) => result.precoder_iterations(),
        _ => result.outer_iterations(),
    }
}

struct MethodOutput {
    value: f64,
    iterations: usize,
    converged: bool,
    flops: f64,
    trace: Vec<f64>,
}

fn run_method(
    cfg: &SystemConfig,
    ch: &ChannelSet,
    hs: &HypothesisSet,
    method: Method,
    seed: u64,
    settings: &JointSettings,
) -> irs_ssm::Result<MethodOutput> {
    let an = AnSettings::new(cfg, seed);
    let v0 = IrsPhaseVector::random(cfg.n_irs, seed);
    let p0 = HybridPrecoder::equal_power(cfg);
    let Some(schedule) = schedule(method) else {
        let value = secrecy_rate(cfg, ch, hs, &v0, &p0, &an)?.r_approx;
        return Ok(MethodOutput {
            value,
            iterations: 0,
            converged: true,
            flops: 0.0,
            trace: vec![value],
        });
    };
    let problem = JointProblem { cfg, ch, hs, an: &an };
    let mut s = settings.clone();
    s.sdr.seed = seed;
    // Precoder-only methods run on the reflection vector found by BCA.
    let mut flops = 0.0;
    let v_start = if schedule.irs.is_none() {
        let bca = Schedule {
            irs: Some(IrsMethod::Bca),
            precoder: None,
        };
        let pre = joint_optimize(&problem, bca, &v0, &p0, &s)?;
        flops += run_flops(cfg, &pre);
        pre.v_star
    } else {
        v0
    };
    let result = joint_optimize(&problem, schedule, &v_start, &p0, &s)?;
    let mut trace = Vec::with_capacity(result.trace.len() + 1);
    trace.push(result.initial_value);
    trace.extend(result.trace.iter().map(|t| t.value));
    Ok(MethodOutput {
        value: result.value,
        iterations: reported_iterations(&result),
        converged: result.converged,
        flops: flops + run_flops(cfg, &result),
        trace,
    })
}

struct Job {
    point: usize,
    trial: usize,
    method: Method,
}

fn run_job(
    cfg: &SystemConfig,
    hs: &HypothesisSet,
    point: &GridPoint,
    trial: usize,
    seed: u64,
    method: Method,
    settings: &JointSettings,
    timing: bool,
) -> (ExperimentRecord, Vec<f64>) {
    let mut rec = ExperimentRecord {
        trial,
        seed,
        p_dbm: point.p_dbm,
        n_irs: point.n_irs,
        n_e: point.n_e,
        irs_y: point.irs_y,
        method,
        sr_bits: None,
        iterations: 0,
        converged: false,
        wall_ms: 0.0,
        flops: 0.0,
        channel_digest: String::new(),
        error: String::new(),
    };
    let ch = match draw_channels(cfg, seed) {
        Ok(ch) => ch,
        Err(e) => {
            rec.error = format!("channel draw: {e}");
            return (rec, Vec::new());
        }
    };
    rec.channel_digest = channel_digest(&ch);
    let start = Instant::now();
    let out = run_method(cfg, &ch, hs, method, seed, settings);
    if timing {
        rec.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    }
    match out {
        Ok(o) => {
            rec.sr_bits = Some(o.value);
            rec.iterations = o.iterations;
            rec.converged = o.converged;
            rec.flops = o.flops;
            (rec, o.trace)
        }
        Err(e) => {
            rec.error = e.to_string();
            (rec, Vec::new())
        }
    }
}

/// Runs every (grid point, trial, method) job. `threads = None` uses the
/// global rayon pool.
pub fn run_experiment(run: &RunConfig, threads: Option<usize>) -> Result<Campaign> {
    run.validate()?;
    let spec = &run.experiment;
    let grid = run.grid();
    let cfgs: Vec<SystemConfig> = grid.iter().map(|g| g.apply(&run.system)).collect();
    let hsets = cfgs
        .iter()
        .map(|c| Ok(HypothesisSet::new(c, &Constellation::psk(c.m_ary)?)))
        .collect::<irs_ssm::Result<Vec<_>>>()?;
    let settings = JointSettings {
        epsilon: spec.epsilon,
        max_outer: spec.max_outer,
        ..JointSettings::default()
    };

    let mut jobs = Vec::new();
    for point in 0..grid.len() {
        for trial in 0..spec.n_channel_trials {
            for &method in &spec.combinations {
                jobs.push(Job { point, trial, method });
            }
        }
    }

    let work = || -> Vec<(ExperimentRecord, Vec<f64>)> {
        jobs.par_iter()
            .map(|j| {
                let seed = spec.base_seed.wrapping_add(j.trial as u64);
                run_job(
                    &cfgs[j.point],
                    &hsets[j.point],
                    &grid[j.point],
                    j.trial,
                    seed,
                    j.method,
                    &settings,
                    spec.timing,
                )
            })
            .collect()
    };
    let results = match threads {
        Some(n) => rayon::ThreadPoolBuilder::new().num_threads(n).build()?.install(work),
        None => work(),
    };
    let (records, traces): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    let summary = summarize(run, &records, &traces);
    Ok(Campaign {
        records,
        traces,
        summary,
    })
}
