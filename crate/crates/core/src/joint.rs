//! Alternating optimization of the reflection vector and the precoder.
//!
//! Each outer iteration rebuilds the AN projection and whitening for the
//! current `v`, runs one IRS step (reverted if `R_s^a` drops) and one
//! precoder step, and stops once `R_s^a` changes by at most `ε`.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::irs_opt::{
    build_quadratic_forms, irs_admm, irs_bca, irs_sdr, AdmmSettings, BcaSettings, IrsPhaseVector,
    SdrSettings,
};
use crate::model::{AnSettings, ChannelSet, HybridPrecoder, SecrecyLink, SystemConfig};
use crate::precoder_opt::{asr_sca, build_precoder_quadratics, cor_ga, GaSettings, ScaSettings};
use crate::rates::{approx_secrecy_rate, HypothesisSet};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum IrsMethod {
    Admm,
    Bca,
    Sdr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PrecoderMethod {
    Sca,
    Ga,
}

/// The three named pairings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Combination {
    /// BCA + SCA.
    I,
    /// SDR + GA.
    II,
    /// ADMM + GA.
    III,
}

impl Combination {
    pub const ALL: [Combination; 3] = [Self::I, Self::II, Self::III];

    pub fn methods(self) -> (IrsMethod, PrecoderMethod) {
        match self {
            Self::I => (IrsMethod::Bca, PrecoderMethod::Sca),
            Self::II => (IrsMethod::Sdr, PrecoderMethod::Ga),
            Self::III => (IrsMethod::Admm, PrecoderMethod::Ga),
        }
    }

    pub fn schedule(self) -> Schedule {
        let (irs, precoder) = self.methods();
        Schedule {
            irs: Some(irs),
            precoder: Some(precoder),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::I => "I",
            Self::II => "II",
            Self::III => "III",
        }
    }
}

/// Which sub-steps run in each outer iteration. A missing step leaves its
/// variable at the start point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Schedule {
    pub irs: Option<IrsMethod>,
    pub precoder: Option<PrecoderMethod>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointSettings {
    pub epsilon: f64,
    pub max_outer: usize,
    pub admm: AdmmSettings,
    pub bca: BcaSettings,
    /// The SDR seed is offset by the outer iteration index.
    pub sdr: SdrSettings,
    pub sca: ScaSettings,
    pub ga: GaSettings,
}

impl Default for JointSettings {
    fn default() -> Self {
        Self {
            epsilon: 0.01,
            max_outer: 30,
            admm: AdmmSettings::default(),
            bca: BcaSettings::default(),
            sdr: SdrSettings::default(),
            sca: ScaSettings::default(),
            ga: GaSettings::default(),
        }
    }
}

/// One outer iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceEntry {
    /// 1-based.
    pub iteration: usize,
    /// `R_s^a` after the (possibly reverted) IRS step.
    pub irs_value: f64,
    /// `R_s^a` after the precoder step.
    pub value: f64,
    pub irs_accepted: bool,
    /// The precoder step lowered `R_s^a`; never expected.
    pub precoder_decreased: bool,
    pub irs_iterations: usize,
    pub precoder_iterations: usize,
    /// Seconds since the start of the run.
    pub elapsed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct JointResult {
    pub v_star: IrsPhaseVector,
    pub p_star: HybridPrecoder,
    /// `R_s^a` at the start point.
    pub initial_value: f64,
    pub value: f64,
    pub trace: Vec<TraceEntry>,
    pub converged: bool,
    pub schedule: Schedule,
    /// Any AN projection along the way fell back to the identity.
    pub degenerate_an: bool,
}

impl JointResult {
    pub fn outer_iterations(&self) -> usize {
        self.trace.len()
    }

    pub fn irs_iterations(&self) -> usize {
        self.trace.iter().map(|t| t.irs_iterations).sum()
    }

    pub fn precoder_iterations(&self) -> usize {
        self.trace.iter().map(|t| t.precoder_iterations).sum()
    }
}

/// Fixed inputs of one run.
#[derive(Debug, Clone, Copy)]
pub struct JointProblem<'a> {
    pub cfg: &'a SystemConfig,
    pub ch: &'a ChannelSet,
    pub hs: &'a HypothesisSet,
    pub an: &'a AnSettings,
}

impl JointProblem<'_> {
    fn rate(&self, link: &SecrecyLink, v: &IrsPhaseVector, p: &HybridPrecoder) -> f64 {
        approx_secrecy_rate(self.cfg, self.hs, &link.whitened, v, p).r_approx
    }

    fn link(&self, v: &IrsPhaseVector) -> Result<SecrecyLink> {
        SecrecyLink::build(self.cfg, self.ch, v, self.an)
    }
}

/// One IRS step on the current link. Returns the candidate and the solver's
/// iteration count.
pub fn irs_step(
    problem: &JointProblem<'_>,
    link: &SecrecyLink,
    method: IrsMethod,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
    settings: &JointSettings,
    seed_offset: u64,
) -> Result<(IrsPhaseVector, usize)> {
    let qf = build_quadratic_forms(problem.cfg, &link.whitened, p, problem.hs);
    let out = match method {
        IrsMethod::Admm => irs_admm(&qf, v, &settings.admm)?,
        IrsMethod::Bca => irs_bca(&qf.surrogate(), v, &settings.bca)?,
        IrsMethod::Sdr => {
            let s = SdrSettings {
                seed: settings.sdr.seed.wrapping_add(seed_offset),
                ..settings.sdr
            };
            irs_sdr(&qf.surrogate(), &s)?.outcome
        }
    };
    Ok((out.solution, out.iterations))
}

/// One precoder step for a fixed link and `v`.
pub fn precoder_step(
    problem: &JointProblem<'_>,
    link: &SecrecyLink,
    method: PrecoderMethod,
    v: &IrsPhaseVector,
    p: &HybridPrecoder,
    settings: &JointSettings,
) -> Result<(HybridPrecoder, usize)> {
    let pq = build_precoder_quadratics(problem.cfg, &link.whitened, v, problem.hs);
    let out = match method {
        PrecoderMethod::Sca => asr_sca(&pq, p, &settings.sca)?,
        PrecoderMethod::Ga => cor_ga(&pq, p, &settings.ga)?,
    };
    Ok((out.solution, out.iterations))
}

/// Runs the alternation with an external clock (seconds, monotone).
pub fn joint_optimize_with_clock(
    problem: &JointProblem<'_>,
    schedule: Schedule,
    v0: &IrsPhaseVector,
    p0: &HybridPrecoder,
    settings: &JointSettings,
    clock: &dyn Fn() -> f64,
) -> Result<JointResult> {
    if !(settings.epsilon > 0.0) {
        return Err(Error::InvalidArgument("epsilon must be positive"));
    }
    let start = clock();
    let wrap = |iteration: usize| move |e: Error| Error::Joint { iteration, source: Box::new(e) };

    let mut v = v0.clone();
    let mut p = p0.clone();
    let mut link = problem.link(&v).map_err(wrap(0))?;
    let mut degenerate_an = link.an.degenerate;
    let initial_value = problem.rate(&link, &v, &p);
    let mut value = initial_value;
    let mut trace = Vec::with_capacity(settings.max_outer);
    let mut converged = false;

    for iteration in 1..=settings.max_outer {
        let before = value;

        let mut irs_accepted = false;
        let mut irs_iterations = 0;
        if let Some(method) = schedule.irs {
            let (cand, its) =
                irs_step(problem, &link, method, &v, &p, settings, iteration as u64).map_err(wrap(iteration))?;
            irs_iterations = its;
            let cand_link = problem.link(&cand).map_err(wrap(iteration))?;
            let cand_value = problem.rate(&cand_link, &cand, &p);
            irs_accepted = cand_value >= value;
            if irs_accepted {
                v = cand;
                link = cand_link;
                value = cand_value;
                degenerate_an |= link.an.degenerate;
            }
        }
        let irs_value = value;

        let mut precoder_decreased = false;
        let mut precoder_iterations = 0;
        if let Some(method) = schedule.precoder {
            let (p_next, its) =
                precoder_step(problem, &link, method, &v, &p, settings).map_err(wrap(iteration))?;
            precoder_iterations = its;
            let p_value = problem.rate(&link, &v, &p_next);
            precoder_decreased = p_value < value;
            p = p_next;
            value = p_value;
        }

        trace.push(TraceEntry {
            iteration,
            irs_value,
            value,
            irs_accepted,
            precoder_decreased,
            irs_iterations,
            precoder_iterations,
            elapsed: clock() - start,
        });
        if (value - before).abs() <= settings.epsilon {
            converged = true;
            break;
        }
    }

    Ok(JointResult {
        v_star: v,
        p_star: p,
        initial_value,
        value,
        trace,
        converged,
        schedule,
        degenerate_an,
    })
}

/// [`joint_optimize_with_clock`] timed with `std::time::Instant`.
#[cfg(feature = "std")]
pub fn joint_optimize(
    problem: &JointProblem<'_>,
    schedule: Schedule,
    v0: &IrsPhaseVector,
    p0: &HybridPrecoder,
    settings: &JointSettings,
) -> Result<JointResult> {
    let origin = std::time::Instant::now();
    joint_optimize_with_clock(problem, schedule, v0, p0, settings, &|| origin.elapsed().as_secs_f64())
}
