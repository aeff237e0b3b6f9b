//! TOML run configuration.
//!
//! A file has a `[system]` table mirroring [`SystemConfig`] and an
//! `[experiment]` table for the campaign. Powers and noise variances are
//! written in dBm and converted to milliwatts when the system is built.

use std::path::{Path, PathBuf};

use irs_ssm::model::{dbm_to_mw, Geometry, SystemConfig};
use serde::{Deserialize, Serialize};

use crate::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SystemSection {
    pub n_rf: usize,
    pub n_k: usize,
    pub n_b: usize,
    pub n_e: usize,
    pub n_irs: usize,
    pub m_ary: usize,
    /// dBm.
    pub p_total: f64,
    pub beta: f64,
    /// dBm.
    pub sigma_b2: f64,
    /// dBm.
    pub sigma_e2: f64,
    pub geometry: Geometry,
    pub alpha_ai: f64,
    pub alpha_ab: f64,
    pub alpha_ib: f64,
    pub pl0_db: f64,
}

impl Default for SystemSection {
    fn default() -> Self {
        let d = SystemConfig::desk_scale();
        Self {
            n_rf: d.n_rf,
            n_k: d.n_k,
            n_b: d.n_b,
            n_e: d.n_e,
            n_irs: d.n_irs,
            m_ary: d.m_ary,
            p_total: 30.0,
            beta: d.beta,
            sigma_b2: -80.0,
            sigma_e2: -80.0,
            geometry: d.geometry,
            alpha_ai: d.alpha_ai,
            alpha_ab: d.alpha_ab,
            alpha_ib: d.alpha_ib,
            pl0_db: d.pl0_db,
        }
    }
}

impl SystemSection {
    pub fn to_config(&self) -> SystemConfig {
        SystemConfig {
            n_rf: self.n_rf,
            n_k: self.n_k,
            n_b: self.n_b,
            n_e: self.n_e,
            n_irs: self.n_irs,
            m_ary: self.m_ary,
            p_total: dbm_to_mw(self.p_total),
            beta: self.beta,
            sigma_b2: dbm_to_mw(self.sigma_b2),
            sigma_e2: dbm_to_mw(self.sigma_e2),
            geometry: self.geometry,
            alpha_ai: self.alpha_ai,
            alpha_ab: self.alpha_ab,
            alpha_ib: self.alpha_ib,
            pl0_db: self.pl0_db,
        }
    }

    /// Switches the array sizes to the full-size reference point.
    pub fn full_scale(&mut self) {
        let r = SystemConfig::reference();
        self.n_rf = r.n_rf;
        self.n_k = r.n_k;
        self.n_irs = r.n_irs;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    SrVsPower,
    Cdf,
    Convergence,
    SrVsElements,
    PositionSweep,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::SrVsPower => "sr_vs_power",
            Self::Cdf => "cdf",
            Self::Convergence => "convergence",
            Self::SrVsElements => "sr_vs_elements",
            Self::PositionSweep => "position_sweep",
        }
    }
}

/// A method evaluated per trial.
///
/// All methods start from the random phase vector and the equal-power
/// precoder. `irs_*` runs the guarded alternation with only the IRS step.
/// `asr_sca` / `cor_ga` run it with only the precoder step, after an
/// `irs_bca` pass. `joint_*` runs a full combination.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    #[serde(rename = "random_phase")]
    RandomPhase,
    #[serde(rename = "irs_admm")]
    IrsAdmm,
    #[serde(rename = "irs_bca")]
    IrsBca,
    #[serde(rename = "irs_sdr")]
    IrsSdr,
    #[serde(rename = "asr_sca")]
    AsrSca,
    #[serde(rename = "cor_ga")]
    CorGa,
    #[serde(rename = "joint_i")]
    JointI,
    #[serde(rename = "joint_ii")]
    JointII,
    #[serde(rename = "joint_iii")]
    JointIII,
}

impl Method {
    pub const ALL: [Method; 9] = [
        Self::RandomPhase,
        Self::IrsAdmm,
        Self::IrsBca,
        Self::IrsSdr,
        Self::AsrSca,
        Self::CorGa,
        Self::JointI,
        Self::JointII,
        Self::JointIII,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::RandomPhase => "random_phase",
            Self::IrsAdmm => "irs_admm",
            Self::IrsBca => "irs_bca",
            Self::IrsSdr => "irs_sdr",
            Self::AsrSca => "asr_sca",
            Self::CorGa => "cor_ga",
            Self::JointI => "joint_i",
            Self::JointII => "joint_ii",
            Self::JointIII => "joint_iii",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    /// Transmit powers, dBm. Empty means the system value.
    pub power_dbm: Vec<f64>,
    pub n_irs_values: Vec<usize>,
    pub n_e_values: Vec<usize>,
    /// IRS y coordinates, meters.
    pub irs_y_values: Vec<f64>,
    pub n_channel_trials: usize,
    /// Trial `t` uses seed `base_seed + t`.
    pub base_seed: u64,
    pub combinations: Vec<Method>,
    /// Output directory.
    pub output: PathBuf,
    /// Record wall-clock times. Off gives byte-identical CSV files.
    pub timing: bool,
    pub epsilon: f64,
    pub max_outer: usize,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        Self {
            kind: ExperimentKind::SrVsPower,
            power_dbm: Vec::new(),
            n_irs_values: Vec::new(),
            n_e_values: Vec::new(),
            irs_y_values: Vec::new(),
            n_channel_trials: 100,
            base_seed: 1,
            combinations: vec![Method::RandomPhase],
            output: PathBuf::from("results"),
            timing: true,
            epsilon: 0.01,
            max_outer: 30,
        }
    }
}

/// One point of the parameter grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub p_dbm: f64,
    pub n_irs: usize,
    pub n_e: usize,
    pub irs_y: f64,
}

impl GridPoint {
    pub fn apply(&self, system: &SystemSection) -> SystemConfig {
        let mut s = system.clone();
        s.p_total = self.p_dbm;
        s.n_irs = self.n_irs;
        s.n_e = self.n_e;
        s.geometry.irs[1] = self.irs_y;
        s.to_config()
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub system: SystemSection,
    pub experiment: ExperimentSpec,
}

fn or_default<T: Copy>(values: &[T], fallback: T) -> Vec<T> {
    if values.is_empty() {
        vec![fallback]
    } else {
        values.to_vec()
    }
}

impl RunConfig {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: Self = toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| HarnessError::Config(e.to_string()))
    }

    /// Grid in row order: power, then `N`, then `N_e`, then IRS position.
    pub fn grid(&self) -> Vec<GridPoint> {
        let e = &self.experiment;
        let s = &self.system;
        let mut out = Vec::new();
        for &p_dbm in &or_default(&e.power_dbm, s.p_total) {
            for &n_irs in &or_default(&e.n_irs_values, s.n_irs) {
                for &n_e in &or_default(&e.n_e_values, s.n_e) {
                    for &irs_y in &or_default(&e.irs_y_values, s.geometry.irs[1]) {
                        out.push(GridPoint { p_dbm, n_irs, n_e, irs_y });
                    }
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<()> {
        let e = &self.experiment;
        let bad = |m: String| Err(HarnessError::Config(m));
        if e.n_channel_trials == 0 {
            return bad("n_channel_trials must be at least 1".into());
        }
        if e.combinations.is_empty() {
            return bad("combinations must not be empty".into());
        }
        if !(e.epsilon > 0.0) || e.max_outer == 0 {
            return bad(format!("need epsilon > 0 and max_outer >= 1, got {} and {}", e.epsilon, e.max_outer));
        }
        if e.power_dbm.iter().chain(&e.irs_y_values).any(|x| !x.is_finite()) {
            return bad("grid values must be finite".into());
        }
        for point in self.grid() {
            point.apply(&self.system).validate()?;
        }
        Ok(())
    }
}
