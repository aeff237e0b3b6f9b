//! Closed-form floating-point operation counts of the optimizers.
//!
//! Counts are returned as `f64` (the SDR term is not an integer) and clamped
//! at zero so degenerate sizes never report negative work.

use crate::model::SystemConfig;
use crate::real::{ln, powf};

/// Accuracy `ς` in the interior-point estimate `N^4.5 ln(1/ς)`.
pub const SDP_ACCURACY: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum FlopMethod {
    IrsAdmm,
    IrsBca,
    IrsSdr,
    Sca,
    Ga,
}

impl FlopMethod {
    pub const ALL: [FlopMethod; 5] = [Self::IrsAdmm, Self::IrsBca, Self::IrsSdr, Self::Sca, Self::Ga];

    /// Leading-order growth in the dominant size parameter.
    pub fn big_o(self) -> &'static str {
        match self {
            Self::IrsBca => "O(N^2)",
            Self::IrsAdmm => "O(N^3)",
            Self::IrsSdr => "O(N^4.5 log(1/eps))",
            Self::Sca => "O((N_RF M)^2 (N_RF N_k)^2 + (N_RF N_k)^3)",
            Self::Ga => "O((N_RF M)^2 (N_RF N_k)^2)",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::IrsAdmm => "irs_admm",
            Self::IrsBca => "irs_bca",
            Self::IrsSdr => "irs_sdr",
            Self::Sca => "sca",
            Self::Ga => "ga",
        }
    }
}

/// Per-hypothesis `a_ij` and `s_ij`.
fn c_a(cfg: &SystemConfig) -> f64 {
    let (n, nb, nk) = (cfg.n_irs as f64, cfg.n_b as f64, cfg.n_k as f64);
    (8.0 * nb * nk - 2.0 * nb) + (8.0 * n * nk - 2.0 * n)
}

/// Per-pair `B`, `C`, `D` for both receivers.
fn c_b(cfg: &SystemConfig) -> f64 {
    let n = cfg.n_irs as f64;
    let rx = |r: f64| (8.0 * n * n * r - 2.0 * n * n) + (8.0 * n * n * r - 2.0 * n * r) + (8.0 * n * r - 2.0 * n);
    rx(cfg.n_b as f64) + rx(cfg.n_e as f64)
}

/// Shared reduction cost of the IRS methods.
pub fn irs_setup_flops(cfg: &SystemConfig) -> f64 {
    let k = cfg.n_hyp() as f64;
    k * c_a(cfg) + k * k * c_b(cfg)
}

/// Per-iteration cost of one method.
pub fn iteration_flops(cfg: &SystemConfig, method: FlopMethod) -> f64 {
    let n = cfg.n_irs as f64;
    let k = cfg.n_hyp() as f64;
    let nt = cfg.n_t() as f64;
    let pair = 8.0 * nt * nt + 6.0 * nt - 2.0;
    let raw = match method {
        FlopMethod::IrsAdmm => n * n * n + 24.0 * n * n - 5.0 * n,
        FlopMethod::IrsBca => n,
        FlopMethod::IrsSdr => powf(n, 4.5) * ln(1.0 / SDP_ACCURACY),
        FlopMethod::Sca => 4.0 * k * k * pair + nt * nt * nt,
        FlopMethod::Ga => k * k * (32.0 * nt * nt + 4.0 * nt - 4.0) + 6.0 * nt,
    };
    raw.max(0.0)
}

/// Total count for `iterations` iterations, setup included for the IRS
/// methods.
pub fn flop_estimate(cfg: &SystemConfig, method: FlopMethod, iterations: usize) -> f64 {
    let setup = match method {
        FlopMethod::IrsAdmm | FlopMethod::IrsBca | FlopMethod::IrsSdr => irs_setup_flops(cfg),
        FlopMethod::Sca | FlopMethod::Ga => 0.0,
    };
    (setup + iterations as f64 * iteration_flops(cfg, method)).max(0.0)
}

/// `D_out (C_IRS + C_PRE)` with per-call inner iteration counts.
pub fn joint_flops(
    cfg: &SystemConfig,
    irs: FlopMethod,
    precoder: FlopMethod,
    outer: usize,
    irs_iterations: usize,
    precoder_iterations: usize,
) -> f64 {
    outer as f64 * (flop_estimate(cfg, irs, irs_iterations) + flop_estimate(cfg, precoder, precoder_iterations))
}
