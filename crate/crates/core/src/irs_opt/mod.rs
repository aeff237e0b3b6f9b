//! IRS beamforming: quadratic-form reduction in the reflection vector and
//! three beamformers (ADMM, block coordinate ascent, semidefinite
//! relaxation).

use alloc::format;
use alloc::vec::Vec;

use crate::linalg::{CVec, ONE};
use crate::real::{abs, cis};
use crate::rng;
use crate::{Error, Result};

mod admm;
mod bca;
mod forms;
mod sdp;
mod sdr;

pub use admm::{irs_admm, project_unit_modulus, AdmmSettings};
pub use bca::{irs_bca, BcaSettings};
pub use forms::{build_quadratic_forms, QuadraticForms, ReceiverForms, SurrogateObjective};
pub use sdp::{sdp_unit_diag, SdpSettings, SdpSolution};
pub use sdr::{irs_sdr, lift, SdrOutcome, SdrSettings};

/// `N` unit-modulus reflection coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct IrsPhaseVector {
    v: CVec,
}

impl IrsPhaseVector {
    /// Rejects entries whose modulus differs from 1 by more than 1e-9.
    pub fn new(v: CVec) -> Result<Self> {
        if v.iter().any(|z| !(abs(z.norm() - 1.0) <= 1e-9)) {
            return Err(Error::InvalidArgument("reflection coefficient is not unit modulus"));
        }
        Ok(Self { v })
    }

    pub fn ones(n: usize) -> Self {
        Self {
            v: CVec::from_element(n, ONE),
        }
    }

    pub fn from_phases(theta: &[f64]) -> Self {
        Self {
            v: CVec::from_iterator(theta.len(), theta.iter().map(|&t| cis(t))),
        }
    }

    /// Independent uniform phases from the `RANDOM_PHASE` stream of `seed`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut r = rng::stream(seed, rng::streams::RANDOM_PHASE);
        let theta: Vec<f64> = (0..n).map(|_| rng::uniform_phase(&mut r)).collect();
        Self::from_phases(&theta)
    }

    /// Elementwise phase of `w`; zero entries become 1.
    pub fn from_phases_of(w: &CVec) -> Self {
        Self {
            v: w.map(|z| {
                let n = z.norm();
                if n > 0.0 {
                    z / n
                } else {
                    ONE
                }
            }),
        }
    }

    pub fn as_vector(&self) -> &CVec {
        &self.v
    }

    pub fn len(&self) -> usize {
        self.v.len()
    }

    pub fn is_empty(&self) -> bool {
        self.v.is_empty()
    }

    pub fn phases(&self) -> Vec<f64> {
        self.v.iter().map(|z| z.arg()).collect()
    }

    /// Largest `||v_n| - 1|`.
    pub fn modulus_error(&self) -> f64 {
        self.v.iter().map(|z| abs(z.norm() - 1.0)).fold(0.0, f64::max)
    }

    pub(crate) fn from_raw(v: CVec) -> Self {
        Self { v }
    }
}

/// Result of an iterative solver.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverOutcome<T> {
    pub solution: T,
    /// Objective at `solution`.
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective values in evaluation order (solver specific granularity).
    pub trace: Vec<f64>,
    /// Solver-specific final residual: `‖u - v‖` for ADMM, the certificate
    /// residual for SDR, zero otherwise.
    pub residual: f64,
}

pub(crate) fn check_len(v: &IrsPhaseVector, n: usize) -> Result<()> {
    if v.len() != n {
        return Err(Error::Dimension(format!("phase vector has {} entries, expected {n}", v.len())));
    }
    Ok(())
}
