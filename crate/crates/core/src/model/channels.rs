use alloc::format;

use crate::irs_opt::IrsPhaseVector;
use crate::linalg::{inverse_sqrt_pair, CMat};
use crate::model::SystemConfig;
use crate::{Error, Result};

/// The five narrowband channel matrices of one realization.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    /// Alice -> Bob, `N_b x N_t`.
    pub h: CMat,
    /// Alice -> Eve, `N_e x N_t`.
    pub q: CMat,
    /// Alice -> IRS, `N x N_t`.
    pub f: CMat,
    /// IRS -> Bob, `N_b x N`.
    pub g: CMat,
    /// IRS -> Eve, `N_e x N`.
    pub m: CMat,
}

fn check_shape(name: &str, m: &CMat, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::Dimension(format!(
            "{name} is {}x{}, expected {rows}x{cols}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Dimension(format!("{name} has non-finite entries")));
    }
    Ok(())
}

/// `G diag(v) F`.
pub fn reflected(g: &CMat, v: &IrsPhaseVector, f: &CMat) -> CMat {
    let mut gv = g.clone();
    for (j, vj) in v.as_vector().iter().enumerate() {
        gv.column_mut(j).iter_mut().for_each(|x| *x *= *vj);
    }
    gv * f
}

impl ChannelSet {
    pub fn zeros(cfg: &SystemConfig) -> Self {
        let n_t = cfg.n_t();
        Self {
            h: CMat::zeros(cfg.n_b, n_t),
            q: CMat::zeros(cfg.n_e, n_t),
            f: CMat::zeros(cfg.n_irs, n_t),
            g: CMat::zeros(cfg.n_b, cfg.n_irs),
            m: CMat::zeros(cfg.n_e, cfg.n_irs),
        }
    }

    pub fn validate(&self, cfg: &SystemConfig) -> Result<()> {
        let n_t = cfg.n_t();
        check_shape("H", &self.h, cfg.n_b, n_t)?;
        check_shape("Q", &self.q, cfg.n_e, n_t)?;
        check_shape("F", &self.f, cfg.n_irs, n_t)?;
        check_shape("G", &self.g, cfg.n_b, cfg.n_irs)?;
        check_shape("M", &self.m, cfg.n_e, cfg.n_irs)
    }

    /// `H + G V F`.
    pub fn effective_bob(&self, v: &IrsPhaseVector) -> CMat {
        &self.h + reflected(&self.g, v, &self.f)
    }

    /// `Q + M V F`.
    pub fn effective_eve(&self, v: &IrsPhaseVector) -> CMat {
        &self.q + reflected(&self.m, v, &self.f)
    }
}

/// Channels premultiplied by `Ω^{-1/2}` of their receiver.
#[derive(Debug, Clone, PartialEq)]
pub struct WhitenedChannels {
    pub h_tilde: CMat,
    pub g_tilde: CMat,
    pub q_tilde: CMat,
    pub m_tilde: CMat,
    /// Alice -> IRS (unchanged by whitening).
    pub f: CMat,
    /// `Ω_B^{1/2}`, kept for round-trip checks.
    pub omega_b_sqrt: CMat,
    pub omega_e_sqrt: CMat,
}

impl WhitenedChannels {
    /// `H̃ + G̃ V F`.
    pub fn effective_bob(&self, v: &IrsPhaseVector) -> CMat {
        &self.h_tilde + reflected(&self.g_tilde, v, &self.f)
    }

    /// `Q̃ + M̃ V F`.
    pub fn effective_eve(&self, v: &IrsPhaseVector) -> CMat {
        &self.q_tilde + reflected(&self.m_tilde, v, &self.f)
    }
}

/// Whitens both receivers with `Ω^{-1/2}` from a Hermitian eigendecomposition.
pub fn whiten(ch: &ChannelSet, omega_b: &CMat, omega_e: &CMat) -> Result<WhitenedChannels> {
    let (wb, sb) = inverse_sqrt_pair(omega_b)?;
    let (we, se) = inverse_sqrt_pair(omega_e)?;
    Ok(WhitenedChannels {
        h_tilde: &wb * &ch.h,
        g_tilde: &wb * &ch.g,
        q_tilde: &we * &ch.q,
        m_tilde: &we * &ch.m,
        f: ch.f.clone(),
        omega_b_sqrt: sb,
        omega_e_sqrt: se,
    })
}
