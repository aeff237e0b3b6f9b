//! Artificial-noise projection and the interference-plus-noise covariances.

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::irs_opt::IrsPhaseVector;
use crate::linalg::{fro2, hermitian_part, CMat, CVec, HermitianEigen};
use crate::model::{whiten, ChannelSet, SystemConfig, WhitenedChannels};
use crate::real::sqrt;
use crate::rng;
use crate::{Error, Result};

/// How `T_AN` is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum AnStrategy {
    /// Null space of Bob's effective channel when `N_RF > N_b`, otherwise a
    /// random unitary.
    Auto,
    NullSpace,
    RandomUnitary,
    /// `T_AN = I`.
    Identity,
}

/// Settings shared by every AN construction in a run.
#[derive(Debug, Clone, PartialEq)]
pub struct AnSettings {
    pub strategy: AnStrategy,
    /// Analog beam `f_i` used on the AN path, one per subarray.
    pub fa_blocks: Vec<CVec>,
    /// Seed for the random-unitary branch.
    pub seed: u64,
}

impl AnSettings {
    /// `Auto` strategy with equal-phase analog vectors `1/√N_k`.
    pub fn new(cfg: &SystemConfig, seed: u64) -> Self {
        Self {
            strategy: AnStrategy::Auto,
            fa_blocks: reference_analog_blocks(cfg),
            seed,
        }
    }
}

/// All-`1/√N_k` analog vectors.
pub fn reference_analog_blocks(cfg: &SystemConfig) -> Vec<CVec> {
    let a = 1.0 / sqrt(cfg.n_k as f64);
    (0..cfg.n_rf)
        .map(|_| CVec::from_element(cfg.n_k, Complex64::new(a, 0.0)))
        .collect()
}

/// Block-diagonal `F_A` (`N_RF N_k x N_RF`).
pub fn analog_matrix(fa_blocks: &[CVec], n_k: usize) -> CMat {
    let n_rf = fa_blocks.len();
    let mut fa = CMat::zeros(n_rf * n_k, n_rf);
    for (i, f) in fa_blocks.iter().enumerate() {
        for a in 0..n_k {
            fa[(i * n_k + a, i)] = f[a];
        }
    }
    fa
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnProjection {
    /// `N_RF x N_RF`, `‖T_AN‖_F^2 = N_RF`.
    pub t_an: CMat,
    /// `C_B = A_B T T^H A_B^H` with `A_B = (H + GVF) F_A`.
    pub effective_an_cov_b: CMat,
    pub effective_an_cov_e: CMat,
    /// Strategy that actually produced `t_an`.
    pub used: AnStrategy,
    /// Bob's effective channel had rank 0 and the identity fallback was used.
    pub degenerate: bool,
}

fn random_unitary(n: usize, seed: u64) -> CMat {
    let mut r = rng::stream(seed, rng::streams::AN_UNITARY);
    let z = rng::complex_normal_matrix(&mut r, n, n, 1.0);
    let qr = z.qr();
    let (mut q, rr) = (qr.q(), qr.r());
    // fix the column phases so the draw is Haar
    for j in 0..n {
        let d = rr[(j, j)];
        if d.norm() > 0.0 {
            let ph = d / d.norm();
            q.column_mut(j).iter_mut().for_each(|x| *x *= ph);
        }
    }
    q
}

/// Orthogonal projector onto the null space of `a` (columns), or `None` when
/// `a` is numerically zero.
fn null_space_projector(a: &CMat) -> Option<CMat> {
    let gram = a.adjoint() * a;
    let eig = HermitianEigen::new(&gram);
    let max = eig.max();
    if !(max > 0.0) {
        return None;
    }
    let n = gram.nrows();
    let mut proj = CMat::zeros(n, n);
    for j in 0..n {
        if eig.values[j] <= 1e-10 * max {
            let u = eig.vectors.column(j);
            proj += &u * u.adjoint();
        }
    }
    Some(proj)
}

fn normalized(t: CMat, n_rf: usize) -> CMat {
    let f = fro2(&t);
    if f > 0.0 {
        t.scale(sqrt(n_rf as f64 / f))
    } else {
        t
    }
}

/// Builds `T_AN` and caches the AN covariance contributions at both
/// receivers for the reflection vector `v`.
pub fn build_an_projection(
    cfg: &SystemConfig,
    ch: &ChannelSet,
    v: &IrsPhaseVector,
    settings: &AnSettings,
) -> Result<AnProjection> {
    if settings.fa_blocks.len() != cfg.n_rf || settings.fa_blocks.iter().any(|f| f.len() != cfg.n_k) {
        return Err(Error::Dimension(format!(
            "expected {} analog vectors of length {}",
            cfg.n_rf, cfg.n_k
        )));
    }
    let n_rf = cfg.n_rf;
    let fa = analog_matrix(&settings.fa_blocks, cfg.n_k);
    let a_b = ch.effective_bob(v) * &fa;
    let a_e = ch.effective_eve(v) * &fa;

    let want_null = match settings.strategy {
        AnStrategy::Auto => n_rf > cfg.n_b,
        AnStrategy::NullSpace => true,
        AnStrategy::RandomUnitary | AnStrategy::Identity => false,
    };
    let (t_an, used, degenerate) = if want_null {
        match null_space_projector(&a_b) {
            Some(proj) if fro2(&proj) > 0.5 => (normalized(proj, n_rf), AnStrategy::NullSpace, false),
            Some(_) => (random_unitary(n_rf, settings.seed), AnStrategy::RandomUnitary, false),
            None => (CMat::identity(n_rf, n_rf), AnStrategy::Identity, true),
        }
    } else if settings.strategy == AnStrategy::Identity {
        (CMat::identity(n_rf, n_rf), AnStrategy::Identity, false)
    } else {
        (random_unitary(n_rf, settings.seed), AnStrategy::RandomUnitary, false)
    };

    let tt = &t_an * t_an.adjoint();
    let cov_b = hermitian_part(&(&a_b * &tt * a_b.adjoint()));
    let cov_e = hermitian_part(&(&a_e * &tt * a_e.adjoint()));
    Ok(AnProjection {
        t_an,
        effective_an_cov_b: cov_b,
        effective_an_cov_e: cov_e,
        used,
        degenerate,
    })
}

/// `Ω_B = (1-β)P C_B + σ_B² I` and `Ω_E` likewise.
pub fn interference_covariances(cfg: &SystemConfig, an: &AnProjection) -> Result<(CMat, CMat)> {
    let scale = (1.0 - cfg.beta) * cfg.p_total;
    let build = |cov: &CMat, sigma2: f64| -> Result<CMat> {
        let n = cov.nrows();
        let omega = cov.scale(scale) + CMat::identity(n, n).scale(sigma2);
        let omega = hermitian_part(&omega);
        let smallest = HermitianEigen::new(&omega).min();
        if !(smallest > 0.0) {
            return Err(Error::NotPositiveDefinite { smallest });
        }
        Ok(omega)
    };
    Ok((
        build(&an.effective_an_cov_b, cfg.sigma_b2)?,
        build(&an.effective_an_cov_e, cfg.sigma_e2)?,
    ))
}

/// AN projection, covariances and whitened channels for one `v`.
#[derive(Debug, Clone)]
pub struct SecrecyLink {
    pub an: AnProjection,
    pub omega_b: CMat,
    pub omega_e: CMat,
    pub whitened: WhitenedChannels,
}

impl SecrecyLink {
    pub fn build(
        cfg: &SystemConfig,
        ch: &ChannelSet,
        v: &IrsPhaseVector,
        settings: &AnSettings,
    ) -> Result<Self> {
        let an = build_an_projection(cfg, ch, v, settings)?;
        let (omega_b, omega_e) = interference_covariances(cfg, &an)?;
        let whitened = whiten(ch, &omega_b, &omega_e)?;
        Ok(Self {
            an,
            omega_b,
            omega_e,
            whitened,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_defect;

    fn random_channels(cfg: &SystemConfig, seed: u64) -> ChannelSet {
        let mut r = rng::stream(seed, 0);
        let n_t = cfg.n_t();
        ChannelSet {
            h: rng::complex_normal_matrix(&mut r, cfg.n_b, n_t, 1.0),
            q: rng::complex_normal_matrix(&mut r, cfg.n_e, n_t, 1.0),
            f: rng::complex_normal_matrix(&mut r, cfg.n_irs, n_t, 1.0),
            g: rng::complex_normal_matrix(&mut r, cfg.n_b, cfg.n_irs, 1.0),
            m: rng::complex_normal_matrix(&mut r, cfg.n_e, cfg.n_irs, 1.0),
        }
    }

    fn unit_cfg(n_rf: usize, n_b: usize) -> SystemConfig {
        SystemConfig {
            n_rf,
            n_k: 2,
            n_b,
            n_e: 2,
            n_irs: 6,
            p_total: 1.0,
            sigma_b2: 0.1,
            sigma_e2: 0.1,
            ..SystemConfig::desk_scale()
        }
    }

    #[test]
    fn null_space_silences_bob() {
        let cfg = unit_cfg(8, 2);
        for seed in 0..10 {
            let ch = random_channels(&cfg, seed);
            let v = IrsPhaseVector::random(cfg.n_irs, seed);
            let s = AnSettings::new(&cfg, seed);
            let an = build_an_projection(&cfg, &ch, &v, &s).unwrap();
            assert_eq!(an.used, AnStrategy::NullSpace);
            assert!((fro2(&an.t_an) - 8.0).abs() < 1e-9);
            let a = ch.effective_bob(&v) * analog_matrix(&s.fa_blocks, cfg.n_k);
            let leak = (&a * &an.t_an).norm();
            assert!(leak < 1e-6 * a.norm(), "leak {leak}");
        }
    }

    #[test]
    fn random_unitary_without_null_space() {
        let cfg = unit_cfg(2, 2);
        let ch = random_channels(&cfg, 1);
        let v = IrsPhaseVector::ones(cfg.n_irs);
        let an = build_an_projection(&cfg, &ch, &v, &AnSettings::new(&cfg, 5)).unwrap();
        assert_eq!(an.used, AnStrategy::RandomUnitary);
        assert!((fro2(&an.t_an) - 2.0).abs() < 1e-9);
        let u = &an.t_an;
        assert!((u.adjoint() * u - CMat::identity(2, 2)).norm() < 1e-10);
    }

    #[test]
    fn zero_reflection_uses_direct_channel_only() {
        let cfg = unit_cfg(4, 2);
        let mut ch = random_channels(&cfg, 2);
        ch.g = CMat::zeros(cfg.n_b, cfg.n_irs);
        let s = AnSettings::new(&cfg, 0);
        let a = build_an_projection(&cfg, &ch, &IrsPhaseVector::ones(cfg.n_irs), &s).unwrap();
        let b = build_an_projection(&cfg, &ch, &IrsPhaseVector::random(cfg.n_irs, 9), &s).unwrap();
        assert!((&a.t_an - &b.t_an).norm() < 1e-10);
        let direct = &ch.h * analog_matrix(&s.fa_blocks, cfg.n_k);
        assert!((direct * &a.t_an).norm() < 1e-6);
    }

    #[test]
    fn rank_zero_bob_falls_back_to_identity() {
        let cfg = unit_cfg(4, 2);
        let mut ch = random_channels(&cfg, 2);
        ch.h = CMat::zeros(cfg.n_b, cfg.n_t());
        ch.g = CMat::zeros(cfg.n_b, cfg.n_irs);
        let an = build_an_projection(&cfg, &ch, &IrsPhaseVector::ones(cfg.n_irs), &AnSettings::new(&cfg, 0))
            .unwrap();
        assert!(an.degenerate);
        assert_eq!(an.t_an, CMat::identity(4, 4));
    }

    #[test]
    fn covariances_for_full_message_power() {
        let cfg = SystemConfig {
            beta: 1.0,
            ..unit_cfg(4, 2)
        };
        let ch = random_channels(&cfg, 4);
        let v = IrsPhaseVector::ones(cfg.n_irs);
        let an = build_an_projection(&cfg, &ch, &v, &AnSettings::new(&cfg, 0)).unwrap();
        let (ob, oe) = interference_covariances(&cfg, &an).unwrap();
        assert_eq!(ob, CMat::identity(2, 2).scale(cfg.sigma_b2));
        assert_eq!(oe, CMat::identity(2, 2).scale(cfg.sigma_e2));
    }

    #[test]
    fn null_space_leaves_bob_noise_only() {
        let cfg = unit_cfg(6, 2);
        let ch = random_channels(&cfg, 8);
        let v = IrsPhaseVector::random(cfg.n_irs, 8);
        let an = build_an_projection(&cfg, &ch, &v, &AnSettings::new(&cfg, 0)).unwrap();
        let (ob, _) = interference_covariances(&cfg, &an).unwrap();
        assert!((ob - CMat::identity(2, 2).scale(cfg.sigma_b2)).norm() < 1e-9);
    }

    #[test]
    fn covariances_match_elementwise_reassembly() {
        let cfg = SystemConfig {
            n_b: 3,
            n_e: 3,
            ..unit_cfg(3, 3)
        };
        for seed in 0..10 {
            let ch = random_channels(&cfg, seed);
            let v = IrsPhaseVector::random(cfg.n_irs, seed + 100);
            let s = AnSettings::new(&cfg, seed);
            let an = build_an_projection(&cfg, &ch, &v, &s).unwrap();
            let (ob, oe) = interference_covariances(&cfg, &an).unwrap();
            assert!(hermitian_defect(&ob) < 1e-12 && hermitian_defect(&oe) < 1e-12);

            // naive loops over every index of (H + G V F) F_A T T^H F_A^H (.)^H
            let fa = analog_matrix(&s.fa_blocks, cfg.n_k);
            let n_t = cfg.n_t();
            for (chan, refl, omega, sigma2) in [
                (&ch.h, &ch.g, &ob, cfg.sigma_b2),
                (&ch.q, &ch.m, &oe, cfg.sigma_e2),
            ] {
                let rows = chan.nrows();
                let mut eff = CMat::zeros(rows, n_t);
                for r in 0..rows {
                    for t in 0..n_t {
                        let mut acc = chan[(r, t)];
                        for n in 0..cfg.n_irs {
                            acc += refl[(r, n)] * v.as_vector()[n] * ch.f[(n, t)];
                        }
                        eff[(r, t)] = acc;
                    }
                }
                let mut a = CMat::zeros(rows, cfg.n_rf);
                for r in 0..rows {
                    for k in 0..cfg.n_rf {
                        for t in 0..n_t {
                            a[(r, k)] += eff[(r, t)] * fa[(t, k)];
                        }
                    }
                }
                let mut at = CMat::zeros(rows, cfg.n_rf);
                for r in 0..rows {
                    for k in 0..cfg.n_rf {
                        for l in 0..cfg.n_rf {
                            at[(r, k)] += a[(r, l)] * an.t_an[(l, k)];
                        }
                    }
                }
                for r in 0..rows {
                    for s2 in 0..rows {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for k in 0..cfg.n_rf {
                            acc += at[(r, k)] * at[(s2, k)].conj();
                        }
                        let mut expect = acc * (1.0 - cfg.beta) * cfg.p_total;
                        if r == s2 {
                            expect += sigma2;
                        }
                        assert!((omega[(r, s2)] - expect).norm() < 1e-10);
                    }
                }
            }
        }
    }
}
