//! `max tr(ΨQ)  s.t.  Q_nn = 1, Q ⪰ 0` by low-rank coordinate ascent.
//!
//! `Q = Y Y^H` with unit-norm rows `y_i ∈ C^r`, `r = ⌈√(2K)⌉`. Each row update
//! `y_i = normalize(Σ_{j≠i} Ψ_ij y_j)` is an exact block maximization, so the
//! objective is monotone. At a fixed point the multipliers
//! `λ_i = Re⟨(ΨY)_i, y_i⟩` give the dual slack `S = diag(λ) - Ψ`; the point is
//! optimal iff `S Y = 0` and `S ⪰ 0`. A failed certificate triggers a restart
//! with one more column.

use alloc::boxed::Box;

use num_complex::Complex64;

use crate::linalg::{hermitian_defect, min_eigenvalue, CMat};
use crate::real::{abs, ceil, sqrt};
use crate::rng;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdpSettings {
    /// Certificate tolerance, relative to `max(1, ‖Ψ‖_F)`.
    pub tol: f64,
    pub max_sweeps: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SdpSettings {
    fn default() -> Self {
        Self {
            tol: 1e-6,
            max_sweeps: 20_000,
            restarts: 4,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SdpSolution {
    pub q: CMat,
    /// Factor `Y` with `Q = Y Y^H`.
    pub factor: CMat,
    /// `tr(ΨQ)`.
    pub value: f64,
    /// Certificate residual relative to `max(1, ‖Ψ‖_F)`.
    pub residual: f64,
    pub sweeps: usize,
    pub restarts: usize,
}

struct Attempt {
    y: CMat,
    value: f64,
    residual: f64,
    sweeps: usize,
}

fn random_rows(k: usize, r: usize, seed: u64, attempt: u64) -> CMat {
    let mut g = rng::stream(seed, rng::streams::SDP_INIT + attempt);
    let mut y = rng::complex_normal_matrix(&mut g, k, r, 1.0);
    for i in 0..k {
        let n = y.row(i).norm();
        y.row_mut(i).unscale_mut(n);
    }
    y
}

fn objective(y: &CMat, z: &CMat) -> f64 {
    y.iter().zip(z.iter()).map(|(a, b)| (a.conj() * b).re).sum()
}

/// Stationarity `‖SY‖_F` and dual infeasibility `max(0, -λ_min(S))`, both
/// divided by `scale`.
fn certificate(psi: &CMat, y: &CMat, z: &CMat, scale: f64, check_dual: bool) -> (f64, f64) {
    let k = psi.nrows();
    let mut stat = 0.0;
    let mut lambda = alloc::vec![0.0; k];
    for i in 0..k {
        let l: f64 = y.row(i).iter().zip(z.row(i).iter()).map(|(a, b)| (a.conj() * b).re).sum();
        lambda[i] = l;
        for c in 0..y.ncols() {
            stat += (y[(i, c)] * l - z[(i, c)]).norm_sqr();
        }
    }
    let stat = sqrt(stat) / scale;
    if !check_dual {
        return (stat, 0.0);
    }
    let mut s = -psi.clone();
    for i in 0..k {
        s[(i, i)] += lambda[i];
    }
    let dual = f64::max(0.0, -min_eigenvalue(&s)) / scale;
    (stat, dual)
}

fn ascend(psi: &CMat, mut y: CMat, settings: &SdpSettings, scale: f64) -> Attempt {
    let k = psi.nrows();
    let r = y.ncols();
    let mut z = psi * &y;
    let mut value = objective(&y, &z);
    let mut sweeps = 0;
    let mut residual = f64::INFINITY;
    while sweeps < settings.max_sweeps {
        sweeps += 1;
        for i in 0..k {
            let mut g = z.row(i).clone_owned();
            g -= y.row(i) * psi[(i, i)];
            let mag = g.norm();
            if mag == 0.0 {
                continue;
            }
            g.unscale_mut(mag);
            let d = &g - y.row(i);
            for j in 0..k {
                let p = psi[(j, i)];
                if p != Complex64::new(0.0, 0.0) {
                    for c in 0..r {
                        z[(j, c)] += p * d[c];
                    }
                }
            }
            y.row_mut(i).copy_from(&g);
        }
        let next = objective(&y, &z);
        let stalled = abs(next - value) <= 1e-13 * scale;
        value = next;
        if stalled || sweeps % 16 == 0 {
            let (stat, _) = certificate(psi, &y, &z, scale, false);
            if stat <= settings.tol || stalled {
                let (stat, dual) = certificate(psi, &y, &z, scale, true);
                residual = f64::max(stat, dual);
                // a stalled point with an indefinite slack is a saddle
                if residual <= settings.tol || (stalled && dual > settings.tol) {
                    break;
                }
            }
        }
    }
    if !residual.is_finite() {
        let (stat, dual) = certificate(psi, &y, &z, scale, true);
        residual = f64::max(stat, dual);
    }
    Attempt {
        y,
        value,
        residual,
        sweeps,
    }
}

/// Solves the unit-diagonal SDP for a Hermitian `psi`.
pub fn sdp_unit_diag(psi: &CMat, settings: &SdpSettings) -> Result<SdpSolution> {
    let k = psi.nrows();
    if psi.ncols() != k || k == 0 {
        return Err(Error::InvalidArgument("psi must be a non-empty square matrix"));
    }
    let scale = f64::max(1.0, psi.norm());
    if hermitian_defect(psi) > 1e-10 * scale {
        return Err(Error::InvalidArgument("psi must be Hermitian"));
    }
    let base_rank = (ceil(sqrt(2.0 * k as f64)) as usize).clamp(1, k);
    let mut best: Option<Attempt> = None;
    let mut total_sweeps = 0;
    for attempt in 0..=settings.restarts {
        let r = (base_rank + attempt).min(k);
        let y0 = random_rows(k, r, settings.seed, attempt as u64);
        let a = ascend(psi, y0, settings, scale);
        total_sweeps += a.sweeps;
        let done = a.residual <= settings.tol;
        let better = best.as_ref().is_none_or(|b| a.residual < b.residual);
        if better {
            best = Some(a);
        }
        if done {
            let a = best.take().unwrap_or_else(|| unreachable!());
            return Ok(SdpSolution {
                q: &a.y * a.y.adjoint(),
                factor: a.y,
                value: a.value,
                residual: a.residual,
                sweeps: total_sweeps,
                restarts: attempt,
            });
        }
    }
    let b = best.unwrap_or_else(|| unreachable!());
    Err(Error::SdpNotConverged {
        residual: b.residual,
        best_q: Box::new(&b.y * b.y.adjoint()),
        best_value: b.value,
    })
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Full-matrix projected gradient with a Dykstra projection onto
    //! `{Q ⪰ 0} ∩ {diag(Q) = 1}`.

    use super::*;
    use crate::linalg::HermitianEigen;

    fn project_psd(a: &CMat) -> CMat {
        HermitianEigen::new(a).map(|l| l.max(0.0))
    }

    fn project_diag(a: &CMat) -> CMat {
        let mut out = a.clone();
        for i in 0..a.nrows() {
            out[(i, i)] = Complex64::new(1.0, 0.0);
        }
        out
    }

    fn dykstra(x0: &CMat, iters: usize) -> CMat {
        let n = x0.nrows();
        let mut x = x0.clone();
        let mut p = CMat::zeros(n, n);
        let mut q = CMat::zeros(n, n);
        for _ in 0..iters {
            let y = project_psd(&(&x + &p));
            p = &x + &p - &y;
            let xn = project_diag(&(&y + &q));
            q = &y + &q - &xn;
            x = xn;
        }
        project_diag(&x)
    }

    pub fn solve(psi: &CMat, iters: usize) -> f64 {
        let n = psi.nrows();
        let step = 1.0 / f64::max(1.0, psi.norm());
        let mut q = CMat::identity(n, n);
        for _ in 0..iters {
            q = dykstra(&(&q + psi.scale(step)), 60);
        }
        (psi * &q).trace().re
    }
}
