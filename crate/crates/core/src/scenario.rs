//! Geometry-based Rayleigh channel generation.

use crate::model::{ChannelSet, SystemConfig};
use crate::real::{log10, powf, sqrt};
use crate::rng::{self, streams};
use crate::{Error, Result};

/// Reference distance of the path-loss model, meters.
pub const REFERENCE_DISTANCE: f64 = 1.0;

/// `PL0 - 10 α log10(d / d0)` in dB.
pub fn path_loss_db(distance: f64, alpha: f64, pl0_db: f64) -> Result<f64> {
    if !(distance >= REFERENCE_DISTANCE) {
        return Err(Error::BelowReferenceDistance { distance });
    }
    Ok(pl0_db - 10.0 * alpha * log10(distance / REFERENCE_DISTANCE))
}

pub fn distance(a: [f64; 3], b: [f64; 3]) -> f64 {
    sqrt((0..3).map(|i| (a[i] - b[i]) * (a[i] - b[i])).sum())
}

/// Linear per-entry variance of the link between two nodes.
pub fn link_variance(a: [f64; 3], b: [f64; 3], alpha: f64, pl0_db: f64) -> Result<f64> {
    Ok(powf(10.0, path_loss_db(distance(a, b), alpha, pl0_db)? / 10.0))
}

/// Draws `H, Q, F, G, M` with i.i.d. `CN(0, PL)` entries. Each matrix has its
/// own stream, so changing one dimension leaves the other draws untouched.
pub fn draw_channels(cfg: &SystemConfig, seed: u64) -> Result<ChannelSet> {
    let g = &cfg.geometry;
    let n_t = cfg.n_t();
    let var_h = link_variance(g.alice, g.bob, cfg.alpha_ab, cfg.pl0_db)?;
    let var_q = link_variance(g.alice, g.eve, cfg.alpha_ab, cfg.pl0_db)?;
    let var_f = link_variance(g.alice, g.irs, cfg.alpha_ai, cfg.pl0_db)?;
    let var_g = link_variance(g.irs, g.bob, cfg.alpha_ib, cfg.pl0_db)?;
    let var_m = link_variance(g.irs, g.eve, cfg.alpha_ib, cfg.pl0_db)?;
    let draw = |stream: u64, rows: usize, cols: usize, var: f64| {
        rng::complex_normal_matrix(&mut rng::stream(seed, stream), rows, cols, var)
    };
    Ok(ChannelSet {
        h: draw(streams::CHANNEL_H, cfg.n_b, n_t, var_h),
        q: draw(streams::CHANNEL_Q, cfg.n_e, n_t, var_q),
        f: draw(streams::CHANNEL_F, cfg.n_irs, n_t, var_f),
        g: draw(streams::CHANNEL_G, cfg.n_b, cfg.n_irs, var_g),
        m: draw(streams::CHANNEL_M, cfg.n_e, cfg.n_irs, var_m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_loss_values() {
        assert_eq!(path_loss_db(1.0, 2.7, -30.0).unwrap(), -30.0);
        assert!((path_loss_db(10.0, 2.7, -30.0).unwrap() + 57.0).abs() < 1e-12);
        assert!((path_loss_db(10.0, 2.2, -30.0).unwrap() + 52.0).abs() < 1e-12);
        assert!(path_loss_db(0.5, 2.0, -30.0).is_err());
    }

    #[test]
    fn same_seed_same_channels() {
        let cfg = SystemConfig::desk_scale();
        assert_eq!(draw_channels(&cfg, 3).unwrap(), draw_channels(&cfg, 3).unwrap());
        assert_ne!(draw_channels(&cfg, 3).unwrap().h, draw_channels(&cfg, 4).unwrap().h);
    }

    #[test]
    fn common_random_numbers_across_irs_size() {
        let small = SystemConfig::desk_scale();
        let big = SystemConfig { n_irs: 32, ..small.clone() };
        let a = draw_channels(&small, 5).unwrap();
        let b = draw_channels(&big, 5).unwrap();
        assert_eq!(a.h, b.h);
        assert_eq!(a.q, b.q);
    }

    #[test]
    fn collocated_nodes_are_rejected() {
        let mut cfg = SystemConfig::desk_scale();
        cfg.geometry.irs = cfg.geometry.alice;
        assert!(matches!(draw_channels(&cfg, 0), Err(Error::BelowReferenceDistance { .. })));
    }
}
