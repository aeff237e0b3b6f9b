use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::CVec;
use crate::model::{BlockFit, Factorization, HybridPrecoder};
use crate::real::sqrt;

/// Relative reconstruction error above which a block is flagged.
pub const FIT_TOLERANCE: f64 = 1e-6;

/// Splits every block into `f_i = phase(p_i)/√N_k` and the least-squares
/// gain `d_i = f_i^H p_i`.
pub fn factorize_hybrid(p: &HybridPrecoder) -> HybridPrecoder {
    let n_k = p.n_k();
    let amp = 1.0 / sqrt(n_k as f64);
    let mut f_blocks = Vec::with_capacity(p.n_rf());
    let mut d_gains = Vec::with_capacity(p.n_rf());
    let mut block_errors = Vec::with_capacity(p.n_rf());
    let mut fits = Vec::with_capacity(p.n_rf());
    for i in 0..p.n_rf() {
        let block = p.block(i).clone_owned();
        let norm = block.norm();
        if norm == 0.0 {
            f_blocks.push(CVec::from_element(n_k, Complex64::new(amp, 0.0)));
            d_gains.push(Complex64::new(0.0, 0.0));
            block_errors.push(0.0);
            fits.push(BlockFit::Skipped);
            continue;
        }
        let f = block.map(|z| {
            let m = z.norm();
            if m > 0.0 {
                z / m * amp
            } else {
                Complex64::new(amp, 0.0)
            }
        });
        let d = f.dotc(&block);
        let err = (&block - &f * d).norm();
        fits.push(if err <= FIT_TOLERANCE * norm {
            BlockFit::Exact
        } else {
            BlockFit::Flagged
        });
        f_blocks.push(f);
        d_gains.push(d);
        block_errors.push(err);
    }
    let mut out = p.clone();
    out.factorization = Some(Factorization {
        f_blocks,
        d_gains,
        block_errors,
        fits,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn constant_modulus_blocks_are_exact() {
        let p = CVec::from_vec(alloc::vec![c(1.0, 0.0), c(0.0, 1.0), c(-2.0, 0.0), c(0.0, 2.0)]);
        let h = factorize_hybrid(&HybridPrecoder::new(p.clone(), 2, 2).unwrap());
        let fz = h.factorization.unwrap();
        assert!(fz.is_hybrid_feasible());
        for i in 0..2 {
            assert!(fz.block_errors[i] < 1e-12);
            assert!(fz.f_blocks[i].iter().all(|z| (z.norm() - 0.5f64.sqrt()).abs() < 1e-12));
            let rec = &fz.f_blocks[i] * fz.d_gains[i];
            assert!((rec - p.rows(2 * i, 2)).norm() < 1e-9);
        }
    }

    #[test]
    fn unit_vector_block_is_flagged_with_closed_form_error() {
        let n_k = 4;
        let mut p = CVec::zeros(n_k);
        p[0] = c(0.0, 3.0);
        let h = factorize_hybrid(&HybridPrecoder::new(p, 1, n_k).unwrap());
        let fz = h.factorization.unwrap();
        assert_eq!(fz.fits[0], BlockFit::Flagged);
        let expected = (1.0 - 1.0 / n_k as f64).sqrt() * 3.0;
        assert!((fz.block_errors[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn zero_block_is_skipped() {
        let p = CVec::from_vec(alloc::vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let fz = factorize_hybrid(&HybridPrecoder::new(p, 2, 2).unwrap()).factorization.unwrap();
        assert_eq!(fz.fits, alloc::vec![BlockFit::Exact, BlockFit::Skipped]);
        assert!(!fz.is_hybrid_feasible());
    }
}
