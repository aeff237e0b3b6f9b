//! Transmit hypotheses `X_k = E_i b_j` and their pairwise differences.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::{CVec, ZERO};
use crate::model::{Constellation, SystemConfig};

/// One of the `N_RF * M` (subarray, symbol) combinations.
///
/// `x_vec` is the diagonal of `X_k`: `b_j` on every antenna of subarray `i`
/// and zero elsewhere, so that `X_k p = x_vec ∘ p`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmitHypothesis {
    /// Zero-based subarray index `i`.
    pub subarray: usize,
    /// Zero-based symbol index `j`.
    pub symbol: usize,
    pub symbol_value: Complex64,
    pub x_vec: CVec,
}

impl TransmitHypothesis {
    /// Flat index `i * M + j`.
    pub fn index(&self, m_ary: usize) -> usize {
        self.subarray * m_ary + self.symbol
    }
}

/// Hypotheses ordered by `(i, j)`.
pub fn enumerate_hypotheses(cfg: &SystemConfig, cons: &Constellation) -> Vec<TransmitHypothesis> {
    let n_t = cfg.n_t();
    let mut out = Vec::with_capacity(cfg.n_rf * cons.len());
    for i in 0..cfg.n_rf {
        for (j, &b) in cons.symbols().iter().enumerate() {
            let mut x = CVec::zeros(n_t);
            for a in 0..cfg.n_k {
                x[i * cfg.n_k + a] = b;
            }
            out.push(TransmitHypothesis {
                subarray: i,
                symbol: j,
                symbol_value: b,
                x_vec: x,
            });
        }
    }
    out
}

/// Block-sparse form of `D_mn = X_m - X_n`: at most two scaled identity
/// blocks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiffOperator {
    Zero,
    /// Same subarray, `(b_j - b_l)` on `block`.
    Single { block: usize, coeff: Complex64 },
    /// `b_j` on `first`, `-b_l` on `second`.
    Double {
        first: usize,
        first_coeff: Complex64,
        second: usize,
        second_coeff: Complex64,
    },
}

impl DiffOperator {
    /// Nonzero `(block, coefficient)` terms.
    pub fn terms(&self) -> impl Iterator<Item = (usize, Complex64)> {
        let arr: [Option<(usize, Complex64)>; 2] = match *self {
            DiffOperator::Zero => [None, None],
            DiffOperator::Single { block, coeff } => [Some((block, coeff)), None],
            DiffOperator::Double {
                first,
                first_coeff,
                second,
                second_coeff,
            } => [Some((first, first_coeff)), Some((second, second_coeff))],
        };
        arr.into_iter().flatten()
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, DiffOperator::Zero)
    }
}

/// Ordered pair `(m, n)` of hypothesis indices with its difference operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferencePair {
    pub m: usize,
    pub n: usize,
    pub op: DiffOperator,
}

impl DifferencePair {
    /// `D_mn p`, touching only the nonzero blocks.
    pub fn apply(&self, p: &CVec, n_k: usize) -> CVec {
        let mut out = CVec::zeros(p.len());
        for (block, coeff) in self.op.terms() {
            for a in 0..n_k {
                let idx = block * n_k + a;
                out[idx] = coeff * p[idx];
            }
        }
        out
    }
}

/// All `(N_RF M)^2` ordered pairs, row-major in `(m, n)`.
pub fn difference_operators(hyps: &[TransmitHypothesis]) -> Vec<DifferencePair> {
    let mut out = Vec::with_capacity(hyps.len() * hyps.len());
    for (m, hm) in hyps.iter().enumerate() {
        for (n, hn) in hyps.iter().enumerate() {
            let op = if m == n {
                DiffOperator::Zero
            } else if hm.subarray == hn.subarray {
                let coeff = hm.symbol_value - hn.symbol_value;
                if coeff == ZERO {
                    DiffOperator::Zero
                } else {
                    DiffOperator::Single {
                        block: hm.subarray,
                        coeff,
                    }
                }
            } else {
                DiffOperator::Double {
                    first: hm.subarray,
                    first_coeff: hm.symbol_value,
                    second: hn.subarray,
                    second_coeff: -hn.symbol_value,
                }
            };
            out.push(DifferencePair { m, n, op });
        }
    }
    out
}
