use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::real::{abs, cis};
use crate::{Error, Result};

/// M-ary symbol alphabet with unit average energy.
#[derive(Debug, Clone, PartialEq)]
pub struct Constellation {
    symbols: Vec<Complex64>,
}

impl Constellation {
    /// Gray-labelled M-PSK: label `j` sits at angle `2π g⁻¹(j) / M`, where
    /// `g` is the binary-reflected Gray code. BPSK is `{+1, -1}`, QPSK is
    /// `{1, j, -j, -1}` in label order.
    pub fn psk(m: usize) -> Result<Self> {
        if m < 2 || !m.is_power_of_two() {
            return Err(Error::InvalidConfig(format!("PSK order must be a power of two >= 2, got {m}")));
        }
        let mut symbols = alloc::vec![Complex64::new(0.0, 0.0); m];
        for pos in 0..m {
            let label = pos ^ (pos >> 1);
            let theta = core::f64::consts::TAU * pos as f64 / m as f64;
            let mut z = cis(theta);
            // exact axis points for the common orders
            if abs(z.re) < 1e-15 {
                z.re = 0.0;
            }
            if abs(z.im) < 1e-15 {
                z.im = 0.0;
            }
            symbols[label] = z;
        }
        Ok(Self { symbols })
    }

    /// Arbitrary alphabet; rejected unless the mean energy is 1 within 1e-12.
    pub fn from_symbols(symbols: Vec<Complex64>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidConfig("empty constellation".into()));
        }
        let energy = symbols.iter().map(|s| s.norm_sqr()).sum::<f64>() / symbols.len() as f64;
        if abs(energy - 1.0) > 1e-12 {
            return Err(Error::InvalidConfig(format!("constellation energy {energy} is not 1")));
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[Complex64] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn mean_energy(&self) -> f64 {
        self.symbols.iter().map(|s| s.norm_sqr()).sum::<f64>() / self.symbols.len() as f64
    }
}
