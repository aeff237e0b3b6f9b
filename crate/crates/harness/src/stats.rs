//! Sample statistics for the summaries and the paired comparisons.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use statrs::statistics::{Data, OrderStatistics, Statistics};

/// Probability levels reported for every empirical CDF.
pub const CDF_LEVELS: [f64; 5] = [0.1, 0.25, 0.5, 0.75, 0.9];

pub fn mean(xs: &[f64]) -> Option<f64> {
    (!xs.is_empty()).then(|| xs.iter().mean())
}

/// Standard error of the mean; needs two samples.
pub fn std_err(xs: &[f64]) -> Option<f64> {
    (xs.len() >= 2).then(|| xs.iter().std_dev() / (xs.len() as f64).sqrt())
}

/// Empirical quantile (median-unbiased, R type 8).
pub fn quantile(xs: &[f64], q: f64) -> Option<f64> {
    (!xs.is_empty()).then(|| Data::new(xs.to_vec()).quantile(q))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairedTest {
    pub n: usize,
    pub mean_diff: f64,
    pub t: f64,
    /// One-sided p-value for `mean(a - b) > 0`.
    pub p_value: f64,
}

/// Paired one-sided t-test of `a > b`.
///
/// All-equal differences give `p = 0` when positive and `p = 1` otherwise.
pub fn paired_t_greater(a: &[f64], b: &[f64]) -> Option<PairedTest> {
    if a.len() != b.len() || a.len() < 2 {
        return None;
    }
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    let n = d.len();
    let m = d.iter().mean();
    let sd = d.iter().std_dev();
    if !(sd > 0.0) {
        let p_value = if m > 0.0 { 0.0 } else { 1.0 };
        let t = if m > 0.0 { f64::INFINITY } else { 0.0 };
        return Some(PairedTest { n, mean_diff: m, t, p_value });
    }
    let t = m / (sd / (n as f64).sqrt());
    let dist = StudentsT::new(0.0, 1.0, (n - 1) as f64).ok()?;
    Some(PairedTest {
        n,
        mean_diff: m,
        t,
        p_value: 1.0 - dist.cdf(t),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_moments() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(mean(&xs), Some(2.5));
        let se = std_err(&xs).unwrap();
        assert!((se - (5.0f64 / 3.0).sqrt() / 2.0).abs() < 1e-12);
        assert_eq!(std_err(&[1.0]), None);
        assert_eq!(mean(&[]), None);
    }

    #[test]
    fn quantile_endpoints() {
        let xs = [3.0, 1.0, 2.0];
        assert_eq!(quantile(&xs, 0.5), Some(2.0));
        assert!(quantile(&xs, 0.0).unwrap() <= 1.0 + 1e-12);
    }

    #[test]
    fn paired_test_reference_value() {
        // d = [1, 2, 3, 4, 5]: t = 3 / (sqrt(2.5) / sqrt(5)) = 4.2426, df 4.
        let a = [2.0, 4.0, 6.0, 8.0, 10.0];
        let b = [1.0, 2.0, 3.0, 4.0, 5.0];
        let r = paired_t_greater(&a, &b).unwrap();
        assert!((r.t - 4.242640687).abs() < 1e-8);
        assert!((r.p_value - 0.006611).abs() < 1e-5, "{}", r.p_value);
        let r = paired_t_greater(&b, &a).unwrap();
        assert!(r.p_value > 0.99);
    }

    #[test]
    fn paired_test_ties() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(paired_t_greater(&a, &a).unwrap().p_value, 1.0);
        let b = [0.5, 1.5, 2.5];
        assert_eq!(paired_t_greater(&a, &b).unwrap().p_value, 0.0);
    }
}
