//! Real-valued math routed through `num_traits::Float` so the same code
//! builds with and without `std`.

use num_traits::Float;

pub(crate) const LOG2_E: f64 = core::f64::consts::LOG2_E;
pub(crate) const LN_2: f64 = core::f64::consts::LN_2;

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    Float::sqrt(x)
}

#[inline]
pub(crate) fn exp(x: f64) -> f64 {
    Float::exp(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    Float::ln(x)
}

#[inline]
pub(crate) fn log2(x: f64) -> f64 {
    Float::log2(x)
}

#[inline]
pub(crate) fn log10(x: f64) -> f64 {
    Float::log10(x)
}

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    Float::powf(x, y)
}

#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    Float::abs(x)
}

#[inline]
pub(crate) fn cis(theta: f64) -> num_complex::Complex64 {
    num_complex::Complex64::new(Float::cos(theta), Float::sin(theta))
}

#[inline]
pub(crate) fn ceil(x: f64) -> f64 {
    Float::ceil(x)
}

/// `log(sum(exp(x)))` with the max-shift, in natural log.
pub(crate) fn log_sum_exp(xs: impl Iterator<Item = f64> + Clone) -> f64 {
    let max = xs.clone().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let s: f64 = xs.map(|x| exp(x - max)).sum();
    max + ln(s)
}
