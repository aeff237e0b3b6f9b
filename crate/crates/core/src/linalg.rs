//! Dense complex linear algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::real::sqrt;
use crate::{Error, Result};

pub type CMat = DMatrix<Complex64>;
pub type CVec = DVector<Complex64>;

pub const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };
pub const ONE: Complex64 = Complex64 { re: 1.0, im: 0.0 };

#[inline]
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `(A + A^H) / 2`.
pub fn hermitian_part(a: &CMat) -> CMat {
    (a + a.adjoint()).scale(0.5)
}

/// Largest entrywise modulus of `A - A^H`.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..a.ncols() {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Eigendecomposition of a Hermitian matrix; eigenvalues ascending.
pub struct HermitianEigen {
    pub values: DVector<f64>,
    pub vectors: CMat,
}

impl HermitianEigen {
    pub fn new(a: &CMat) -> Self {
        let eig = SymmetricEigen::new(hermitian_part(a));
        let n = eig.eigenvalues.len();
        let mut order: alloc::vec::Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let values = DVector::from_iterator(n, order.iter().map(|&i| eig.eigenvalues[i]));
        let mut vectors = CMat::zeros(n, n);
        for (dst, &src) in order.iter().enumerate() {
            vectors.set_column(dst, &eig.eigenvectors.column(src));
        }
        Self { values, vectors }
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// `U f(Λ) U^H`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        let n = self.values.len();
        let mut scaled = self.vectors.clone();
        for j in 0..n {
            let s = f(self.values[j]);
            scaled.column_mut(j).scale_mut(s);
        }
        &scaled * self.vectors.adjoint()
    }
}

pub fn min_eigenvalue(a: &CMat) -> f64 {
    HermitianEigen::new(a).min()
}

/// `A^{-1/2}` and `A^{1/2}` of a Hermitian positive definite matrix.
///
/// Fails when the smallest eigenvalue is not above `1e-12` times the largest.
pub fn inverse_sqrt_pair(a: &CMat) -> Result<(CMat, CMat)> {
    let eig = HermitianEigen::new(a);
    let (min, max) = (eig.min(), eig.max());
    if !(max > 0.0) || min <= 1e-12 * max {
        return Err(Error::IllConditioned { min, max });
    }
    Ok((eig.map(|l| 1.0 / sqrt(l)), eig.map(sqrt)))
}

/// Squared Frobenius norm.
pub fn fro2(a: &CMat) -> f64 {
    a.iter().map(|z| z.norm_sqr()).sum()
}

/// `x^H A x`, real part.
pub fn quad_form(a: &CMat, x: &CVec) -> f64 {
    x.dotc(&(a * x)).re
}

/// Column-stacked outer product `x y^H`.
pub fn outer(x: &CVec, y: &CVec) -> CMat {
    x * y.adjoint()
}
