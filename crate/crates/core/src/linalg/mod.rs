//! Structured linear algebra used across the crate: symmetric tridiagonal
//! matrices (the Hamiltonian and every collective-spin generator we
//! exponentiate are of this form), their eigensolvers, and polynomial/Krylov
//! approximations of `exp(-i t H) v`.

mod expm;
mod jacobi;
mod tridiag_eig;

pub use expm::{chebyshev_expm, lanczos_expm, ExpmOptions};
pub use jacobi::jacobi_eigh;
pub use tridiag_eig::{eigenvalue_k, ground_eigenpair, tql_implicit};

use crate::scalar::{Cplx, Real};

/// Real symmetric tridiagonal matrix: `diag` of length n, `off` of length
/// n - 1 coupling i <-> i + 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiag<R: Real> {
    pub diag: Vec<R>,
    pub off: Vec<R>,
}

impl<R: Real> SymTridiag<R> {
    pub fn new(diag: Vec<R>, off: Vec<R>) -> Self {
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal must have length n - 1");
        Self { diag, off }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// y = T x for complex vectors.
    pub fn matvec_cplx(&self, x: &[Cplx<R>], y: &mut [Cplx<R>]) {
        let n = self.dim();
        debug_assert_eq!(x.len(), n);
        debug_assert_eq!(y.len(), n);
        for i in 0..n {
            let mut acc = x[i] * self.diag[i];
            if i > 0 {
                acc = acc + x[i - 1] * self.off[i - 1];
            }
            if i + 1 < n {
                acc = acc + x[i + 1] * self.off[i];
            }
            y[i] = acc;
        }
    }

    /// y = T x for real vectors.
    pub fn matvec(&self, x: &[R], y: &mut [R]) {
        let n = self.dim();
        for i in 0..n {
            let mut acc = x[i] * self.diag[i];
            if i > 0 {
                acc = acc + x[i - 1] * self.off[i - 1];
            }
            if i + 1 < n {
                acc = acc + x[i + 1] * self.off[i];
            }
            y[i] = acc;
        }
    }

    /// <x| T |x> for a complex unit vector.
    pub fn quadratic_form(&self, x: &[Cplx<R>]) -> R {
        let n = self.dim();
        let mut acc = R::zero();
        for i in 0..n {
            acc = acc + self.diag[i] * x[i].norm_sqr();
            if i + 1 < n {
                let cross = (x[i].conj() * x[i + 1]).re;
                acc = acc + R::of(2.0) * self.off[i] * cross;
            }
        }
        acc
    }

    /// Gershgorin bounds (lower, upper) on the spectrum.
    pub fn gershgorin(&self) -> (R, R) {
        let n = self.dim();
        let mut lo = R::infinity();
        let mut hi = R::neg_infinity();
        for i in 0..n {
            let mut radius = R::zero();
            if i > 0 {
                radius = radius + self.off[i - 1].abs();
            }
            if i + 1 < n {
                radius = radius + self.off[i].abs();
            }
            lo = lo.min(self.diag[i] - radius);
            hi = hi.max(self.diag[i] + radius);
        }
        (lo, hi)
    }

    /// Upper bound on the spectral radius.
    pub fn spectral_radius_bound(&self) -> R {
        let (lo, hi) = self.gershgorin();
        lo.abs().max(hi.abs())
    }

    /// All eigenvalues in ascending order (no eigenvectors).
    pub fn eigenvalues(&self) -> crate::error::Result<Vec<R>> {
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        tql_implicit(&mut d, &mut e, None)?;
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Ok(d)
    }

    /// Full eigendecomposition; returns eigenvalues ascending and the matrix
    /// of eigenvectors (column j belongs to eigenvalue j).
    pub fn eigen_all(&self) -> crate::error::Result<(Vec<R>, ColMat<R>)> {
        let n = self.dim();
        let mut d = self.diag.clone();
        let mut e = self.off.clone();
        let mut z = ColMat::identity(n);
        tql_implicit(&mut d, &mut e, Some(&mut z))?;
        // Sort ascending, permuting columns alongside.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| d[a].partial_cmp(&d[b]).unwrap());
        let evals: Vec<R> = order.iter().map(|&i| d[i]).collect();
        let mut sorted = ColMat::zeros(n, n);
        for (jnew, &jold) in order.iter().enumerate() {
            sorted.col_mut(jnew).copy_from_slice(z.col(jold));
        }
        Ok((evals, sorted))
    }
}

/// Minimal column-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct ColMat<R: Real> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Real> ColMat<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![R::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = R::one();
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> R {
        self.data[j * self.rows + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[j * self.rows + i] = v;
    }

    #[inline]
    pub fn col(&self, j: usize) -> &[R] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    #[inline]
    pub fn col_mut(&mut self, j: usize) -> &mut [R] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matvec_and_quadratic_form_agree() {
        let t = SymTridiag::new(vec![1.0f64, -2.0, 0.5], vec![0.3, -0.7]);
        let x = vec![
            Cplx::new(0.6, 0.1),
            Cplx::new(-0.2, 0.5),
            Cplx::new(0.3, -0.4),
        ];
        let mut y = vec![Cplx::new(0.0, 0.0); 3];
        t.matvec_cplx(&x, &mut y);
        let direct: f64 = x
            .iter()
            .zip(y.iter())
            .map(|(a, b)| (a.conj() * *b).re)
            .sum();
        assert!((t.quadratic_form(&x) - direct).abs() < 1e-14);
    }

    #[test]
    fn gershgorin_contains_eigenvalues() {
        let t = SymTridiag::new(vec![0.0f64, 0.25], vec![-(2.0f64).sqrt() / 4.0]);
        let (lo, hi) = t.gershgorin();
        let ev = t.eigenvalues().unwrap();
        for &v in &ev {
            assert!(v >= lo - 1e-14 && v <= hi + 1e-14);
        }
    }
}
