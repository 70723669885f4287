//! The spin-changing-collision Hamiltonian restricted to the D = 0 ladder,
//! its ground states, spectra, and gaps.
//!
//! Units: the critical quadratic Zeeman shift is the energy unit (q_c = 1,
//! hbar = 1), which fixes the ferromagnetic coupling to lambda = -1/(2N).
//! All times are in hbar/q_c.

use crate::error::Result;
use crate::fockspace::{SpinorState, SystemSize};
use crate::linalg::{eigenvalue_k, ground_eigenpair, ColMat, SymTridiag};
use crate::scalar::{Cplx, Real};

/// Unit convention: q_c = 1 identically, lambda = -q_c / (2N).
#[derive(Debug, Clone, Copy)]
pub struct CouplingConvention<R: Real> {
    pub n: SystemSize,
    /// Quadratic Zeeman shift in units of q_c.
    pub q: R,
}

impl<R: Real> CouplingConvention<R> {
    pub fn new(n: SystemSize, q: R) -> Self {
        Self { n, q }
    }

    /// Ferromagnetic coupling lambda = -1/(2N) < 0.
    #[inline]
    pub fn lambda(&self) -> R {
        -R::one() / (R::of(2.0) * R::of_usize(self.n.get()))
    }

    /// Critical shift, the energy unit: q_c = 2 N |lambda| = 1.
    #[inline]
    pub fn q_c(&self) -> R {
        R::one()
    }
}

/// Symmetric tridiagonal k-basis operator with the (N, q) it was built from.
#[derive(Debug, Clone)]
pub struct TridiagonalOperator<R: Real> {
    matrix: SymTridiag<R>,
    n: SystemSize,
    q: R,
}

impl<R: Real> TridiagonalOperator<R> {
    #[inline]
    pub fn matrix(&self) -> &SymTridiag<R> {
        &self.matrix
    }

    #[inline]
    pub fn n(&self) -> SystemSize {
        self.n
    }

    #[inline]
    pub fn q(&self) -> R {
        self.q
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    #[inline]
    pub fn diag(&self) -> &[R] {
        &self.matrix.diag
    }

    #[inline]
    pub fn offdiag(&self) -> &[R] {
        &self.matrix.off
    }

    /// <psi| H |psi> for a normalized state.
    pub fn expectation(&self, state: &SpinorState<R>) -> R {
        self.matrix.quadratic_form(state.amplitudes())
    }

    pub fn apply(&self, x: &[Cplx<R>], y: &mut [Cplx<R>]) {
        self.matrix.matvec_cplx(x, y)
    }

    pub fn spectral_radius_bound(&self) -> R {
        self.matrix.spectral_radius_bound()
    }
}

/// Matrix elements of the Hamiltonian in the |k> ladder:
/// d_k = [lambda (N - 2k - 1/2) + q] * 2k,
/// e_k = <k+1|H|k> = lambda (k+1) sqrt((N - 2k)(N - 2k - 1)).
pub fn build_hamiltonian<R: Real>(n: SystemSize, q: R) -> TridiagonalOperator<R> {
    let dim = n.basis_dim();
    let conv = CouplingConvention::new(n, q);
    let lambda = conv.lambda();
    let nf = R::of_usize(n.get());
    let mut diag = Vec::with_capacity(dim);
    let mut off = Vec::with_capacity(dim - 1);
    for k in 0..dim {
        let kf = R::of_usize(k);
        let n0 = nf - R::of(2.0) * kf;
        diag.push((lambda * (n0 - R::of(0.5)) + q) * (R::of(2.0) * kf));
        if k + 1 < dim {
            off.push(lambda * (kf + R::one()) * (n0 * (n0 - R::one())).sqrt());
        }
    }
    TridiagonalOperator {
        matrix: SymTridiag::new(diag, off),
        n,
        q,
    }
}

/// Lowest eigenpair of the Hamiltonian. The eigenvector phase is fixed so
/// that its largest-magnitude component is real positive.
pub fn ground_state<R: Real>(h: &TridiagonalOperator<R>) -> Result<(R, SpinorState<R>)> {
    let (energy, vec) = ground_eigenpair(h.matrix())?;
    let state = SpinorState::renormalized(
        h.n(),
        vec.into_iter().map(|x| Cplx::new(x, R::zero())).collect(),
    )?;
    Ok((energy, state))
}

/// Gap E_1 - E_0 between the two lowest levels at (N, q).
pub fn spectral_gap<R: Real>(n: SystemSize, q: R) -> R {
    let h = build_hamiltonian(n, q);
    let e0 = eigenvalue_k(h.matrix(), 0);
    let e1 = eigenvalue_k(h.matrix(), 1);
    e1 - e0
}

/// Full spectrum (ascending).
pub fn spectrum<R: Real>(h: &TridiagonalOperator<R>) -> Result<Vec<R>> {
    h.matrix().eigenvalues()
}

/// Full eigendecomposition of the Hamiltonian.
pub fn eigen_all<R: Real>(h: &TridiagonalOperator<R>) -> Result<(Vec<R>, ColMat<R>)> {
    h.matrix().eigen_all()
}

/// Least-squares slope of log(gap) vs log(N) at fixed q.
pub fn gap_scaling_exponent<R: Real>(sizes: &[usize], q: R) -> Result<R> {
    let mut xs = Vec::with_capacity(sizes.len());
    let mut ys = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let n = SystemSize::new(n)?;
        xs.push(R::of_usize(n.get()).ln());
        ys.push(spectral_gap(n, q).ln());
    }
    Ok(crate::fit_slope(&xs, &ys))
}
