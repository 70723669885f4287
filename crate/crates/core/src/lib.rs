//! Numerical metrology of a ferromagnetic spin-1 condensate in the
//! magnetization-free sector: exact ground states and quantum Fisher
//! information across the polar, broken-axisymmetry, and Twin-Fock phases,
//! quasi-adiabatic ramp dynamics, particle-counting Fisher information under
//! detection noise, and su(1,1) parametric-amplification benchmarks.
//!
//! Everything floating-point is generic over the scalar type through
//! [`scalar::Real`] (`f64` in production, `f32` available); the exact
//! combinatorics in [`cba`] run on big rationals.
//!
//! Units: q_c = 1 (critical quadratic Zeeman shift), hbar = 1, so times are
//! in hbar/q_c and the coupling is lambda = -1/(2N).




pub mod error;

pub mod fockspace;
pub mod hamiltonian;
pub mod linalg;
pub mod metrology;
pub mod oracle;

pub mod scalar;

pub mod cba;
pub mod dynamics;
pub use error::{Error, Result};
pub use fockspace::{basis_dim, state_polar, state_twin_fock, StateKind, SystemSize};
pub use scalar::{Cplx, Real};

/// Concrete f64 aliases for the common types.
pub type SpinorState64 = fockspace::SpinorState<f64>;
pub type TridiagonalOperator64 = hamiltonian::TridiagonalOperator<f64>;
pub type GellMannCovariance64 = metrology::GellMannCovariance<f64>;
pub type Trajectory64 = dynamics::Trajectory<f64>;

/// Least-squares slope of y against x.
pub fn fit_slope<R: Real>(xs: &[R], ys: &[R]) -> R {
    assert_eq!(xs.len(), ys.len());
    let n = R::of_usize(xs.len());
    let mut sx = R::zero();
    let mut sy = R::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        sx = sx + x;
        sy = sy + y;
    }
    let (mx, my) = (sx / n, sy / n);
    let mut num = R::zero();
    let mut den = R::zero();
    for (&x, &y) in xs.iter().zip(ys) {
        num = num + (x - mx) * (y - my);
        den = den + (x - mx) * (x - mx);
    }
    num / den
}
