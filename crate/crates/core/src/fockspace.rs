//! Magnetization-free Fock basis and state containers.
//!
//! The dynamics of spin-changing collisions conserves `D = N_+ - N_-`, so the
//! whole library works in the `D = 0` ladder spanned by
//! `|k> = |N_- = k, N_0 = N - 2k, N_+ = k>` with `k = 0..=floor(N/2)`.

use crate::error::{Error, Result};
use crate::scalar::{kahan_sum, Cplx, Real};

/// Total atom number. At least 2; even N is only required by Twin-Fock
/// specific constructors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemSize(usize);

impl SystemSize {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::AtomCountTooSmall(n));
        }
        Ok(Self(n))
    }

    #[inline]
    pub fn get(self) -> usize {
        self.0
    }

    /// Dimension of the D = 0 ladder: floor(N/2) + 1.
    #[inline]
    pub fn basis_dim(self) -> usize {
        self.0 / 2 + 1
    }

    #[inline]
    pub fn is_even(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn require_even(self) -> Result<Self> {
        if self.is_even() {
            Ok(self)
        } else {
            Err(Error::OddAtomCount(self.0))
        }
    }
}

impl std::fmt::Display for SystemSize {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Dimension of the D = 0 basis for N atoms.
pub fn basis_dim(n: SystemSize) -> usize {
    n.basis_dim()
}

/// Occupations of the three Zeeman modes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeOccupations {
    pub n_minus: usize,
    pub n_zero: usize,
    pub n_plus: usize,
}

impl ModeOccupations {
    pub fn new(n: SystemSize, n_minus: usize, n_zero: usize, n_plus: usize) -> Result<Self> {
        if n_minus + n_zero + n_plus != n.get() {
            return Err(Error::BadOccupations {
                n_minus,
                n_zero,
                n_plus,
                n: n.get(),
            });
        }
        Ok(Self {
            n_minus,
            n_zero,
            n_plus,
        })
    }

    /// Magnetization D = N_+ - N_-.
    #[inline]
    pub fn d(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }

    /// Occupations of the ladder state |k>.
    pub fn for_ladder_index(n: SystemSize, k: usize) -> Self {
        debug_assert!(k < n.basis_dim());
        Self {
            n_minus: k,
            n_zero: n.get() - 2 * k,
            n_plus: k,
        }
    }
}

/// Which of the two interferometrically relevant reference states is meant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    /// Ground state at the center of the broken-axisymmetry phase (q = 0).
    Cba,
    /// Twin-Fock state |k = N/2>.
    TwinFock,
}

impl std::fmt::Display for StateKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StateKind::Cba => write!(f, "CBA"),
            StateKind::TwinFock => write!(f, "TF"),
        }
    }
}

/// Pure state in the D = 0 ladder. Immutable after construction; the norm is
/// checked (never silently fixed) so that integrator bugs surface instead of
/// being hidden. Use [`SpinorState::renormalized`] for propagator output.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState<R: Real> {
    n: SystemSize,
    amps: Vec<Cplx<R>>,
}

impl<R: Real> SpinorState<R> {
    /// Build a state from amplitudes over |k>, rejecting wrong length or a
    /// norm away from 1 by more than ~1e-12 (f64).
    pub fn from_amplitudes(n: SystemSize, amps: Vec<Cplx<R>>) -> Result<Self> {
        if amps.len() != n.basis_dim() {
            return Err(Error::DimensionMismatch {
                expected: n.basis_dim(),
                got: amps.len(),
            });
        }
        let norm_sqr = kahan_sum(amps.iter().map(|c| c.norm_sqr()));
        if (norm_sqr - R::one()).abs() > R::norm_tolerance() {
            return Err(Error::NotNormalized {
                norm_sqr: norm_sqr.to_f64().unwrap_or(f64::NAN),
                tol: R::norm_tolerance().to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { n, amps })
    }

    /// Build from real amplitudes.
    pub fn from_real_amplitudes(n: SystemSize, amps: Vec<R>) -> Result<Self> {
        Self::from_amplitudes(
            n,
            amps.into_iter().map(|x| Cplx::new(x, R::zero())).collect(),
        )
    }

    /// Explicitly renormalize a raw amplitude vector (propagator output).
    pub fn renormalized(n: SystemSize, mut amps: Vec<Cplx<R>>) -> Result<Self> {
        if amps.len() != n.basis_dim() {
            return Err(Error::DimensionMismatch {
                expected: n.basis_dim(),
                got: amps.len(),
            });
        }
        let norm = kahan_sum(amps.iter().map(|c| c.norm_sqr())).sqrt();
        if !norm.is_finite() || norm <= R::zero() {
            return Err(Error::NotNormalized {
                norm_sqr: (norm * norm).to_f64().unwrap_or(f64::NAN),
                tol: 0.0,
            });
        }
        for a in &mut amps {
            *a = *a / norm;
        }
        Ok(Self { n, amps })
    }

    #[inline]
    pub fn n(&self) -> SystemSize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    #[inline]
    pub fn amplitudes(&self) -> &[Cplx<R>] {
        &self.amps
    }

    #[inline]
    pub fn amplitude(&self, k: usize) -> Cplx<R> {
        self.amps[k]
    }

    pub fn norm_sqr(&self) -> R {
        kahan_sum(self.amps.iter().map(|c| c.norm_sqr()))
    }

    /// <N_+-> = <N_-> = sum_k k |c_k|^2, in [0, N/2].
    pub fn mean_side_population(&self) -> R {
        kahan_sum(
            self.amps
                .iter()
                .enumerate()
                .map(|(k, c)| R::of_usize(k) * c.norm_sqr()),
        )
    }

    /// <N_0> / N.
    pub fn mean_center_fraction(&self) -> R {
        let n = R::of_usize(self.n.get());
        (n - R::of(2.0) * self.mean_side_population()) / n
    }

    /// Squared overlap |<a|b>|^2.
    pub fn fidelity(&self, other: &Self) -> Result<R> {
        if self.n != other.n {
            return Err(Error::SystemMismatch(self.n.get(), other.n.get()));
        }
        let mut acc = Cplx::new(R::zero(), R::zero());
        for (a, b) in self.amps.iter().zip(other.amps.iter()) {
            acc = acc + a.conj() * *b;
        }
        Ok(acc.norm_sqr())
    }
}

/// Polar state |k = 0>: all atoms in m_f = 0.
pub fn state_polar<R: Real>(n: SystemSize) -> SpinorState<R> {
    let mut amps = vec![Cplx::new(R::zero(), R::zero()); n.basis_dim()];
    amps[0] = Cplx::new(R::one(), R::zero());
    SpinorState { n, amps }
}

/// Twin-Fock state |k = N/2>; N must be even.
pub fn state_twin_fock<R: Real>(n: SystemSize) -> Result<SpinorState<R>> {
    let n = n.require_even()?;
    let mut amps = vec![Cplx::new(R::zero(), R::zero()); n.basis_dim()];
    let last = n.basis_dim() - 1;
    amps[last] = Cplx::new(R::one(), R::zero());
    Ok(SpinorState { n, amps })
}

/// Fock state |k>.
pub fn state_ladder<R: Real>(n: SystemSize, k: usize) -> Result<SpinorState<R>> {
    if k >= n.basis_dim() {
        return Err(Error::IndexOutOfRange(k, n.basis_dim()));
    }
    let mut amps = vec![Cplx::new(R::zero(), R::zero()); n.basis_dim()];
    amps[k] = Cplx::new(R::one(), R::zero());
    Ok(SpinorState { n, amps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sz(n: usize) -> SystemSize {
        SystemSize::new(n).unwrap()
    }

    #[test]
    fn basis_dim_examples() {
        assert_eq!(basis_dim(sz(2)), 2);
        assert_eq!(basis_dim(sz(500)), 251);
        assert_eq!(basis_dim(sz(5)), 3);
        assert!(SystemSize::new(1).is_err());
        assert!(SystemSize::new(0).is_err());
    }

    #[test]
    fn basis_dim_counts_occupation_solutions() {
        // Number of (n_minus = k, n_zero = N - 2k, n_plus = k) solutions with
        // all occupations non-negative, by brute force.
        for n in 2..=50usize {
            let count = (0..=n)
                .filter(|&k| 2 * k <= n)
                .count();
            assert_eq!(basis_dim(sz(n)), count);
        }
    }

    #[test]
    fn polar_and_twin_fock_are_unit_fock_states() {
        let p = state_polar::<f64>(sz(4));
        assert_eq!(p.amplitude(0), Cplx::new(1.0, 0.0));
        assert_eq!(p.amplitude(1), Cplx::new(0.0, 0.0));
        assert_eq!(p.amplitude(2), Cplx::new(0.0, 0.0));

        let tf = state_twin_fock::<f64>(sz(4)).unwrap();
        assert_eq!(tf.amplitude(2), Cplx::new(1.0, 0.0));
        assert_eq!(tf.amplitude(0), Cplx::new(0.0, 0.0));

        assert!(state_twin_fock::<f64>(sz(5)).is_err());
    }

    #[test]
    fn mean_side_population_examples() {
        let tf = state_twin_fock::<f64>(sz(4)).unwrap();
        assert_eq!(tf.mean_side_population(), 2.0);
        let p = state_polar::<f64>(sz(10));
        assert_eq!(p.mean_side_population(), 0.0);

        // CBA at N = 2: c = (sqrt(2/3), sqrt(1/3)) by direct evaluation.
        let cba = SpinorState::from_real_amplitudes(
            sz(2),
            vec![(2.0f64 / 3.0).sqrt(), (1.0f64 / 3.0).sqrt()],
        )
        .unwrap();
        assert!((cba.mean_side_population() - 1.0 / 3.0).abs() < 1e-15);
        // Closed form (N/4)(2N-2)/(2N-1) at N = 2.
        assert!((cba.mean_side_population() - 0.5 * 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn fidelity_examples() {
        let p = state_polar::<f64>(sz(4));
        let tf = state_twin_fock::<f64>(sz(4)).unwrap();
        assert_eq!(p.fidelity(&p).unwrap(), 1.0);
        assert_eq!(p.fidelity(&tf).unwrap(), 0.0);

        let cba = SpinorState::from_real_amplitudes(
            sz(2),
            vec![(2.0f64 / 3.0).sqrt(), (1.0f64 / 3.0).sqrt()],
        )
        .unwrap();
        let p2 = state_polar::<f64>(sz(2));
        assert!((cba.fidelity(&p2).unwrap() - 2.0 / 3.0).abs() < 1e-15);

        assert!(p.fidelity(&p2).is_err());
    }

    #[test]
    fn construction_rejects_bad_norm_and_length() {
        let err = SpinorState::<f64>::from_real_amplitudes(sz(4), vec![0.5, 0.5, 0.5]);
        assert!(matches!(err, Err(Error::NotNormalized { .. })));
        let err = SpinorState::<f64>::from_real_amplitudes(sz(4), vec![1.0, 0.0]);
        assert!(matches!(err, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn renormalized_fixes_scale() {
        let s = SpinorState::renormalized(
            sz(4),
            vec![
                Cplx::new(2.0, 0.0),
                Cplx::new(0.0, 2.0),
                Cplx::new(1.0, 0.0),
            ],
        )
        .unwrap();
        assert!((s.norm_sqr() - 1.0f64).abs() < 1e-15);
    }

    #[test]
    fn occupations_invariants() {
        let occ = ModeOccupations::for_ladder_index(sz(10), 3);
        assert_eq!(occ.n_zero, 4);
        assert_eq!(occ.d(), 0);
        assert!(ModeOccupations::new(sz(4), 1, 1, 1).is_err());
    }

    #[test]
    fn works_with_f32_scalars() {
        let p = state_polar::<f32>(sz(6));
        assert_eq!(p.mean_side_population(), 0.0f32);
        assert!((p.norm_sqr() - 1.0).abs() < 1e-6);
    }
}
