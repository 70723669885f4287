//! Exact analytics of the broken-axisymmetry ground state at q = 0: its
//! Fock coefficients, the Wick combinatorics behind them, the binomial
//! pairing identity, and closed-form observables.
//!
//! Two evaluation paths exist on purpose: exact big-rational arithmetic
//! (test oracle, N up to ~60) and log-domain floating point (production;
//! (2N)! overflows f64 factorials near N = 85).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fockspace::{SpinorState, StateKind, SystemSize};
use crate::scalar::{Cplx, LnFactorials, Real};

/// Exact rational scalar for the combinatorial identities.
pub type ExactRational = BigRational;

/// n! as a big integer.
pub fn factorial_big(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

/// Binomial coefficient C(n, k) as a big integer (0 when k > n).
pub fn binomial_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Wick combinatorial factor X(k) = N! / (2^k k! (N - 2k)!): the number of
/// ways the k annihilation operators of an arbitrary-order product pair with
/// creation operators.
pub fn wick_factor(n: SystemSize, k: usize) -> Result<ExactRational> {
    let nn = n.get();
    if 2 * k > nn {
        return Err(Error::IndexOutOfRange(k, nn / 2 + 1));
    }
    let numer = factorial_big(nn);
    let denom = BigInt::from(2u32).pow(k as u32) * factorial_big(k) * factorial_big(nn - 2 * k);
    Ok(BigRational::new(numer, denom))
}

/// Both sides of the pairing identity
/// sum_k C(m, k) C(m - k, n - 2k) 2^(n - 2k) = C(2m, n), evaluated exactly.
pub fn pairing_identity(n: usize, m: usize) -> Result<(ExactRational, ExactRational)> {
    if n > 2 * m {
        return Err(Error::InvalidArgument(format!(
            "pairing identity needs n <= 2m, got n = {n}, m = {m}"
        )));
    }
    let mut lhs = BigInt::zero();
    for k in 0..=(n / 2) {
        if k > m || n - 2 * k > m - k {
            continue;
        }
        lhs += binomial_big(m, k)
            * binomial_big(m - k, n - 2 * k)
            * BigInt::from(2u32).pow((n - 2 * k) as u32);
    }
    let rhs = binomial_big(2 * m, n);
    Ok((
        BigRational::from_integer(lhs),
        BigRational::from_integer(rhs),
    ))
}

/// Natural log of the k-th ground-state coefficient at q = 0:
/// c_k = sqrt(2^N (N!)^3 / (2N)!) / (2^k k! sqrt((N-2k)!)).
fn ln_coefficients<R: Real>(n: SystemSize) -> Vec<R> {
    let nn = n.get();
    let lf = LnFactorials::<R>::up_to(2 * nn);
    let ln2 = R::of(2.0).ln();
    let ln_prefactor = (R::of_usize(nn) * ln2 + R::of(3.0) * lf.get(nn) - lf.get(2 * nn))
        * R::of(0.5);
    (0..n.basis_dim())
        .map(|k| {
            ln_prefactor - R::of_usize(k) * ln2 - lf.get(k) - lf.get(nn - 2 * k) * R::of(0.5)
        })
        .collect()
}

/// The q = 0 ground state, evaluated in the log domain and explicitly
/// normalized. Coefficients are real positive.
pub fn cba_coefficients<R: Real>(n: SystemSize) -> SpinorState<R> {
    let amps: Vec<Cplx<R>> = ln_coefficients::<R>(n)
        .into_iter()
        .map(|ln| Cplx::new(ln.exp(), R::zero()))
        .collect();
    SpinorState::renormalized(n, amps).expect("analytic coefficients are normalizable")
}

/// Exact |c_k|^2 = 2^N (N!)^3 / ((2N)! 4^k (k!)^2 (N - 2k)!).
pub fn coefficient_sq_exact(n: SystemSize, k: usize) -> Result<ExactRational> {
    let nn = n.get();
    if 2 * k > nn {
        return Err(Error::IndexOutOfRange(k, nn / 2 + 1));
    }
    let numer = BigInt::from(2u32).pow(nn as u32) * factorial_big(nn).pow(3u32);
    let denom = factorial_big(2 * nn)
        * BigInt::from(4u32).pow(k as u32)
        * factorial_big(k).pow(2u32)
        * factorial_big(nn - 2 * k);
    Ok(BigRational::new(numer, denom))
}

/// Closed-form optimal QFI: N(N+1)/2 for the q = 0 ground state,
/// N(N+2)/2 for the Twin-Fock state (even N).
pub fn exact_qfi<R: Real>(kind: StateKind, n: SystemSize) -> Result<R> {
    let nf = R::of_usize(n.get());
    match kind {
        StateKind::Cba => Ok(nf * (nf + R::one()) / R::of(2.0)),
        StateKind::TwinFock => {
            n.require_even()?;
            Ok(nf * (nf + R::of(2.0)) / R::of(2.0))
        }
    }
}

/// Exact <N_+-> of the q = 0 ground state: (N/4)(2N-2)/(2N-1).
pub fn exact_mean_side_population_rational(n: SystemSize) -> ExactRational {
    let nn = n.get();
    BigRational::new(
        BigInt::from(nn) * BigInt::from(2 * nn - 2),
        BigInt::from(4u32) * BigInt::from(2 * nn - 1),
    )
}

pub fn exact_mean_side_population<R: Real>(n: SystemSize) -> R {
    R::of(exact_mean_side_population_rational(n).to_f64().unwrap())
}

/// 4 Var(Sx) of the q = 0 ground state from the termwise-rational sum
/// sum_k (k+1) |sqrt(N-2k) c_k + sqrt(N-2k-1) c_{k+1}|^2
///     = sum_k (k+1) P^2 (N+1)^2 / (4^(k+1) ((k+1)!)^2 (N-2k-1)!)
/// with P^2 = 2^N (N!)^3 / (2N)!. Exact; equals N(N+1)/2.
pub fn exact_sx_qfi_rational(n: SystemSize) -> ExactRational {
    let nn = n.get();
    let p_sq = BigRational::new(
        BigInt::from(2u32).pow(nn as u32) * factorial_big(nn).pow(3u32),
        factorial_big(2 * nn),
    );
    let np1_sq = BigInt::from(nn + 1) * BigInt::from(nn + 1);
    let mut acc = BigRational::zero();
    for k in 0..=((nn - 1) / 2) {
        let denom = BigInt::from(4u32).pow((k + 1) as u32)
            * factorial_big(k + 1).pow(2u32)
            * factorial_big(nn - 2 * k - 1);
        acc += BigRational::new(BigInt::from(k + 1) * &np1_sq, denom) * &p_sq;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{build_hamiltonian, ground_state};

    fn sz(n: usize) -> SystemSize {
        SystemSize::new(n).unwrap()
    }

    fn ratio(a: i64, b: i64) -> ExactRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn wick_factor_examples() {
        assert_eq!(wick_factor(sz(6), 0).unwrap(), ratio(1, 1));
        assert_eq!(wick_factor(sz(4), 1).unwrap(), ratio(6, 1));
        assert_eq!(wick_factor(sz(4), 2).unwrap(), ratio(3, 1));
        assert!(wick_factor(sz(4), 3).is_err());
    }

    /// Direct expansion of the sum over all operator orderings of k
    /// annihilators and N-k creators acting on the vacuum of one bosonic
    /// mode, tracked exactly in the unnormalized basis (a^dag)^m |0>.
    fn brute_force_wick(n: usize, k: usize) -> BigInt {
        let mut total = BigInt::zero();
        for mask in 0u32..(1u32 << n) {
            if mask.count_ones() as usize != k {
                continue;
            }
            let mut m: i64 = 0;
            let mut coeff = BigInt::one();
            let mut dead = false;
            // Bit 0 is the rightmost operator, applied first.
            for pos in 0..n {
                if (mask >> pos) & 1 == 1 {
                    if m == 0 {
                        dead = true;
                        break;
                    }
                    coeff *= BigInt::from(m);
                    m -= 1;
                } else {
                    m += 1;
                }
            }
            if !dead {
                debug_assert_eq!(m as usize, n - 2 * k);
                total += coeff;
            }
        }
        total
    }

    #[test]
    fn wick_factor_matches_operator_expansion() {
        for n in 2..=10usize {
            for k in 0..=(n / 2) {
                let expect = wick_factor(sz(n), k).unwrap();
                let got = BigRational::from_integer(brute_force_wick(n, k));
                assert_eq!(got, expect, "N={n}, k={k}");
            }
        }
    }

    #[test]
    fn pairing_identity_examples() {
        let (lhs, rhs) = pairing_identity(2, 2).unwrap();
        assert_eq!(lhs, ratio(6, 1));
        assert_eq!(lhs, rhs);
        let (lhs, rhs) = pairing_identity(0, 7).unwrap();
        assert_eq!(lhs, ratio(1, 1));
        assert_eq!(rhs, ratio(1, 1));
        assert!(pairing_identity(5, 2).is_err());
    }

    #[test]
    fn pairing_identity_exhaustive_small() {
        for m in 0..=12usize {
            for n in 0..=(2 * m) {
                let (lhs, rhs) = pairing_identity(n, m).unwrap();
                assert_eq!(lhs, rhs, "n={n}, m={m}");
            }
        }
    }

    #[test]
    fn coefficients_at_n2() {
        let s = cba_coefficients::<f64>(sz(2));
        assert!((s.amplitude(0).re - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert!((s.amplitude(1).re - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn coefficients_are_normalized_before_the_explicit_rescale() {
        for n in [2usize, 17, 150, 600, 2000] {
            let lns = ln_coefficients::<f64>(sz(n));
            let raw: f64 = lns.iter().map(|l| (2.0 * l).exp()).sum();
            assert!((raw - 1.0).abs() < 1e-10, "N={n}: raw norm {raw}");
        }
    }

    #[test]
    fn coefficients_match_exact_squares() {
        for n in [3usize, 8, 21, 40] {
            let s = cba_coefficients::<f64>(sz(n));
            for k in 0..s.dim() {
                let exact = coefficient_sq_exact(sz(n), k).unwrap().to_f64().unwrap();
                assert!(
                    (s.amplitude(k).re.powi(2) - exact).abs() < 1e-14,
                    "N={n}, k={k}"
                );
            }
        }
    }

    #[test]
    fn coefficients_match_ground_state() {
        let n = sz(100);
        let s = cba_coefficients::<f64>(n);
        let (_, g) = ground_state(&build_hamiltonian::<f64>(n, 0.0)).unwrap();
        for k in 0..s.dim() {
            assert!(
                (s.amplitude(k).re - g.amplitude(k).re).abs() < 1e-10,
                "k = {k}"
            );
        }
    }

    #[test]
    fn recursion_identity_holds_in_float() {
        // sqrt(N-2k) c_k + sqrt(N-2k-1) c_{k+1}
        //   = P (N+1) / (2^(k+1) (k+1)! sqrt((N-2k-1)!))
        for n in [5usize, 24, 151] {
            let lf = LnFactorials::<f64>::up_to(2 * n);
            let ln2 = 2.0f64.ln();
            let ln_p = 0.5 * (n as f64 * ln2 + 3.0 * lf.get(n) - lf.get(2 * n));
            let s = cba_coefficients::<f64>(sz(n));
            for k in 0..=((n - 1) / 2) {
                let c_next = if k + 1 < s.dim() { s.amplitude(k + 1).re } else { 0.0 };
                let lhs = ((n - 2 * k) as f64).sqrt() * s.amplitude(k).re
                    + ((n - 2 * k - 1) as f64).sqrt() * c_next;
                let rhs = (ln_p + ((n + 1) as f64).ln()
                    - (k + 1) as f64 * ln2
                    - lf.get(k + 1)
                    - 0.5 * lf.get(n - 2 * k - 1))
                    .exp();
                assert!((lhs - rhs).abs() < 1e-12 * rhs.max(1.0), "N={n}, k={k}");
            }
        }
    }

    #[test]
    fn exact_qfi_values() {
        assert_eq!(exact_qfi::<f64>(StateKind::Cba, sz(500)).unwrap(), 125_250.0);
        assert_eq!(
            exact_qfi::<f64>(StateKind::TwinFock, sz(500)).unwrap(),
            125_500.0
        );
        assert!(exact_qfi::<f64>(StateKind::TwinFock, sz(5)).is_err());
        // Cross-module: matches the covariance route at N = 2.
        let got = crate::metrology::qfi_direction(
            &cba_coefficients::<f64>(sz(2)),
            &crate::metrology::dir_sx(),
        )
        .unwrap();
        assert!((got - exact_qfi::<f64>(StateKind::Cba, sz(2)).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn exact_sx_qfi_is_n_n_plus_1_over_2() {
        for n in [2usize, 3, 10, 25, 41] {
            let got = exact_sx_qfi_rational(sz(n));
            let expect = BigRational::new(BigInt::from(n * (n + 1)), BigInt::from(2));
            assert_eq!(got, expect, "N = {n}");
        }
    }

    #[test]
    fn mean_side_population_closed_form() {
        assert_eq!(exact_mean_side_population_rational(sz(2)), ratio(1, 3));
        let n = sz(300);
        let s = cba_coefficients::<f64>(n);
        let got = s.mean_side_population();
        let expect = exact_mean_side_population::<f64>(n);
        assert!((got - expect).abs() < 1e-10);
        // Large-N behavior: N/4 (1 - 1/(2N) + O(1/N^2)).
        let n = 5000.0f64;
        let approx = n / 4.0 * (1.0 - 1.0 / (2.0 * n));
        let exact = (n / 4.0) * (2.0 * n - 2.0) / (2.0 * n - 1.0);
        assert!((approx - exact).abs() / exact < 1e-7);
    }

    #[test]
    fn negative_values_never_appear() {
        let x = exact_sx_qfi_rational(sz(30));
        assert!(x.is_positive());
    }
}
