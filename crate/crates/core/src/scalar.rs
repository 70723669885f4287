//! Scalar abstraction: every floating-point routine in this crate is generic
//! over [`Real`], instantiated as `f64` in production and `f32` in a few
//! smoke tests. Exact combinatorics live in [`crate::cba`] on big rationals
//! and are not abstracted here.

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating-point scalar usable by the numerical kernels.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + std::fmt::Debug + std::fmt::Display + Send + Sync + 'static
{
    /// Shorthand conversion from an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal not representable in this scalar type")
    }

    /// Shorthand conversion from a `usize`.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("integer not representable in this scalar type")
    }

    /// Tolerance used for state-normalization checks; ~1e-12 for f64.
    #[inline]
    fn norm_tolerance() -> Self {
        Self::epsilon() * Self::of(5_000.0)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// Complex number over the crate scalar.
pub type Cplx<R> = num_complex::Complex<R>;

/// Compensated (Kahan) summation of an iterator of scalars.
pub fn kahan_sum<R: Real>(values: impl Iterator<Item = R>) -> R {
    let mut sum = R::zero();
    let mut comp = R::zero();
    for v in values {
        let y = v - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    sum
}

/// Table of ln(n!) for n = 0..=max, built by compensated summation of ln(i).
///
/// Absolute error stays below a few 1e-13 even for max ~ 10^4, which keeps
/// exp() of differences of entries accurate to ~1e-12 relative.
pub struct LnFactorials<R: Real> {
    table: Vec<R>,
}

impl<R: Real> LnFactorials<R> {
    pub fn up_to(max: usize) -> Self {
        let mut table = Vec::with_capacity(max + 1);
        let mut sum = R::zero();
        let mut comp = R::zero();
        table.push(R::zero());
        for i in 1..=max {
            let y = R::of_usize(i).ln() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            table.push(sum);
        }
        Self { table }
    }

    /// ln(n!)
    #[inline]
    pub fn get(&self, n: usize) -> R {
        self.table[n]
    }

    /// ln C(n, k)
    #[inline]
    pub fn ln_binomial(&self, n: usize, k: usize) -> R {
        debug_assert!(k <= n);
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ln_factorials_match_direct_products() {
        let lf = LnFactorials::<f64>::up_to(20);
        let mut fact = 1.0f64;
        for n in 1..=20usize {
            fact *= n as f64;
            assert!((lf.get(n) - fact.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn ln_binomial_small_cases() {
        let lf = LnFactorials::<f64>::up_to(10);
        assert!((lf.ln_binomial(5, 2) - 10.0f64.ln()).abs() < 1e-12);
        assert!((lf.ln_binomial(10, 5) - 252.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn kahan_handles_many_small_terms() {
        let n = 100_000;
        let s = kahan_sum((0..n).map(|_| 0.1f64));
        assert!((s - 0.1 * n as f64).abs() < 1e-9);
    }
}
