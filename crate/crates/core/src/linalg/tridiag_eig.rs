//! Symmetric tridiagonal eigensolvers: implicit-shift QL for full spectra,
//! Sturm-sequence bisection for selected eigenvalues, and inverse iteration
//! for the corresponding vectors.

use super::{ColMat, SymTridiag};
use crate::error::{Error, Result};
use crate::scalar::Real;

#[inline]
fn hypot<R: Real>(a: R, b: R) -> R {
    let (a, b) = (a.abs(), b.abs());
    let (big, small) = if a > b { (a, b) } else { (b, a) };
    if big == R::zero() {
        return R::zero();
    }
    let r = small / big;
    big * (R::one() + r * r).sqrt()
}

/// Implicit-shift QL iteration (EISPACK `tql2` lineage).
///
/// On entry `d` holds the diagonal and `e` the n-1 off-diagonal entries; on
/// exit `d` holds the (unsorted) eigenvalues. If `z` is given it must be the
/// identity (or a basis transform) and accumulates the eigenvectors as
/// columns matching `d`.
pub fn tql_implicit<R: Real>(d: &mut [R], e: &mut Vec<R>, mut z: Option<&mut ColMat<R>>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    e.push(R::zero()); // pad so e[n-1] exists
    let eps = R::epsilon();

    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Look for a negligible off-diagonal to split the problem.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= eps * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::EigenFailure(format!(
                    "QL iteration failed to converge at index {l}"
                )));
            }
            // Wilkinson shift.
            let mut g = (d[l + 1] - d[l]) / (R::of(2.0) * e[l]);
            let mut r = hypot(g, R::one());
            let sign_r = if g >= R::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = R::one();
            let mut c = R::one();
            let mut p = R::zero();
            let mut underflowed = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == R::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = R::zero();
                    underflowed = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + R::of(2.0) * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zm) = z.as_deref_mut() {
                    let nrow = zm.rows();
                    for k in 0..nrow {
                        f = zm.get(k, i + 1);
                        let zk = zm.get(k, i);
                        zm.set(k, i + 1, s * zk + c * f);
                        zm.set(k, i, c * zk - s * f);
                    }
                }
            }
            if underflowed {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = R::zero();
        }
    }
    e.pop();
    Ok(())
}

/// Number of eigenvalues of `t` strictly below `x` (Sturm sequence on the
/// shifted LDL^T factorization).
pub fn sturm_count<R: Real>(t: &SymTridiag<R>, x: R) -> usize {
    let n = t.dim();
    let scale = t.spectral_radius_bound().max(R::one());
    let pivmin = R::epsilon() * R::epsilon() * scale;
    let mut count = 0usize;
    let mut q = t.diag[0] - x;
    if q.abs() < pivmin {
        q = -pivmin;
    }
    if q < R::zero() {
        count += 1;
    }
    for i in 1..n {
        let e2 = t.off[i - 1] * t.off[i - 1];
        q = t.diag[i] - x - e2 / q;
        if q.abs() < pivmin {
            q = -pivmin;
        }
        if q < R::zero() {
            count += 1;
        }
    }
    count
}

/// k-th eigenvalue (ascending, 0-based) by bisection to machine precision.
pub fn eigenvalue_k<R: Real>(t: &SymTridiag<R>, k: usize) -> R {
    let (mut lo, mut hi) = t.gershgorin();
    let scale = lo.abs().max(hi.abs()).max(R::one());
    let pad = scale * R::epsilon() * R::of(16.0);
    lo = lo - pad;
    hi = hi + pad;
    for _ in 0..120 {
        let mid = (lo + hi) * R::of(0.5);
        if sturm_count(t, mid) > k {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= scale * R::epsilon() * R::of(4.0) {
            break;
        }
    }
    (lo + hi) * R::of(0.5)
}

/// Solve (T - lambda I) x = b via tridiagonal LU with partial pivoting.
fn solve_shifted<R: Real>(t: &SymTridiag<R>, lambda: R, b: &[R]) -> Vec<R> {
    let n = t.dim();
    let scale = t.spectral_radius_bound().max(R::one());
    let pivmin = R::epsilon() * R::epsilon() * scale;
    let mut d: Vec<R> = t.diag.iter().map(|&v| v - lambda).collect();
    let mut u = vec![R::zero(); n]; // first superdiagonal, u[i] = A[i, i+1]
    let mut w = vec![R::zero(); n]; // fill-in second superdiagonal
    for i in 0..n - 1 {
        u[i] = t.off[i];
    }
    let mut x = b.to_vec();

    for i in 0..n - 1 {
        let l = t.off[i]; // A[i+1, i] before elimination of column i
        if d[i].abs() >= l.abs() {
            if d[i].abs() < pivmin {
                d[i] = if d[i] >= R::zero() { pivmin } else { -pivmin };
            }
            let m = l / d[i];
            d[i + 1] = d[i + 1] - m * u[i];
            // w[i] is zero in this branch; nothing propagates to u[i+1].
            x[i + 1] = x[i + 1] - m * x[i];
        } else {
            // Interchange rows i and i+1.
            let m = d[i] / l;
            d[i] = l;
            let old_diag_next = d[i + 1];
            d[i + 1] = u[i] - m * old_diag_next;
            if i + 1 < n - 1 {
                w[i] = u[i + 1];
                u[i + 1] = -m * u[i + 1];
            }
            u[i] = old_diag_next;
            x.swap(i, i + 1);
            x[i + 1] = x[i + 1] - m * x[i];
        }
    }

    if d[n - 1].abs() < pivmin {
        d[n - 1] = if d[n - 1] >= R::zero() { pivmin } else { -pivmin };
    }
    x[n - 1] = x[n - 1] / d[n - 1];
    if n >= 2 {
        x[n - 2] = (x[n - 2] - u[n - 2] * x[n - 1]) / d[n - 2];
    }
    for i in (0..n.saturating_sub(2)).rev() {
        x[i] = (x[i] - u[i] * x[i + 1] - w[i] * x[i + 2]) / d[i];
    }
    x
}

/// Lowest eigenpair: bisection for the eigenvalue, inverse iteration for the
/// vector, sign fixed so the largest-magnitude component is positive.
pub fn ground_eigenpair<R: Real>(t: &SymTridiag<R>) -> Result<(R, Vec<R>)> {
    let n = t.dim();
    let lambda = eigenvalue_k(t, 0);
    // Deterministic start vector with no accidental orthogonality.
    let mut v: Vec<R> = (0..n)
        .map(|i| R::one() + R::of(0.3) * R::of_usize(i % 7) - R::of(0.05) * R::of_usize(i % 3))
        .collect();
    normalize(&mut v);
    let mut residual = R::infinity();
    for _ in 0..8 {
        let mut x = solve_shifted(t, lambda, &v);
        normalize(&mut x);
        v = x;
        // Residual ||(T - lambda) v||.
        let mut tv = vec![R::zero(); n];
        t.matvec(&v, &mut tv);
        let mut r2 = R::zero();
        for i in 0..n {
            let r = tv[i] - lambda * v[i];
            r2 = r2 + r * r;
        }
        residual = r2.sqrt();
        let tol = t.spectral_radius_bound().max(R::one()) * R::epsilon() * R::of(64.0);
        if residual <= tol {
            break;
        }
    }
    if !residual.is_finite() {
        return Err(Error::EigenFailure(format!(
            "inverse iteration diverged (residual {residual:?})"
        )));
    }
    // Sign convention.
    let mut imax = 0usize;
    for i in 1..n {
        if v[i].abs() > v[imax].abs() {
            imax = i;
        }
    }
    if v[imax] < R::zero() {
        for x in &mut v {
            *x = -*x;
        }
    }
    Ok((lambda, v))
}

fn normalize<R: Real>(v: &mut [R]) {
    let mut s = R::zero();
    for &x in v.iter() {
        s = s + x * x;
    }
    let norm = s.sqrt();
    for x in v.iter_mut() {
        *x = *x / norm;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// 2x2 Hamiltonian block at N = 2, q = 0: [[0, -r2/4], [-r2/4, 1/4]]
    /// with eigenvalues -1/4 and +1/2 (by hand).
    fn small_block() -> SymTridiag<f64> {
        SymTridiag::new(vec![0.0, 0.25], vec![-(2.0f64).sqrt() / 4.0])
    }

    #[test]
    fn ql_matches_hand_eigenvalues() {
        let ev = small_block().eigenvalues().unwrap();
        assert!((ev[0] + 0.25).abs() < 1e-14);
        assert!((ev[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn bisection_matches_ql() {
        let t = small_block();
        assert!((eigenvalue_k(&t, 0) + 0.25).abs() < 1e-13);
        assert!((eigenvalue_k(&t, 1) - 0.5).abs() < 1e-13);
    }

    #[test]
    fn ground_pair_matches_hand_vector() {
        let (e0, v) = ground_eigenpair(&small_block()).unwrap();
        assert!((e0 + 0.25).abs() < 1e-13);
        assert!((v[0] - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
        assert!((v[1] - (1.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn eigen_all_reconstructs_matrix() {
        // Random-ish fixed tridiagonal, check T v_j = lambda_j v_j.
        let t = SymTridiag::new(
            vec![0.7, -1.3, 2.1, 0.4, -0.9, 1.6],
            vec![0.5, -0.8, 1.1, -0.2, 0.9],
        );
        let (evals, vecs) = t.eigen_all().unwrap();
        let n = t.dim();
        for j in 0..n {
            let v = vecs.col(j);
            let mut tv = vec![0.0f64; n];
            t.matvec(v, &mut tv);
            for i in 0..n {
                assert!((tv[i] - evals[j] * v[i]).abs() < 1e-12, "residual at ({i},{j})");
            }
        }
        // Ascending order.
        for j in 1..n {
            assert!(evals[j] >= evals[j - 1]);
        }
        // Orthonormal columns.
        for a in 0..n {
            for b in 0..n {
                let dot: f64 = vecs.col(a).iter().zip(vecs.col(b)).map(|(x, y)| x * y).sum();
                let expect = if a == b { 1.0 } else { 0.0 };
                assert!((dot - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sturm_counts_are_consistent() {
        let t = SymTridiag::new(
            vec![0.7, -1.3, 2.1, 0.4, -0.9, 1.6],
            vec![0.5, -0.8, 1.1, -0.2, 0.9],
        );
        let evals = t.eigenvalues().unwrap();
        for (k, &ev) in evals.iter().enumerate() {
            assert_eq!(sturm_count(&t, ev - 1e-9), k);
            assert_eq!(sturm_count(&t, ev + 1e-9), k + 1);
        }
    }

    #[test]
    fn solve_shifted_is_accurate() {
        let t = SymTridiag::new(vec![2.0, -1.0, 3.0, 0.5], vec![1.0, -2.0, 0.7]);
        let b = vec![1.0, 2.0, -1.0, 0.5];
        let x = solve_shifted(&t, 0.3, &b);
        // Check (T - 0.3) x = b.
        let mut tx = vec![0.0f64; 4];
        t.matvec(&x, &mut tx);
        for i in 0..4 {
            assert!((tx[i] - 0.3 * x[i] - b[i]).abs() < 1e-12);
        }
    }
}
