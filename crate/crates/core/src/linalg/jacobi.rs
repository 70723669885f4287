//! Cyclic Jacobi eigensolver for small dense real symmetric matrices. Only
//! the full-space oracles use this; the production paths stay tridiagonal.

use super::ColMat;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Eigendecomposition of a dense symmetric matrix. Returns eigenvalues in
/// ascending order with matching eigenvector columns.
pub fn jacobi_eigh<R: Real>(a: &ColMat<R>) -> Result<(Vec<R>, ColMat<R>)> {
    let n = a.rows();
    assert_eq!(n, a.cols(), "matrix must be square");
    let mut m = a.clone();
    let mut v = ColMat::identity(n);
    let scale = {
        let mut s = R::zero();
        for j in 0..n {
            for i in 0..n {
                s = s.max(m.get(i, j).abs());
            }
        }
        s.max(R::one())
    };
    let tol = R::epsilon() * scale;

    for _sweep in 0..100 {
        let mut off = R::zero();
        for j in 0..n {
            for i in 0..j {
                off = off.max(m.get(i, j).abs());
            }
        }
        if off <= tol {
            let mut evals: Vec<R> = (0..n).map(|i| m.get(i, i)).collect();
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&x, &y| evals[x].partial_cmp(&evals[y]).unwrap());
            let sorted_vals: Vec<R> = order.iter().map(|&i| evals[i]).collect();
            let mut sorted_vecs = ColMat::zeros(n, n);
            for (jnew, &jold) in order.iter().enumerate() {
                sorted_vecs.col_mut(jnew).copy_from_slice(v.col(jold));
            }
            evals = sorted_vals;
            return Ok((evals, sorted_vecs));
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = m.get(p, q);
                if apq.abs() <= tol * R::of(1e-3) {
                    continue;
                }
                let theta = (m.get(q, q) - m.get(p, p)) / (R::of(2.0) * apq);
                let t = {
                    let s = if theta >= R::zero() { R::one() } else { -R::one() };
                    s / (theta.abs() + (theta * theta + R::one()).sqrt())
                };
                let c = R::one() / (t * t + R::one()).sqrt();
                let s = t * c;
                // Update M = J^T M J on rows/cols p, q.
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    Err(Error::EigenFailure("Jacobi sweeps did not converge".into()))
}
