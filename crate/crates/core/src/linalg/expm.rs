//! Polynomial/Krylov approximations of `v <- exp(-i t T) v` for real
//! symmetric tridiagonal `T`. Both kernels substep internally so that each
//! polynomial approximation works at a modest `|t| * spectral_radius`.

use super::SymTridiag;
use crate::error::{Error, Result};
use crate::scalar::{Cplx, Real};

/// Options for a single exponential application. `tol` is the absolute
/// error budget for the whole application (split over internal substeps).
#[derive(Debug, Clone, Copy)]
pub struct ExpmOptions<R: Real> {
    pub m_max: usize,
    pub tol: R,
}

impl<R: Real> Default for ExpmOptions<R> {
    fn default() -> Self {
        Self {
            m_max: 40,
            tol: R::of(1e-13),
        }
    }
}

fn norm<R: Real>(v: &[Cplx<R>]) -> R {
    let mut s = R::zero();
    for c in v {
        s = s + c.norm_sqr();
    }
    s.sqrt()
}

/// exp(-i dt T_m) e_1 for the small Lanczos matrix given by alpha/beta.
fn small_exp_column<R: Real>(alpha: &[R], beta: &[R], dt: R) -> Result<Vec<Cplx<R>>> {
    let m = alpha.len();
    let small = SymTridiag::new(alpha.to_vec(), beta.to_vec());
    let (evals, vecs) = small.eigen_all()?;
    let mut y = vec![Cplx::new(R::zero(), R::zero()); m];
    for j in 0..m {
        let phase = Cplx::from_polar(R::one(), -dt * evals[j]);
        let w0 = vecs.get(0, j);
        for i in 0..m {
            y[i] = y[i] + phase * (w0 * vecs.get(i, j));
        }
    }
    Ok(y)
}

/// One Lanczos substep; returns Ok(true) if converged within `m_max`.
fn lanczos_single<R: Real>(
    t: &SymTridiag<R>,
    dt: R,
    v: &mut [Cplx<R>],
    m_max: usize,
    tol: R,
) -> Result<bool> {
    let n = t.dim();
    let beta0 = norm(v);
    if beta0 == R::zero() {
        return Ok(true);
    }
    let mut basis: Vec<Vec<Cplx<R>>> = Vec::with_capacity(m_max + 1);
    let mut first = v.to_vec();
    for c in &mut first {
        *c = *c / beta0;
    }
    basis.push(first);
    let mut alphas: Vec<R> = Vec::new();
    let mut betas: Vec<R> = Vec::new();
    let mut w = vec![Cplx::new(R::zero(), R::zero()); n];
    let mut y: Option<Vec<Cplx<R>>> = None;

    for j in 0..m_max {
        t.matvec_cplx(&basis[j], &mut w);
        let mut alpha = R::zero();
        for i in 0..n {
            alpha = alpha + (basis[j][i].conj() * w[i]).re;
        }
        alphas.push(alpha);
        for i in 0..n {
            w[i] = w[i] - basis[j][i] * alpha;
        }
        if j > 0 {
            let b = betas[j - 1];
            for i in 0..n {
                w[i] = w[i] - basis[j - 1][i] * b;
            }
        }
        // Full reorthogonalization keeps the propagator unitary to rounding.
        for q in &basis {
            let mut dot = Cplx::new(R::zero(), R::zero());
            for i in 0..n {
                dot = dot + q[i].conj() * w[i];
            }
            for i in 0..n {
                w[i] = w[i] - q[i] * dot;
            }
        }
        let beta = norm(&w);
        let happy = beta <= R::epsilon() * t.spectral_radius_bound().max(R::one());
        let col = small_exp_column(&alphas, &betas, dt)?;
        let err = beta * col[j].norm();
        if happy || err <= tol || j + 1 == n {
            y = Some(col);
            break;
        }
        if j + 1 < m_max {
            let mut next = w.clone();
            for c in &mut next {
                *c = *c / beta;
            }
            basis.push(next);
            betas.push(beta);
        }
    }

    let Some(y) = y else { return Ok(false) };
    for c in v.iter_mut() {
        *c = Cplx::new(R::zero(), R::zero());
    }
    for (q, &coef) in basis.iter().zip(y.iter()) {
        for i in 0..n {
            v[i] = v[i] + q[i] * (coef * beta0);
        }
    }
    Ok(true)
}

/// v <- exp(-i time T) v via adaptive Lanczos with substepping.
pub fn lanczos_expm<R: Real>(
    t: &SymTridiag<R>,
    time: R,
    v: &mut [Cplx<R>],
    opts: ExpmOptions<R>,
) -> Result<()> {
    if time == R::zero() {
        return Ok(());
    }
    let rho = t.spectral_radius_bound().max(R::of(1e-30));
    let total = time.abs();
    let mut dt_mag = (R::of(3.0) / rho).min(total);
    let sign = if time >= R::zero() { R::one() } else { -R::one() };
    let mut done = R::zero();
    let mut guard = 0usize;
    while done < total {
        let step = dt_mag.min(total - done);
        let step_tol = (opts.tol * step / total).max(R::epsilon());
        let ok = lanczos_single(t, sign * step, v, opts.m_max, step_tol)?;
        if ok {
            done = done + step;
        } else {
            dt_mag = dt_mag * R::of(0.5);
            if dt_mag < total * R::of(1e-12) {
                return Err(Error::PropagationFailure(
                    "Lanczos step size underflow".into(),
                ));
            }
        }
        guard += 1;
        if guard > 100_000_000 {
            return Err(Error::PropagationFailure("Lanczos step-count overflow".into()));
        }
    }
    Ok(())
}

/// Bessel functions J_0..J_kmax at x via Miller's downward recurrence.
pub(crate) fn bessel_j_seq<R: Real>(x: R, kmax: usize) -> Vec<R> {
    if x == R::zero() {
        let mut out = vec![R::zero(); kmax + 1];
        out[0] = R::one();
        return out;
    }
    let xa = x.abs();
    let start = {
        let base = kmax.max(xa.to_usize().unwrap_or(0)) + 1;
        base + 15 + (R::of_usize(base).sqrt().to_usize().unwrap_or(0)) * 4
    };
    let mut b_next = R::zero();
    let mut b_cur = R::of(1e-30);
    let mut out = vec![R::zero(); kmax + 1];
    let mut norm_acc = R::zero();
    let mut k = start;
    loop {
        let b_prev = R::of_usize(2 * k) / xa * b_cur - b_next;
        b_next = b_cur;
        b_cur = b_prev;
        k -= 1;
        if k <= kmax {
            out[k] = b_cur;
        }
        if k % 2 == 0 && k > 0 {
            norm_acc = norm_acc + b_cur + b_cur;
        }
        // Rescale to avoid overflow.
        if b_cur.abs() > R::of(1e250) {
            let scale = R::of(1e-250);
            b_cur = b_cur * scale;
            b_next = b_next * scale;
            norm_acc = norm_acc * scale;
            for v in out.iter_mut() {
                *v = *v * scale;
            }
        }
        if k == 0 {
            break;
        }
    }
    norm_acc = norm_acc + b_cur; // J_0 + 2 sum J_{2m} = 1
    for v in out.iter_mut() {
        *v = *v / norm_acc;
    }
    // J_k(-x) = (-1)^k J_k(x)
    if x < R::zero() {
        for (k, v) in out.iter_mut().enumerate() {
            if k % 2 == 1 {
                *v = -*v;
            }
        }
    }
    out
}

/// One Chebyshev substep with `|time| * r` modest.
fn chebyshev_single<R: Real>(t: &SymTridiag<R>, time: R, v: &mut [Cplx<R>], tol: R) {
    let n = t.dim();
    let (lo, hi) = t.gershgorin();
    let center = (lo + hi) * R::of(0.5);
    let mut radius = (hi - lo) * R::of(0.5);
    if radius <= R::zero() {
        radius = R::of(1e-30);
    }
    // Slight padding keeps the scaled spectrum inside [-1, 1].
    let r_pad = radius * R::of(1.0 + 1e-12);
    let z = time * r_pad;
    let kmax = {
        let za = z.abs().to_f64().unwrap_or(0.0);
        (za + 12.0 * za.cbrt() + 30.0).ceil() as usize
    };
    let coeffs = bessel_j_seq(z, kmax);

    // Chebyshev recurrence on phi_k = T_k(Ht) v with Ht = (T - c) / r.
    let apply_scaled = |x: &[Cplx<R>], y: &mut [Cplx<R>]| {
        t.matvec_cplx(x, y);
        for i in 0..n {
            y[i] = (y[i] - x[i] * center) / r_pad;
        }
    };
    let mut phi_prev = v.to_vec();
    let mut phi_cur = vec![Cplx::new(R::zero(), R::zero()); n];
    apply_scaled(&phi_prev, &mut phi_cur);

    let mut acc: Vec<Cplx<R>> = phi_prev.iter().map(|&c| c * coeffs[0]).collect();
    let mut below = 0usize;
    for k in 1..=kmax {
        let ik = match k % 4 {
            0 => Cplx::new(R::one(), R::zero()),
            1 => Cplx::new(R::zero(), -R::one()),
            2 => Cplx::new(-R::one(), R::zero()),
            _ => Cplx::new(R::zero(), R::one()),
        };
        let coef = ik * (R::of(2.0) * coeffs[k]);
        for i in 0..n {
            acc[i] = acc[i] + phi_cur[i] * coef;
        }
        if coeffs[k].abs() < tol * R::of(0.01) {
            below += 1;
            if below >= 3 {
                break;
            }
        } else {
            below = 0;
        }
        if k < kmax {
            // phi_{k+1} = 2 Ht phi_k - phi_{k-1}
            let mut next = vec![Cplx::new(R::zero(), R::zero()); n];
            apply_scaled(&phi_cur, &mut next);
            for i in 0..n {
                next[i] = next[i] * R::of(2.0) - phi_prev[i];
            }
            phi_prev = std::mem::replace(&mut phi_cur, next);
        }
    }
    let phase = Cplx::from_polar(R::one(), -time * center);
    for i in 0..n {
        v[i] = acc[i] * phase;
    }
}

/// v <- exp(-i time T) v via the Chebyshev propagator.
pub fn chebyshev_expm<R: Real>(
    t: &SymTridiag<R>,
    time: R,
    v: &mut [Cplx<R>],
    tol: R,
) -> Result<()> {
    if time == R::zero() {
        return Ok(());
    }
    let rho = t.spectral_radius_bound().max(R::of(1e-30));
    let total = time.abs();
    let sign = if time >= R::zero() { R::one() } else { -R::one() };
    let substeps = ((total * rho / R::of(30.0)).ceil().to_usize().unwrap_or(1)).max(1);
    let dt = total / R::of_usize(substeps);
    let step_tol = (tol / R::of_usize(substeps)).max(R::epsilon());
    for _ in 0..substeps {
        chebyshev_single(t, sign * dt, v, step_tol);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn test_matrix() -> SymTridiag<f64> {
        SymTridiag::new(
            vec![0.7, -1.3, 2.1, 0.4, -0.9, 1.6, 0.0, 3.0],
            vec![0.5, -0.8, 1.1, -0.2, 0.9, -1.5, 0.3],
        )
    }

    fn exact_exp(t: &SymTridiag<f64>, time: f64, v: &[Cplx<f64>]) -> Vec<Cplx<f64>> {
        let (evals, vecs) = t.eigen_all().unwrap();
        let n = t.dim();
        let mut out = vec![Cplx::new(0.0, 0.0); n];
        for j in 0..n {
            let mut proj = Cplx::new(0.0, 0.0);
            for i in 0..n {
                proj += Cplx::new(vecs.get(i, j), 0.0) * v[i];
            }
            let phase = Cplx::from_polar(1.0, -time * evals[j]);
            for i in 0..n {
                out[i] += Cplx::new(vecs.get(i, j), 0.0) * proj * phase;
            }
        }
        out
    }

    fn start_vec(n: usize) -> Vec<Cplx<f64>> {
        let mut v: Vec<Cplx<f64>> = (0..n)
            .map(|i| Cplx::new(1.0 / (1.0 + i as f64), 0.1 * i as f64))
            .collect();
        let s: f64 = v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= s);
        v
    }

    #[test]
    fn lanczos_matches_spectral_exponential() {
        let t = test_matrix();
        let v0 = start_vec(t.dim());
        for &time in &[0.05, 1.0, 7.3, -2.4] {
            let expected = exact_exp(&t, time, &v0);
            let mut v = v0.clone();
            lanczos_expm(&t, time, &mut v, ExpmOptions::default()).unwrap();
            for i in 0..t.dim() {
                assert!((v[i] - expected[i]).norm() < 1e-11, "time {time}, index {i}");
            }
        }
    }

    #[test]
    fn chebyshev_matches_spectral_exponential() {
        let t = test_matrix();
        let v0 = start_vec(t.dim());
        for &time in &[0.05, 1.0, 7.3, -2.4] {
            let expected = exact_exp(&t, time, &v0);
            let mut v = v0.clone();
            chebyshev_expm(&t, time, &mut v, 1e-12).unwrap();
            for i in 0..t.dim() {
                assert!((v[i] - expected[i]).norm() < 1e-10, "time {time}, index {i}");
            }
        }
    }

    #[test]
    fn propagation_is_unitary() {
        let t = test_matrix();
        let mut v = start_vec(t.dim());
        lanczos_expm(&t, 25.0, &mut v, ExpmOptions::default()).unwrap();
        let n2: f64 = v.iter().map(|c| c.norm_sqr()).sum();
        assert!((n2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bessel_sequence_matches_reference_values() {
        // Reference values for J_k(2.0) (Abramowitz & Stegun).
        let j = bessel_j_seq(2.0f64, 5);
        assert!((j[0] - 0.223890779141236).abs() < 1e-12);
        assert!((j[1] - 0.576724807756873).abs() < 1e-12);
        assert!((j[2] - 0.352834028615638).abs() < 1e-12);
        assert!((j[3] - 0.128943249474402).abs() < 1e-12);
    }
}
