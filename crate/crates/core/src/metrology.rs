//! Quantum Fisher information of D = 0 states through the closed-form
//! covariance matrix of the eight collective Gell-Mann generators. The
//! covariance is block diagonal: a 4x4 block over (G1, G2, G6, G7), a 2x2
//! block over (G3, G8), and scalar variances of G4 and G5. All blocks follow
//! from O(dim) sums over the ladder amplitudes, which keeps N ~ 10^4
//! feasible; the dense full-space route exists only as an oracle.

use crate::error::{Error, Result};
use crate::fockspace::{SpinorState, SystemSize};
use crate::oracle::{FockSpace3, Generator};
use crate::scalar::{kahan_sum, Cplx, Real};

/// Relative tolerance used when reporting degenerate optimal directions.
const DEGENERACY_RTOL: f64 = 1e-9;

/// The two closed-form ingredients of the (G1, G2, G6, G7) block:
/// A = (N + sum_k |c_k|^2 k (2N - 4k - 1)) / 4,
/// B = (1/2) sum_k c_k^* c_{k+1} (k+1) sqrt((N-2k)(N-2k-1)).
pub fn coefficients_ab<R: Real>(s: &SpinorState<R>) -> (R, Cplx<R>) {
    let n = s.n().get();
    let nf = R::of_usize(n);
    let a_sum = kahan_sum(s.amplitudes().iter().enumerate().map(|(k, c)| {
        let kf = R::of_usize(k);
        c.norm_sqr() * kf * (R::of(2.0) * nf - R::of(4.0) * kf - R::one())
    }));
    let a = (nf + a_sum) / R::of(4.0);

    let mut b = Cplx::new(R::zero(), R::zero());
    for k in 0..s.dim().saturating_sub(1) {
        let kf = R::of_usize(k);
        let weight = (kf + R::one())
            * ((nf - R::of(2.0) * kf) * (nf - R::of(2.0) * kf - R::one())).sqrt();
        b = b + s.amplitude(k).conj() * s.amplitude(k + 1) * weight;
    }
    b = b * R::of(0.5);
    (a, b)
}

/// Block-diagonal covariance matrix of the collective Gell-Mann vector for a
/// pure D = 0 state, stored through its analytic ingredients.
#[derive(Debug, Clone)]
pub struct GellMannCovariance<R: Real> {
    pub n: SystemSize,
    /// Diagonal of the 4x4 block.
    pub a: R,
    /// Coherence of the 4x4 block.
    pub b: Cplx<R>,
    /// Nonzero eigenvalue of the (G3, G8) block: 3 Var(k).
    pub lambda1: R,
    /// (Delta G4)^2 = (Delta G5)^2 = (1/2) sum_k |c_k|^2 k (k+1).
    pub var45: R,
}

impl<R: Real> GellMannCovariance<R> {
    /// Doubly degenerate top eigenvalue of the 4x4 block: A + |B|.
    #[inline]
    pub fn lambda_plus(&self) -> R {
        self.a + self.b.norm()
    }

    /// Doubly degenerate bottom eigenvalue of the 4x4 block: A - |B|.
    #[inline]
    pub fn lambda_minus(&self) -> R {
        self.a - self.b.norm()
    }

    /// 4x4 block over (G1, G2, G6, G7).
    pub fn block4(&self) -> [[R; 4]; 4] {
        let (br, bi) = (self.b.re, self.b.im);
        let a = self.a;
        let z = R::zero();
        [
            [a, z, br, bi],
            [z, a, -bi, br],
            [br, -bi, a, z],
            [bi, br, z, a],
        ]
    }

    /// 2x2 block over (G3, G8): lambda1 * u1 u1^T with u1 = (sqrt3, -1)/2.
    pub fn block2(&self) -> [[R; 2]; 2] {
        let l = self.lambda1;
        let s3 = R::of(3.0).sqrt();
        [
            [l * R::of(0.75), -l * s3 / R::of(4.0)],
            [-l * s3 / R::of(4.0), l * R::of(0.25)],
        ]
    }

    /// Orthonormal eigenvectors of the 4x4 block for lambda_plus, in
    /// (G1, G2, G6, G7) coordinates. For B = 0 the block is A*I and the
    /// canonical basis is returned.
    pub fn plus_eigenvectors4(&self) -> Vec<[R; 4]> {
        let babs = self.b.norm();
        let z = R::zero();
        if babs <= R::epsilon() * self.a.abs().max(R::one()) {
            return vec![
                [R::one(), z, z, z],
                [z, R::one(), z, z],
                [z, z, R::one(), z],
                [z, z, z, R::one()],
            ];
        }
        let norm = R::one() / (R::of(2.0).sqrt() * babs);
        let (br, bi) = (self.b.re, self.b.im);
        vec![
            [bi * norm, br * norm, z, babs * norm],
            [br * norm, -bi * norm, babs * norm, z],
        ]
    }

    /// Full 8x8 matrix in the (G1..G8) ordering.
    pub fn to_matrix(&self) -> [[R; 8]; 8] {
        let mut m = [[R::zero(); 8]; 8];
        // (G1, G2, G6, G7) occupy indices 0, 1, 5, 6.
        let map4 = [0usize, 1, 5, 6];
        let b4 = self.block4();
        for (bi, &i) in map4.iter().enumerate() {
            for (bj, &j) in map4.iter().enumerate() {
                m[i][j] = b4[bi][bj];
            }
        }
        // (G3, G8) occupy indices 2, 7.
        let b2 = self.block2();
        let map2 = [2usize, 7];
        for (bi, &i) in map2.iter().enumerate() {
            for (bj, &j) in map2.iter().enumerate() {
                m[i][j] = b2[bi][bj];
            }
        }
        m[3][3] = self.var45;
        m[4][4] = self.var45;
        m
    }
}

/// Covariance matrix of a normalized D = 0 state from the closed forms.
pub fn covariance_matrix<R: Real>(s: &SpinorState<R>) -> GellMannCovariance<R> {
    let (a, b) = coefficients_ab(s);
    let mean_k = s.mean_side_population();
    let mean_k2 = kahan_sum(
        s.amplitudes()
            .iter()
            .enumerate()
            .map(|(k, c)| c.norm_sqr() * R::of_usize(k) * R::of_usize(k)),
    );
    let lambda1 = R::of(3.0) * (mean_k2 - mean_k * mean_k);
    let var45 = kahan_sum(s.amplitudes().iter().enumerate().map(|(k, c)| {
        c.norm_sqr() * R::of_usize(k) * (R::of_usize(k) + R::one())
    })) * R::of(0.5);
    GellMannCovariance {
        n: s.n(),
        a,
        b,
        lambda1,
        var45,
    }
}

/// Direction constants in Gell-Mann coordinates.
pub fn dir_sx<R: Real>() -> [R; 8] {
    let h = R::of(0.5).sqrt();
    let z = R::zero();
    [h, z, z, z, z, h, z, z]
}

pub fn dir_ay<R: Real>() -> [R; 8] {
    let h = R::of(0.5).sqrt();
    let z = R::zero();
    [z, h, z, z, z, z, h, z]
}

pub fn dir_sy<R: Real>() -> [R; 8] {
    let h = R::of(0.5).sqrt();
    let z = R::zero();
    [z, -h, z, z, z, z, h, z]
}

pub fn dir_jx<R: Real>() -> [R; 8] {
    let mut u = [R::zero(); 8];
    u[3] = R::one();
    u
}

pub fn dir_jy<R: Real>() -> [R; 8] {
    let mut u = [R::zero(); 8];
    u[4] = -R::one();
    u
}

/// QFI for the rotation generated by u . G: 4 u^T Gamma u. Rejects non-unit u.
pub fn qfi_direction<R: Real>(s: &SpinorState<R>, u: &[R; 8]) -> Result<R> {
    let norm_sqr = u.iter().fold(R::zero(), |acc, &x| acc + x * x);
    if (norm_sqr - R::one()).abs() > R::of(1e-9) {
        return Err(Error::NotUnitDirection(
            norm_sqr.sqrt().to_f64().unwrap_or(f64::NAN),
        ));
    }
    let gamma = covariance_matrix(s).to_matrix();
    let mut quad = R::zero();
    for i in 0..8 {
        for j in 0..8 {
            quad = quad + u[i] * gamma[i][j] * u[j];
        }
    }
    Ok(R::of(4.0) * quad)
}

/// QFI along Sx without assembling the 8x8 matrix: 4 (A + Re B).
pub fn qfi_sx<R: Real>(s: &SpinorState<R>) -> R {
    let (a, b) = coefficients_ab(s);
    R::of(4.0) * (a + b.re)
}

/// QFI along Jx: 4 (Delta G4)^2.
pub fn qfi_jx<R: Real>(s: &SpinorState<R>) -> R {
    let var45 = kahan_sum(s.amplitudes().iter().enumerate().map(|(k, c)| {
        c.norm_sqr() * R::of_usize(k) * (R::of_usize(k) + R::one())
    })) * R::of(0.5);
    R::of(4.0) * var45
}

/// Best QFI over the (G1, G2, G6, G7) block: 4 (A + |B|).
pub fn qfi_block_optimal<R: Real>(s: &SpinorState<R>) -> R {
    let (a, b) = coefficients_ab(s);
    R::of(4.0) * (a + b.norm())
}

/// Which covariance family carries an optimal direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionFamily {
    /// (G1, G2, G6, G7) block, eigenvalue A + |B| (Sx/Ay-like pair).
    BlockPlus,
    /// (G3, G8) block, eigenvalue 3 Var(k).
    Block38,
    /// G4 / G5 variances (Jx/Jy pair).
    Pair45,
}

/// Maximal QFI over all rotation directions, with the degenerate set of
/// optimal unit vectors in Gell-Mann coordinates.
#[derive(Debug, Clone)]
pub struct OptimalRotation<R: Real> {
    pub qfi: R,
    pub directions: Vec<[R; 8]>,
    pub families: Vec<DirectionFamily>,
}

/// Maximal QFI: 4 max(lambda_plus, lambda1, var45), with every direction
/// family within relative 1e-9 of the maximum reported.
pub fn qfi_optimal<R: Real>(s: &SpinorState<R>) -> OptimalRotation<R> {
    let cov = covariance_matrix(s);
    let lp = cov.lambda_plus();
    let top = lp.max(cov.lambda1).max(cov.var45);
    let tol = top * R::of(DEGENERACY_RTOL);

    let mut directions: Vec<[R; 8]> = Vec::new();
    let mut families = Vec::new();
    if lp >= top - tol {
        let map4 = [0usize, 1, 5, 6];
        for v4 in cov.plus_eigenvectors4() {
            let mut u = [R::zero(); 8];
            for (bi, &i) in map4.iter().enumerate() {
                u[i] = v4[bi];
            }
            directions.push(u);
            families.push(DirectionFamily::BlockPlus);
        }
    }
    if cov.var45 >= top - tol {
        directions.push(dir_jx());
        families.push(DirectionFamily::Pair45);
        directions.push(dir_jy());
        families.push(DirectionFamily::Pair45);
    }
    if cov.lambda1 >= top - tol {
        let mut u = [R::zero(); 8];
        u[2] = R::of(3.0).sqrt() / R::of(2.0);
        u[7] = -R::one() / R::of(2.0);
        directions.push(u);
        families.push(DirectionFamily::Block38);
    }
    OptimalRotation {
        qfi: R::of(4.0) * top,
        directions,
        families,
    }
}

/// Full-space variance oracle: builds the named generator as a dense matrix
/// in the (N+1)(N+2)/2-dimensional three-mode space, embeds the state, and
/// returns 4 Var. Capped at small N.
pub fn full_space_variance_oracle<R: Real>(s: &SpinorState<R>, g: Generator) -> Result<R> {
    full_space_variance_oracle_with_cap(s, g, crate::oracle::DEFAULT_ORACLE_CAP)
}

pub fn full_space_variance_oracle_with_cap<R: Real>(
    s: &SpinorState<R>,
    g: Generator,
    cap: usize,
) -> Result<R> {
    let fs = FockSpace3::new_with_cap(s.n(), cap)?;
    let op = fs.generator::<R>(g);
    let psi = fs.embed(s);
    Ok(fs.variance4(&op, &psi))
}

/// Full-space 4 Var(u . G) for an arbitrary Gell-Mann direction.
pub fn full_space_direction_oracle<R: Real>(s: &SpinorState<R>, u: &[R; 8]) -> Result<R> {
    let fs = FockSpace3::new_with_cap(s.n(), crate::oracle::DEFAULT_ORACLE_CAP)?;
    let op = fs.direction_operator(u);
    let psi = fs.embed(s);
    Ok(fs.variance4(&op, &psi))
}
