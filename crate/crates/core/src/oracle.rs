//! Brute-force oracle in the full three-mode Fock space of N spin-1 atoms
//! (dimension (N+1)(N+2)/2). Everything here is dense and capped at small N;
//! it exists to validate the closed-form and tridiagonal production paths
//! against direct operator algebra.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fockspace::{ModeOccupations, SpinorState, SystemSize};
use crate::linalg::{jacobi_eigh, ColMat};
use crate::scalar::{Cplx, Real};

/// Largest N the oracle accepts by default.
pub const DEFAULT_ORACLE_CAP: usize = 20;

/// Named collective generators the oracle can build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Generator {
    /// Collective Gell-Mann operator G_i, i in 1..=8.
    GellMann(u8),
    Sx,
    Sy,
    Sz,
    Ax,
    Ay,
    Az,
    Jx,
    Jy,
    Jz,
    Lx,
    Ly,
    Lz,
}

/// The three Zeeman modes, in the storage order used throughout the oracle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Minus = 0,
    Zero = 1,
    Plus = 2,
}

/// Dense complex square matrix (column-major).
#[derive(Debug, Clone)]
pub struct CMat<R: Real> {
    n: usize,
    data: Vec<Cplx<R>>,
}

impl<R: Real> CMat<R> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Cplx::new(R::zero(), R::zero()); n * n],
        }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cplx<R> {
        self.data[j * self.n + i]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cplx<R>) {
        self.data[j * self.n + i] = v;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: Cplx<R>) {
        self.data[j * self.n + i] = self.data[j * self.n + i] + v;
    }

    pub fn scaled(mut self, s: Cplx<R>) -> Self {
        for v in &mut self.data {
            *v = *v * s;
        }
        self
    }

    pub fn plus(mut self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(other.data.iter()) {
            *a = *a + *b;
        }
        self
    }

    pub fn matvec(&self, x: &[Cplx<R>], y: &mut [Cplx<R>]) {
        let n = self.n;
        for v in y.iter_mut() {
            *v = Cplx::new(R::zero(), R::zero());
        }
        for j in 0..n {
            let xj = x[j];
            if xj.norm_sqr() == R::zero() {
                continue;
            }
            let col = &self.data[j * n..(j + 1) * n];
            for i in 0..n {
                y[i] = y[i] + col[i] * xj;
            }
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = Self::zeros(n);
        for j in 0..n {
            for k in 0..n {
                let b = other.data[j * n + k];
                if b.norm_sqr() == R::zero() {
                    continue;
                }
                let col = &self.data[k * n..(k + 1) * n];
                for i in 0..n {
                    out.data[j * n + i] = out.data[j * n + i] + col[i] * b;
                }
            }
        }
        out
    }

    /// Largest |entry| of self - other.
    pub fn max_abs_diff(&self, other: &Self) -> R {
        let mut m = R::zero();
        for (a, b) in self.data.iter().zip(other.data.iter()) {
            m = m.max((*a - *b).norm());
        }
        m
    }

    /// Largest imaginary magnitude; zero for real-entried operators.
    pub fn max_imag(&self) -> R {
        let mut m = R::zero();
        for v in &self.data {
            m = m.max(v.im.abs());
        }
        m
    }

    /// Real part as a ColMat (valid for real-entried operators).
    pub fn to_real(&self) -> ColMat<R> {
        let mut out = ColMat::zeros(self.n, self.n);
        for j in 0..self.n {
            for i in 0..self.n {
                out.set(i, j, self.get(i, j).re);
            }
        }
        out
    }
}

/// Full Fock basis of N spin-1 atoms over (m = -1, 0, +1).
pub struct FockSpace3 {
    n: SystemSize,
    states: Vec<ModeOccupations>,
    index: HashMap<(usize, usize, usize), usize>,
}

impl FockSpace3 {
    pub fn new(n: SystemSize) -> Self {
        Self::new_with_cap(n, DEFAULT_ORACLE_CAP).expect("within default cap")
    }

    pub fn new_with_cap(n: SystemSize, cap: usize) -> Result<Self> {
        if n.get() > cap {
            return Err(Error::OracleCap { n: n.get(), cap });
        }
        let total = n.get();
        let mut states = Vec::new();
        let mut index = HashMap::new();
        for n_minus in 0..=total {
            for n_zero in 0..=(total - n_minus) {
                let n_plus = total - n_minus - n_zero;
                index.insert((n_minus, n_zero, n_plus), states.len());
                states.push(ModeOccupations {
                    n_minus,
                    n_zero,
                    n_plus,
                });
            }
        }
        Ok(Self { n, states, index })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    #[inline]
    pub fn n(&self) -> SystemSize {
        self.n
    }

    #[inline]
    pub fn occupations(&self, idx: usize) -> ModeOccupations {
        self.states[idx]
    }

    #[inline]
    pub fn index_of(&self, occ: &ModeOccupations) -> usize {
        self.index[&(occ.n_minus, occ.n_zero, occ.n_plus)]
    }

    fn occ_of(&self, occ: ModeOccupations) -> usize {
        self.index[&(occ.n_minus, occ.n_zero, occ.n_plus)]
    }

    /// Dense matrix of the hopping operator a_create^dag a_destroy.
    pub fn hop<R: Real>(&self, create: Mode, destroy: Mode) -> CMat<R> {
        let mut m = CMat::zeros(self.dim());
        for (src, occ) in self.states.iter().enumerate() {
            let occs = [occ.n_minus, occ.n_zero, occ.n_plus];
            let d = destroy as usize;
            let c = create as usize;
            if occs[d] == 0 {
                continue;
            }
            let mut next = occs;
            let amp1 = R::of_usize(next[d]).sqrt();
            next[d] -= 1;
            let amp2 = R::of_usize(next[c] + 1).sqrt();
            next[c] += 1;
            let dst = self.occ_of(ModeOccupations {
                n_minus: next[0],
                n_zero: next[1],
                n_plus: next[2],
            });
            m.add_to(dst, src, Cplx::new(amp1 * amp2, R::zero()));
        }
        m
    }

    /// Diagonal number operator of one mode.
    pub fn number<R: Real>(&self, mode: Mode) -> CMat<R> {
        let mut m = CMat::zeros(self.dim());
        for (i, occ) in self.states.iter().enumerate() {
            let occs = [occ.n_minus, occ.n_zero, occ.n_plus];
            m.set(
                i,
                i,
                Cplx::new(R::of_usize(occs[mode as usize]), R::zero()),
            );
        }
        m
    }

    /// Spin-changing pair term a_+1^dag a_-1^dag a_0^2 + h.c.
    pub fn pair_exchange<R: Real>(&self) -> CMat<R> {
        let mut m = CMat::zeros(self.dim());
        for (src, occ) in self.states.iter().enumerate() {
            if occ.n_zero >= 2 {
                let amp = (R::of_usize(occ.n_zero) * R::of_usize(occ.n_zero - 1)).sqrt()
                    * R::of_usize(occ.n_minus + 1).sqrt()
                    * R::of_usize(occ.n_plus + 1).sqrt();
                let dst = self.occ_of(ModeOccupations {
                    n_minus: occ.n_minus + 1,
                    n_zero: occ.n_zero - 2,
                    n_plus: occ.n_plus + 1,
                });
                m.add_to(dst, src, Cplx::new(amp, R::zero()));
                m.add_to(src, dst, Cplx::new(amp, R::zero()));
            }
        }
        m
    }

    /// Named collective generator as a dense matrix.
    pub fn generator<R: Real>(&self, g: Generator) -> CMat<R> {
        use Mode::{Minus, Plus, Zero};
        let half = Cplx::new(R::of(0.5), R::zero());
        let minus_i_half = Cplx::new(R::zero(), -R::of(0.5));
        let inv_sqrt2 = Cplx::new(R::of(0.5).sqrt(), R::zero());
        let neg = Cplx::new(-R::one(), R::zero());
        match g {
            Generator::GellMann(i) => match i {
                1 => self
                    .hop::<R>(Minus, Zero)
                    .plus(&self.hop(Zero, Minus))
                    .scaled(half),
                2 => self
                    .hop::<R>(Minus, Zero)
                    .plus(&self.hop::<R>(Zero, Minus).scaled(neg))
                    .scaled(minus_i_half),
                3 => self
                    .number::<R>(Minus)
                    .plus(&self.number::<R>(Zero).scaled(neg))
                    .scaled(half),
                4 => self
                    .hop::<R>(Plus, Minus)
                    .plus(&self.hop(Minus, Plus))
                    .scaled(half),
                5 => self
                    .hop::<R>(Minus, Plus)
                    .plus(&self.hop::<R>(Plus, Minus).scaled(neg))
                    .scaled(minus_i_half),
                6 => self
                    .hop::<R>(Zero, Plus)
                    .plus(&self.hop(Plus, Zero))
                    .scaled(half),
                7 => self
                    .hop::<R>(Zero, Plus)
                    .plus(&self.hop::<R>(Plus, Zero).scaled(neg))
                    .scaled(minus_i_half),
                8 => {
                    let norm = Cplx::new(R::one() / (R::of(2.0) * R::of(3.0).sqrt()), R::zero());
                    self.number::<R>(Minus)
                        .plus(&self.number(Zero))
                        .plus(&self.number::<R>(Plus).scaled(Cplx::new(-R::of(2.0), R::zero())))
                        .scaled(norm)
                }
                _ => panic!("Gell-Mann index must be 1..=8"),
            },
            Generator::Sx => self
                .generator::<R>(Generator::GellMann(1))
                .plus(&self.generator(Generator::GellMann(6)))
                .scaled(inv_sqrt2),
            Generator::Sy => self
                .generator::<R>(Generator::GellMann(7))
                .plus(&self.generator::<R>(Generator::GellMann(2)).scaled(neg))
                .scaled(inv_sqrt2),
            Generator::Ax => self
                .generator::<R>(Generator::GellMann(6))
                .plus(&self.generator::<R>(Generator::GellMann(1)).scaled(neg))
                .scaled(inv_sqrt2),
            Generator::Ay => self
                .generator::<R>(Generator::GellMann(2))
                .plus(&self.generator(Generator::GellMann(7)))
                .scaled(inv_sqrt2),
            Generator::Sz | Generator::Az => {
                // S_z = N_0/2 - N_g/2, A_z = N_0/2 - N_h/2 with
                // N_{g/h} = (N_+ + N_-)/2 +- J_x.
                let quarter = Cplx::new(-R::of(0.25), R::zero());
                let base = self
                    .number::<R>(Zero)
                    .scaled(half)
                    .plus(&self.number::<R>(Plus).plus(&self.number(Minus)).scaled(quarter));
                let jx_sign = if matches!(g, Generator::Sz) {
                    -R::of(0.5)
                } else {
                    R::of(0.5)
                };
                base.plus(
                    &self
                        .generator::<R>(Generator::Jx)
                        .scaled(Cplx::new(jx_sign, R::zero())),
                )
            }
            Generator::Jx => self.generator(Generator::GellMann(4)),
            Generator::Jy => self.generator::<R>(Generator::GellMann(5)).scaled(neg),
            Generator::Jz => self
                .number::<R>(Plus)
                .plus(&self.number::<R>(Minus).scaled(neg))
                .scaled(half),
            Generator::Lx => self
                .generator::<R>(Generator::Sx)
                .scaled(Cplx::new(R::of(2.0), R::zero())),
            Generator::Ly => self
                .generator::<R>(Generator::Ay)
                .scaled(Cplx::new(R::of(2.0), R::zero())),
            Generator::Lz => self
                .generator::<R>(Generator::Jz)
                .scaled(Cplx::new(-R::of(2.0), R::zero())),
        }
    }

    /// u . G for an 8-vector in Gell-Mann coordinates.
    pub fn direction_operator<R: Real>(&self, u: &[R; 8]) -> CMat<R> {
        let mut acc = CMat::zeros(self.dim());
        for (i, &coef) in u.iter().enumerate() {
            if coef == R::zero() {
                continue;
            }
            let g = self.generator::<R>(Generator::GellMann((i + 1) as u8));
            acc = acc.plus(&g.scaled(Cplx::new(coef, R::zero())));
        }
        acc
    }

    /// The spinor Hamiltonian (q_c = 1 units) as a dense matrix.
    pub fn hamiltonian<R: Real>(&self, q: R) -> CMat<R> {
        let lambda = -R::one() / (R::of(2.0) * R::of_usize(self.n.get()));
        let mut m = self.pair_exchange::<R>().scaled(Cplx::new(lambda, R::zero()));
        for (i, occ) in self.states.iter().enumerate() {
            let n0 = R::of_usize(occ.n_zero);
            let side = R::of_usize(occ.n_plus + occ.n_minus);
            let diag = (lambda * (n0 - R::of(0.5)) + q) * side;
            m.add_to(i, i, Cplx::new(diag, R::zero()));
        }
        m
    }

    /// Sum of the two Lipkin-Meshkov-Glick pieces:
    /// 2(lambda Sx^2 - (q/3) Sz) + 2(lambda Ay^2 - (q/3) Az).
    pub fn lmg_sum<R: Real>(&self, q: R) -> CMat<R> {
        let lambda = -R::one() / (R::of(2.0) * R::of_usize(self.n.get()));
        let sx = self.generator::<R>(Generator::Sx);
        let ay = self.generator::<R>(Generator::Ay);
        let sz = self.generator::<R>(Generator::Sz);
        let az = self.generator::<R>(Generator::Az);
        let two_lambda = Cplx::new(R::of(2.0) * lambda, R::zero());
        let m2q3 = Cplx::new(-R::of(2.0) * q / R::of(3.0), R::zero());
        sx.matmul(&sx)
            .scaled(two_lambda)
            .plus(&ay.matmul(&ay).scaled(two_lambda))
            .plus(&sz.scaled(m2q3))
            .plus(&az.scaled(m2q3))
    }

    /// L^2 = Lx^2 + Ly^2 + Lz^2 of the collective pseudospin-1.
    pub fn l_squared<R: Real>(&self) -> CMat<R> {
        let lx = self.generator::<R>(Generator::Lx);
        let ly = self.generator::<R>(Generator::Ly);
        let lz = self.generator::<R>(Generator::Lz);
        lx.matmul(&lx).plus(&ly.matmul(&ly)).plus(&lz.matmul(&lz))
    }

    /// Embed a D = 0 ladder state into the full space.
    pub fn embed<R: Real>(&self, s: &SpinorState<R>) -> Vec<Cplx<R>> {
        assert_eq!(s.n(), self.n);
        let mut psi = vec![Cplx::new(R::zero(), R::zero()); self.dim()];
        for k in 0..s.dim() {
            let occ = ModeOccupations::for_ladder_index(self.n, k);
            psi[self.occ_of(occ)] = s.amplitude(k);
        }
        psi
    }

    /// <psi| Op |psi> (real part; all oracle operators are Hermitian).
    pub fn expectation<R: Real>(&self, op: &CMat<R>, psi: &[Cplx<R>]) -> R {
        let mut y = vec![Cplx::new(R::zero(), R::zero()); self.dim()];
        op.matvec(psi, &mut y);
        let mut acc = R::zero();
        for i in 0..self.dim() {
            acc = acc + (psi[i].conj() * y[i]).re;
        }
        acc
    }

    /// 4 Var(Op) on |psi> for Hermitian Op.
    pub fn variance4<R: Real>(&self, op: &CMat<R>, psi: &[Cplx<R>]) -> R {
        let mut y = vec![Cplx::new(R::zero(), R::zero()); self.dim()];
        op.matvec(psi, &mut y);
        let mut mean = R::zero();
        let mut sq = R::zero();
        for i in 0..self.dim() {
            mean = mean + (psi[i].conj() * y[i]).re;
            sq = sq + y[i].norm_sqr();
        }
        R::of(4.0) * (sq - mean * mean)
    }

    /// Probability distribution of D = N_+ - N_- over [-N, N].
    pub fn d_distribution<R: Real>(&self, psi: &[Cplx<R>]) -> Vec<R> {
        let n = self.n.get() as i64;
        let mut p = vec![R::zero(); (2 * n + 1) as usize];
        for (i, occ) in self.states.iter().enumerate() {
            let d = occ.d();
            p[(d + n) as usize] = p[(d + n) as usize] + psi[i].norm_sqr();
        }
        p
    }

    /// Diagonal phases exp(-i phi D) applied in place.
    pub fn apply_d_phase<R: Real>(&self, phi: R, psi: &mut [Cplx<R>]) {
        for (i, occ) in self.states.iter().enumerate() {
            let d = R::of(occ.d() as f64);
            psi[i] = psi[i] * Cplx::from_polar(R::one(), -phi * d);
        }
    }
}

/// Spectral decomposition of a real-entried Hermitian operator, reused
/// across rotation angles.
pub struct SpectralRotation<R: Real> {
    evals: Vec<R>,
    evecs: ColMat<R>,
}

impl<R: Real> SpectralRotation<R> {
    pub fn new(op: &CMat<R>) -> Result<Self> {
        let max_im = op.max_imag();
        if max_im > R::epsilon() * R::of(100.0) {
            return Err(Error::InvalidArgument(format!(
                "operator has imaginary entries up to {max_im:?}; spectral rotation needs a real matrix"
            )));
        }
        let (evals, evecs) = jacobi_eigh(&op.to_real())?;
        Ok(Self { evals, evecs })
    }

    /// exp(-i theta Op) |psi>.
    pub fn apply(&self, theta: R, psi: &[Cplx<R>]) -> Vec<Cplx<R>> {
        let n = self.evals.len();
        let mut out = vec![Cplx::new(R::zero(), R::zero()); n];
        for j in 0..n {
            let col = self.evecs.col(j);
            let mut proj = Cplx::new(R::zero(), R::zero());
            for i in 0..n {
                proj = proj + psi[i] * col[i];
            }
            let phase = Cplx::from_polar(R::one(), -theta * self.evals[j]);
            let w = proj * phase;
            for i in 0..n {
                out[i] = out[i] + w * col[i];
            }
        }
        out
    }
}
