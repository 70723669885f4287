//! Time evolution in the D = 0 ladder: quasi-adiabatic linear ramps of the
//! quadratic Zeeman shift and fixed-q quenches.
//!
//! The propagator treats the Hamiltonian as constant over each internal step
//! and applies a polynomial/Krylov approximation of the matrix exponential;
//! time dependence enters through a fourth-order commutator-free (two
//! exponential) splitting, which stays inside the tridiagonal family because
//! dH/dq is diagonal. The spectral radius grows like N q_c, so the default
//! step keeps radius * dt <= 0.5.

use crate::error::{Error, Result};
use crate::fockspace::{state_polar, SpinorState, SystemSize};
use crate::hamiltonian::{build_hamiltonian, ground_state};
use crate::linalg::{chebyshev_expm, lanczos_expm, ExpmOptions, SymTridiag};
use crate::metrology::{covariance_matrix, GellMannCovariance};
use crate::scalar::{kahan_sum, Cplx, Real};

/// Initial state of a ramp. The protocol state is |k = 0>; note that at
/// finite N it overlaps the q = 1.5 ground state only to ~0.93-0.96 (the
/// condensate is dressed by ~0.15 atom pairs), which bounds how close any
/// adiabatic ramp can stay to the instantaneous ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RampStart {
    #[default]
    Polar,
    InstantaneousGround,
}

/// Linear ramp q(t) = q_start - Q t / 4 in q_c = 1 units, stopped at q_end.
/// Q > 0 is the non-adiabaticity parameter; the total duration is
/// t_end = 4 (q_start - q_end) / Q, so stopping at q = 0 takes 6/Q and the
/// full ramp to q = -1.5 takes 12/Q (exactly twice as long).
#[derive(Debug, Clone, Copy)]
pub struct RampSchedule<R: Real> {
    pub q_start: R,
    pub rate: R,
    pub q_end: R,
    pub start: RampStart,
}

impl<R: Real> RampSchedule<R> {
    /// Standard protocol: start from |k = 0> in the polar phase at q = 1.5.
    pub fn new(rate: R, q_end: R) -> Result<Self> {
        if rate <= R::zero() {
            return Err(Error::InvalidArgument(format!(
                "non-adiabaticity Q must be positive, got {rate}"
            )));
        }
        Ok(Self {
            q_start: R::of(1.5),
            rate,
            q_end,
            start: RampStart::Polar,
        })
    }

    pub fn with_start(mut self, q_start: R) -> Self {
        self.q_start = q_start;
        self
    }

    pub fn starting_from(mut self, start: RampStart) -> Self {
        self.start = start;
        self
    }

    #[inline]
    pub fn q_at(&self, t: R) -> R {
        self.q_start - self.rate * t / R::of(4.0)
    }

    #[inline]
    pub fn t_end(&self) -> R {
        R::of(4.0) * (self.q_start - self.q_end) / self.rate
    }
}

/// How each internal exponential is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PropagatorMethod {
    /// Lanczos subspace exponential (default).
    KrylovExpm,
    /// Chebyshev polynomial expansion.
    Chebyshev,
    /// Adaptive embedded Runge-Kutta 5(4); for cross-validation at small N.
    RkAdaptive,
}

/// Internal step selection.
#[derive(Debug, Clone, Copy)]
pub enum StepControl<R: Real> {
    /// dt = fraction / (spectral radius bound); default fraction 0.5.
    SpectralRadiusFraction(R),
    /// Fixed internal dt.
    FixedDt(R),
}

#[derive(Debug, Clone, Copy)]
pub struct PropagatorConfig<R: Real> {
    pub method: PropagatorMethod,
    pub step: StepControl<R>,
    /// Local error tolerance per unit time.
    pub tol: R,
    /// Abort when | ||psi||^2 - 1 | exceeds this over a run.
    pub norm_drift_budget: R,
    /// Krylov subspace cap.
    pub m_max: usize,
    /// Also compute the overlap with the instantaneous ground state.
    pub track_ground_fidelity: bool,
}

impl<R: Real> Default for PropagatorConfig<R> {
    fn default() -> Self {
        Self {
            method: PropagatorMethod::KrylovExpm,
            step: StepControl::SpectralRadiusFraction(R::of(0.5)),
            tol: R::of(1e-10),
            norm_drift_budget: R::of(1e-8),
            m_max: 40,
            track_ground_fidelity: false,
        }
    }
}

/// One sampled point of a trajectory with its observables.
#[derive(Debug, Clone)]
pub struct Sample<R: Real> {
    pub t: R,
    pub q: R,
    pub state: SpinorState<R>,
    pub cov: GellMannCovariance<R>,
    /// <N_+ + N_-> / N.
    pub conversion: R,
    /// <H(q(t))>.
    pub energy: R,
    pub fidelity_ground: Option<R>,
    /// | ||psi||^2 - 1 | accumulated by the integrator up to this sample.
    pub norm_drift: R,
}

impl<R: Real> Sample<R> {
    /// QFI for rotations generated by Sx: 4 (A + Re B).
    pub fn qfi_sx(&self) -> R {
        R::of(4.0) * (self.cov.a + self.cov.b.re)
    }

    /// QFI for rotations generated by Jx: 4 (Delta G4)^2.
    pub fn qfi_jx(&self) -> R {
        R::of(4.0) * self.cov.var45
    }

    /// Best QFI over the (G1, G2, G6, G7) block: 4 (A + |B|).
    pub fn qfi_block_optimal(&self) -> R {
        R::of(4.0) * self.cov.lambda_plus()
    }
}

/// Time-ordered samples of one evolution.
#[derive(Debug, Clone)]
pub struct Trajectory<R: Real> {
    samples: Vec<Sample<R>>,
}

impl<R: Real> Trajectory<R> {
    #[inline]
    pub fn samples(&self) -> &[Sample<R>] {
        &self.samples
    }

    pub fn last(&self) -> &Sample<R> {
        self.samples.last().expect("trajectory has at least one sample")
    }
}

/// Conversion efficiency <N_+ + N_-> / N per sample.
pub fn conversion_efficiency<R: Real>(traj: &Trajectory<R>) -> Vec<R> {
    traj.samples().iter().map(|s| s.conversion).collect()
}

/// Diagonal split of the Hamiltonian family H(q) = T + q D, reusing buffers
/// across steps.
struct HamiltonianFamily<R: Real> {
    n: SystemSize,
    /// Diagonal at q = 0.
    diag0: Vec<R>,
    /// dH/dq diagonal: 2k.
    q_coef: Vec<R>,
    off: Vec<R>,
}

impl<R: Real> HamiltonianFamily<R> {
    fn new(n: SystemSize) -> Self {
        let h0 = build_hamiltonian(n, R::zero());
        let dim = n.basis_dim();
        let q_coef = (0..dim).map(|k| R::of(2.0) * R::of_usize(k)).collect();
        Self {
            n,
            diag0: h0.diag().to_vec(),
            q_coef,
            off: h0.offdiag().to_vec(),
        }
    }

    fn fill(&self, q: R, out: &mut SymTridiag<R>) {
        for i in 0..self.diag0.len() {
            out.diag[i] = self.diag0[i] + q * self.q_coef[i];
        }
    }

    fn fresh(&self, q: R) -> SymTridiag<R> {
        let mut t = SymTridiag::new(self.diag0.clone(), self.off.clone());
        self.fill(q, &mut t);
        t
    }

    fn radius_bound(&self, qs: &[R]) -> R {
        let mut rho = R::zero();
        for &q in qs {
            rho = rho.max(self.fresh(q).spectral_radius_bound());
        }
        rho
    }
}

// Gauss nodes and weights of the fourth-order commutator-free splitting.
fn cf4_constants<R: Real>() -> (R, R, R, R) {
    let s3 = R::of(3.0).sqrt();
    let c1 = R::of(0.5) - s3 / R::of(6.0);
    let c2 = R::of(0.5) + s3 / R::of(6.0);
    let a1 = (R::of(3.0) - R::of(2.0) * s3) / R::of(12.0);
    let a2 = (R::of(3.0) + R::of(2.0) * s3) / R::of(12.0);
    (c1, c2, a1, a2)
}

struct Engine<'a, R: Real, Q: Fn(R) -> R> {
    family: HamiltonianFamily<R>,
    q_of_t: Q,
    time_dependent: bool,
    cfg: &'a PropagatorConfig<R>,
    work: SymTridiag<R>,
}

impl<'a, R: Real, Q: Fn(R) -> R> Engine<'a, R, Q> {
    fn new(n: SystemSize, q_of_t: Q, time_dependent: bool, cfg: &'a PropagatorConfig<R>) -> Self {
        let family = HamiltonianFamily::new(n);
        let work = family.fresh(R::zero());
        Self {
            family,
            q_of_t,
            time_dependent,
            cfg,
            work,
        }
    }

    fn expm(&mut self, q: R, time: R, psi: &mut [Cplx<R>], tol: R) -> Result<()> {
        self.family.fill(q, &mut self.work);
        match self.cfg.method {
            PropagatorMethod::KrylovExpm => lanczos_expm(
                &self.work,
                time,
                psi,
                ExpmOptions {
                    m_max: self.cfg.m_max,
                    tol,
                },
            ),
            PropagatorMethod::Chebyshev => chebyshev_expm(&self.work, time, psi, tol),
            PropagatorMethod::RkAdaptive => unreachable!("RK does not factor through expm"),
        }
    }

    /// Advance over [t, t + h] with piecewise-constant exponentials.
    fn step_exponential(&mut self, t: R, h: R, psi: &mut [Cplx<R>]) -> Result<()> {
        let step_tol = (self.cfg.tol * h).max(R::epsilon());
        if !self.time_dependent {
            let q = (self.q_of_t)(t);
            return self.expm(q, h, psi, step_tol);
        }
        let (c1, c2, a1, a2) = cf4_constants::<R>();
        let q1 = (self.q_of_t)(t + c1 * h);
        let q2 = (self.q_of_t)(t + c2 * h);
        // Both factors stay in the tridiagonal family: alpha_a H(q1) +
        // alpha_b H(q2) = (1/2) H(q_eff) with q_eff a weighted average.
        let q_right = R::of(2.0) * (a2 * q1 + a1 * q2);
        let q_left = R::of(2.0) * (a1 * q1 + a2 * q2);
        let half = h * R::of(0.5);
        self.expm(q_right, half, psi, step_tol * R::of(0.5))?;
        self.expm(q_left, half, psi, step_tol * R::of(0.5))
    }

    /// Advance over [t, t + h] with the adaptive embedded RK 5(4) pair.
    fn step_rk(&mut self, t0: R, h_total: R, psi: &mut Vec<Cplx<R>>) -> Result<()> {
        let n = psi.len();
        let rhs = |engine: &mut Self, t: R, y: &[Cplx<R>], out: &mut Vec<Cplx<R>>| {
            engine.family.fill((engine.q_of_t)(t), &mut engine.work);
            out.resize(n, Cplx::new(R::zero(), R::zero()));
            engine.work.matvec_cplx(y, out);
            let mi = Cplx::new(R::zero(), -R::one());
            for v in out.iter_mut() {
                *v = *v * mi;
            }
        };
        // Dormand-Prince coefficients.
        let a: [[f64; 6]; 6] = [
            [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
            [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
            [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
            [
                19372.0 / 6561.0,
                -25360.0 / 2187.0,
                64448.0 / 6561.0,
                -212.0 / 729.0,
                0.0,
                0.0,
            ],
            [
                9017.0 / 3168.0,
                -355.0 / 33.0,
                46732.0 / 5247.0,
                49.0 / 176.0,
                -5103.0 / 18656.0,
                0.0,
            ],
            [
                35.0 / 384.0,
                0.0,
                500.0 / 1113.0,
                125.0 / 192.0,
                -2187.0 / 6784.0,
                11.0 / 84.0,
            ],
        ];
        let c: [f64; 6] = [0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
        let e: [f64; 7] = [
            71.0 / 57600.0,
            0.0,
            -71.0 / 16695.0,
            71.0 / 1920.0,
            -17253.0 / 339200.0,
            22.0 / 525.0,
            -1.0 / 40.0,
        ];

        let rho = self
            .family
            .radius_bound(&[(self.q_of_t)(t0), (self.q_of_t)(t0 + h_total)]);
        let mut h = (R::of(1.0) / rho.max(R::of(1e-12))).min(h_total);
        let mut t = R::zero();
        let mut k: Vec<Vec<Cplx<R>>> = (0..7).map(|_| Vec::new()).collect();
        let mut guard = 0usize;
        while t < h_total {
            h = h.min(h_total - t);
            let mut tmp = psi.clone();
            rhs(self, t0 + t, psi, &mut k[0]);
            for stage in 0..6 {
                for i in 0..n {
                    let mut acc = psi[i];
                    for (j, kj) in k.iter().enumerate().take(stage + 1) {
                        let coef = R::of(a[stage][j]);
                        if coef != R::zero() {
                            acc = acc + kj[i] * (coef * h);
                        }
                    }
                    tmp[i] = acc;
                }
                let ts = t0 + t + R::of(c[stage]) * h;
                let mut out = std::mem::take(&mut k[stage + 1]);
                rhs(self, ts, &tmp, &mut out);
                k[stage + 1] = out;
            }
            // 5th-order solution is the last stage input (FSAL structure).
            let mut err2 = R::zero();
            for i in 0..n {
                let mut ei = Cplx::new(R::zero(), R::zero());
                for (j, kj) in k.iter().enumerate() {
                    let coef = R::of(e[j]);
                    if coef != R::zero() {
                        ei = ei + kj[i] * coef;
                    }
                }
                err2 = err2 + ei.norm_sqr();
            }
            let err = err2.sqrt() * h;
            let tol_step = (self.cfg.tol * h).max(R::epsilon() * R::of(16.0));
            if err <= tol_step {
                *psi = tmp;
                t = t + h;
            }
            let factor = if err > R::zero() {
                R::of(0.9) * (tol_step / err).powf(R::of(0.2))
            } else {
                R::of(4.0)
            };
            h = h * factor.min(R::of(4.0)).max(R::of(0.1));
            guard += 1;
            if guard > 50_000_000 {
                return Err(Error::PropagationFailure("RK step-count overflow".into()));
            }
            if h < h_total * R::of(1e-14) {
                return Err(Error::PropagationFailure("RK step size underflow".into()));
            }
        }
        Ok(())
    }
}

fn make_sample<R: Real>(
    n: SystemSize,
    t: R,
    q: R,
    psi: &[Cplx<R>],
    cfg: &PropagatorConfig<R>,
) -> Result<Sample<R>> {
    let norm_sqr = kahan_sum(psi.iter().map(|c| c.norm_sqr()));
    let drift = (norm_sqr - R::one()).abs();
    if drift > cfg.norm_drift_budget {
        return Err(Error::PropagationFailure(format!(
            "norm drift {drift:?} exceeds budget {:?} at t = {t}",
            cfg.norm_drift_budget
        )));
    }
    let state = SpinorState::renormalized(n, psi.to_vec())?;
    let cov = covariance_matrix(&state);
    let conversion = R::of(2.0) * state.mean_side_population() / R::of_usize(n.get());
    let h = build_hamiltonian(n, q);
    let energy = h.expectation(&state);
    let fidelity_ground = if cfg.track_ground_fidelity {
        let (_, g) = ground_state(&h)?;
        Some(state.fidelity(&g)?)
    } else {
        None
    };
    Ok(Sample {
        t,
        q,
        state,
        cov,
        conversion,
        energy,
        fidelity_ground,
        norm_drift: drift,
    })
}

fn evolve_generic<R: Real, Q: Fn(R) -> R>(
    n: SystemSize,
    q_of_t: Q,
    time_dependent: bool,
    t_final: R,
    sample_count: usize,
    cfg: &PropagatorConfig<R>,
    start: RampStart,
) -> Result<Trajectory<R>> {
    if t_final < R::zero() {
        return Err(Error::InvalidArgument("t_final must be >= 0".into()));
    }
    let sample_count = sample_count.max(1);
    let mut engine = Engine::new(n, &q_of_t, time_dependent, cfg);
    let rho = engine
        .family
        .radius_bound(&[q_of_t(R::zero()), q_of_t(t_final)]);
    let h_target = match cfg.step {
        StepControl::SpectralRadiusFraction(f) => f / rho.max(R::of(1e-12)),
        StepControl::FixedDt(dt) => dt,
    };
    if !(h_target > R::zero()) {
        return Err(Error::PropagationFailure("internal step size underflow".into()));
    }

    let mut psi: Vec<Cplx<R>> = match start {
        RampStart::Polar => state_polar::<R>(n).amplitudes().to_vec(),
        RampStart::InstantaneousGround => {
            let (_, g) = ground_state(&build_hamiltonian(n, q_of_t(R::zero())))?;
            g.amplitudes().to_vec()
        }
    };
    let mut samples = Vec::with_capacity(sample_count);
    samples.push(make_sample(n, R::zero(), q_of_t(R::zero()), &psi, cfg)?);
    if t_final == R::zero() || sample_count == 1 {
        return Ok(Trajectory { samples });
    }

    let dt_sample = t_final / R::of_usize(sample_count - 1);
    for i in 1..sample_count {
        let t_prev = dt_sample * R::of_usize(i - 1);
        let t_now = dt_sample * R::of_usize(i);
        match cfg.method {
            PropagatorMethod::RkAdaptive => {
                engine.step_rk(t_prev, dt_sample, &mut psi)?;
            }
            _ => {
                let n_sub = (dt_sample / h_target)
                    .ceil()
                    .to_usize()
                    .unwrap_or(1)
                    .max(1);
                let h = dt_sample / R::of_usize(n_sub);
                for j in 0..n_sub {
                    let t = t_prev + h * R::of_usize(j);
                    engine.step_exponential(t, h, &mut psi)?;
                }
            }
        }
        samples.push(make_sample(n, t_now, q_of_t(t_now), &psi, cfg)?);
    }
    Ok(Trajectory { samples })
}

/// Quasi-adiabatic linear ramp from the polar state |k = 0> at q = q_start.
pub fn evolve_ramp<R: Real>(
    n: SystemSize,
    schedule: RampSchedule<R>,
    cfg: &PropagatorConfig<R>,
    sample_count: usize,
) -> Result<Trajectory<R>> {
    evolve_generic(
        n,
        |t| schedule.q_at(t),
        true,
        schedule.t_end(),
        sample_count,
        cfg,
        schedule.start,
    )
}

/// Fixed-q free evolution from |k = 0> (quench protocol).
pub fn evolve_quench<R: Real>(
    n: SystemSize,
    q: R,
    t_final: R,
    cfg: &PropagatorConfig<R>,
    sample_count: usize,
) -> Result<Trajectory<R>> {
    evolve_generic(n, |_| q, false, t_final, sample_count, cfg, RampStart::Polar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cba::cba_coefficients;

    fn sz(n: usize) -> SystemSize {
        SystemSize::new(n).unwrap()
    }

    #[test]
    fn schedule_time_accounting() {
        let s = RampSchedule::<f64>::new(0.1, 0.0).unwrap();
        assert!((s.t_end() - 60.0).abs() < 1e-12);
        assert!((s.q_at(0.0) - 1.5).abs() < 1e-15);
        assert!((s.q_at(s.t_end())).abs() < 1e-12);
        let s = RampSchedule::<f64>::new(0.1, -1.5).unwrap();
        assert!((s.t_end() - 120.0).abs() < 1e-12);
        assert!(RampSchedule::<f64>::new(0.0, 0.0).is_err());
    }

    #[test]
    fn quench_starts_at_polar_state_with_sql_qfi() {
        let n = sz(40);
        let traj = evolve_quench::<f64>(n, 0.4, 0.0, &PropagatorConfig::default(), 1).unwrap();
        let s0 = &traj.samples()[0];
        assert!((s0.qfi_block_optimal() - 40.0).abs() < 1e-10);
        assert_eq!(s0.conversion, 0.0);
    }

    #[test]
    fn quench_conserves_norm_and_energy() {
        let n = sz(60);
        let traj = evolve_quench(n, 0.5, 8.0, &PropagatorConfig::default(), 41).unwrap();
        let e0 = traj.samples()[0].energy;
        let scale = f64::abs(e0).max(1.0);
        for s in traj.samples() {
            assert!(s.norm_drift < 1e-10, "norm drift {}", s.norm_drift);
            assert!(
                ((s.energy - e0) / scale).abs() < 1e-8,
                "energy drift {} at t = {}",
                (s.energy - e0) / scale,
                s.t
            );
        }
        // Times strictly increasing.
        for w in traj.samples().windows(2) {
            assert!(w[1].t > w[0].t);
        }
    }

    #[test]
    fn adiabatic_ramp_preserves_eigenstate_occupations() {
        // Starting from |k=0>, the slow-ramp ground fidelity is capped by the
        // initial overlap with the q = 1.5 ground state (the polar state
        // carries a finite pair admixture at any N).
        let n = sz(8);
        let schedule = RampSchedule::new(0.005, 0.0).unwrap();
        let mut cfg = PropagatorConfig::default();
        cfg.track_ground_fidelity = true;
        let traj = evolve_ramp(n, schedule, &cfg, 9).unwrap();
        let initial_overlap = traj.samples()[0].fidelity_ground.unwrap();
        let last = traj.last();
        assert!((last.fidelity_ground.unwrap() - initial_overlap).abs() < 0.005);
        let cba = cba_coefficients::<f64>(n);
        assert!((last.state.fidelity(&cba).unwrap() - initial_overlap).abs() < 0.005);
        // Conversion efficiency approaches the exact value (1/2)(2N-2)/(2N-1).
        let expect = 0.5 * (2.0 * 8.0 - 2.0) / (2.0 * 8.0 - 1.0);
        assert!((last.conversion - expect).abs() < 0.02);
    }

    #[test]
    fn adiabatic_ramp_from_the_ground_state_stays_in_it() {
        let n = sz(8);
        let schedule = RampSchedule::new(0.005, 0.0)
            .unwrap()
            .starting_from(RampStart::InstantaneousGround);
        let mut cfg = PropagatorConfig::default();
        cfg.track_ground_fidelity = true;
        let traj = evolve_ramp(n, schedule, &cfg, 9).unwrap();
        let last = traj.last();
        assert!(last.fidelity_ground.unwrap() > 0.999);
        let cba = cba_coefficients::<f64>(n);
        assert!(last.state.fidelity(&cba).unwrap() > 0.999);
    }

    #[test]
    fn propagator_methods_agree() {
        let n = sz(12);
        let schedule = RampSchedule::new(0.8, 0.5).unwrap();
        let mut reference: Option<SpinorState<f64>> = None;
        for method in [
            PropagatorMethod::KrylovExpm,
            PropagatorMethod::Chebyshev,
            PropagatorMethod::RkAdaptive,
        ] {
            let cfg = PropagatorConfig {
                method,
                tol: 1e-12,
                ..Default::default()
            };
            let traj = evolve_ramp(n, schedule, &cfg, 5).unwrap();
            let state = traj.last().state.clone();
            if let Some(ref r) = reference {
                let fid = r.fidelity(&state).unwrap();
                assert!(1.0 - fid < 1e-9, "method {method:?}: fidelity {fid}");
            } else {
                reference = Some(state);
            }
        }
    }

    #[test]
    fn halving_dt_leaves_the_final_state_unchanged() {
        let n = sz(10);
        let schedule = RampSchedule::new(0.4, 0.0).unwrap();
        let coarse = PropagatorConfig::<f64> {
            step: StepControl::FixedDt(0.02),
            ..Default::default()
        };
        let fine = PropagatorConfig {
            step: StepControl::FixedDt(0.01),
            ..Default::default()
        };
        let a = evolve_ramp(n, schedule, &coarse, 3).unwrap();
        let b = evolve_ramp(n, schedule, &fine, 3).unwrap();
        let fid = a.last().state.fidelity(&b.last().state).unwrap();
        assert!(1.0 - fid < 1e-10, "fidelity deviation {}", 1.0 - fid);
        let dq = (a.last().qfi_sx() - b.last().qfi_sx()).abs() / b.last().qfi_sx();
        assert!(dq < 1e-8);
    }

    #[test]
    fn conversion_series_matches_samples() {
        let n = sz(20);
        let traj = evolve_quench(n, 0.5, 3.0, &PropagatorConfig::default(), 7).unwrap();
        let series = conversion_efficiency(&traj);
        assert_eq!(series.len(), 7);
        assert_eq!(series[0], 0.0);
        for (s, &c) in traj.samples().iter().zip(&series) {
            assert_eq!(s.conversion, c);
        }
    }
}
