use spinmet_core::dynamics::*;
use spinmet_core::fockspace::SystemSize;
use spinmet_core::cba::cba_coefficients;
use spinmet_core::hamiltonian::{build_hamiltonian, ground_state};
use spinmet_core::fockspace::state_polar;

fn main() {
    let n = SystemSize::new(20).unwrap();
    // Adiabatic cap: decompose |k=0> over eigenstates at q = 1.5.
    let (_, g15) = ground_state(&build_hamiltonian::<f64>(n, 1.5)).unwrap();
    let a0sq = state_polar::<f64>(n).fidelity(&g15).unwrap();
    println!("initial |a_0|^2 at q=1.5: {a0sq:.9}");

    let schedule = RampSchedule::new(0.001_f64, 0.0).unwrap();
    let cfg = PropagatorConfig { track_ground_fidelity: true, ..Default::default() };
    let t0 = std::time::Instant::now();
    let traj = evolve_ramp(n, schedule, &cfg, 13).unwrap();
    for s in traj.samples().iter().step_by(4) {
        println!("t={:9.1} q={:+.4} fid_g={:.9} conv={:.6}", s.t, s.q, s.fidelity_ground.unwrap(), s.conversion);
    }
    let last = traj.last();
    let cba = cba_coefficients::<f64>(n);
    println!("final fidelity to CBA (polar start): {:.9}  [{:.1?}]", last.state.fidelity(&cba).unwrap(), t0.elapsed());

    // Cross-check with RK at a faster rate.
    let schedule2 = RampSchedule::new(0.01_f64, 0.0).unwrap();
    let cfg_rk = PropagatorConfig { method: PropagatorMethod::RkAdaptive, tol: 1e-11, track_ground_fidelity: true, ..Default::default() };
    let t_rk = evolve_ramp(n, schedule2, &cfg_rk, 3).unwrap();
    let t_kr = evolve_ramp(n, schedule2, &cfg, 3).unwrap();
    println!("Q=0.01 RK vs Krylov final fid_g: {:.9} vs {:.9}; cross-fidelity 1-F = {:.2e}",
        t_rk.last().fidelity_ground.unwrap(), t_kr.last().fidelity_ground.unwrap(),
        1.0 - t_rk.last().state.fidelity(&t_kr.last().state).unwrap());
}
