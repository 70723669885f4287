use spinmet_core::dynamics::*;
use spinmet_core::fockspace::SystemSize;
use spinmet_core::cba::cba_coefficients;

fn main() {
    let n = SystemSize::new(8).unwrap();
    let schedule = RampSchedule::new(0.005_f64, 0.0).unwrap();
    let mut cfg = PropagatorConfig::default();
    cfg.track_ground_fidelity = true;
    let traj = evolve_ramp(n, schedule, &cfg, 9).unwrap();
    for s in traj.samples() {
        println!("t={:8.2} q={:+.4} fid_g={:.12} conv={:.6} drift={:.2e} E={:+.8}",
            s.t, s.q, s.fidelity_ground.unwrap(), s.conversion, s.norm_drift, s.energy);
    }
    let cba = cba_coefficients::<f64>(n);
    println!("fid to CBA: {:.12}", traj.last().state.fidelity(&cba).unwrap());
}
