use spinmet_core::fockspace::{state_polar, SystemSize};
use spinmet_core::hamiltonian::{build_hamiltonian, ground_state};

fn main() {
    for n in [8usize, 20, 50, 100, 500] {
        let nn = SystemSize::new(n).unwrap();
        let (_, g) = ground_state(&build_hamiltonian::<f64>(nn, 1.5)).unwrap();
        let p = state_polar::<f64>(nn);
        println!("N={n:4}  |<k=0|gs(q=1.5)>|^2 = {:.9}", p.fidelity(&g).unwrap());
    }
}
