//! Random quantum and local hidden-variable models: quantum tables stay
//! within the Tsirelson bound, local ones within the classical bound.

use qcm::hilbert::generate::{born_table, random_hidden_variable_table, random_qubit_observable, random_state};
use qcm::hilbert::expectations_from_table;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let (mut max_quantum, mut max_local) = (0.0f64, 0.0f64);
    for _ in 0..10_000 {
        let state = random_state(&mut rng);
        let a = [random_qubit_observable(&mut rng), random_qubit_observable(&mut rng)];
        let b = [random_qubit_observable(&mut rng), random_qubit_observable(&mut rng)];
        let q = expectations_from_table(&born_table(&state, a, b)).chsh.abs();
        max_quantum = max_quantum.max(q);
        let l = expectations_from_table(&random_hidden_variable_table(&mut rng)).chsh.abs();
        max_local = max_local.max(l);
    }
    println!("largest |CHSH| over 10000 random quantum models: {max_quantum:.4} (bound {:.4})", 2.0 * 2f64.sqrt());
    println!("largest |CHSH| over 10000 local hidden-variable models: {max_local:.4} (bound 2)");
}
