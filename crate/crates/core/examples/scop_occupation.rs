//! A State-Context-Property store for "N identical entities" with the
//! occupation probabilities of a fitted distribution.

use qcm::data::{scop_transition, ScopModel};
use qcm::fmt::f4;
use qcm::stats::DistParams;

fn main() -> qcm::Result<()> {
    let n = 4;
    let be = DistParams::be(0.7, n)?;
    let model = ScopModel::occupation_model(n, &be.pmf_vec())?;
    println!("ground state {}", model.ground_state());
    for ctx in model.contexts() {
        for (state, p) in scop_transition(&model, model.ground_state(), ctx)? {
            println!("  {ctx}: {state:<10} {}", f4(p));
        }
    }
    println!("{}", model.to_json());
    Ok(())
}
