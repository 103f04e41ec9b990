//! The general four-pair Fock model on the Goldfish data: evaluate the
//! published parameters, then fit the model from scratch with a seed.

use qcm::data::{reference, Measurement};
use qcm::fmt::f4;
use qcm::fock::reported::goldfish_params;
use qcm::fock::{fit_general_quadruple, GeneralFitOptions};

fn main() -> qcm::Result<()> {
    let goldfish = reference::goldfish();
    let (singles, observed) = goldfish.negation_quadruple()?;

    let published = goldfish_params().predict(singles);
    println!("published parameters");
    for (k, m) in Measurement::ALL.iter().enumerate() {
        println!("  {m:<5} observed {}  model {}", f4(observed[k]), f4(published[k]));
    }

    let fit = fit_general_quadruple(&goldfish, GeneralFitOptions::default())?;
    println!("\nfitted (seed {}), max residual {}", fit.options.seed, f4(fit.residual));
    for m in Measurement::ALL {
        let p = fit.params.pair(m);
        println!(
            "  {m:<5} m2 {}  alpha {}  beta {}  phi {} deg",
            f4(p.m2),
            f4(p.alpha),
            f4(p.beta),
            f4(p.phi.degrees())
        );
    }
    println!("  total interference {}", f4(fit.interference));
    Ok(())
}
