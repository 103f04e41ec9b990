//! Fit the two-sector Fock-space model to overextended and underextended
//! combinations and show how the choice of policy moves along the family
//! of exact solutions.

use qcm::data::reference;
use qcm::fmt::f4;
use qcm::fock::{evaluate, fit_two_sector, interference_magnitude, Connective, FitPolicy};

fn main() -> qcm::Result<()> {
    let cases = [
        (reference::mint(), Connective::And),
        (reference::sunglasses(), Connective::Or),
        (reference::olive_conjunction(), Connective::And),
        (reference::olive_disjunction(), Connective::Or),
    ];
    for (r, conn) in cases {
        let target = match conn {
            Connective::And => r.mu_a_and_b.unwrap(),
            Connective::Or => r.mu_a_or_b.unwrap(),
        };
        println!(
            "{} {conn}: muA = {}, muB = {}, target = {}, |interference| bound = {}",
            r.exemplar,
            f4(r.mu_a),
            f4(r.mu_b),
            f4(target),
            f4(interference_magnitude(r.mu_a, r.mu_b))
        );
        for policy in [FitPolicy::MinInterference, FitPolicy::MaxLogical, FitPolicy::FixedSectorWeight { m2: 0.1 }] {
            let fit = fit_two_sector(r.mu_a, r.mu_b, target, conn, policy)?;
            let model = evaluate(r.mu_a, r.mu_b, &fit.params)?;
            println!(
                "  {:<28} m2 = {}  theta = {:>8} deg  model = {}  feasible = {}",
                policy.to_string(),
                f4(fit.params.m2),
                f4(fit.params.theta.degrees()),
                f4(model.value),
                fit.feasible
            );
        }
        match fit_two_sector(r.mu_a, r.mu_b, target, conn, FitPolicy::MinInterference)?.family {
            Some(family) => println!("  exact solutions: {family}"),
            None => println!("  no exact solution; closest attainable value reported"),
        }
    }
    Ok(())
}
