//! Verify the published entangled state and observables against the
//! coincidence table, and print the model file format.

use qcm::data::reference;
use qcm::hilbert::{verify_reference_model, ModelTolerances};

fn main() {
    let model = reference::animal_acts_model();
    let report = verify_reference_model(&model, &reference::animal_acts_table(), &ModelTolerances::default());
    for c in &report.checks {
        println!("{:<24} {:<5} {}", c.name, if c.passed { "pass" } else { "FAIL" }, c.detail);
    }
    for o in &report.observables {
        println!(
            "{:<5} model {:.4}  table {:.4}  operator Schmidt rank {}",
            o.measurement.to_string(),
            o.model_expectation,
            o.table_expectation,
            o.product_test.rank()
        );
    }
    println!("classification: {}", report.classification.as_deref().unwrap_or("none"));
    if std::env::args().any(|a| a == "--json") {
        println!("{}", model.to_json());
    }
}
