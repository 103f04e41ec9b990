//! Check the classical conjunction, disjunction and negation conditions on
//! a handful of published membership weights.

use qcm::classicality::{check_record, deviation_profile, DEFAULT_TOLERANCE};
use qcm::data::reference;
use qcm::fmt::f4;

fn main() -> qcm::Result<()> {
    let records = [
        reference::mint(),
        reference::sunglasses(),
        reference::olive_conjunction(),
        reference::borderline_tall(),
        reference::goldfish(),
    ];
    for r in &records {
        println!("{} ({} / {})", r.exemplar, r.concept_a, r.concept_b);
        for v in check_record(r, DEFAULT_TOLERANCE)? {
            let verdict = if v.satisfied { "classical" } else { "non-classical" };
            println!("  {}: {verdict}", v.condition_set);
            for res in &v.residuals {
                println!("    {:<14} {:>8}{}", res.condition, f4(res.value), if res.violated { "  violated" } else { "" });
            }
        }
        if r.has_negation_quadruple() {
            let p = deviation_profile(r)?;
            println!("  deviation profile: {:?}", p.values().map(f4));
        }
    }
    Ok(())
}
