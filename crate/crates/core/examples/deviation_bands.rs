//! Profile statistics of the deviation quantities across a negation
//! dataset, compared with the reference bands.

use std::fs::File;
use std::path::Path;

use qcm::classicality::{band_check, deviation_profile, profile_statistics};
use qcm::data::{parse_membership_table, TableFormat};
use qcm::fmt::f4;

fn main() -> qcm::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/synthetic_negations.csv").to_string());
    let records = parse_membership_table(File::open(&path)?, TableFormat::from_path(Path::new(&path)))?;
    let profiles = records.iter().map(deviation_profile).collect::<qcm::Result<Vec<_>>>()?;
    let stats = profile_statistics(&profiles)?;
    for (s, b) in stats.iter().zip(band_check(&stats)) {
        let r = &s.regression;
        println!(
            "{:<8} mean {}  95% CI ({}, {})  slope {}  R2 {}  band ({}, {}) {}",
            s.quantity.label(),
            f4(r.mean),
            f4(r.ci95.0),
            f4(r.ci95.1),
            f4(r.slope),
            f4(r.r2),
            f4(b.band.0),
            f4(b.band.1),
            if b.passed { "inside" } else { "outside" }
        );
    }
    Ok(())
}
