//! Fit Maxwell-Boltzmann and Bose-Einstein distributions to count data and
//! compare them by BIC.

use qcm::data::CountDataset;
use qcm::fmt::{f4, opt4};
use qcm::stats::{compare_bic, fit_distribution, DistParams, Family};

fn main() -> qcm::Result<()> {
    let datasets = vec![
        CountDataset::new("exact MB", 9, ["cat", "dog"], DistParams::mb(0.57, 9)?.pmf_vec())?,
        CountDataset::new("exact BE", 11, ["cat", "dog"], DistParams::be(0.5, 11)?.pmf_vec())?,
        CountDataset::from_counts("survey", 7, ["heads", "tails"], &[9, 21, 30, 41, 33, 28, 24, 14])?,
    ];
    for d in &datasets {
        let mb = fit_distribution(d, Family::MB)?;
        let be = fit_distribution(d, Family::BE)?;
        let c = compare_bic(&mb, &be)?;
        println!(
            "{:<9} MB p1 {} R2 {}  BE p1 {} R2 {}  dBIC {}  winner {} ({})",
            d.category,
            f4(mb.params.p1),
            opt4(mb.r2),
            f4(be.params.p1),
            opt4(be.r2),
            f4(c.delta_bic),
            c.winner.map(|w| w.to_string()).unwrap_or_else(|| "tie".into()),
            c.strength
        );
    }
    Ok(())
}
