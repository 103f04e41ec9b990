//! Published reference datasets used by the examples, tests and bundled data.

use num_complex::Complex64;

use super::{Block, CoincidenceTable, Measurement, MembershipRecord, Outcome};
use crate::hilbert::{ComplexVector4, Observable4, ReferenceModel};

/// Food / Plant conjunction: overextended.
pub fn mint() -> MembershipRecord {
    MembershipRecord::conjunction("Mint", 0.87, 0.81, 0.9)
        .expect("valid record")
        .with_concepts("Food", "Plant")
}

/// Sportswear / Sports Equipment disjunction: underextended.
pub fn sunglasses() -> MembershipRecord {
    MembershipRecord::disjunction("Sunglasses", 0.4, 0.2, 0.1)
        .expect("valid record")
        .with_concepts("Sportswear", "Sports Equipment")
}

/// Fruits / Vegetables conjunction, double overextended.
pub fn olive_conjunction() -> MembershipRecord {
    MembershipRecord::conjunction("Olive", 0.56, 0.63, 0.65)
        .expect("valid record")
        .with_concepts("Fruits", "Vegetables")
}

/// Fruits / Vegetables disjunction from a different experiment.
pub fn olive_disjunction() -> MembershipRecord {
    MembershipRecord::disjunction("Olive", 0.5, 0.1, 0.8)
        .expect("valid record")
        .with_concepts("Fruits", "Vegetables")
}

/// "x is tall and not tall" for a borderline case, as a conjunction of Tall
/// and Not Tall.
pub fn borderline_tall() -> MembershipRecord {
    MembershipRecord::conjunction("John", 0.01, 0.95, 0.15)
        .expect("valid record")
        .with_concepts("Tall", "Not Tall")
}

/// Pets / Farmyard Animals with both negations and all four conjunctions.
pub fn goldfish() -> MembershipRecord {
    MembershipRecord::with_negations("Goldfish", [0.93, 0.17, 0.12, 0.81], [0.43, 0.91, 0.18, 0.43])
        .expect("valid record")
        .with_concepts("Pets", "Farmyard Animals")
}

/// Coincidence data for "The Animal Acts": A = {Horse, Bear},
/// A' = {Tiger, Cat}, B = {Growls, Whinnies}, B' = {Snorts, Meows}.
pub fn animal_acts_table() -> CoincidenceTable {
    let block = |m, a: [&str; 2], b: [&str; 2], p: [f64; 4]| {
        Block::new(
            m,
            vec![
                Outcome::new(a[0], b[0], 1, p[0]),
                Outcome::new(a[0], b[1], -1, p[1]),
                Outcome::new(a[1], b[0], -1, p[2]),
                Outcome::new(a[1], b[1], 1, p[3]),
            ],
        )
    };
    CoincidenceTable::new(vec![
        block(Measurement::AB, ["Horse", "Bear"], ["Growls", "Whinnies"], [0.049, 0.630, 0.259, 0.062]),
        block(Measurement::ABp, ["Horse", "Bear"], ["Snorts", "Meows"], [0.593, 0.025, 0.296, 0.086]),
        block(Measurement::ApB, ["Tiger", "Cat"], ["Growls", "Whinnies"], [0.778, 0.086, 0.086, 0.049]),
        block(Measurement::ApBp, ["Tiger", "Cat"], ["Snorts", "Meows"], [0.148, 0.086, 0.099, 0.667]),
    ])
    .expect("published table is valid")
}

/// CHSH value reported for the unrounded data behind [`animal_acts_table`].
pub const ANIMAL_ACTS_CHSH: f64 = 2.4197;

pub fn animal_acts_state() -> ComplexVector4 {
    ComplexVector4::from_polar_deg([(0.23, 13.93), (0.62, 16.72), (0.75, 9.69), (0.0, 194.15)])
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The four printed observables in the order AB, AB', A'B, A'B', with
/// entries rounded to three decimals.
pub fn animal_acts_observables() -> [Observable4; 4] {
    let ab = Observable4::from_rows([
        [c(0.952, 0.0), c(-0.207, -0.030), c(0.224, 0.007), c(0.003, -0.006)],
        [c(-0.207, 0.030), c(-0.930, 0.0), c(0.028, -0.001), c(-0.163, 0.251)],
        [c(0.224, -0.007), c(0.028, 0.001), c(-0.916, 0.0), c(-0.193, 0.266)],
        [c(0.003, 0.006), c(-0.163, -0.251), c(-0.193, -0.266), c(0.895, 0.0)],
    ]);
    let abp = Observable4::from_rows([
        [c(-0.001, 0.0), c(0.587, 0.397), c(0.555, 0.434), c(0.035, 0.0259)],
        [c(0.587, -0.397), c(-0.489, 0.0), c(0.497, 0.0341), c(-0.106, -0.005)],
        [c(0.555, -0.434), c(0.497, -0.0341), c(-0.503, 0.0), c(0.045, -0.001)],
        [c(0.035, -0.0259), c(-0.106, 0.005), c(0.045, 0.001), c(0.992, 0.0)],
    ]);
    let apb = Observable4::from_rows([
        [c(-0.587, 0.0), c(0.568, 0.353), c(0.274, 0.365), c(0.002, 0.004)],
        [c(0.568, -0.353), c(0.090, 0.0), c(0.681, 0.263), c(-0.110, -0.007)],
        [c(0.274, -0.365), c(0.681, -0.263), c(-0.484, 0.0), c(0.150, -0.050)],
        [c(0.002, -0.004), c(-0.110, 0.007), c(0.150, 0.050), c(0.981, 0.0)],
    ]);
    let apbp = Observable4::from_rows([
        [c(0.854, 0.0), c(0.385, 0.243), c(-0.035, -0.164), c(-0.115, -0.146)],
        [c(0.385, -0.243), c(-0.700, 0.0), c(0.483, 0.132), c(-0.086, 0.212)],
        [c(-0.035, 0.164), c(0.483, -0.132), c(0.542, 0.0), c(0.093, 0.647)],
        [c(-0.115, 0.146), c(-0.086, -0.212), c(0.093, -0.647), c(-0.697, 0.0)],
    ]);
    [ab, abp, apb, apbp]
}

pub fn animal_acts_model() -> ReferenceModel {
    ReferenceModel::new(animal_acts_state(), animal_acts_observables())
}
