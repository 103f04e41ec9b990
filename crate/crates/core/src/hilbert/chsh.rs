use serde::Serialize;

use crate::data::{Block, CoincidenceTable, Measurement};
use crate::{Error, Result};

/// Local-realistic bound on |CHSH|.
pub const CLASSICAL_BOUND: f64 = 2.0;
/// Quantum (Tsirelson) bound on |CHSH| for local observables.
pub const TSIRELSON_BOUND: f64 = 2.0 * std::f64::consts::SQRT_2;
/// Default tolerance of the marginal-law comparison.
pub const MARGINAL_TOLERANCE: f64 = 0.01;

// Keeps tables that sit exactly on a bound from flipping the flags through
// rounding in the sums.
const BOUND_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChshReport {
    pub e_ab: f64,
    pub e_abp: f64,
    pub e_apb: f64,
    pub e_apbp: f64,
    /// E(A',B') + E(A',B) + E(A,B') - E(A,B).
    pub chsh: f64,
    pub classical_violated: bool,
    pub tsirelson_respected: bool,
}

impl ChshReport {
    pub fn expectation(&self, m: Measurement) -> f64 {
        match m {
            Measurement::AB => self.e_ab,
            Measurement::ABp => self.e_abp,
            Measurement::ApB => self.e_apb,
            Measurement::ApBp => self.e_apbp,
        }
    }
}

pub fn expectations_from_table(t: &CoincidenceTable) -> ChshReport {
    let e = |m| t.block(m).expectation();
    let (e_ab, e_abp, e_apb, e_apbp) = (
        e(Measurement::AB),
        e(Measurement::ABp),
        e(Measurement::ApB),
        e(Measurement::ApBp),
    );
    let chsh = e_apbp + e_apb + e_abp - e_ab;
    ChshReport {
        e_ab,
        e_abp,
        e_apb,
        e_apbp,
        chsh,
        classical_violated: chsh.abs() > CLASSICAL_BOUND + BOUND_SLACK,
        tsirelson_respected: chsh.abs() <= TSIRELSON_BOUND + BOUND_SLACK,
    }
}

/// The single measurement whose outcome marginal is compared across two blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    A,
    #[serde(rename = "A'")]
    Ap,
    B,
    #[serde(rename = "B'")]
    Bp,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::A, Side::Ap, Side::B, Side::Bp];

    pub fn label(self) -> &'static str {
        match self {
            Side::A => "A",
            Side::Ap => "A'",
            Side::B => "B",
            Side::Bp => "B'",
        }
    }

    /// The two blocks sharing this measurement, and whether it is the first
    /// (`a`) component of their outcomes.
    fn blocks(self) -> (Measurement, Measurement, bool) {
        match self {
            Side::A => (Measurement::AB, Measurement::ABp, true),
            Side::Ap => (Measurement::ApB, Measurement::ApBp, true),
            Side::B => (Measurement::AB, Measurement::ApB, false),
            Side::Bp => (Measurement::ABp, Measurement::ApBp, false),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MarginalCheck {
    pub side: Side,
    pub label: String,
    pub first: Measurement,
    pub lhs: f64,
    pub second: Measurement,
    pub rhs: f64,
    pub violated: bool,
}

impl MarginalCheck {
    pub fn difference(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }
}

fn side_labels(block: &Block, first: bool) -> Vec<&str> {
    let mut labels: Vec<&str> = Vec::new();
    for o in &block.outcomes {
        let l = if first { o.a.as_str() } else { o.b.as_str() };
        if !labels.contains(&l) {
            labels.push(l);
        }
    }
    labels
}

fn marginal(block: &Block, label: &str, first: bool) -> f64 {
    block
        .outcomes
        .iter()
        .filter(|o| (if first { &o.a } else { &o.b }) == label)
        .map(|o| o.p)
        .sum()
}

/// Compare every single-measurement outcome marginal across the two blocks
/// that contain it. Each side yields one check per outcome label, in the
/// order the labels first appear.
pub fn marginal_law_check(t: &CoincidenceTable, tolerance: f64) -> Result<Vec<MarginalCheck>> {
    let mut out = Vec::with_capacity(8);
    for side in Side::ALL {
        let (m1, m2, first) = side.blocks();
        let (b1, b2) = (t.block(m1), t.block(m2));
        let l1 = side_labels(b1, first);
        let mut l2 = side_labels(b2, first);
        let mut sorted1 = l1.clone();
        sorted1.sort_unstable();
        l2.sort_unstable();
        if l1.len() != 2 || sorted1 != l2 {
            return Err(Error::Schema(format!(
                "outcome labels of side {} are not pairable between {m1} ({}) and {m2} ({})",
                side.label(),
                l1.join(", "),
                l2.join(", ")
            )));
        }
        for label in l1 {
            let lhs = marginal(b1, label, first);
            let rhs = marginal(b2, label, first);
            out.push(MarginalCheck {
                side,
                label: label.to_string(),
                first: m1,
                lhs,
                second: m2,
                rhs,
                violated: (lhs - rhs).abs() > tolerance,
            });
        }
    }
    Ok(out)
}

/// Per-side verdicts: a side violates the marginal law when any of its labels does.
pub fn sides_violated(checks: &[MarginalCheck]) -> Vec<(Side, bool)> {
    Side::ALL
        .iter()
        .map(|s| (*s, checks.iter().any(|c| c.side == *s && c.violated)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{reference, Outcome};

    fn block(m: Measurement, a: [&str; 2], b: [&str; 2], p: [f64; 4], signs: [i8; 4]) -> Block {
        Block::new(
            m,
            vec![
                Outcome::new(a[0], b[0], signs[0], p[0]),
                Outcome::new(a[0], b[1], signs[1], p[1]),
                Outcome::new(a[1], b[0], signs[2], p[2]),
                Outcome::new(a[1], b[1], signs[3], p[3]),
            ],
        )
    }

    const SAME: [i8; 4] = [1, -1, -1, 1];

    #[test]
    fn reference_table_expectations() {
        let r = expectations_from_table(&reference::animal_acts_table());
        assert!((r.e_ab + 0.778).abs() < 1e-12);
        assert!((r.e_apb - 0.655).abs() < 1e-12);
        assert!((r.e_abp - 0.358).abs() < 1e-12);
        assert!((r.e_apbp - 0.630).abs() < 1e-12);
        assert!((r.chsh - 2.421).abs() < 1e-12);
        assert!(r.classical_violated);
        assert!(r.tsirelson_respected);
    }

    #[test]
    fn uniform_table_is_zero() {
        let blocks = Measurement::ALL
            .iter()
            .map(|m| block(*m, ["x", "y"], ["u", "v"], [0.25; 4], SAME))
            .collect();
        let r = expectations_from_table(&CoincidenceTable::new(blocks).unwrap());
        assert_eq!(r.chsh, 0.0);
        assert!(!r.classical_violated);
    }

    #[test]
    fn pr_box_reaches_four() {
        let correlated = [0.5, 0.0, 0.0, 0.5];
        let anti = [0.0, 0.5, 0.5, 0.0];
        let blocks = Measurement::ALL
            .iter()
            .map(|m| {
                let p = if *m == Measurement::AB { anti } else { correlated };
                block(*m, ["x", "y"], ["u", "v"], p, SAME)
            })
            .collect();
        let r = expectations_from_table(&CoincidenceTable::new(blocks).unwrap());
        assert_eq!(r.chsh, 4.0);
        assert!(r.classical_violated);
        assert!(!r.tsirelson_respected);
    }

    #[test]
    fn horse_marginals() {
        let checks = marginal_law_check(&reference::animal_acts_table(), MARGINAL_TOLERANCE).unwrap();
        let horse = checks.iter().find(|c| c.label == "Horse").unwrap();
        assert_eq!(horse.side, Side::A);
        assert!((horse.lhs - 0.679).abs() < 1e-12);
        assert!((horse.rhs - 0.618).abs() < 1e-12);
        assert!(horse.violated);
        assert_eq!(checks.len(), 8);
        assert!(sides_violated(&checks).iter().all(|(_, v)| *v));
    }

    #[test]
    fn product_table_respects_marginals() {
        let pa = [0.3, 0.7];
        let pap = [0.6, 0.4];
        let pb = [0.2, 0.8];
        let pbp = [0.9, 0.1];
        let prod = |x: [f64; 2], y: [f64; 2]| [x[0] * y[0], x[0] * y[1], x[1] * y[0], x[1] * y[1]];
        let blocks = vec![
            block(Measurement::AB, ["H", "B"], ["G", "W"], prod(pa, pb), SAME),
            block(Measurement::ABp, ["H", "B"], ["S", "M"], prod(pa, pbp), SAME),
            block(Measurement::ApB, ["T", "C"], ["G", "W"], prod(pap, pb), SAME),
            block(Measurement::ApBp, ["T", "C"], ["S", "M"], prod(pap, pbp), SAME),
        ];
        let checks = marginal_law_check(&CoincidenceTable::new(blocks).unwrap(), MARGINAL_TOLERANCE).unwrap();
        assert!(checks.iter().all(|c| !c.violated && c.difference() < 1e-12));
    }

    #[test]
    fn unpairable_labels_are_schema_errors() {
        let blocks = vec![
            block(Measurement::AB, ["H", "B"], ["G", "W"], [0.25; 4], SAME),
            block(Measurement::ABp, ["Q", "B"], ["S", "M"], [0.25; 4], SAME),
            block(Measurement::ApB, ["T", "C"], ["G", "W"], [0.25; 4], SAME),
            block(Measurement::ApBp, ["T", "C"], ["S", "M"], [0.25; 4], SAME),
        ];
        let t = CoincidenceTable::new(blocks).unwrap();
        assert!(matches!(marginal_law_check(&t, 0.01), Err(Error::Schema(_))));
    }
}
