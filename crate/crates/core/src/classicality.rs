//! Classical (Kolmogorovian) representability tests for membership weights
//! and the deviation profile of a negation quadruple.

use std::fmt;

use serde::Serialize;

use crate::data::{check_probability, MembershipRecord};
use crate::stats::{linear_regression, RegressionResult};
use crate::{Error, Result};

/// Default tolerance for exact (synthetic) data.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionSet {
    Conjunction,
    Disjunction,
    Negation,
}

impl fmt::Display for ConditionSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConditionSet::Conjunction => "conjunction",
            ConditionSet::Disjunction => "disjunction",
            ConditionSet::Negation => "negation",
        })
    }
}

/// One condition's signed residual. For inequalities a positive residual is
/// the amount of violation; for equalities it is lhs − rhs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Residual {
    pub condition: &'static str,
    pub equality: bool,
    pub value: f64,
    pub violated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ClassicalityVerdict {
    pub condition_set: ConditionSet,
    pub satisfied: bool,
    pub tolerance: f64,
    pub residuals: Vec<Residual>,
}

impl ClassicalityVerdict {
    fn new(condition_set: ConditionSet, tolerance: f64, parts: &[(&'static str, bool, f64)]) -> Self {
        let residuals: Vec<Residual> = parts
            .iter()
            .map(|&(condition, equality, value)| Residual {
                condition,
                equality,
                value,
                violated: if equality {
                    value.abs() > tolerance
                } else {
                    value > tolerance
                },
            })
            .collect();
        ClassicalityVerdict {
            condition_set,
            satisfied: residuals.iter().all(|r| !r.violated),
            tolerance,
            residuals,
        }
    }

    pub fn residual(&self, condition: &str) -> Option<f64> {
        self.residuals.iter().find(|r| r.condition == condition).map(|r| r.value)
    }
}

fn require(values: &[(&str, f64)]) -> Result<()> {
    for (name, v) in values {
        check_probability("classicality input", name, *v)?;
    }
    Ok(())
}

/// Residuals `min-rule` = μ(A∧B) − min(μA, μB) and
/// `kolmogorov` = μA + μB − μ(A∧B) − 1; classical iff both are ≤ 0.
pub fn check_conjunction(mu_a: f64, mu_b: f64, mu_ab: f64, tolerance: f64) -> Result<ClassicalityVerdict> {
    require(&[("muA", mu_a), ("muB", mu_b), ("muAandB", mu_ab)])?;
    Ok(ClassicalityVerdict::new(
        ConditionSet::Conjunction,
        tolerance,
        &[
            ("min-rule", false, mu_ab - mu_a.min(mu_b)),
            ("kolmogorov", false, mu_a + mu_b - mu_ab - 1.0),
        ],
    ))
}

/// Residuals `max-rule` = max(μA, μB) − μ(A∨B) and
/// `kolmogorov` = μ(A∨B) − μA − μB; classical iff both are ≤ 0.
pub fn check_disjunction(mu_a: f64, mu_b: f64, mu_a_or_b: f64, tolerance: f64) -> Result<ClassicalityVerdict> {
    require(&[("muA", mu_a), ("muB", mu_b), ("muAorB", mu_a_or_b)])?;
    Ok(ClassicalityVerdict::new(
        ConditionSet::Disjunction,
        tolerance,
        &[
            ("max-rule", false, mu_a.max(mu_b) - mu_a_or_b),
            ("kolmogorov", false, -(mu_a + mu_b - mu_a_or_b)),
        ],
    ))
}

pub const NEGATION_CONDITIONS: [&str; 5] = ["split-A", "split-B", "split-A'", "split-B'", "normalization"];

/// The five equalities a negation quadruple must satisfy to come from a
/// joint distribution over the atoms AB, AB', A'B, A'B':
///
/// * `split-A`: μ(A) = μ(A∧B) + μ(A∧B')
/// * `split-B`: μ(B) = μ(A∧B) + μ(A'∧B)
/// * `split-A'`: μ(A') = μ(A'∧B') + μ(A'∧B)
/// * `split-B'`: μ(B') = μ(A'∧B') + μ(A∧B')
/// * `normalization`: the four conjunctions sum to 1
pub fn check_negation(record: &MembershipRecord, tolerance: f64) -> Result<ClassicalityVerdict> {
    let ([a, b, ap, bp], [ab, abp, apb, apbp]) = record.negation_quadruple()?;
    Ok(ClassicalityVerdict::new(
        ConditionSet::Negation,
        tolerance,
        &[
            (NEGATION_CONDITIONS[0], true, a - (ab + abp)),
            (NEGATION_CONDITIONS[1], true, b - (ab + apb)),
            (NEGATION_CONDITIONS[2], true, ap - (apbp + apb)),
            (NEGATION_CONDITIONS[3], true, bp - (apbp + abp)),
            (NEGATION_CONDITIONS[4], true, ab + abp + apb + apbp - 1.0),
        ],
    ))
}

/// Every condition set the record has enough fields for, in the order
/// conjunction, disjunction, negation.
pub fn check_record(record: &MembershipRecord, tolerance: f64) -> Result<Vec<ClassicalityVerdict>> {
    let mut out = Vec::new();
    if let Some(ab) = record.mu_a_and_b {
        out.push(check_conjunction(record.mu_a, record.mu_b, ab, tolerance)?);
    }
    if let Some(or) = record.mu_a_or_b {
        out.push(check_disjunction(record.mu_a, record.mu_b, or, tolerance)?);
    }
    if record.has_negation_quadruple() {
        out.push(check_negation(record, tolerance)?);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Quantity {
    #[serde(rename = "I_A")]
    IA,
    #[serde(rename = "I_B")]
    IB,
    #[serde(rename = "I_A'")]
    IAp,
    #[serde(rename = "I_B'")]
    IBp,
    #[serde(rename = "I_total")]
    ITotal,
}

impl Quantity {
    pub const ALL: [Quantity; 5] = [Quantity::IA, Quantity::IB, Quantity::IAp, Quantity::IBp, Quantity::ITotal];

    pub fn label(self) -> &'static str {
        match self {
            Quantity::IA => "I_A",
            Quantity::IB => "I_B",
            Quantity::IAp => "I_A'",
            Quantity::IBp => "I_B'",
            Quantity::ITotal => "I_total",
        }
    }
}

/// Signed deviations from the negation conditions. All five vanish for
/// classical data; the single-concept values lie in [−2, 1] and the total in
/// [−3, 1] for weights in [0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DeviationProfile {
    pub i_a: f64,
    pub i_b: f64,
    pub i_ap: f64,
    pub i_bp: f64,
    pub i_total: f64,
}

impl DeviationProfile {
    pub fn get(&self, q: Quantity) -> f64 {
        match q {
            Quantity::IA => self.i_a,
            Quantity::IB => self.i_b,
            Quantity::IAp => self.i_ap,
            Quantity::IBp => self.i_bp,
            Quantity::ITotal => self.i_total,
        }
    }

    pub fn values(&self) -> [f64; 5] {
        Quantity::ALL.map(|q| self.get(q))
    }
}

pub fn deviation_profile(record: &MembershipRecord) -> Result<DeviationProfile> {
    let ([a, b, ap, bp], [ab, abp, apb, apbp]) = record.negation_quadruple()?;
    Ok(DeviationProfile {
        i_a: a - ab - abp,
        i_b: b - ab - apb,
        i_ap: ap - apbp - apb,
        i_bp: bp - apbp - abp,
        i_total: 1.0 - ab - abp - apb - apbp,
    })
}

/// Regression and mean statistics of one quantity across a dataset.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuantityStatistics {
    pub quantity: Quantity,
    #[serde(flatten)]
    pub regression: RegressionResult,
}

/// For each quantity, the OLS line over the exemplar index `1..=n` (dataset
/// order), its R², the mean and the Student-t 95% interval of the mean.
pub fn profile_statistics(profiles: &[DeviationProfile]) -> Result<Vec<QuantityStatistics>> {
    if profiles.len() < 3 {
        return Err(Error::InsufficientData {
            needed: 3,
            got: profiles.len(),
        });
    }
    let xs: Vec<f64> = (1..=profiles.len()).map(|i| i as f64).collect();
    Quantity::ALL
        .iter()
        .map(|&q| {
            let ys: Vec<f64> = profiles.iter().map(|p| p.get(q)).collect();
            Ok(QuantityStatistics {
                quantity: q,
                regression: linear_regression(&xs, &ys)?,
            })
        })
        .collect()
}

/// Published 95% intervals for the mean of each quantity over a large
/// conjunction-with-negation dataset.
pub const REFERENCE_BANDS: [(Quantity, f64, f64); 5] = [
    (Quantity::IA, -0.51, -0.33),
    (Quantity::IB, -0.52, -0.34),
    (Quantity::IAp, -0.42, -0.28),
    (Quantity::IBp, -0.40, -0.26),
    (Quantity::ITotal, -0.97, -0.64),
];

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BandCheck {
    pub quantity: Quantity,
    pub mean: f64,
    pub band: (f64, f64),
    pub passed: bool,
}

/// Whether each quantity's mean falls strictly inside its reference band.
pub fn band_check(stats: &[QuantityStatistics]) -> Vec<BandCheck> {
    REFERENCE_BANDS
        .iter()
        .filter_map(|&(q, lo, hi)| {
            let s = stats.iter().find(|s| s.quantity == q)?;
            let mean = s.regression.mean;
            Some(BandCheck {
                quantity: q,
                mean,
                band: (lo, hi),
                passed: lo < mean && mean < hi,
            })
        })
        .collect()
}
