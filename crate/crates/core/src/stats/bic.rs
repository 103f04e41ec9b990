use std::fmt;

use serde::Serialize;

use super::dist::Family;
use super::fit::DistFit;
use crate::{Error, Result};

pub const POSITIVE_THRESHOLD: f64 = 2.0;
pub const STRONG_THRESHOLD: f64 = 6.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Strength {
    None,
    Weak,
    Positive,
    Strong,
}

impl fmt::Display for Strength {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strength::None => "none",
            Strength::Weak => "weak",
            Strength::Positive => "positive",
            Strength::Strong => "strong",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BicComparison {
    /// bic(first) − bic(second); with (MB, BE) a positive value favours BE.
    pub delta_bic: f64,
    /// Family of the lower-BIC fit; `None` on an exact tie.
    pub winner: Option<Family>,
    pub strength: Strength,
}

/// Compare two fits of the same dataset by BIC.
///
/// |Δ| > 6 is strong and 2 < |Δ| ≤ 6 positive evidence for the lower-BIC
/// fit. Below that the result is `weak` if the lower-BIC fit also has a
/// strictly higher R², otherwise `none`.
pub fn compare_bic(first: &DistFit, second: &DistFit) -> Result<BicComparison> {
    if !first.same_data(second) {
        return Err(Error::MismatchedDatasets {
            left: first.category.clone(),
            right: second.category.clone(),
        });
    }
    let delta_bic = first.bic - second.bic;
    let (winner, better, worse) = if delta_bic < 0.0 {
        (Some(first.family()), first, second)
    } else if delta_bic > 0.0 {
        (Some(second.family()), second, first)
    } else {
        (None, first, second)
    };
    let magnitude = delta_bic.abs();
    let strength = if magnitude > STRONG_THRESHOLD {
        Strength::Strong
    } else if magnitude > POSITIVE_THRESHOLD {
        Strength::Positive
    } else {
        match (winner, better.r2, worse.r2) {
            (Some(_), Some(a), Some(b)) if a > b => Strength::Weak,
            _ => Strength::None,
        }
    };
    Ok(BicComparison {
        delta_bic,
        winner,
        strength,
    })
}
