use serde::Serialize;

use super::dist::{DistParams, Family};
use crate::data::CountDataset;
use crate::optim::multistart_golden;
use crate::{Error, Result};

/// Subintervals of [0, 1] searched independently.
pub const MULTISTART_SEGMENTS: usize = 16;
/// Final bracket width of each golden-section search.
pub const BRACKET_TOLERANCE: f64 = 1e-12;
// RSS at or below this counts as an exact reproduction for R² purposes.
const EXACT_RSS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistFit {
    pub category: String,
    pub params: DistParams,
    pub rss: f64,
    /// `None` when the observations are constant and the fit does not
    /// reproduce them, which leaves R² undefined.
    pub r2: Option<f64>,
    pub bic: f64,
    #[serde(skip)]
    pub(crate) observed: Vec<f64>,
}

impl DistFit {
    pub fn family(&self) -> Family {
        self.params.family
    }

    pub fn observed(&self) -> &[f64] {
        &self.observed
    }

    /// True when both fits were computed on the same observations.
    pub fn same_data(&self, other: &DistFit) -> bool {
        self.category == other.category && self.observed == other.observed
    }
}

pub fn rss(params: &DistParams, observed: &[f64]) -> f64 {
    params
        .pmf_vec()
        .iter()
        .zip(observed)
        .map(|(p, o)| (p - o).powi(2))
        .sum()
}

/// Gaussian least-squares BIC with one free parameter:
/// `nobs·ln(RSS/nobs) + ln(nobs)`. An exact fit (RSS = 0) is floored at the
/// smallest positive double to stay finite.
pub fn bic(rss: f64, nobs: usize) -> f64 {
    let n = nobs as f64;
    n * (rss.max(f64::MIN_POSITIVE) / n).ln() + n.ln()
}

/// Least-squares fit of `family` to `data`: p1 minimizing the RSS between
/// the pmf and the observed frequencies.
pub fn fit_distribution(data: &CountDataset, family: Family) -> Result<DistFit> {
    if data.frequencies.len() != data.n + 1 {
        return Err(Error::LengthMismatch {
            left: data.n + 1,
            right: data.frequencies.len(),
        });
    }
    let n = data.n;
    let objective = |p: f64| rss(&DistParams { family, p1: p, n }, &data.frequencies);
    let (p1, rss_min) = multistart_golden(objective, 0.0, 1.0, MULTISTART_SEGMENTS, BRACKET_TOLERANCE);
    let nobs = n + 1;
    let mean = data.frequencies.iter().sum::<f64>() / nobs as f64;
    let tss: f64 = data.frequencies.iter().map(|o| (o - mean).powi(2)).sum();
    let r2 = if tss > 0.0 {
        Some(1.0 - rss_min / tss)
    } else if rss_min <= EXACT_RSS {
        Some(1.0)
    } else {
        None
    };
    Ok(DistFit {
        category: data.category.clone(),
        params: DistParams { family, p1, n },
        rss: rss_min,
        r2,
        bic: bic(rss_min, nobs),
        observed: data.frequencies.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(family: Family, p1: f64, n: usize) -> CountDataset {
        let freqs = DistParams { family, p1, n }.pmf_vec();
        CountDataset::new("exact", n, ["x", "y"], freqs).unwrap()
    }

    #[test]
    fn be_self_fit() {
        let f = fit_distribution(&exact(Family::BE, 0.3, 11), Family::BE).unwrap();
        assert!((f.params.p1 - 0.3).abs() < 1e-6);
        assert!(f.rss <= 1e-12);
        assert!((f.r2.unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn mb_self_fit() {
        let f = fit_distribution(&exact(Family::MB, 0.7, 9), Family::MB).unwrap();
        assert!((f.params.p1 - 0.7).abs() < 1e-6);
    }

    #[test]
    fn uniform_data() {
        let ds = CountDataset::new("uniform", 11, ["x", "y"], vec![1.0 / 12.0; 12]).unwrap();
        let be = fit_distribution(&ds, Family::BE).unwrap();
        assert!((be.params.p1 - 0.5).abs() < 1e-6);
        assert_eq!(be.r2, Some(1.0));
        let mb = fit_distribution(&ds, Family::MB).unwrap();
        assert!((mb.params.p1 - 0.5).abs() < 1e-6);
        // Oracle: direct summation of the binomial pmf against 1/12.
        let mut direct = 0.0;
        let mut c = 1.0;
        for k in 0..=11u32 {
            if k > 0 {
                c = c * f64::from(12 - k) / f64::from(k);
            }
            direct += (c / 2048.0 - 1.0 / 12.0f64).powi(2);
        }
        assert!((mb.rss - direct).abs() < 1e-12);
        assert!(mb.rss > 0.05);
        assert_eq!(mb.r2, None);
    }

    #[test]
    fn bic_formula() {
        let b = bic(0.12, 12);
        assert!((b - (12.0 * (0.01f64).ln() + 12f64.ln())).abs() < 1e-12);
        assert!(bic(0.0, 12).is_finite());
    }
}
