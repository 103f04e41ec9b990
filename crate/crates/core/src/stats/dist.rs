use std::fmt;

use serde::{Deserialize, Serialize};
use statrs::function::factorial::binomial;

use crate::{Error, Result};

/// Maxwell–Boltzmann (distinguishable instances) or Bose–Einstein
/// (indistinguishable instances) statistics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    MB,
    BE,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::MB, Family::BE];

    pub fn label(self) -> &'static str {
        match self {
            Family::MB => "MB",
            Family::BE => "BE",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A distribution over the occupation states `n = 0..=N`, where `n` counts
/// instances in the first state, which has single-instance probability `p1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistParams {
    pub family: Family,
    pub p1: f64,
    #[serde(rename = "N")]
    pub n: usize,
}

impl DistParams {
    pub fn new(family: Family, p1: f64, n: usize) -> Result<Self> {
        if !(0.0..=1.0).contains(&p1) {
            return Err(Error::validation("p1", format!("{p1} is not a probability")));
        }
        if n == 0 {
            return Err(Error::validation("N", "must be at least 1"));
        }
        Ok(DistParams { family, p1, n })
    }

    pub fn mb(p1: f64, n: usize) -> Result<Self> {
        Self::new(Family::MB, p1, n)
    }

    pub fn be(p1: f64, n: usize) -> Result<Self> {
        Self::new(Family::BE, p1, n)
    }

    pub fn pmf(&self, k: usize) -> Result<f64> {
        match self.family {
            Family::MB => mb_pmf(self, k),
            Family::BE => be_pmf(self, k),
        }
    }

    /// The whole pmf, indexed by `n = 0..=N`.
    pub fn pmf_vec(&self) -> Vec<f64> {
        (0..=self.n).map(|k| self.pmf_unchecked(k)).collect()
    }

    fn pmf_unchecked(&self, k: usize) -> f64 {
        let (n, p) = (self.n, self.p1);
        match self.family {
            Family::MB => binomial(n as u64, k as u64) * p.powi(k as i32) * (1.0 - p).powi((n - k) as i32),
            Family::BE => {
                let (k, nf) = (k as f64, n as f64);
                (k * p + (nf - k) * (1.0 - p)) / (nf * (nf + 1.0) / 2.0)
            }
        }
    }
}

fn check_index(params: &DistParams, k: usize) -> Result<()> {
    if k > params.n {
        return Err(Error::OutOfRange {
            index: k,
            max: params.n,
        });
    }
    Ok(())
}

/// Binomial probability C(N, n)·p1ⁿ·(1 − p1)^(N − n). `params.family` is ignored.
pub fn mb_pmf(params: &DistParams, n: usize) -> Result<f64> {
    check_index(params, n)?;
    Ok(DistParams {
        family: Family::MB,
        ..*params
    }
    .pmf_unchecked(n))
}

/// (n·p1 + (N − n)·(1 − p1)) / (N(N + 1)/2), affine in `n`. `params.family` is ignored.
pub fn be_pmf(params: &DistParams, n: usize) -> Result<f64> {
    check_index(params, n)?;
    Ok(DistParams {
        family: Family::BE,
        ..*params
    }
    .pmf_unchecked(n))
}
