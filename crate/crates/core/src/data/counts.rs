use std::io::Read;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{Error, Result};

const SUM_TOLERANCE: f64 = 1e-6;

/// Empirical distribution over the `N + 1` occupation states of a combined
/// concept such as *Eleven Animals*: entry `n` is the relative frequency of
/// the state with `n` instances of the first label and `N - n` of the second.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountDataset {
    pub category: String,
    pub n: usize,
    pub labels: [String; 2],
    pub frequencies: Vec<f64>,
}

impl CountDataset {
    pub fn new(category: &str, n: usize, labels: [&str; 2], frequencies: Vec<f64>) -> Result<Self> {
        let ds = CountDataset {
            category: category.to_string(),
            n,
            labels: labels.map(str::to_string),
            frequencies,
        };
        ds.validate()?;
        Ok(ds)
    }

    /// Build from raw response counts, normalising by their total.
    pub fn from_counts(category: &str, n: usize, labels: [&str; 2], counts: &[u64]) -> Result<Self> {
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::validation(category, "all counts are zero"));
        }
        let freqs = counts.iter().map(|&c| c as f64 / total as f64).collect();
        Self::new(category, n, labels, freqs)
    }

    pub fn len(&self) -> usize {
        self.frequencies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frequencies.is_empty()
    }

    fn validate(&self) -> Result<()> {
        let who = self.category.as_str();
        if self.n == 0 {
            return Err(Error::validation(who, "N must be at least 1"));
        }
        if self.frequencies.len() != self.n + 1 {
            return Err(Error::validation(
                who,
                format!(
                    "expected N + 1 = {} frequencies, found {}",
                    self.n + 1,
                    self.frequencies.len()
                ),
            ));
        }
        if let Some((i, f)) = self
            .frequencies
            .iter()
            .enumerate()
            .find(|(_, f)| !f.is_finite() || **f < 0.0)
        {
            return Err(Error::validation(who, format!("frequency[{i}] = {f} is negative")));
        }
        let sum: f64 = self.frequencies.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::validation(
                who,
                format!("frequencies sum to {sum}, not 1 within {SUM_TOLERANCE}"),
            ));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDataset {
    category: String,
    n: usize,
    labels: [String; 2],
    #[serde(default)]
    frequencies: Option<Vec<f64>>,
    #[serde(default)]
    counts: Option<Vec<u64>>,
}

impl RawDataset {
    fn build(self) -> Result<CountDataset> {
        let labels = [self.labels[0].as_str(), self.labels[1].as_str()];
        match (self.frequencies, self.counts) {
            (Some(f), None) => CountDataset::new(&self.category, self.n, labels, f),
            (None, Some(c)) => CountDataset::from_counts(&self.category, self.n, labels, &c),
            _ => Err(Error::Schema(format!(
                "dataset `{}` needs exactly one of `frequencies` or `counts`",
                self.category
            ))),
        }
    }
}

/// Parse one dataset object or an array of them.
pub fn parse_count_datasets<R: Read>(mut source: R) -> Result<Vec<CountDataset>> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    let doc: Value = serde_json::from_slice(&bytes)?;
    let items = match doc {
        Value::Array(items) => items,
        obj @ Value::Object(_) => vec![obj],
        _ => return Err(Error::Schema("count data must be an object or an array".into())),
    };
    items
        .into_iter()
        .map(|v| serde_json::from_value::<RawDataset>(v)?.build())
        .collect()
}
