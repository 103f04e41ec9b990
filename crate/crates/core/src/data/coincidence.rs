use std::fmt;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Allowed deviation of a block's probability sum from 1. Published tables
/// are rounded to three decimals.
pub const BLOCK_SUM_TOLERANCE: f64 = 1e-3;

// Absorbs the binary representation error of decimal inputs such as 0.999.
const SUM_SLACK: f64 = 1e-12;

/// One of the four coincidence measurements of a CHSH experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Measurement {
    #[serde(rename = "AB")]
    AB,
    #[serde(rename = "AB'")]
    ABp,
    #[serde(rename = "A'B")]
    ApB,
    #[serde(rename = "A'B'")]
    ApBp,
}

impl Measurement {
    pub const ALL: [Measurement; 4] = [
        Measurement::AB,
        Measurement::ABp,
        Measurement::ApB,
        Measurement::ApBp,
    ];

    pub fn label(self) -> &'static str {
        match self {
            Measurement::AB => "AB",
            Measurement::ABp => "AB'",
            Measurement::ApB => "A'B",
            Measurement::ApBp => "A'B'",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Measurement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

/// A joint outcome: the first-side label `a`, the second-side label `b`,
/// its ±1 value and its observed probability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Outcome {
    pub a: String,
    pub b: String,
    pub sign: i8,
    pub p: f64,
}

impl Outcome {
    pub fn new(a: &str, b: &str, sign: i8, p: f64) -> Self {
        Outcome {
            a: a.to_string(),
            b: b.to_string(),
            sign,
            p,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Block {
    pub measurement: Measurement,
    pub outcomes: Vec<Outcome>,
}

impl Block {
    pub fn new(measurement: Measurement, outcomes: Vec<Outcome>) -> Self {
        Block {
            measurement,
            outcomes,
        }
    }

    pub fn sum(&self) -> f64 {
        self.outcomes.iter().map(|o| o.p).sum()
    }

    /// Σ sign·p over the block's outcomes.
    pub fn expectation(&self) -> f64 {
        self.outcomes.iter().map(|o| f64::from(o.sign) * o.p).sum()
    }

    fn validate(&self) -> Result<()> {
        let name = self.measurement.label();
        if self.outcomes.len() != 4 {
            return Err(Error::validation(
                format!("block {name}"),
                format!("expected 4 outcomes, found {}", self.outcomes.len()),
            ));
        }
        let mut plus = 0;
        for o in &self.outcomes {
            if !o.p.is_finite() || !(0.0..=1.0).contains(&o.p) {
                return Err(Error::validation(
                    format!("block {name}"),
                    format!("p({}, {}) = {} is not a probability", o.a, o.b, o.p),
                ));
            }
            match o.sign {
                1 => plus += 1,
                -1 => {}
                s => {
                    return Err(Error::validation(
                        format!("block {name}"),
                        format!("outcome ({}, {}) has sign {s}, expected +1 or -1", o.a, o.b),
                    ))
                }
            }
        }
        if plus != 2 {
            return Err(Error::validation(
                format!("block {name}"),
                format!("expected two +1 and two -1 outcomes, found {plus} positive"),
            ));
        }
        let sum = self.sum();
        if (sum - 1.0).abs() > BLOCK_SUM_TOLERANCE + SUM_SLACK {
            return Err(Error::validation(
                format!("block {name}"),
                format!("probabilities sum to {sum}, not 1 within {BLOCK_SUM_TOLERANCE}"),
            ));
        }
        Ok(())
    }
}

/// Joint-outcome probabilities of the four measurements AB, AB', A'B, A'B'.
///
/// Blocks are always held in that order regardless of input order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoincidenceTable {
    blocks: Vec<Block>,
}

impl CoincidenceTable {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        if blocks.len() != 4 {
            return Err(Error::Schema(format!(
                "coincidence table needs 4 blocks, found {}",
                blocks.len()
            )));
        }
        let mut slots: [Option<Block>; 4] = Default::default();
        for block in blocks {
            let i = block.measurement.index();
            if slots[i].is_some() {
                return Err(Error::Schema(format!(
                    "measurement {} appears twice",
                    block.measurement
                )));
            }
            block.validate()?;
            slots[i] = Some(block);
        }
        Ok(CoincidenceTable {
            blocks: slots.into_iter().map(|b| b.expect("four distinct blocks")).collect(),
        })
    }

    pub fn block(&self, m: Measurement) -> &Block {
        &self.blocks[m.index()]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table always serializes")
    }
}

impl<'de> Deserialize<'de> for CoincidenceTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            blocks: Vec<Block>,
        }
        let raw = Raw::deserialize(d)?;
        CoincidenceTable::new(raw.blocks).map_err(serde::de::Error::custom)
    }
}

/// Read a coincidence table from its JSON form
/// (`{"blocks": [{"measurement": "AB", "outcomes": [{"a", "b", "sign", "p"}, ...]}, ...]}`).
pub fn parse_coincidence<R: Read>(mut source: R) -> Result<CoincidenceTable> {
    let mut bytes = Vec::new();
    source.read_to_end(&mut bytes)?;
    #[derive(Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Raw {
        blocks: Vec<Block>,
    }
    let raw: Raw = serde_json::from_slice(&bytes)?;
    CoincidenceTable::new(raw.blocks)
}
