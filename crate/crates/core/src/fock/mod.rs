//! Two-sector Fock-space models of concept combination.
//!
//! A combined membership weight is a convex mixture of a *logical* sector-2
//! prediction and an *emergent* sector-1 prediction with an interference
//! term:
//!
//! ```text
//! μ(A and B) = m²·μA·μB            + n²·((μA + μB)/2 + I(μA, μB)·cos θ)
//! μ(A or B)  = m²·(μA + μB − μA·μB) + n²·((μA + μB)/2 + I(μA, μB)·cos θ)
//! ```
//!
//! The general negation model replaces the logical term by a free weight α
//! and the interference magnitude by a free β for each of AB, AB', A'B, A'B'.

mod general;
pub mod reported;
mod two_sector;

pub use general::{
    fit_general_quadruple, marginals, GeneralFitOptions, GeneralFitResult, GeneralFockParams, PairParams,
    PAIR_WEIGHT_TOLERANCE,
};
pub use two_sector::{fit_two_sector, FeasibleFamily, FitPolicy, FitResult, FIT_TOLERANCE};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::data::{check_probability, Measurement};
use crate::{Error, Result};

/// Allowed deviation of m² + n² from 1.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Connective {
    And,
    Or,
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            Connective::And => "and",
            Connective::Or => "or",
        })
    }
}

impl FromStr for Connective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "and" => Ok(Connective::And),
            "or" => Ok(Connective::Or),
            other => Err(Error::validation("connective", format!("`{other}` is not `and` or `or`"))),
        }
    }
}

impl Connective {
    /// Sector-2 prediction: independent product for `and`, inclusion–exclusion for `or`.
    pub fn logical(self, mu_a: f64, mu_b: f64) -> f64 {
        match self {
            Connective::And => mu_a * mu_b,
            Connective::Or => mu_a + mu_b - mu_a * mu_b,
        }
    }
}

/// An angle stored in radians, read and written in degrees.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle(f64);

impl Angle {
    pub const RIGHT: Angle = Angle(std::f64::consts::FRAC_PI_2);

    pub fn from_degrees(deg: f64) -> Self {
        Angle(deg.to_radians())
    }

    pub fn from_radians(rad: f64) -> Self {
        Angle(rad)
    }

    /// acos of `c` clamped to [−1, 1].
    pub fn from_cos(c: f64) -> Self {
        Angle(c.clamp(-1.0, 1.0).acos())
    }

    pub fn degrees(self) -> f64 {
        self.0.to_degrees()
    }

    pub fn radians(self) -> f64 {
        self.0
    }

    pub fn cos(self) -> f64 {
        self.0.cos()
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.degrees())
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        f64::deserialize(d).map(Angle::from_degrees)
    }
}

fn check_angle(subject: &str, a: Angle) -> Result<()> {
    let deg = a.degrees();
    // Conversions through radians may land a hair outside the closed range.
    if !(-1e-9..=180.0 + 1e-9).contains(&deg) {
        return Err(Error::validation(subject, format!("angle {deg}° is outside [0°, 180°]")));
    }
    Ok(())
}

/// Parameters of the two-sector model for one conjunction or disjunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockParams {
    pub m2: f64,
    pub n2: f64,
    pub theta: Angle,
    pub connective: Connective,
    /// Phases of the two sectors. They drop out of every probability and are
    /// kept only as metadata.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nu: Option<f64>,
}

impl FockParams {
    /// Parameters with n² = 1 − m² and θ in degrees.
    pub fn new(m2: f64, theta_deg: f64, connective: Connective) -> Result<Self> {
        let p = FockParams {
            m2,
            n2: 1.0 - m2,
            theta: Angle::from_degrees(theta_deg),
            connective,
            lambda: None,
            nu: None,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability("Fock parameters", "m2", self.m2)?;
        check_probability("Fock parameters", "n2", self.n2)?;
        if (self.m2 + self.n2 - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
            return Err(Error::validation(
                "Fock parameters",
                format!("m2 + n2 = {} is not 1", self.m2 + self.n2),
            ));
        }
        check_angle("Fock parameters", self.theta)
    }
}

/// A model prediction. Values outside [0, 1] are returned unchanged and
/// flagged, since they mark an invalid parameter region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Prediction {
    pub value: f64,
    pub in_range: bool,
}

impl Prediction {
    fn new(value: f64) -> Self {
        Prediction {
            value,
            // Tolerate rounding at the boundaries.
            in_range: (-1e-12..=1.0 + 1e-12).contains(&value),
        }
    }
}

/// Coefficient of cos θ in the sector-1 term: √(1−μX)·√(1−μY) when
/// μX + μY > 1, otherwise √μX·√μY.
pub fn interference_magnitude(mu_x: f64, mu_y: f64) -> f64 {
    if mu_x + mu_y > 1.0 {
        (1.0 - mu_x).sqrt() * (1.0 - mu_y).sqrt()
    } else {
        mu_x.sqrt() * mu_y.sqrt()
    }
}

fn two_sector(mu_a: f64, mu_b: f64, p: &FockParams) -> f64 {
    p.m2 * p.connective.logical(mu_a, mu_b)
        + p.n2 * ((mu_a + mu_b) / 2.0 + interference_magnitude(mu_a, mu_b) * p.theta.cos())
}

fn check_inputs(mu_a: f64, mu_b: f64) -> Result<()> {
    check_probability("Fock model input", "muA", mu_a)?;
    check_probability("Fock model input", "muB", mu_b)
}

fn require_connective(p: &FockParams, want: Connective) -> Result<()> {
    if p.connective != want {
        return Err(Error::validation(
            "Fock parameters",
            format!("connective is `{}`, expected `{want}`", p.connective),
        ));
    }
    Ok(())
}

pub fn eval_conjunction(mu_a: f64, mu_b: f64, p: &FockParams) -> Result<Prediction> {
    check_inputs(mu_a, mu_b)?;
    require_connective(p, Connective::And)?;
    Ok(Prediction::new(two_sector(mu_a, mu_b, p)))
}

pub fn eval_disjunction(mu_a: f64, mu_b: f64, p: &FockParams) -> Result<Prediction> {
    check_inputs(mu_a, mu_b)?;
    require_connective(p, Connective::Or)?;
    Ok(Prediction::new(two_sector(mu_a, mu_b, p)))
}

/// Evaluate with whichever connective `p` carries.
pub fn evaluate(mu_a: f64, mu_b: f64, p: &FockParams) -> Result<Prediction> {
    check_inputs(mu_a, mu_b)?;
    Ok(Prediction::new(two_sector(mu_a, mu_b, p)))
}

/// m²_XY·α_XY + n²_XY·((μX + μY)/2 + β_XY·cos φ_XY) for the pair `which`.
pub fn eval_general(mu_x: f64, mu_y: f64, g: &GeneralFockParams, which: Measurement) -> Result<Prediction> {
    check_inputs(mu_x, mu_y)?;
    let p = g.pair(which);
    Ok(Prediction::new(p.evaluate(mu_x, mu_y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn magnitude_branches() {
        assert!((interference_magnitude(0.87, 0.81) - 0.15716).abs() < 1e-5);
        assert_eq!(interference_magnitude(0.0, 0.7), 0.0);
        assert!((interference_magnitude(0.5, 0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn borderline_triple() {
        let p = FockParams::new(0.77, 0.0, Connective::And).unwrap();
        let v = eval_conjunction(0.01, 0.95, &p).unwrap();
        // 0.77·0.0095 + 0.23·(0.48 + √0.0095)
        let oracle = 0.77 * 0.01 * 0.95 + 0.23 * (0.48 + (0.01f64 * 0.95).sqrt());
        assert!((v.value - oracle).abs() < 1e-15);
        assert!((v.value - 0.1401).abs() < 5e-5);
        assert!(v.in_range);
    }

    #[test]
    fn sector_limits() {
        let logical = FockParams::new(1.0, 37.0, Connective::And).unwrap();
        assert_eq!(eval_conjunction(0.3, 0.6, &logical).unwrap().value, 0.3 * 0.6);
        let or = FockParams::new(1.0, 37.0, Connective::Or).unwrap();
        assert!((eval_disjunction(0.3, 0.6, &or).unwrap().value - 0.72).abs() < 1e-15);
        for c in [Connective::And, Connective::Or] {
            let flat = FockParams::new(0.0, 90.0, c).unwrap();
            assert!((evaluate(0.3, 0.6, &flat).unwrap().value - 0.45).abs() < 1e-15);
        }
    }

    #[test]
    fn sunglasses_angle() {
        let theta = ((0.1 - 0.3) / interference_magnitude(0.4, 0.2)).acos().to_degrees();
        assert!((theta - 135.0).abs() < 0.05);
        let p = FockParams::new(0.0, 135.02, Connective::Or).unwrap();
        assert!((eval_disjunction(0.4, 0.2, &p).unwrap().value - 0.1).abs() < 5e-4);
    }

    #[test]
    fn out_of_range_is_flagged_not_clamped() {
        let g = GeneralFockParams::uniform_pairs(PairParams::new(0.0, 0.0, 1.0, 0.0));
        let over = eval_general(0.9, 0.9, &g, Measurement::AB).unwrap();
        assert!((over.value - 1.9).abs() < 1e-12);
        assert!(!over.in_range);
    }

    #[test]
    fn connective_mismatch() {
        let p = FockParams::new(0.5, 90.0, Connective::Or).unwrap();
        assert!(eval_conjunction(0.5, 0.5, &p).is_err());
    }

    #[test]
    fn parameter_validation() {
        assert!(FockParams::new(1.2, 0.0, Connective::And).is_err());
        assert!(FockParams::new(0.5, 181.0, Connective::And).is_err());
        let p = FockParams::new(0.25, 50.21, Connective::And).unwrap();
        let json = serde_json::to_value(p).unwrap();
        assert!((json["theta"].as_f64().unwrap() - 50.21).abs() < 1e-12);
        let back: FockParams = serde_json::from_value(json).unwrap();
        assert!((back.theta.degrees() - 50.21).abs() < 1e-12);
    }
}
