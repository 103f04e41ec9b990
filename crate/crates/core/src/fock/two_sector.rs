use std::fmt;

use serde::Serialize;

use super::{interference_magnitude, Angle, Connective, FockParams};
use crate::data::check_probability;
use crate::Result;

/// A fit is feasible when it reproduces the target to within this.
pub const FIT_TOLERANCE: f64 = 1e-9;

/// How to pick one (m², θ) out of the one-parameter family of exact fits.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum FitPolicy {
    /// Smallest |cos θ|, then smallest m².
    #[default]
    MinInterference,
    /// The given sector-2 weight; θ solves the equation.
    FixedSectorWeight { m2: f64 },
    /// Largest feasible m².
    MaxLogical,
}

impl fmt::Display for FitPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FitPolicy::MinInterference => f.write_str("min-interference"),
            FitPolicy::FixedSectorWeight { m2 } => write!(f, "fixed-sector-weight({m2})"),
            FitPolicy::MaxLogical => f.write_str("max-logical"),
        }
    }
}

/// The set of exact solutions: m² ranges over `m2_range` and θ moves
/// monotonically between the two end angles. At m² = 1 the angle is
/// irrelevant and reported as 90°.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FeasibleFamily {
    pub m2_range: (f64, f64),
    pub theta_range: (Angle, Angle),
}

impl FeasibleFamily {
    pub fn is_point(&self) -> bool {
        self.m2_range.0 == self.m2_range.1
    }
}

impl fmt::Display for FeasibleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (lo, hi) = self.m2_range;
        let (a, b) = self.theta_range;
        if self.is_point() {
            write!(f, "unique: m2 = {lo:.4}, theta = {:.4}", a.degrees())
        } else {
            write!(
                f,
                "m2 in [{lo:.4}, {hi:.4}], theta from {:.4} to {:.4} deg",
                a.degrees(),
                b.degrees()
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FitResult {
    pub params: FockParams,
    pub target: f64,
    /// |model − target| at `params`.
    pub residual: f64,
    pub feasible: bool,
    pub policy: FitPolicy,
    /// `None` when no exact solution exists.
    pub family: Option<FeasibleFamily>,
}

/// The two-sector equation reduced to f(m², c) = m²·L + (1 − m²)·(avg + I·c)
/// with c = cos θ.
#[derive(Debug, Clone, Copy)]
struct Equation {
    logical: f64,
    avg: f64,
    magnitude: f64,
    target: f64,
}

impl Equation {
    fn eval(&self, m2: f64, c: f64) -> f64 {
        m2 * self.logical + (1.0 - m2) * (self.avg + self.magnitude * c)
    }

    fn attainable(&self) -> (f64, f64) {
        let (l, lo, hi) = (self.logical, self.avg - self.magnitude, self.avg + self.magnitude);
        (l.min(lo), l.max(hi))
    }

    /// cos θ solving the equation at a fixed m² < 1, unclamped.
    fn cos_at(&self, m2: f64) -> Option<f64> {
        let denom = (1.0 - m2) * self.magnitude;
        let num = self.target - m2 * self.logical - (1.0 - m2) * self.avg;
        if denom > 0.0 {
            Some(num / denom)
        } else if num.abs() <= FIT_TOLERANCE {
            Some(0.0)
        } else {
            None
        }
    }

    /// Closed interval of m² admitting some |cos θ| ≤ 1, or `None`.
    fn feasible_m2(&self) -> Option<(f64, f64)> {
        let (lo, hi) = self.attainable();
        if self.target < lo - FIT_TOLERANCE || self.target > hi + FIT_TOLERANCE {
            return None;
        }
        let a = self.target - self.avg;
        let b = self.logical - self.avg;
        let i = self.magnitude;
        // m·(I − b) ≤ I − a and m·(I + b) ≤ I + a on [0, 1].
        let mut range = (0.0f64, 1.0f64);
        for (k, r) in [(i - b, i - a), (i + b, i + a)] {
            if k.abs() < 1e-15 {
                if r < -FIT_TOLERANCE {
                    return None;
                }
            } else if k > 0.0 {
                range.1 = range.1.min(r / k);
            } else {
                range.0 = range.0.max(r / k);
            }
        }
        // m² = 1 needs the logical term alone to hit the target.
        if range.1 >= 1.0 && (self.logical - self.target).abs() > FIT_TOLERANCE {
            range.1 = range.1.min(1.0 - f64::EPSILON);
        }
        if range.0 > range.1 + 1e-12 {
            return None;
        }
        Some((range.0.clamp(0.0, 1.0), range.1.clamp(0.0, 1.0).max(range.0.clamp(0.0, 1.0))))
    }

    fn angle_at(&self, m2: f64) -> Angle {
        if m2 >= 1.0 {
            return Angle::RIGHT;
        }
        match self.cos_at(m2) {
            Some(c) => Angle::from_cos(c),
            None => Angle::RIGHT,
        }
    }

    fn params(&self, m2: f64, theta: Angle, connective: Connective) -> FockParams {
        FockParams {
            m2,
            n2: 1.0 - m2,
            theta,
            connective,
            lambda: None,
            nu: None,
        }
    }

    /// Least-residual point when the target is outside the attainable range:
    /// the nearer end of the range.
    fn nearest(&self) -> (f64, Angle) {
        let (lo, hi) = self.attainable();
        let above = self.target > hi;
        let end = if above { hi } else { lo };
        if end == self.logical {
            (1.0, Angle::RIGHT)
        } else if above {
            (0.0, Angle::from_degrees(0.0))
        } else {
            (0.0, Angle::from_degrees(180.0))
        }
    }
}

/// Solve the two-sector equation for (m², θ) so that the model reproduces
/// `target` for the given connective. The result carries the whole exact
/// solution family; the returned point is chosen by `policy`.
///
/// Without an exact solution the result is the least-residual point with
/// `feasible = false`.
pub fn fit_two_sector(
    mu_a: f64,
    mu_b: f64,
    target: f64,
    connective: Connective,
    policy: FitPolicy,
) -> Result<FitResult> {
    for (name, v) in [("muA", mu_a), ("muB", mu_b), ("target", target)] {
        check_probability("two-sector fit", name, v)?;
    }
    if let FitPolicy::FixedSectorWeight { m2 } = policy {
        check_probability("two-sector fit", "m2", m2)?;
    }
    let eq = Equation {
        logical: connective.logical(mu_a, mu_b),
        avg: (mu_a + mu_b) / 2.0,
        magnitude: interference_magnitude(mu_a, mu_b),
        target,
    };
    let family = eq.feasible_m2().map(|(lo, hi)| FeasibleFamily {
        m2_range: (lo, hi),
        theta_range: (eq.angle_at(lo), eq.angle_at(hi)),
    });

    let (m2, theta) = match (family, policy) {
        (None, FitPolicy::FixedSectorWeight { m2 }) => {
            let theta = if m2 >= 1.0 {
                Angle::RIGHT
            } else {
                Angle::from_cos(eq.cos_at(m2).unwrap_or(0.0))
            };
            (m2, theta)
        }
        (None, _) => eq.nearest(),
        (Some(fam), FitPolicy::MinInterference) => {
            let (lo, hi) = fam.m2_range;
            let (a, b) = (target - eq.avg, eq.logical - eq.avg);
            let between = (a >= 0.0 && a <= b) || (a <= 0.0 && a >= b);
            let m2 = if b != 0.0 && between {
                (a / b).clamp(lo, hi)
            } else {
                // |cos θ| grows with m² outside the [avg, L] hull, so the
                // smallest admissible weight minimizes it.
                lo
            };
            (m2, eq.angle_at(m2))
        }
        (Some(_), FitPolicy::FixedSectorWeight { m2 }) => {
            let theta = if m2 >= 1.0 {
                Angle::RIGHT
            } else {
                Angle::from_cos(eq.cos_at(m2).unwrap_or(0.0))
            };
            (m2, theta)
        }
        (Some(fam), FitPolicy::MaxLogical) => (fam.m2_range.1, eq.angle_at(fam.m2_range.1)),
    };
    let params = eq.params(m2, theta, connective);
    let residual = (eq.eval(m2, theta.cos()) - target).abs();
    Ok(FitResult {
        params,
        target,
        residual,
        feasible: residual <= FIT_TOLERANCE,
        policy,
        family,
    })
}
