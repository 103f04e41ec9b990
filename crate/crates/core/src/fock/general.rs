use std::collections::BTreeMap;

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{check_angle, interference_magnitude, Angle, FIT_TOLERANCE};
use crate::data::{check_probability, Measurement, MembershipRecord};
use crate::optim::{nelder_mead, project_simplex, NelderMeadOptions};
use crate::{Error, Result};

/// Allowed deviation of m²_XY + n²_XY from 1 for parameters read from
/// published (rounded) amplitudes.
pub const PAIR_WEIGHT_TOLERANCE: f64 = 0.02;

/// Parameters of one of the four conjunctions AB, AB', A'B, A'B'.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PairParams {
    pub m2: f64,
    pub n2: f64,
    pub alpha: f64,
    pub beta: f64,
    pub phi: Angle,
}

impl PairParams {
    /// Exact weights n² = 1 − m²; φ in degrees.
    pub fn new(m2: f64, alpha: f64, beta: f64, phi_deg: f64) -> Self {
        PairParams {
            m2,
            n2: 1.0 - m2,
            alpha,
            beta,
            phi: Angle::from_degrees(phi_deg),
        }
    }

    /// From the amplitudes m and n, as weights are usually quoted.
    pub fn from_amplitudes(m: f64, n: f64, alpha: f64, beta: f64, phi_deg: f64) -> Self {
        PairParams {
            m2: m * m,
            n2: n * n,
            alpha,
            beta,
            phi: Angle::from_degrees(phi_deg),
        }
    }

    pub fn evaluate(&self, mu_x: f64, mu_y: f64) -> f64 {
        self.m2 * self.alpha + self.n2 * ((mu_x + mu_y) / 2.0 + self.beta * self.phi.cos())
    }

    fn validate(&self, pair: Measurement, weight_tolerance: f64) -> Result<()> {
        let subject = format!("pair {pair}");
        for (name, v) in [("m2", self.m2), ("n2", self.n2), ("alpha", self.alpha)] {
            check_probability(&subject, name, v)?;
        }
        if !(-1.0..=1.0).contains(&self.beta) {
            return Err(Error::validation(&subject, format!("beta = {} is outside [-1, 1]", self.beta)));
        }
        if (self.m2 + self.n2 - 1.0).abs() > weight_tolerance {
            return Err(Error::validation(
                &subject,
                format!("m2 + n2 = {} is not within {weight_tolerance} of 1", self.m2 + self.n2),
            ));
        }
        check_angle(&subject, self.phi)
    }
}

/// Parameters of the general model for a negation quadruple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneralFockParams {
    pub pairs: BTreeMap<Measurement, PairParams>,
}

impl GeneralFockParams {
    /// Pairs in the order AB, AB', A'B, A'B'.
    pub fn new(pairs: [PairParams; 4]) -> Self {
        GeneralFockParams {
            pairs: Measurement::ALL.into_iter().zip(pairs).collect(),
        }
    }

    pub fn uniform_pairs(p: PairParams) -> Self {
        Self::new([p; 4])
    }

    pub fn pair(&self, which: Measurement) -> &PairParams {
        &self.pairs[&which]
    }

    pub fn alpha_sum(&self) -> f64 {
        self.pairs.values().map(|p| p.alpha).sum()
    }

    /// Check ranges, per-pair weight sums and Σα = 1 within `alpha_tolerance`.
    pub fn validate(&self, alpha_tolerance: f64, weight_tolerance: f64) -> Result<()> {
        for m in Measurement::ALL {
            match self.pairs.get(&m) {
                Some(p) => p.validate(m, weight_tolerance)?,
                None => return Err(Error::Schema(format!("no parameters for pair {m}"))),
            }
        }
        let s = self.alpha_sum();
        if (s - 1.0).abs() > alpha_tolerance {
            return Err(Error::validation(
                "general Fock parameters",
                format!("alpha sums to {s}, not 1 within {alpha_tolerance}"),
            ));
        }
        Ok(())
    }

    /// Predictions for the four conjunctions from the record's marginals.
    pub fn predict(&self, singles: [f64; 4]) -> [f64; 4] {
        Measurement::ALL.map(|m| {
            let (x, y) = marginals(singles, m);
            self.pair(m).evaluate(x, y)
        })
    }
}

/// (μX, μY) for the pair `which`, from `[μA, μB, μA', μB']`.
pub fn marginals(singles: [f64; 4], which: Measurement) -> (f64, f64) {
    let [a, b, ap, bp] = singles;
    match which {
        Measurement::AB => (a, b),
        Measurement::ABp => (a, bp),
        Measurement::ApB => (ap, b),
        Measurement::ApBp => (ap, bp),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneralFitOptions {
    pub seed: u64,
    /// Random starting points on top of the deterministic ones.
    pub random_starts: usize,
    /// Half-width δ of the soft marginal constraints on α.
    pub marginal_slack: f64,
    /// Weight of soft-constraint excess in the objective.
    pub penalty: f64,
}

impl Default for GeneralFitOptions {
    fn default() -> Self {
        GeneralFitOptions {
            seed: 0,
            random_starts: 8,
            marginal_slack: 0.05,
            penalty: 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GeneralFitResult {
    pub params: GeneralFockParams,
    /// model − observed for AB, AB', A'B, A'B'.
    pub residuals: [f64; 4],
    /// max |residual|.
    pub residual: f64,
    pub feasible: bool,
    /// Σ |β·cos φ| over the four pairs.
    pub interference: f64,
    /// α_AB + α_AB' − μ(A) and α_AB + α_A'B − μ(B).
    pub marginal_deviation: [f64; 2],
    pub options: GeneralFitOptions,
}

const HULL_SLACK: f64 = 1e-12;

// Prefers the logical sector among otherwise equal candidates.
const LOGICAL_PREFERENCE: f64 = 1e-6;

/// Per-pair closed-form solve for a fixed α: m² and t = β·cos φ with
/// |t| ≤ 1 reproducing `target`, smallest |t| first, then largest m².
fn solve_pair(alpha: f64, avg: f64, target: f64) -> (f64, f64) {
    let a = target - avg;
    let b = alpha - avg;
    if a == 0.0 && b == 0.0 {
        return (1.0, 0.0);
    }
    // The slack absorbs rounding when α reproduces the target exactly.
    let between = (a >= 0.0 && a <= b + HULL_SLACK) || (a <= 0.0 && a >= b - HULL_SLACK);
    if between && b != 0.0 {
        ((a / b).clamp(0.0, 1.0), 0.0)
    } else {
        (0.0, a)
    }
}

struct Problem {
    singles: [f64; 4],
    targets: [f64; 4],
    avgs: [f64; 4],
    options: GeneralFitOptions,
}

impl Problem {
    fn pairs(&self, alpha: &[f64]) -> [(f64, f64); 4] {
        [0, 1, 2, 3].map(|k| solve_pair(alpha[k], self.avgs[k], self.targets[k]))
    }

    fn marginal_deviation(&self, alpha: &[f64]) -> [f64; 2] {
        [
            alpha[0] + alpha[1] - self.singles[0],
            alpha[0] + alpha[2] - self.singles[1],
        ]
    }

    fn objective(&self, alpha: &[f64]) -> f64 {
        let pairs = self.pairs(alpha);
        let interference: f64 = pairs.iter().map(|(_, t)| t.abs()).sum();
        let logical_gap: f64 = pairs.iter().map(|(m2, _)| 1.0 - m2).sum();
        let excess: f64 = self
            .marginal_deviation(alpha)
            .iter()
            .map(|d| (d.abs() - self.options.marginal_slack).max(0.0))
            .sum();
        interference + self.options.penalty * excess + LOGICAL_PREFERENCE * logical_gap
    }

    fn starts(&self) -> Vec<Vec<f64>> {
        let [a, b, ap, bp] = self.singles;
        let mut starts = vec![
            self.targets.to_vec(),
            vec![a * b, a * bp, ap * b, ap * bp],
            vec![0.25; 4],
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(self.options.seed);
        for _ in 0..self.options.random_starts {
            // Exponential draws normalized to a uniform point on the simplex.
            let e: Vec<f64> = (0..4).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
            let s: f64 = e.iter().sum();
            starts.push(e.iter().map(|x| x / s).collect());
        }
        starts
            .into_iter()
            .map(|x| {
                let total: f64 = x.iter().sum();
                if total > 0.0 {
                    x.iter().map(|v| v / total).collect()
                } else {
                    vec![0.25; 4]
                }
            })
            .collect()
    }
}

/// Fit the general model to a record with all eight weights.
///
/// Every α on the simplex admits an exact per-pair solution, so the search
/// is over α: it minimizes the total interference Σ|β·cos φ| plus a penalty
/// on α marginals outside the ±δ band around μ(A) and μ(B). Starts are the
/// normalized conjunction weights, the independent-product atoms, the
/// uniform point and `random_starts` seeded draws; the lowest objective
/// wins and ties keep the earlier start.
pub fn fit_general_quadruple(record: &MembershipRecord, options: GeneralFitOptions) -> Result<GeneralFitResult> {
    let (singles, targets) = record.negation_quadruple()?;
    let avgs = Measurement::ALL.map(|m| {
        let (x, y) = marginals(singles, m);
        (x + y) / 2.0
    });
    let problem = Problem {
        singles,
        targets,
        avgs,
        options,
    };
    let f = |x: &[f64]| problem.objective(&project_simplex(x));
    let nm = NelderMeadOptions {
        initial_step: 0.05,
        max_iterations: 4000,
        f_tolerance: 1e-15,
    };
    let mut best: Option<(Vec<f64>, f64)> = None;
    for start in problem.starts() {
        let start_value = f(&start);
        let (x, fx) = nelder_mead(f, &start, nm);
        let cand = if start_value <= fx { (start, start_value) } else { (x, fx) };
        if best.as_ref().is_none_or(|b| cand.1 < b.1) {
            best = Some(cand);
        }
    }
    let (x, _) = best.expect("at least one start");
    let alpha = project_simplex(&x);

    let solved = problem.pairs(&alpha);
    let pairs = [0, 1, 2, 3].map(|k| {
        let (mu_x, mu_y) = marginals(singles, Measurement::ALL[k]);
        let (m2, t) = solved[k];
        let magnitude = interference_magnitude(mu_x, mu_y);
        let (beta, phi) = if t == 0.0 || m2 >= 1.0 {
            (0.0, Angle::RIGHT)
        } else {
            let beta = t.signum() * magnitude.max(t.abs());
            (beta, Angle::from_cos(t / beta))
        };
        PairParams {
            m2,
            n2: 1.0 - m2,
            alpha: alpha[k],
            beta,
            phi,
        }
    });
    let params = GeneralFockParams::new(pairs);
    let predicted = params.predict(singles);
    let residuals = [0, 1, 2, 3].map(|k| predicted[k] - targets[k]);
    let residual = residuals.iter().fold(0.0f64, |m, r| m.max(r.abs()));
    let interference = params.pairs.values().map(|p| (p.beta * p.phi.cos()).abs()).sum();
    Ok(GeneralFitResult {
        marginal_deviation: problem.marginal_deviation(&alpha),
        params,
        residuals,
        residual,
        feasible: residual <= FIT_TOLERANCE,
        interference,
        options,
    })
}
