//! Per-subcommand results: JSON shape, text rendering and plot panels.

use serde::Serialize;

use super::svg::Panel;
use crate::classicality::{BandCheck, ClassicalityVerdict, DeviationProfile, QuantityStatistics, Quantity};
use crate::data::Measurement;
use crate::fmt::{f4, opt4, table};
use crate::fock::{Connective, FitResult, GeneralFitResult};
use crate::hilbert::{ChshReport, MarginalCheck, ModelReport, TSIRELSON_BOUND};
use crate::stats::{BicComparison, DistFit, Strength};

#[derive(Debug, Clone, Serialize)]
pub struct RecordClassicality {
    pub exemplar: String,
    pub verdicts: Vec<ClassicalityVerdict>,
    pub profile: Option<DeviationProfile>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalitySection {
    pub command: &'static str,
    pub tolerance: f64,
    pub records: Vec<RecordClassicality>,
    /// Present when at least three records carry a deviation profile.
    pub statistics: Option<Vec<QuantityStatistics>>,
    pub bands: Option<Vec<BandCheck>>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwoSectorFit {
    pub exemplar: String,
    pub connective: Connective,
    pub mu_a: f64,
    pub mu_b: f64,
    /// Model value at the chosen parameters.
    pub model: f64,
    pub fit: FitResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoSectorSection {
    pub command: &'static str,
    pub model: &'static str,
    pub fits: Vec<TwoSectorFit>,
    /// Records with neither a conjunction nor a disjunction weight.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneralFit {
    pub exemplar: String,
    pub observed: [f64; 4],
    pub fit: GeneralFitResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneralSection {
    pub command: &'static str,
    pub model: &'static str,
    pub seed: u64,
    pub fits: Vec<GeneralFit>,
    /// Records without all eight weights.
    pub skipped: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ChshSection {
    pub command: &'static str,
    pub report: ChshReport,
    pub marginal_tolerance: f64,
    pub marginals: Vec<MarginalCheck>,
    pub model: Option<ModelReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DatasetFits {
    pub category: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub mb: DistFit,
    pub be: DistFit,
    pub comparison: BicComparison,
}

#[derive(Debug, Clone, Serialize)]
pub struct StatsSection {
    pub command: &'static str,
    pub datasets: Vec<DatasetFits>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum Section {
    Classicality(ClassicalitySection),
    TwoSector(TwoSectorSection),
    General(GeneralSection),
    Chsh(ChshSection),
    Stats(StatsSection),
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportEntry {
    pub args: Vec<String>,
    pub result: Section,
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestReport {
    pub command: &'static str,
    pub sections: Vec<ReportEntry>,
}

fn status(violated: bool) -> String {
    if violated { "VIOLATED" } else { "ok" }.to_string()
}

fn deg(a: crate::fock::Angle) -> String {
    f4(a.degrees())
}

impl Section {
    pub fn text(&self) -> String {
        match self {
            Section::Classicality(s) => s.text(),
            Section::TwoSector(s) => s.text(),
            Section::General(s) => s.text(),
            Section::Chsh(s) => s.text(),
            Section::Stats(s) => s.text(),
        }
    }

    pub fn panels(&self) -> Vec<Panel> {
        match self {
            Section::Classicality(s) => s.panels(),
            Section::TwoSector(s) => s.panels(),
            Section::General(s) => s.panels(),
            Section::Chsh(s) => s.panels(),
            Section::Stats(s) => s.panels(),
        }
    }
}

impl ClassicalitySection {
    fn text(&self) -> String {
        let mut out = format!("Classicality conditions (tolerance {:e})\n\n", self.tolerance);
        let mut rows = Vec::new();
        for r in &self.records {
            for v in &r.verdicts {
                for res in &v.residuals {
                    rows.push(vec![
                        r.exemplar.clone(),
                        v.condition_set.to_string(),
                        res.condition.to_string(),
                        f4(res.value),
                        status(res.violated),
                    ]);
                }
            }
        }
        out.push_str(&table(&["exemplar", "set", "condition", "residual", "status"], &rows));
        let verdicts: Vec<Vec<String>> = self
            .records
            .iter()
            .flat_map(|r| {
                r.verdicts.iter().map(|v| {
                    vec![
                        r.exemplar.clone(),
                        v.condition_set.to_string(),
                        if v.satisfied { "classical" } else { "non-classical" }.to_string(),
                    ]
                })
            })
            .collect();
        out.push('\n');
        out.push_str(&table(&["exemplar", "set", "verdict"], &verdicts));

        let profiles: Vec<Vec<String>> = self
            .records
            .iter()
            .filter_map(|r| {
                let p = r.profile?;
                let mut row = vec![r.exemplar.clone()];
                row.extend(p.values().iter().map(|v| f4(*v)));
                Some(row)
            })
            .collect();
        if !profiles.is_empty() {
            out.push_str("\nDeviation profile\n");
            let header: Vec<&str> = std::iter::once("exemplar").chain(Quantity::ALL.iter().map(|q| q.label())).collect();
            out.push_str(&table(&header, &profiles));
        }
        if let (Some(stats), Some(bands)) = (&self.statistics, &self.bands) {
            out.push_str("\nProfile statistics (abscissa = record index)\n");
            let rows: Vec<Vec<String>> = stats
                .iter()
                .map(|s| {
                    let r = &s.regression;
                    let band = bands.iter().find(|b| b.quantity == s.quantity);
                    vec![
                        s.quantity.label().to_string(),
                        f4(r.mean),
                        f4(r.slope),
                        f4(r.intercept),
                        f4(r.r2),
                        format!("({}, {})", f4(r.ci95.0), f4(r.ci95.1)),
                        band.map(|b| format!("({}, {})", f4(b.band.0), f4(b.band.1))).unwrap_or_default(),
                        band.map(|b| if b.passed { "pass" } else { "fail" }.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            out.push_str(&table(
                &["quantity", "mean", "slope", "intercept", "R2", "95% CI", "reference band", "band"],
                &rows,
            ));
        }
        out
    }

    fn panels(&self) -> Vec<Panel> {
        let with_profile: Vec<&RecordClassicality> = self.records.iter().filter(|r| r.profile.is_some()).collect();
        if with_profile.is_empty() {
            let mut cats = Vec::new();
            let mut vals = Vec::new();
            for r in &self.records {
                for v in &r.verdicts {
                    for res in &v.residuals {
                        cats.push(format!("{} {}", r.exemplar, res.condition));
                        vals.push(res.value);
                    }
                }
            }
            return vec![Panel::new("Condition residuals", cats).series("residual", vals)];
        }
        let cats = with_profile.iter().map(|r| r.exemplar.clone()).collect();
        let mut p = Panel::new("Deviation profile", cats);
        for q in Quantity::ALL {
            p = p.series(q.label(), with_profile.iter().map(|r| r.profile.unwrap().get(q)).collect());
        }
        vec![p]
    }
}

impl TwoSectorSection {
    fn text(&self) -> String {
        let mut out = String::from("Two-sector Fock fits\n\n");
        let rows: Vec<Vec<String>> = self
            .fits
            .iter()
            .map(|f| {
                let p = &f.fit.params;
                vec![
                    f.exemplar.clone(),
                    f.connective.to_string(),
                    f4(f.mu_a),
                    f4(f.mu_b),
                    f4(f.fit.target),
                    f4(f.model),
                    f4(p.m2),
                    f4(p.n2),
                    deg(p.theta),
                    f4(f.fit.residual),
                    if f.fit.feasible { "yes" } else { "no" }.to_string(),
                ]
            })
            .collect();
        out.push_str(&table(
            &["exemplar", "conn", "muA", "muB", "target", "model", "m2", "n2", "theta", "residual", "feasible"],
            &rows,
        ));
        out.push_str("\nSolution families\n");
        for f in &self.fits {
            let fam = f.fit.family.map(|x| x.to_string()).unwrap_or_else(|| "no exact solution".into());
            out.push_str(&format!("{} {} ({}): {}\n", f.exemplar, f.connective, f.fit.policy, fam));
        }
        if !self.skipped.is_empty() {
            out.push_str(&format!("\nskipped (no conjunction or disjunction weight): {}\n", self.skipped.join(", ")));
        }
        out
    }

    fn panels(&self) -> Vec<Panel> {
        let cats = self.fits.iter().map(|f| f.exemplar.clone()).collect();
        let model = self.fits.iter().map(|f| f.model).collect();
        vec![Panel::new("Two-sector fits", cats)
            .series("observed", self.fits.iter().map(|f| f.fit.target).collect())
            .series("model", model)]
    }
}

impl GeneralSection {
    fn text(&self) -> String {
        let mut out = format!("General Fock fits (seed {})\n", self.seed);
        for f in &self.fits {
            let r = &f.fit;
            out.push_str(&format!(
                "\n{}: max residual {}, interference {}, alpha marginal deviation ({}, {})\n",
                f.exemplar,
                f4(r.residual),
                f4(r.interference),
                f4(r.marginal_deviation[0]),
                f4(r.marginal_deviation[1])
            ));
            let rows: Vec<Vec<String>> = Measurement::ALL
                .iter()
                .enumerate()
                .map(|(k, m)| {
                    let p = r.params.pair(*m);
                    vec![
                        m.to_string(),
                        f4(p.m2),
                        f4(p.n2),
                        f4(p.alpha),
                        f4(p.beta),
                        deg(p.phi),
                        f4(f.observed[k]),
                        f4(f.observed[k] + r.residuals[k]),
                    ]
                })
                .collect();
            out.push_str(&table(&["pair", "m2", "n2", "alpha", "beta", "phi", "observed", "model"], &rows));
        }
        if !self.skipped.is_empty() {
            out.push_str(&format!("\nskipped (incomplete negation data): {}\n", self.skipped.join(", ")));
        }
        out
    }

    fn panels(&self) -> Vec<Panel> {
        self.fits
            .iter()
            .map(|f| {
                let cats = Measurement::ALL.iter().map(|m| m.to_string()).collect();
                let model = (0..4).map(|k| f.observed[k] + f.fit.residuals[k]).collect();
                Panel::new(format!("{}: conjunction weights", f.exemplar), cats)
                    .series("observed", f.observed.to_vec())
                    .series("model", model)
            })
            .collect()
    }
}

impl ChshSection {
    fn text(&self) -> String {
        let r = &self.report;
        let mut out = String::from("CHSH analysis\n\n");
        let rows: Vec<Vec<String>> = Measurement::ALL
            .iter()
            .map(|m| {
                let (a, b) = match m {
                    Measurement::AB => ("A", "B"),
                    Measurement::ABp => ("A", "B'"),
                    Measurement::ApB => ("A'", "B"),
                    Measurement::ApBp => ("A'", "B'"),
                };
                vec![format!("E({a},{b})"), f4(r.expectation(*m))]
            })
            .collect();
        out.push_str(&table(&["expectation", "value"], &rows));
        out.push_str(&format!("\nCHSH = {}  (E(A',B') + E(A',B) + E(A,B') - E(A,B))\n", f4(r.chsh)));
        out.push_str(if r.classical_violated {
            "classical bound violated (|CHSH| > 2)\n"
        } else {
            "classical bound respected (|CHSH| <= 2)\n"
        });
        out.push_str(&if r.tsirelson_respected {
            format!("Tsirelson bound respected (|CHSH| <= {})\n", f4(TSIRELSON_BOUND))
        } else {
            format!("Tsirelson bound exceeded (|CHSH| > {})\n", f4(TSIRELSON_BOUND))
        });
        out.push_str("note: table probabilities carry 3 decimals, so CHSH is uncertain by about 0.005\n");

        out.push_str(&format!("\nMarginal law (tolerance {})\n", self.marginal_tolerance));
        let rows: Vec<Vec<String>> = self
            .marginals
            .iter()
            .map(|c| {
                vec![
                    c.side.label().to_string(),
                    c.label.clone(),
                    format!("{} {}", c.first, f4(c.lhs)),
                    format!("{} {}", c.second, f4(c.rhs)),
                    f4(c.difference()),
                    status(c.violated),
                ]
            })
            .collect();
        out.push_str(&table(&["side", "outcome", "first", "second", "|diff|", "status"], &rows));

        if let Some(m) = &self.model {
            out.push_str("\nReference model\n");
            out.push_str(&format!(
                "state norm {}, Schmidt coefficients ({}, {}), rank {}\n",
                f4(m.state_norm),
                f4(m.state_schmidt.singular_values[0]),
                f4(m.state_schmidt.singular_values[1]),
                m.state_schmidt.rank
            ));
            let rows: Vec<Vec<String>> = m
                .observables
                .iter()
                .map(|o| {
                    let ev = o.diagnostics.eigenvalues;
                    vec![
                        o.measurement.to_string(),
                        format!("{:.1e}", o.diagnostics.hermiticity),
                        f4(o.diagnostics.trace),
                        ev.iter().map(|v| f4(*v)).collect::<Vec<_>>().join(" "),
                        f4(o.model_expectation),
                        f4(o.table_expectation),
                        o.product_test.rank().to_string(),
                    ]
                })
                .collect();
            out.push_str(&table(
                &["observable", "herm dev", "trace", "eigenvalues", "<p|E|p>", "table E", "op rank"],
                &rows,
            ));
            out.push('\n');
            let checks: Vec<Vec<String>> = m
                .checks
                .iter()
                .map(|c| vec![c.name.clone(), if c.passed { "pass" } else { "FAIL" }.to_string(), c.detail.clone()])
                .collect();
            out.push_str(&table(&["check", "result", "detail"], &checks));
            out.push_str(&format!(
                "classification: {}\n",
                m.classification.as_deref().unwrap_or("none")
            ));
        }
        out
    }

    fn panels(&self) -> Vec<Panel> {
        let cats = Measurement::ALL.iter().map(|m| format!("E({m})")).collect();
        let mut p = Panel::new(
            format!("Expectations, CHSH = {}", f4(self.report.chsh)),
            cats,
        )
        .series("table", Measurement::ALL.iter().map(|m| self.report.expectation(*m)).collect());
        if let Some(m) = &self.model {
            p = p.series("model", m.observables.iter().map(|o| o.model_expectation).collect());
        }
        vec![p]
    }
}

fn best_model(c: &BicComparison) -> String {
    match (c.winner, c.strength) {
        (None, _) => "tie".to_string(),
        (Some(w), Strength::None) => format!("{w} (no evidence)"),
        (Some(w), s) => format!("{w} {s}"),
    }
}

impl StatsSection {
    fn text(&self) -> String {
        let mut out = String::from("MB / BE fits\n\n");
        let rows: Vec<Vec<String>> = self
            .datasets
            .iter()
            .map(|d| {
                vec![
                    d.category.clone(),
                    d.n.to_string(),
                    f4(d.mb.params.p1),
                    opt4(d.mb.r2),
                    f4(d.be.params.p1),
                    opt4(d.be.r2),
                    f4(d.comparison.delta_bic),
                    best_model(&d.comparison),
                ]
            })
            .collect();
        out.push_str(&table(&["category", "N", "P_MB", "R2_MB", "P_BE", "R2_BE", "dBIC", "best model"], &rows));
        out.push_str("\ndBIC = BIC(MB) - BIC(BE); positive favours BE. R2 '-' = undefined (constant data).\n");
        out
    }

    fn panels(&self) -> Vec<Panel> {
        self.datasets
            .iter()
            .map(|d| {
                let cats = (0..=d.n).map(|k| k.to_string()).collect();
                Panel::new(format!("{} (N = {})", d.category, d.n), cats)
                    .series("observed", d.mb.observed().to_vec())
                    .series("MB", d.mb.params.pmf_vec())
                    .series("BE", d.be.params.pmf_vec())
            })
            .collect()
    }
}

impl ManifestReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        for (i, e) in self.sections.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("== qcm {} ==\n\n", e.args.join(" ")));
            out.push_str(&e.result.text());
        }
        out
    }
}
