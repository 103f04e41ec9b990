//! The `qcm` command-line front end.
//!
//! [`main_with`] is the whole program minus process plumbing: it takes the
//! argument list, the `QCM_TOLERANCE` value and a stdin reader, and returns
//! the exit status together with everything that would be printed. Exit
//! status is 0 on success, 1 for usage and validation errors, 2 for I/O.

mod report;
mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use report::{
    ChshSection, ClassicalitySection, DatasetFits, GeneralFit, GeneralSection, ManifestReport, RecordClassicality,
    ReportEntry, Section, StatsSection, TwoSectorFit, TwoSectorSection,
};
pub use svg::{render as render_svg, Panel};

use crate::classicality::{band_check, check_record, deviation_profile, profile_statistics, DEFAULT_TOLERANCE};
use crate::data::{parse_coincidence, parse_count_datasets, parse_membership_table, TableFormat};
use crate::fock::{evaluate, fit_general_quadruple, fit_two_sector, Connective, FitPolicy, GeneralFitOptions};
use crate::hilbert::{
    expectations_from_table, marginal_law_check, verify_reference_model, ModelTolerances, ReferenceModel,
    MARGINAL_TOLERANCE,
};
use crate::stats::{compare_bic, fit_distribution, Family};

pub const TOLERANCE_ENV: &str = "QCM_TOLERANCE";

#[derive(Debug, Parser)]
#[command(name = "qcm", version, about = "Quantum-cognition analyses of concept membership, CHSH and count data")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classicality verdicts, deviation profiles and profile statistics.
    Classicality {
        #[command(flatten)]
        common: Common,
    },
    /// Fit the two-sector or the general Fock-space model per record.
    FockFit {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = FockModel::TwoSector)]
        model: FockModel,
        /// Point chosen from the exact-solution family (two-sector only).
        #[arg(long, value_enum, default_value_t = PolicyArg::MinInterference)]
        policy: PolicyArg,
        /// Sector-2 weight for `--policy fixed`.
        #[arg(long)]
        m2: Option<f64>,
        /// Random restarts of the general fit.
        #[arg(long, default_value_t = 8)]
        starts: usize,
    },
    /// CHSH value, marginal-law checks and optional reference-model verification.
    Chsh {
        #[command(flatten)]
        common: Common,
        /// Reference model (state and four observables) to verify against the table.
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Maxwell-Boltzmann and Bose-Einstein fits with a BIC comparison.
    StatsFit {
        #[command(flatten)]
        common: Common,
    },
    /// Run every command listed in a manifest and concatenate the reports.
    Report {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        output: OutputFormat,
        #[arg(long)]
        plot: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Input file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,
    /// Table format; defaults to the file extension (stdin: csv).
    #[arg(long)]
    pub format: Option<TableFormat>,
    /// Overrides QCM_TOLERANCE.
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    pub output: OutputFormat,
    /// Write an SVG chart here.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FockModel {
    TwoSector,
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PolicyArg {
    MinInterference,
    MaxLogical,
    Fixed,
}

/// `{"runs": [["chsh", "--input", "table1.json"], ...]}`. Relative paths
/// are resolved against the manifest's directory.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub runs: Vec<Vec<String>>,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Data(#[from] crate::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Io { .. } => 2,
            CliError::Data(e) if e.is_io() => 2,
            _ => 1,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a run printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Context<'a> {
    env_tolerance: Option<&'a str>,
    base: Option<&'a Path>,
}

impl Context<'_> {
    fn resolve(&self, p: &Path) -> PathBuf {
        match self.base {
            Some(base) if p != Path::new("-") && p.is_relative() => base.join(p),
            _ => p.to_path_buf(),
        }
    }

    fn tolerance(&self, flag: Option<f64>, default: f64) -> CliResult<f64> {
        let t = match (flag, self.env_tolerance) {
            (Some(t), _) => t,
            (None, Some(s)) => s
                .trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{TOLERANCE_ENV} = `{s}` is not a number")))?,
            (None, None) => default,
        };
        if !t.is_finite() || t < 0.0 {
            return Err(CliError::Usage(format!("tolerance must be a non-negative number, got {t}")));
        }
        Ok(t)
    }
}

fn read_input(path: &Path, stdin: &mut dyn Read) -> CliResult<Vec<u8>> {
    let mut bytes = Vec::new();
    if path == Path::new("-") {
        stdin.read_to_end(&mut bytes).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    } else {
        bytes = fs::read(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
    }
    Ok(bytes)
}

fn table_format(common: &Common) -> TableFormat {
    common.format.unwrap_or_else(|| {
        if common.input == Path::new("-") {
            TableFormat::Csv
        } else {
            TableFormat::from_path(&common.input)
        }
    })
}

fn classicality(common: &Common, ctx: &Context, stdin: &mut dyn Read) -> CliResult<Section> {
    let tolerance = ctx.tolerance(common.tolerance, DEFAULT_TOLERANCE)?;
    let bytes = read_input(&ctx.resolve(&common.input), stdin)?;
    let records = parse_membership_table(&bytes[..], table_format(common))?;
    let mut out = Vec::with_capacity(records.len());
    let mut profiles = Vec::new();
    for r in &records {
        let profile = if r.has_negation_quadruple() {
            Some(deviation_profile(r)?)
        } else {
            None
        };
        profiles.extend(profile);
        out.push(RecordClassicality {
            exemplar: r.exemplar.clone(),
            verdicts: check_record(r, tolerance)?,
            profile,
        });
    }
    let statistics = if profiles.len() >= 3 {
        Some(profile_statistics(&profiles)?)
    } else {
        None
    };
    let bands = statistics.as_deref().map(band_check);
    Ok(Section::Classicality(ClassicalitySection {
        command: "classicality",
        tolerance,
        records: out,
        statistics,
        bands,
    }))
}

fn fock_fit(
    common: &Common,
    model: FockModel,
    policy: PolicyArg,
    m2: Option<f64>,
    starts: usize,
    ctx: &Context,
    stdin: &mut dyn Read,
) -> CliResult<Section> {
    let bytes = read_input(&ctx.resolve(&common.input), stdin)?;
    let records = parse_membership_table(&bytes[..], table_format(common))?;
    match model {
        FockModel::TwoSector => {
            let policy = match (policy, m2) {
                (PolicyArg::MinInterference, None) => FitPolicy::MinInterference,
                (PolicyArg::MaxLogical, None) => FitPolicy::MaxLogical,
                (PolicyArg::Fixed, Some(m2)) => FitPolicy::FixedSectorWeight { m2 },
                (PolicyArg::Fixed, None) => return Err(CliError::Usage("--policy fixed requires --m2".into())),
                (_, Some(_)) => return Err(CliError::Usage("--m2 is only valid with --policy fixed".into())),
            };
            let mut fits = Vec::new();
            let mut skipped = Vec::new();
            for r in &records {
                let targets = [
                    (Connective::And, r.mu_a_and_b),
                    (Connective::Or, r.mu_a_or_b),
                ];
                if targets.iter().all(|(_, t)| t.is_none()) {
                    skipped.push(r.exemplar.clone());
                }
                for (connective, target) in targets {
                    let Some(target) = target else { continue };
                    let fit = fit_two_sector(r.mu_a, r.mu_b, target, connective, policy)?;
                    fits.push(TwoSectorFit {
                        exemplar: r.exemplar.clone(),
                        connective,
                        mu_a: r.mu_a,
                        mu_b: r.mu_b,
                        model: evaluate(r.mu_a, r.mu_b, &fit.params)?.value,
                        fit,
                    });
                }
            }
            Ok(Section::TwoSector(TwoSectorSection {
                command: "fock-fit",
                model: "two-sector",
                fits,
                skipped,
            }))
        }
        FockModel::General => {
            if m2.is_some() || policy != PolicyArg::MinInterference {
                return Err(CliError::Usage("--policy and --m2 apply to the two-sector model only".into()));
            }
            let options = GeneralFitOptions {
                seed: common.seed,
                random_starts: starts,
                ..GeneralFitOptions::default()
            };
            let mut fits = Vec::new();
            let mut skipped = Vec::new();
            for r in &records {
                if !r.has_negation_quadruple() {
                    skipped.push(r.exemplar.clone());
                    continue;
                }
                let (_, observed) = r.negation_quadruple()?;
                fits.push(GeneralFit {
                    exemplar: r.exemplar.clone(),
                    observed,
                    fit: fit_general_quadruple(r, options)?,
                });
            }
            Ok(Section::General(GeneralSection {
                command: "fock-fit",
                model: "general",
                seed: common.seed,
                fits,
                skipped,
            }))
        }
    }
}

fn chsh(common: &Common, model: Option<&Path>, ctx: &Context, stdin: &mut dyn Read) -> CliResult<Section> {
    let marginal_tolerance = ctx.tolerance(common.tolerance, MARGINAL_TOLERANCE)?;
    let bytes = read_input(&ctx.resolve(&common.input), stdin)?;
    let table = parse_coincidence(&bytes[..])?;
    let model = match model {
        Some(p) => {
            let bytes = read_input(&ctx.resolve(p), stdin)?;
            let m = ReferenceModel::parse(&bytes[..])?;
            let tol = ModelTolerances {
                marginal: marginal_tolerance,
                ..ModelTolerances::default()
            };
            Some(verify_reference_model(&m, &table, &tol))
        }
        None => None,
    };
    Ok(Section::Chsh(ChshSection {
        command: "chsh",
        report: expectations_from_table(&table),
        marginal_tolerance,
        marginals: marginal_law_check(&table, marginal_tolerance)?,
        model,
    }))
}

fn stats_fit(common: &Common, ctx: &Context, stdin: &mut dyn Read) -> CliResult<Section> {
    let bytes = read_input(&ctx.resolve(&common.input), stdin)?;
    let datasets = parse_count_datasets(&bytes[..])?;
    let mut out = Vec::with_capacity(datasets.len());
    for d in &datasets {
        let mb = fit_distribution(d, Family::MB)?;
        let be = fit_distribution(d, Family::BE)?;
        let comparison = compare_bic(&mb, &be)?;
        out.push(DatasetFits {
            category: d.category.clone(),
            n: d.n,
            mb,
            be,
            comparison,
        });
    }
    Ok(Section::Stats(StatsSection {
        command: "stats-fit",
        datasets: out,
    }))
}

fn write_plot(path: &Path, panels: &[Panel]) -> CliResult<()> {
    fs::write(path, svg::render(panels)).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn render(value: &impl Serialize, text: impl FnOnce() -> String, output: OutputFormat) -> CliResult<String> {
    Ok(match output {
        OutputFormat::Text => text(),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(crate::Error::from)?;
            s.push('\n');
            s
        }
    })
}

fn analyse(cmd: &Command, ctx: &Context, stdin: &mut dyn Read) -> CliResult<Section> {
    match cmd {
        Command::Classicality { common } => classicality(common, ctx, stdin),
        Command::FockFit {
            common,
            model,
            policy,
            m2,
            starts,
        } => fock_fit(common, *model, *policy, *m2, *starts, ctx, stdin),
        Command::Chsh { common, model } => chsh(common, model.as_deref(), ctx, stdin),
        Command::StatsFit { common } => stats_fit(common, ctx, stdin),
        Command::Report { .. } => Err(CliError::Usage("`report` cannot be nested in a manifest".into())),
    }
}

fn common(cmd: &Command) -> Option<&Common> {
    match cmd {
        Command::Classicality { common }
        | Command::FockFit { common, .. }
        | Command::Chsh { common, .. }
        | Command::StatsFit { common } => Some(common),
        Command::Report { .. } => None,
    }
}

fn report(
    manifest: &Path,
    output: OutputFormat,
    plot: Option<&Path>,
    env_tolerance: Option<&str>,
    stdin: &mut dyn Read,
) -> CliResult<String> {
    let bytes = read_input(manifest, stdin)?;
    let parsed: Manifest = serde_json::from_slice(&bytes).map_err(crate::Error::from)?;
    let base = if manifest == Path::new("-") {
        None
    } else {
        Some(manifest.parent().unwrap_or(Path::new("")))
    };
    let ctx = Context { env_tolerance, base };
    let mut sections = Vec::with_capacity(parsed.runs.len());
    let mut all_panels = Vec::new();
    for args in &parsed.runs {
        let config = RunConfig::try_parse_from(std::iter::once("qcm".to_string()).chain(args.iter().cloned()))
            .map_err(|e| CliError::Usage(format!("manifest run `{}`: {}", args.join(" "), e.kind())))?;
        let section = analyse(&config.command, &ctx, stdin)?;
        let panels = section.panels();
        if let Some(p) = common(&config.command).and_then(|c| c.plot.as_deref()) {
            write_plot(&ctx.resolve(p), &panels)?;
        }
        all_panels.extend(panels);
        sections.push(ReportEntry {
            args: args.clone(),
            result: section,
        });
    }
    if let Some(p) = plot {
        write_plot(p, &all_panels)?;
    }
    let report = ManifestReport {
        command: "report",
        sections,
    };
    render(&report, || report.text(), output)
}

/// Execute a parsed configuration and return the rendered report.
pub fn run(config: &RunConfig, env_tolerance: Option<&str>, stdin: &mut dyn Read) -> CliResult<String> {
    if let Command::Report { manifest, output, plot } = &config.command {
        return report(manifest, *output, plot.as_deref(), env_tolerance, stdin);
    }
    let ctx = Context {
        env_tolerance,
        base: None,
    };
    let section = analyse(&config.command, &ctx, stdin)?;
    let common = common(&config.command).expect("analysis command");
    if let Some(p) = &common.plot {
        write_plot(p, &section.panels())?;
    }
    render(&section, || section.text(), common.output)
}

/// Parse `args` (including the program name) and run them.
pub fn main_with<I, T>(args: I, env_tolerance: Option<&str>, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let status = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Outcome { status, stdout, stderr };
        }
    };
    match run(&config, env_tolerance, stdin) {
        Ok(stdout) => Outcome {
            status: 0,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            status: e.status(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
