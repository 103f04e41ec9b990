//! Maxwell–Boltzmann and Bose–Einstein occupation statistics, least-squares
//! fitting, BIC comparison, and the regression helper shared with the
//! deviation-profile analysis.

mod bic;
mod dist;
mod fit;
mod regression;

pub use bic::{compare_bic, BicComparison, Strength, POSITIVE_THRESHOLD, STRONG_THRESHOLD};
pub use dist::{be_pmf, mb_pmf, DistParams, Family};
pub use fit::{bic, fit_distribution, rss, DistFit, BRACKET_TOLERANCE, MULTISTART_SEGMENTS};
pub use regression::{linear_regression, t_quantile_95, RegressionResult};
