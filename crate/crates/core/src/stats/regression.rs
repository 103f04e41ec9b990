use serde::Serialize;
use statrs::distribution::{ContinuousCDF, StudentsT};

use crate::{Error, Result};

/// Ordinary least-squares line and a Student-t interval on the mean of `y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    /// Coefficient of determination. Defined as 1 when `y` is constant (the
    /// fitted horizontal line reproduces it exactly).
    pub r2: f64,
    pub mean: f64,
    /// Standard error of the slope.
    pub slope_se: f64,
    pub ci95: (f64, f64),
}

impl RegressionResult {
    pub fn ci_width(&self) -> f64 {
        self.ci95.1 - self.ci95.0
    }
}

/// Two-sided 95% Student-t quantile with `df` degrees of freedom.
pub fn t_quantile_95(df: usize) -> f64 {
    let t = StudentsT::new(0.0, 1.0, df as f64).expect("df >= 1");
    t.inverse_cdf(0.975)
}

pub fn linear_regression(xs: &[f64], ys: &[f64]) -> Result<RegressionResult> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch {
            left: xs.len(),
            right: ys.len(),
        });
    }
    let n = xs.len();
    if n < 3 {
        return Err(Error::InsufficientData { needed: 3, got: n });
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::validation("regression", "all abscissae are equal"));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - (slope * x + intercept)).powi(2))
        .sum();
    let r2 = if syy == 0.0 { 1.0 } else { 1.0 - rss / syy };
    let slope_se = (rss / (nf - 2.0) / sxx).sqrt();
    let sd = (syy / (nf - 1.0)).sqrt();
    let half = t_quantile_95(n - 1) * sd / nf.sqrt();
    Ok(RegressionResult {
        slope,
        intercept,
        r2,
        mean: my,
        slope_se,
        ci95: (my - half, my + half),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let xs: Vec<f64> = (1..=10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let r = linear_regression(&xs, &ys).unwrap();
        assert!((r.slope - 2.0).abs() < 1e-12);
        assert!((r.intercept - 1.0).abs() < 1e-12);
        assert!((r.r2 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn constant_data_has_zero_width() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let r = linear_regression(&xs, &[-0.42; 4]).unwrap();
        assert_eq!(r.slope, 0.0);
        assert_eq!(r.mean, -0.42);
        assert_eq!(r.ci_width(), 0.0);
        assert_eq!(r.r2, 1.0);
    }

    #[test]
    fn t_quantiles() {
        // Standard table values.
        assert!((t_quantile_95(1) - 12.7062).abs() < 1e-3);
        assert!((t_quantile_95(10) - 2.2281).abs() < 1e-4);
        assert!((t_quantile_95(1000) - 1.9623).abs() < 1e-4);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            linear_regression(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::InsufficientData { needed: 3, got: 2 })
        ));
        assert!(matches!(
            linear_regression(&[1.0, 2.0, 3.0], &[1.0, 2.0]),
            Err(Error::LengthMismatch { .. })
        ));
    }
}
