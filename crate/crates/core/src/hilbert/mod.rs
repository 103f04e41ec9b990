//! Small complex linear algebra on ℂ⁴ ≅ ℂ²⊗ℂ² and CHSH analysis.
//!
//! Factor ordering for the tensor isomorphism is row-major with the first
//! factor on the A side: basis index `2·i + j` ↔ `|i⟩⊗|j⟩`.

mod chsh;
mod entanglement;
pub mod generate;
mod model;

pub use chsh::{
    expectations_from_table, marginal_law_check, sides_violated, ChshReport, MarginalCheck, Side,
    CLASSICAL_BOUND, MARGINAL_TOLERANCE, TSIRELSON_BOUND,
};
pub use entanglement::{
    expectation, operator_product_test, realign, state_schmidt, Expectation, OperatorSchmidt,
    StateSchmidt,
};
pub use model::{verify_reference_model, Check, ModelReport, ModelTolerances, ObservableCheck, ReferenceModel};

use nalgebra::{Matrix2, Matrix4, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default tolerance for treating a state as normalized.
pub const STATE_NORM_TOLERANCE: f64 = 1e-3;

/// A complex number as it appears in model files: rectangular `{re, im}` or
/// polar `{mod, argDeg}` with the phase in degrees. Output is always rectangular.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Rect {
        re: f64,
        im: f64,
    },
    Polar {
        #[serde(rename = "mod")]
        modulus: f64,
        #[serde(rename = "argDeg")]
        arg_deg: f64,
    },
}

impl From<ComplexJson> for Complex64 {
    fn from(c: ComplexJson) -> Self {
        match c {
            ComplexJson::Rect { re, im } => Complex64::new(re, im),
            ComplexJson::Polar { modulus, arg_deg } => Complex64::from_polar(modulus, arg_deg.to_radians()),
        }
    }
}

impl From<Complex64> for ComplexJson {
    fn from(c: Complex64) -> Self {
        ComplexJson::Rect { re: c.re, im: c.im }
    }
}

/// Four complex amplitudes in the canonical basis of ℂ⁴.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexVector4(pub Vector4<Complex64>);

impl ComplexVector4 {
    pub fn new(amplitudes: [Complex64; 4]) -> Self {
        ComplexVector4(Vector4::from(amplitudes))
    }

    /// Amplitudes given as (modulus, phase in degrees).
    pub fn from_polar_deg(entries: [(f64, f64); 4]) -> Self {
        Self::new(entries.map(|(r, deg)| Complex64::from_polar(r, deg.to_radians())))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalized(&self) -> Self {
        ComplexVector4(self.0.unscale(self.norm()))
    }

    pub fn is_normalized(&self, tolerance: f64) -> bool {
        (self.norm() - 1.0).abs() <= tolerance
    }

    /// Tensor product a ⊗ b of two ℂ² vectors.
    pub fn product(a: [Complex64; 2], b: [Complex64; 2]) -> Self {
        Self::new([a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]])
    }

    /// Amplitudes arranged as the 2×2 coefficient matrix `c[i][j]` of |i⟩⊗|j⟩.
    pub fn coefficient_matrix(&self) -> Matrix2<Complex64> {
        Matrix2::new(self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

impl Serialize for ComplexVector4 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<ComplexJson> = self.0.iter().map(|c| (*c).into()).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexVector4 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = <[ComplexJson; 4]>::deserialize(d)?;
        Ok(ComplexVector4::new(v.map(Complex64::from)))
    }
}

/// A 4×4 complex matrix meant to be a self-adjoint ±1 observable
/// (outcome +1 and -1 each with multiplicity two).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observable4(pub Matrix4<Complex64>);

/// Numerical health of an [`Observable4`] against its declared spectrum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ObservableDiagnostics {
    /// max |A - A†| entrywise.
    pub hermiticity: f64,
    pub trace: f64,
    /// Eigenvalues of the Hermitian part, ascending.
    pub eigenvalues: [f64; 4],
    pub issues: Vec<String>,
}

impl ObservableDiagnostics {
    pub fn ok(&self) -> bool {
        self.issues.is_empty()
    }
}

impl Observable4 {
    pub fn from_rows(rows: [[Complex64; 4]; 4]) -> Self {
        Observable4(Matrix4::from_fn(|i, j| rows[i][j]))
    }

    pub fn from_real_diagonal(d: [f64; 4]) -> Self {
        Observable4(Matrix4::from_diagonal(&Vector4::from(d.map(|x| Complex64::new(x, 0.0)))))
    }

    pub fn identity() -> Self {
        Observable4(Matrix4::identity())
    }

    /// Kronecker product A ⊗ B of two 2×2 matrices.
    pub fn kron(a: &Matrix2<Complex64>, b: &Matrix2<Complex64>) -> Self {
        Observable4(Matrix4::from_fn(|r, c| a[(r / 2, c / 2)] * b[(r % 2, c % 2)]))
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        let m = &self.0;
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// (A + A†)/2.
    pub fn hermitian_part(&self) -> Matrix4<Complex64> {
        (self.0 + self.0.adjoint()).scale(0.5)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut ev: Vec<f64> = self.hermitian_part().symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        [ev[0], ev[1], ev[2], ev[3]]
    }

    pub fn diagnostics(&self, tol: &ModelTolerances) -> ObservableDiagnostics {
        let hermiticity = self.hermiticity_deviation();
        let trace = self.trace();
        let eigenvalues = self.eigenvalues();
        let mut issues = Vec::new();
        if hermiticity > tol.hermiticity {
            issues.push(format!(
                "hermiticity deviation {hermiticity:.3e} exceeds {:.0e}",
                tol.hermiticity
            ));
        }
        if trace.abs() > tol.trace {
            issues.push(format!("trace {trace:.4} is not within {} of 0", tol.trace));
        }
        let expected = [-1.0, -1.0, 1.0, 1.0];
        let bad: Vec<String> = eigenvalues
            .iter()
            .zip(expected)
            .filter(|(ev, want)| (**ev - want).abs() > tol.eigenvalue)
            .map(|(ev, want)| format!("{ev:.4} (expected {want:+})"))
            .collect();
        if !bad.is_empty() {
            issues.push(format!(
                "eigenvalues off the ±1 spectrum by more than {}: {}",
                tol.eigenvalue,
                bad.join(", ")
            ));
        }
        ObservableDiagnostics {
            hermiticity,
            trace,
            eigenvalues,
            issues,
        }
    }

    pub(crate) fn require_hermitian(&self, tolerance: f64) -> Result<()> {
        let deviation = self.hermiticity_deviation();
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(())
    }
}

impl Serialize for Observable4 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<ComplexJson>> = (0..4)
            .map(|i| (0..4).map(|j| self.0[(i, j)].into()).collect())
            .collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Observable4 {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[ComplexJson; 4]; 4]>::deserialize(d)?;
        Ok(Observable4::from_rows(rows.map(|r| r.map(Complex64::from))))
    }
}
