use nalgebra::Matrix4;
use num_complex::Complex64;
use serde::Serialize;

use super::{ComplexVector4, Observable4, STATE_NORM_TOLERANCE};
use crate::{Error, Result};

/// Singular values at or below this are treated as zero when counting rank.
pub const RANK_THRESHOLD: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Expectation {
    pub value: f64,
    /// Imaginary part of ⟨ψ|E|ψ⟩, non-zero only through rounding in E.
    pub imaginary: f64,
}

/// ⟨ψ|E|ψ⟩ for a (near-)normalized state and (near-)Hermitian observable.
pub fn expectation(state: &ComplexVector4, obs: &Observable4, hermiticity_tolerance: f64) -> Result<Expectation> {
    obs.require_hermitian(hermiticity_tolerance)?;
    if !state.is_normalized(STATE_NORM_TOLERANCE) {
        return Err(Error::validation(
            "state",
            format!("norm {} is not within {STATE_NORM_TOLERANCE} of 1", state.norm()),
        ));
    }
    let psi = &state.0;
    let z = psi.dotc(&(obs.0 * psi));
    Ok(Expectation {
        value: z.re,
        imaginary: z.im,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct StateSchmidt {
    /// Descending.
    pub singular_values: [f64; 2],
    pub rank: usize,
}

impl StateSchmidt {
    pub fn entangled(&self) -> bool {
        self.rank > 1
    }
}

/// Schmidt coefficients of a ℂ²⊗ℂ² state from the SVD of its 2×2
/// coefficient matrix.
pub fn state_schmidt(state: &ComplexVector4) -> StateSchmidt {
    let sv = state.coefficient_matrix().singular_values();
    let (hi, lo) = if sv[0] >= sv[1] { (sv[0], sv[1]) } else { (sv[1], sv[0]) };
    let rank = [hi, lo].iter().filter(|s| **s > RANK_THRESHOLD).count();
    StateSchmidt {
        singular_values: [hi, lo],
        rank,
    }
}

/// Reorder `O[(i,j),(k,l)]` into `R[(i,k),(j,l)]`, so that `O = A ⊗ B`
/// becomes the rank-one matrix `vec(A) vec(B)ᵀ`.
pub fn realign(m: &Matrix4<Complex64>) -> Matrix4<Complex64> {
    Matrix4::from_fn(|row, col| {
        let (i, k) = (row / 2, row % 2);
        let (j, l) = (col / 2, col % 2);
        m[(2 * i + j, 2 * k + l)]
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OperatorSchmidt {
    /// Operator-Schmidt coefficients, descending.
    pub schmidt_coefficients: Vec<f64>,
    pub product: bool,
    /// Frobenius distance to the nearest product operator A ⊗ B.
    pub nearest_product_error: f64,
}

impl OperatorSchmidt {
    pub fn rank(&self) -> usize {
        let top = self.schmidt_coefficients.first().copied().unwrap_or(0.0);
        self.schmidt_coefficients
            .iter()
            .filter(|s| **s > RANK_THRESHOLD * top)
            .count()
    }
}

/// Operator-Schmidt decomposition across ℂ²⊗ℂ² via realignment and SVD.
pub fn operator_product_test(obs: &Observable4) -> OperatorSchmidt {
    let mut coeffs: Vec<f64> = realign(&obs.0).singular_values().iter().copied().collect();
    coeffs.sort_by(|a, b| b.total_cmp(a));
    let top = coeffs[0];
    let significant = coeffs.iter().filter(|s| **s > RANK_THRESHOLD * top).count();
    let tail: f64 = coeffs[1..].iter().map(|s| s * s).sum();
    OperatorSchmidt {
        schmidt_coefficients: coeffs,
        product: significant == 1,
        nearest_product_error: tail.sqrt(),
    }
}
