//! Synthetic coincidence tables: Born-rule tables from a state and local
//! qubit observables, and mixtures of local deterministic strategies.

use nalgebra::Matrix2;
use num_complex::Complex64;
use rand::{Rng, RngExt};
use rand_distr::StandardNormal;

use super::{ComplexVector4, Observable4};
use crate::data::{Block, CoincidenceTable, Measurement, Outcome};

const SIGNS: [i8; 2] = [1, -1];

/// Outcome labels: `A+`, `A-`, `A'+`, ... so that marginals pair up across blocks.
fn label(side: &str, s: i8) -> String {
    format!("{side}{}", if s > 0 { '+' } else { '-' })
}

fn sides(m: Measurement) -> (usize, usize, &'static str, &'static str) {
    match m {
        Measurement::AB => (0, 0, "A", "B"),
        Measurement::ABp => (0, 1, "A", "B'"),
        Measurement::ApB => (1, 0, "A'", "B"),
        Measurement::ApBp => (1, 1, "A'", "B'"),
    }
}

/// Uniformly distributed unit vector in ℂ⁴.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R) -> ComplexVector4 {
    let mut c = || Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    ComplexVector4::new([c(), c(), c(), c()]).normalized()
}

/// n·σ for a uniformly random unit Bloch vector n: a 2×2 observable with
/// eigenvalues +1 and -1.
pub fn random_qubit_observable<R: Rng + ?Sized>(rng: &mut R) -> Matrix2<Complex64> {
    let n: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
    let len = n.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [x, y, z] = n.map(|v| v / len);
    Matrix2::new(
        Complex64::new(z, 0.0),
        Complex64::new(x, -y),
        Complex64::new(x, y),
        Complex64::new(-z, 0.0),
    )
}

fn projector(o: &Matrix2<Complex64>, s: i8) -> Matrix2<Complex64> {
    (Matrix2::identity() + o.scale(f64::from(s))).scale(0.5)
}

/// Born-rule coincidence table for `state` measured with `a[0] = A`,
/// `a[1] = A'`, `b[0] = B`, `b[1] = B'`. Each outcome's sign is the product
/// of the two local signs.
pub fn born_table(state: &ComplexVector4, a: [Matrix2<Complex64>; 2], b: [Matrix2<Complex64>; 2]) -> CoincidenceTable {
    let psi = state.normalized().0;
    let blocks = Measurement::ALL
        .into_iter()
        .map(|m| {
            let (i, j, la, lb) = sides(m);
            let mut outcomes = Vec::with_capacity(4);
            for sa in SIGNS {
                for sb in SIGNS {
                    let p = Observable4::kron(&projector(&a[i], sa), &projector(&b[j], sb));
                    let prob = psi.dotc(&(p.0 * psi)).re.clamp(0.0, 1.0);
                    outcomes.push(Outcome::new(&label(la, sa), &label(lb, sb), sa * sb, prob));
                }
            }
            Block::new(m, outcomes)
        })
        .collect();
    CoincidenceTable::new(blocks).expect("Born-rule blocks are valid")
}

/// Table of a mixture of local deterministic strategies. Strategy `k` fixes
/// the outcomes of (A, A', B, B') to the signs of bits 3, 2, 1, 0 of `k`
/// (bit set = -1). Weights are normalized.
pub fn hidden_variable_table(weights: &[f64; 16]) -> CoincidenceTable {
    let total: f64 = weights.iter().sum();
    let bit = |k: usize, b: usize| if k >> b & 1 == 1 { -1i8 } else { 1 };
    let blocks = Measurement::ALL
        .into_iter()
        .map(|m| {
            let (i, j, la, lb) = sides(m);
            let mut outcomes = Vec::with_capacity(4);
            for sa in SIGNS {
                for sb in SIGNS {
                    let p: f64 = (0..16)
                        .filter(|&k| bit(k, 3 - i) == sa && bit(k, 1 - j) == sb)
                        .map(|k| weights[k] / total)
                        .sum::<f64>()
                        .min(1.0);
                    outcomes.push(Outcome::new(&label(la, sa), &label(lb, sb), sa * sb, p));
                }
            }
            Block::new(m, outcomes)
        })
        .collect();
    CoincidenceTable::new(blocks).expect("strategy mixtures are valid")
}

pub fn random_hidden_variable_table<R: Rng + ?Sized>(rng: &mut R) -> CoincidenceTable {
    let mut w = [0.0; 16];
    for x in &mut w {
        *x = rng.random::<f64>();
    }
    w[rng.random_range(0..16)] += 1e-3;
    hidden_variable_table(&w)
}
