use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64;
use proptest::prelude::*;
use qcm::hilbert::generate::{born_table, hidden_variable_table, random_qubit_observable, random_state};
use qcm::hilbert::{
    expectation, expectations_from_table, operator_product_test, state_schmidt, ComplexVector4, Observable4,
    TSIRELSON_BOUND,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_hermitian(r: &mut ChaCha8Rng) -> Observable4 {
    use rand::RngExt;
    let m = Matrix4::from_fn(|_, _| Complex64::new(r.random_range(-1.0..1.0), r.random_range(-1.0..1.0)));
    Observable4((m + m.adjoint()).scale(0.5))
}

/// Nearest product A ⊗ B in Frobenius norm by alternating least squares,
/// run from several starts; returns the smallest residual norm found.
fn als_nearest_product(m: &Matrix4<Complex64>) -> f64 {
    let entry = |i: usize, k: usize, j: usize, l: usize| m[(2 * i + k, 2 * j + l)];
    let mut best = f64::INFINITY;
    for start in 0..4 {
        let mut b = Matrix2::from_fn(|r, c| {
            if r * 2 + c == start {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.1 * (r + 2 * c + start) as f64, 0.05)
            }
        });
        let mut a = Matrix2::zeros();
        for _ in 0..500 {
            let previous = a;
            let nb: f64 = b.iter().map(|z| z.norm_sqr()).sum();
            a = Matrix2::from_fn(|i, j| {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..2 {
                    for l in 0..2 {
                        s += entry(i, k, j, l) * b[(k, l)].conj();
                    }
                }
                s / nb
            });
            let na: f64 = a.iter().map(|z| z.norm_sqr()).sum();
            if na == 0.0 {
                break;
            }
            b = Matrix2::from_fn(|k, l| {
                let mut s = Complex64::new(0.0, 0.0);
                for i in 0..2 {
                    for j in 0..2 {
                        s += entry(i, k, j, l) * a[(i, j)].conj();
                    }
                }
                s / na
            });
            if (a - previous).iter().all(|z| z.norm() < 1e-14) {
                break;
            }
        }
        let approx = a.kronecker(&b);
        let err = (m - approx).iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        best = best.min(err);
    }
    best
}

#[test]
fn born_tables_respect_tsirelson() {
    let mut r = rng(1);
    for _ in 0..1000 {
        let state = random_state(&mut r);
        let a = [random_qubit_observable(&mut r), random_qubit_observable(&mut r)];
        let b = [random_qubit_observable(&mut r), random_qubit_observable(&mut r)];
        let chsh = expectations_from_table(&born_table(&state, a, b)).chsh;
        assert!(chsh.abs() <= TSIRELSON_BOUND + 1e-9, "{chsh}");
    }
}

#[test]
fn tsirelson_bound_is_attained() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let c = |x: f64| Complex64::new(x, 0.0);
    let bell = ComplexVector4::new([c(s), c(0.0), c(0.0), c(s)]);
    let pauli = |x: f64, z: f64| Matrix2::new(c(z), c(x), c(x), c(-z));
    // CHSH = E(A',B') + E(A',B) + E(A,B') − E(A,B).
    let a = [pauli(1.0, 0.0), pauli(0.0, 1.0)];
    let b = [pauli(-s, s), pauli(s, s)];
    let chsh = expectations_from_table(&born_table(&bell, a, b)).chsh;
    assert!((chsh.abs() - TSIRELSON_BOUND).abs() < 1e-9, "{chsh}");
}

#[test]
fn local_models_respect_classical_bound() {
    use rand::RngExt;
    let mut r = rng(2);
    let mut attained = false;
    for n in 0..1000 {
        let mut w = [0.0; 16];
        // Sparse mixtures reach the extreme points; dense ones the interior.
        let support = if n % 2 == 0 { 1 + n % 3 } else { 16 };
        for _ in 0..support {
            w[r.random_range(0..16)] += r.random::<f64>() + 1e-3;
        }
        let chsh = expectations_from_table(&hidden_variable_table(&w)).chsh;
        assert!(chsh.abs() <= 2.0 + 1e-12, "{chsh}");
        attained |= (chsh.abs() - 2.0).abs() < 1e-12;
    }
    assert!(attained);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn schmidt_rank_invariant_under_local_phases(seed in any::<u64>(), phi in 0.0..6.3f64, psi in 0.0..6.3f64) {
        let s = random_state(&mut rng(seed));
        let (e1, e2) = (Complex64::from_polar(1.0, phi), Complex64::from_polar(1.0, psi));
        let v = s.0;
        let t = ComplexVector4::new([e1 * v[0], e1 * v[1], e2 * v[2], e2 * v[3]]);
        let (a, b) = (state_schmidt(&s), state_schmidt(&t));
        prop_assert_eq!(a.rank, b.rank);
        for k in 0..2 {
            prop_assert!((a.singular_values[k] - b.singular_values[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn product_states_have_rank_one(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_state(&mut r).0;
        let s = ComplexVector4::product([x[0], x[1]], [x[2], x[3]]).normalized();
        prop_assert_eq!(state_schmidt(&s).rank, 1);
    }

    #[test]
    fn expectation_linear_and_phase_invariant(seed in any::<u64>(), c1 in -2.0..2.0f64, c2 in -2.0..2.0f64, g in 0.0..6.3f64) {
        let mut r = rng(seed);
        let s = random_state(&mut r);
        let (o1, o2) = (random_hermitian(&mut r), random_hermitian(&mut r));
        let combo = Observable4(o1.0.scale(c1) + o2.0.scale(c2));
        let e = |o: &Observable4, st: &ComplexVector4| expectation(st, o, 1e-9).unwrap().value;
        prop_assert!((e(&combo, &s) - (c1 * e(&o1, &s) + c2 * e(&o2, &s))).abs() < 1e-12);
        let rotated = ComplexVector4(s.0.map(|z| z * Complex64::from_polar(1.0, g)));
        prop_assert!((e(&o1, &rotated) - e(&o1, &s)).abs() < 1e-12);
    }

    #[test]
    fn operator_product_test_agrees_with_als(seed in any::<u64>()) {
        let o = random_hermitian(&mut rng(seed));
        let svd = operator_product_test(&o).nearest_product_error;
        let als = als_nearest_product(&o.0);
        prop_assert!((svd - als).abs() <= 1e-6, "svd {svd} vs als {als}");
    }

    #[test]
    fn product_operators_are_detected(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (random_qubit_observable(&mut r), random_qubit_observable(&mut r));
        let t = operator_product_test(&Observable4::kron(&a, &b));
        prop_assert!(t.product);
        prop_assert_eq!(t.rank(), 1);
        prop_assert!(t.nearest_product_error < 1e-12);
    }
}
