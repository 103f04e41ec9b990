//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! libtest harness so the lines always reach the terminal.

mod common;

use std::time::{Duration, Instant};

use qcm::classicality::{check_conjunction, check_disjunction, check_negation, deviation_profile};
use qcm::data::{reference, CountDataset, Measurement, MembershipRecord};
use qcm::fock::reported::{goldfish_params, reported_triples};
use qcm::fock::{fit_general_quadruple, fit_two_sector, Connective, FitPolicy, GeneralFitOptions};
use qcm::hilbert::generate::{born_table, random_hidden_variable_table, random_qubit_observable, random_state};
use qcm::hilbert::{
    expectations_from_table, marginal_law_check, verify_reference_model, ModelTolerances, MARGINAL_TOLERANCE,
    TSIRELSON_BOUND,
};
use qcm::stats::{fit_distribution, DistParams, Family};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn within(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol
}

fn ac1_chsh() -> Outcome {
    let table = reference::animal_acts_table();
    let report = expectations_from_table(&table);
    let mut fastest = Duration::MAX;
    for _ in 0..20 {
        let start = Instant::now();
        std::hint::black_box(expectations_from_table(std::hint::black_box(&table)));
        fastest = fastest.min(start.elapsed());
    }
    let expected = [
        (Measurement::AB, -0.778),
        (Measurement::ApB, 0.655),
        (Measurement::ABp, 0.358),
        (Measurement::ApBp, 0.630),
    ];
    let e_ok = expected.iter().all(|(m, e)| within(report.expectation(*m), *e, 0.002));
    let chsh_ok = within(report.chsh, 2.4197, 0.005);
    let fast = fastest < Duration::from_millis(1);
    outcome(
        e_ok && chsh_ok && fast,
        format!(
            "E = ({:.4}, {:.4}, {:.4}, {:.4}), CHSH = {:.4}, {:?}",
            report.e_ab, report.e_apb, report.e_abp, report.e_apbp, report.chsh, fastest
        ),
    )
}

fn ac2_marginals() -> Outcome {
    let checks = marginal_law_check(&reference::animal_acts_table(), MARGINAL_TOLERANCE).unwrap();
    let smallest = checks.iter().map(|c| c.difference()).fold(f64::INFINITY, f64::min);
    let horse = checks.iter().find(|c| c.label == "Horse");
    let detail = match horse {
        Some(h) => format!("{} checks, smallest gap {smallest:.3}, Horse {:.3} vs {:.3}", checks.len(), h.lhs, h.rhs),
        None => format!("{} checks, smallest gap {smallest:.3}", checks.len()),
    };
    outcome(checks.len() >= 4 && checks.iter().all(|c| c.difference() > 0.01), detail)
}

fn ac3_reference_model() -> Outcome {
    let tol = ModelTolerances {
        hermiticity: 1e-3,
        eigenvalue: 0.05,
        expectation: 0.02,
        ..ModelTolerances::default()
    };
    let report = verify_reference_model(&reference::animal_acts_model(), &reference::animal_acts_table(), &tol);
    let named = ["observables", "expectations", "state-entangled", "measurements-entangled"];
    let checks_ok = named.iter().all(|n| report.check(n).is_some_and(|c| c.passed));
    let rank_ok = report.state_schmidt.rank == 2;
    let non_product = report.observables.iter().all(|o| !o.product_test.product);
    let class = report.classification.clone().unwrap_or_default();
    outcome(
        checks_ok && rank_ok && non_product && class == "nonlocal non-marginal box modeling 1",
        format!("Schmidt rank {}, classification {class:?}", report.state_schmidt.rank),
    )
}

fn ac4_closed_forms() -> Outcome {
    let mb = DistParams::mb(0.5, 11).unwrap();
    let want = [(11, 0.0005), (10, 0.0054), (6, 0.2256)];
    let mb_ok = want.iter().all(|(k, v)| within(mb.pmf(*k).unwrap(), *v, 5e-4));
    let be = DistParams::be(0.5, 11).unwrap().pmf_vec();
    let be_ok = be.len() == 12 && be.iter().all(|p| *p == 1.0 / 12.0);
    outcome(
        mb_ok && be_ok,
        format!(
            "MB pmf(11, 10, 6) = ({:.6}, {:.5}, {:.5}), BE uniform: {be_ok}",
            mb.pmf(11).unwrap(),
            mb.pmf(10).unwrap(),
            mb.pmf(6).unwrap()
        ),
    )
}

fn ac5_goldfish_general() -> Outcome {
    let r = reference::goldfish();
    let (singles, observed) = r.negation_quadruple().unwrap();
    let predicted = goldfish_params().predict(singles);
    let quoted_ok = predicted.iter().zip([0.43, 0.91, 0.18, 0.43]).all(|(p, w)| within(*p, w, 0.02));
    let fit = fit_general_quadruple(&r, GeneralFitOptions::default()).unwrap();
    let fit_ok = fit.residual <= 0.01 && observed == [0.43, 0.91, 0.18, 0.43];
    outcome(
        quoted_ok && fit_ok,
        format!(
            "quoted parameters give ({:.3}, {:.3}, {:.3}, {:.3}), fitter max residual {:.1e}",
            predicted[0], predicted[1], predicted[2], predicted[3], fit.residual
        ),
    )
}

fn ac6_profiles() -> Outcome {
    let p = deviation_profile(&reference::goldfish()).unwrap();
    let goldfish_ok = p
        .values()
        .iter()
        .zip([-0.41, -0.44, -0.49, -0.53, -0.95])
        .all(|(g, w)| within(*g, w, 1e-9));

    // Sector-1 limit: every conjunction is the plain average and each
    // negation is the complement. With dyadic weights the arithmetic is
    // exact; for arbitrary weights it holds to rounding.
    let limit = |a: f64, b: f64| {
        let avg = |x: f64, y: f64| (x + y) / 2.0;
        let r = MembershipRecord::with_negations(
            "limit",
            [a, b, 1.0 - a, 1.0 - b],
            [avg(a, b), avg(a, 1.0 - b), avg(1.0 - a, b), avg(1.0 - a, 1.0 - b)],
        )
        .unwrap();
        deviation_profile(&r).unwrap().values()
    };
    let want = [-0.5, -0.5, -0.5, -0.5, -1.0];
    let l = limit(0.625, 0.25);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let limit_ok = l == want
        && (0..1000).all(|_| {
            let got = limit(rng.random(), rng.random());
            got.iter().zip(want).all(|(g, w)| within(*g, w, 1e-15))
        });
    outcome(
        goldfish_ok && limit_ok,
        format!(
            "Goldfish ({:.2}, {:.2}, {:.2}, {:.2}, {:.2}), limit {:?}",
            p.i_a,
            p.i_b,
            p.i_ap,
            p.i_bp,
            p.i_total,
            l
        ),
    )
}

fn ac7_classicality_suite() -> Outcome {
    const EXACT: f64 = 1e-12;
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let mut joints_ok = 0;
    let mut worst_fit: f64 = 0.0;
    for _ in 0..1000 {
        let w: [f64; 4] = std::array::from_fn(|_| rng.random::<f64>());
        let s: f64 = w.iter().sum();
        let p = w.map(|x| x / s);
        let [ab, abp, apb, apbp] = p;
        let singles = [ab + abp, ab + apb, apb + apbp, abp + apbp].map(|x: f64| x.min(1.0));
        let r = MembershipRecord::with_negations("joint", singles, p).unwrap();
        let classical = check_negation(&r, EXACT).unwrap().satisfied
            && check_conjunction(singles[0], singles[1], ab, EXACT).unwrap().satisfied
            && check_disjunction(singles[0], singles[1], (singles[0] + singles[1] - ab).clamp(0.0, 1.0), EXACT)
                .unwrap()
                .satisfied;
        let fit = fit_general_quadruple(
            &r,
            GeneralFitOptions {
                random_starts: 0,
                ..Default::default()
            },
        )
        .unwrap();
        let sector_two = Measurement::ALL.iter().all(|m| (fit.params.pair(*m).m2 - 1.0).abs() <= 1e-9);
        worst_fit = worst_fit.max(fit.residual);
        if classical && sector_two && fit.residual <= 1e-9 {
            joints_ok += 1;
        }
    }

    let local_ok = (0..1000)
        .filter(|_| expectations_from_table(&random_hidden_variable_table(&mut rng)).chsh.abs() <= 2.0 + 1e-12)
        .count();

    let born_ok = (0..1000)
        .filter(|_| {
            let state = random_state(&mut rng);
            let a = [random_qubit_observable(&mut rng), random_qubit_observable(&mut rng)];
            let b = [random_qubit_observable(&mut rng), random_qubit_observable(&mut rng)];
            expectations_from_table(&born_table(&state, a, b)).chsh.abs() <= TSIRELSON_BOUND + 1e-9
        })
        .count();

    let elapsed = start.elapsed();
    outcome(
        joints_ok == 1000 && local_ok == 1000 && born_ok == 1000 && elapsed < Duration::from_secs(10),
        format!(
            "joints {joints_ok}/1000 (worst fit {worst_fit:.1e}), local {local_ok}/1000, Born {born_ok}/1000, {:.2} s",
            elapsed.as_secs_f64()
        ),
    )
}

/// Independent restatement of the two-sector prediction.
fn model(mu_a: f64, mu_b: f64, m2: f64, theta_deg: f64, conn: Connective) -> f64 {
    let logical = match conn {
        Connective::And => mu_a * mu_b,
        Connective::Or => mu_a + mu_b - mu_a * mu_b,
    };
    let magnitude = if mu_a + mu_b > 1.0 {
        ((1.0 - mu_a) * (1.0 - mu_b)).sqrt()
    } else {
        (mu_a * mu_b).sqrt()
    };
    m2 * logical + (1.0 - m2) * ((mu_a + mu_b) / 2.0 + magnitude * theta_deg.to_radians().cos())
}

/// Fit one record and confirm it on a 1000 × 1000 (m², θ) grid: the grid
/// minimum must be within the grid resolution of zero, and the exact
/// solution at the grid-best m² must sit within one θ cell of the grid-best
/// angle.
fn grid_confirmed(mu_a: f64, mu_b: f64, target: f64, conn: Connective) -> (bool, f64) {
    let fit = fit_two_sector(mu_a, mu_b, target, conn, FitPolicy::MinInterference).unwrap();
    let direct = (model(mu_a, mu_b, fit.params.m2, fit.params.theta.degrees(), conn) - target).abs();
    if !fit.feasible || fit.residual > 1e-9 || direct > 1e-9 {
        return (false, fit.residual);
    }
    const N: usize = 1000;
    let dm = 1.0 / (N - 1) as f64;
    let dt = 180.0 / (N - 1) as f64;
    let (mut best, mut at) = (f64::INFINITY, (0.0, 0.0));
    for i in 0..N {
        let m2 = i as f64 * dm;
        for j in 0..N {
            let th = j as f64 * dt;
            let r = (model(mu_a, mu_b, m2, th, conn) - target).abs();
            if r < best {
                best = r;
                at = (m2, th);
            }
        }
    }
    let i = qcm::fock::interference_magnitude(mu_a, mu_b);
    let spread = (conn.logical(mu_a, mu_b) - (mu_a + mu_b) / 2.0).abs() + i;
    let eta = spread * dm + i * dt.to_radians();
    let at_grid = fit_two_sector(mu_a, mu_b, target, conn, FitPolicy::FixedSectorWeight { m2: at.0 }).unwrap();
    let agrees = at_grid.feasible && (at_grid.params.theta.degrees() - at.1).abs() <= dt + 1e-9;
    (best <= eta && agrees, fit.residual)
}

fn ac8_round_trips() -> Outcome {
    let mint = reference::mint();
    let sunglasses = reference::sunglasses();
    let (mint_ok, mint_res) = grid_confirmed(mint.mu_a, mint.mu_b, 0.9, Connective::And);
    let (sun_ok, sun_res) = grid_confirmed(sunglasses.mu_a, sunglasses.mu_b, 0.1, Connective::Or);

    let mut worst: f64 = 0.0;
    for n in [7, 8, 9, 11] {
        for p1 in [0.1, 0.3, 0.57, 0.8, 0.95] {
            for family in Family::ALL {
                let pmf = DistParams::new(family, p1, n).unwrap().pmf_vec();
                let data = CountDataset::new("planted", n, ["x", "y"], pmf).unwrap();
                let fit = fit_distribution(&data, family).unwrap();
                worst = worst.max((fit.params.p1 - p1).abs());
            }
        }
    }
    outcome(
        mint_ok && sun_ok && worst <= 1e-6,
        format!("Mint residual {mint_res:.1e}, Sunglasses residual {sun_res:.1e}, worst p1 error {worst:.1e}"),
    )
}

/// Items that cannot be reproduced from the bundled data. The criterion is
/// that they are flagged explicitly: the quoted triples must show their
/// known gaps and the substitute suites (AC7, AC8) must exist.
fn ac9_documented_gaps() -> Outcome {
    let triples = reported_triples();
    let expected = [(0.9, 0.8698), (0.1, 0.0579), (0.15, 0.1401)];
    let mut lines = Vec::new();
    let mut consistent = triples.len() == 3;
    for (t, (observed, evaluated)) in triples.iter().zip(expected) {
        consistent &= within(t.observed, observed, 1e-12) && within(t.evaluated, evaluated, 5e-4);
        lines.push(format!("{} {:.4} vs {:.2}", t.record.exemplar, t.evaluated, t.observed));
    }
    outcome(
        consistent,
        format!(
            "not reproducible: full membership datasets, raw category counts and regression inputs; quoted triples evaluate to {}",
            lines.join(", ")
        ),
    )
}

fn ac10_golden() -> Outcome {
    let bad = common::golden_mismatches();
    outcome(
        bad.is_empty(),
        if bad.is_empty() {
            format!("{} golden files match", common::GOLDEN_CASES.len())
        } else {
            format!("mismatched: {}", bad.join(", "))
        },
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "CHSH reproduction", ac1_chsh),
        ("AC2", "marginal-law violation", ac2_marginals),
        ("AC3", "reference model verification", ac3_reference_model),
        ("AC4", "MB/BE closed forms", ac4_closed_forms),
        ("AC5", "Goldfish general model", ac5_goldfish_general),
        ("AC6", "deviation profiles", ac6_profiles),
        ("AC7", "classicality property suite", ac7_classicality_suite),
        ("AC8", "fit round trips", ac8_round_trips),
        ("AC9", "documented non-reproducible items", ac9_documented_gaps),
        ("AC10", "CLI golden files", ac10_golden),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let o = check();
        if !o.passed {
            failed += 1;
        }
        println!("{id:<5} {:<4} {name}: {}", if o.passed { "PASS" } else { "FAIL" }, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
