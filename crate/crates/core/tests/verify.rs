use std::f64::consts::PI;

use proptest::prelude::*;
use s3_coulomb::polycore::{rat, DampedTrigExpr, PolyB, TrigExpr};
use s3_coulomb::specfun::{psi_chi, s_function, GegenbauerConvention, PaperRodrigues, Standard};
use s3_coulomb::spectrum::{energy_exact, shifted_casimir_eigenvalue};
use s3_coulomb::verify::{
    apply, check_free_eigen, check_perturbed_eigen, check_radial_reduction, check_recurrences,
    check_transfer_identity, check_voala, ladder_annihilates, recurrence_cases, sample_points,
    CheckRegistry, RadialOperator, RecurrenceStatus, Status, VerifyConfig,
};

const CONVENTIONS: [&dyn GegenbauerConvention; 2] = [&Standard, &PaperRodrigues];

#[test]
fn exact_sweeps_through_k8() {
    let mut cases = 0;
    for k in 0..=8 {
        for l in 0..=k {
            assert!(
                check_perturbed_eigen(k, l).unwrap(),
                "perturbed K={k} l={l}"
            );
            assert!(check_radial_reduction(k, l).unwrap(), "radial K={k} l={l}");
            for conv in CONVENTIONS {
                assert!(check_free_eigen(k, l, conv).unwrap(), "free K={k} l={l}");
                assert!(
                    check_transfer_identity(k, l, conv).unwrap(),
                    "transfer K={k} l={l}"
                );
            }
            cases += 1;
        }
    }
    assert_eq!(cases, 45);
}

#[test]
fn free_eigen_through_k10() {
    for k in 0..=10 {
        for l in 0..=k {
            assert!(check_free_eigen(k, l, &Standard).unwrap());
        }
    }
}

#[test]
fn eigenvalue_consistency() {
    for k in 0..=20 {
        assert_eq!(energy_exact(k), shifted_casimir_eigenvalue(k));
    }
}

#[test]
fn ladder_annihilation_through_k50() {
    assert!((0..=50).all(ladder_annihilates));
}

#[test]
fn radial_reduction_b_degree() {
    for k in 0..=5 {
        let u = DampedTrigExpr::damped(k, psi_chi(k, k).unwrap().mul_sin_power(1));
        let image = apply(RadialOperator::RosenMorse1D(k), &u);
        // ψ_K^K = sin^K carries no b, so both sides are at most quadratic in b
        assert!(image.body().b_degree().unwrap() <= 2);
    }
}

#[test]
fn ground_state_radial_example() {
    // U = sin χ e^{-bχ}, ε + 1 = 1 - b²
    let u = DampedTrigExpr::damped(0, TrigExpr::sin());
    let image = apply(RadialOperator::RosenMorse1D(0), &u);
    let one_minus_b2 = PolyB::new(vec![rat(1, 1), rat(0, 1), rat(-1, 1)]);
    assert_eq!(image, u.scale(&one_minus_b2));
}

#[test]
fn ladder_on_s10() {
    let s10: DampedTrigExpr = s_function(1, 0, &PaperRodrigues).unwrap().into();
    let image = apply(RadialOperator::Ladder(1), &s10);
    let expected = TrigExpr::sin().mul_csc2().scale(&PolyB::from_i64(2));
    assert_eq!(image.body(), &expected);
}

#[test]
fn recurrence_audit() {
    let report = check_recurrences(
        &[(1, 0), (2, 1), (3, 2), (3, 1), (2, 0), (3, 0)],
        &PaperRodrigues,
    )
    .unwrap();
    let c = |i: usize| report[i].constant.clone();
    assert_eq!(c(0), Some(rat(2, 1)));
    assert_eq!(c(1), Some(rat(4, 1)));
    assert_eq!(c(2), Some(rat(6, 1)));
    assert_eq!(c(3), Some(rat(20, 3)));
    assert!(report[..4]
        .iter()
        .all(|e| e.status == RecurrenceStatus::Agrees));
    assert_eq!(c(4), Some(rat(3, 1)));
    assert_eq!(report[4].status, RecurrenceStatus::Discrepancy);
    assert!(report[4].note.contains("differs from printed 2"));
    assert_eq!(c(5), None);
    assert_eq!(recurrence_cases(3).len(), 6);
}

#[test]
fn voala_sampled() {
    let points = sample_points(99, 50);
    for k in 0..=3 {
        for b in [0.45, 1.0, 2.0] {
            let rep = check_voala(k, b, &points, &PaperRodrigues).unwrap();
            assert!(rep.max_residual <= 1e-8, "K={k} b={b}: {rep:?}");
            assert!(rep.max_eigen_residual <= 1e-10, "K={k} b={b}: {rep:?}");
        }
    }
    let rep = check_voala(1, 0.0, &points, &Standard).unwrap();
    assert!(rep.max_residual <= 1e-8);
}

#[test]
fn registry_report_kmax3() {
    let cfg = VerifyConfig {
        points: 10,
        ..VerifyConfig::new(3, "paper").unwrap()
    };
    let reg = CheckRegistry::with_defaults();
    let rep = reg.run_all(&cfg).unwrap();
    assert!(rep.passed, "{rep:?}");
    assert_eq!(rep.checks.len(), reg.names().len());
    let warn: Vec<_> = rep.warnings().map(|c| c.name.clone()).collect();
    assert_eq!(warn, vec!["recurrences".to_string()]);
    let rec = rep.checks.iter().find(|c| c.name == "recurrences").unwrap();
    assert!(!rec.hard);
    assert!(rec.failures.iter().any(|f| f.starts_with("K=2, l=0")));
    assert!(rep
        .checks
        .iter()
        .filter(|c| c.hard)
        .all(|c| c.status == Status::Pass));

    let only = reg.run_selected(&cfg, &["free_eigen"]).unwrap();
    assert_eq!(only.checks.len(), 1);
    assert!(only.recurrences.is_empty());
    assert!(reg.run_selected(&cfg, &["bogus"]).is_err());
}

fn sample_expr() -> impl Strategy<Value = DampedTrigExpr> {
    (0u32..5, 0u32..5, any::<bool>()).prop_map(|(k, l, damped)| {
        let (k, l) = (k.max(l), l.min(k.max(l)));
        let psi = psi_chi(k, l).unwrap();
        if damped {
            DampedTrigExpr::damped(k, psi)
        } else {
            DampedTrigExpr::undamped(psi)
        }
    })
}

fn operator() -> impl Strategy<Value = RadialOperator> {
    prop_oneof![
        (0u32..4).prop_map(RadialOperator::CasimirRadial),
        (0u32..4).prop_map(RadialOperator::Perturbed),
        (0u32..5).prop_map(RadialOperator::Ladder),
        (0u32..4).prop_map(RadialOperator::RosenMorse1D),
    ]
}

/// Pointwise operator applied to a numeric function by central differences.
fn numeric_apply(op: RadialOperator, f: &dyn Fn(f64) -> f64, b: f64, chi: f64) -> f64 {
    let h = 1e-3;
    let d1 = (8.0 * (f(chi + h) - f(chi - h)) - (f(chi + 2.0 * h) - f(chi - 2.0 * h))) / (12.0 * h);
    let d2 = (-f(chi + 2.0 * h) + 16.0 * f(chi + h) - 30.0 * f(chi) + 16.0 * f(chi - h)
        - f(chi - 2.0 * h))
        / (12.0 * h * h);
    let (s, cot) = (chi.sin(), chi.cos() / chi.sin());
    let centrifugal = |l: u32| (l * (l + 1)) as f64 / (s * s) * f(chi);
    match op {
        RadialOperator::CasimirRadial(l) => -d2 - 2.0 * cot * d1 + centrifugal(l),
        RadialOperator::Perturbed(l) => {
            -d2 - 2.0 * cot * d1 + centrifugal(l) - 2.0 * b * cot * f(chi)
        }
        RadialOperator::Ladder(k) => d1 - k as f64 * cot * f(chi),
        RadialOperator::RosenMorse1D(l) => -d2 - 2.0 * b * cot * f(chi) + centrifugal(l),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn symbolic_image_matches_finite_differences(
        f in sample_expr(),
        op in operator(),
        b in 0.0f64..4.0,
        chi in 0.2f64..(PI - 0.2),
    ) {
        let exact = apply(op, &f).eval(b, chi).unwrap();
        let eval = |x: f64| f.eval(b, x).unwrap();
        let numeric = numeric_apply(op, &eval, b, chi);
        let scale = 1.0 + exact.abs().max(eval(chi).abs());
        prop_assert!((exact - numeric).abs() <= 1e-5 * scale, "{:?}: exact {} numeric {}", op, exact, numeric);
    }
}
