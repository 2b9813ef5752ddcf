use std::f64::consts::PI;

use num_complex::Complex64;
use s3_coulomb::eigensolver::QuadratureRule;
use s3_coulomb::polycore::{int, rat, Poly, PolyB, PolyXB, Rational, TrigExpr};
use s3_coulomb::specfun::{
    assoc_legendre, gegenbauer, harmonic_norm, hypergeometric_residual, psi_chi, romanovski,
    s_function, sph_harmonic, standard_gegenbauer, HyperHarmonic, PaperRodrigues, QuantumNumbers,
    RomanovskiParams, Standard,
};

fn x() -> Poly<Rational> {
    Poly::var()
}

#[test]
fn gegenbauer_three_term_recurrence() {
    for lambda in 1..=12u32 {
        for n in 2..=30u32 {
            let lhs = standard_gegenbauer(n, lambda).scale(&int(n as i64));
            let a = (&x() * &standard_gegenbauer(n - 1, lambda))
                .scale(&int(2 * (n + lambda - 1) as i64));
            let c = standard_gegenbauer(n - 2, lambda).scale(&int((n + 2 * lambda - 2) as i64));
            assert_eq!(lhs, &a - &c, "n={n} lambda={lambda}");
        }
    }
}

#[test]
fn gegenbauer_examples() {
    assert_eq!(standard_gegenbauer(0, 5), Poly::one());
    assert_eq!(standard_gegenbauer(1, 1), Poly::new(vec![int(0), int(2)]));
    assert_eq!(
        standard_gegenbauer(2, 1),
        Poly::new(vec![int(-1), int(0), int(4)])
    );
    // (-1)^n n! scaling
    assert_eq!(
        gegenbauer(2, 1, &PaperRodrigues),
        Poly::new(vec![int(-2), int(0), int(8)])
    );
    assert_eq!(
        gegenbauer(1, 1, &PaperRodrigues),
        Poly::new(vec![int(0), int(-2)])
    );
}

#[test]
fn s_function_examples() {
    for conv in [
        &Standard as &dyn s3_coulomb::specfun::GegenbauerConvention,
        &PaperRodrigues,
    ] {
        assert_eq!(s_function(1, 1, conv).unwrap(), TrigExpr::sin());
        assert_eq!(
            s_function(2, 2, conv).unwrap(),
            TrigExpr::monomial(PolyB::one(), 2, 0)
        );
    }
    assert_eq!(
        s_function(1, 0, &PaperRodrigues).unwrap(),
        TrigExpr::monomial(PolyB::from_i64(-2), 0, 1)
    );
    assert_eq!(
        s_function(1, 0, &Standard).unwrap(),
        TrigExpr::monomial(PolyB::from_i64(2), 0, 1)
    );
    assert!(s_function(1, 2, &Standard).is_err());
}

/// `R_n` from literal n-fold differentiation of the Rodrigues formula with α symbolic:
/// `(n, β, [[coefficient of α^i] for x^j])`.
#[rustfmt::skip]
const RODRIGUES: &[(u32, i64, &[&[&str]])] = &[
    (0, -1, &[&["1"]]),
    (1, -1, &[&["0", "1"], &["-2", "0"]]),
    (2, -1, &[&["0", "0", "1"], &["0", "-2", "0"], &["0", "0", "0"]]),
    (3, -1, &[&["0", "4", "0", "1"], &["0", "0", "0", "0"], &["0", "0", "0", "0"], &["0", "0", "0", "0"]]),
    (4, -1, &[&["24", "0", "16", "0", "1"], &["0", "40", "0", "4", "0"], &["48", "0", "12", "0", "0"], &["0", "24", "0", "0", "0"], &["24", "0", "0", "0", "0"]]),
    (0, -2, &[&["1"]]),
    (1, -2, &[&["0", "1"], &["-4", "0"]]),
    (2, -2, &[&["-2", "0", "1"], &["0", "-6", "0"], &["6", "0", "0"]]),
    (3, -2, &[&["0", "-2", "0", "1"], &["0", "0", "-6", "0"], &["0", "6", "0", "0"], &["0", "0", "0", "0"]]),
    (4, -2, &[&["0", "0", "4", "0", "1"], &["0", "-16", "0", "-4", "0"], &["0", "0", "0", "0", "0"], &["0", "0", "0", "0", "0"], &["0", "0", "0", "0", "0"]]),
    (0, -3, &[&["1"]]),
    (1, -3, &[&["0", "1"], &["-6", "0"]]),
    (2, -3, &[&["-4", "0", "1"], &["0", "-10", "0"], &["20", "0", "0"]]),
    (3, -3, &[&["0", "-8", "0", "1"], &["24", "0", "-12", "0"], &["0", "36", "0", "0"], &["-24", "0", "0", "0"]]),
    (4, -3, &[&["0", "0", "-8", "0", "1"], &["0", "24", "0", "-12", "0"], &["0", "0", "36", "0", "0"], &["0", "-24", "0", "0", "0"], &["0", "0", "0", "0", "0"]]),
    (0, -4, &[&["1"]]),
    (1, -4, &[&["0", "1"], &["-8", "0"]]),
    (2, -4, &[&["-6", "0", "1"], &["0", "-14", "0"], &["42", "0", "0"]]),
    (3, -4, &[&["0", "-14", "0", "1"], &["72", "0", "-18", "0"], &["0", "90", "0", "0"], &["-120", "0", "0", "0"]]),
    (4, -4, &[&["24", "0", "-20", "0", "1"], &["0", "160", "0", "-20", "0"], &["-240", "0", "120", "0", "0"], &["0", "-240", "0", "0", "0"], &["120", "0", "0", "0", "0"]]),
    (2, 0, &[&["2", "0", "1"], &["0", "2", "0"], &["2", "0", "0"]]),
    (3, 0, &[&["0", "10", "0", "1"], &["24", "0", "6", "0"], &["0", "18", "0", "0"], &["24", "0", "0", "0"]]),
    (4, 0, &[&["72", "0", "28", "0", "1"], &["0", "192", "0", "12", "0"], &["432", "0", "72", "0", "0"], &["0", "240", "0", "0", "0"], &["360", "0", "0", "0", "0"]]),
    (3, 2, &[&["0", "22", "0", "1"], &["144", "0", "18", "0"], &["0", "126", "0", "0"], &["336", "0", "0", "0"]]),
    (4, 2, &[&["240", "0", "52", "0", "1"], &["0", "784", "0", "28", "0"], &["3360", "0", "336", "0", "0"], &["0", "2016", "0", "0", "0"], &["5040", "0", "0", "0", "0"]]),
];

#[test]
fn recursion_matches_literal_rodrigues() {
    for &(n, beta, table) in RODRIGUES {
        // α plays the role of the polynomial variable
        let params = RomanovskiParams {
            n,
            alpha: PolyB::b(),
            beta: int(beta),
        };
        let expected = PolyXB::new(
            table
                .iter()
                .map(|cs| PolyB::new(cs.iter().map(|s| s.parse::<Rational>().unwrap()).collect()))
                .collect(),
        );
        assert_eq!(romanovski(&params), expected, "n={n} beta={beta}");
    }
}

#[test]
fn romanovski_examples() {
    let r0 = romanovski(&RomanovskiParams {
        n: 0,
        alpha: PolyB::b(),
        beta: int(3),
    });
    assert_eq!(r0, PolyXB::one());
    // K=2, l~=0: 6x² - 4bx + 4b²/9 - 2
    let r2 = romanovski(&RomanovskiParams::for_state(2, 0).unwrap());
    let expected = PolyXB::new(vec![
        PolyB::new(vec![int(-2), int(0), rat(4, 9)]),
        PolyB::new(vec![int(0), int(-4)]),
        PolyB::from_i64(6),
    ]);
    assert_eq!(r2, expected);
}

#[test]
fn hypergeometric_ode_holds() {
    for k in 0..=10 {
        for lt in 0..=k {
            let params = RomanovskiParams::for_state(k, lt).unwrap();
            let r = romanovski(&params);
            assert!(
                hypergeometric_residual(&params, &r).is_zero(),
                "K={k} l~={lt}"
            );
            assert_eq!(r.degree(), Some((k - lt) as usize));
        }
    }
}

#[test]
fn psi_examples() {
    for k in 0..=10 {
        assert_eq!(psi_chi(k, k).unwrap(), s_function(k, k, &Standard).unwrap());
    }
    let expected =
        &TrigExpr::monomial(PolyB::from_i64(-2), 0, 1) + &TrigExpr::monomial(PolyB::b(), 1, 0);
    assert_eq!(psi_chi(1, 0).unwrap(), expected);
    let expected = &TrigExpr::monomial(PolyB::from_i64(-4), 1, 1)
        + &TrigExpr::monomial(PolyB::new(vec![int(0), rat(2, 3)]), 2, 0);
    assert_eq!(psi_chi(2, 1).unwrap(), expected);
    assert!(psi_chi(2, 3).is_err());
}

#[test]
fn legendre_examples() {
    assert_eq!(assoc_legendre(0, 0, 0.3), 1.0);
    for theta in [0.3, 1.1, 2.5] {
        assert!((assoc_legendre(1, 1, f64::cos(theta)) + f64::sin(theta)).abs() < 1e-15);
        // P_2^2 = 3 sin²
        assert!(
            (assoc_legendre(2, 2, f64::cos(theta)) - 3.0 * f64::sin(theta).powi(2)).abs() < 1e-14
        );
        // P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m
        let x = f64::cos(theta);
        assert!((assoc_legendre(2, -1, x) + assoc_legendre(2, 1, x) / 6.0).abs() < 1e-15);
    }
}

/// Product rule over S² with Gauss–Legendre in cos θ and the trapezoid rule in φ.
fn sphere_inner(l1: u32, m1: i32, l2: u32, m2: i32) -> Complex64 {
    let rule = QuadratureRule::gauss_legendre(24).unwrap();
    let nphi = 32;
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in rule.nodes().iter().zip(rule.weights()) {
        let theta = x.acos();
        for j in 0..nphi {
            let phi = 2.0 * PI * j as f64 / nphi as f64;
            acc += sph_harmonic(l1, m1, theta, phi).conj()
                * sph_harmonic(l2, m2, theta, phi)
                * *w
                * (2.0 * PI / nphi as f64);
        }
    }
    acc
}

#[test]
fn spherical_harmonics_orthonormal() {
    assert!((sphere_inner(1, 1, 1, 1).re - 1.0).abs() < 1e-14);
    for (l1, m1, l2, m2) in [(1, 1, 1, 0), (2, 1, 1, 1), (3, -2, 3, -2), (3, 2, 2, 2)] {
        let v = sphere_inner(l1, m1, l2, m2);
        let expected = if (l1, m1) == (l2, m2) { 1.0 } else { 0.0 };
        assert!((v - expected).norm() < 1e-14, "{l1},{m1} vs {l2},{m2}: {v}");
    }
}

#[test]
fn hyper_harmonic_examples() {
    let q0 = QuantumNumbers::new(0, 0, 0).unwrap();
    let h0 = HyperHarmonic::new(q0, &PaperRodrigues).unwrap();
    let y00 = 1.0 / (4.0 * PI).sqrt();
    for chi in [0.2, 1.0, 2.9] {
        assert!((h0.eval(false, chi, 0.4, 1.3, 0.0).unwrap() - y00).norm() < 1e-15);
    }
    let q = QuantumNumbers::new(1, 1, 1).unwrap();
    let h = HyperHarmonic::new(q, &PaperRodrigues).unwrap();
    let (theta, phi) = (0.8, 2.1);
    let free = h.eval(false, PI / 2.0, theta, phi, 2.0).unwrap();
    assert!((free - sph_harmonic(1, 1, theta, phi)).norm() < 1e-15);
    let damped = h.eval(true, PI / 2.0, theta, phi, 2.0).unwrap();
    assert!((damped - free * (-PI / 2.0).exp()).norm() < 1e-15);
    assert!(QuantumNumbers::new(1, 2, 0).is_err());
    assert!(QuantumNumbers::new(2, 1, -2).is_err());
    assert_eq!(QuantumNumbers::level(3).len(), 16);
}

/// `⟨Y_{Klm}, Y_{K'l'm'}⟩` over S³ for every pair with `K, K' <= 5`. The θ and φ rules
/// are exact for these integrands; the χ integrand is a trig polynomial, for which
/// Gauss–Legendre converges geometrically.
#[test]
fn hyperspherical_orthonormality() {
    let kmax = 5;
    let chi_rule = QuadratureRule::gauss_legendre(48).unwrap();
    let theta_rule = QuadratureRule::gauss_legendre(8).unwrap();
    let nphi = 12;
    let states: Vec<QuantumNumbers> = (0..=kmax).flat_map(QuantumNumbers::level).collect();
    let harmonics: Vec<HyperHarmonic> = states
        .iter()
        .map(|&q| HyperHarmonic::new(q, &Standard).unwrap())
        .collect();

    let mut points = Vec::new();
    for (chi, wc) in chi_rule.mapped(0.0, PI) {
        for (x, wt) in theta_rule.nodes().iter().zip(theta_rule.weights()) {
            for j in 0..nphi {
                let phi = 2.0 * PI * j as f64 / nphi as f64;
                let w = wc * chi.sin().powi(2) * wt * 2.0 * PI / nphi as f64;
                points.push((chi, x.acos(), phi, w));
            }
        }
    }
    let values: Vec<Vec<Complex64>> = harmonics
        .iter()
        .map(|h| {
            points
                .iter()
                .map(|&(c, t, p, _)| h.eval(false, c, t, p, 0.0).unwrap())
                .collect()
        })
        .collect();

    let norm_rule = QuadratureRule::gauss_legendre(32).unwrap();
    let norms: Vec<f64> = states
        .iter()
        .map(|q| harmonic_norm(q.k(), q.l(), &Standard, &norm_rule).unwrap())
        .collect();

    for i in 0..states.len() {
        for j in i..states.len() {
            let g: Complex64 = values[i]
                .iter()
                .zip(&values[j])
                .zip(&points)
                .map(|((a, b), &(_, _, _, w))| a.conj() * b * w)
                .sum();
            let expected = if i == j { norms[i] } else { 0.0 };
            let scale = (norms[i] * norms[j]).sqrt();
            assert!(
                (g - expected).norm() <= 1e-12 * scale,
                "{:?} vs {:?}: {g} (expected {expected})",
                states[i],
                states[j]
            );
        }
    }
    // ground state: N = π/2
    assert!((norms[0] - PI / 2.0).abs() < 1e-14);
}
