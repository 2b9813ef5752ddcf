use std::f64::consts::PI;

use s3_coulomb::eigensolver::{
    degeneracy_check, gauss_legendre, orthonormality_scan, radial_eigen, radial_matrix, Grid1D,
    RadialSolver,
};
use s3_coulomb::specfun::PaperRodrigues;
use s3_coulomb::spectrum::energy;

fn closed_form(k: u32, b: f64) -> f64 {
    energy(k, b) + 1.0
}

#[test]
fn quadrature_examples() {
    let one = gauss_legendre(1).unwrap();
    assert_eq!(one.nodes(), &[0.0]);
    assert!((one.weights()[0] - 2.0).abs() < 1e-15);
    let two = gauss_legendre(2).unwrap();
    let r = 1.0 / 3f64.sqrt();
    assert!((two.nodes()[0].abs() - r).abs() < 1e-15 && (two.nodes()[1].abs() - r).abs() < 1e-15);
    assert!(two.weights().iter().all(|w| (w - 1.0).abs() < 1e-15));
    let rule = gauss_legendre(64).unwrap();
    assert!((rule.integrate(0.0, PI, |x| x.sin().powi(2)) - PI / 2.0).abs() < 1e-13);
    for order in [1, 7, 64, 256, 512] {
        let rule = gauss_legendre(order).unwrap();
        assert!(rule.residual() <= 1e-14, "order {order}");
        // exact for degree 2n-1
        let deg = 2 * order as i32 - 1;
        let exact = if deg % 2 == 0 {
            2.0 / (deg + 1) as f64
        } else {
            0.0
        };
        assert!(
            (rule.integrate(-1.0, 1.0, |x| x.powi(deg)) - exact).abs() < 1e-13,
            "order {order}"
        );
    }
    assert!(gauss_legendre(0).is_err());
}

#[test]
fn free_channel_spectrum() {
    let res = radial_eigen(0, 0.0, Grid1D::new(4096), 4, true).unwrap();
    for (i, v) in res.eigenvalues.iter().enumerate() {
        let expected = ((i + 1) * (i + 1)) as f64;
        assert!((v - expected).abs() <= 1e-4, "{i}: {v}");
    }
}

#[test]
fn closed_form_reproduced_k5() {
    for b in [0.0, 1.0, 2.0] {
        for l in 0..=5u32 {
            let res = radial_eigen(l, b, Grid1D::new(4096), (6 - l) as usize, true).unwrap();
            assert!(res.eigenvalues.windows(2).all(|w| w[1] > w[0]));
            for (i, v) in res.eigenvalues.iter().enumerate() {
                let k = l + i as u32;
                assert!(
                    (v - closed_form(k, b)).abs() <= 1e-4,
                    "l={l} b={b} K={k}: {v}"
                );
            }
        }
    }
}

#[test]
fn excited_examples() {
    let res = radial_eigen(0, 1.0, Grid1D::new(4096), 3, true).unwrap();
    let expected = [0.0, 3.75, 9.0 - 1.0 / 9.0];
    for (v, e) in res.eigenvalues.iter().zip(expected) {
        assert!((v - e).abs() <= 1e-4);
    }
    let res = radial_eigen(1, 1.0, Grid1D::new(4096), 1, true).unwrap();
    assert!((res.eigenvalues[0] - 3.75).abs() <= 1e-4);
}

/// Raw second-order grid: the ground-state error falls like h².
#[test]
fn convergence_order_is_two() {
    let ns = [256usize, 512, 1024, 2048];
    let (xs, ys): (Vec<f64>, Vec<f64>) = ns
        .iter()
        .map(|&n| {
            let g = Grid1D::new(n);
            let v = radial_eigen(0, 1.0, g, 1, false).unwrap().eigenvalues[0];
            (g.spacing().ln(), (v - closed_form(0, 1.0)).abs().ln())
        })
        .unzip();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let slope = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mx) * (y - my))
        .sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((slope - 2.0).abs() <= 0.1, "slope {slope}");
}

#[test]
fn sturm_count_matches_requested_range() {
    let m = radial_matrix(1, 2.0, Grid1D::new(512)).unwrap();
    let vals = m.lowest(6).unwrap();
    for (i, v) in vals.iter().enumerate() {
        // exactly i eigenvalues strictly below the i-th
        assert_eq!(m.sturm_count(*v - 1e-9), i);
        assert_eq!(m.sturm_count(*v + 1e-9), i + 1);
    }
}

#[test]
fn preconditions() {
    assert!(radial_eigen(0, 1.0, Grid1D::new(32), 1, false).is_err());
    assert!(radial_eigen(0, 1.0, Grid1D::new(128), 0, false).is_err());
    let coarse = RadialSolver::new(0, 1.0)
        .grid(64)
        .count(1)
        .richardson(false)
        .tolerance(1e-8)
        .solve()
        .unwrap();
    assert!(!coarse.warnings.is_empty());
}

#[test]
fn degeneracy_examples() {
    for (kmax, b) in [(2, 0.0), (4, 1.0), (3, 2.0)] {
        let rep = degeneracy_check(kmax, b, 1e-4, Grid1D::new(4096)).unwrap();
        assert!(rep.passed, "kmax={kmax} b={b}: {:?}", rep.offenders());
        for lvl in &rep.levels {
            assert_eq!(lvl.channels.len(), lvl.k as usize + 1);
            assert!(lvl.spread <= 1e-4);
        }
    }
    assert!(degeneracy_check(1, 1.0, 0.0, Grid1D::new(128)).is_err());
}

#[test]
fn orthogonality_scan_k5() {
    let rep = orthonormality_scan(5, 64, &PaperRodrigues).unwrap();
    assert!(rep.passed, "{}", rep.max_orthogonal_violation);
    assert_eq!(rep.norms.len(), 21);
    let mixed = rep
        .same_level
        .iter()
        .find(|e| (e.k1, e.l1, e.k2, e.l2) == (2, 0, 2, 1))
        .unwrap();
    assert!(mixed.value.is_finite());
}
