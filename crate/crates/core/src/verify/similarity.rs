use num_complex::Complex64;
use serde::Serialize;

use super::operator::{apply, RadialOperator};
use crate::error::{Error, Result};
use crate::expansion::{default_m_tilde, mat_vec, solve_upper, PerturbedLevel, PoleMode};
use crate::polycore::{alpha, DampedTrigExpr};
use crate::specfun::{legendre_harmonic, GegenbauerConvention};
use crate::spectrum::shifted_casimir_eigenvalue;

// 8th-order central stencils
const D1: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];
const D2: [f64; 5] = [
    -205.0 / 72.0,
    8.0 / 5.0,
    -1.0 / 5.0,
    8.0 / 315.0,
    -1.0 / 560.0,
];

/// Step used for the finite-difference Casimir.
pub const FD_STEP: f64 = 0.02;

#[derive(Debug, Clone, Serialize)]
pub struct VoalaReport {
    pub k: u32,
    pub b: f64,
    pub points: usize,
    /// `max |(𝒦 - 2b cot χ) X - e^{-αχ/2} A (𝒦 - α²/4) e^{αχ/2} A⁻¹ X|`
    pub max_residual: f64,
    /// `max |(𝒦 - 2b cot χ) X - (K(K+2) - α²/4) X|`
    pub max_eigen_residual: f64,
}

/// Derivatives of `g` at 0 along one coordinate: `(g', g'')`.
fn derivs<F>(g: F, h: f64) -> Result<(Vec<Complex64>, Vec<Complex64>)>
where
    F: Fn(f64) -> Result<Vec<Complex64>>,
{
    let centre = g(0.0)?;
    let n = centre.len();
    let mut d1 = vec![Complex64::new(0.0, 0.0); n];
    let mut d2: Vec<Complex64> = centre.iter().map(|c| c * D2[0]).collect();
    for j in 1..=4 {
        let plus = g(j as f64 * h)?;
        let minus = g(-(j as f64) * h)?;
        for i in 0..n {
            d1[i] += (plus[i] - minus[i]) * D1[j - 1];
            d2[i] += (plus[i] + minus[i]) * D2[j];
        }
    }
    Ok((
        d1.into_iter().map(|v| v / h).collect(),
        d2.into_iter().map(|v| v / (h * h)).collect(),
    ))
}

/// Pointwise check of the dilation similarity transformation
/// `(𝒦 - 2b cot χ) X_K = e^{-α_K χ/2} A_K (𝒦 - α_K²/4) e^{α_K χ/2} A_K⁻¹ X_K`.
///
/// The left side is taken from the exact radial images; the right side applies the free
/// Casimir `𝒦` by finite differences in all three angles.
pub fn check_voala(
    k: u32,
    b: f64,
    points: &[(f64, f64, f64)],
    convention: &dyn GegenbauerConvention,
) -> Result<VoalaReport> {
    let level = PerturbedLevel::new(k, &default_m_tilde(k), convention)?;
    let a_k = alpha(k).eval(b);
    let eigen = shifted_casimir_eigenvalue(k).eval(b);
    let images: Vec<DampedTrigExpr> = (0..=k)
        .map(|r| {
            let f = DampedTrigExpr::damped(k, level.psi[r as usize].clone());
            apply(RadialOperator::Perturbed(r), &f)
        })
        .collect();

    // F = e^{αχ/2} A⁻¹ X
    let undressed = |chi: f64, theta: f64, phi: f64| -> Result<Vec<Complex64>> {
        let a = level.matrix.evaluate(theta, phi, b, PoleMode::Strict)?;
        let x = level.solution_vector(b, chi, theta, phi)?;
        let f = solve_upper(&a, &x)?;
        let undamp = (a_k * chi / 2.0).exp();
        Ok(f.into_iter().map(|v| v * undamp).collect())
    };

    let mut max_residual: f64 = 0.0;
    let mut max_eigen_residual: f64 = 0.0;
    for &(chi, theta, phi) in points {
        // the stencil must not straddle a pole
        let reach = 5.0 * FD_STEP;
        if chi.sin().abs() < reach {
            return Err(Error::Pole {
                angle: "chi",
                value: chi,
            });
        }
        if theta.sin().abs() < reach {
            return Err(Error::Pole {
                angle: "theta",
                value: theta,
            });
        }
        let x = level.solution_vector(b, chi, theta, phi)?;
        let lhs: Vec<Complex64> = (0..=k as usize)
            .map(|r| {
                let radial = images[r].eval(b, chi)?;
                let angular = legendre_harmonic(r as u32, level.matrix.m_tilde[r], theta, phi);
                Ok(angular * radial)
            })
            .collect::<Result<_>>()?;

        let f0 = undressed(chi, theta, phi)?;
        let (f_c, f_cc) = derivs(|d| undressed(chi + d, theta, phi), FD_STEP)?;
        let (f_t, f_tt) = derivs(|d| undressed(chi, theta + d, phi), FD_STEP)?;
        let (_, f_pp) = derivs(|d| undressed(chi, theta, phi + d), FD_STEP)?;
        let (sc, cot_c) = (chi.sin(), chi.cos() / chi.sin());
        let (st, cot_t) = (theta.sin(), theta.cos() / theta.sin());
        let g: Vec<Complex64> = (0..f0.len())
            .map(|i| {
                let angular = -f_tt[i] - f_t[i] * cot_t - f_pp[i] / (st * st);
                let casimir = -f_cc[i] - f_c[i] * (2.0 * cot_c) + angular / (sc * sc);
                casimir - f0[i] * (a_k * a_k / 4.0)
            })
            .collect();
        let a = level.matrix.evaluate(theta, phi, b, PoleMode::Strict)?;
        let damp = (-a_k * chi / 2.0).exp();
        let rhs = mat_vec(&a, &g);
        for i in 0..lhs.len() {
            max_residual = max_residual.max((lhs[i] - rhs[i] * damp).norm());
            max_eigen_residual = max_eigen_residual.max((lhs[i] - x[i] * eigen).norm());
        }
    }
    Ok(VoalaReport {
        k,
        b,
        points: points.len(),
        max_residual,
        max_eigen_residual,
    })
}
