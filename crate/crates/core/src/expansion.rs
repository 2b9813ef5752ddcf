//! Decomposition of the perturbed radial profiles `ψ_K^{l̃}` in the free
//! basis `S_K^l`, and the connection matrices `A_K(θ, φ)` relating the
//! perturbed solution vector to the damped free harmonics.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polycore::{alpha, DampedTrigExpr, PolyB, Rational, Ring, TrigExpr};
use crate::specfun::{
    assoc_legendre, legendre_harmonic, psi_chi, s_function, GegenbauerConvention,
};

/// Coefficients `C_l`, `l = l̃..=K`, with `ψ_K^{l̃} = Σ C_l S_K^l`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionRow {
    pub k: u32,
    pub l_tilde: u32,
    pub coeffs: BTreeMap<u32, PolyB>,
    /// Label of the Gegenbauer convention used for `S_K^l`.
    pub convention: String,
}

impl ExpansionRow {
    pub fn coeff(&self, l: u32) -> PolyB {
        self.coeffs.get(&l).cloned().unwrap_or_else(PolyB::zero)
    }

    /// `Σ C_l S_K^l`, which must equal `ψ_K^{l̃}`.
    pub fn reconstruct(&self, convention: &dyn GegenbauerConvention) -> Result<TrigExpr> {
        let mut acc = TrigExpr::zero();
        for (&l, c) in &self.coeffs {
            acc = &acc + &s_function(self.k, l, convention)?.scale(c);
        }
        Ok(acc)
    }
}

/// Solve `ψ_K^{l̃} = Σ_{l=l̃}^{K} C_l S_K^l` exactly by matching canonical
/// trigonometric coefficients.
///
/// The `S_K^l` carry rational coefficients, so elimination runs over ℚ with
/// the right-hand sides in ℚ[b]. The system is overdetermined; consistency
/// of the surplus equations is checked as well.
pub fn expand(k: u32, l_tilde: u32, convention: &dyn GegenbauerConvention) -> Result<ExpansionRow> {
    let psi = psi_chi(k, l_tilde)?;
    let basis: Vec<TrigExpr> = (l_tilde..=k)
        .map(|l| s_function(k, l, convention))
        .collect::<Result<_>>()?;
    let keys: BTreeSet<(i32, u8)> = psi
        .keys()
        .chain(basis.iter().flat_map(|s| s.keys().collect::<Vec<_>>()))
        .collect();

    let n = basis.len();
    let mut rows: Vec<(Vec<Rational>, PolyB)> = keys
        .iter()
        .map(|&(p, e)| {
            let lhs = basis
                .iter()
                .map(|s| {
                    s.coeff(p, e)
                        .as_constant()
                        .ok_or_else(|| Error::SingularSystem("basis function depends on b".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((lhs, psi.coeff(p, e)))
        })
        .collect::<Result<_>>()?;

    let mut pivot_row = 0;
    for col in 0..n {
        let Some(found) = (pivot_row..rows.len()).find(|&r| !Ring::is_zero(&rows[r].0[col])) else {
            return Err(Error::SingularSystem(format!(
                "S_{k}^l (l = {l_tilde}..={k}) not linearly independent at column {col}"
            )));
        };
        rows.swap(pivot_row, found);
        let inv = <Rational as Ring>::one() / rows[pivot_row].0[col].clone();
        let (ref mut lhs, ref mut rhs) = rows[pivot_row];
        lhs.iter_mut().for_each(|a| *a = &*a * &inv);
        *rhs = rhs.scale(&inv);
        let (piv_lhs, piv_rhs) = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || Ring::is_zero(&row.0[col]) {
                continue;
            }
            let f = row.0[col].clone();
            for (a, p) in row.0.iter_mut().zip(&piv_lhs) {
                *a = &*a - &(&f * p);
            }
            row.1 = &row.1 - &piv_rhs.scale(&f);
        }
        pivot_row += 1;
    }
    if let Some((_, rhs)) = rows[n..].iter().find(|(_, rhs)| !rhs.is_zero()) {
        return Err(Error::SingularSystem(format!(
            "psi_{k}^{l_tilde} is not in the span of S_{k}^l: residual {rhs}"
        )));
    }
    let coeffs = (l_tilde..=k)
        .zip(rows.into_iter().take(n).map(|(_, rhs)| rhs))
        .collect();
    Ok(ExpansionRow {
        k,
        l_tilde,
        coeffs,
        convention: convention.label().to_string(),
    })
}

/// Every row with `K <= kmax`, ordered by `K` then `l̃`.
pub fn table1(kmax: u32, convention: &dyn GegenbauerConvention) -> Result<Vec<ExpansionRow>> {
    (0..=kmax)
        .flat_map(|k| (0..=k).map(move |lt| (k, lt)))
        .map(|(k, lt)| expand(k, lt, convention))
        .collect()
}

/// How `A_K` treats `θ ∈ {0, π}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum PoleMode {
    /// Raise a pole error.
    #[default]
    Strict,
    /// Replace every `P_l^l(cos θ)` by `P_l^0(±1)` at the pole being touched.
    Regularize,
}

/// Complex dense matrix, row-major.
pub type CMatrix = Vec<Vec<Complex64>>;

/// Upper-triangular `A_K`; entry `(r, c)` for `c >= r` is
/// `C_c^{(K, r)} e^{i(m̃_r - c)φ} P_r^{m̃_r}(cos θ) / P_c^c(cos θ)`.
#[derive(Debug, Clone)]
pub struct ConnectionMatrix {
    pub k: u32,
    pub m_tilde: Vec<i32>,
    /// `rows[r]` is the expansion of `ψ_K^r`.
    pub rows: Vec<ExpansionRow>,
}

/// Default choice `m̃_r = r`.
pub fn default_m_tilde(k: u32) -> Vec<i32> {
    (0..=k as i32).collect()
}

pub fn connection_matrix(
    k: u32,
    m_tilde: &[i32],
    convention: &dyn GegenbauerConvention,
) -> Result<ConnectionMatrix> {
    if m_tilde.len() != k as usize + 1 {
        return Err(Error::InvalidArgument(format!(
            "need {} m-tilde values for K={k}, got {}",
            k + 1,
            m_tilde.len()
        )));
    }
    if let Some((r, m)) = m_tilde
        .iter()
        .enumerate()
        .find(|(r, m)| m.unsigned_abs() as usize > *r)
    {
        return Err(Error::InvalidArgument(format!(
            "m-tilde[{r}] = {m} exceeds row index"
        )));
    }
    let rows = (0..=k)
        .map(|r| expand(k, r, convention))
        .collect::<Result<_>>()?;
    Ok(ConnectionMatrix {
        k,
        m_tilde: m_tilde.to_vec(),
        rows,
    })
}

const POLE_SIN: f64 = 1e-14;

fn on_pole(theta: f64) -> Option<f64> {
    if theta.sin().abs() < POLE_SIN {
        Some(if theta.cos() > 0.0 { 1.0 } else { -1.0 })
    } else {
        None
    }
}

impl ConnectionMatrix {
    pub fn dim(&self) -> usize {
        self.k as usize + 1
    }

    /// Exact coefficient `C_c^{(K, r)}`.
    pub fn coefficient(&self, r: usize, c: usize) -> PolyB {
        if c < r {
            PolyB::zero()
        } else {
            self.rows[r].coeff(c as u32)
        }
    }

    /// Numeric matrix at `(θ, φ)` and coupling `b`.
    pub fn evaluate(&self, theta: f64, phi: f64, b: f64, poles: PoleMode) -> Result<CMatrix> {
        let pole = on_pole(theta);
        if pole.is_some() && poles == PoleMode::Strict {
            return Err(Error::Pole {
                angle: "theta",
                value: theta,
            });
        }
        let x = theta.cos();
        // P_l^m(cos θ), with the P_l^l → P_l^0(±1) replacement at a pole
        let legendre = |l: u32, m: i32| -> f64 {
            match pole {
                Some(sign) if m == l as i32 => sign.powi(l as i32),
                _ => assoc_legendre(l, m, x),
            }
        };
        let n = self.dim();
        let mut out = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        for r in 0..n {
            let mr = self.m_tilde[r];
            let num = legendre(r as u32, mr);
            for c in r..n {
                let coeff = self.coefficient(r, c).eval(b);
                let den = legendre(c as u32, c as i32);
                let phase = Complex64::from_polar(1.0, (mr - c as i32) as f64 * phi);
                out[r][c] = phase * (coeff * num / den);
            }
        }
        Ok(out)
    }

    /// `det A_K`, the product of the diagonal.
    pub fn determinant(&self, theta: f64, phi: f64, b: f64, poles: PoleMode) -> Result<Complex64> {
        let a = self.evaluate(theta, phi, b, poles)?;
        Ok((0..self.dim()).map(|i| a[i][i]).product())
    }
}

/// `y = A x`
pub fn mat_vec(a: &CMatrix, x: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(p, q)| p * q).sum())
        .collect()
}

/// Solve `A x = y` for upper-triangular `A` by back substitution.
pub fn solve_upper(a: &CMatrix, y: &[Complex64]) -> Result<Vec<Complex64>> {
    let n = y.len();
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let tail: Complex64 = ((i + 1)..n).map(|j| a[i][j] * x[j]).sum();
        if a[i][i].norm() == 0.0 {
            return Err(Error::SingularSystem(format!("zero pivot at row {i}")));
        }
        x[i] = (y[i] - tail) / a[i][i];
    }
    Ok(x)
}

/// Symbolic ingredients of the level-`K` solution vector, reused by the
/// pointwise matrix identities.
#[derive(Debug, Clone)]
pub struct PerturbedLevel {
    pub k: u32,
    pub matrix: ConnectionMatrix,
    /// `ψ_K^r`, `r = 0..=K`
    pub psi: Vec<TrigExpr>,
    /// `S_K^c`, `c = 0..=K`
    pub free: Vec<TrigExpr>,
}

impl PerturbedLevel {
    pub fn new(k: u32, m_tilde: &[i32], convention: &dyn GegenbauerConvention) -> Result<Self> {
        Ok(PerturbedLevel {
            k,
            matrix: connection_matrix(k, m_tilde, convention)?,
            psi: (0..=k).map(|r| psi_chi(k, r)).collect::<Result<_>>()?,
            free: (0..=k)
                .map(|c| s_function(k, c, convention))
                .collect::<Result<_>>()?,
        })
    }

    /// `exp(-α_K χ / 2)` at numeric `b`.
    pub fn damping(&self, b: f64, chi: f64) -> f64 {
        (-alpha(self.k).eval(b) * chi / 2.0).exp()
    }

    /// Solution vector `X_K`: `Ψ_{K r m̃_r} = e^{-α_K χ/2} ψ_K^r(χ) P_r^{m̃_r}(cos θ) e^{i m̃_r φ}`.
    pub fn solution_vector(
        &self,
        b: f64,
        chi: f64,
        theta: f64,
        phi: f64,
    ) -> Result<Vec<Complex64>> {
        (0..=self.k as usize)
            .map(|r| {
                let radial = DampedTrigExpr::damped(self.k, self.psi[r].clone()).eval(b, chi)?;
                Ok(legendre_harmonic(r as u32, self.matrix.m_tilde[r], theta, phi) * radial)
            })
            .collect()
    }

    /// Undamped free vector `Y_{Kcc} = S_K^c(χ) P_c^c(cos θ) e^{icφ}`.
    pub fn free_vector(&self, chi: f64, theta: f64, phi: f64) -> Result<Vec<Complex64>> {
        (0..=self.k as usize)
            .map(|c| {
                Ok(legendre_harmonic(c as u32, c as i32, theta, phi)
                    * self.free[c].eval(0.0, chi)?)
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SlReport {
    pub k: u32,
    pub b: f64,
    pub points: usize,
    pub max_residual: f64,
}

/// Pointwise check of `X_K = e^{-α_K χ/2} A_K(θ, φ) Y_K` (free harmonics with `m = l`).
pub fn verify_sl(
    k: u32,
    b: f64,
    points: &[(f64, f64, f64)],
    convention: &dyn GegenbauerConvention,
) -> Result<SlReport> {
    let level = PerturbedLevel::new(k, &default_m_tilde(k), convention)?;
    let mut max_residual: f64 = 0.0;
    for &(chi, theta, phi) in points {
        let lhs = level.solution_vector(b, chi, theta, phi)?;
        let a = level.matrix.evaluate(theta, phi, b, PoleMode::Strict)?;
        let damp = level.damping(b, chi);
        let rhs = mat_vec(&a, &level.free_vector(chi, theta, phi)?);
        for (l, r) in lhs.iter().zip(&rhs) {
            max_residual = max_residual.max((l - r * damp).norm());
        }
    }
    Ok(SlReport {
        k,
        b,
        points: points.len(),
        max_residual,
    })
}
