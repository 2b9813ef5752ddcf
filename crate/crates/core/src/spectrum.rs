//! Closed-form energies and degeneracies (units with ħ = 2M = R = 1).

use serde::Serialize;

use crate::polycore::{alpha, int, rat, PolyB};

/// One point of the energy diagram.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumRow {
    #[serde(rename = "K")]
    pub k: u32,
    pub b: f64,
    pub epsilon: f64,
    pub degeneracy: u64,
}

/// `ε_K = (K+1)² - 1 - b²/(K+1)²`, independent of `l̃` and `m̃`.
pub fn energy(k: u32, b: f64) -> f64 {
    let kp1 = (k + 1) as f64;
    kp1 * kp1 - 1.0 - b * b / (kp1 * kp1)
}

/// `ε_K + 1` as an exact polynomial in `b`.
pub fn energy_plus_one_exact(k: u32) -> PolyB {
    let kp1 = (k + 1) as i64;
    PolyB::new(vec![int(kp1 * kp1), int(0), rat(-1, kp1 * kp1)])
}

/// `ε_K` as an exact polynomial in `b`.
pub fn energy_exact(k: u32) -> PolyB {
    &energy_plus_one_exact(k) - &PolyB::one()
}

/// `K(K+2) - α_K²/4`, the eigenvalue of the shifted, similarity-transformed Casimir.
pub fn shifted_casimir_eigenvalue(k: u32) -> PolyB {
    let a = alpha(k);
    let quarter = (&a * &a).scale(&rat(1, 4));
    &PolyB::from_i64(k as i64 * (k as i64 + 2)) - &quarter
}

/// `(K+1)²`
pub fn degeneracy(k: u32) -> u64 {
    let kp1 = k as u64 + 1;
    kp1 * kp1
}

/// Rows for every `K <= kmax` at every `b` in the grid, grouped by `K`.
pub fn spectrum_table(kmax: u32, b_grid: &[f64]) -> Vec<SpectrumRow> {
    (0..=kmax)
        .flat_map(|k| {
            b_grid.iter().map(move |&b| SpectrumRow {
                k,
                b,
                epsilon: energy(k, b),
                degeneracy: degeneracy(k),
            })
        })
        .collect()
}

/// `lo, lo + step, …` up to `hi` inclusive, computed by index to avoid drift.
pub fn uniform_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    // snap to 12 decimals so 0.1-steps print as 0.3 rather than 0.30000000000000004
    (0..=n)
        .map(|i| ((lo + i as f64 * step) * 1e12).round() / 1e12)
        .collect()
}
