use std::f64::consts::PI;

use serde::Serialize;

use super::tridiag::SymTridiagonal;
use crate::error::{Error, Result};
use crate::spectrum::energy;

/// Uniform open grid on `(0, π)` with Dirichlet ends: nodes `χ_i = i h`, `h = π/(n+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Grid1D {
    pub n: usize,
}

impl Grid1D {
    pub fn new(n: usize) -> Self {
        Grid1D { n }
    }

    pub fn spacing(&self) -> f64 {
        PI / (self.n + 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.spacing()
    }

    /// Grid with half the spacing (`2n + 1` interior nodes).
    pub fn refined(&self) -> Grid1D {
        Grid1D { n: 2 * self.n + 1 }
    }
}

/// Lowest eigenvalues `ε + 1` of one `l` channel of the radial Rosen–Morse problem.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub l_channel: u32,
    pub b_value: f64,
    /// Ascending values of `ε + 1`.
    pub eigenvalues: Vec<f64>,
    pub grid: Grid1D,
    pub richardson: bool,
    /// Estimated discretization error per eigenvalue.
    pub error_estimate: Vec<f64>,
    pub warnings: Vec<String>,
}

pub const MIN_GRID: usize = 64;
pub const DEFAULT_TOLERANCE: f64 = 1e-4;

/// `V(χ) = -2b cot χ + l(l+1)/sin²χ`
pub fn rosen_morse_potential(l: u32, b: f64, chi: f64) -> f64 {
    let s = chi.sin();
    -2.0 * b * chi.cos() / s + (l * (l + 1)) as f64 / (s * s)
}

/// Second-order finite-difference matrix of `-d²/dχ² + V` on the interior nodes.
pub fn radial_matrix(l: u32, b: f64, grid: Grid1D) -> Result<SymTridiagonal> {
    let h = grid.spacing();
    let inv_h2 = 1.0 / (h * h);
    let diag = (1..=grid.n)
        .map(|i| 2.0 * inv_h2 + rosen_morse_potential(l, b, grid.node(i)))
        .collect();
    SymTridiagonal::new(diag, vec![-inv_h2; grid.n - 1])
}

/// Solver configuration for one `(l, b)` channel.
#[derive(Debug, Clone)]
pub struct RadialSolver {
    pub l: u32,
    pub b: f64,
    pub grid: Grid1D,
    pub count: usize,
    pub richardson: bool,
    pub tolerance: f64,
}

impl RadialSolver {
    pub fn new(l: u32, b: f64) -> Self {
        RadialSolver {
            l,
            b,
            grid: Grid1D::new(4096),
            count: 4,
            richardson: true,
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn grid(mut self, n: usize) -> Self {
        self.grid = Grid1D::new(n);
        self
    }

    pub fn count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn richardson(mut self, on: bool) -> Self {
        self.richardson = on;
        self
    }

    pub fn tolerance(mut self, tol: f64) -> Self {
        self.tolerance = tol;
        self
    }

    fn raw(&self, grid: Grid1D) -> Result<Vec<f64>> {
        radial_matrix(self.l, self.b, grid)?.lowest(self.count)
    }

    pub fn solve(&self) -> Result<EigenResult> {
        if self.count == 0 {
            return Err(Error::InvalidArgument(
                "eigenvalue count must be >= 1".into(),
            ));
        }
        if self.grid.n < MIN_GRID {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least {MIN_GRID} interior points, got {}",
                self.grid.n
            )));
        }
        if self.count > self.grid.n {
            return Err(Error::InvalidArgument(
                "more eigenvalues requested than grid points".into(),
            ));
        }
        let coarse = self.raw(self.grid)?;
        let (eigenvalues, error_estimate) = if self.richardson {
            let fine = self.raw(self.grid.refined())?;
            let combined: Vec<f64> = coarse
                .iter()
                .zip(&fine)
                .map(|(c, f)| (4.0 * f - c) / 3.0)
                .collect();
            let est = combined
                .iter()
                .zip(&fine)
                .map(|(r, f)| (r - f).abs())
                .collect();
            (combined, est)
        } else {
            // compare against the grid of doubled spacing
            let half = Grid1D::new((self.grid.n - 1) / 2);
            let est = if half.n >= self.count {
                let rough = self.raw(half)?;
                coarse
                    .iter()
                    .zip(&rough)
                    .map(|(c, r)| (c - r).abs() / 3.0)
                    .collect()
            } else {
                vec![f64::NAN; coarse.len()]
            };
            (coarse, est)
        };
        if eigenvalues.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::NoConvergence(format!(
                "channel l={} b={}: eigenvalues not strictly increasing",
                self.l, self.b
            )));
        }
        let warnings = error_estimate
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > self.tolerance)
            .map(|(i, e)| {
                format!(
                    "grid too coarse: eigenvalue {i} has estimated error {e:.3e} > tolerance {:.1e}",
                    self.tolerance
                )
            })
            .collect();
        Ok(EigenResult {
            l_channel: self.l,
            b_value: self.b,
            eigenvalues,
            grid: self.grid,
            richardson: self.richardson,
            error_estimate,
            warnings,
        })
    }
}

/// Lowest `count` values of `ε + 1` in channel `l`.
pub fn radial_eigen(
    l: u32,
    b: f64,
    grid: Grid1D,
    count: usize,
    richardson: bool,
) -> Result<EigenResult> {
    RadialSolver {
        l,
        b,
        grid,
        count,
        richardson,
        tolerance: DEFAULT_TOLERANCE,
    }
    .solve()
}

#[derive(Debug, Clone, Serialize)]
pub struct ChannelValue {
    pub l: u32,
    pub epsilon: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub k: u32,
    pub closed_form: f64,
    pub channels: Vec<ChannelValue>,
    pub spread: f64,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegeneracyReport {
    pub kmax: u32,
    pub b: f64,
    pub tolerance: f64,
    pub grid: Grid1D,
    pub levels: Vec<LevelReport>,
    pub passed: bool,
}

impl DegeneracyReport {
    /// `(K, l)` pairs of every channel value that misses the closed form.
    pub fn offenders(&self) -> Vec<(u32, u32)> {
        self.levels
            .iter()
            .flat_map(|lvl| {
                lvl.channels
                    .iter()
                    .filter(move |c| (c.epsilon - lvl.closed_form).abs() > self.tolerance)
                    .map(move |c| (lvl.k, c.l))
            })
            .collect()
    }
}

/// Solve every channel `l <= kmax` numerically and check that level `K`
/// comes out identical in all channels `l <= K` and equal to the closed form.
pub fn degeneracy_check(kmax: u32, b: f64, tol: f64, grid: Grid1D) -> Result<DegeneracyReport> {
    if !(tol > 0.0) {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let channels: Vec<EigenResult> = (0..=kmax)
        .map(|l| {
            RadialSolver::new(l, b)
                .grid(grid.n)
                .count((kmax - l + 1) as usize)
                .richardson(true)
                .tolerance(tol)
                .solve()
        })
        .collect::<Result<_>>()?;
    let levels: Vec<LevelReport> = (0..=kmax)
        .map(|k| {
            let closed_form = energy(k, b);
            let values: Vec<ChannelValue> = (0..=k)
                .map(|l| ChannelValue {
                    l,
                    epsilon: channels[l as usize].eigenvalues[(k - l) as usize] - 1.0,
                })
                .collect();
            let max = values
                .iter()
                .map(|v| v.epsilon)
                .fold(f64::NEG_INFINITY, f64::max);
            let min = values
                .iter()
                .map(|v| v.epsilon)
                .fold(f64::INFINITY, f64::min);
            let max_deviation = values
                .iter()
                .map(|v| (v.epsilon - closed_form).abs())
                .fold(0.0, f64::max);
            let spread = max - min;
            LevelReport {
                k,
                closed_form,
                channels: values,
                spread,
                max_deviation,
                passed: spread <= tol && max_deviation <= tol,
            }
        })
        .collect();
    let passed = levels.iter().all(|l| l.passed);
    Ok(DegeneracyReport {
        kmax,
        b,
        tolerance: tol,
        grid,
        levels,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_channel_squares() {
        let r = radial_eigen(0, 0.0, Grid1D::new(1024), 4, true).unwrap();
        for (k, v) in r.eigenvalues.iter().enumerate() {
            let exact = ((k + 1) * (k + 1)) as f64;
            assert!((v - exact).abs() < 1e-6, "{k}: {v}");
        }
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn preconditions() {
        assert!(radial_eigen(0, 1.0, Grid1D::new(32), 1, false).is_err());
        assert!(radial_eigen(0, 1.0, Grid1D::new(128), 0, false).is_err());
    }

    #[test]
    fn coarse_grid_warns_at_tight_tolerance() {
        let r = RadialSolver::new(0, 1.0)
            .grid(64)
            .count(3)
            .richardson(false)
            .tolerance(1e-10)
            .solve()
            .unwrap();
        assert!(!r.warnings.is_empty());
    }

    #[test]
    fn small_degeneracy_check() {
        let rep = degeneracy_check(2, 0.0, 1e-4, Grid1D::new(1024)).unwrap();
        assert!(rep.passed, "{rep:?}");
        for lvl in &rep.levels {
            assert!((lvl.closed_form - (lvl.k * (lvl.k + 2)) as f64).abs() < 1e-15);
        }
        assert!(rep.offenders().is_empty());
    }
}
