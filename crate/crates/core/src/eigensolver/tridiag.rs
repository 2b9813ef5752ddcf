use crate::error::{Error, Result};

/// Real symmetric tridiagonal matrix.
#[derive(Debug, Clone)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self> {
        if diag.is_empty() || off.len() + 1 != diag.len() {
            return Err(Error::InvalidArgument(format!(
                "tridiagonal shape mismatch: {} diagonal, {} off-diagonal",
                diag.len(),
                off.len()
            )));
        }
        Ok(SymTridiagonal { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Number of eigenvalues strictly below `x` (Sylvester inertia of `T - xI`
    /// via the pivots of its LDLᵀ factorization).
    pub fn sturm_count(&self, x: f64) -> usize {
        let tiny = f64::MIN_POSITIVE.sqrt();
        let mut count = 0;
        let mut q = self.diag[0] - x;
        if q < 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            if q == 0.0 {
                q = -tiny;
            }
            let e = self.off[i - 1];
            q = self.diag[i] - x - e * e / q;
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// Interval containing the whole spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.diag.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// The `index`-th smallest eigenvalue (0-based) by bisection.
    pub fn bisect(&self, index: usize) -> Result<f64> {
        if index >= self.dim() {
            return Err(Error::InvalidArgument(format!(
                "eigenvalue index {index} out of range for dimension {}",
                self.dim()
            )));
        }
        let (mut lo, mut hi) = self.gershgorin();
        let pad = 1e-12 * (lo.abs() + hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.sturm_count(mid) > index {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= 2.0 * f64::EPSILON * lo.abs().max(hi.abs()) {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// `y = T x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }

    /// Inverse iteration with shift `shift`; returns the Rayleigh quotient,
    /// the normalized eigenvector, and the residual norm `‖T v - λ v‖`.
    pub fn inverse_iteration(&self, shift: f64, sweeps: usize) -> Result<(f64, Vec<f64>, f64)> {
        let n = self.dim();
        let lu = ShiftedLu::factor(self, shift);
        // Deterministic start vector with components in every direction.
        let mut v: Vec<f64> = (0..n)
            .map(|i| 1.0 + 0.1 * ((i * 7919) % 13) as f64)
            .collect();
        normalize(&mut v);
        for _ in 0..sweeps.max(1) {
            let mut y = lu.solve(&v);
            if !y.iter().all(|a| a.is_finite()) {
                return Err(Error::NoConvergence("inverse iteration overflowed".into()));
            }
            normalize(&mut y);
            v = y;
        }
        let tv = self.apply(&v);
        let rq: f64 = tv.iter().zip(&v).map(|(a, b)| a * b).sum();
        let residual = tv
            .iter()
            .zip(&v)
            .map(|(a, b)| (a - rq * b).powi(2))
            .sum::<f64>()
            .sqrt();
        Ok((rq, v, residual))
    }

    /// Lowest `count` eigenvalues, bisection refined by inverse iteration.
    pub fn lowest(&self, count: usize) -> Result<Vec<f64>> {
        let mut out = Vec::with_capacity(count);
        for k in 0..count {
            let approx = self.bisect(k)?;
            let (lo, hi) = self.gershgorin();
            let nudge = 64.0 * f64::EPSILON * (lo.abs() + hi.abs()).max(1.0);
            let (rq, _, _) = self.inverse_iteration(approx + nudge, 3)?;
            // Keep the refined value only if it stays on the same eigenvalue.
            let below = self.sturm_count(rq - nudge);
            let value = if below == k { rq } else { approx };
            out.push(value);
        }
        Ok(out)
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|a| *a /= norm);
    }
}

/// LU factorization of `T - σI` with partial pivoting (fill-in on a second superdiagonal).
struct ShiftedLu {
    l: Vec<f64>,
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn factor(t: &SymTridiagonal, shift: f64) -> Self {
        let n = t.dim();
        let tiny = f64::EPSILON * t.gershgorin().1.abs().max(1.0);
        let mut d: Vec<f64> = t.diag.iter().map(|a| a - shift).collect();
        let mut du = t.off.clone();
        let mut dl = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut l = vec![0.0; n.saturating_sub(1)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if dl[i].abs() > d[i].abs() {
                swapped[i] = true;
                let fact = d[i] / dl[i];
                l[i] = fact;
                d[i] = dl[i];
                let tmp = d[i + 1];
                d[i + 1] = du[i] - fact * tmp;
                du[i] = tmp;
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
            } else {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let fact = dl[i] / d[i];
                l[i] = fact;
                d[i + 1] -= fact * du[i];
            }
            dl[i] = 0.0;
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        ShiftedLu {
            l,
            u0: d,
            u1: du,
            u2: du2,
            swapped,
        }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.u0.len();
        let mut x = rhs.to_vec();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                x.swap(i, i + 1);
            }
            x[i + 1] -= self.l[i] * x[i];
        }
        for i in (0..n).rev() {
            let mut v = x[i];
            if i + 1 < n {
                v -= self.u1[i] * x[i + 1];
            }
            if i + 2 < n {
                v -= self.u2[i] * x[i + 2];
            }
            x[i] = v / self.u0[i];
        }
        x
    }
}
