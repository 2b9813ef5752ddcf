use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::convention::GegenbauerConvention;
use super::gegenbauer::s_function;
use crate::eigensolver::QuadratureRule;
use crate::error::{Error, Result};
use crate::polycore::{DampedTrigExpr, TrigExpr};

/// Labels `(K, l, m)` of a state on S³; `0 <= l <= K`, `|m| <= l`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuantumNumbers {
    k: u32,
    l: u32,
    m: i32,
}

impl QuantumNumbers {
    pub fn new(k: u32, l: u32, m: i32) -> Result<Self> {
        if l > k || m.unsigned_abs() > l {
            return Err(Error::InvalidQuantumNumbers {
                k: k as i64,
                l: l as i64,
                m: m as i64,
            });
        }
        Ok(QuantumNumbers { k, l, m })
    }

    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn l(&self) -> u32 {
        self.l
    }
    pub fn m(&self) -> i32 {
        self.m
    }

    /// All labels with the given `K`, ordered by `l` then `m`; there are `(K+1)²` of them.
    pub fn level(k: u32) -> Vec<QuantumNumbers> {
        (0..=k)
            .flat_map(|l| (-(l as i32)..=l as i32).map(move |m| QuantumNumbers { k, l, m }))
            .collect()
    }
}

/// Associated Legendre function `P_l^m(x)` including the Condon–Shortley phase.
/// Negative `m` uses `P_l^{-m} = (-1)^m (l-m)!/(l+m)! P_l^m`.
pub fn assoc_legendre(l: u32, m: i32, x: f64) -> f64 {
    let ma = m.unsigned_abs();
    if ma > l {
        return 0.0;
    }
    let positive = legendre_nonneg(l, ma, x);
    if m >= 0 {
        positive
    } else {
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        sign * factorial_ratio(l - ma, l + ma) * positive
    }
}

fn legendre_nonneg(l: u32, m: u32, x: f64) -> f64 {
    // P_m^m = (-1)^m (2m-1)!! (1-x²)^(m/2)
    let somx2 = ((1.0 - x) * (1.0 + x)).max(0.0).sqrt();
    let mut pmm = 1.0;
    let mut fact = 1.0;
    for _ in 0..m {
        pmm *= -fact * somx2;
        fact += 2.0;
    }
    if l == m {
        return pmm;
    }
    let mut pmmp1 = x * (2 * m + 1) as f64 * pmm;
    if l == m + 1 {
        return pmmp1;
    }
    let mut pll = 0.0;
    for ll in (m + 2)..=l {
        pll = (x * (2 * ll - 1) as f64 * pmmp1 - (ll + m - 1) as f64 * pmm) / (ll - m) as f64;
        pmm = pmmp1;
        pmmp1 = pll;
    }
    pll
}

/// `a! / b!` for `a <= b`.
fn factorial_ratio(a: u32, b: u32) -> f64 {
    ((a + 1)..=b).fold(1.0, |acc, k| acc / k as f64)
}

/// Orthonormal spherical harmonic `Y_l^m(θ, φ)` (Condon–Shortley phase).
pub fn sph_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    let ma = m.unsigned_abs();
    let norm = ((2 * l + 1) as f64 / (4.0 * PI) * factorial_ratio(l - ma.min(l), l + ma)).sqrt();
    let p = if m >= 0 {
        legendre_nonneg(l, ma, theta.cos())
    } else {
        // Y_l^{-m} = (-1)^m conj(Y_l^m)
        let sign = if ma % 2 == 0 { 1.0 } else { -1.0 };
        sign * legendre_nonneg(l, ma, theta.cos())
    };
    Complex64::from_polar(norm * p, m as f64 * phi)
}

/// Unnormalized harmonic `P_l^m(cos θ) e^{imφ}`, the angular factor under which
/// `S_K^l = e^{-imφ} Y_{Klm} / P_l^m(cos θ)` holds.
pub fn legendre_harmonic(l: u32, m: i32, theta: f64, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0, m as f64 * phi) * assoc_legendre(l, m, theta.cos())
}

/// Precomputed hyper-spherical harmonic `Y_{Klm} = S_K^l(χ) Y_l^m(θ, φ)`.
#[derive(Debug, Clone)]
pub struct HyperHarmonic {
    q: QuantumNumbers,
    radial: TrigExpr,
}

impl HyperHarmonic {
    pub fn new(q: QuantumNumbers, convention: &dyn GegenbauerConvention) -> Result<Self> {
        Ok(HyperHarmonic {
            q,
            radial: s_function(q.k, q.l, convention)?,
        })
    }

    pub fn quantum_numbers(&self) -> QuantumNumbers {
        self.q
    }

    pub fn radial(&self) -> &TrigExpr {
        &self.radial
    }

    /// Value of `Y_{Klm}`, or of the damped `e^{-α_K χ/2} Y_{Klm}` when `damped` is set.
    pub fn eval(&self, damped: bool, chi: f64, theta: f64, phi: f64, b: f64) -> Result<Complex64> {
        let radial = if damped {
            DampedTrigExpr::damped(self.q.k, self.radial.clone()).eval(b, chi)?
        } else {
            self.radial.eval(b, chi)?
        };
        Ok(sph_harmonic(self.q.l, self.q.m, theta, phi) * radial)
    }
}

/// Point value of `Y_{Klm}` or its damped counterpart.
pub fn hyper_harmonic(
    q: QuantumNumbers,
    damped: bool,
    chi: f64,
    theta: f64,
    phi: f64,
    b: f64,
    convention: &dyn GegenbauerConvention,
) -> Result<Complex64> {
    HyperHarmonic::new(q, convention)?.eval(damped, chi, theta, phi, b)
}

/// `N_{Kl} = ∫_0^π S_K^l(χ)² sin²χ dχ`, the squared norm of `Y_{Klm}` on S³
/// (the angular factor is orthonormal).
pub fn harmonic_norm(
    k: u32,
    l: u32,
    convention: &dyn GegenbauerConvention,
    rule: &QuadratureRule,
) -> Result<f64> {
    let s = s_function(k, l, convention)?;
    let mut err = None;
    let val = rule.integrate(0.0, PI, |chi| match s.eval(0.0, chi) {
        Ok(v) => v * v * chi.sin().powi(2),
        Err(e) => {
            err = Some(e);
            0.0
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(val),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_number_validation() {
        assert!(QuantumNumbers::new(2, 1, -1).is_ok());
        assert!(QuantumNumbers::new(1, 2, 0).is_err());
        assert!(QuantumNumbers::new(2, 1, 2).is_err());
        assert_eq!(QuantumNumbers::level(3).len(), 16);
    }

    #[test]
    fn legendre_low_orders() {
        let th: f64 = 0.7;
        assert_eq!(assoc_legendre(0, 0, 0.3), 1.0);
        assert!((assoc_legendre(1, 1, th.cos()) + th.sin()).abs() < 1e-15);
        assert!((assoc_legendre(1, 0, 0.3) - 0.3).abs() < 1e-15);
        assert!((assoc_legendre(2, 2, th.cos()) - 3.0 * th.sin().powi(2)).abs() < 1e-14);
        // P_1^{-1} = sin θ / 2
        assert!((assoc_legendre(1, -1, th.cos()) - th.sin() / 2.0).abs() < 1e-15);
        assert_eq!(assoc_legendre(1, 2, 0.3), 0.0);
    }

    #[test]
    fn y11_normalized() {
        let rule = QuadratureRule::gauss_legendre(32).unwrap();
        let n = 64;
        let norm: f64 = rule.integrate(0.0, PI, |t| {
            (0..n)
                .map(|j| {
                    let phi = 2.0 * PI * j as f64 / n as f64;
                    sph_harmonic(1, 1, t, phi).norm_sqr() * t.sin()
                })
                .sum::<f64>()
                * 2.0
                * PI
                / n as f64
        });
        assert!((norm - 1.0).abs() < 1e-13);
    }

    #[test]
    fn negative_m_is_conjugate_symmetric() {
        let (t, p) = (1.1, 0.4);
        for l in 0..5u32 {
            for m in 1..=l as i32 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let lhs = sph_harmonic(l, -m, t, p);
                let rhs = sph_harmonic(l, m, t, p).conj() * sign;
                assert!((lhs - rhs).norm() < 1e-14);
            }
        }
    }
}
