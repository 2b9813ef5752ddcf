use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Gauss–Legendre rule on `[-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    order: usize,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    max_newton_step: f64,
}

const MAX_NEWTON: usize = 100;

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

impl QuadratureRule {
    /// Nodes are the roots of `P_order`, found by Newton iteration from
    /// Chebyshev-like initial guesses; weights are `2 / ((1-x²) P'(x)²)`.
    pub fn gauss_legendre(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument(
                "quadrature order must be >= 1".into(),
            ));
        }
        let mut nodes = vec![0.0; order];
        let mut weights = vec![0.0; order];
        let mut worst = 0.0f64;
        let half = (order + 1) / 2;
        for i in 0..half {
            let mut x = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
            let mut step = f64::INFINITY;
            let mut iters = 0;
            let mut dp = 0.0;
            while iters < MAX_NEWTON {
                let (p, d) = legendre_with_derivative(order, x);
                dp = d;
                step = p / d;
                x -= step;
                iters += 1;
                if step.abs() <= 1e-15 {
                    break;
                }
            }
            if step.abs() > 1e-14 {
                return Err(Error::NoConvergence(format!(
                    "Gauss-Legendre root {i} of order {order}: last Newton step {step:e}"
                )));
            }
            let (_, d) = legendre_with_derivative(order, x);
            dp = if d.is_finite() { d } else { dp };
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            worst = worst.max(step.abs());
            nodes[i] = -x;
            nodes[order - 1 - i] = x;
            weights[i] = w;
            weights[order - 1 - i] = w;
        }
        if order % 2 == 1 {
            nodes[order / 2] = 0.0;
        }
        Ok(QuadratureRule {
            order,
            nodes,
            weights,
            max_newton_step: worst,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Magnitude of the last Newton correction over all roots.
    pub fn residual(&self) -> f64 {
        self.max_newton_step
    }

    /// Nodes and weights mapped affinely onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }

    pub fn integrate<F: FnMut(f64) -> f64>(&self, a: f64, b: f64, mut f: F) -> f64 {
        self.mapped(a, b).map(|(x, w)| w * f(x)).sum()
    }
}
