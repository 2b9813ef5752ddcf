use crate::error::{Error, Result};
use crate::polycore::{alpha, int, PolyB, PolyXB, Rational, TrigExpr};

/// Parameters of `R_n^{α,β}`; `α` may depend on the coupling `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct RomanovskiParams {
    pub n: u32,
    pub alpha: PolyB,
    pub beta: Rational,
}

impl RomanovskiParams {
    /// Parameters of the perturbed state `(K, l̃)`: `n = K - l̃`, `α = 2b/(K+1)`, `β = -K`.
    pub fn for_state(k: u32, l_tilde: u32) -> Result<Self> {
        if l_tilde > k {
            return Err(Error::InvalidArgument(format!(
                "need l_tilde <= K, got K={k}, l_tilde={l_tilde}"
            )));
        }
        Ok(RomanovskiParams {
            n: k - l_tilde,
            alpha: alpha(k),
            beta: int(-(k as i64)),
        })
    }
}

/// Romanovski polynomial from the Rodrigues formula with weight
/// `(1+x²)^(β-1) exp(-α arccot x)`.
///
/// With `E = exp(-α arccot x)`, `d/dx[(1+x²)^p E] = (2px + α)(1+x²)^(p-1) E`, so
/// `d^k/dx^k[(1+x²)^n ω] = Q_k (1+x²)^(n+β-1-k) E` where `Q_0 = 1` and
/// `Q_{k+1} = (1+x²) Q_k' + (2 p_k x + α) Q_k` with `p_k = n+β-1-k`.
pub fn romanovski(params: &RomanovskiParams) -> PolyXB {
    let one_plus_x2 = PolyXB::new(vec![PolyB::one(), PolyB::zero(), PolyB::one()]);
    let alpha = PolyXB::constant(params.alpha.clone());
    let mut q = PolyXB::one();
    let top = &int(params.n as i64) + &params.beta - int(1);
    for k in 0..params.n {
        let p = &top - int(k as i64);
        let linear = &PolyXB::monomial(PolyB::from_rational(p * int(2)), 1) + &alpha;
        q = &(&one_plus_x2 * &q.derivative()) + &(&linear * &q);
    }
    q
}

/// Perturbed radial profile `ψ_K^{l̃}(χ) = sin^K χ · R_{K-l̃}^{α_K, -K}(cot χ)`.
pub fn psi_chi(k: u32, l_tilde: u32) -> Result<TrigExpr> {
    let r = romanovski(&RomanovskiParams::for_state(k, l_tilde)?);
    // x^j sin^K = sin^(K-j) cos^j
    Ok(TrigExpr::normalize(
        r.coeffs()
            .iter()
            .enumerate()
            .map(|(j, c)| (c.clone(), k as i32 - j as i32, j as u32)),
    ))
}

/// Left side of `(1+x²)R'' + 2(α/2 + βx)R' - n(2β+n-1)R`; zero for a Romanovski polynomial.
pub fn hypergeometric_residual(params: &RomanovskiParams, r: &PolyXB) -> PolyXB {
    let one_plus_x2 = PolyXB::new(vec![PolyB::one(), PolyB::zero(), PolyB::one()]);
    let d1 = r.derivative();
    let d2 = d1.derivative();
    let drift = PolyXB::new(vec![
        params.alpha.clone(),
        PolyB::from_rational(&params.beta * int(2)),
    ]);
    let n = int(params.n as i64);
    let eig = &n * (&params.beta * int(2) + &n - int(1));
    &(&(&one_plus_x2 * &d2) + &(&drift * &d1)) - &r.scale(&PolyB::from_rational(eig))
}
