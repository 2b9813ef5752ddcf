use super::convention::GegenbauerConvention;
use crate::error::{Error, Result};
use crate::polycore::{int, Poly, PolyB, Rational, TrigExpr};

/// Standard Gegenbauer polynomial `C_n^λ(x)` from
/// `n C_n = 2x(n+λ-1) C_{n-1} - (n+2λ-2) C_{n-2}`.
pub fn standard_gegenbauer(n: u32, lambda: u32) -> Poly<Rational> {
    let x = Poly::<Rational>::var();
    let lam = lambda as i64;
    let mut prev = Poly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = x.scale(&int(2 * lam));
    for k in 2..=n as i64 {
        let a = (&x * &cur).scale(&int(2 * (k + lam - 1)));
        let b = prev.scale(&int(k + 2 * lam - 2));
        let next = (&a - &b).scale(&Rational::new(1.into(), k.into()));
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Gegenbauer polynomial of degree `n` and index `λ` in the given normalization.
pub fn gegenbauer(n: u32, lambda: u32, convention: &dyn GegenbauerConvention) -> Poly<Rational> {
    standard_gegenbauer(n, lambda).scale(&convention.scale(n, lambda))
}

/// Free-motion radial function `S_K^l(χ) = sin^l χ · G_{K-l}^{l+1}(cos χ)`.
pub fn s_function(k: u32, l: u32, convention: &dyn GegenbauerConvention) -> Result<TrigExpr> {
    if l > k {
        return Err(Error::InvalidArgument(format!(
            "s_function needs l <= K, got K={k}, l={l}"
        )));
    }
    let g = gegenbauer(k - l, l + 1, convention);
    Ok(TrigExpr::normalize(g.coeffs().iter().enumerate().map(
        |(j, c)| (PolyB::from_rational(c.clone()), l as i32, j as u32),
    )))
}
