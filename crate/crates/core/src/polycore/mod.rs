//! Exact arithmetic kernel: rationals, polynomials in the coupling `b`, and a
//! canonical ring of trigonometric expressions in `χ` closed under `d/dχ`,
//! multiplication by `cot χ` and `csc² χ`, and exponential damping.

mod poly;
mod trig;

pub use poly::{int, rat, rational_to_f64, Poly, PolyB, PolyXB, Rational, Ring};
#[allow(unused_imports)]
pub(crate) use trig::is_pole;
pub use trig::{DampedTrigExpr, TrigExpr, TrigTerm};

/// `α_K = 2b / (K + 1)` as an exact polynomial in `b`.
pub fn alpha(k: u32) -> PolyB {
    PolyB::b().scale(&rat(2, k as i64 + 1))
}
