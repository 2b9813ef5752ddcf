use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use super::poly::{int, rational_to_f64, PolyB, Rational, Ring};
use crate::error::{Error, Result};

/// One canonical monomial `coeff(b) * sin^sin_power(χ) * cos^cos_power(χ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrigTerm {
    pub coeff: PolyB,
    pub sin_power: i32,
    pub cos_power: u8,
}

/// Canonical sum of `p(b) sin^p χ cos^e χ` with `e ∈ {0, 1}`.
///
/// Every `cos^2` is rewritten as `1 - sin^2`, so two expressions that agree
/// as functions on `(0, π)` for every real `b` have identical term maps.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct TrigExpr {
    terms: BTreeMap<(i32, u8), PolyB>,
}

impl TrigExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(PolyB::one())
    }

    pub fn constant(c: PolyB) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn sin() -> Self {
        Self::monomial(PolyB::one(), 1, 0)
    }

    pub fn cos() -> Self {
        Self::monomial(PolyB::one(), 0, 1)
    }

    /// `c * sin^sin_power * cos^cos_power`, canonicalized.
    pub fn monomial(c: PolyB, sin_power: i32, cos_power: u32) -> Self {
        let mut out = Self::zero();
        out.accumulate(c, sin_power, cos_power);
        out
    }

    /// Canonicalize a raw list of `(coeff, sin power, cos power)` triples.
    pub fn normalize<I>(raw: I) -> Self
    where
        I: IntoIterator<Item = (PolyB, i32, u32)>,
    {
        let mut out = Self::zero();
        for (c, p, e) in raw {
            out.accumulate(c, p, e);
        }
        out
    }

    // cos^(2k+e) = (1 - sin^2)^k cos^e, expanded binomially.
    fn accumulate(&mut self, c: PolyB, sin_power: i32, cos_power: u32) {
        if c.is_zero() {
            return;
        }
        let k = cos_power / 2;
        let e = (cos_power % 2) as u8;
        let mut binom = int(1);
        for j in 0..=k {
            let sign = if j % 2 == 0 { int(1) } else { int(-1) };
            let coeff = c.scale(&(&binom * &sign));
            self.add_term(coeff, sin_power + 2 * j as i32, e);
            binom = binom * int((k - j) as i64) / int(j as i64 + 1);
        }
    }

    fn add_term(&mut self, c: PolyB, sin_power: i32, cos_power: u8) {
        let key = (sin_power, cos_power);
        let sum = match self.terms.remove(&key) {
            Some(prev) => &prev + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(key, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = TrigTerm> + '_ {
        self.terms.iter().map(|(&(p, e), c)| TrigTerm {
            coeff: c.clone(),
            sin_power: p,
            cos_power: e,
        })
    }

    /// Coefficient of `sin^p cos^e` in canonical form.
    pub fn coeff(&self, sin_power: i32, cos_power: u8) -> PolyB {
        self.terms
            .get(&(sin_power, cos_power))
            .cloned()
            .unwrap_or_else(PolyB::zero)
    }

    pub fn keys(&self) -> impl Iterator<Item = (i32, u8)> + '_ {
        self.terms.keys().copied()
    }

    pub fn min_sin_power(&self) -> Option<i32> {
        self.terms.keys().map(|k| k.0).min()
    }

    /// Highest power of `b` among the coefficients.
    pub fn b_degree(&self) -> Option<usize> {
        self.terms.values().filter_map(PolyB::degree).max()
    }

    pub fn scale(&self, c: &PolyB) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::zero();
        for (&(p, e), a) in &self.terms {
            out.add_term(a * c, p, e);
        }
        out
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&PolyB::from_rational(c.clone()))
    }

    pub fn mul(&self, other: &TrigExpr) -> Self {
        let mut out = Self::zero();
        for (&(p1, e1), a) in &self.terms {
            for (&(p2, e2), c) in &other.terms {
                out.accumulate(a * c, p1 + p2, (e1 + e2) as u32);
            }
        }
        out
    }

    /// Multiply by `sin^k χ`; `k` may be negative.
    pub fn mul_sin_power(&self, k: i32) -> Self {
        TrigExpr {
            terms: self
                .terms
                .iter()
                .map(|(&(p, e), c)| ((p + k, e), c.clone()))
                .collect(),
        }
    }

    /// Multiply by `cot χ = cos χ / sin χ`.
    pub fn mul_cot(&self) -> Self {
        let mut out = Self::zero();
        for (&(p, e), c) in &self.terms {
            out.accumulate(c.clone(), p - 1, e as u32 + 1);
        }
        out
    }

    /// Multiply by `csc² χ`.
    pub fn mul_csc2(&self) -> Self {
        self.mul_sin_power(-2)
    }

    /// Exact `d/dχ`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&(p, e), c) in &self.terms {
            let pc = c.scale(&int(p as i64));
            if e == 0 {
                // (sin^p)' = p sin^(p-1) cos
                out.accumulate(pc, p - 1, 1);
            } else {
                // (sin^p cos)' = p sin^(p-1) cos^2 - sin^(p+1)
                out.accumulate(pc, p - 1, 2);
                out.accumulate(-c, p + 1, 0);
            }
        }
        out
    }

    /// Double-precision value at `(b, χ)`.
    pub fn eval(&self, b: f64, chi: f64) -> Result<f64> {
        let s = chi.sin();
        let c = chi.cos();
        if self.min_sin_power().map_or(false, |p| p < 0) && is_pole(chi) {
            return Err(Error::Pole {
                angle: "chi",
                value: chi,
            });
        }
        Ok(self
            .terms
            .iter()
            .map(|(&(p, e), a)| {
                let cos_factor = if e == 1 { c } else { 1.0 };
                a.eval(b) * s.powi(p) * cos_factor
            })
            .sum())
    }
}

/// True when `x` sits on 0 or π to within a few ulps.
pub(crate) fn is_pole(x: f64) -> bool {
    let tol = 8.0 * f64::EPSILON;
    x.abs() <= tol || (x - std::f64::consts::PI).abs() <= tol * std::f64::consts::PI
}

impl Add for &TrigExpr {
    type Output = TrigExpr;
    fn add(self, rhs: &TrigExpr) -> TrigExpr {
        let mut out = self.clone();
        for (&(p, e), c) in &rhs.terms {
            out.add_term(c.clone(), p, e);
        }
        out
    }
}

impl Sub for &TrigExpr {
    type Output = TrigExpr;
    fn sub(self, rhs: &TrigExpr) -> TrigExpr {
        self + &(-rhs)
    }
}

impl Neg for &TrigExpr {
    type Output = TrigExpr;
    fn neg(self) -> TrigExpr {
        TrigExpr {
            terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Add for TrigExpr {
    type Output = TrigExpr;
    fn add(self, rhs: TrigExpr) -> TrigExpr {
        &self + &rhs
    }
}

impl Sub for TrigExpr {
    type Output = TrigExpr;
    fn sub(self, rhs: TrigExpr) -> TrigExpr {
        &self - &rhs
    }
}

impl Neg for TrigExpr {
    type Output = TrigExpr;
    fn neg(self) -> TrigExpr {
        -&self
    }
}

impl fmt::Display for TrigExpr {
    /// Plain-text rendering such as `(b^2 - 2)*sin^2 + (6)*cos*sin^-1`.
    /// Not a stability contract.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(p, e), c)| {
                let cos = if e == 1 { "cos*" } else { "" };
                format!("({c})*{cos}sin^{p}")
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for TrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TrigExpr[{self}]")
    }
}

/// A [`TrigExpr`] body carrying the factor `exp(-r α_K χ / 2)` with
/// `α_K = 2b / (K + 1)`, i.e. `exp(-r b χ / (K + 1))`.
///
/// `r = 0` means undamped; the level is then normalized to 0 so that
/// equality stays structural.
#[derive(Clone, PartialEq, Eq)]
pub struct DampedTrigExpr {
    level: u32,
    multiplier: Rational,
    body: TrigExpr,
}

impl DampedTrigExpr {
    pub fn new(level: u32, multiplier: Rational, body: TrigExpr) -> Self {
        let level = if multiplier.is_zero() { 0 } else { level };
        DampedTrigExpr {
            level,
            multiplier,
            body,
        }
    }

    pub fn undamped(body: TrigExpr) -> Self {
        Self::new(0, Rational::zero(), body)
    }

    /// `exp(-α_K χ / 2) * body`
    pub fn damped(level: u32, body: TrigExpr) -> Self {
        Self::new(level, int(1), body)
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn multiplier(&self) -> &Rational {
        &self.multiplier
    }

    pub fn body(&self) -> &TrigExpr {
        &self.body
    }

    pub fn into_body(self) -> TrigExpr {
        self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    fn with_body(&self, body: TrigExpr) -> Self {
        DampedTrigExpr {
            level: self.level,
            multiplier: self.multiplier.clone(),
            body,
        }
    }

    /// `r b / (K + 1)`, the magnitude of the logarithmic derivative of the damping factor.
    pub fn decay_rate(&self) -> PolyB {
        PolyB::b().scale(&(&self.multiplier / int(self.level as i64 + 1)))
    }

    pub fn same_damping(&self, other: &DampedTrigExpr) -> bool {
        self.level == other.level && self.multiplier == other.multiplier
    }

    pub fn try_add(&self, other: &DampedTrigExpr) -> Result<Self> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        if !self.same_damping(other) {
            return Err(Error::DampingMismatch);
        }
        Ok(self.with_body(&self.body + &other.body))
    }

    pub fn scale(&self, c: &PolyB) -> Self {
        self.with_body(self.body.scale(c))
    }

    pub fn map_body(&self, f: impl FnOnce(&TrigExpr) -> TrigExpr) -> Self {
        self.with_body(f(&self.body))
    }

    pub fn mul_cot(&self) -> Self {
        self.with_body(self.body.mul_cot())
    }

    pub fn mul_csc2(&self) -> Self {
        self.with_body(self.body.mul_csc2())
    }

    /// Exact `d/dχ`, including the product-rule term from the damping factor.
    pub fn derivative(&self) -> Self {
        let inner = self.body.derivative();
        if self.multiplier.is_zero() {
            return self.with_body(inner);
        }
        let decay = self.body.scale(&self.decay_rate());
        self.with_body(&inner - &decay)
    }

    pub fn eval(&self, b: f64, chi: f64) -> Result<f64> {
        let body = self.body.eval(b, chi)?;
        let rate = rational_to_f64(&self.multiplier) * b / (self.level as f64 + 1.0);
        Ok((-rate * chi).exp() * body)
    }
}

impl From<TrigExpr> for DampedTrigExpr {
    fn from(body: TrigExpr) -> Self {
        DampedTrigExpr::undamped(body)
    }
}

impl Add for &DampedTrigExpr {
    type Output = DampedTrigExpr;
    /// Panics when the damping factors differ; use [`DampedTrigExpr::try_add`] otherwise.
    fn add(self, rhs: &DampedTrigExpr) -> DampedTrigExpr {
        self.try_add(rhs)
            .expect("adding expressions with different damping")
    }
}

impl Sub for &DampedTrigExpr {
    type Output = DampedTrigExpr;
    fn sub(self, rhs: &DampedTrigExpr) -> DampedTrigExpr {
        self + &rhs.with_body(-&rhs.body)
    }
}

impl fmt::Debug for DampedTrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.multiplier.is_zero() {
            write!(f, "{:?}", self.body)
        } else {
            write!(
                f,
                "exp(-({})*alpha_{}*chi/2) * {:?}",
                self.multiplier, self.level, self.body
            )
        }
    }
}
