use serde::Serialize;

use super::operator::{apply, RadialOperator};
use crate::error::{Error, Result};
use crate::expansion::expand;
use crate::polycore::{alpha, rat, DampedTrigExpr, PolyB, Rational, TrigExpr};
use crate::specfun::{psi_chi, s_function, GegenbauerConvention};
use crate::spectrum::{energy_plus_one_exact, shifted_casimir_eigenvalue};

fn check_range(k: u32, l: u32) -> Result<()> {
    if l > k {
        return Err(Error::InvalidArgument(format!(
            "need l <= K, got K={k}, l={l}"
        )));
    }
    Ok(())
}

/// `CasimirRadial(l) S_K^l == K(K+2) S_K^l` exactly.
pub fn check_free_eigen(k: u32, l: u32, convention: &dyn GegenbauerConvention) -> Result<bool> {
    check_range(k, l)?;
    let s: DampedTrigExpr = s_function(k, l, convention)?.into();
    let image = apply(RadialOperator::CasimirRadial(l), &s);
    Ok(image == s.scale(&PolyB::from_i64((k * (k + 2)) as i64)))
}

/// `[CasimirRadial(l̃) - 2b cot χ] (e^{-α_K χ/2} ψ_K^{l̃}) == (K(K+2) - α_K²/4) (e^{-α_K χ/2} ψ_K^{l̃})`.
pub fn check_perturbed_eigen(k: u32, l_tilde: u32) -> Result<bool> {
    check_range(k, l_tilde)?;
    let f = DampedTrigExpr::damped(k, psi_chi(k, l_tilde)?);
    let image = apply(RadialOperator::Perturbed(l_tilde), &f);
    Ok(image == f.scale(&shifted_casimir_eigenvalue(k)))
}

/// `(l̃(l̃+1) csc²χ + α_K D_K) Σ C_l S_K^l == Σ l(l+1) csc²χ C_l S_K^l`.
pub fn check_transfer_identity(
    k: u32,
    l_tilde: u32,
    convention: &dyn GegenbauerConvention,
) -> Result<bool> {
    check_range(k, l_tilde)?;
    let row = expand(k, l_tilde, convention)?;
    let mut sum = TrigExpr::zero();
    let mut rhs = TrigExpr::zero();
    for (&l, c) in &row.coeffs {
        let term = s_function(k, l, convention)?.scale(c);
        rhs = &rhs
            + &term
                .mul_csc2()
                .scale(&PolyB::from_i64((l * (l + 1)) as i64));
        sum = &sum + &term;
    }
    let sum: DampedTrigExpr = sum.into();
    let ladder = apply(RadialOperator::Ladder(k), &sum).scale(&alpha(k));
    let centrifugal = sum
        .mul_csc2()
        .scale(&PolyB::from_i64((l_tilde * (l_tilde + 1)) as i64));
    let lhs = &centrifugal + &ladder;
    Ok(lhs.body() == &rhs)
}

/// `U = sin χ e^{-α_K χ/2} ψ_K^{l̃}` solves `-U'' + V_RM U = (ε_K + 1) U` exactly.
pub fn check_radial_reduction(k: u32, l_tilde: u32) -> Result<bool> {
    check_range(k, l_tilde)?;
    let u = DampedTrigExpr::damped(k, psi_chi(k, l_tilde)?.mul_sin_power(1));
    let image = apply(RadialOperator::RosenMorse1D(l_tilde), &u);
    Ok(image == u.scale(&energy_plus_one_exact(k)))
}

/// `D_K sin^K χ == 0`.
pub fn ladder_annihilates(k: u32) -> bool {
    let top: DampedTrigExpr = TrigExpr::monomial(PolyB::one(), k as i32, 0).into();
    apply(RadialOperator::Ladder(k), &top).is_zero()
}

/// Proportionality constants `D_K S_K^l = c csc²χ S_K^{l+1}` as printed for low `K`.
pub const PUBLISHED_RECURRENCES: [(u32, u32, i64, i64); 5] = [
    (1, 0, 2, 1),
    (2, 1, 4, 1),
    (2, 0, 2, 1),
    (3, 2, 6, 1),
    (3, 1, 20, 3),
];

pub fn published_constant(k: u32, l: u32) -> Option<Rational> {
    PUBLISHED_RECURRENCES
        .iter()
        .find(|&&(kk, ll, _, _)| kk == k && ll == l)
        .map(|&(_, _, n, d)| rat(n, d))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RecurrenceStatus {
    /// Computed constant equals the printed one.
    Agrees,
    /// Computed constant differs from the printed one.
    Discrepancy,
    /// No printed value for this case.
    Unlisted,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecurrenceEntry {
    #[serde(rename = "K")]
    pub k: u32,
    pub l: u32,
    /// `None` when `D_K S_K^l` is not a constant multiple of `csc²χ S_K^{l+1}`.
    #[serde(serialize_with = "ser_opt_rational")]
    pub constant: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub published: Option<Rational>,
    pub status: RecurrenceStatus,
    pub note: String,
}

fn ser_opt_rational<S: serde::Serializer>(
    v: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Constant `c` with `D_K S_K^l == c csc²χ S_K^{l+1}`, if one exists.
pub fn recurrence_constant(
    k: u32,
    l: u32,
    convention: &dyn GegenbauerConvention,
) -> Result<Option<Rational>> {
    if l >= k {
        return Err(Error::InvalidArgument(format!(
            "recurrence needs l < K, got K={k}, l={l}"
        )));
    }
    let image = apply(
        RadialOperator::Ladder(k),
        &s_function(k, l, convention)?.into(),
    )
    .into_body();
    let target = s_function(k, l + 1, convention)?.mul_csc2();
    let Some(key) = target.keys().next() else {
        return Ok(None);
    };
    let ratio = match (
        image.coeff(key.0, key.1).as_constant(),
        target.coeff(key.0, key.1).as_constant(),
    ) {
        (Some(a), Some(b)) => a / b,
        _ => return Ok(None),
    };
    if image == target.scale_rational(&ratio) {
        Ok(Some(ratio))
    } else {
        Ok(None)
    }
}

/// Audit the ladder recurrences for each `(K, l)` case against the printed constants.
pub fn check_recurrences(
    cases: &[(u32, u32)],
    convention: &dyn GegenbauerConvention,
) -> Result<Vec<RecurrenceEntry>> {
    cases
        .iter()
        .map(|&(k, l)| {
            let constant = recurrence_constant(k, l, convention)?;
            let published = published_constant(k, l);
            let (status, note) = match (&constant, &published) {
                (_, None) => (RecurrenceStatus::Unlisted, String::new()),
                (Some(c), Some(p)) if c == p => (RecurrenceStatus::Agrees, String::new()),
                (Some(c), Some(p)) => (
                    RecurrenceStatus::Discrepancy,
                    format!(
                        "computed constant {c} differs from printed {p} ({} convention)",
                        convention.label()
                    ),
                ),
                (None, Some(p)) => (
                    RecurrenceStatus::Discrepancy,
                    format!(
                        "image is not proportional to csc^2 S_{k}^{}; printed constant {p}",
                        l + 1
                    ),
                ),
            };
            Ok(RecurrenceEntry {
                k,
                l,
                constant,
                published,
                status,
                note,
            })
        })
        .collect()
}

/// Every `(K, l)` with `l < K <= kmax`.
pub fn recurrence_cases(kmax: u32) -> Vec<(u32, u32)> {
    (1..=kmax)
        .flat_map(|k| (0..k).map(move |l| (k, l)))
        .collect()
}
