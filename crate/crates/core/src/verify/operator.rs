use crate::polycore::{int, DampedTrigExpr, PolyB};

/// Radial differential operators acting on functions of `χ`.
///
/// The angular part of the Casimir is replaced by its eigenvalue `l(l+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadialOperator {
    /// `-(1/sin²χ) d/dχ (sin²χ d/dχ) + l(l+1) csc²χ`
    CasimirRadial(u32),
    /// `CasimirRadial(l) - 2b cot χ`
    Perturbed(u32),
    /// `D_K = d/dχ - K cot χ`
    Ladder(u32),
    /// `-d²/dχ² - 2b cot χ + l(l+1) csc²χ`
    RosenMorse1D(u32),
}

fn centrifugal(l: u32, f: &DampedTrigExpr) -> DampedTrigExpr {
    f.mul_csc2().scale(&PolyB::from_i64((l * (l + 1)) as i64))
}

fn cotangent_potential(f: &DampedTrigExpr) -> DampedTrigExpr {
    // -2b cot χ · f
    f.mul_cot().scale(&PolyB::b().scale(&int(-2)))
}

fn casimir_radial(l: u32, f: &DampedTrigExpr) -> DampedTrigExpr {
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let neg_d2 = d2.scale(&PolyB::from_i64(-1));
    let friction = d1.mul_cot().scale(&PolyB::from_i64(-2));
    &(&neg_d2 + &friction) + &centrifugal(l, f)
}

/// Exact image `op f`.
pub fn apply(op: RadialOperator, f: &DampedTrigExpr) -> DampedTrigExpr {
    match op {
        RadialOperator::CasimirRadial(l) => casimir_radial(l, f),
        RadialOperator::Perturbed(l) => &casimir_radial(l, f) + &cotangent_potential(f),
        RadialOperator::Ladder(k) => {
            &f.derivative() - &f.mul_cot().scale(&PolyB::from_i64(k as i64))
        }
        RadialOperator::RosenMorse1D(l) => {
            let neg_d2 = f.derivative().derivative().scale(&PolyB::from_i64(-1));
            &(&neg_d2 + &cotangent_potential(f)) + &centrifugal(l, f)
        }
    }
}
