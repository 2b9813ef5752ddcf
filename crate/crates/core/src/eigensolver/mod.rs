//! Numerical cross-checks that never touch the closed-form solutions:
//! Gauss–Legendre quadrature and a finite-difference Sturm–Liouville
//! eigensolver for the radial Rosen–Morse equation.

mod orthogonality;
mod quadrature;
mod radial;
mod tridiag;

pub use orthogonality::{orthonormality_scan, GramEntry, OrthonormalityReport};
pub use quadrature::QuadratureRule;
pub use radial::{
    degeneracy_check, radial_eigen, radial_matrix, rosen_morse_potential, ChannelValue,
    DegeneracyReport, EigenResult, Grid1D, LevelReport, RadialSolver, DEFAULT_TOLERANCE, MIN_GRID,
};
pub use tridiag::SymTridiagonal;

/// Gauss–Legendre rule of the given order.
pub fn gauss_legendre(order: usize) -> crate::Result<QuadratureRule> {
    QuadratureRule::gauss_legendre(order)
}
