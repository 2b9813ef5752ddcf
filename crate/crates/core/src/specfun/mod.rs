//! Special functions: Gegenbauer polynomials under interchangeable
//! normalizations, Romanovski polynomials, associated Legendre functions,
//! and (hyper-)spherical harmonics.

mod convention;
mod gegenbauer;
mod harmonics;
mod romanovski;

pub use convention::{
    convention, ConventionRegistry, GegenbauerConvention, PaperRodrigues, Standard,
};
pub use gegenbauer::{gegenbauer, s_function, standard_gegenbauer};
pub use harmonics::{
    assoc_legendre, harmonic_norm, hyper_harmonic, legendre_harmonic, sph_harmonic, HyperHarmonic,
    QuantumNumbers,
};
pub use romanovski::{hypergeometric_residual, psi_chi, romanovski, RomanovskiParams};
