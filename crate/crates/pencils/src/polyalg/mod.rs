//! Polynomial algebra over an exact field: dense univariate polynomials,
//! homogeneous binary forms encoded as a t-power times a dehomogenized part,
//! and complete factorization into irreducibles.

mod factor;
mod hompoly;
mod unipoly;

pub use factor::{factorize, Factorization};
pub use hompoly::HomPoly;
pub use unipoly::UniPoly;
