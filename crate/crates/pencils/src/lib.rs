//! Exact linear algebra for matrix pencils `A(s) = A0 + s*A1` over GF(p) and Q.
//!
//! The crate computes the complete strict-equivalence invariants of a pencil
//! (homogeneous invariant factors plus column/row minimal indices), realizes
//! invariant data back into a canonical pencil, and decides whether one pencil
//! can be carried onto another by adding a pencil of normal rank one.  A
//! brute-force enumeration oracle over small prime fields certifies the
//! decision procedure.
//!
//! All arithmetic is exact: prime fields use machine integers mod p, the
//! rationals use arbitrary-precision fractions.  There is no floating point
//! anywhere.

pub mod completion;
mod error;
pub mod majorize;
mod matrix;
pub mod oracle;
pub mod pencil;
pub mod perturb;
pub mod polyalg;
pub mod scalar;

pub use error::Error;
pub use majorize::{ExtInt, Partition};
pub use pencil::{KroneckerInvariants, Pencil};
pub use perturb::{DecisionOutcome, DegreeSums, RankOneForm, RankOneKind, Route};
pub use polyalg::{Factorization, HomPoly, UniPoly};
pub use scalar::{FieldSpec, Scalar};
