use thiserror::Error;

/// Errors shared across the crate.  Operations that cannot fail simply do not
/// return `Result`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quotient does not exist: operand is not divisible")]
    NotDivisible,
    #[error("factorization is not supported over this field")]
    UnsupportedField,
    #[error("partition entries must be nonincreasing")]
    InvalidPartition,
    #[error("sequence lengths are incompatible")]
    LengthMismatch,
    #[error("partitions must differ")]
    EqualPartitions,
    #[error("invariant record is internally inconsistent")]
    InconsistentInvariants,
    #[error("pencil does not have normal rank one")]
    NotRankOne,
    #[error("pencils have identical invariants; no perturbation question to decide")]
    SameInvariants,
    #[error("pencils have different shapes")]
    ShapeMismatch,
    #[error("shape too large for exhaustive enumeration")]
    ShapeTooLarge,
    #[error("field too large for exhaustive enumeration")]
    FieldTooLarge,
}
