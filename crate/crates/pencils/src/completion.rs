//! Decision predicates for one-row (and, by transposition, one-column)
//! pencil completions, stated purely on invariant records.
//!
//! Given the invariants of an inner pencil `H1` and an outer pencil `H` with
//! one extra row, these answer whether some single row pencil `h(s)` makes
//! `[h; H1]` strictly equivalent to `H`. There are two regimes: the added row
//! keeps the normal rank, or raises it by one. Shape or rank-relation
//! mismatches yield `false` rather than an error so callers can probe both
//! predicates uniformly.

use crate::error::Error;
use crate::majorize::one_step_majorized;
use crate::pencil::KroneckerInvariants;

/// One-row completion with unchanged normal rank: `inner` is `(n+p)×(n+m)`
/// of rank `n`, `outer` is `(n+p+1)×(n+m)` of rank `n`. Holds iff
/// * the outer row partition has at least as many positive entries,
/// * the chains interlace: `π_i | π¹_i | π_{i+1}`,
/// * the row partitions satisfy `u ≺′ w`,
/// * the column partitions are equal.
pub fn row_completion_same_rank_exists(
    inner: &KroneckerInvariants,
    outer: &KroneckerInvariants,
) -> Result<bool, Error> {
    if inner.field() != outer.field() {
        return Err(Error::FieldMismatch);
    }
    if outer.rows() != inner.rows() + 1
        || outer.cols() != inner.cols()
        || outer.rank() != inner.rank()
    {
        return Ok(false);
    }
    if outer.row_min().positive_count() < inner.row_min().positive_count() {
        return Ok(false);
    }
    if !chains_interlace(inner, outer) {
        return Ok(false);
    }
    if !one_step_majorized(outer.row_min(), inner.row_min())? {
        return Ok(false);
    }
    Ok(inner.col_min() == outer.col_min())
}

/// One-row completion raising the normal rank: `inner` is `(n+p)×(n+m)` of
/// rank `n`, `outer` is `(n+p+1)×(n+m)` of rank `n+1`. Holds iff the chains
/// interlace, the column partitions satisfy `g ≺′ c`, and the row partitions
/// are equal.
pub fn row_completion_rank_up_exists(
    inner: &KroneckerInvariants,
    outer: &KroneckerInvariants,
) -> Result<bool, Error> {
    if inner.field() != outer.field() {
        return Err(Error::FieldMismatch);
    }
    if outer.rows() != inner.rows() + 1
        || outer.cols() != inner.cols()
        || outer.rank() != inner.rank() + 1
    {
        return Ok(false);
    }
    if !chains_interlace(inner, outer) {
        return Ok(false);
    }
    if !one_step_majorized(inner.col_min(), outer.col_min())? {
        return Ok(false);
    }
    Ok(inner.row_min() == outer.row_min())
}

/// Column analogue of [`row_completion_same_rank_exists`], by transposition.
pub fn col_completion_same_rank_exists(
    inner: &KroneckerInvariants,
    outer: &KroneckerInvariants,
) -> Result<bool, Error> {
    row_completion_same_rank_exists(&inner.transposed(), &outer.transposed())
}

/// Column analogue of [`row_completion_rank_up_exists`], by transposition.
pub fn col_completion_rank_up_exists(
    inner: &KroneckerInvariants,
    outer: &KroneckerInvariants,
) -> Result<bool, Error> {
    row_completion_rank_up_exists(&inner.transposed(), &outer.transposed())
}

/// Interlacing of the invariant-factor chains: `π_i | π¹_i | π_{i+1}` for
/// `1 ≤ i ≤ rank(inner)`, reading out-of-range entries as unit/zero.
fn chains_interlace(inner: &KroneckerInvariants, outer: &KroneckerInvariants) -> bool {
    for i in 1..=inner.rank() as i64 {
        if !outer.hif_ext(i).divides(&inner.hif_ext(i)) {
            return false;
        }
        if !inner.hif_ext(i).divides(&outer.hif_ext(i + 1)) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::Pencil;
    use crate::scalar::FieldSpec;

    fn gf2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn inv(rows: usize, cols: usize, a0: &[i64], a1: &[i64]) -> KroneckerInvariants {
        Pencil::from_ints(gf2(), rows, cols, a0, a1)
            .unwrap()
            .kronecker_invariants()
    }

    #[test]
    fn same_rank_row_examples() {
        // Appending a zero row to [s 1] is achievable (h = 0).
        let inner = inv(1, 2, &[0, 1], &[1, 0]);
        let outer = inv(2, 2, &[0, 1, 0, 0], &[1, 0, 0, 0]);
        assert!(row_completion_same_rank_exists(&inner, &outer).unwrap());
        // Column partitions must match: [1 0; 0 0] has column index 0, not 1.
        let outer_bad = inv(2, 2, &[1, 0, 0, 0], &[0, 0, 0, 0]);
        assert!(!row_completion_same_rank_exists(&inner, &outer_bad).unwrap());
        // Shape gate: same-shape records are not a one-row extension.
        assert!(!row_completion_same_rank_exists(&inner, &inner).unwrap());
    }

    #[test]
    fn rank_up_row_examples() {
        // The zero 1×2 pencil completes to [s 1; 0 0] with h = [s 1].
        let inner = inv(1, 2, &[0, 0], &[0, 0]);
        let outer = inv(2, 2, &[0, 1, 0, 0], &[1, 0, 0, 0]);
        assert!(row_completion_rank_up_exists(&inner, &outer).unwrap());
        // Row partitions must be equal: this outer has row index 1, inner 0.
        let outer_bad = inv(2, 2, &[0, 0, 1, 0], &[1, 0, 0, 0]);
        assert!(!row_completion_rank_up_exists(&inner, &outer_bad).unwrap());
        // Rank gate: a 3×2 outer can never out-rank diag(s, 1).
        let diag = inv(2, 2, &[0, 0, 0, 1], &[1, 0, 0, 0]);
        let tall = inv(3, 2, &[0, 0, 0, 1, 0, 0], &[1, 0, 0, 0, 0, 0]);
        assert!(!row_completion_rank_up_exists(&diag, &tall).unwrap());
        assert!(row_completion_same_rank_exists(&diag, &tall).unwrap());
    }

    #[test]
    fn column_variants_transpose() {
        // Column versions answer on the transposed configuration.
        let inner = inv(2, 1, &[0, 1], &[1, 0]);
        let outer = inv(2, 2, &[0, 0, 1, 0], &[1, 0, 0, 0]);
        assert!(col_completion_same_rank_exists(&inner, &outer).unwrap());
        let inner_zero = inv(2, 1, &[0, 0], &[0, 0]);
        assert!(col_completion_rank_up_exists(&inner_zero, &outer).unwrap());
    }

    #[test]
    fn field_mismatch_is_an_error() {
        let a = inv(1, 2, &[0, 1], &[1, 0]);
        let b = Pencil::from_ints(FieldSpec::Rational, 2, 2, &[0; 4], &[0; 4])
            .unwrap()
            .kronecker_invariants();
        assert!(matches!(
            row_completion_same_rank_exists(&a, &b),
            Err(Error::FieldMismatch)
        ));
    }
}
