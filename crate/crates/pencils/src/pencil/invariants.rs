//! Extraction and realization of the complete strict-equivalence invariants:
//! the chain of homogeneous invariant factors plus the column and row minimal
//! indices.
//!
//! The chain entry `Γ_i` pairs the `i`-th invariant factor of `A0 + s·A1`
//! (its finite part) with the power of `t` carried by the `i`-th invariant
//! factor of the dual pencil `A1 + t·A0` (its infinite part). Minimal indices
//! come from nullity differences of convolution matrices, which only needs
//! constant-matrix ranks. `realize` inverts the extraction with the standard
//! block constructions: companion blocks for finite divisors, shift blocks
//! for infinite ones, singular blocks for the minimal indices.

use super::{Pencil, Side, SmithVariable};
use crate::error::Error;
use crate::majorize::Partition;
use crate::matrix;
use crate::polyalg::HomPoly;
use crate::scalar::FieldSpec;

/// The complete invariant record of a pencil: normal rank, homogeneous
/// invariant factors `Γ_1 | … | Γ_n`, and both minimal-index partitions.
/// Two pencils of equal shape are strictly equivalent exactly when their
/// records coincide.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KroneckerInvariants {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    rank: usize,
    hif: Vec<HomPoly>,
    col_min: Partition,
    row_min: Partition,
}

impl KroneckerInvariants {
    /// Builds a record from its parts, deriving the shape as
    /// `rows = rank + |row_min|`, `cols = rank + |col_min|`, and validating
    /// the divisibility chain and degree-sum identity.
    pub fn new(
        field: FieldSpec,
        rank: usize,
        hif: Vec<HomPoly>,
        col_min: Partition,
        row_min: Partition,
    ) -> Result<KroneckerInvariants, Error> {
        let rows = rank + row_min.len();
        let cols = rank + col_min.len();
        let rec = KroneckerInvariants {
            field,
            rows,
            cols,
            rank,
            hif,
            col_min,
            row_min,
        };
        rec.validate()?;
        Ok(rec)
    }

    fn validate(&self) -> Result<(), Error> {
        if self.rows == 0 || self.cols == 0 || self.hif.len() != self.rank {
            return Err(Error::InconsistentInvariants);
        }
        for g in &self.hif {
            if g.field() != self.field || g.is_zero() {
                return Err(Error::InconsistentInvariants);
            }
        }
        if self.hif.windows(2).any(|w| !w[0].divides(&w[1])) {
            return Err(Error::InconsistentInvariants);
        }
        let degrees: u64 = self
            .hif
            .iter()
            .map(|g| g.degree().expect("chain entries are nonzero") as u64)
            .sum();
        if degrees + self.col_min.sum() + self.row_min.sum() != self.rank as u64 {
            return Err(Error::InconsistentInvariants);
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn hif(&self) -> &[HomPoly] {
        &self.hif
    }

    /// 1-based chain access with the boundary conventions: a unit below
    /// index 1 and zero above index `rank`.
    pub fn hif_ext(&self, i: i64) -> HomPoly {
        if i < 1 {
            HomPoly::unit(self.field)
        } else if i as usize > self.rank {
            HomPoly::zero(self.field)
        } else {
            self.hif[i as usize - 1].clone()
        }
    }

    pub fn col_min(&self) -> &Partition {
        &self.col_min
    }

    pub fn row_min(&self) -> &Partition {
        &self.row_min
    }

    /// The invariants of the transposed pencil: minimal-index partitions
    /// swap sides, the chain is unchanged.
    pub fn transposed(&self) -> KroneckerInvariants {
        KroneckerInvariants {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            rank: self.rank,
            hif: self.hif.clone(),
            col_min: self.row_min.clone(),
            row_min: self.col_min.clone(),
        }
    }

    /// Canonical pencil with exactly these invariants, as a direct sum of
    /// companion, shift, and singular blocks.
    pub fn realize(&self) -> Result<Pencil, Error> {
        self.validate()?;
        let f = self.field;
        let (p, q) = (self.rows, self.cols);
        let mut a0 = vec![f.zero(); p * q];
        let mut a1 = vec![f.zero(); p * q];
        let (mut r0, mut c0) = (0usize, 0usize);
        for g in &self.hif {
            let k = g.t_exp().expect("chain entries are nonzero");
            let gamma = g.finite_part().expect("chain entries are nonzero");
            let d = gamma.degree().expect("finite parts are monic");
            if d > 0 {
                // s·I − C(γ): identity in A1; A0 holds the negated companion
                // matrix (coefficients up the last column, −1 subdiagonal).
                for i in 0..d {
                    a1[(r0 + i) * q + c0 + i] = f.one();
                    a0[(r0 + i) * q + c0 + d - 1] = gamma.coeff(i);
                }
                for i in 0..d - 1 {
                    a0[(r0 + i + 1) * q + c0 + i] = f.one().neg();
                }
                r0 += d;
                c0 += d;
            }
            if k > 0 {
                // I + s·N with N the upper shift: carries the factor t^k.
                for i in 0..k {
                    a0[(r0 + i) * q + c0 + i] = f.one();
                }
                for i in 0..k - 1 {
                    a1[(r0 + i) * q + c0 + i + 1] = f.one();
                }
                r0 += k;
                c0 += k;
            }
        }
        for &eps in self.col_min.parts() {
            let e = eps as usize;
            // ε×(ε+1) singular block: s on the diagonal, 1 above it. Index 0
            // degenerates to a zero column.
            for i in 0..e {
                a1[(r0 + i) * q + c0 + i] = f.one();
                a0[(r0 + i) * q + c0 + i + 1] = f.one();
            }
            r0 += e;
            c0 += e + 1;
        }
        for &eta in self.row_min.parts() {
            let e = eta as usize;
            // (η+1)×η transposed singular block; index 0 is a zero row.
            for i in 0..e {
                a1[(r0 + i) * q + c0 + i] = f.one();
                a0[(r0 + i + 1) * q + c0 + i] = f.one();
            }
            r0 += e + 1;
            c0 += e;
        }
        debug_assert_eq!((r0, c0), (p, q), "blocks tile the whole pencil");
        Pencil::new(f, p, q, a0, a1)
    }
}

impl Pencil {
    /// Column or row minimal indices as a nonincreasing partition of length
    /// `cols − rank` (respectively `rows − rank`).
    pub fn minimal_indices(&self, side: Side) -> Partition {
        match side {
            Side::Column => column_minimal_indices(self),
            Side::Row => column_minimal_indices(&self.transpose()),
        }
    }

    /// Extracts the complete invariant record.
    pub fn kronecker_invariants(&self) -> KroneckerInvariants {
        let gamma = self.smith_invariant_factors(SmithVariable::S);
        let dual = self.smith_invariant_factors(SmithVariable::Dual);
        debug_assert_eq!(gamma.len(), dual.len(), "primal and dual ranks agree");
        let hif: Vec<HomPoly> = gamma
            .into_iter()
            .zip(&dual)
            .map(|(g, d)| HomPoly::from_parts(d.valuation_at_zero(), g))
            .collect();
        let col_min = self.minimal_indices(Side::Column);
        let row_min = self.minimal_indices(Side::Row);
        KroneckerInvariants::new(self.field(), hif.len(), hif, col_min, row_min)
            .expect("extracted invariants satisfy the rank identity")
    }
}

/// Minimal column indices via kernel dimensions: with `ν_k` the dimension of
/// the space of polynomial kernel vectors of degree at most `k`,
/// `ν_k − ν_{k−1} = #{i : c_i ≤ k}`, and every index is at most `min(p, q)`.
fn column_minimal_indices(p: &Pencil) -> Partition {
    let kmax = p.rows().min(p.cols());
    let mut prev_nullity = 0usize;
    let mut prev_le = 0usize;
    let mut parts: Vec<u64> = Vec::new();
    for k in 0..=kmax {
        let nullity = (k + 1) * p.cols() - convolution_rank(p, k);
        let le = nullity - prev_nullity;
        parts.extend(std::iter::repeat(k as u64).take(le - prev_le));
        prev_nullity = nullity;
        prev_le = le;
    }
    parts.reverse();
    Partition::new(parts).expect("reversed ascending counts are nonincreasing")
}

/// Rank of the convolution matrix `C_k` mapping coefficient stacks of a
/// degree-≤k polynomial vector `v(s)` to the coefficients of `A(s)·v(s)`:
/// block `(b, b)` is `A0` and block `(b+1, b)` is `A1`.
fn convolution_rank(p: &Pencil, k: usize) -> usize {
    let rows = (k + 2) * p.rows();
    let cols = (k + 1) * p.cols();
    let mut data = vec![p.field().zero(); rows * cols];
    for b in 0..=k {
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                data[(b * p.rows() + i) * cols + b * p.cols() + j] = p.a0(i, j).clone();
                data[((b + 1) * p.rows() + i) * cols + b * p.cols() + j] = p.a1(i, j).clone();
            }
        }
    }
    matrix::rank(p.field(), rows, cols, &data)
}
