//! Matrix pencils `A(s) = A0 + s·A1` over an exact field and their complete
//! strict-equivalence invariants.
//!
//! A pencil is stored as its two constant coefficient matrices. The submodules
//! provide the Smith normal form over the polynomial ring ([`smith`]) and the
//! full invariant extraction — invariant factor chain, minimal indices,
//! canonical realization ([`invariants`]).

mod invariants;
mod smith;

pub use invariants::KroneckerInvariants;

use crate::error::Error;
use crate::matrix;
use crate::polyalg::UniPoly;
use crate::scalar::{FieldSpec, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Which polynomial matrix to put into Smith form: the pencil itself
/// (`A0 + s·A1`) or its dual (`A1 + t·A0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmithVariable {
    S,
    Dual,
}

/// Side selector for minimal indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Column,
    Row,
}

/// A matrix pencil `A(s) = A0 + s·A1` with constant `p×q` coefficient
/// matrices over a single field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pencil {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    a0: Vec<Scalar>,
    a1: Vec<Scalar>,
}

impl Pencil {
    /// Builds a pencil from row-major coefficient matrices, checking the
    /// dimensions and that every entry lives in `field`.
    pub fn new(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        a0: Vec<Scalar>,
        a1: Vec<Scalar>,
    ) -> Result<Pencil, Error> {
        if rows == 0 || cols == 0 || a0.len() != rows * cols || a1.len() != rows * cols {
            return Err(Error::ShapeMismatch);
        }
        if a0.iter().chain(&a1).any(|x| x.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Pencil {
            field,
            rows,
            cols,
            a0,
            a1,
        })
    }

    /// Convenience constructor mapping integer entries into the field.
    pub fn from_ints(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        a0: &[i64],
        a1: &[i64],
    ) -> Result<Pencil, Error> {
        let conv = |v: &[i64]| v.iter().map(|&x| Scalar::from_i64(field, x)).collect();
        Pencil::new(field, rows, cols, conv(a0), conv(a1))
    }

    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Pencil {
        let z = vec![field.zero(); rows * cols];
        Pencil::new(field, rows, cols, z.clone(), z).expect("positive dimensions")
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

    pub fn a0(&self, i: usize, j: usize) -> &Scalar {
        &self.a0[i * self.cols + j]
    }

    pub fn a1(&self, i: usize, j: usize) -> &Scalar {
        &self.a1[i * self.cols + j]
    }

    /// The `(i, j)` entry as the polynomial `a0 + a1·s`.
    pub fn entry_poly(&self, i: usize, j: usize) -> UniPoly {
        UniPoly::from_coeffs(
            self.field,
            vec![self.a0(i, j).clone(), self.a1(i, j).clone()],
        )
    }

    pub fn is_zero(&self) -> bool {
        self.a0.iter().chain(&self.a1).all(|x| x.is_zero())
    }

    pub fn transpose(&self) -> Pencil {
        let mut a0 = Vec::with_capacity(self.a0.len());
        let mut a1 = Vec::with_capacity(self.a1.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                a0.push(self.a0(i, j).clone());
                a1.push(self.a1(i, j).clone());
            }
        }
        Pencil {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            a0,
            a1,
        }
    }

    /// The dual pencil `A1 + t·A0` (coefficient matrices swapped).
    pub fn dual(&self) -> Pencil {
        Pencil {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            a0: self.a1.clone(),
            a1: self.a0.clone(),
        }
    }

    /// Entrywise sum of two pencils of identical shape and field.
    pub fn add(&self, other: &Pencil) -> Result<Pencil, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch);
        }
        let a0 = self
            .a0
            .iter()
            .zip(&other.a0)
            .map(|(x, y)| x.add(y))
            .collect();
        let a1 = self
            .a1
            .iter()
            .zip(&other.a1)
            .map(|(x, y)| x.add(y))
            .collect();
        Ok(Pencil {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            a0,
            a1,
        })
    }

    /// Monic invariant-factor chain of the chosen polynomial matrix; its
    /// length is the normal rank.
    pub fn smith_invariant_factors(&self, variable: SmithVariable) -> Vec<UniPoly> {
        let mut entries = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for j in 0..self.cols {
                let (c0, c1) = match variable {
                    SmithVariable::S => (self.a0(i, j).clone(), self.a1(i, j).clone()),
                    SmithVariable::Dual => (self.a1(i, j).clone(), self.a0(i, j).clone()),
                };
                row.push(UniPoly::from_coeffs(self.field, vec![c0, c1]));
            }
            entries.push(row);
        }
        smith::smith_chain(entries)
    }

    /// Normal rank (rank over the rational function field).
    pub fn normal_rank(&self) -> usize {
        self.smith_invariant_factors(SmithVariable::S).len()
    }

    /// Strict equivalence test: same shape and identical complete invariants.
    pub fn strictly_equivalent(&self, other: &Pencil) -> Result<bool, Error> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Ok(false);
        }
        Ok(self.kronecker_invariants() == other.kronecker_invariants())
    }

    /// A random pencil `Q·A(s)·R` for invertible constant `Q`, `R` drawn from
    /// `seed`; always strictly equivalent to `self`.
    pub fn random_equivalent(&self, seed: u64) -> Pencil {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = self.clone();
        let ops = 3 * (self.rows + self.cols) + 4;
        for _ in 0..ops {
            if rng.gen_bool(0.5) {
                out.random_row_op(&mut rng);
            } else {
                out.random_col_op(&mut rng);
            }
        }
        out
    }

    fn random_nonzero(&self, rng: &mut ChaCha8Rng) -> Scalar {
        match self.field {
            FieldSpec::Prime(p) => Scalar::from_i64(self.field, rng.gen_range(1..p) as i64),
            // Small values keep rational entries from blowing up under
            // repeated eliminations.
            FieldSpec::Rational => {
                let v = *[-2i64, -1, 1, 2].iter().nth(rng.gen_range(0..4)).unwrap();
                Scalar::from_i64(self.field, v)
            }
        }
    }

    fn random_row_op(&mut self, rng: &mut ChaCha8Rng) {
        let p = self.rows;
        match rng.gen_range(0..3) {
            0 => {
                let (i, j) = (rng.gen_range(0..p), rng.gen_range(0..p));
                for col in 0..self.cols {
                    self.a0.swap(i * self.cols + col, j * self.cols + col);
                    self.a1.swap(i * self.cols + col, j * self.cols + col);
                }
            }
            1 => {
                let i = rng.gen_range(0..p);
                let lam = self.random_nonzero(rng);
                for col in 0..self.cols {
                    let idx = i * self.cols + col;
                    self.a0[idx] = self.a0[idx].mul(&lam);
                    self.a1[idx] = self.a1[idx].mul(&lam);
                }
            }
            _ => {
                let i = rng.gen_range(0..p);
                let j = rng.gen_range(0..p);
                if i == j {
                    return;
                }
                let lam = self.random_nonzero(rng);
                for col in 0..self.cols {
                    let (ti, tj) = (i * self.cols + col, j * self.cols + col);
                    self.a0[ti] = self.a0[ti].add(&self.a0[tj].mul(&lam));
                    self.a1[ti] = self.a1[ti].add(&self.a1[tj].mul(&lam));
                }
            }
        }
    }

    fn random_col_op(&mut self, rng: &mut ChaCha8Rng) {
        let q = self.cols;
        match rng.gen_range(0..3) {
            0 => {
                let (i, j) = (rng.gen_range(0..q), rng.gen_range(0..q));
                for row in 0..self.rows {
                    self.a0.swap(row * q + i, row * q + j);
                    self.a1.swap(row * q + i, row * q + j);
                }
            }
            1 => {
                let j = rng.gen_range(0..q);
                let lam = self.random_nonzero(rng);
                for row in 0..self.rows {
                    let idx = row * q + j;
                    self.a0[idx] = self.a0[idx].mul(&lam);
                    self.a1[idx] = self.a1[idx].mul(&lam);
                }
            }
            _ => {
                let i = rng.gen_range(0..q);
                let j = rng.gen_range(0..q);
                if i == j {
                    return;
                }
                let lam = self.random_nonzero(rng);
                for row in 0..self.rows {
                    let (ti, tj) = (row * q + i, row * q + j);
                    self.a0[ti] = self.a0[ti].add(&self.a0[tj].mul(&lam));
                    self.a1[ti] = self.a1[ti].add(&self.a1[tj].mul(&lam));
                }
            }
        }
    }

    /// Rank of the constant matrix `x0·A0 + x1·A1`.
    pub fn rank_at(&self, x0: &Scalar, x1: &Scalar) -> usize {
        let data: Vec<Scalar> = self
            .a0
            .iter()
            .zip(&self.a1)
            .map(|(c0, c1)| c0.mul(x0).add(&c1.mul(x1)))
            .collect();
        matrix::rank(self.field, self.rows, self.cols, &data)
    }
}
