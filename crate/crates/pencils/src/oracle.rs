//! Exhaustive ground truth over small prime fields.
//!
//! Everything the decision procedures in [`crate::perturb`] and
//! [`crate::completion`] claim can be re-checked here by brute force: a
//! lazy enumeration of every pencil of normal rank one ([`enumerate_rank_one`]),
//! a decision-by-exhaustion over that space ([`brute_force_decide`]), a row
//! completion search ([`brute_force_row_completion`]), and a precomputed
//! invariant table ([`InvariantTable`]) that turns whole agreement grids into
//! array lookups.  None of it scales past toy sizes, which is the point: it
//! is simple enough to trust.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::pencil::{KroneckerInvariants, Pencil};
use crate::perturb::decide_from_invariants;
use crate::scalar::{FieldSpec, Scalar};

/// Largest prime order the brute-force helpers accept.
const MAX_ORACLE_PRIME: u64 = 7;
/// Largest pencil entry count (rows * cols) the candidate space accepts.
const MAX_ENTRIES: usize = 20;
/// Largest pencil count an [`InvariantTable`] will precompute.
const MAX_TABLE: u128 = 1 << 20;

fn oracle_prime(field: FieldSpec) -> Result<u64, Error> {
    match field.order() {
        Some(p) if p <= MAX_ORACLE_PRIME => Ok(p),
        Some(_) => Err(Error::FieldTooLarge),
        None => Err(Error::FieldTooLarge),
    }
}

fn digits(mut code: u128, base: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        out.push((code % base as u128) as u64);
        code /= base as u128;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    /// `P = u * v(s)^T`, constant projective `u` of length rows.
    ConstLeft,
    /// `P = u(s) * v^T`, constant projective `v` of length cols.
    ConstRight,
    Done,
}

/// Lazy cursor over every pencil of normal rank one for a shape and prime
/// field.
///
/// Two families are walked in order: first the outer products with a constant
/// left vector, then those with a constant right vector.  The constant side
/// runs over projective representatives (first nonzero coordinate 1, codes
/// ascending); the pencil side runs over all nonzero degree-one coefficient
/// stacks, codes ascending.  Pencils constant on both sides appear in both
/// families; existence searches tolerate the duplicates.
pub struct CandidateSpace {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    base: u64,
    family: Family,
    const_code: u128,
    stack_code: u128,
}

impl CandidateSpace {
    fn const_len(&self) -> usize {
        match self.family {
            Family::ConstLeft => self.rows,
            Family::ConstRight => self.cols,
            Family::Done => 0,
        }
    }

    fn stack_len(&self) -> usize {
        match self.family {
            Family::ConstLeft => 2 * self.cols,
            Family::ConstRight => 2 * self.rows,
            Family::Done => 0,
        }
    }

    fn is_projective(&self, code: u128) -> bool {
        digits(code, self.base, self.const_len())
            .iter()
            .find(|&&d| d != 0)
            == Some(&1)
    }

    fn build(&self) -> Pencil {
        let scalar = |d: u64| Scalar::from_i64(self.field, d as i64);
        let konst = digits(self.const_code, self.base, self.const_len());
        let stack = digits(self.stack_code, self.base, self.stack_len());
        let n = self.rows * self.cols;
        let mut a0 = Vec::with_capacity(n);
        let mut a1 = Vec::with_capacity(n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let (c0, c1) = match self.family {
                    Family::ConstLeft => {
                        (konst[i] * stack[j], konst[i] * stack[self.cols + j])
                    }
                    Family::ConstRight => {
                        (stack[i] * konst[j], stack[self.rows + i] * konst[j])
                    }
                    Family::Done => unreachable!(),
                };
                a0.push(scalar(c0));
                a1.push(scalar(c1));
            }
        }
        Pencil::new(self.field, self.rows, self.cols, a0, a1)
            .expect("outer products of in-range digits form a valid pencil")
    }
}

impl Iterator for CandidateSpace {
    type Item = Pencil;

    fn next(&mut self) -> Option<Pencil> {
        loop {
            if self.family == Family::Done {
                return None;
            }
            let const_limit = (self.base as u128).pow(self.const_len() as u32);
            let stack_limit = (self.base as u128).pow(self.stack_len() as u32);
            if self.const_code >= const_limit {
                self.family = match self.family {
                    Family::ConstLeft => Family::ConstRight,
                    _ => Family::Done,
                };
                self.const_code = 1;
                self.stack_code = 1;
                continue;
            }
            if !self.is_projective(self.const_code) || self.stack_code >= stack_limit {
                self.const_code += 1;
                self.stack_code = 1;
                continue;
            }
            let pencil = self.build();
            self.stack_code += 1;
            return Some(pencil);
        }
    }
}

/// Streams every pencil of normal rank one of the given shape over a small
/// prime field (each at least once; some twice).
pub fn enumerate_rank_one(
    field: FieldSpec,
    rows: usize,
    cols: usize,
) -> Result<CandidateSpace, Error> {
    let base = oracle_prime(field)?;
    if rows * cols > MAX_ENTRIES {
        return Err(Error::ShapeTooLarge);
    }
    Ok(CandidateSpace {
        field,
        rows,
        cols,
        base,
        family: Family::ConstLeft,
        const_code: 1,
        stack_code: 1,
    })
}

/// Decides `A + P ~ B` for some rank-one `P` by trying every candidate, in
/// enumeration order; returns the first witness found.
pub fn brute_force_decide(a: &Pencil, b: &Pencil) -> Result<(bool, Option<Pencil>), Error> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch);
    }
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::ShapeMismatch);
    }
    let target = b.kronecker_invariants();
    for p in enumerate_rank_one(a.field(), a.rows(), a.cols())? {
        let sum = a.add(&p).expect("candidates share the shape and field");
        if sum.kronecker_invariants() == target {
            return Ok((true, Some(p)));
        }
    }
    Ok((false, None))
}

/// Whether appending some degree-one row to `inner` produces a pencil with
/// exactly the `target` invariants.  Tries all `p^(2*cols)` rows, the zero
/// row included.
pub fn brute_force_row_completion(
    inner: &Pencil,
    target: &KroneckerInvariants,
) -> Result<bool, Error> {
    if inner.field() != target.field() {
        return Err(Error::FieldMismatch);
    }
    let base = oracle_prime(inner.field())?;
    if inner.cols() > 4 {
        return Err(Error::ShapeTooLarge);
    }
    if target.rows() != inner.rows() + 1 || target.cols() != inner.cols() {
        return Ok(false);
    }
    let cols = inner.cols();
    let scalar = |d: u64| Scalar::from_i64(inner.field(), d as i64);
    for code in 0..(base as u128).pow(2 * cols as u32) {
        let row = digits(code, base, 2 * cols);
        let mut a0: Vec<Scalar> = Vec::with_capacity((inner.rows() + 1) * cols);
        let mut a1 = a0.clone();
        for i in 0..inner.rows() {
            for j in 0..cols {
                a0.push(inner.a0(i, j).clone());
                a1.push(inner.a1(i, j).clone());
            }
        }
        a0.extend(row[..cols].iter().map(|&d| scalar(d)));
        a1.extend(row[cols..].iter().map(|&d| scalar(d)));
        let stacked = Pencil::new(inner.field(), inner.rows() + 1, cols, a0, a1)
            .expect("one extra row keeps the shape valid");
        if stacked.kronecker_invariants() == *target {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Kronecker invariants of every pencil of one shape over a small prime
/// field, interned as class ids and indexed by a mixed-radix pencil code.
///
/// The code is little-endian base-p over the `A0` entries (row-major) then
/// the `A1` entries, so pencil addition is digitwise modular addition of
/// codes and equivalence testing is an id comparison.
pub struct InvariantTable {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    base: u64,
    class_of: Vec<u32>,
    classes: Vec<KroneckerInvariants>,
}

impl InvariantTable {
    pub fn build(field: FieldSpec, rows: usize, cols: usize) -> Result<InvariantTable, Error> {
        let base = oracle_prime(field)?;
        let total = (base as u128)
            .checked_pow((2 * rows * cols) as u32)
            .filter(|&t| t <= MAX_TABLE)
            .ok_or(Error::ShapeTooLarge)?;
        let mut class_of = Vec::with_capacity(total as usize);
        let mut classes: Vec<KroneckerInvariants> = Vec::new();
        let mut ids: HashMap<KroneckerInvariants, u32> = HashMap::new();
        let mut table = InvariantTable {
            field,
            rows,
            cols,
            base,
            class_of: Vec::new(),
            classes: Vec::new(),
        };
        for code in 0..total as usize {
            let inv = table.decode(code).kronecker_invariants();
            let id = match ids.get(&inv) {
                Some(&id) => id,
                None => {
                    let id = classes.len() as u32;
                    ids.insert(inv.clone(), id);
                    classes.push(inv);
                    id
                }
            };
            class_of.push(id);
        }
        table.class_of = class_of;
        table.classes = classes;
        Ok(table)
    }

    /// Number of pencils of the shape (= `p^(2*rows*cols)`).
    pub fn total(&self) -> usize {
        self.class_of.len()
    }

    /// Number of distinct strict-equivalence classes among them.
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_id(&self, code: usize) -> u32 {
        self.class_of[code]
    }

    pub fn class_invariants(&self, id: u32) -> &KroneckerInvariants {
        &self.classes[id as usize]
    }

    pub fn encode(&self, pencil: &Pencil) -> usize {
        assert_eq!(pencil.field(), self.field, "table is field-specific");
        assert_eq!((pencil.rows(), pencil.cols()), (self.rows, self.cols));
        let mut code: u128 = 0;
        let mut weight: u128 = 1;
        for coeff in 0..2 {
            for i in 0..self.rows {
                for j in 0..self.cols {
                    let entry = if coeff == 0 {
                        pencil.a0(i, j)
                    } else {
                        pencil.a1(i, j)
                    };
                    let d = entry.residue().expect("prime-field entries have residues");
                    code += d as u128 * weight;
                    weight *= self.base as u128;
                }
            }
        }
        code as usize
    }

    pub fn decode(&self, code: usize) -> Pencil {
        let digs = digits(code as u128, self.base, 2 * self.rows * self.cols);
        let scalars: Vec<Scalar> = digs
            .iter()
            .map(|&d| Scalar::from_i64(self.field, d as i64))
            .collect();
        let n = self.rows * self.cols;
        Pencil::new(
            self.field,
            self.rows,
            self.cols,
            scalars[..n].to_vec(),
            scalars[n..].to_vec(),
        )
        .expect("decoded digit vectors have the right length")
    }

    /// Code of the entrywise sum of the two encoded pencils.
    pub fn add_codes(&self, x: usize, y: usize) -> usize {
        let b = self.base as u128;
        let (mut x, mut y) = (x as u128, y as u128);
        let mut out: u128 = 0;
        let mut weight: u128 = 1;
        for _ in 0..2 * self.rows * self.cols {
            out += ((x % b + y % b) % b) * weight;
            x /= b;
            y /= b;
            weight *= b;
        }
        out as usize
    }
}

/// Tally of a decision-vs-oracle agreement sweep.
#[derive(Clone, Debug)]
pub struct AgreementReport {
    pub pairs: usize,
    pub disagreements: usize,
    /// First `(A, B)` pair the two sides disagreed on, if any.
    pub first_disagreement: Option<(Pencil, Pencil)>,
}

impl AgreementReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements == 0
    }
}

/// Distinct candidate codes for the rank-one space of the table's shape.
fn candidate_codes(table: &InvariantTable) -> Result<Vec<usize>, Error> {
    let set: BTreeSet<usize> = enumerate_rank_one(table.field, table.rows, table.cols)?
        .map(|p| table.encode(&p))
        .collect();
    Ok(set.into_iter().collect())
}

struct GridChecker {
    table: InvariantTable,
    candidates: Vec<usize>,
    /// Memoized decision verdicts per ordered class pair.
    verdicts: HashMap<(u32, u32), bool>,
    seed: u64,
}

impl GridChecker {
    fn new(field: FieldSpec, rows: usize, cols: usize, seed: u64) -> Result<GridChecker, Error> {
        let table = InvariantTable::build(field, rows, cols)?;
        let candidates = candidate_codes(&table)?;
        Ok(GridChecker {
            table,
            candidates,
            verdicts: HashMap::new(),
            seed,
        })
    }

    fn decision(&mut self, ca: u32, cb: u32) -> bool {
        let table = &self.table;
        let seed = self.seed;
        *self.verdicts.entry((ca, cb)).or_insert_with(|| {
            decide_from_invariants(
                table.class_invariants(ca),
                table.class_invariants(cb),
                seed,
            )
            .expect("table entries share shape and field")
            .exists
        })
    }

    fn oracle(&self, a_code: usize, cb: u32) -> bool {
        self.candidates
            .iter()
            .any(|&pc| self.table.class_id(self.table.add_codes(a_code, pc)) == cb)
    }

    fn check_pair(&mut self, report: &mut AgreementReport, a_code: usize, b_code: usize) {
        let ca = self.table.class_id(a_code);
        let cb = self.table.class_id(b_code);
        let decided = self.decision(ca, cb);
        let oracled = self.oracle(a_code, cb);
        report.pairs += 1;
        if decided != oracled {
            report.disagreements += 1;
            if report.first_disagreement.is_none() {
                report.first_disagreement =
                    Some((self.table.decode(a_code), self.table.decode(b_code)));
            }
        }
    }
}

/// Compares the invariant-theoretic decision against the brute-force oracle
/// on **every** ordered pencil pair of the shape.
pub fn exhaustive_agreement(
    field: FieldSpec,
    rows: usize,
    cols: usize,
    seed: u64,
) -> Result<AgreementReport, Error> {
    let mut checker = GridChecker::new(field, rows, cols, seed)?;
    let mut report = AgreementReport {
        pairs: 0,
        disagreements: 0,
        first_disagreement: None,
    };
    // The oracle side depends on A only through its reachable classes, so
    // sweep B's classes once per A and multiply out the class sizes.
    let total = checker.table.total();
    let nclasses = checker.table.class_count() as u32;
    let mut class_size = vec![0usize; nclasses as usize];
    for code in 0..total {
        class_size[checker.table.class_id(code) as usize] += 1;
    }
    for a_code in 0..total {
        let ca = checker.table.class_id(a_code);
        for cb in 0..nclasses {
            let decided = checker.decision(ca, cb);
            let oracled = checker.oracle(a_code, cb);
            report.pairs += class_size[cb as usize];
            if decided != oracled {
                report.disagreements += class_size[cb as usize];
                if report.first_disagreement.is_none() {
                    let b_code = (0..total)
                        .find(|&c| checker.table.class_id(c) == cb)
                        .expect("class ids come from the table");
                    report.first_disagreement =
                        Some((checker.table.decode(a_code), checker.table.decode(b_code)));
                }
            }
        }
    }
    Ok(report)
}

/// Compares the decision against the oracle on seeded random ordered pairs.
pub fn sampled_agreement(
    field: FieldSpec,
    rows: usize,
    cols: usize,
    trials: usize,
    seed: u64,
) -> Result<AgreementReport, Error> {
    let mut checker = GridChecker::new(field, rows, cols, seed)?;
    let mut report = AgreementReport {
        pairs: 0,
        disagreements: 0,
        first_disagreement: None,
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total = checker.table.total();
    for _ in 0..trials {
        let a_code = rng.gen_range(0..total);
        let b_code = rng.gen_range(0..total);
        checker.check_pair(&mut report, a_code, b_code);
    }
    Ok(report)
}
