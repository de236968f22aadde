//! Constant-matrix helpers over a [`FieldSpec`] field: exact rank and a few
//! row/column utilities shared by the pencil and oracle code.
//!
//! Prime fields use plain Gaussian elimination on residues.  Over Q each row
//! is scaled to integers first and the rank comes from fraction-free (Bareiss)
//! elimination on `BigInt`, which keeps intermediate entries divisor-bounded
//! instead of letting fraction sizes explode.

use crate::scalar::{FieldSpec, Scalar};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// Rank of a `rows x cols` row-major matrix of scalars (all one field).
pub(crate) fn rank(field: FieldSpec, rows: usize, cols: usize, data: &[Scalar]) -> usize {
    debug_assert_eq!(data.len(), rows * cols);
    match field {
        FieldSpec::Prime(p) => {
            let mut m: Vec<u64> = data.iter().map(|s| s.residue().unwrap()).collect();
            rank_prime(p, rows, cols, &mut m)
        }
        FieldSpec::Rational => {
            let mut m: Vec<BigInt> = Vec::with_capacity(rows * cols);
            for r in 0..rows {
                // common denominator of the row
                let mut den = BigInt::one();
                for c in 0..cols {
                    den = den.lcm(data[r * cols + c].as_rational().unwrap().denom());
                }
                for c in 0..cols {
                    let q = data[r * cols + c].as_rational().unwrap();
                    m.push(q.numer() * (&den / q.denom()));
                }
            }
            rank_bareiss(rows, cols, &mut m)
        }
    }
}

fn rank_prime(p: u64, rows: usize, cols: usize, m: &mut [u64]) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r * cols + col] % p != 0) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = inv_mod(m[rank * cols + col], p);
        for r in rank + 1..rows {
            let factor = m[r * cols + col] % p;
            if factor == 0 {
                continue;
            }
            let scale = factor * inv % p;
            for c in col..cols {
                let sub = scale * (m[rank * cols + c] % p) % p;
                m[r * cols + c] = (m[r * cols + c] % p + p - sub) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Bareiss fraction-free elimination; every division below is exact.
fn rank_bareiss(rows: usize, cols: usize, m: &mut [BigInt]) -> usize {
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r * cols + col].is_zero()) else {
            continue;
        };
        if pivot != rank {
            for c in 0..cols {
                m.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let piv = m[rank * cols + col].clone();
        for r in rank + 1..rows {
            let lead = m[r * cols + col].clone();
            for c in col..cols {
                let v = &piv * &m[r * cols + c] - &lead * &m[rank * cols + c];
                m[r * cols + c] = &v / &prev;
            }
        }
        prev = piv;
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_fraction(n.into(), d.into()).unwrap()
    }

    #[test]
    fn prime_rank() {
        let f = FieldSpec::prime(2).unwrap();
        let s = |v: i64| Scalar::from_i64(f, v);
        // [[1,1],[1,1]] has rank 1 over GF(2)
        let m = vec![s(1), s(1), s(1), s(1)];
        assert_eq!(rank(f, 2, 2, &m), 1);
        // [[1,0],[1,1]] has rank 2
        let m = vec![s(1), s(0), s(1), s(1)];
        assert_eq!(rank(f, 2, 2, &m), 2);
        assert_eq!(rank(f, 2, 2, &vec![s(0); 4]), 0);
    }

    #[test]
    fn rational_rank_with_fractions() {
        // [[1/2, 1/3], [3/2, 1]] has determinant 1/2 - 1/2 = 0 -> rank 1
        let m = vec![q(1, 2), q(1, 3), q(3, 2), q(1, 1)];
        assert_eq!(rank(FieldSpec::Rational, 2, 2, &m), 1);
        // perturb one entry -> rank 2
        let m = vec![q(1, 2), q(1, 3), q(3, 2), q(2, 1)];
        assert_eq!(rank(FieldSpec::Rational, 2, 2, &m), 2);
    }

}
