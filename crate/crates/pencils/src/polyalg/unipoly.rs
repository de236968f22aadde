//! Dense univariate polynomials with exact field coefficients.
//!
//! Coefficients are stored in ascending degree order with no trailing zeros,
//! so the zero polynomial has an empty coefficient vector and `degree()` of
//! `None`.  Every operation is exact; divisions that do not come out even are
//! reported, never rounded.

use crate::scalar::{FieldSpec, Scalar};
use crate::Error;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: FieldSpec,
    /// Ascending coefficients, highest entry nonzero (empty = zero poly).
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    pub fn zero(field: FieldSpec) -> UniPoly {
        UniPoly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: FieldSpec) -> UniPoly {
        UniPoly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::from_coeffs(c.field(), vec![c])
    }

    /// `c * x^deg`
    pub fn monomial(c: Scalar, deg: usize) -> UniPoly {
        let field = c.field();
        let mut coeffs = vec![field.zero(); deg];
        coeffs.push(c);
        UniPoly::from_coeffs(field, coeffs)
    }

    /// The variable itself.
    pub fn var(field: FieldSpec) -> UniPoly {
        UniPoly::monomial(field.one(), 1)
    }

    /// Builds from ascending coefficients, trimming trailing zeros.
    pub fn from_coeffs(field: FieldSpec, mut coeffs: Vec<Scalar>) -> UniPoly {
        debug_assert!(coeffs.iter().all(|c| c.field() == field));
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    /// Convenience: coefficients given as integers, embedded into `field`.
    pub fn from_ints(field: FieldSpec, coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(
            field,
            coeffs.iter().map(|&v| Scalar::from_i64(field, v)).collect(),
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Scalar::is_one)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.expect_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect();
        UniPoly::from_coeffs(self.field, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> UniPoly {
        UniPoly {
            field: self.field,
            coeffs: self.coeffs.iter().map(Scalar::neg).collect(),
        }
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.expect_same_field(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        UniPoly::from_coeffs(self.field, coeffs)
    }

    pub fn mul_scalar(&self, c: &Scalar) -> UniPoly {
        UniPoly::from_coeffs(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// `x^k * self`
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::from_coeffs(self.field, coeffs)
    }

    pub fn pow(&self, mut e: u32) -> UniPoly {
        let mut base = self.clone();
        let mut acc = UniPoly::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &UniPoly) -> Result<(UniPoly, UniPoly), Error> {
        self.expect_same_field(div);
        if div.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dd = div.degree().unwrap();
        let lead_inv = div.leading().unwrap().inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![
            self.field.zero();
            self.coeffs.len().saturating_sub(div.coeffs.len()) + 1
        ];
        while rem.len() >= div.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - div.coeffs.len();
            let c = rem.last().unwrap().mul(&lead_inv);
            quot[k] = c.clone();
            for i in 0..=dd {
                rem[k + i] = rem[k + i].sub(&c.mul(&div.coeffs[i]));
            }
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        Ok((
            UniPoly::from_coeffs(self.field, quot),
            UniPoly::from_coeffs(self.field, rem),
        ))
    }

    /// Exact quotient; `NotDivisible` when a remainder survives.
    pub fn exact_div(&self, div: &UniPoly) -> Result<UniPoly, Error> {
        let (q, r) = self.divrem(div)?;
        if !r.is_zero() {
            return Err(Error::NotDivisible);
        }
        Ok(q)
    }

    pub fn divides(&self, other: &UniPoly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.expect_same_field(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple; zero if either operand is zero.
    pub fn lcm(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(self.field);
        }
        let g = self.gcd(other);
        self.mul(other).exact_div(&g).unwrap().monic()
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.mul_scalar(&l.inv().unwrap()),
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero(self.field);
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&Scalar::from_i64(self.field, i as i64)))
            .collect();
        UniPoly::from_coeffs(self.field, coeffs)
    }

    /// Multiplicity of the root zero, i.e. the largest k with x^k dividing.
    pub fn valuation_at_zero(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn expect_same_field(&self, other: &UniPoly) {
        assert_eq!(
            self.field, other.field,
            "polynomial arithmetic across distinct fields"
        );
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "s")?,
                1 => write!(f, "{c}*s")?,
                _ if c.is_one() => write!(f, "s^{i}")?,
                _ => write!(f, "{c}*s^{i}")?,
            }
        }
        Ok(())
    }
}
