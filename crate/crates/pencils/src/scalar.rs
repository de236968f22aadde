//! Exact field elements: prime fields GF(p) and the rationals Q.
//!
//! Prime-field values live in `[0, p)` on machine integers; rationals are
//! arbitrary-precision reduced fractions with positive denominator (the
//! canonical form `num_rational::BigRational` maintains).  Mixing elements of
//! different fields is an error, never a coercion.

use crate::Error;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Largest admissible prime modulus; products of two residues then fit in u64.
const MAX_PRIME: u64 = (1 << 31) - 1;

/// Identifies the coefficient field of every value in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    /// GF(p) for a prime `p < 2^31`.
    Prime(u64),
    /// The rational numbers.
    Rational,
}

impl FieldSpec {
    /// Builds a prime-field descriptor, checking primality by trial division.
    pub fn prime(p: u64) -> Result<FieldSpec, Error> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldSpec::Prime(p))
    }

    /// Number of elements, `None` for an infinite field.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Rational => None,
        }
    }

    pub fn is_prime_field(&self) -> bool {
        matches!(self, FieldSpec::Prime(_))
    }

    /// True when the field has at least three elements.
    pub fn has_at_least_three_elements(&self) -> bool {
        match self {
            FieldSpec::Prime(p) => *p >= 3,
            FieldSpec::Rational => true,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::from_i64(*self, 0)
    }

    pub fn one(&self) -> Scalar {
        Scalar::from_i64(*self, 1)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Rational => write!(f, "Q"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of a [`FieldSpec`] field, always in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Prime { p: u64, value: u64 },
    Rational(Box<BigRational>),
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Prime { p, .. } => FieldSpec::Prime(*p),
            Scalar::Rational(_) => FieldSpec::Rational,
        }
    }

    /// Embeds an integer, reducing mod p for prime fields.
    pub fn from_i64(field: FieldSpec, v: i64) -> Scalar {
        match field {
            FieldSpec::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Prime { p, value: r }
            }
            FieldSpec::Rational => Scalar::Rational(Box::new(BigRational::from_integer(v.into()))),
        }
    }

    /// A reduced fraction over Q.  `den` must be nonzero.
    pub fn from_fraction(num: BigInt, den: BigInt) -> Result<Scalar, Error> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(Box::new(BigRational::new(num, den))))
    }

    pub fn rational(r: BigRational) -> Scalar {
        Scalar::Rational(Box::new(r))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 0,
            Scalar::Rational(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Prime { value, .. } => *value == 1,
            Scalar::Rational(r) => r.is_one(),
        }
    }

    fn expect_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: (a + b) % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a + &**b)),
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.expect_same_field(other);
        match (self, other) {
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: a * b % p,
            },
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(Box::new(&**a * &**b)),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
            Scalar::Rational(r) => Scalar::Rational(Box::new(-&**r)),
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Scalar, Error> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: pow_mod(*value, p - 2, *p),
            },
            Scalar::Rational(r) => Scalar::Rational(Box::new(r.recip())),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.expect_same_field(other);
        Ok(self.mul(&other.inv()?))
    }

    /// Field-checked addition: `FieldMismatch` instead of a panic.
    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check(other)?;
        Ok(self.add(other))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check(other)?;
        Ok(self.sub(other))
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check(other)?;
        Ok(self.mul(other))
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, Error> {
        self.check(other)?;
        self.div(other)
    }

    fn check(&self, other: &Scalar) -> Result<(), Error> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }

    /// Residue value for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            Scalar::Prime { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Prime { .. } => None,
        }
    }

    /// Rough size measure used for pivot selection over Q: bit length of
    /// numerator plus denominator.  Prime-field elements all weigh the same.
    pub(crate) fn height(&self) -> u64 {
        match self {
            Scalar::Prime { .. } => 1,
            Scalar::Rational(r) => r.numer().abs().bits() + r.denom().bits(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Prime { value, .. } => write!(f, "{value}"),
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn primality_gate() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(65537).is_ok());
        assert_eq!(FieldSpec::prime(1), Err(Error::NotPrime(1)));
        assert_eq!(FieldSpec::prime(4), Err(Error::NotPrime(4)));
        assert_eq!(FieldSpec::prime(91), Err(Error::NotPrime(91)));
    }

    #[test]
    fn small_field_arithmetic() {
        let f2 = gf(2);
        let one = f2.one();
        assert!(one.add(&one).is_zero());

        let f5 = gf(5);
        let two = Scalar::from_i64(f5, 2);
        assert_eq!(two.inv().unwrap(), Scalar::from_i64(f5, 3));
        assert_eq!(Scalar::from_i64(f5, -1), Scalar::from_i64(f5, 4));
    }

    #[test]
    fn rational_arithmetic_is_reduced() {
        let a = Scalar::from_fraction(1.into(), 2.into()).unwrap();
        let b = Scalar::from_fraction(3.into(), 4.into()).unwrap();
        let q = a.div(&b).unwrap();
        assert_eq!(q, Scalar::from_fraction(2.into(), 3.into()).unwrap());
        assert_eq!(q.to_string(), "2/3");
        // canonical: denominator positive, fraction reduced
        let c = Scalar::from_fraction((-4).into(), (-6).into()).unwrap();
        assert_eq!(c.to_string(), "2/3");
    }

    #[test]
    fn zero_inverse_fails() {
        assert_eq!(gf(7).zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Rational.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixing_fields_is_an_error() {
        let a = gf(2).one();
        let b = gf(3).one();
        assert_eq!(a.checked_add(&b), Err(Error::FieldMismatch));
        let r = FieldSpec::Rational.one();
        assert_eq!(a.checked_mul(&r), Err(Error::FieldMismatch));
    }

    fn random_scalar(rng: &mut ChaCha8Rng, field: FieldSpec) -> Scalar {
        match field {
            FieldSpec::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p) as i64),
            FieldSpec::Rational => {
                let num = rng.gen_range(-20i64..=20);
                let den = rng.gen_range(1i64..=20);
                Scalar::from_fraction(num.into(), den.into()).unwrap()
            }
        }
    }

    #[test]
    fn field_axioms_random_triples() {
        for field in [gf(2), gf(3), gf(5), FieldSpec::Rational] {
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            for _ in 0..1000 {
                let a = random_scalar(&mut rng, field);
                let b = random_scalar(&mut rng, field);
                let c = random_scalar(&mut rng, field);
                // associativity + commutativity + distributivity
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.add(&b), b.add(&a));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b), b.mul(&a));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                // identities and inverses
                assert_eq!(a.add(&field.zero()), a);
                assert_eq!(a.mul(&field.one()), a);
                assert!(a.sub(&a).is_zero());
                if !a.is_zero() {
                    assert!(a.mul(&a.inv().unwrap()).is_one());
                }
            }
        }
    }
}
