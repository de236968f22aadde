//! Homogeneous polynomials in two variables (s, t) over a field, encoded by
//! the exact power of t they contain together with the dehomogenized part.
//!
//! Every nonzero homogeneous H(s,t) factors uniquely as `t^k * F(s,t)` with
//! `t` not dividing `F`; setting `t = 1` in `F` gives a polynomial f(s) whose
//! degree equals `deg F`.  We store `(k, f)` with `f` monic, so total degree
//! is `k + deg f` and divisibility/gcd/lcm reduce componentwise: compare the
//! t-powers and the univariate parts separately.  The zero form is divisible
//! by everything and divides only zero.

use crate::polyalg::UniPoly;
use crate::scalar::{FieldSpec, Scalar};
use crate::Error;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomPoly {
    field: FieldSpec,
    repr: Repr,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Zero,
    /// `t^t_exp * homogenization(finite)`, `finite` monic.
    Term { t_exp: usize, finite: UniPoly },
}

impl HomPoly {
    pub fn zero(field: FieldSpec) -> HomPoly {
        HomPoly {
            field,
            repr: Repr::Zero,
        }
    }

    pub fn unit(field: FieldSpec) -> HomPoly {
        HomPoly::from_parts(0, UniPoly::one(field))
    }

    /// `t^t_exp` times the homogenization of `finite` (normalized monic).
    /// A zero `finite` gives the zero form.
    pub fn from_parts(t_exp: usize, finite: UniPoly) -> HomPoly {
        let field = finite.field();
        if finite.is_zero() {
            return HomPoly::zero(field);
        }
        HomPoly {
            field,
            repr: Repr::Term {
                t_exp,
                finite: finite.monic(),
            },
        }
    }

    /// Convenience constructor from integer coefficients of the finite part.
    pub fn from_ints(field: FieldSpec, t_exp: usize, finite: &[i64]) -> HomPoly {
        HomPoly::from_parts(t_exp, UniPoly::from_ints(field, finite))
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero)
    }

    pub fn is_unit(&self) -> bool {
        matches!(&self.repr, Repr::Term { t_exp: 0, finite } if finite.is_one())
    }

    pub fn t_exp(&self) -> Option<usize> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Term { t_exp, .. } => Some(*t_exp),
        }
    }

    pub fn finite_part(&self) -> Option<&UniPoly> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Term { finite, .. } => Some(finite),
        }
    }

    /// Total degree; `None` for the zero form.
    pub fn degree(&self) -> Option<usize> {
        match &self.repr {
            Repr::Zero => None,
            Repr::Term { t_exp, finite } => Some(t_exp + finite.degree().unwrap()),
        }
    }

    pub fn divides(&self, other: &HomPoly) -> bool {
        self.expect_same_field(other);
        match (&self.repr, &other.repr) {
            (_, Repr::Zero) => true,
            (Repr::Zero, _) => false,
            (
                Repr::Term { t_exp: ka, finite: fa },
                Repr::Term { t_exp: kb, finite: fb },
            ) => ka <= kb && fa.divides(fb),
        }
    }

    pub fn gcd(&self, other: &HomPoly) -> HomPoly {
        self.expect_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) => other.clone(),
            (_, Repr::Zero) => self.clone(),
            (
                Repr::Term { t_exp: ka, finite: fa },
                Repr::Term { t_exp: kb, finite: fb },
            ) => HomPoly::from_parts(*ka.min(kb), fa.gcd(fb)),
        }
    }

    pub fn lcm(&self, other: &HomPoly) -> HomPoly {
        self.expect_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => HomPoly::zero(self.field),
            (
                Repr::Term { t_exp: ka, finite: fa },
                Repr::Term { t_exp: kb, finite: fb },
            ) => HomPoly::from_parts(*ka.max(kb), fa.lcm(fb)),
        }
    }

    pub fn mul(&self, other: &HomPoly) -> HomPoly {
        self.expect_same_field(other);
        match (&self.repr, &other.repr) {
            (Repr::Zero, _) | (_, Repr::Zero) => HomPoly::zero(self.field),
            (
                Repr::Term { t_exp: ka, finite: fa },
                Repr::Term { t_exp: kb, finite: fb },
            ) => HomPoly::from_parts(ka + kb, fa.mul(fb)),
        }
    }

    /// Exact quotient `other / self`; fails unless `self` divides `other`.
    pub fn quotient_of(&self, other: &HomPoly) -> Result<HomPoly, Error> {
        if !self.divides(other) {
            return Err(Error::NotDivisible);
        }
        match (&self.repr, &other.repr) {
            (_, Repr::Zero) => Ok(HomPoly::zero(self.field)),
            (Repr::Zero, _) => unreachable!("zero divides only zero"),
            (
                Repr::Term { t_exp: ka, finite: fa },
                Repr::Term { t_exp: kb, finite: fb },
            ) => Ok(HomPoly::from_parts(kb - ka, fb.exact_div(fa)?)),
        }
    }

    /// Value at (s, t) — mostly a testing aid; the homogenized form is
    /// `t^(t_exp + deg f) * f(s/t)` continued to `t = 0` by homogeneity.
    pub fn eval(&self, s: &Scalar, t: &Scalar) -> Scalar {
        match &self.repr {
            Repr::Zero => self.field.zero(),
            Repr::Term { t_exp, finite } => {
                let d = finite.degree().unwrap();
                let mut acc = self.field.zero();
                let mut s_pow = self.field.one();
                // sum f_i s^i t^(d-i), then times t^t_exp
                let mut terms = Vec::with_capacity(d + 1);
                for i in 0..=d {
                    terms.push(finite.coeff(i).mul(&s_pow));
                    s_pow = s_pow.mul(s);
                }
                let mut t_pow = self.field.one();
                for i in (0..=d).rev() {
                    acc = acc.add(&terms[i].mul(&t_pow));
                    t_pow = t_pow.mul(t);
                }
                for _ in 0..*t_exp {
                    acc = acc.mul(t);
                }
                acc
            }
        }
    }

    fn expect_same_field(&self, other: &HomPoly) {
        assert_eq!(
            self.field, other.field,
            "homogeneous arithmetic across distinct fields"
        );
    }
}

impl fmt::Display for HomPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero => write!(f, "0"),
            Repr::Term { t_exp, finite } => {
                if *t_exp > 0 {
                    if *t_exp == 1 {
                        write!(f, "t*")?;
                    } else {
                        write!(f, "t^{t_exp}*")?;
                    }
                }
                write!(f, "hom({finite})")
            }
        }
    }
}
