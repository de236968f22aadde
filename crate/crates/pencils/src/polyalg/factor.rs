//! Complete factorization into monic irreducibles.
//!
//! Over GF(p) the classical pipeline runs: squarefree decomposition (with
//! p-th-root extraction when the derivative vanishes), distinct-degree
//! splitting by gcds with `x^(p^d) - x`, then randomized equal-degree
//! splitting (odd p uses the `a^((p^d-1)/2) - 1` trick, p = 2 the trace map).
//! The randomness is driven entirely by the caller's seed, so results are
//! reproducible.
//!
//! Over Q we clear denominators and factor primitive integer polynomials by
//! finite interpolation: a degree-d divisor is determined by its values at
//! d+1 points, and those values divide the values of the input, so scanning
//! all divisor tuples finds every factor.  Slow, but exact and entirely
//! adequate for the small degrees this crate works at.

use crate::polyalg::UniPoly;
use crate::scalar::{FieldSpec, Scalar};
use crate::Error;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// `unit * prod(factor^multiplicity)` with monic irreducible, distinct,
/// canonically ordered factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Scalar,
    pub factors: Vec<(UniPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> UniPoly {
        let mut acc = UniPoly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m));
        }
        acc
    }
}

/// Factors a nonzero polynomial into monic irreducibles over its field.
/// The seed drives the equal-degree splitting over GF(p); over Q the
/// algorithm is deterministic and the seed is unused.
pub fn factorize(f: &UniPoly, seed: u64) -> Result<Factorization, Error> {
    assert!(!f.is_zero(), "cannot factor the zero polynomial");
    let unit = f.leading().unwrap().clone();
    let monic = f.monic();
    let mut factors = if monic.is_one() {
        Vec::new()
    } else {
        match f.field() {
            FieldSpec::Prime(p) => factor_prime(&monic, p, seed),
            FieldSpec::Rational => factor_rational(&monic),
        }
    };
    factors.sort_by(|(a, _), (b, _)| poly_order(a, b));
    debug_assert_eq!(
        Factorization {
            unit: unit.clone(),
            factors: factors.clone()
        }
        .expand(),
        *f
    );
    Ok(Factorization { unit, factors })
}

/// Deterministic total order on polynomials used to canonicalize factor lists:
/// degree first, then coefficients from the top down.
fn poly_order(a: &UniPoly, b: &UniPoly) -> Ordering {
    match a.coeffs().len().cmp(&b.coeffs().len()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.coeffs().iter().rev().zip(b.coeffs().iter().rev()) {
        let o = match (x, y) {
            (Scalar::Prime { value: u, .. }, Scalar::Prime { value: v, .. }) => u.cmp(v),
            (Scalar::Rational(u), Scalar::Rational(v)) => u.cmp(v),
            _ => Ordering::Equal,
        };
        if o != Ordering::Equal {
            return o;
        }
    }
    Ordering::Equal
}

// ---------------------------------------------------------------------------
// GF(p)
// ---------------------------------------------------------------------------

fn factor_prime(f: &UniPoly, p: u64, seed: u64) -> Vec<(UniPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (sqfree, mult) in squarefree_prime(f, p) {
        for (part, deg) in distinct_degree(&sqfree, p) {
            for irr in equal_degree(&part, deg, p, &mut rng) {
                out.push((irr, mult));
            }
        }
    }
    out
}

/// Squarefree decomposition over GF(p).  When the derivative vanishes the
/// polynomial is a p-th power (Frobenius fixes GF(p), so the p-th root just
/// reads off every p-th coefficient) and the multiplicities scale by p.
fn squarefree_prime(f: &UniPoly, p: u64) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    squarefree_prime_into(f.clone(), p, 1, &mut out);
    out
}

fn squarefree_prime_into(f: UniPoly, p: u64, scale: u32, out: &mut Vec<(UniPoly, u32)>) {
    if f.is_one() {
        return;
    }
    let df = f.derivative();
    if df.is_zero() {
        squarefree_prime_into(pth_root(&f, p), p, scale * p as u32, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.exact_div(&c).unwrap();
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.exact_div(&y).unwrap();
        if !z.is_one() {
            out.push((z, i * scale));
        }
        w = y;
        c = c.exact_div(&w).unwrap();
        i += 1;
    }
    if !c.is_one() {
        squarefree_prime_into(pth_root(&c, p), p, scale * p as u32, out);
    }
}

/// p-th root of a polynomial in x^p over GF(p).
fn pth_root(f: &UniPoly, p: u64) -> UniPoly {
    let field = f.field();
    let coeffs = (0..=f.degree().unwrap() / p as usize)
        .map(|i| f.coeff(i * p as usize))
        .collect();
    UniPoly::from_coeffs(field, coeffs)
}

/// Splits a monic squarefree polynomial into products of irreducibles of one
/// common degree each, via gcds with x^(p^d) - x.
fn distinct_degree(f: &UniPoly, p: u64) -> Vec<(UniPoly, usize)> {
    let field = f.field();
    let x = UniPoly::var(field);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut d = 0usize;
    let mut out = Vec::new();
    while rest.degree().unwrap() >= 2 * (d + 1) {
        d += 1;
        h = pow_mod(&h, &BigUint::from(p), &rest);
        let g = rest.gcd(&h.sub(&x));
        if !g.is_one() {
            out.push((g.clone(), d));
            rest = rest.exact_div(&g).unwrap();
            h = h.divrem(&rest).unwrap().1;
        }
    }
    if !rest.is_one() {
        let d = rest.degree().unwrap();
        out.push((rest, d));
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting: `f` is a product of distinct
/// irreducibles all of degree `d`.
fn equal_degree(f: &UniPoly, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<UniPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.clone()];
    }
    let field = f.field();
    let split = loop {
        let coeffs: Vec<Scalar> = (0..n)
            .map(|_| Scalar::from_i64(field, rng.gen_range(0..p) as i64))
            .collect();
        let a = UniPoly::from_coeffs(field, coeffs);
        if a.is_constant() {
            continue;
        }
        let g = if p == 2 {
            // trace map of GF(2^d) over GF(2): a + a^2 + ... + a^(2^(d-1))
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..d {
                t = t.mul(&t).divrem(f).unwrap().1;
                acc = acc.add(&t);
            }
            f.gcd(&acc)
        } else {
            let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
            let b = pow_mod(&a, &e, f);
            f.gcd(&b.sub(&UniPoly::one(field)))
        };
        let dg = g.degree();
        if dg.is_some_and(|k| k > 0 && k < n) {
            break g;
        }
    };
    let rest = f.exact_div(&split).unwrap();
    let mut out = equal_degree(&split, d, p, rng);
    out.extend(equal_degree(&rest, d, p, rng));
    out
}

/// `base^exp mod m` by binary exponentiation.
fn pow_mod(base: &UniPoly, exp: &BigUint, m: &UniPoly) -> UniPoly {
    let mut acc = UniPoly::one(base.field());
    let mut b = base.divrem(m).unwrap().1;
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            acc = acc.mul(&b).divrem(m).unwrap().1;
        }
        b = b.mul(&b).divrem(m).unwrap().1;
    }
    acc
}

// ---------------------------------------------------------------------------
// Q
// ---------------------------------------------------------------------------

fn factor_rational(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    for (sqfree, mult) in squarefree_rational(f) {
        let primitive = clear_to_primitive(&sqfree);
        for h in interpolation_factor(primitive) {
            out.push((h.monic(), mult));
        }
    }
    out
}

/// Yun's squarefree decomposition (characteristic zero).
fn squarefree_rational(f: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    let df = f.derivative();
    let a0 = f.gcd(&df);
    let mut b = f.exact_div(&a0).unwrap();
    let c = df.exact_div(&a0).unwrap();
    let mut d = c.sub(&b.derivative());
    let mut i = 1u32;
    while !b.is_constant() {
        let a = b.gcd(&d);
        if !a.is_constant() {
            out.push((a.clone(), i));
        }
        b = b.exact_div(&a).unwrap();
        let c = d.exact_div(&a).unwrap();
        d = c.sub(&b.derivative());
        i += 1;
    }
    out
}

/// Scales a rational polynomial to integer coefficients with content one and
/// positive leading coefficient (still stored over Q).
fn clear_to_primitive(f: &UniPoly) -> UniPoly {
    let mut den = BigInt::one();
    for c in f.coeffs() {
        den = den.lcm(c.as_rational().unwrap().denom());
    }
    let ints: Vec<BigInt> = f
        .coeffs()
        .iter()
        .map(|c| {
            let q = c.as_rational().unwrap();
            q.numer() * (&den / q.denom())
        })
        .collect();
    let mut content = BigInt::zero();
    for v in &ints {
        content = content.gcd(v);
    }
    if ints.last().unwrap().is_negative() {
        content = -content;
    }
    UniPoly::from_coeffs(
        FieldSpec::Rational,
        ints.iter()
            .map(|v| Scalar::from_fraction(v / &content, BigInt::one()).unwrap())
            .collect(),
    )
}

fn int_coeff(f: &UniPoly, i: usize) -> BigInt {
    let c = f.coeff(i);
    let q = c.as_rational().unwrap();
    debug_assert!(q.denom().is_one());
    q.numer().clone()
}

fn is_integral(f: &UniPoly) -> bool {
    f.coeffs().iter().all(|c| c.as_rational().unwrap().denom().is_one())
}

/// Factors a primitive squarefree integer polynomial by interpolation over
/// divisor tuples.  Returns primitive irreducible integer polynomials.
fn interpolation_factor(f: UniPoly) -> Vec<UniPoly> {
    let deg = match f.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![f],
        Some(d) => d,
    };
    let field = FieldSpec::Rational;

    // Evaluation points 0, 1, -1, 2, -2, ...; a root found on the way is a
    // linear factor we split off immediately (squarefree, so exactly once).
    let mut points: Vec<i64> = Vec::new();
    let mut candidate = 0i64;
    let mut values: Vec<BigInt> = Vec::new();
    while points.len() < deg / 2 + 1 {
        let x = Scalar::from_i64(field, candidate);
        let v = f.eval(&x);
        if v.is_zero() {
            let lin = UniPoly::from_ints(field, &[-candidate, 1]);
            let rest = clear_to_primitive(&f.exact_div(&lin).unwrap());
            let mut out = vec![lin];
            out.extend(interpolation_factor(rest));
            return out;
        }
        points.push(candidate);
        values.push(v.as_rational().unwrap().numer().clone());
        candidate = if candidate > 0 { -candidate } else { -candidate + 1 };
    }

    for d in 1..=deg / 2 {
        let divisor_lists: Vec<Vec<BigInt>> = (0..=d)
            .map(|i| divisors(&values[i], i == 0))
            .collect();
        let mut tuple = vec![0usize; d + 1];
        'tuples: loop {
            let samples: Vec<(i64, BigInt)> = (0..=d)
                .map(|i| (points[i], divisor_lists[i][tuple[i]].clone()))
                .collect();
            if let Some(g) = interpolate(&samples) {
                if g.degree() == Some(d) && is_integral(&g) {
                    let g = if int_coeff(&g, d).is_negative() { g.neg() } else { g };
                    if let Ok(rest) = f.exact_div(&g) {
                        let mut out = vec![clear_to_primitive(&g)];
                        out.extend(interpolation_factor(clear_to_primitive(&rest)));
                        return out;
                    }
                }
            }
            // odometer over divisor tuples
            for i in 0..=d {
                tuple[i] += 1;
                if tuple[i] < divisor_lists[i].len() {
                    continue 'tuples;
                }
                tuple[i] = 0;
            }
            break;
        }
    }
    vec![f]
}

/// All divisors of `n` (nonzero); only positive ones when `positive_only`
/// (the candidate factor's sign is normalized separately).
fn divisors(n: &BigInt, positive_only: bool) -> Vec<BigInt> {
    let n = n
        .abs()
        .to_u128()
        .expect("interpolation value too large for divisor enumeration");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u128;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    let mut out: Vec<BigInt> = small.iter().map(|&v| BigInt::from(v)).collect();
    if !positive_only {
        let negs: Vec<BigInt> = out.iter().map(|v| -v).collect();
        out.extend(negs);
    }
    out
}

/// Lagrange interpolation through integer sample points.
fn interpolate(samples: &[(i64, BigInt)]) -> Option<UniPoly> {
    let field = FieldSpec::Rational;
    let mut acc = UniPoly::zero(field);
    for (i, (xi, vi)) in samples.iter().enumerate() {
        let mut basis = UniPoly::one(field);
        let mut denom = BigInt::one();
        for (j, (xj, _)) in samples.iter().enumerate() {
            if i == j {
                continue;
            }
            basis = basis.mul(&UniPoly::from_ints(field, &[-xj, 1]));
            denom *= BigInt::from(xi - xj);
        }
        let w = Scalar::from_fraction(vi.clone(), denom).ok()?;
        acc = acc.add(&basis.mul_scalar(&w));
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn square_over_gf2() {
        // s^2 + 1 = (s+1)^2 over GF(2)
        let f = UniPoly::from_ints(gf(2), &[1, 0, 1]);
        let fac = factorize(&f, 0).unwrap();
        assert!(fac.unit.is_one());
        assert_eq!(fac.factors, vec![(UniPoly::from_ints(gf(2), &[1, 1]), 2)]);
    }

    #[test]
    fn split_over_gf5() {
        // s^2 + 1 = (s+2)(s+3) over GF(5)
        let f = UniPoly::from_ints(gf(5), &[1, 0, 1]);
        let fac = factorize(&f, 0).unwrap();
        assert_eq!(
            fac.factors,
            vec![
                (UniPoly::from_ints(gf(5), &[2, 1]), 1),
                (UniPoly::from_ints(gf(5), &[3, 1]), 1)
            ]
        );
    }

    #[test]
    fn irreducible_over_gf3() {
        let f = UniPoly::from_ints(gf(3), &[1, 0, 1]);
        let fac = factorize(&f, 0).unwrap();
        assert_eq!(fac.factors, vec![(f, 1)]);
    }

    #[test]
    fn unit_is_preserved() {
        // 2(s+1)^2 over GF(3)
        let f = UniPoly::from_ints(gf(3), &[2, 4, 2]);
        let fac = factorize(&f, 0).unwrap();
        assert_eq!(fac.unit, Scalar::from_i64(gf(3), 2));
        assert_eq!(fac.expand(), f);
    }

    #[test]
    fn rational_quadratic() {
        // (s - 1/2)(s + 2) = s^2 + 3/2 s - 1
        let f = FieldSpec::Rational;
        let half = Scalar::from_fraction(1.into(), 2.into()).unwrap();
        let a = UniPoly::from_coeffs(f, vec![half.neg(), f.one()]);
        let b = UniPoly::from_ints(f, &[2, 1]);
        let prod = a.mul(&b);
        let fac = factorize(&prod, 0).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(), prod);
        assert!(fac.factors.iter().any(|(p, _)| *p == a));
        assert!(fac.factors.iter().any(|(p, _)| *p == b));
    }

    #[test]
    fn rational_irreducible_with_multiplicity() {
        // 3 (s^2 + 1)^2 over Q
        let f = FieldSpec::Rational;
        let s2p1 = UniPoly::from_ints(f, &[1, 0, 1]);
        let input = s2p1.pow(2).mul_scalar(&Scalar::from_i64(f, 3));
        let fac = factorize(&input, 0).unwrap();
        assert_eq!(fac.factors, vec![(s2p1, 2)]);
        assert_eq!(fac.unit, Scalar::from_i64(f, 3));
    }

    #[test]
    fn big_multiplicity_over_small_field() {
        // (s+1)^4 * s^2 over GF(2): derivative bookkeeping crosses char p
        let f2 = gf(2);
        let input = UniPoly::from_ints(f2, &[1, 1]).pow(4).mul(&UniPoly::var(f2).pow(2));
        let fac = factorize(&input, 7).unwrap();
        assert_eq!(fac.expand(), input);
        assert_eq!(fac.factors.len(), 2);
        for (p, m) in &fac.factors {
            assert_eq!(p.degree(), Some(1));
            assert!(*m == 2 || *m == 4);
        }
    }
}
