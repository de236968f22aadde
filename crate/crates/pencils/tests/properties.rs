//! Randomized cross-module properties: exactness of the polynomial layer,
//! order-theoretic laws for homogeneous divisors, majorization identities,
//! the interval bound on achievable chain degree sums, and invariance of the
//! perturbation decision under strict equivalence and transposition.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pencils::majorize::{
    build_e_with_sum, cardinality_lemma_holds, gen_majorized, one_step_majorized,
};
use pencils::oracle::brute_force_decide;
use pencils::perturb::{closed_field_interval_ok, decide, pi_chain_degree_sums};
use pencils::polyalg::factorize;
use pencils::{DegreeSums, FieldSpec, HomPoly, Partition, Pencil, Scalar, UniPoly};

fn gf(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn field_by_index(i: usize) -> FieldSpec {
    match i % 4 {
        0 => gf(2),
        1 => gf(3),
        2 => gf(5),
        _ => FieldSpec::Rational,
    }
}

fn random_poly(field: FieldSpec, max_deg: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let len = rng.gen_range(0..=max_deg + 1);
    let coeffs: Vec<i64> = (0..len)
        .map(|_| match field.order() {
            Some(p) => rng.gen_range(0..p) as i64,
            None => rng.gen_range(-9..=9),
        })
        .collect();
    UniPoly::from_ints(field, &coeffs)
}

fn random_pencil(field: FieldSpec, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Pencil {
    let entry = |rng: &mut ChaCha8Rng| match field.order() {
        Some(p) => Scalar::from_i64(field, rng.gen_range(0..p) as i64),
        None => Scalar::from_i64(field, rng.gen_range(-3..=3)),
    };
    let a0: Vec<Scalar> = (0..rows * cols).map(|_| entry(rng)).collect();
    let a1: Vec<Scalar> = (0..rows * cols).map(|_| entry(rng)).collect();
    Pencil::new(field, rows, cols, a0, a1).unwrap()
}

fn random_partition(max_part: u64, len: usize, rng: &mut ChaCha8Rng) -> Partition {
    let mut parts: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=max_part)).collect();
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition::new(parts).unwrap()
}

/// All monic polynomials over GF(p) of degree at most `max_deg`.
fn monic_polys(field: FieldSpec, max_deg: usize) -> Vec<UniPoly> {
    let p = field.order().unwrap();
    let mut out = Vec::new();
    for deg in 0..=max_deg {
        let count = p.pow(deg as u32);
        for code in 0..count {
            let mut coeffs = vec![0i64; deg + 1];
            let mut c = code;
            for slot in coeffs.iter_mut().take(deg) {
                *slot = (c % p) as i64;
                c /= p;
            }
            coeffs[deg] = 1;
            out.push(UniPoly::from_ints(field, &coeffs));
        }
    }
    out
}

#[test]
fn gcd_divides_both_and_collects_every_common_divisor() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..4usize {
        let field = field_by_index(i);
        for _ in 0..500 {
            let f = random_poly(field, 6, &mut rng);
            let g = random_poly(field, 6, &mut rng);
            let d = f.gcd(&g);
            if f.is_zero() && g.is_zero() {
                assert!(d.is_zero());
                continue;
            }
            assert!(d.divides(&f) && d.divides(&g), "f={f:?}, g={g:?}");
        }
    }
    // Greatest: over small fields, scan every monic polynomial of degree
    // up to 4 and check that each common divisor divides the gcd.
    for p in [2u64, 3] {
        let field = gf(p);
        let pool = monic_polys(field, 4);
        for _ in 0..500 {
            let f = random_poly(field, 4, &mut rng);
            let g = random_poly(field, 4, &mut rng);
            let d = f.gcd(&g);
            for h in &pool {
                if h.divides(&f) && h.divides(&g) {
                    assert!(h.divides(&d), "h={h:?}, f={f:?}, g={g:?}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    /// Re-expanding a factorization reproduces the input bit-exactly.
    #[test]
    fn factorization_reexpands_exactly(
        fidx in 0usize..4,
        raw in proptest::collection::vec(-9i64..=9, 1..=9),
        seed in any::<u64>(),
    ) {
        let field = field_by_index(fidx);
        let cap = if field == FieldSpec::Rational { 6 } else { 9 };
        let coeffs: Vec<i64> = raw.into_iter().take(cap).collect();
        let f = UniPoly::from_ints(field, &coeffs);
        prop_assume!(!f.is_zero());
        let fac = factorize(&f, seed).unwrap();
        prop_assert_eq!(fac.expand(), f);
        for (q, _) in &fac.factors {
            prop_assert!(q.is_monic());
            prop_assert!(q.degree().unwrap_or(0) >= 1);
        }
    }
}

#[test]
fn hom_divisibility_is_a_partial_order_with_meet_and_join() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let field = gf(3);
    let mut pool = vec![HomPoly::zero(field), HomPoly::unit(field)];
    while pool.len() < 50 {
        let t_exp = rng.gen_range(0..=2usize);
        let deg = rng.gen_range(0..=3usize);
        let mut coeffs: Vec<i64> = (0..deg).map(|_| rng.gen_range(0..3)).collect();
        coeffs.push(1);
        pool.push(HomPoly::from_ints(field, t_exp, &coeffs));
    }

    for a in &pool {
        assert!(a.divides(a), "reflexivity failed on {a:?}");
        for b in &pool {
            if a.divides(b) && b.divides(a) {
                assert_eq!(a, b, "antisymmetry failed");
            }
            for c in &pool {
                if a.divides(b) && b.divides(c) {
                    assert!(a.divides(c), "transitivity failed on {a:?}, {b:?}, {c:?}");
                }
            }
        }
    }

    for a in &pool {
        for b in &pool {
            let m = a.gcd(b);
            assert!(m.divides(a) && m.divides(b), "gcd not a lower bound");
            let j = a.lcm(b);
            assert!(a.divides(&j) && b.divides(&j), "lcm not an upper bound");
            for h in &pool {
                if h.divides(a) && h.divides(b) {
                    assert!(h.divides(&m), "gcd not greatest: {h:?} vs {m:?}");
                }
                if a.divides(h) && b.divides(h) {
                    assert!(j.divides(h), "lcm not least: {j:?} vs {h:?}");
                }
            }
        }
    }
}

#[test]
fn one_step_matches_generalized_with_one_slot() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10_000 {
        let dl = rng.gen_range(0..=4usize);
        let d = random_partition(6, dl, &mut rng);
        let g = random_partition(7, dl + 1, &mut rng);
        let a1 = g.sum() as i64 - d.sum() as i64;
        assert_eq!(
            one_step_majorized(&g, &d).unwrap(),
            gen_majorized(&g, &d, &[a1]).unwrap(),
            "g={g}, d={d}"
        );
    }
}

#[test]
fn cardinality_bound_on_feasible_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut feasible = 0usize;
    let mut attempts = 0usize;
    while feasible < 10_000 {
        attempts += 1;
        assert!(attempts < 200_000, "feasible pairs too rare");
        let len = rng.gen_range(1..=5usize);
        let a = random_partition(5, len, &mut rng);
        let e_sum = rng.gen_range(0..=a.sum() + 3);
        let Some(e) = build_e_with_sum(e_sum, &a) else {
            continue;
        };
        assert!(one_step_majorized(&a, &e).unwrap());
        assert!(cardinality_lemma_holds(&a, &e), "a={a}, e={e}");
        feasible += 1;
    }
}

/// A divisor chain built by multiplying random factors into suffixes, so
/// consecutive entries always divide each other.
fn random_chain(
    field: FieldSpec,
    len: usize,
    factors: &[HomPoly],
    multiplications: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<HomPoly> {
    let mut chain = vec![HomPoly::unit(field); len];
    if len == 0 {
        return chain;
    }
    for _ in 0..multiplications {
        let j = rng.gen_range(0..len);
        let f = &factors[rng.gen_range(0..factors.len())];
        for entry in chain.iter_mut().skip(j) {
            *entry = entry.mul(f);
        }
    }
    chain
}

fn linear_factors(field: FieldSpec) -> Vec<HomPoly> {
    let p = field.order().unwrap();
    let mut out = vec![HomPoly::from_ints(field, 1, &[1])];
    out.push(HomPoly::from_ints(field, 0, &[0, 1]));
    for lambda in 1..p {
        out.push(HomPoly::from_ints(field, 0, &[lambda as i64, 1]));
    }
    out
}

fn assert_within_interval(phi: &[HomPoly], psi: &[HomPoly], n: usize, sums: &DegreeSums) {
    match sums {
        DegreeSums::NoChain => {}
        DegreeSums::Finite(set) => {
            for &x in set {
                assert!(
                    closed_field_interval_ok(phi, psi, n, x as i128),
                    "sum {x} escapes the interval"
                );
            }
        }
        DegreeSums::UnboundedFrom(b) => {
            for k in 0..10 {
                assert!(closed_field_interval_ok(phi, psi, n, (*b + k) as i128));
            }
        }
    }
}

#[test]
fn degree_sums_respect_the_closed_field_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for trial in 0..500usize {
        let field = if trial % 2 == 0 { gf(2) } else { gf(5) };
        let mut factors = linear_factors(field);
        let split_only = trial % 4 < 2;
        if !split_only {
            // An irreducible quadratic keeps the factor degrees from
            // filling every gap, so only containment is guaranteed.
            let quad = if field == gf(2) {
                HomPoly::from_ints(field, 0, &[1, 1, 1])
            } else {
                HomPoly::from_ints(field, 0, &[2, 0, 1])
            };
            factors.push(quad);
        }

        let n = rng.gen_range(0..=3usize);
        let (phi, psi);
        if trial % 8 < 4 {
            // Nested construction: psi extends phi's chain by one entry, so
            // every link is feasible.
            let master = random_chain(field, n + 1, &factors, rng.gen_range(0..=5), &mut rng);
            phi = master[..n].to_vec();
            psi = master;
        } else {
            // Independent chains: links may be infeasible.
            phi = random_chain(field, n, &factors, rng.gen_range(0..=4), &mut rng);
            psi = random_chain(
                field,
                n + rng.gen_range(0..=1),
                &factors,
                rng.gen_range(0..=4),
                &mut rng,
            );
        }

        let sums = pi_chain_degree_sums(&phi, &psi, n, 0);
        assert_within_interval(&phi, &psi, n, &sums);

        // With only degree-one factors in play, the achievable sums fill
        // the whole interval.
        if split_only {
            match &sums {
                DegreeSums::NoChain => {}
                DegreeSums::Finite(set) => {
                    let lo = *set.first().unwrap() as i128;
                    let hi = *set.last().unwrap() as i128;
                    let full: BTreeSet<u64> = (lo..=hi).map(|x| x as u64).collect();
                    assert_eq!(set, &full, "gap in achievable sums");
                    assert!(!closed_field_interval_ok(&phi, &psi, n, lo - 1));
                    assert!(!closed_field_interval_ok(&phi, &psi, n, hi + 1));
                }
                DegreeSums::UnboundedFrom(b) => {
                    assert!(!closed_field_interval_ok(&phi, &psi, n, *b as i128 - 1));
                }
            }
        }
    }
}

#[test]
fn decision_is_invariant_under_strict_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    for draw in 0..200usize {
        let field = field_by_index(draw % 3);
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let a = random_pencil(field, rows, cols, &mut rng);
        let b = random_pencil(field, rows, cols, &mut rng);
        let base = decide(&a, &b, 0).unwrap();
        let a2 = a.random_equivalent(rng.gen());
        let b2 = b.random_equivalent(rng.gen());
        assert_eq!(
            decide(&a2, &b2, 0).unwrap(),
            base,
            "a={a:?}, b={b:?}"
        );
    }
}

#[test]
fn decision_is_symmetric_under_transposition() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for draw in 0..500usize {
        let field = if draw % 2 == 0 { gf(2) } else { gf(3) };
        let rows = rng.gen_range(1..=3);
        let cols = rng.gen_range(1..=3);
        let a = random_pencil(field, rows, cols, &mut rng);
        let b = random_pencil(field, rows, cols, &mut rng);
        let direct = decide(&a, &b, 0).unwrap();
        let transposed = decide(&a.transpose(), &b.transpose(), 0).unwrap();
        assert_eq!(direct.exists, transposed.exists, "a={a:?}, b={b:?}");
    }
}

#[test]
fn witnesses_returned_by_the_search_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(37);
    let mut found = 0usize;
    for draw in 0..300usize {
        let (field, rows, cols) = match draw % 3 {
            0 => (gf(2), 2, 2),
            1 => (gf(2), 1, 2),
            _ => (gf(3), 2, 1),
        };
        let a = random_pencil(field, rows, cols, &mut rng);
        let b = random_pencil(field, rows, cols, &mut rng);
        let (exists, witness) = brute_force_decide(&a, &b).unwrap();
        match witness {
            Some(w) => {
                assert!(exists);
                assert_eq!(w.kronecker_invariants().rank(), 1);
                let moved = a.add(&w).unwrap();
                assert!(moved.strictly_equivalent(&b).unwrap(), "a={a:?}, w={w:?}");
                found += 1;
            }
            None => assert!(!exists),
        }
    }
    assert!(found > 50, "witness search found only {found} positives");
}
