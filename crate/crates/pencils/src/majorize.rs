//! Partition combinatorics used by the completion and perturbation layers.
//!
//! The central notion is *generalized majorization* between nonincreasing
//! integer sequences, together with its one-extra-entry specialization
//! ("1-step" majorization). Besides the two predicates, this module provides
//! constructive solvers that build partitions with a prescribed sum that are
//! majorized by (or majorize) given partitions, plus the index bookkeeping
//! (`ell_f_fprime`) those constructions depend on.
//!
//! Conventions: partitions are nonincreasing sequences of nonnegative
//! integers, indexed from 1 in the mathematical statements. Out-of-range
//! entries are read through [`Partition::get_ext`], which returns `+∞` below
//! index 1 and `−∞` above the length; most boundary cases of the definitions
//! reduce to comparisons against those sentinels.

use crate::error::Error;

/// Integer extended with `±∞`, ordered `NegInf < Int(_) < PosInf`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Int(i64),
    PosInf,
}

/// A nonincreasing sequence of nonnegative integers (possibly empty).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u64>,
}

impl Partition {
    /// Validates that `parts` is nonincreasing.
    pub fn new(parts: Vec<u64>) -> Result<Self, Error> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition);
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn sum(&self) -> u64 {
        self.parts.iter().sum()
    }

    /// 1-based entry access with the out-of-range conventions: `+∞` for
    /// `i < 1` and `−∞` for `i > len`.
    pub fn get_ext(&self, i: i64) -> ExtInt {
        if i < 1 {
            ExtInt::PosInf
        } else if i as usize > self.parts.len() {
            ExtInt::NegInf
        } else {
            ExtInt::Int(self.parts[i as usize - 1] as i64)
        }
    }

    /// Number of strictly positive entries.
    pub fn positive_count(&self) -> usize {
        self.parts.iter().filter(|&&x| x > 0).count()
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Generalized majorization `g ≺′ (d, a)` between a partition `g` of length
/// `m + s`, a partition `d` of length `m`, and a nonincreasing integer
/// sequence `a` of length `s` (entries may be negative).
///
/// Holds when all three conditions are satisfied:
/// 1. `d_i ≥ g_{i+s}` for `1 ≤ i ≤ m`;
/// 2. for each `1 ≤ j ≤ s`, with `h_j = min{i : d_{i−j+1} < g_i}`,
///    `Σ_{i≤h_j} g_i − Σ_{i≤h_j−j} d_i ≤ Σ_{i≤j} a_i`;
/// 3. `Σ g = Σ d + Σ a`.
///
/// With `s = 0` this degenerates to `g = d`.
pub fn gen_majorized(g: &Partition, d: &Partition, a: &[i64]) -> Result<bool, Error> {
    let m = d.len();
    let s = a.len();
    if g.len() != m + s {
        return Err(Error::LengthMismatch);
    }
    debug_assert!(a.windows(2).all(|w| w[0] >= w[1]), "a must be nonincreasing");

    for i in 1..=m {
        if d.get_ext(i as i64) < g.get_ext((i + s) as i64) {
            return Ok(false);
        }
    }

    let sum_g = g.sum() as i128;
    let sum_d = d.sum() as i128;
    let sum_a: i128 = a.iter().map(|&x| x as i128).sum();
    if sum_g != sum_d + sum_a {
        return Ok(false);
    }

    let mut a_prefix: i128 = 0;
    for j in 1..=s {
        a_prefix += a[j - 1] as i128;
        // h_j exists: at i = m + j the d-entry reads as −∞.
        let h = (1..=m + s)
            .find(|&i| d.get_ext(i as i64 - j as i64 + 1) < g.get_ext(i as i64))
            .expect("entries above the length of d read as negative infinity");
        let g_prefix: i128 = g.parts()[..h].iter().map(|&x| x as i128).sum();
        let d_prefix: i128 = d.parts()[..h - j].iter().map(|&x| x as i128).sum();
        if g_prefix - d_prefix > a_prefix {
            return Ok(false);
        }
    }
    Ok(true)
}

/// 1-step majorization `g ≺′ d` for `g` of length `m + 1` and `d` of length
/// `m`: with `h = min{i : d_i < g_i}`, requires `d_i = g_{i+1}` for all
/// `h ≤ i ≤ m`. Equivalent to `gen_majorized(g, d, [Σg − Σd])`.
pub fn one_step_majorized(g: &Partition, d: &Partition) -> Result<bool, Error> {
    let m = d.len();
    if g.len() != m + 1 {
        return Err(Error::LengthMismatch);
    }
    let h = (1..=m)
        .find(|&i| d.get_ext(i as i64) < g.get_ext(i as i64))
        .unwrap_or(m + 1);
    for i in h..=m {
        if d.get_ext(i as i64) != g.get_ext(i as i64 + 1) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the partition `g` of length `m + 1` with `Σ g = S` and `g ≺′ a`.
/// Such a partition exists for every `S ≥ 0`; this returns the canonical one:
/// pick the least `k` with `S ≥ Σ_{j=k}^m a_j + k·a_k` (always `k = m + 1`
/// works), split `S′ = S − Σ_{j=k}^m a_j` as `kq + r`, and emit `r` copies of
/// `q + 1`, then `k − r` copies of `q`, then `a_k, …, a_m`.
pub fn build_g_with_sum(s: u64, a: &Partition) -> Partition {
    let m = a.len();
    let s = s as i128;
    let mut suffix: i128 = a.parts().iter().map(|&x| x as i128).sum();
    let mut k = m + 1;
    let mut s_prime = s;
    for i in 1..=m {
        let ai = a.parts()[i - 1] as i128;
        if s >= suffix + i as i128 * ai {
            k = i;
            s_prime = s - suffix;
            break;
        }
        suffix -= ai;
    }
    let q = (s_prime / k as i128) as u64;
    let r = (s_prime % k as i128) as usize;
    let mut g = Vec::with_capacity(m + 1);
    g.extend(std::iter::repeat(q + 1).take(r));
    g.extend(std::iter::repeat(q).take(k - r));
    g.extend_from_slice(&a.parts()[k.min(m + 1) - 1..]);
    Partition::new(g).expect("construction yields a nonincreasing sequence")
}

/// Builds a partition `e` of length `m − 1` with `Σ e = E` and `a ≺′ e`, or
/// returns `None` when no such partition exists. Feasibility:
/// `E = Σ_{i≥2} a_i`, or — only meaningful when `m ≥ 2` — `E ≥ a_1 + Σ_{i≥3} a_i`
/// (a length-0 result forces `E = 0`, so the second branch is vacuous at
/// `m = 1`). The witness is `e_1 = E − Σ_{i≥3} a_i`, `e_i = a_{i+1}` for
/// `i ≥ 2`.
pub fn build_e_with_sum(e_sum: u64, a: &Partition) -> Option<Partition> {
    let m = a.len();
    if m == 0 {
        return None;
    }
    let e = e_sum as i128;
    let tail2: i128 = a.parts()[1..].iter().map(|&x| x as i128).sum();
    let tail3: i128 = a.parts()[2.min(m)..].iter().map(|&x| x as i128).sum();
    let feasible = e == tail2 || (m >= 2 && e >= a.parts()[0] as i128 + tail3);
    if !feasible {
        return None;
    }
    let mut parts = Vec::with_capacity(m - 1);
    if m >= 2 {
        parts.push((e - tail3) as u64);
        parts.extend_from_slice(&a.parts()[2..]);
    }
    Some(Partition::new(parts).expect("construction yields a nonincreasing sequence"))
}

/// The three indices attached to a pair of distinct equal-length partitions:
/// `ℓ = max{i : c_i ≠ d_i}`, `f = max{i ≤ ℓ : c_i < d_{i−1}}` and
/// `f′ = max{i ≤ ℓ : d_i < c_{i−1}}` (with `d_0 = c_0 = +∞`, so `f, f′ ≥ 1`).
pub fn ell_f_fprime(c: &Partition, d: &Partition) -> Result<(usize, usize, usize), Error> {
    if c.len() != d.len() {
        return Err(Error::LengthMismatch);
    }
    if c == d {
        return Err(Error::EqualPartitions);
    }
    let m = c.len();
    let ell = (1..=m)
        .rev()
        .find(|&i| c.get_ext(i as i64) != d.get_ext(i as i64))
        .expect("partitions differ somewhere");
    let f = (1..=ell)
        .rev()
        .find(|&i| c.get_ext(i as i64) < d.get_ext(i as i64 - 1))
        .expect("index 1 qualifies because d_0 = +infinity");
    let fp = (1..=ell)
        .rev()
        .find(|&i| d.get_ext(i as i64) < c.get_ext(i as i64 - 1))
        .expect("index 1 qualifies because c_0 = +infinity");
    Ok((ell, f, fp))
}

/// Builds a partition `g` of length `m + 1` with `Σ g = S`, `g ≺′ c` and
/// `g ≺′ d` for distinct equal-length partitions `c ≠ d`, or returns `None`
/// when infeasible. Feasible exactly when
/// `S ≤ Σ min{c_i, d_i} + max{c_f, d_{f′}}`.
///
/// The witness follows the constructive existence proof. Orient the pair so
/// that the larger entry at position `ℓ` plays the first role — write
/// `(cc, dd, ff)` for `(c, d, f)` or `(d, c, f′)` accordingly. Then:
/// * if `S < Σ_{i<ff} min{c_i, d_i}`: take the longest prefix of the
///   pointwise minima not exceeding `S`, one remainder entry, then zeros;
/// * otherwise: the minima for `i < ff` followed by
///   `build_g_with_sum(S − Σ_{i<ff} min, (dd_ff, …, dd_m))`.
pub fn simultaneous_g(s: u64, c: &Partition, d: &Partition) -> Result<Option<Partition>, Error> {
    let (_, f, fp) = ell_f_fprime(c, d)?;
    let m = c.len();
    let mins: Vec<u64> = c
        .parts()
        .iter()
        .zip(d.parts())
        .map(|(&ci, &di)| ci.min(di))
        .collect();
    let min_sum: i128 = mins.iter().map(|&x| x as i128).sum();
    let cap = c.parts()[f - 1].max(d.parts()[fp - 1]) as i128;
    if s as i128 > min_sum + cap {
        return Ok(None);
    }

    let ell = (1..=m)
        .rev()
        .find(|&i| c.parts()[i - 1] != d.parts()[i - 1])
        .expect("partitions differ somewhere");
    let (dd, ff) = if c.parts()[ell - 1] > d.parts()[ell - 1] {
        (d, f)
    } else {
        (c, fp)
    };

    let prefix_sum: u64 = mins[..ff - 1].iter().sum();
    let g = if s < prefix_sum {
        let mut parts = Vec::with_capacity(m + 1);
        let mut acc = 0u64;
        for &mi in &mins[..ff - 1] {
            if s < acc + mi {
                parts.push(s - acc);
                break;
            }
            parts.push(mi);
            acc += mi;
        }
        parts.resize(m + 1, 0);
        parts
    } else {
        let tail = Partition::new(dd.parts()[ff - 1..].to_vec())
            .expect("slice of a partition is a partition");
        let gbar = build_g_with_sum(s - prefix_sum, &tail);
        let mut parts = Vec::with_capacity(m + 1);
        parts.extend_from_slice(&mins[..ff - 1]);
        parts.extend_from_slice(gbar.parts());
        parts
    };
    Ok(Some(
        Partition::new(g).expect("construction yields a nonincreasing sequence"),
    ))
}

/// Decides whether a partition `e` of length `m − 1` with `Σ e = E`,
/// `c ≺′ e` and `d ≺′ e` exists, for distinct equal-length partitions.
///
/// When `f > 1` and `f′ > 1` the criterion is
/// `E ≥ Σ max{c_i, d_i} − max{c_f, d_{f′}}`; otherwise it is the disjunction
/// `E = Σ_{i≥2} max{c_i, d_i}` or — only meaningful when `m ≥ 2` —
/// `E ≥ max{c_1, d_1} + Σ_{i≥3} max{c_i, d_i}`.
pub fn simultaneous_e_exists(e_sum: u64, c: &Partition, d: &Partition) -> Result<bool, Error> {
    let (_, f, fp) = ell_f_fprime(c, d)?;
    let m = c.len();
    let maxes: Vec<i128> = c
        .parts()
        .iter()
        .zip(d.parts())
        .map(|(&ci, &di)| ci.max(di) as i128)
        .collect();
    let e = e_sum as i128;
    if f > 1 && fp > 1 {
        let max_sum: i128 = maxes.iter().sum();
        let cap = (c.parts()[f - 1].max(d.parts()[fp - 1])) as i128;
        Ok(e >= max_sum - cap)
    } else {
        let tail2: i128 = maxes[1..].iter().sum();
        let tail3: i128 = maxes[2.min(m)..].iter().sum();
        Ok(e == tail2 || (m >= 2 && e >= maxes[0] + tail3))
    }
}

/// Counting bound relating a partition to one that 1-step majorizes it: when
/// `a ≺′ e` and `Σ e ≤ Σ a`, the number of positive entries of `a` is at
/// least that of `e`. Returns `true` vacuously when the preconditions fail.
pub fn cardinality_lemma_holds(a: &Partition, e: &Partition) -> bool {
    if a.len() != e.len() + 1 {
        return true;
    }
    if !one_step_majorized(a, e).unwrap_or(false) {
        return true;
    }
    if e.sum() > a.sum() {
        return true;
    }
    a.positive_count() >= e.positive_count()
}
