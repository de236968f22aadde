//! Smith normal form of a polynomial matrix by elementary row and column
//! operations, returning the monic invariant-factor chain.
//!
//! The pivot strategy picks a nonzero entry of minimal degree (over Q, ties
//! break toward the entry with the smallest coefficients, which keeps
//! numerators and denominators from ballooning). Each reduction pass divides
//! the pivot's row and column with remainder; a nonzero remainder becomes the
//! new pivot, strictly decreasing its degree, so the loop terminates. A final
//! fix-up pass restores the divisibility of the remaining submatrix by the
//! pivot before moving on, which is what makes the diagonal a chain.

use crate::polyalg::UniPoly;

/// Degree with zero mapped below everything, plus the coefficient-size
/// tie-break used over Q.
fn pivot_weight(p: &UniPoly) -> (usize, u64) {
    let deg = p.degree().expect("pivot candidates are nonzero");
    let height = p.coeffs().iter().map(|c| c.height()).max().unwrap_or(0);
    (deg, height)
}

fn find_pivot(m: &[Vec<UniPoly>], from: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, u64), (usize, usize))> = None;
    for (i, row) in m.iter().enumerate().skip(from) {
        for (j, entry) in row.iter().enumerate().skip(from) {
            if entry.is_zero() {
                continue;
            }
            let w = pivot_weight(entry);
            if best.as_ref().map_or(true, |(bw, _)| w < *bw) {
                best = Some((w, (i, j)));
            }
        }
    }
    best.map(|(_, pos)| pos)
}

/// Monic invariant factors `f_1 | f_2 | … | f_n` of a matrix over `F[x]`;
/// the chain length is the rank over the fraction field.
pub(crate) fn smith_chain(mut m: Vec<Vec<UniPoly>>) -> Vec<UniPoly> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut chain: Vec<UniPoly> = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = find_pivot(&m, t) else {
            break;
        };
        m.swap(t, pi);
        if pj != t {
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
        }
        'reduce: loop {
            // Clear the pivot column; a nonzero remainder has smaller degree
            // than the pivot and takes its place.
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let (q, r) = m[i][t].divrem(&m[t][t]).expect("pivot is nonzero");
                for j in t..cols {
                    let sub = q.mul(&m[t][j]);
                    m[i][j] = m[i][j].sub(&sub);
                }
                if !r.is_zero() {
                    m.swap(t, i);
                    continue 'reduce;
                }
            }
            // Clear the pivot row; below the pivot the column is already
            // zero, so these column operations touch row t only.
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let (q, r) = m[t][j].divrem(&m[t][t]).expect("pivot is nonzero");
                for i in t..rows {
                    let sub = q.mul(&m[i][t]);
                    m[i][j] = m[i][j].sub(&sub);
                }
                if !r.is_zero() {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    continue 'reduce;
                }
            }
            // Divisibility fix-up: drag a non-divisible entry into the pivot
            // row, where the next pass must shrink the pivot degree.
            for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[t][t].divides(&m[i][j]) {
                        for col in t..cols {
                            let add = m[i][col].clone();
                            m[t][col] = m[t][col].add(&add);
                        }
                        continue 'reduce;
                    }
                }
            }
            break;
        }
        chain.push(m[t][t].monic());
        t += 1;
    }
    debug_assert!(
        chain.windows(2).all(|w| w[0].divides(&w[1])),
        "invariant factors must form a divisibility chain"
    );
    chain
}
