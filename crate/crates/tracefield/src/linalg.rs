//! Exact linear algebra over Q: fraction-free elimination, canonical
//! reduced echelon bases, membership solves, and small integer HNF for
//! lattices of algebraic integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Clears denominators of a row, returning integer content with a primitive
/// normalization (gcd 1, first nonzero positive would lose sign info; keep sign).
fn integerize(row: &[Rational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for r in row {
        lcm = lcm.lcm(r.denom());
    }
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|r| r.numer() * (&lcm / r.denom()))
        .collect();
    let mut g = BigInt::zero();
    for v in &out {
        g = g.gcd(v);
    }
    if !g.is_zero() && !g.is_one() {
        for v in &mut out {
            *v = &*v / &g;
        }
    }
    out
}

/// Reduced row-echelon form over Q. The forward pass is fraction-free
/// (Bareiss two-term updates, eliminating below the pivot only, where the
/// division by the previous pivot is exact); back-substitution then runs in
/// rationals. The output is the canonical RREF basis of the row space:
/// pivots are 1, pivot columns cleared, rows ordered by pivot column. Two
/// row sets span the same subspace iff their RREFs are equal.
pub fn rref(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows: Vec<Vec<BigInt>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| integerize(r))
        .collect();
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut m = rows;
    let mut prev_pivot = BigInt::one();
    let mut pivot_row = 0usize;
    let mut pivot_cols = vec![];
    for col in 0..ncols {
        let Some(best) = (pivot_row..m.len())
            .filter(|&i| !m[i][col].is_zero())
            .min_by_key(|&i| m[i][col].abs())
        else {
            continue;
        };
        m.swap(pivot_row, best);
        let pivot = m[pivot_row][col].clone();
        for i in pivot_row + 1..m.len() {
            let factor = m[i][col].clone();
            for j in 0..ncols {
                let v = &pivot * &m[i][j] - &factor * &m[pivot_row][j];
                m[i][j] = &v / &prev_pivot;
            }
        }
        prev_pivot = pivot;
        pivot_cols.push(col);
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_cols.len());
    // normalize pivots to 1 and clear pivot columns upward, in rationals
    let mut out: Vec<Vec<Rational>> = m
        .iter()
        .zip(&pivot_cols)
        .map(|(row, &pc)| {
            let p = Rational::from_integer(row[pc].clone());
            row.iter()
                .map(|v| Rational::from_integer(v.clone()) / p.clone())
                .collect()
        })
        .collect();
    for k in (0..out.len()).rev() {
        let pc = pivot_cols[k];
        for i in 0..k {
            let f = out[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            let row_k = out[k].clone();
            for j in 0..ncols {
                let delta = &f * &row_k[j];
                out[i][j] -= delta;
            }
        }
    }
    out
}

/// Pivot columns of an RREF basis (first nonzero entry of each row).
fn pivot_columns(basis: &[Vec<Rational>]) -> Vec<usize> {
    basis
        .iter()
        .map(|r| r.iter().position(|v| !v.is_zero()).unwrap_or(0))
        .collect()
}

/// Expresses `target` over an RREF `basis`, if it lies in the span.
pub fn solve_in_span(basis: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let pivots = pivot_columns(basis);
    let mut residual = target.to_vec();
    let mut coords = vec![Rational::zero(); basis.len()];
    for (k, row) in basis.iter().enumerate() {
        let c = residual[pivots[k]].clone();
        if !c.is_zero() {
            for (j, v) in row.iter().enumerate() {
                residual[j] -= &c * v;
            }
        }
        coords[k] = c;
    }
    if residual.iter().all(|v| v.is_zero()) {
        Some(coords)
    } else {
        None
    }
}

pub fn in_span(basis: &[Vec<Rational>], target: &[Rational]) -> bool {
    solve_in_span(basis, target).is_some()
}

/// Solves the square rational system A x = b by fraction-free elimination.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, pivot);
        let p = aug[col][col].clone();
        for j in 0..=n {
            aug[col][j] = &aug[col][j] / &p;
        }
        for i in 0..n {
            if i != col && !aug[i][col].is_zero() {
                let f = aug[i][col].clone();
                for j in 0..=n {
                    let delta = &f * &aug[col][j];
                    aug[i][j] -= delta;
                }
            }
        }
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

/// Characteristic polynomial of a square rational matrix, by the
/// Faddeev-LeVerrier recursion. Returned monic, low-degree-first.
pub fn char_poly(a: &[Vec<Rational>]) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); n]; n]; // M_0 = 0
    let mut c = Rational::one();
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut am = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for l in 0..n {
                    s += &a[i][l] * &m[l][j];
                }
                am[i][j] = s;
            }
        }
        for i in 0..n {
            am[i][i] += &c;
        }
        m = am;
        // c_{n-k} = -tr(A M_k)/k
        let mut tr = Rational::zero();
        for i in 0..n {
            for l in 0..n {
                tr += &a[i][l] * &m[l][i];
            }
        }
        c = -tr / Rational::from_integer(BigInt::from(k));
        coeffs[n - k] = c.clone();
    }
    coeffs
}

/// Hermite normal form basis of the lattice spanned by the given rational
/// rows (as a Z-module). Rows need not be independent. The result is the
/// canonical upper-triangular-style basis, deterministic across runs.
pub fn lattice_hnf(rows: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let rows: Vec<&Vec<Rational>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
    if rows.is_empty() {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut scale = BigInt::one();
    for r in &rows {
        for v in r.iter() {
            scale = scale.lcm(v.denom());
        }
    }
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|v| v.numer() * (&scale / v.denom())).collect())
        .collect();
    let mut row = 0usize;
    for col in 0..ncols {
        loop {
            let mut best: Option<usize> = None;
            for i in row..m.len() {
                if !m[i][col].is_zero() {
                    match best {
                        None => best = Some(i),
                        Some(b) => {
                            if m[i][col].abs() < m[b][col].abs() {
                                best = Some(i)
                            }
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            m.swap(row, b);
            let mut done = true;
            for i in row + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = div_round(&m[i][col], &m[row][col]);
                for j in 0..ncols {
                    let delta = &q * &m[row][j];
                    m[i][j] -= delta;
                }
                if !m[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if row < m.len() && !m[row][col].is_zero() {
            if m[row][col].is_negative() {
                for j in 0..ncols {
                    m[row][j] = -m[row][j].clone();
                }
            }
            // reduce entries above the pivot
            for i in 0..row {
                let q = m[i][col].div_floor(&m[row][col]);
                if !q.is_zero() {
                    for j in 0..ncols {
                        let delta = &q * &m[row][j];
                        m[i][j] -= delta;
                    }
                }
            }
            row += 1;
        }
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    let scale_r = Rational::from_integer(scale);
    m.iter()
        .map(|r| {
            r.iter()
                .map(|v| Rational::from_integer(v.clone()) / scale_r.clone())
                .collect()
        })
        .collect()
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest-integer division keeps HNF coefficients small
    let (q, r) = a.div_rem(b);
    let two_r = BigInt::from(2) * r.abs();
    if two_r > b.abs() {
        if (a.is_negative()) != (b.is_negative()) {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}
