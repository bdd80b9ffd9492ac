//! Howell normal form of row spans over `Z/N`.

use super::arith::{mul_mod, normalizing_unit, reduce_i128, sub_mod, xgcd};

/// Rows of a Howell form together with their pivot columns.
///
/// Pivots divide the modulus, entries above a pivot are reduced below it,
/// and every span element whose first `j` entries vanish is a combination of
/// the rows pivoting after column `j`. These conditions make the form unique.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Howell {
    pub modulus: u64,
    pub ncols: usize,
    pub rows: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

/// `rows[i] -= q * rows[r]`.
fn sub_multiple(rows: &mut [Vec<u64>], i: usize, r: usize, q: u64, n: u64, from: usize) {
    debug_assert_ne!(i, r);
    let (src, dst) = if i < r {
        let (lo, hi) = rows.split_at_mut(r);
        (&hi[0], &mut lo[i])
    } else {
        let (lo, hi) = rows.split_at_mut(i);
        (&lo[r], &mut hi[0])
    };
    for c in from..src.len() {
        if src[c] != 0 {
            dst[c] = sub_mod(dst[c], mul_mod(q, src[c], n), n);
        }
    }
}

/// Replaces rows `r`, `i` by `s*r + t*i` and `u*r + v*i` (a unimodular step).
fn combine(rows: &mut [Vec<u64>], r: usize, i: usize, coeffs: [i128; 4], n: u64, from: usize) {
    let [s, t, u, v] = coeffs.map(|c| reduce_i128(c, n));
    let (lo, hi) = rows.split_at_mut(i);
    let (a, b) = (&mut lo[r], &mut hi[0]);
    for c in from..a.len() {
        let (x, y) = (a[c], b[c]);
        if x == 0 && y == 0 {
            continue;
        }
        a[c] = ((mul_mod(s, x, n) as u128 + mul_mod(t, y, n) as u128) % n as u128) as u64;
        b[c] = ((mul_mod(u, x, n) as u128 + mul_mod(v, y, n) as u128) % n as u128) as u64;
    }
}

/// Eliminates column `col` of row `i` against row `r` (`r < i`), leaving the
/// gcd in row `r`.
pub(crate) fn eliminate_into(rows: &mut [Vec<u64>], r: usize, i: usize, col: usize, n: u64) {
    let (a, b) = (rows[r][col], rows[i][col]);
    if b == 0 {
        return;
    }
    if a != 0 && b % a == 0 {
        sub_multiple(rows, i, r, b / a, n, col);
        return;
    }
    let (g, s, t) = xgcd(a as i128, b as i128);
    combine(rows, r, i, [s, t, -(b as i128 / g), a as i128 / g], n, col);
}

impl Howell {
    pub fn new(mut rows: Vec<Vec<u64>>, ncols: usize, n: u64) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == ncols));
        if n == 1 {
            return Howell { modulus: 1, ncols, rows: Vec::new(), pivots: Vec::new() };
        }
        rows.retain(|row| row.iter().any(|&x| x != 0));
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, p);
            for i in r + 1..rows.len() {
                eliminate_into(&mut rows, r, i, col, n);
            }
            let unit = normalizing_unit(rows[r][col], n);
            if unit != 1 {
                for x in rows[r][col..].iter_mut() {
                    *x = mul_mod(*x, unit, n);
                }
            }
            let pivot = rows[r][col];
            debug_assert_eq!(n % pivot, 0);
            for i in 0..r {
                let q = rows[i][col] / pivot;
                if q != 0 {
                    sub_multiple(&mut rows, i, r, q, n, col);
                }
            }
            let ann = n / pivot;
            if ann != 1 {
                let extra: Vec<u64> = rows[r].iter().map(|&x| mul_mod(x, ann, n)).collect();
                if extra.iter().any(|&x| x != 0) {
                    rows.push(extra);
                }
            }
            pivots.push(col);
            r += 1;
        }
        debug_assert!(rows[r..].iter().all(|row| row.iter().all(|&x| x == 0)));
        rows.truncate(r);
        Howell { modulus: n, ncols, rows, pivots }
    }

    /// Reduces `v` by the rows whose index lies in `range`, returning the
    /// multipliers used; stops at the first pivot that does not divide.
    pub fn reduce_by(&self, v: &mut [u64], range: std::ops::Range<usize>) -> Vec<u64> {
        let n = self.modulus;
        let mut quotients = vec![0; self.rows.len()];
        for k in range {
            let col = self.pivots[k];
            let p = self.rows[k][col];
            let x = v[col];
            if !x.is_multiple_of(p) {
                break;
            }
            let q = x / p;
            if q == 0 {
                continue;
            }
            quotients[k] = q;
            for (c, &y) in self.rows[k].iter().enumerate().skip(col) {
                if y != 0 {
                    v[c] = sub_mod(v[c], mul_mod(q, y, n), n);
                }
            }
        }
        quotients
    }

    /// Multipliers expressing `v` over the rows, if `v` lies in their span.
    pub fn decompose(&self, v: &[u64]) -> Option<Vec<u64>> {
        let mut w = v.to_vec();
        let q = self.reduce_by(&mut w, 0..self.rows.len());
        w.iter().all(|&x| x == 0).then_some(q)
    }
}
