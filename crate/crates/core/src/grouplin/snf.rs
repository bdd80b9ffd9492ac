//! Diagonalization of relation matrices over `Z/E`, used to present
//! quotients as direct sums of cyclic groups.

use super::arith::{gcd, mul_mod, reduce_i128, xgcd};
use super::howell::eliminate_into;

/// Result of `P * rels * Q = diag`: only the column transform is tracked.
pub(crate) struct Diagonal {
    /// Orders `gcd(d_k, E)` of the cyclic factors, one per column.
    pub orders: Vec<u64>,
    pub q: Vec<Vec<u64>>,
    pub q_inv: Vec<Vec<u64>>,
}

fn identity(t: usize) -> Vec<Vec<u64>> {
    (0..t)
        .map(|i| (0..t).map(|j| u64::from(i == j)).collect())
        .collect()
}

/// Column operation `col_k, col_j <- s col_k + t col_j, u col_k + v col_j`.
fn column_op(a: &mut [Vec<u64>], k: usize, j: usize, [s, t, u, v]: [u64; 4], n: u64) {
    for row in a.iter_mut() {
        let (x, y) = (row[k], row[j]);
        if x == 0 && y == 0 {
            continue;
        }
        row[k] = ((mul_mod(s, x, n) as u128 + mul_mod(t, y, n) as u128) % n as u128) as u64;
        row[j] = ((mul_mod(u, x, n) as u128 + mul_mod(v, y, n) as u128) % n as u128) as u64;
    }
}

/// Row operation `row_k, row_j <- s row_k + t row_j, u row_k + v row_j`.
fn row_op(a: &mut [Vec<u64>], k: usize, j: usize, [s, t, u, v]: [u64; 4], n: u64) {
    for c in 0..a[k].len() {
        let (x, y) = (a[k][c], a[j][c]);
        if x == 0 && y == 0 {
            continue;
        }
        a[k][c] = ((mul_mod(s, x, n) as u128 + mul_mod(t, y, n) as u128) % n as u128) as u64;
        a[j][c] = ((mul_mod(u, x, n) as u128 + mul_mod(v, y, n) as u128) % n as u128) as u64;
    }
}

fn swap_columns(a: &mut [Vec<u64>], i: usize, j: usize) {
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

pub(crate) fn diagonalize(mut rels: Vec<Vec<u64>>, ncols: usize, n: u64) -> Diagonal {
    let t = ncols;
    let mut q = identity(t);
    let mut q_inv = identity(t);
    if n == 1 {
        return Diagonal { orders: vec![1; t], q, q_inv };
    }
    rels.retain(|row| row.iter().any(|&x| x != 0));
    let mut diag = vec![0u64; t];
    for k in 0..t.min(rels.len()) {
        // Pivot: entry with the smallest gcd against n, first in row-major order.
        let mut best: Option<(u64, usize, usize)> = None;
        for (i, row) in rels.iter().enumerate().skip(k) {
            for (j, &x) in row.iter().enumerate().skip(k) {
                if x != 0 {
                    let g = gcd(x, n);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        rels.swap(k, pi);
        if pj != k {
            swap_columns(&mut rels, k, pj);
            swap_columns(&mut q, k, pj);
            q_inv.swap(k, pj);
        }
        // The integer pivot strictly decreases until row and column are clear.
        loop {
            for i in k + 1..rels.len() {
                eliminate_into(&mut rels, k, i, k, n);
            }
            for j in k + 1..t {
                let (a, b) = (rels[k][k], rels[k][j]);
                if b == 0 {
                    continue;
                }
                let (s, tt, u, v, is, it, iu, iv) = if b % a == 0 {
                    // col_j -= (b/a) col_k; inverse adds (b/a) row_j to row_k.
                    let m = b / a;
                    (1, 0, n - m % n, 1, 1, m % n, 0, 1)
                } else {
                    let (g, s, tt) = xgcd(a as i128, b as i128);
                    let (u, v) = (-(b as i128 / g), a as i128 / g);
                    let r = |c: i128| reduce_i128(c, n);
                    (r(s), r(tt), r(u), r(v), r(v), r(-u), r(-tt), r(s))
                };
                // Columns: new col_k = s col_k + t col_j, new col_j = u col_k + v col_j.
                column_op(&mut rels, k, j, [s, tt, u, v], n);
                column_op(&mut q, k, j, [s, tt, u, v], n);
                // q_inv <- C^{-1} q_inv where C = [[s, u], [t, v]].
                row_op(&mut q_inv, k, j, [is, it, iu, iv], n);
            }
            if (k + 1..rels.len()).all(|i| rels[i][k] == 0) {
                break;
            }
        }
        if k < rels.len() {
            diag[k] = rels[k][k];
        }
    }
    let orders = diag.iter().map(|&d| gcd(d, n)).collect();
    Diagonal { orders, q, q_inv }
}
