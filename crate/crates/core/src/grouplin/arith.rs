//! Word-sized modular arithmetic helpers.
//!
//! Every modulus handled by the crate is bounded by [`MAX_MODULUS`], so
//! products of two reduced residues fit in a `u128` and sums fit in a `u64`.

use num_integer::Integer;

/// Largest admissible modulus (group exponent).
pub const MAX_MODULUS: u64 = 1 << 62;

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

#[inline]
pub(crate) fn add_mod(a: u64, b: u64, n: u64) -> u64 {
    let s = a + b;
    if s >= n {
        s - n
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u64, b: u64, n: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + (n - b)
    }
}

#[inline]
pub(crate) fn neg_mod(a: u64, n: u64) -> u64 {
    if a == 0 {
        0
    } else {
        n - a
    }
}

/// Reduces a signed integer into `[0, n)`.
#[inline]
pub(crate) fn reduce_i128(a: i128, n: u64) -> u64 {
    a.rem_euclid(n as i128) as u64
}

#[inline]
pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// `lcm(a, b)`, or `None` once the result leaves the admissible range.
pub(crate) fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    let g = gcd(a, b);
    let l = (a / g).checked_mul(b)?;
    (l <= MAX_MODULUS).then_some(l)
}

/// Extended gcd on non-negative inputs: returns `(g, s, t)` with `s*a + t*b = g`.
pub(crate) fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
        (old_t, t) = (t, old_t - q * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

/// Inverse of `a` modulo `n` when `gcd(a, n) = 1`.
pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (g, s, _) = xgcd(a as i128, n as i128);
    (g == 1).then(|| reduce_i128(s, n))
}

/// A unit `u` of `Z/n` with `u * a = gcd(a, n)` in `Z/n`.
pub(crate) fn normalizing_unit(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let g = gcd(a, n);
    let (a1, n1) = (a / g, n / g);
    let u0 = inv_mod(a1 % n1, n1).expect("cofactors are coprime");
    let mut k: u128 = 0;
    loop {
        let u = ((u0 as u128 + k * n1 as u128) % n as u128) as u64;
        if gcd(u, n) == 1 {
            return u;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn xgcd_identity() {
        for a in 0..40i128 {
            for b in 0..40i128 {
                let (g, s, t) = xgcd(a, b);
                assert_eq!(s * a + t * b, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
    }

    #[test]
    fn normalizing_unit_hits_gcd() {
        for n in 1..60u64 {
            for a in 0..n {
                let u = normalizing_unit(a, n);
                assert_eq!(gcd(u, n), 1, "unit for a={a} n={n}");
                assert_eq!(mul_mod(u, a, n), gcd(a, n) % n);
            }
        }
    }

    #[test]
    fn lcm_bound() {
        assert_eq!(checked_lcm(4, 6), Some(12));
        assert_eq!(checked_lcm(MAX_MODULUS, 3), None);
    }
}
