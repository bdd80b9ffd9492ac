//! Small standard rings and modules: `Z/n`, matrix rings, truncated
//! polynomial rings, upper-triangular rings and their natural modules.

use std::sync::Arc;

use crate::grouplin::{mul_mod, Coords, GroupShape};
use crate::structures::{FiniteModule, FiniteRing};

/// `Z/n`.
pub fn zn(n: u64) -> FiniteRing {
    FiniteRing::from_orders(vec![n], vec![vec![vec![1 % n]]], vec![1 % n]).expect("Z/n is a ring")
}

/// `Z/d` as a module over `Z/n`, for `d | n`.
pub fn cyclic(ring: &Arc<FiniteRing>, d: u64) -> FiniteModule {
    assert_eq!(ring.rank(), 1);
    assert_eq!(ring.characteristic() % d, 0);
    FiniteModule::new(ring.clone(), GroupShape::new(vec![d]).expect("d > 0"), vec![vec![vec![1 % d]]]).expect("cyclic module")
}

/// `M_k(Z/n)` on the matrix units `E_ab`, indexed `a*k + b`.
pub fn matrix_ring(k: usize, n: u64) -> FiniteRing {
    let t = k * k;
    let unit = |idx: usize| {
        let mut v = vec![0; t];
        v[idx] = 1 % n;
        v
    };
    let mul = (0..t)
        .map(|i| {
            (0..t)
                .map(|j| {
                    let (a, b) = (i / k, i % k);
                    let (c, d) = (j / k, j % k);
                    if b == c {
                        unit(a * k + d)
                    } else {
                        vec![0; t]
                    }
                })
                .collect()
        })
        .collect();
    let mut one = vec![0; t];
    for a in 0..k {
        one[a * k + a] = 1 % n;
    }
    FiniteRing::from_orders(vec![n; t], mul, one).expect("matrix ring")
}

/// `(Z/n)^k` as column vectors over `M_k(Z/n)`.
pub fn column_module_of(ring: &Arc<FiniteRing>, k: usize, n: u64) -> FiniteModule {
    let action = (0..k * k)
        .map(|i| {
            let (a, b) = (i / k, i % k);
            (0..k)
                .map(|c| {
                    let mut v = vec![0; k];
                    if b == c {
                        v[a] = 1 % n;
                    }
                    v
                })
                .collect()
        })
        .collect();
    FiniteModule::new(ring.clone(), GroupShape::new(vec![n; k]).expect("n > 0"), action).expect("column module")
}

pub fn matrix_ring_f2() -> FiniteRing {
    matrix_ring(2, 2)
}

/// The simple module `F_2^2` over `M_2(F_2)`.
pub fn column_module(ring: &Arc<FiniteRing>) -> FiniteModule {
    column_module_of(ring, 2, 2)
}

/// The matrix unit `E_11` of `M_2`.
pub fn e11() -> Coords {
    vec![1, 0, 0, 0]
}

/// `Z/n[x]/(f)` for a monic `f = x^d + c_{d-1} x^{d-1} + ... + c_0`, given
/// as `[c_0, ..., c_{d-1}]`, on the basis `1, x, ..., x^{d-1}`.
pub fn polynomial_ring(n: u64, low_coeffs: &[u64]) -> FiniteRing {
    let d = low_coeffs.len();
    assert!(d >= 1);
    // x^m reduced, for m < 2d - 1.
    let mut powers: Vec<Coords> = Vec::new();
    for m in 0..2 * d - 1 {
        let v = if m < d {
            let mut v = vec![0; d];
            v[m] = 1 % n;
            v
        } else {
            let prev = &powers[m - 1];
            let top = prev[d - 1];
            let mut v = vec![0; d];
            for i in 1..d {
                v[i] = prev[i - 1];
            }
            for i in 0..d {
                let c = mul_mod(top, low_coeffs[i] % n, n);
                v[i] = (v[i] + n - c) % n;
            }
            v
        };
        powers.push(v);
    }
    let mul = (0..d).map(|i| (0..d).map(|j| powers[i + j].clone()).collect()).collect();
    let mut one = vec![0; d];
    one[0] = 1 % n;
    FiniteRing::from_orders(vec![n; d], mul, one).expect("polynomial quotient ring")
}

/// `F_2[x]/(x^2)`.
pub fn dual_numbers_f2() -> FiniteRing {
    polynomial_ring(2, &[0, 0])
}

/// `F_4 = F_2[x]/(x^2 + x + 1)`.
pub fn f4() -> FiniteRing {
    polynomial_ring(2, &[1, 1])
}

/// Upper-triangular `2x2` matrices over `Z/n` on `E_11, E_12, E_22`.
pub fn upper_triangular(n: u64) -> FiniteRing {
    let u = |i: usize| {
        let mut v = vec![0; 3];
        v[i] = 1 % n;
        v
    };
    let z = vec![0; 3];
    // E11 E11 = E11, E11 E12 = E12, E12 E22 = E12, E22 E22 = E22.
    let mul = vec![
        vec![u(0), u(1), z.clone()],
        vec![z.clone(), z.clone(), u(1)],
        vec![z.clone(), z.clone(), u(2)],
    ];
    FiniteRing::from_orders(vec![n; 3], mul, vec![1 % n, 0, 1 % n]).expect("upper-triangular ring")
}

/// The direct product `A x B` of two rings.
pub fn ring_product(a: &FiniteRing, b: &FiniteRing) -> FiniteRing {
    let (ta, tb) = (a.rank(), b.rank());
    let shape = GroupShape::concat([a.shape(), b.shape()]).expect("bounded exponent");
    let embed_a = |x: &Coords| {
        let mut v = x.clone();
        v.extend(std::iter::repeat_n(0, tb));
        v
    };
    let embed_b = |x: &Coords| {
        let mut v = vec![0; ta];
        v.extend(x.iter().copied());
        v
    };
    let zero = vec![0; ta + tb];
    let mul = (0..ta + tb)
        .map(|i| {
            (0..ta + tb)
                .map(|j| match (i < ta, j < ta) {
                    (true, true) => embed_a(&a.mul_table()[i][j]),
                    (false, false) => embed_b(&b.mul_table()[i - ta][j - ta]),
                    _ => zero.clone(),
                })
                .collect()
        })
        .collect();
    let mut one = a.one().clone();
    one.extend(b.one().iter().copied());
    FiniteRing::new(shape, mul, one).expect("product ring")
}
