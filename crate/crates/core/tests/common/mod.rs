#![allow(dead_code)]

use std::sync::Arc;

use finmod::fixtures::*;
use finmod::grouplin::{Coords, GroupMap, GroupShape};
use finmod::structures::{direct_sum, regular_module, FiniteModule, FiniteRing, LeftIdeal, Submodule};
use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub struct SuiteRing {
    pub name: String,
    pub ring: Arc<FiniteRing>,
}

pub fn suite_rings() -> Vec<SuiteRing> {
    let mut out: Vec<SuiteRing> =
        (1..=9).map(|n| SuiteRing { name: format!("Z/{n}"), ring: Arc::new(zn(n)) }).collect();
    out.push(SuiteRing { name: "F2[x]/(x^2)".into(), ring: Arc::new(dual_numbers_f2()) });
    out.push(SuiteRing { name: "F4".into(), ring: Arc::new(f4()) });
    out.push(SuiteRing { name: "UT2(F2)".into(), ring: Arc::new(upper_triangular(2)) });
    out.push(SuiteRing { name: "M2(F2)".into(), ring: Arc::new(matrix_ring_f2()) });
    out
}

pub fn order_u64(m: &FiniteModule) -> u64 {
    u64::try_from(&m.order()).expect("small module")
}

fn push_unique(pool: &mut Vec<Arc<FiniteModule>>, m: Arc<FiniteModule>, max_order: u64) {
    if m.order() <= BigUint::from(max_order) && !pool.iter().any(|p| **p == *m) {
        pool.push(m);
    }
}

/// Every action tensor over `(Z/p)^u` for the ring, when there are at most
/// `limit` of them, filtered by the module axioms.
fn exhaustive_modules(ring: &Arc<FiniteRing>, p: u64, u: usize, limit: u64) -> Vec<Arc<FiniteModule>> {
    if !ring.characteristic().is_multiple_of(p) {
        return Vec::new();
    }
    let t = ring.rank();
    let entries = t * u * u;
    let Some(count) = p.checked_pow(entries as u32).filter(|&c| c <= limit) else {
        return Vec::new();
    };
    let shape = GroupShape::new(vec![p; u]).unwrap();
    let mut out = Vec::new();
    for code in 0..count {
        let mut c = code;
        let action: Vec<Vec<Coords>> = (0..t)
            .map(|_| {
                (0..u)
                    .map(|_| {
                        (0..u)
                            .map(|_| {
                                let d = c % p;
                                c /= p;
                                d
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        if let Ok(m) = FiniteModule::new(ring.clone(), shape.clone(), action) {
            out.push(Arc::new(m));
        }
    }
    out
}

/// Cyclic building blocks `R/Rx` and `Rx` over a small ring.
fn cyclic_blocks(ring: &Arc<FiniteRing>) -> Vec<Arc<FiniteModule>> {
    let reg = Arc::new(regular_module(ring));
    let mut out = Vec::new();
    for x in ring.shape().elements() {
        let sub = Submodule::generated(&reg, std::slice::from_ref(&x)).unwrap();
        out.push(sub.quotient().module);
        out.push(sub.as_module().module);
    }
    out
}

/// A pool of modules of order at most `max_order`: exhaustive small
/// presentations, cyclic blocks, direct sums and random re-presentations.
pub fn module_pool(ring: &Arc<FiniteRing>, max_order: u64, rng: &mut ChaCha8Rng) -> Vec<Arc<FiniteModule>> {
    let mut blocks: Vec<Arc<FiniteModule>> = Vec::new();
    if ring.order() <= BigUint::from(64u32) {
        for b in cyclic_blocks(ring) {
            push_unique(&mut blocks, b, max_order);
        }
    }
    for p in [2u64, 3] {
        for u in 1..=2 {
            for m in exhaustive_modules(ring, p, u, 1 << 16) {
                push_unique(&mut blocks, m, max_order);
            }
        }
    }
    let mut pool = blocks.clone();
    for i in 0..blocks.len() {
        for j in i..blocks.len() {
            let s = direct_sum(ring, &[blocks[i].clone(), blocks[j].clone()]).module;
            push_unique(&mut pool, s, max_order);
        }
    }
    let snapshot = pool.clone();
    for a in &snapshot {
        for b in &blocks {
            let s = direct_sum(ring, &[a.clone(), b.clone()]).module;
            if s.order() <= BigUint::from(max_order) && pool.len() < 400 {
                push_unique(&mut pool, s, max_order);
            }
        }
    }
    let snapshot = pool.clone();
    for m in snapshot.iter().take(60) {
        let r = represent(m, rng);
        push_unique(&mut pool, r, max_order);
    }
    pool
}

/// A random element of order dividing `n`.
fn random_killed_by(shape: &GroupShape, n: u64, rng: &mut ChaCha8Rng) -> Coords {
    shape
        .orders()
        .iter()
        .map(|&m| {
            let step = m / num_integer::gcd(m, n);
            step * rng.gen_range(0..m / step)
        })
        .collect()
}

/// An isomorphic copy of `m` on a randomly chosen generating set with the
/// cyclic factors permuted.
pub fn represent(m: &Arc<FiniteModule>, rng: &mut ChaCha8Rng) -> Arc<FiniteModule> {
    let old = m.shape();
    let u = old.rank();
    if u == 0 {
        return m.clone();
    }
    let mut perm: Vec<usize> = (0..u).collect();
    for i in (1..u).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
    let new_shape = GroupShape::new(perm.iter().map(|&k| old.orders()[k]).collect()).unwrap();
    for _ in 0..10_000 {
        let ys: Vec<Coords> = new_shape.orders().iter().map(|&n| random_killed_by(old, n, rng)).collect();
        let phi = GroupMap::new(new_shape.clone(), old.clone(), ys.clone()).unwrap().analyze();
        if !(phi.kernel.is_zero() && phi.image.is_whole()) {
            continue;
        }
        let action = (0..m.ring().rank())
            .map(|i| ys.iter().map(|y| phi.preimage(&m.act_gen(i, y)).unwrap()).collect())
            .collect();
        return Arc::new(FiniteModule::new(m.ring().clone(), new_shape, action).expect("transported structure"));
    }
    m.clone()
}

/// All left ideals generated by at most two elements.
pub fn small_left_ideals(ring: &Arc<FiniteRing>) -> Vec<LeftIdeal> {
    let elems: Vec<Coords> = ring.shape().elements().collect();
    let mut out: Vec<LeftIdeal> = Vec::new();
    for (i, a) in elems.iter().enumerate() {
        for b in &elems[i..] {
            let ideal = LeftIdeal::generated(ring, &[a.clone(), b.clone()]).unwrap();
            if !out.contains(&ideal) {
                out.push(ideal);
            }
        }
    }
    out
}
