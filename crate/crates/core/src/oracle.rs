//! Brute-force reference implementations for small modules.
//!
//! Nothing here goes through the subgroup machinery: homomorphisms are found
//! by trying every assignment of generator images, and submodules are
//! element sets grown by closure.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::grouplin::Coords;
use crate::structures::{same_ring, FiniteModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("{what} is {size}, over the oracle budget of {limit}")]
    OverBudget { what: &'static str, size: BigUint, limit: u64 },
    #[error("modules are over different rings")]
    RingMismatch,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_order: u64,
    pub max_homs: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_order: 64, max_homs: 1 << 16 }
    }
}

impl OracleBudget {
    /// Defaults overridden by `FINMOD_ORACLE_MAX_ORDER` and
    /// `FINMOD_ORACLE_MAX_HOMS` when set to integers.
    pub fn from_env() -> Self {
        let mut b = OracleBudget::default();
        if let Some(v) = std::env::var("FINMOD_ORACLE_MAX_ORDER").ok().and_then(|s| s.parse().ok()) {
            b.max_order = v;
        }
        if let Some(v) = std::env::var("FINMOD_ORACLE_MAX_HOMS").ok().and_then(|s| s.parse().ok()) {
            b.max_homs = v;
        }
        b
    }

    fn check_order(&self, m: &FiniteModule) -> Result<(), OracleError> {
        let size = m.order();
        if size > BigUint::from(self.max_order) {
            return Err(OracleError::OverBudget { what: "module order", size, limit: self.max_order });
        }
        Ok(())
    }
}

fn elements(m: &FiniteModule) -> Vec<Coords> {
    m.shape().elements().collect()
}

/// Value of the map with generator images `images` at `x`.
fn eval(n: &FiniteModule, images: &[Coords], x: &[u64]) -> Coords {
    let s = n.shape();
    let mut acc = s.zero();
    for (&c, y) in x.iter().zip(images) {
        for _ in 0..c {
            acc = s.add(&acc, y);
        }
    }
    acc
}

/// Every R-linear map `M -> N`, as lists of generator images.
pub fn oracle_homs(m: &FiniteModule, n: &FiniteModule, budget: &OracleBudget) -> Result<Vec<Vec<Coords>>, OracleError> {
    if !same_ring(m.ring(), n.ring()) {
        return Err(OracleError::RingMismatch);
    }
    budget.check_order(m)?;
    budget.check_order(n)?;
    let targets = elements(n);
    let choices: Vec<Vec<Coords>> = (0..m.rank())
        .map(|j| {
            let order = m.shape().orders()[j];
            targets
                .iter()
                .filter(|y| n.shape().is_zero(&n.shape().scale(order, y)))
                .cloned()
                .collect()
        })
        .collect();
    let size: BigUint = choices.iter().map(|c| BigUint::from(c.len())).product();
    if size > BigUint::from(budget.max_homs) {
        return Err(OracleError::OverBudget { what: "hom enumeration", size, limit: budget.max_homs });
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; m.rank()];
    let total = u64::try_from(&size).expect("within budget");
    for _ in 0..total {
        let images: Vec<Coords> = idx.iter().zip(&choices).map(|(&k, c)| c[k].clone()).collect();
        let linear = (0..m.ring().rank()).all(|i| {
            (0..m.rank()).all(|j| eval(n, &images, &m.action()[i][j]) == n.act_gen(i, &images[j]))
        });
        if linear {
            out.push(images);
        }
        for (k, c) in idx.iter_mut().zip(&choices).rev() {
            *k += 1;
            if *k < c.len() {
                break;
            }
            *k = 0;
        }
    }
    Ok(out)
}

fn image_set(n: &FiniteModule, images: &[Coords], of: &[Coords]) -> BTreeSet<Coords> {
    of.iter().map(|x| eval(n, images, x)).collect()
}

/// Generator images of a bijective R-linear map `M -> N`, if one exists.
pub fn oracle_iso(m: &FiniteModule, n: &FiniteModule, budget: &OracleBudget) -> Result<Option<Vec<Coords>>, OracleError> {
    if m.order() != n.order() {
        budget.check_order(m)?;
        budget.check_order(n)?;
        return Ok(None);
    }
    let homs = oracle_homs(m, n, budget)?;
    let elems = elements(m);
    Ok(homs.into_iter().find(|h| image_set(n, h, &elems).len() == elems.len()))
}

/// Elements of the submodule generated by `gens`.
pub fn span(m: &FiniteModule, gens: &[Coords]) -> HashSet<Coords> {
    let mut orbit: Vec<Coords> = Vec::new();
    let mut seen: HashSet<Coords> = HashSet::new();
    let mut queue: VecDeque<Coords> = gens.iter().cloned().collect();
    while let Some(x) = queue.pop_front() {
        if !seen.insert(x.clone()) {
            continue;
        }
        for i in 0..m.ring().rank() {
            queue.push_back(m.act_gen(i, &x));
        }
        orbit.push(x);
    }
    let mut set: HashSet<Coords> = HashSet::new();
    let zero = m.zero();
    set.insert(zero.clone());
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in &orbit {
            let y = m.shape().add(&x, g);
            if set.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    set
}

/// Least number of elements generating `M`, by exhaustive search.
pub fn oracle_mingen(m: &FiniteModule, budget: &OracleBudget) -> Result<usize, OracleError> {
    budget.check_order(m)?;
    let total = usize::try_from(&m.order()).expect("within budget");
    let nonzero: Vec<Coords> = elements(m).into_iter().filter(|x| !m.shape().is_zero(x)).collect();
    let mut k = 0;
    loop {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let gens: Vec<Coords> = idx.iter().map(|&i| nonzero[i].clone()).collect();
            if span(m, &gens).len() == total {
                return Ok(k);
            }
            // Next k-subset in lexicographic order.
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == nonzero.len() - k + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for p in pos..k {
                idx[p] = idx[p - 1] + 1;
            }
        }
        k += 1;
        assert!(k <= nonzero.len(), "the whole module generates itself");
    }
}

/// A direct summand, as the image of an idempotent endomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleSummand {
    pub elements: BTreeSet<Coords>,
    pub idempotent: Vec<Coords>,
}

impl OracleSummand {
    pub fn order(&self) -> usize {
        self.elements.len()
    }
}

/// All direct summands of `M` (as element sets).
pub fn oracle_summands(m: &FiniteModule, budget: &OracleBudget) -> Result<Vec<OracleSummand>, OracleError> {
    let ends = oracle_homs(m, m, budget)?;
    let elems = elements(m);
    let mut out: Vec<OracleSummand> = Vec::new();
    for e in ends {
        let idempotent = (0..m.rank()).all(|j| eval(m, &e, &e[j]) == e[j]);
        if !idempotent {
            continue;
        }
        let image = image_set(m, &e, &elems);
        if !out.iter().any(|s| s.elements == image) {
            out.push(OracleSummand { elements: image, idempotent: e });
        }
    }
    Ok(out)
}

/// Whether some map `M -> N` sends summand `a` bijectively onto summand `b`.
fn summands_isomorphic(n: &FiniteModule, homs: &[Vec<Coords>], a: &OracleSummand, b: &OracleSummand) -> bool {
    if a.order() != b.order() {
        return false;
    }
    let a_elems: Vec<Coords> = a.elements.iter().cloned().collect();
    homs.iter().any(|h| image_set(n, h, &a_elems) == b.elements)
}

/// Direct summands of `M` up to isomorphism, one representative each.
pub fn oracle_summand_classes(m: &FiniteModule, budget: &OracleBudget) -> Result<Vec<OracleSummand>, OracleError> {
    let summands = oracle_summands(m, budget)?;
    let ends = oracle_homs(m, m, budget)?;
    let mut classes: Vec<OracleSummand> = Vec::new();
    for s in summands {
        if !classes.iter().any(|c| summands_isomorphic(m, &ends, c, &s)) {
            classes.push(s);
        }
    }
    classes.sort_by_key(|c| c.order());
    Ok(classes)
}

/// Largest order of a summand of `M1` isomorphic to a summand of `M2`.
pub fn oracle_max_common_summand(m1: &Arc<FiniteModule>, m2: &Arc<FiniteModule>, budget: &OracleBudget) -> Result<usize, OracleError> {
    let a = oracle_summand_classes(m1, budget)?;
    let b = oracle_summands(m2, budget)?;
    let homs = oracle_homs(m1, m2, budget)?;
    let mut best = 1;
    for x in &a {
        if x.order() > best && b.iter().any(|y| summands_isomorphic(m2, &homs, x, y)) {
            best = x.order();
        }
    }
    Ok(best)
}
