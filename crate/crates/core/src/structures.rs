//! Finite rings and finite left modules given by structure constants, with
//! the module-level constructions built on top of them: regular modules,
//! direct sums, submodules, quotients, annihilators and left ideals.

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use thiserror::Error;

use crate::grouplin::{
    canonical_subgroup, mul_mod, quotient, subgroup_intersection, subgroup_sum, Coords, GroupError, GroupMap,
    GroupShape, QuotientGroup, SubgroupBasis, SubgroupPresentation,
};
use crate::homspace::ModuleHom;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AxiomError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("malformed presentation: {0}")]
    Malformed(String),
    #[error("product e{i}*e{j} is not annihilated by the orders of e{i} and e{j}")]
    RingWellDefined { i: usize, j: usize },
    #[error("associativity fails for generator triple (e{i}, e{j}, e{k})")]
    RingAssociativity { i: usize, j: usize, k: usize },
    #[error("unit law fails at generator e{i}")]
    RingUnit { i: usize },
    #[error("action e{i}*f{j} is not annihilated by the orders of e{i} and f{j}")]
    ModuleWellDefined { i: usize, j: usize },
    #[error("associativity fails for (e{i}*e{j})*f{k}")]
    ModuleAssociativity { i: usize, j: usize, k: usize },
    #[error("the unit does not fix generator f{j}")]
    ModuleUnit { j: usize },
}

/// `floor(log2(order))`, an upper bound on composition length.
pub fn length_bound(order: &BigUint) -> u64 {
    order.bits().saturating_sub(1)
}

fn check_tensor(shape: &GroupShape, outer: usize, inner: usize, target: &GroupShape, t: &[Vec<Coords>], what: &str) -> Result<(), AxiomError> {
    if t.len() != outer || t.iter().any(|row| row.len() != inner) {
        return Err(AxiomError::Malformed(format!("{what} tensor has the wrong dimensions")));
    }
    let _ = shape;
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if !target.is_reduced(v) {
                return Err(AxiomError::Malformed(format!(
                    "{what}[{i}][{j}] must have {} coordinates each below the matching order",
                    target.rank()
                )));
            }
        }
    }
    Ok(())
}

/// A finite ring: an additive group `Z/n_1 + ... + Z/n_t` with the products
/// `e_i e_j` of its generators.
#[derive(Clone, Debug)]
pub struct FiniteRing {
    shape: GroupShape,
    mul: Vec<Vec<Coords>>,
    one: Coords,
    characteristic: u64,
    algebra_gens: OnceLock<Vec<usize>>,
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape && self.mul == other.mul && self.one == other.one
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Validates a ring presentation.
    pub fn new(shape: GroupShape, mul: Vec<Vec<Coords>>, one: Coords) -> Result<Self, AxiomError> {
        let t = shape.rank();
        check_tensor(&shape, t, t, &shape, &mul, "multiplication")?;
        if !shape.is_reduced(&one) {
            return Err(AxiomError::Malformed("unit must be a reduced element".into()));
        }
        let ring = FiniteRing::new_unchecked(shape, mul, one);
        ring.validate()?;
        Ok(ring)
    }

    pub fn from_orders(orders: Vec<u64>, mul: Vec<Vec<Coords>>, one: Coords) -> Result<Self, AxiomError> {
        FiniteRing::new(GroupShape::new(orders)?, mul, one)
    }

    pub(crate) fn new_unchecked(shape: GroupShape, mul: Vec<Vec<Coords>>, one: Coords) -> Self {
        let characteristic = shape.element_order(&one);
        FiniteRing { shape, mul, one, characteristic, algebra_gens: OnceLock::new() }
    }

    /// Checks well-definedness, associativity and the unit laws on generators.
    pub fn validate(&self) -> Result<(), AxiomError> {
        let s = &self.shape;
        let t = s.rank();
        for i in 0..t {
            for j in 0..t {
                let p = &self.mul[i][j];
                if !s.is_zero(&s.scale(s.orders()[i], p)) || !s.is_zero(&s.scale(s.orders()[j], p)) {
                    return Err(AxiomError::RingWellDefined { i, j });
                }
            }
        }
        for i in 0..t {
            for j in 0..t {
                for k in 0..t {
                    let left = self.mul(&self.mul[i][j], &s.gen(k));
                    let right = self.mul(&s.gen(i), &self.mul[j][k]);
                    if left != right {
                        return Err(AxiomError::RingAssociativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..t {
            let e = s.gen(i);
            if self.mul(&self.one, &e) != e || self.mul(&e, &self.one) != e {
                return Err(AxiomError::RingUnit { i });
            }
        }
        Ok(())
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn order(&self) -> BigUint {
        self.shape.order()
    }

    pub fn mul_table(&self) -> &[Vec<Coords>] {
        &self.mul
    }

    pub fn one(&self) -> &Coords {
        &self.one
    }

    /// Additive order of the unit.
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn zero(&self) -> Coords {
        self.shape.zero()
    }

    pub fn is_trivial(&self) -> bool {
        self.shape.is_trivial()
    }

    pub fn length_bound(&self) -> u64 {
        length_bound(&self.order())
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Coords {
        let s = &self.shape;
        let e = s.exponent();
        let mut acc = s.zero();
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b != 0 {
                    s.add_scaled(&mut acc, mul_mod(a, b, e), &self.mul[i][j]);
                }
            }
        }
        acc
    }

    /// `e_i * y`.
    pub fn left_mul_gen(&self, i: usize, y: &[u64]) -> Coords {
        let s = &self.shape;
        let mut acc = s.zero();
        for (j, &b) in y.iter().enumerate() {
            s.add_scaled(&mut acc, b, &self.mul[i][j]);
        }
        acc
    }

    /// `y * e_i`.
    pub fn right_mul_gen(&self, i: usize, y: &[u64]) -> Coords {
        let s = &self.shape;
        let mut acc = s.zero();
        for (j, &b) in y.iter().enumerate() {
            s.add_scaled(&mut acc, b, &self.mul[j][i]);
        }
        acc
    }

    pub fn pow(&self, x: &[u64], mut e: u64) -> Coords {
        let mut result = self.one.clone();
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Indices of additive generators that generate the ring as a ring with
    /// unit; R-linearity only needs checking against these.
    pub fn algebra_generators(&self) -> &[usize] {
        self.algebra_gens.get_or_init(|| {
            let s = &self.shape;
            let mut chosen = Vec::new();
            let mut sub = canonical_subgroup(s, std::slice::from_ref(&self.one)).expect("ring shape");
            for i in 0..s.rank() {
                let e = s.gen(i);
                if sub.contains(&e) {
                    continue;
                }
                chosen.push(i);
                let mut rows = sub.rows();
                rows.push(e);
                sub = canonical_subgroup(s, &rows).expect("ring shape");
                // Close under products.
                loop {
                    let rows = sub.rows();
                    let mut new = Vec::new();
                    for a in &rows {
                        for b in &rows {
                            let p = self.mul(a, b);
                            if !sub.contains(&p) {
                                new.push(p);
                            }
                        }
                    }
                    if new.is_empty() {
                        break;
                    }
                    let mut all = rows;
                    all.extend(new);
                    sub = canonical_subgroup(s, &all).expect("ring shape");
                }
                if sub.is_whole() {
                    break;
                }
            }
            chosen
        })
    }
}

pub(crate) fn same_ring(a: &Arc<FiniteRing>, b: &Arc<FiniteRing>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// A finite left module: an additive group with the action `e_i f_j` of ring
/// generators on module generators.
#[derive(Clone, Debug)]
pub struct FiniteModule {
    ring: Arc<FiniteRing>,
    shape: GroupShape,
    action: Vec<Vec<Coords>>,
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.shape == other.shape && self.action == other.action
    }
}

impl Eq for FiniteModule {}

pub(crate) fn same_module(a: &Arc<FiniteModule>, b: &Arc<FiniteModule>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl FiniteModule {
    /// Validates a module presentation over `ring`.
    pub fn new(ring: Arc<FiniteRing>, shape: GroupShape, action: Vec<Vec<Coords>>) -> Result<Self, AxiomError> {
        check_tensor(ring.shape(), ring.rank(), shape.rank(), &shape, &action, "action")?;
        let m = FiniteModule { ring, shape, action };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(ring: Arc<FiniteRing>, shape: GroupShape, action: Vec<Vec<Coords>>) -> Self {
        debug_assert_eq!(action.len(), ring.rank());
        FiniteModule { ring, shape, action }
    }

    pub fn validate(&self) -> Result<(), AxiomError> {
        let r = &self.ring;
        let s = &self.shape;
        let (t, u) = (r.rank(), s.rank());
        for i in 0..t {
            for j in 0..u {
                let y = &self.action[i][j];
                if !s.is_zero(&s.scale(r.shape().orders()[i], y)) || !s.is_zero(&s.scale(s.orders()[j], y)) {
                    return Err(AxiomError::ModuleWellDefined { i, j });
                }
            }
        }
        for i in 0..t {
            for j in 0..t {
                for k in 0..u {
                    let left = self.act(&r.mul_table()[i][j], &s.gen(k));
                    let right = self.act_gen(i, &self.action[j][k]);
                    if left != right {
                        return Err(AxiomError::ModuleAssociativity { i, j, k });
                    }
                }
            }
        }
        for j in 0..u {
            let f = s.gen(j);
            if self.act(r.one(), &f) != f {
                return Err(AxiomError::ModuleUnit { j });
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn rank(&self) -> usize {
        self.shape.rank()
    }

    pub fn action(&self) -> &[Vec<Coords>] {
        &self.action
    }

    pub fn order(&self) -> BigUint {
        self.shape.order()
    }

    pub fn is_zero(&self) -> bool {
        self.shape.is_trivial()
    }

    pub fn zero(&self) -> Coords {
        self.shape.zero()
    }

    pub fn length_bound(&self) -> u64 {
        length_bound(&self.order())
    }

    /// `e_i * x`.
    pub fn act_gen(&self, i: usize, x: &[u64]) -> Coords {
        let s = &self.shape;
        let mut acc = s.zero();
        for (j, &c) in x.iter().enumerate() {
            s.add_scaled(&mut acc, c, &self.action[i][j]);
        }
        acc
    }

    /// `r * x` for an arbitrary ring element `r`.
    pub fn act(&self, r: &[u64], x: &[u64]) -> Coords {
        let s = &self.shape;
        let e = s.exponent();
        let mut acc = s.zero();
        for (i, &a) in r.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &c) in x.iter().enumerate() {
                if c != 0 {
                    s.add_scaled(&mut acc, mul_mod(a % e, c % e, e), &self.action[i][j]);
                }
            }
        }
        acc
    }

    /// A generating set of the module over the ring, chosen greedily among
    /// the additive generators.
    pub fn ring_generators(self: &Arc<Self>) -> Vec<Coords> {
        let mut gens = Vec::new();
        let mut sub = Submodule::zero(self);
        for j in 0..self.rank() {
            let f = self.shape.gen(j);
            if sub.contains(&f) {
                continue;
            }
            gens.push(f);
            sub = Submodule::generated(self, &gens).expect("module shape");
            if sub.is_whole() {
                break;
            }
        }
        gens
    }
}

/// The ring as a left module over itself.
pub fn regular_module(ring: &Arc<FiniteRing>) -> FiniteModule {
    FiniteModule::new_unchecked(ring.clone(), ring.shape().clone(), ring.mul_table().to_vec())
}

/// The zero module over `ring`.
pub fn zero_module(ring: &Arc<FiniteRing>) -> FiniteModule {
    FiniteModule::new_unchecked(ring.clone(), GroupShape::trivial(), vec![Vec::new(); ring.rank()])
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Arc<FiniteModule>,
    pub injections: Vec<ModuleHom>,
    pub projections: Vec<ModuleHom>,
}

pub fn direct_sum(ring: &Arc<FiniteRing>, summands: &[Arc<FiniteModule>]) -> DirectSum {
    let shape = GroupShape::concat(summands.iter().map(|m| m.shape())).expect("exponents divide the characteristic");
    let offsets: Vec<usize> = summands
        .iter()
        .scan(0, |acc, m| {
            let o = *acc;
            *acc += m.rank();
            Some(o)
        })
        .collect();
    let total = shape.rank();
    let action = (0..ring.rank())
        .map(|i| {
            summands
                .iter()
                .zip(&offsets)
                .flat_map(|(m, &off)| {
                    m.action()[i].iter().map(move |y| {
                        let mut v = vec![0; total];
                        v[off..off + y.len()].copy_from_slice(y);
                        v
                    })
                })
                .collect()
        })
        .collect();
    let module = Arc::new(FiniteModule::new_unchecked(ring.clone(), shape, action));
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (m, &off) in summands.iter().zip(&offsets) {
        let inj = (0..m.rank())
            .map(|j| {
                let mut v = vec![0; total];
                v[off + j] = 1 % m.shape().orders()[j];
                v
            })
            .collect();
        injections.push(ModuleHom::new_unchecked(m.clone(), module.clone(), inj));
        let proj = (0..total)
            .map(|k| {
                let mut v = m.zero();
                if k >= off && k < off + m.rank() {
                    v[k - off] = 1 % m.shape().orders()[k - off];
                }
                v
            })
            .collect();
        projections.push(ModuleHom::new_unchecked(module.clone(), m.clone(), proj));
    }
    DirectSum { module, injections, projections }
}

/// Smallest subgroup containing `gens` and closed under the operators.
pub(crate) fn close_subgroup(
    shape: &GroupShape,
    gens: &[Coords],
    nops: usize,
    op: impl Fn(usize, &[u64]) -> Coords,
) -> Result<SubgroupBasis, GroupError> {
    let mut basis = canonical_subgroup(shape, gens)?;
    loop {
        let rows = basis.rows();
        let mut new = Vec::new();
        for row in &rows {
            for i in 0..nops {
                let y = op(i, row);
                if !basis.contains(&y) {
                    new.push(y);
                }
            }
        }
        if new.is_empty() {
            return Ok(basis);
        }
        let mut all = rows;
        all.extend(new);
        basis = canonical_subgroup(shape, &all)?;
    }
}

/// An additive subgroup of a module that is stable under the ring action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    ambient: Arc<FiniteModule>,
    basis: SubgroupBasis,
}

impl Submodule {
    /// The submodule generated by `elems`.
    pub fn generated(ambient: &Arc<FiniteModule>, elems: &[Coords]) -> Result<Self, GroupError> {
        let ring = ambient.ring();
        let ops = ring.algebra_generators();
        let basis = close_subgroup(ambient.shape(), elems, ops.len(), |k, x| ambient.act_gen(ops[k], x))?;
        Ok(Submodule { ambient: ambient.clone(), basis })
    }

    /// Wraps a basis already known to be action-stable.
    pub(crate) fn from_basis(ambient: &Arc<FiniteModule>, basis: SubgroupBasis) -> Self {
        let s = Submodule { ambient: ambient.clone(), basis };
        debug_assert!(s.is_closed());
        s
    }

    pub fn zero(ambient: &Arc<FiniteModule>) -> Self {
        Submodule { ambient: ambient.clone(), basis: SubgroupBasis::zero(ambient.shape()) }
    }

    pub fn whole(ambient: &Arc<FiniteModule>) -> Self {
        Submodule { ambient: ambient.clone(), basis: SubgroupBasis::whole(ambient.shape()) }
    }

    pub fn ambient(&self) -> &Arc<FiniteModule> {
        &self.ambient
    }

    pub fn basis(&self) -> &SubgroupBasis {
        &self.basis
    }

    pub fn order(&self) -> BigUint {
        self.basis.order().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    pub fn is_whole(&self) -> bool {
        self.basis.is_whole()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.basis.contains(x)
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> bool {
        self.basis.is_subgroup_of(&other.basis)
    }

    /// Every ring generator maps every basis row back into the subgroup.
    pub fn is_closed(&self) -> bool {
        let m = &self.ambient;
        self.basis
            .rows()
            .iter()
            .all(|b| (0..m.ring().rank()).all(|i| self.basis.contains(&m.act_gen(i, b))))
    }

    pub fn sum(&self, other: &Submodule) -> Submodule {
        Submodule { ambient: self.ambient.clone(), basis: subgroup_sum(&self.basis, &other.basis) }
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Submodule { ambient: self.ambient.clone(), basis: subgroup_intersection(&self.basis, &other.basis) }
    }

    /// The submodule as a module in its own right, with its inclusion.
    pub fn as_module(&self) -> SubmoduleModule {
        let pres = SubgroupPresentation::new(&self.basis);
        let m = &self.ambient;
        let ring = m.ring();
        let action = (0..ring.rank())
            .map(|i| {
                pres.gens
                    .iter()
                    .map(|g| pres.encode(&m.act_gen(i, g)).expect("submodule is action-stable"))
                    .collect()
            })
            .collect();
        let module = Arc::new(FiniteModule::new_unchecked(ring.clone(), pres.shape.clone(), action));
        let inclusion = ModuleHom::new_unchecked(module.clone(), m.clone(), pres.gens.clone());
        SubmoduleModule { module, inclusion, presentation: pres }
    }

    /// The quotient module `M/U` with its projection.
    pub fn quotient(&self) -> QuotientModule {
        let m = &self.ambient;
        let group = quotient(m.shape(), &self.basis);
        let ring = m.ring();
        let action = (0..ring.rank())
            .map(|i| group.lifts.iter().map(|x| group.project(&m.act_gen(i, x))).collect())
            .collect();
        let module = Arc::new(FiniteModule::new_unchecked(ring.clone(), group.shape.clone(), action));
        let projection = ModuleHom::new_unchecked(m.clone(), module.clone(), group.projection.clone());
        QuotientModule { module, projection, group }
    }
}

/// A submodule presented as an abstract module.
#[derive(Clone, Debug)]
pub struct SubmoduleModule {
    pub module: Arc<FiniteModule>,
    pub inclusion: ModuleHom,
    pub presentation: SubgroupPresentation,
}

impl SubmoduleModule {
    /// Coordinates in `module` of an ambient element of the submodule.
    pub fn encode(&self, x: &[u64]) -> Option<Coords> {
        self.presentation.encode(x)
    }
}

/// A quotient module with its projection and a section of it.
#[derive(Clone, Debug)]
pub struct QuotientModule {
    pub module: Arc<FiniteModule>,
    pub projection: ModuleHom,
    pub group: QuotientGroup,
}

impl QuotientModule {
    pub fn lift(&self, y: &[u64]) -> Coords {
        self.group.lift(y)
    }
}

/// A left ideal of a finite ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeftIdeal {
    ring: Arc<FiniteRing>,
    basis: SubgroupBasis,
}

impl LeftIdeal {
    /// The left ideal generated by `elems`.
    pub fn generated(ring: &Arc<FiniteRing>, elems: &[Coords]) -> Result<Self, GroupError> {
        let ops = ring.algebra_generators();
        let basis = close_subgroup(ring.shape(), elems, ops.len(), |k, x| ring.left_mul_gen(ops[k], x))?;
        Ok(LeftIdeal { ring: ring.clone(), basis })
    }

    pub(crate) fn from_basis(ring: &Arc<FiniteRing>, basis: SubgroupBasis) -> Self {
        let ideal = LeftIdeal { ring: ring.clone(), basis };
        debug_assert!(ideal.is_left_ideal());
        ideal
    }

    pub fn zero(ring: &Arc<FiniteRing>) -> Self {
        LeftIdeal { ring: ring.clone(), basis: SubgroupBasis::zero(ring.shape()) }
    }

    pub fn whole(ring: &Arc<FiniteRing>) -> Self {
        LeftIdeal { ring: ring.clone(), basis: SubgroupBasis::whole(ring.shape()) }
    }

    pub fn ring(&self) -> &Arc<FiniteRing> {
        &self.ring
    }

    pub fn basis(&self) -> &SubgroupBasis {
        &self.basis
    }

    pub fn rows(&self) -> Vec<Coords> {
        self.basis.rows()
    }

    pub fn order(&self) -> BigUint {
        self.basis.order().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_zero()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.basis.contains(x)
    }

    pub fn is_left_ideal(&self) -> bool {
        let r = &self.ring;
        self.rows()
            .iter()
            .all(|b| (0..r.rank()).all(|i| self.basis.contains(&r.left_mul_gen(i, b))))
    }

    pub fn is_two_sided(&self) -> bool {
        let r = &self.ring;
        self.is_left_ideal()
            && self
                .rows()
                .iter()
                .all(|b| (0..r.rank()).all(|i| self.basis.contains(&r.right_mul_gen(i, b))))
    }

    pub fn intersection(&self, other: &LeftIdeal) -> LeftIdeal {
        LeftIdeal { ring: self.ring.clone(), basis: subgroup_intersection(&self.basis, &other.basis) }
    }

    /// `I * J`, additively spanned by products of basis elements.
    pub fn product(&self, other: &LeftIdeal) -> LeftIdeal {
        let r = &self.ring;
        let (a, b) = (self.rows(), other.rows());
        let gens: Vec<Coords> = a.iter().flat_map(|x| b.iter().map(move |y| r.mul(x, y))).collect();
        LeftIdeal { ring: r.clone(), basis: canonical_subgroup(r.shape(), &gens).expect("ring shape") }
    }

    /// Whether every basis element kills every generator of `m`.
    pub fn kills(&self, m: &FiniteModule) -> bool {
        let rows = self.rows();
        (0..m.rank()).all(|j| {
            let f = m.shape().gen(j);
            rows.iter().all(|r| m.shape().is_zero(&m.act(r, &f)))
        })
    }

    /// The first `n` with `I^n = I^(n+1)`, and that power.
    pub fn power_chain(&self) -> (usize, LeftIdeal) {
        let mut n = 1;
        let mut power = self.clone();
        loop {
            let next = power.product(self);
            if next == power {
                return (n, power);
            }
            power = next;
            n += 1;
        }
    }

    /// `I^k` by repeated multiplication.
    pub fn power(&self, k: usize) -> LeftIdeal {
        assert!(k >= 1);
        let mut p = self.clone();
        for _ in 1..k {
            p = p.product(self);
        }
        p
    }

    pub fn as_submodule(&self, regular: &Arc<FiniteModule>) -> Submodule {
        debug_assert!(regular.ring() == &self.ring || **regular.ring() == *self.ring);
        Submodule::from_basis(regular, self.basis.clone())
    }
}

/// `{ r : r M = 0 }`.
pub fn annihilator(m: &FiniteModule) -> LeftIdeal {
    annihilator_of(m.ring(), std::slice::from_ref(&m))
}

/// Intersection of the annihilators of several modules.
pub fn annihilator_of<M: std::borrow::Borrow<FiniteModule>>(ring: &Arc<FiniteRing>, modules: &[M]) -> LeftIdeal {
    let mut shapes = Vec::new();
    for m in modules {
        let m = m.borrow();
        for _ in 0..m.rank() {
            shapes.push(m.shape());
        }
    }
    let codomain = GroupShape::concat(shapes).expect("exponents divide the characteristic");
    let images: Vec<Coords> = (0..ring.rank())
        .map(|i| {
            modules
                .iter()
                .flat_map(|m| m.borrow().action()[i].iter().flatten().copied())
                .collect()
        })
        .collect();
    let map = GroupMap::new(ring.shape().clone(), codomain, images).expect("well-defined action");
    LeftIdeal::from_basis(ring, map.analyze().kernel)
}
