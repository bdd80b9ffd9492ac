//! Module homomorphisms, Hom groups, endomorphism rings and Hom as a module
//! over an endomorphism ring.

use std::sync::Arc;

use num_bigint::BigUint;
use thiserror::Error;

use crate::grouplin::{Coords, GroupMap, GroupShape, MapEchelon, SubgroupPresentation};
use crate::structures::{same_module, same_ring, FiniteModule, FiniteRing, Submodule, SubmoduleModule};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomError {
    #[error("modules are over different rings")]
    RingMismatch,
    #[error("maps do not have matching domains and codomains")]
    EndpointMismatch,
    #[error("expected {expected} generator images, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("image of generator f{0} is not a reduced codomain element")]
    BadImage(usize),
    #[error("image of generator f{0} is not annihilated by the order of f{0}")]
    IllDefined(usize),
    #[error("map does not commute with e{i} on f{j}")]
    NotLinear { i: usize, j: usize },
    #[error("submodules do not form an internal direct sum")]
    NotComplementary,
    #[error("image is not contained in the target submodule")]
    NotContained,
}

/// An R-linear map given by the images of the domain generators.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    dom: Arc<FiniteModule>,
    cod: Arc<FiniteModule>,
    images: Vec<Coords>,
}

impl PartialEq for ModuleHom {
    fn eq(&self, other: &Self) -> bool {
        same_module(&self.dom, &other.dom) && same_module(&self.cod, &other.cod) && self.images == other.images
    }
}

impl Eq for ModuleHom {}

impl ModuleHom {
    /// Checks shape, well-definedness and R-linearity.
    pub fn new(dom: Arc<FiniteModule>, cod: Arc<FiniteModule>, images: Vec<Coords>) -> Result<Self, HomError> {
        if !same_ring(dom.ring(), cod.ring()) {
            return Err(HomError::RingMismatch);
        }
        if images.len() != dom.rank() {
            return Err(HomError::Arity { expected: dom.rank(), got: images.len() });
        }
        for (j, y) in images.iter().enumerate() {
            if !cod.shape().is_reduced(y) {
                return Err(HomError::BadImage(j));
            }
            if !cod.shape().is_zero(&cod.shape().scale(dom.shape().orders()[j], y)) {
                return Err(HomError::IllDefined(j));
            }
        }
        let f = ModuleHom { dom, cod, images };
        if let Some((i, j)) = f.linearity_violation() {
            return Err(HomError::NotLinear { i, j });
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(dom: Arc<FiniteModule>, cod: Arc<FiniteModule>, images: Vec<Coords>) -> Self {
        debug_assert_eq!(images.len(), dom.rank());
        ModuleHom { dom, cod, images }
    }

    /// First `(i, j)` with `f(e_i f_j) != e_i f(f_j)`.
    pub fn linearity_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.dom.ring().rank() {
            for j in 0..self.dom.rank() {
                if self.apply(&self.dom.action()[i][j]) != self.cod.act_gen(i, &self.images[j]) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn identity(m: &Arc<FiniteModule>) -> Self {
        let images = (0..m.rank()).map(|j| m.shape().gen(j)).collect();
        ModuleHom { dom: m.clone(), cod: m.clone(), images }
    }

    pub fn zero(dom: &Arc<FiniteModule>, cod: &Arc<FiniteModule>) -> Self {
        ModuleHom { dom: dom.clone(), cod: cod.clone(), images: vec![cod.zero(); dom.rank()] }
    }

    pub fn dom(&self) -> &Arc<FiniteModule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteModule> {
        &self.cod
    }

    pub fn images(&self) -> &[Coords] {
        &self.images
    }

    pub fn apply(&self, x: &[u64]) -> Coords {
        let s = self.cod.shape();
        let mut acc = s.zero();
        for (&c, y) in x.iter().zip(&self.images) {
            s.add_scaled(&mut acc, c, y);
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleHom) -> ModuleHom {
        debug_assert!(same_module(&other.cod, &self.dom));
        let images = other.images.iter().map(|y| self.apply(y)).collect();
        ModuleHom { dom: other.dom.clone(), cod: self.cod.clone(), images }
    }

    pub fn add(&self, other: &ModuleHom) -> ModuleHom {
        let s = self.cod.shape();
        let images = self.images.iter().zip(&other.images).map(|(a, b)| s.add(a, b)).collect();
        ModuleHom { dom: self.dom.clone(), cod: self.cod.clone(), images }
    }

    pub fn sub(&self, other: &ModuleHom) -> ModuleHom {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ModuleHom {
        let s = self.cod.shape();
        ModuleHom { dom: self.dom.clone(), cod: self.cod.clone(), images: self.images.iter().map(|y| s.neg(y)).collect() }
    }

    /// `c * self` for an integer `c`.
    pub fn scale(&self, c: i64) -> ModuleHom {
        let s = self.cod.shape();
        let e = s.exponent();
        let k = (c as i128).rem_euclid(e as i128) as u64;
        ModuleHom { dom: self.dom.clone(), cod: self.cod.clone(), images: self.images.iter().map(|y| s.scale(k, y)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|y| self.cod.shape().is_zero(y))
    }

    pub fn is_identity(&self) -> bool {
        same_module(&self.dom, &self.cod) && (0..self.dom.rank()).all(|j| self.images[j] == self.dom.shape().gen(j))
    }

    /// Composes an endomorphism with itself `e` times.
    pub fn power(&self, mut e: u64) -> ModuleHom {
        debug_assert!(same_module(&self.dom, &self.cod));
        let mut result = ModuleHom::identity(&self.dom);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.compose(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.compose(&base);
            }
        }
        result
    }

    /// An endomorphism is nilpotent iff its `length_bound`-th power vanishes.
    pub fn is_nilpotent_endo(&self) -> bool {
        self.power(self.dom.length_bound().max(1)).is_zero()
    }

    pub fn group_map(&self) -> GroupMap {
        GroupMap::new(self.dom.shape().clone(), self.cod.shape().clone(), self.images.clone()).expect("well-defined map")
    }

    pub fn analyze(&self) -> MapEchelon {
        self.group_map().analyze()
    }

    pub fn kernel(&self) -> Submodule {
        Submodule::from_basis(&self.dom, self.analyze().kernel)
    }

    pub fn image(&self) -> Submodule {
        Submodule::from_basis(&self.cod, self.analyze().image)
    }

    pub fn is_injective(&self) -> bool {
        self.analyze().kernel.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.analyze().image.is_whole()
    }

    pub fn is_bijective(&self) -> bool {
        let a = self.analyze();
        a.kernel.is_zero() && a.image.is_whole()
    }

    /// The inverse map, when `self` is bijective.
    pub fn inverse(&self) -> Option<ModuleHom> {
        let a = self.analyze();
        if !(a.kernel.is_zero() && a.image.is_whole()) {
            return None;
        }
        let images = (0..self.cod.rank())
            .map(|j| a.preimage(&self.cod.shape().gen(j)).expect("surjective"))
            .collect();
        Some(ModuleHom { dom: self.cod.clone(), cod: self.dom.clone(), images })
    }

    /// `self` restricted to a submodule of the domain.
    pub fn restrict(&self, sub: &SubmoduleModule) -> ModuleHom {
        self.compose(&sub.inclusion)
    }

    /// `self` with codomain cut down to a submodule containing the image.
    pub fn corestrict(&self, sub: &SubmoduleModule) -> Result<ModuleHom, HomError> {
        let images = self
            .images
            .iter()
            .map(|y| sub.encode(y).ok_or(HomError::NotContained))
            .collect::<Result<_, _>>()?;
        Ok(ModuleHom { dom: self.dom.clone(), cod: sub.module.clone(), images })
    }

    /// All generator images concatenated, an element of `cod^rank(dom)`.
    pub fn flatten(&self) -> Coords {
        self.images.concat()
    }
}

/// `Hom_R(M, N)` as a finite abelian group with an independent generating set.
///
/// A hom is determined by its values on a set of R-generators `x_k` of `M`;
/// the admissible value tuples are those killed by every R-relation among
/// the `x_k`, which is a subgroup of `N^g`.
#[derive(Clone, Debug)]
pub struct HomGroup {
    dom: Arc<FiniteModule>,
    cod: Arc<FiniteModule>,
    rgens: Vec<Coords>,
    /// `f_j = sum_k coeffs[j][k] * x_k`.
    coeffs: Vec<Vec<Coords>>,
    presentation: SubgroupPresentation,
    gens: Vec<ModuleHom>,
}

pub fn hom_group(dom: &Arc<FiniteModule>, cod: &Arc<FiniteModule>) -> Result<HomGroup, HomError> {
    if !same_ring(dom.ring(), cod.ring()) {
        return Err(HomError::RingMismatch);
    }
    let ring = dom.ring();
    let t = ring.rank();
    let rgens = dom.ring_generators();
    let g = rgens.len();

    // Phi : R^g -> M, (r_k) |-> sum r_k x_k.
    let free = ring.shape().repeat(g);
    let phi_images: Vec<Coords> = (0..g)
        .flat_map(|k| (0..t).map(move |i| (k, i)))
        .map(|(k, i)| dom.act_gen(i, &rgens[k]))
        .collect();
    let phi = GroupMap::new(free, dom.shape().clone(), phi_images).expect("action is well defined").analyze();
    let split = |v: &[u64]| -> Vec<Coords> { v.chunks(t.max(1)).take(g).map(<[u64]>::to_vec).collect() };
    let coeffs: Vec<Vec<Coords>> = (0..dom.rank())
        .map(|j| split(&phi.preimage(&dom.shape().gen(j)).expect("x_k generate M")))
        .collect();
    let relations: Vec<Vec<Coords>> = phi.kernel.rows().iter().map(|r| split(r)).collect();

    // Psi : N^g -> N^#rel, (y_k) |-> (sum_k rho_k y_k)_rho.
    let v = cod.rank();
    let unknowns = cod.shape().repeat(g);
    let targets = cod.shape().repeat(relations.len());
    let psi_images: Vec<Coords> = (0..g)
        .flat_map(|k| (0..v).map(move |l| (k, l)))
        .map(|(k, l)| {
            let f = cod.shape().gen(l);
            relations.iter().flat_map(|rho| cod.act(&rho[k], &f)).collect()
        })
        .collect();
    let psi = GroupMap::new(unknowns, targets, psi_images).expect("action is well defined").analyze();
    let presentation = SubgroupPresentation::new(&psi.kernel);

    let mut h = HomGroup { dom: dom.clone(), cod: cod.clone(), rgens, coeffs, presentation, gens: Vec::new() };
    h.gens = h.presentation.gens.iter().map(|y| h.from_values(y)).collect();
    Ok(h)
}

impl HomGroup {
    fn from_values(&self, y: &[u64]) -> ModuleHom {
        let v = self.cod.rank();
        let values: Vec<&[u64]> = y.chunks(v.max(1)).take(self.rgens.len()).collect();
        let s = self.cod.shape();
        let images = self
            .coeffs
            .iter()
            .map(|c| {
                let mut acc = s.zero();
                for (r, val) in c.iter().zip(&values) {
                    let term = self.cod.act(r, val);
                    acc = s.add(&acc, &term);
                }
                acc
            })
            .collect();
        ModuleHom::new_unchecked(self.dom.clone(), self.cod.clone(), images)
    }

    pub fn dom(&self) -> &Arc<FiniteModule> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteModule> {
        &self.cod
    }

    pub fn gens(&self) -> &[ModuleHom] {
        &self.gens
    }

    /// Orders of the generators.
    pub fn shape(&self) -> &GroupShape {
        &self.presentation.shape
    }

    pub fn order(&self) -> BigUint {
        self.shape().order()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The R-generators of the domain that homs are evaluated on.
    pub fn domain_generators(&self) -> &[Coords] {
        &self.rgens
    }

    /// Coordinates of `f` over `gens`.
    pub fn encode(&self, f: &ModuleHom) -> Coords {
        let values: Coords = self.rgens.iter().flat_map(|x| f.apply(x)).collect();
        self.presentation.encode(&values).expect("f is R-linear")
    }

    pub fn decode(&self, c: &[u64]) -> ModuleHom {
        self.from_values(&self.presentation.decode(c))
    }
}

/// `End_R(M)` as a finite ring, with coordinates matching `hom_group(M, M)`.
#[derive(Clone, Debug)]
pub struct EndRing {
    pub ring: Arc<FiniteRing>,
    pub homs: HomGroup,
}

pub fn end_ring(m: &Arc<FiniteModule>) -> EndRing {
    let homs = hom_group(m, m).expect("same ring");
    let mul = homs
        .gens()
        .iter()
        .map(|a| homs.gens().iter().map(|b| homs.encode(&a.compose(b))).collect())
        .collect();
    let one = homs.encode(&ModuleHom::identity(m));
    let ring = Arc::new(FiniteRing::new_unchecked(homs.shape().clone(), mul, one));
    debug_assert!(ring.validate().is_ok());
    EndRing { ring, homs }
}

impl EndRing {
    pub fn module(&self) -> &Arc<FiniteModule> {
        self.homs.dom()
    }

    pub fn encode(&self, f: &ModuleHom) -> Coords {
        self.homs.encode(f)
    }

    pub fn decode(&self, c: &[u64]) -> ModuleHom {
        self.homs.decode(c)
    }
}

/// `Hom_R(M2, M1)` as a left module over `End_R(M1)`, acting by composition.
#[derive(Clone, Debug)]
pub struct HomModule {
    pub module: Arc<FiniteModule>,
    pub homs: HomGroup,
}

pub fn hom_as_end_module(end: &EndRing, m2: &Arc<FiniteModule>) -> HomModule {
    let homs = hom_group(m2, end.module()).expect("same ring");
    let action = end
        .homs
        .gens()
        .iter()
        .map(|e| homs.gens().iter().map(|k| homs.encode(&e.compose(k))).collect())
        .collect();
    let module = Arc::new(FiniteModule::new_unchecked(end.ring.clone(), homs.shape().clone(), action));
    debug_assert!(module.validate().is_ok());
    HomModule { module, homs }
}

impl HomModule {
    pub fn encode(&self, f: &ModuleHom) -> Coords {
        self.homs.encode(f)
    }

    pub fn decode(&self, c: &[u64]) -> ModuleHom {
        self.homs.decode(c)
    }
}

/// Some `g : M2 -> M1` with `g ∘ f = x`, for `f : M1 -> M2` and `x` an
/// endomorphism of `M1`.
pub fn divide_right(f: &ModuleHom, x: &ModuleHom) -> Option<ModuleHom> {
    let m1 = f.dom();
    let homs = hom_group(f.cod(), m1).ok()?;
    let target = m1.shape().repeat(m1.rank());
    let images = homs.gens().iter().map(|c| c.compose(f).flatten()).collect();
    let map = GroupMap::new(homs.shape().clone(), target, images).expect("orders annihilate").analyze();
    let c = map.preimage(&x.flatten())?;
    let g = homs.decode(&c);
    debug_assert_eq!(g.compose(f), *x);
    Some(g)
}

/// Projections onto `U` along `V` and onto `V` along `U`.
pub fn internal_projections(m: &Arc<FiniteModule>, u: &Submodule, v: &Submodule) -> Result<(ModuleHom, ModuleHom), HomError> {
    if !u.intersection(v).is_zero() || u.order() * v.order() != m.order() {
        return Err(HomError::NotComplementary);
    }
    let s = m.shape();
    let ub = u.basis().rows();
    let vb = v.basis().rows();
    let orders: Vec<u64> = ub.iter().chain(&vb).map(|r| s.element_order(r)).collect();
    let shape = GroupShape::new(orders).expect("orders divide the exponent");
    let all: Vec<Coords> = ub.iter().chain(&vb).cloned().collect();
    let map = GroupMap::new(shape, s.clone(), all).expect("orders annihilate").analyze();
    let mut pu = Vec::with_capacity(m.rank());
    let mut pv = Vec::with_capacity(m.rank());
    for j in 0..m.rank() {
        let c = map.preimage(&s.gen(j)).expect("U + V = M");
        let mut a = s.zero();
        for (k, row) in ub.iter().enumerate() {
            s.add_scaled(&mut a, c[k], row);
        }
        pv.push(s.sub(&s.gen(j), &a));
        pu.push(a);
    }
    Ok((ModuleHom::new_unchecked(m.clone(), m.clone(), pu), ModuleHom::new_unchecked(m.clone(), m.clone(), pv)))
}
