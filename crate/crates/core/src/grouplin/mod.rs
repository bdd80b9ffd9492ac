//! Exact linear algebra over finite abelian groups presented as direct sums
//! of cyclic groups `Z/n_1 + ... + Z/n_t`.
//!
//! Subgroups are stored in a canonical echelon form (a Howell form after
//! embedding the group into `(Z/L)^t`, `L` the exponent), so equality of
//! subgroups is equality of values. Homomorphisms are given by the images of
//! the standard generators; kernels, images and preimages all come out of a
//! single echelon form of the graph of the map.

mod arith;
mod howell;
mod snf;

use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

pub use arith::MAX_MODULUS;
pub(crate) use arith::{add_mod, gcd, mul_mod, neg_mod, sub_mod};

use arith::checked_lcm;
use howell::Howell;

/// Coordinates of a group element, reduced modulo the orders of its shape.
pub type Coords = Vec<u64>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("cyclic factor {0} has order 0")]
    ZeroOrder(usize),
    #[error("group exponent exceeds the supported bound {MAX_MODULUS}")]
    ExponentTooLarge,
    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("generator {0} of the domain does not annihilate its image")]
    IllDefined(usize),
}

/// Orders of the cyclic factors of a finite abelian group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupShape {
    orders: Vec<u64>,
    exponent: u64,
}

impl fmt::Debug for GroupShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupShape{:?}", self.orders)
    }
}

impl GroupShape {
    pub fn new(orders: Vec<u64>) -> Result<Self, GroupError> {
        let mut exponent = 1;
        for (i, &n) in orders.iter().enumerate() {
            if n == 0 {
                return Err(GroupError::ZeroOrder(i));
            }
            exponent = checked_lcm(exponent, n).ok_or(GroupError::ExponentTooLarge)?;
        }
        Ok(GroupShape { orders, exponent })
    }

    pub fn trivial() -> Self {
        GroupShape { orders: Vec::new(), exponent: 1 }
    }

    /// `count` copies of `self` side by side.
    pub fn repeat(&self, count: usize) -> Self {
        GroupShape {
            orders: self.orders.repeat(count),
            exponent: if count == 0 { 1 } else { self.exponent },
        }
    }

    /// Block direct sum of several shapes.
    pub fn concat<'a>(shapes: impl IntoIterator<Item = &'a GroupShape>) -> Result<Self, GroupError> {
        let orders = shapes.into_iter().flat_map(|s| s.orders.iter().copied()).collect();
        GroupShape::new(orders)
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    /// Least common multiple of the orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> BigUint {
        self.orders.iter().fold(BigUint::from(1u32), |acc, &n| acc * n)
    }

    pub fn is_trivial(&self) -> bool {
        self.orders.iter().all(|&n| n == 1)
    }

    pub fn zero(&self) -> Coords {
        vec![0; self.rank()]
    }

    /// The `i`-th standard generator.
    pub fn gen(&self, i: usize) -> Coords {
        let mut v = self.zero();
        v[i] = 1 % self.orders[i];
        v
    }

    pub fn check(&self, x: &[u64]) -> Result<(), GroupError> {
        if x.len() != self.rank() {
            return Err(GroupError::DimensionMismatch { expected: self.rank(), got: x.len() });
        }
        Ok(())
    }

    pub fn is_reduced(&self, x: &[u64]) -> bool {
        x.len() == self.rank() && x.iter().zip(&self.orders).all(|(&c, &n)| c < n)
    }

    pub fn reduce(&self, x: &mut [u64]) {
        for (c, &n) in x.iter_mut().zip(&self.orders) {
            *c %= n;
        }
    }

    /// Reduces arbitrary signed integer coordinates.
    pub fn reduce_signed(&self, x: &[i64]) -> Coords {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &n)| (c as i128).rem_euclid(n as i128) as u64)
            .collect()
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&c| c == 0)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Coords {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &n)| add_mod(a, b, n)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Coords {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &n)| sub_mod(a, b, n)).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Coords {
        x.iter().zip(&self.orders).map(|(&a, &n)| neg_mod(a, n)).collect()
    }

    pub fn scale(&self, k: u64, x: &[u64]) -> Coords {
        x.iter().zip(&self.orders).map(|(&a, &n)| mul_mod(k % n, a, n)).collect()
    }

    /// `acc += k * x`.
    pub fn add_scaled(&self, acc: &mut [u64], k: u64, x: &[u64]) {
        if k == 0 {
            return;
        }
        for ((a, &b), &n) in acc.iter_mut().zip(x).zip(&self.orders) {
            if b != 0 {
                *a = add_mod(*a, mul_mod(k % n, b, n), n);
            }
        }
    }

    /// Additive order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.orders).fold(1, |acc, (&c, &n)| {
            let o = n / gcd(c, n);
            checked_lcm(acc, o).expect("divides the exponent")
        })
    }

    /// All elements in lexicographic order (first coordinate most significant).
    pub fn elements(&self) -> Elements<'_> {
        Elements { shape: self, next: Some(self.zero()) }
    }

    fn embed(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&c, &n)| c * (self.exponent / n)).collect()
    }

    fn unembed(&self, x: &[u64]) -> Coords {
        x.iter()
            .zip(&self.orders)
            .map(|(&c, &n)| {
                let s = self.exponent / n;
                debug_assert_eq!(c % s, 0);
                c / s
            })
            .collect()
    }
}

pub struct Elements<'a> {
    shape: &'a GroupShape,
    next: Option<Coords>,
}

impl Iterator for Elements<'_> {
    type Item = Coords;

    fn next(&mut self) -> Option<Coords> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.shape.orders[i] {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

/// Canonical basis of a subgroup.
///
/// Two subgroups of the same shape are equal exactly when their bases are
/// equal as values.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupBasis {
    shape: GroupShape,
    echelon: Howell,
    order: BigUint,
}

impl SubgroupBasis {
    pub fn zero(shape: &GroupShape) -> Self {
        canonical_subgroup(shape, &[]).expect("empty generating set")
    }

    pub fn whole(shape: &GroupShape) -> Self {
        let gens: Vec<Coords> = (0..shape.rank()).map(|i| shape.gen(i)).collect();
        canonical_subgroup(shape, &gens).expect("standard generators")
    }

    pub fn shape(&self) -> &GroupShape {
        &self.shape
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.echelon.rows.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.order == self.shape.order()
    }

    pub fn len(&self) -> usize {
        self.echelon.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.echelon.rows.is_empty()
    }

    /// Basis rows in the coordinates of the ambient shape.
    pub fn rows(&self) -> Vec<Coords> {
        self.echelon.rows.iter().map(|r| self.shape.unembed(r)).collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        member(self, x).is_some()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupBasis) -> bool {
        self.rows().iter().all(|r| other.contains(r))
    }
}

/// Returns the canonical basis of the subgroup generated by `gens`.
pub fn canonical_subgroup(shape: &GroupShape, gens: &[Coords]) -> Result<SubgroupBasis, GroupError> {
    let mut rows = Vec::with_capacity(gens.len());
    for g in gens {
        shape.check(g)?;
        let mut g = g.clone();
        shape.reduce(&mut g);
        rows.push(shape.embed(&g));
    }
    let l = shape.exponent();
    let echelon = Howell::new(rows, shape.rank(), l);
    let order = echelon
        .rows
        .iter()
        .zip(&echelon.pivots)
        .fold(BigUint::from(1u32), |acc, (r, &p)| acc * (l / r[p]));
    Ok(SubgroupBasis { shape: shape.clone(), echelon, order })
}

/// Integer coefficients expressing `x` over the rows of `basis`, if `x` lies
/// in the subgroup.
pub fn member(basis: &SubgroupBasis, x: &[u64]) -> Option<Vec<u64>> {
    if basis.shape.check(x).is_err() {
        return None;
    }
    let mut x = x.to_vec();
    basis.shape.reduce(&mut x);
    basis.echelon.decompose(&basis.shape.embed(&x))
}

pub fn subgroup_sum(a: &SubgroupBasis, b: &SubgroupBasis) -> SubgroupBasis {
    let mut rows = a.rows();
    rows.extend(b.rows());
    canonical_subgroup(&a.shape, &rows).expect("same shape")
}

pub fn subgroup_intersection(a: &SubgroupBasis, b: &SubgroupBasis) -> SubgroupBasis {
    let shape = &a.shape;
    let (ra, rb) = (a.rows(), b.rows());
    let orders: Vec<u64> = ra.iter().chain(&rb).map(|r| shape.element_order(r)).collect();
    let domain = GroupShape::new(orders).expect("divides the exponent");
    let images: Vec<Coords> = ra.iter().cloned().chain(rb.iter().map(|r| shape.neg(r))).collect();
    let map = GroupMap::new(domain, shape.clone(), images).expect("orders annihilate rows");
    let kernel = map.analyze().kernel;
    let gens: Vec<Coords> = kernel
        .rows()
        .iter()
        .map(|c| {
            let mut acc = shape.zero();
            for (k, r) in ra.iter().enumerate() {
                shape.add_scaled(&mut acc, c[k], r);
            }
            acc
        })
        .collect();
    canonical_subgroup(shape, &gens).expect("same shape")
}

/// A homomorphism between presented groups, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    pub domain: GroupShape,
    pub codomain: GroupShape,
    pub images: Vec<Coords>,
}

impl GroupMap {
    pub fn new(domain: GroupShape, codomain: GroupShape, mut images: Vec<Coords>) -> Result<Self, GroupError> {
        if images.len() != domain.rank() {
            return Err(GroupError::DimensionMismatch { expected: domain.rank(), got: images.len() });
        }
        for (j, y) in images.iter_mut().enumerate() {
            codomain.check(y)?;
            codomain.reduce(y);
            if !codomain.is_zero(&codomain.scale(domain.orders[j], y)) {
                return Err(GroupError::IllDefined(j));
            }
        }
        Ok(GroupMap { domain, codomain, images })
    }

    pub fn apply(&self, x: &[u64]) -> Coords {
        let mut acc = self.codomain.zero();
        for (&c, y) in x.iter().zip(&self.images) {
            self.codomain.add_scaled(&mut acc, c, y);
        }
        acc
    }

    /// Echelon form of the graph, giving image, kernel and preimages.
    pub fn analyze(&self) -> MapEchelon {
        let (dom, cod) = (&self.domain, &self.codomain);
        let l = checked_lcm(dom.exponent(), cod.exponent()).expect("exponents are bounded");
        let (nc, nd) = (cod.rank(), dom.rank());
        let scale = |n: u64| l / n;
        let rows: Vec<Vec<u64>> = self
            .images
            .iter()
            .enumerate()
            .map(|(k, y)| {
                let mut row = Vec::with_capacity(nc + nd);
                row.extend(y.iter().zip(cod.orders()).map(|(&c, &n)| c * scale(n)));
                row.extend((0..nd).map(|j| if j == k { (1 % dom.orders[j]) * scale(dom.orders[j]) } else { 0 }));
                row
            })
            .collect();
        let graph = Howell::new(rows, nc + nd, l);
        let split = graph.pivots.iter().take_while(|&&p| p < nc).count();
        let image_gens: Vec<Coords> = graph.rows[..split]
            .iter()
            .map(|r| r[..nc].iter().zip(cod.orders()).map(|(&c, &n)| c / scale(n)).collect())
            .collect();
        let kernel_gens: Vec<Coords> = graph.rows[split..]
            .iter()
            .map(|r| r[nc..].iter().zip(dom.orders()).map(|(&c, &n)| c / scale(n)).collect())
            .collect();
        MapEchelon {
            image: canonical_subgroup(cod, &image_gens).expect("codomain shape"),
            kernel: canonical_subgroup(dom, &kernel_gens).expect("domain shape"),
            map: self.clone(),
            graph,
            split,
            lcm: l,
        }
    }
}

/// Image, kernel and a preimage oracle for a [`GroupMap`].
#[derive(Clone, Debug)]
pub struct MapEchelon {
    pub map: GroupMap,
    pub image: SubgroupBasis,
    pub kernel: SubgroupBasis,
    graph: Howell,
    split: usize,
    lcm: u64,
}

impl MapEchelon {
    /// Some `x` with `map(x) = b`, if one exists.
    pub fn preimage(&self, b: &[u64]) -> Option<Coords> {
        let (dom, cod) = (&self.map.domain, &self.map.codomain);
        if cod.check(b).is_err() {
            return None;
        }
        let (nc, nd) = (cod.rank(), dom.rank());
        let l = self.lcm;
        let mut v: Vec<u64> = b.iter().zip(cod.orders()).map(|(&c, &n)| (c % n) * (l / n)).collect();
        v.extend(std::iter::repeat_n(0, nd));
        self.graph.reduce_by(&mut v, 0..self.split);
        if v[..nc].iter().any(|&c| c != 0) {
            return None;
        }
        let x: Coords = v[nc..]
            .iter()
            .zip(dom.orders())
            .map(|(&c, &n)| {
                let s = l / n;
                debug_assert_eq!(c % s, 0);
                arith::neg_mod(c / s, n)
            })
            .collect();
        debug_assert_eq!(self.map.apply(&x), {
            let mut bb = b.to_vec();
            cod.reduce(&mut bb);
            bb
        });
        Some(x)
    }
}

/// Image and kernel of the map sending domain generator `j` to `images[j]`.
pub fn image_and_kernel(
    images: &[Coords],
    domain: &GroupShape,
    codomain: &GroupShape,
) -> Result<(SubgroupBasis, SubgroupBasis), GroupError> {
    let m = GroupMap::new(domain.clone(), codomain.clone(), images.to_vec())?.analyze();
    Ok((m.image, m.kernel))
}

/// A system `A x = b` with the equation for row `i` taken modulo
/// `moduli[i]` and unknown `k` ranging over `Z/unknowns[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub unknowns: GroupShape,
    pub moduli: GroupShape,
    /// Row-major coefficients, `moduli.rank()` rows by `unknowns.rank()` columns.
    pub matrix: Vec<Vec<i64>>,
    pub rhs: Vec<i64>,
}

impl LinearSystem {
    pub fn new(unknowns: GroupShape, moduli: GroupShape, matrix: Vec<Vec<i64>>, rhs: Vec<i64>) -> Result<Self, GroupError> {
        if matrix.len() != moduli.rank() {
            return Err(GroupError::DimensionMismatch { expected: moduli.rank(), got: matrix.len() });
        }
        if rhs.len() != moduli.rank() {
            return Err(GroupError::DimensionMismatch { expected: moduli.rank(), got: rhs.len() });
        }
        for row in &matrix {
            if row.len() != unknowns.rank() {
                return Err(GroupError::DimensionMismatch { expected: unknowns.rank(), got: row.len() });
            }
        }
        Ok(LinearSystem { unknowns, moduli, matrix, rhs })
    }

    /// Integer unknowns: these only matter modulo the exponent of the moduli.
    pub fn over_integers(moduli: GroupShape, matrix: Vec<Vec<i64>>, rhs: Vec<i64>) -> Result<Self, GroupError> {
        let n = matrix.first().map_or(0, Vec::len);
        let unknowns = GroupShape::new(vec![moduli.exponent(); n])?;
        LinearSystem::new(unknowns, moduli, matrix, rhs)
    }

    fn as_map(&self) -> Result<GroupMap, GroupError> {
        let columns: Vec<Coords> = (0..self.unknowns.rank())
            .map(|k| {
                let col: Vec<i64> = self.matrix.iter().map(|row| row[k]).collect();
                self.moduli.reduce_signed(&col)
            })
            .collect();
        GroupMap::new(self.unknowns.clone(), self.moduli.clone(), columns)
    }

    pub fn satisfied_by(&self, x: &[u64]) -> bool {
        self.matrix.iter().zip(&self.rhs).zip(self.moduli.orders()).all(|((row, &b), &n)| {
            let n = n as i128;
            let lhs: i128 = row.iter().zip(x).map(|(&a, &xi)| (a as i128).rem_euclid(n) * xi as i128 % n).sum();
            (lhs - b as i128).rem_euclid(n) == 0
        })
    }
}

/// One solution and generators of the homogeneous solution group, or `None`
/// when the system is inconsistent.
pub fn solve(sys: &LinearSystem) -> Result<Option<(Coords, Vec<Coords>)>, GroupError> {
    let echelon = sys.as_map()?.analyze();
    let rhs = sys.moduli.reduce_signed(&sys.rhs);
    Ok(echelon.preimage(&rhs).map(|x| (x, echelon.kernel.rows())))
}

/// A quotient group `G/U` presented as a direct sum of cyclic groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGroup {
    pub ambient: GroupShape,
    pub shape: GroupShape,
    /// Image of each ambient generator.
    pub projection: Vec<Coords>,
    /// A chosen preimage of each quotient generator.
    pub lifts: Vec<Coords>,
}

impl QuotientGroup {
    pub fn project(&self, x: &[u64]) -> Coords {
        let mut acc = self.shape.zero();
        for (&c, y) in x.iter().zip(&self.projection) {
            self.shape.add_scaled(&mut acc, c, y);
        }
        acc
    }

    pub fn lift(&self, y: &[u64]) -> Coords {
        let mut acc = self.ambient.zero();
        for (&c, x) in y.iter().zip(&self.lifts) {
            self.ambient.add_scaled(&mut acc, c, x);
        }
        acc
    }

    pub fn projection_map(&self) -> GroupMap {
        GroupMap::new(self.ambient.clone(), self.shape.clone(), self.projection.clone()).expect("well defined")
    }
}

/// Presents `shape / sub`; trivial cyclic factors are dropped.
pub fn quotient(shape: &GroupShape, sub: &SubgroupBasis) -> QuotientGroup {
    let e = shape.exponent();
    let t = shape.rank();
    let mut rels = sub.rows();
    for (i, &n) in shape.orders().iter().enumerate() {
        let mut r = vec![0; t];
        r[i] = n % e;
        rels.push(r);
    }
    let d = snf::diagonalize(rels, t, e);
    let keep: Vec<usize> = (0..t).filter(|&k| d.orders[k] > 1).collect();
    let qshape = GroupShape::new(keep.iter().map(|&k| d.orders[k]).collect()).expect("divides the exponent");
    let projection = (0..t)
        .map(|i| keep.iter().map(|&k| d.q[i][k] % d.orders[k]).collect())
        .collect();
    let lifts = keep
        .iter()
        .map(|&k| d.q_inv[k].iter().zip(shape.orders()).map(|(&c, &n)| c % n).collect())
        .collect();
    let q = QuotientGroup { ambient: shape.clone(), shape: qshape, projection, lifts };
    debug_assert_eq!(q.shape.order() * sub.order(), shape.order());
    q
}

/// A subgroup given its own cyclic decomposition, with coordinate maps in
/// both directions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPresentation {
    pub basis: SubgroupBasis,
    /// Orders of the new generators.
    pub shape: GroupShape,
    /// The new generators, in ambient coordinates.
    pub gens: Vec<Coords>,
    row_orders: GroupShape,
    coeff_projection: QuotientGroup,
}

impl SubgroupPresentation {
    pub fn new(basis: &SubgroupBasis) -> Self {
        let ambient = basis.shape();
        let rows = basis.rows();
        let row_orders = GroupShape::new(rows.iter().map(|r| ambient.element_order(r)).collect()).expect("bounded");
        let map = GroupMap::new(row_orders.clone(), ambient.clone(), rows.clone()).expect("orders annihilate rows");
        let kernel = map.analyze().kernel;
        let coeff_projection = quotient(&row_orders, &kernel);
        let gens = coeff_projection.lifts.iter().map(|c| map.apply(c)).collect();
        SubgroupPresentation {
            basis: basis.clone(),
            shape: coeff_projection.shape.clone(),
            gens,
            row_orders,
            coeff_projection,
        }
    }

    /// Coordinates of `x` over the new generators, if `x` is in the subgroup.
    pub fn encode(&self, x: &[u64]) -> Option<Coords> {
        let mut c = member(&self.basis, x)?;
        self.row_orders.reduce(&mut c);
        Some(self.coeff_projection.project(&c))
    }

    pub fn decode(&self, y: &[u64]) -> Coords {
        let ambient = self.basis.shape();
        let mut acc = ambient.zero();
        for (&c, g) in y.iter().zip(&self.gens) {
            ambient.add_scaled(&mut acc, c, g);
        }
        acc
    }
}
