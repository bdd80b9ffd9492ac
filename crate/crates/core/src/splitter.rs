//! Splitters, Fitting decompositions and the search for a largest common
//! direct summand of two modules.

use std::sync::Arc;

use num_bigint::BigUint;

use crate::homspace::{divide_right, end_ring, hom_group, internal_projections, EndRing, HomGroup, ModuleHom};
use crate::nilpotency::{find_non_nilpotent, ideal_is_nilpotent};
use crate::structures::{FiniteModule, LeftIdeal, Submodule, SubmoduleModule};

/// Some `g : M2 -> M1` with `g ∘ f` non-nilpotent, if `f : M1 -> M2` is a
/// splitter.
pub fn is_splitter(f: &ModuleHom) -> Option<ModuleHom> {
    let end = end_ring(f.dom());
    let back = hom_group(f.cod(), f.dom()).expect("same ring");
    splitter_witness(&end, &back, f)
}

/// As [`is_splitter`], reusing `End(M1)` and `Hom(M2, M1)`.
pub(crate) fn splitter_witness(end: &EndRing, back: &HomGroup, f: &ModuleHom) -> Option<ModuleHom> {
    let elems: Vec<_> = back.gens().iter().map(|c| end.encode(&c.compose(f))).collect();
    let ideal = LeftIdeal::generated(&end.ring, &elems).expect("ring shape");
    if ideal_is_nilpotent(&ideal) {
        return None;
    }
    let cert = find_non_nilpotent(&ideal).expect("ideal is not nilpotent");
    let x = end.decode(&cert.element);
    let g = divide_right(f, &x).expect("every element of the ideal has the form g f");
    debug_assert!(!g.compose(f).is_nilpotent_endo());
    Some(g)
}

/// `M = kernel(s^d) + image(s^d)` for an endomorphism `s`.
#[derive(Clone, Debug)]
pub struct Fitting {
    pub exponent: u64,
    pub kernel: Submodule,
    pub image: Submodule,
    /// Idempotent with image `kernel` and kernel `image`.
    pub onto_kernel: ModuleHom,
    /// Idempotent with image `image` and kernel `kernel`.
    pub onto_image: ModuleHom,
}

/// Fitting decomposition with `d` the least power of two above the length
/// bound of the module.
pub fn fitting(s: &ModuleHom) -> Fitting {
    let m = s.dom();
    let bound = m.length_bound() + 1;
    let mut d = 1u64;
    let mut power = s.clone();
    while d < bound {
        power = power.compose(&power);
        d *= 2;
    }
    let kernel = power.kernel();
    let image = power.image();
    let (onto_kernel, onto_image) = internal_projections(m, &kernel, &image).expect("Fitting decomposition");
    Fitting { exponent: d, kernel, image, onto_kernel, onto_image }
}

/// A decomposition `M1 = N1 + K1`, `M2 = N2 + K2` with `f` mapping `N1`
/// isomorphically onto `N2`.
#[derive(Clone, Debug)]
pub struct FDecomposition {
    pub n1: Submodule,
    pub k1: Submodule,
    pub n2: Submodule,
    pub k2: Submodule,
    pub n1_module: SubmoduleModule,
    pub n2_module: SubmoduleModule,
    /// `f` restricted to `N1` and corestricted to `N2`.
    pub iso: ModuleHom,
    /// Projection of `M1` onto `N1` along `K1`.
    pub p1: ModuleHom,
    /// Projection of `M2` onto `N2` along `K2`.
    pub p2: ModuleHom,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("g ∘ f is nilpotent")]
pub struct NilpotentComposite;

pub fn f_decomposition(f: &ModuleHom, g: &ModuleHom) -> Result<FDecomposition, NilpotentComposite> {
    let s = g.compose(f);
    let t = f.compose(g);
    let fs = fitting(&s);
    if fs.image.is_zero() {
        return Err(NilpotentComposite);
    }
    let ft = fitting(&t);
    let n1_module = fs.image.as_module();
    let n2_module = ft.image.as_module();
    let iso = f.restrict(&n1_module).corestrict(&n2_module).expect("f maps im(s^d) into im(t^d)");
    assert!(iso.is_bijective(), "f restricts to an isomorphism im(s^d) -> im(t^d)");
    debug_assert!(f.kernel().is_submodule_of(&fs.kernel));
    Ok(FDecomposition {
        n1: fs.image,
        k1: fs.kernel,
        n2: ft.image,
        k2: ft.kernel,
        n1_module,
        n2_module,
        iso,
        p1: fs.onto_image,
        p2: ft.onto_image,
    })
}

/// One peeled pair of isomorphic summands inside the original modules.
#[derive(Clone, Debug)]
pub struct Piece {
    pub a: Submodule,
    pub b: Submodule,
    /// Restricts to an isomorphism `a -> b` and vanishes on the other pieces
    /// and the final residual.
    pub map: ModuleHom,
}

#[derive(Clone, Debug)]
pub struct CommonSummand {
    pub a: Submodule,
    pub b: Submodule,
    pub f_total: ModuleHom,
    pub pieces: Vec<Piece>,
    /// Complements of `a` and `b` left over at the end.
    pub residual1: Submodule,
    pub residual2: Submodule,
}

impl CommonSummand {
    /// `f_total` maps `a` injectively onto `b`.
    pub fn verify(&self) -> bool {
        let m1 = self.a.ambient();
        let sub = self.a.as_module();
        let restricted = self.f_total.restrict(&sub);
        restricted.is_injective()
            && restricted.image() == self.b
            && self.a.intersection(&self.residual1).is_zero()
            && self.a.order() * self.residual1.order() == m1.order()
            && self.b.intersection(&self.residual2).is_zero()
            && self.b.order() * self.residual2.order() == self.b.ambient().order()
    }
}

/// A residual summand `R` of an original module `M`, with `ι : R -> M` and
/// `π : M -> R`, `π ι = id`.
struct Residual {
    module: Arc<FiniteModule>,
    incl: ModuleHom,
    proj: ModuleHom,
}

impl Residual {
    fn new(m: &Arc<FiniteModule>) -> Self {
        Residual { module: m.clone(), incl: ModuleHom::identity(m), proj: ModuleHom::identity(m) }
    }

    /// Passes to the complement `k` of a summand with projection `onto_k`.
    fn shrink(&mut self, k: &Submodule, onto_k: &ModuleHom) {
        let sub = k.as_module();
        let p = onto_k.corestrict(&sub).expect("projection lands in its image");
        self.proj = p.compose(&self.proj);
        self.incl = self.incl.compose(&sub.inclusion);
        self.module = sub.module;
    }

    fn image_of(&self, sub: &Submodule) -> Submodule {
        let rows: Vec<_> = sub.basis().rows().iter().map(|x| self.incl.apply(x)).collect();
        Submodule::generated(self.incl.cod(), &rows).expect("module shape")
    }
}

pub fn common_summand(m1: &Arc<FiniteModule>, m2: &Arc<FiniteModule>) -> CommonSummand {
    let mut r1 = Residual::new(m1);
    let mut r2 = Residual::new(m2);
    let mut pieces = Vec::new();
    let mut f_total = ModuleHom::zero(m1, m2);
    loop {
        if r1.module.is_zero() || r2.module.is_zero() {
            break;
        }
        let forward = hom_group(&r1.module, &r2.module).expect("same ring");
        if forward.is_zero() {
            break;
        }
        let end = end_ring(&r1.module);
        let back = hom_group(&r2.module, &r1.module).expect("same ring");
        let found = forward
            .gens()
            .iter()
            .find_map(|f| splitter_witness(&end, &back, f).map(|g| (f.clone(), g)));
        let Some((f, g)) = found else { break };
        let fd = f_decomposition(&f, &g).expect("witness has a non-nilpotent composite");
        let map = r2.incl.compose(&f).compose(&fd.p1).compose(&r1.proj);
        let a = r1.image_of(&fd.n1);
        let b = r2.image_of(&fd.n2);
        f_total = f_total.add(&map);
        pieces.push(Piece { a, b, map });
        let onto_k1 = ModuleHom::identity(&r1.module).sub(&fd.p1);
        let onto_k2 = ModuleHom::identity(&r2.module).sub(&fd.p2);
        r1.shrink(&fd.k1, &onto_k1);
        r2.shrink(&fd.k2, &onto_k2);
    }
    let a = pieces.iter().fold(Submodule::zero(m1), |acc, p| acc.sum(&p.a));
    let b = pieces.iter().fold(Submodule::zero(m2), |acc, p| acc.sum(&p.b));
    let residual1 = r1.incl.image();
    let residual2 = r2.incl.image();
    let result = CommonSummand { a, b, f_total, pieces, residual1, residual2 };
    debug_assert!(result.verify());
    result
}

/// An isomorphism `M1 -> M2` found by peeling common summands, if one exists.
pub fn iso_splitter(m1: &Arc<FiniteModule>, m2: &Arc<FiniteModule>) -> Option<ModuleHom> {
    let cs = common_summand(m1, m2);
    if cs.a.order() != m1.order() || cs.b.order() != m2.order() {
        return None;
    }
    assert!(cs.f_total.is_bijective(), "f_total restricted to a = M1 is bijective onto b = M2");
    Some(cs.f_total)
}

/// Order of the common summand found by [`common_summand`].
pub fn common_summand_order(m1: &Arc<FiniteModule>, m2: &Arc<FiniteModule>) -> BigUint {
    common_summand(m1, m2).a.order()
}
