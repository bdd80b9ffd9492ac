//! Minimum generator counts for modules and the isomorphism test through
//! `Hom(M2, M1)` as a module over `End(M1)`.
//!
//! The candidate list `S_1, ..., S_t` approximates the simple modules of the
//! ring. Whenever the computation stumbles on a proper nonzero submodule of
//! a candidate, or on a nonzero map between two candidates, the list is
//! refined and the computation restarts.

use std::sync::Arc;

use crate::grouplin::{canonical_subgroup, Coords};
use crate::homspace::{end_ring, hom_as_end_module, hom_group, ModuleHom};
use crate::structures::{
    annihilator_of, direct_sum, regular_module, DirectSum, FiniteModule, FiniteRing, LeftIdeal, QuotientModule,
    Submodule,
};

/// `R/a ≅ S_1^{a_1} + ... + S_t^{a_t}` with `a` a nilpotent two-sided ideal.
#[derive(Clone, Debug)]
pub struct RadicalApprox {
    pub ring: Arc<FiniteRing>,
    pub candidates: Vec<Arc<FiniteModule>>,
    pub multiplicities: Vec<usize>,
    pub ideal: LeftIdeal,
    /// `seeds[i][c]` is the image of `1` in copy `c` of `S_i`.
    pub seeds: Vec<Vec<Coords>>,
    pub regular: Arc<FiniteModule>,
    pub quotient: QuotientModule,
    pub sum: DirectSum,
    /// `R/a -> sum`.
    pub phi_bar: ModuleHom,
    pub phi_bar_inv: ModuleHom,
}

impl RadicalApprox {
    /// Index into `sum` of copy `c` of candidate `i`.
    pub fn block(&self, i: usize, c: usize) -> usize {
        self.multiplicities[..i].iter().sum::<usize>() + c
    }

    /// A ring element mapping to `s` in copy `c` of `S_i`, modulo the ideal.
    pub fn lift_from_block(&self, i: usize, c: usize, s: &[u64]) -> Coords {
        let k = self.block(i, c);
        let d = self.sum.injections[k].apply(s);
        self.quotient.lift(&self.phi_bar_inv.apply(&d))
    }
}

fn seeds_map(regular: &Arc<FiniteModule>, sum: &DirectSum, seeds: &[(usize, Coords)], modules: &[Arc<FiniteModule>]) -> ModuleHom {
    let ring = regular.ring();
    let shape = sum.module.shape();
    let images = (0..ring.rank())
        .map(|k| {
            let mut acc = shape.zero();
            for (block, (i, s)) in seeds.iter().enumerate() {
                let y = modules[*i].act_gen(k, s);
                acc = shape.add(&acc, &sum.injections[block].apply(&y));
            }
            acc
        })
        .collect();
    ModuleHom::new_unchecked(regular.clone(), sum.module.clone(), images)
}

/// Kernel of `r |-> (r s)` over the given `(candidate, s)` pairs.
fn kernel_of_seeds(ring: &Arc<FiniteRing>, list: &[Arc<FiniteModule>], seeds: &[Vec<Coords>]) -> LeftIdeal {
    let regular = Arc::new(regular_module(ring));
    let flat: Vec<(usize, Coords)> =
        seeds.iter().enumerate().flat_map(|(i, ss)| ss.iter().map(move |s| (i, s.clone()))).collect();
    let parts: Vec<Arc<FiniteModule>> = flat.iter().map(|(i, _)| list[*i].clone()).collect();
    let sum = direct_sum(ring, &parts);
    let phi = seeds_map(&regular, &sum, &flat, list);
    LeftIdeal::from_basis(ring, phi.kernel().basis().clone())
}

/// The lexicographically first `s` in `m` with `b s != 0`, if any.
fn first_not_killed(b: &[Coords], m: &FiniteModule) -> Option<Coords> {
    let killed = |x: &[u64]| b.iter().all(|r| m.shape().is_zero(&m.act(r, x)));
    let k = (0..m.rank()).rev().find(|&k| !killed(&m.shape().gen(k)))?;
    let n = m.shape().orders()[k];
    (1..n).map(|c| m.shape().scale(c, &m.shape().gen(k))).find(|x| !killed(x))
}

/// Refines `list` until some two-sided nilpotent ideal `a` has `R/a` a
/// direct sum of copies of the candidates.
pub fn update(ring: &Arc<FiniteRing>, list: &[Arc<FiniteModule>]) -> RadicalApprox {
    let mut list: Vec<Arc<FiniteModule>> = list.to_vec();
    let mut seeds: Vec<Vec<Coords>> = vec![Vec::new(); list.len()];
    let mut b = LeftIdeal::whole(ring);
    loop {
        let brows = b.rows();
        let Some((h, s)) = list.iter().enumerate().find_map(|(h, m)| first_not_killed(&brows, m).map(|s| (h, s))) else {
            break;
        };
        let sh = list[h].clone();
        let bs: Vec<Coords> = brows.iter().map(|r| sh.act(r, &s)).collect();
        let bs = Submodule::from_basis(&sh, canonical_subgroup(sh.shape(), &bs).expect("module shape"));
        if bs.is_whole() {
            seeds[h].push(s);
        } else {
            let q = bs.quotient();
            seeds[h] = seeds[h].iter().map(|x| q.projection.apply(x)).collect();
            list[h] = q.module.clone();
            list.push(bs.as_module().module);
            seeds.push(Vec::new());
        }
        b = kernel_of_seeds(ring, &list, &seeds);
    }

    let keep: Vec<usize> = (0..list.len()).filter(|&i| !seeds[i].is_empty()).collect();
    let candidates: Vec<Arc<FiniteModule>> = keep.iter().map(|&i| list[i].clone()).collect();
    let seeds: Vec<Vec<Coords>> = keep.iter().map(|&i| seeds[i].clone()).collect();
    let multiplicities: Vec<usize> = seeds.iter().map(Vec::len).collect();
    let ideal = annihilator_of(ring, &candidates.iter().map(|m| &**m).collect::<Vec<_>>());
    assert_eq!(ideal, b, "the final ideal is the annihilator of the surviving candidates");

    let regular = Arc::new(regular_module(ring));
    let flat: Vec<(usize, Coords)> =
        seeds.iter().enumerate().flat_map(|(i, ss)| ss.iter().map(move |s| (i, s.clone()))).collect();
    let parts: Vec<Arc<FiniteModule>> = flat.iter().map(|(i, _)| candidates[*i].clone()).collect();
    let sum = direct_sum(ring, &parts);
    let phi = seeds_map(&regular, &sum, &flat, &candidates);
    let quotient = ideal.as_submodule(&regular).quotient();
    let phi_bar_images = (0..quotient.module.rank())
        .map(|k| phi.apply(&quotient.lift(&quotient.module.shape().gen(k))))
        .collect();
    let phi_bar = ModuleHom::new_unchecked(quotient.module.clone(), sum.module.clone(), phi_bar_images);
    let phi_bar_inv = phi_bar.inverse().expect("R/a maps isomorphically onto the sum");
    RadicalApprox {
        ring: ring.clone(),
        candidates,
        multiplicities,
        ideal,
        seeds,
        regular,
        quotient,
        sum,
        phi_bar,
        phi_bar_inv,
    }
}

/// A proper nonzero submodule of a candidate.
#[derive(Clone, Debug)]
pub struct NonsimplicityWitness {
    pub index: usize,
    pub submodule: Submodule,
}

/// `M/aM ≅ S_1^{c_1} + ... + S_t^{c_t}`.
#[derive(Clone, Debug)]
pub struct Selection {
    pub counts: Vec<usize>,
    /// Kept maps `S_i -> M/aM`, grouped by candidate in candidate order.
    pub maps: Vec<(usize, ModuleHom)>,
    pub top: QuotientModule,
    /// `sum -> M/aM`, bijective.
    pub phi: ModuleHom,
    pub sum: DirectSum,
}

#[derive(Clone, Debug)]
pub enum SelectOutcome {
    Witness(NonsimplicityWitness),
    Selected(Selection),
}

pub fn semisimple_select(rad: &RadicalApprox, m: &Arc<FiniteModule>) -> SelectOutcome {
    let ring = &rad.ring;
    let arows = rad.ideal.rows();
    let am: Vec<Coords> =
        (0..m.rank()).flat_map(|j| arows.iter().map(move |a| m.act(a, &m.shape().gen(j)))).collect();
    let am = Submodule::generated(m, &am).expect("module shape");
    let top = am.quotient();
    let q = &top.module;

    let mut kept: Vec<(usize, ModuleHom)> = Vec::new();
    let mut span = Submodule::zero(q);
    'outer: for j in 0..m.rank() {
        let x = m.shape().gen(j);
        for (i, s_i) in rad.candidates.iter().enumerate() {
            for c in 0..rad.multiplicities[i] {
                if span.is_whole() {
                    break 'outer;
                }
                let images = (0..s_i.rank())
                    .map(|k| top.projection.apply(&m.act(&rad.lift_from_block(i, c, &s_i.shape().gen(k)), &x)))
                    .collect();
                let mu = ModuleHom::new_unchecked(s_i.clone(), q.clone(), images);
                let rest = span.quotient();
                let kernel = rest.projection.compose(&mu).kernel();
                if kernel.is_zero() {
                    span = span.sum(&mu.image());
                    kept.push((i, mu));
                } else if !kernel.is_whole() {
                    return SelectOutcome::Witness(NonsimplicityWitness { index: i, submodule: kernel });
                }
            }
        }
    }
    assert!(span.is_whole(), "the generators of M span M/aM");
    kept.sort_by_key(|(i, _)| *i);
    let mut counts = vec![0; rad.candidates.len()];
    for (i, _) in &kept {
        counts[*i] += 1;
    }
    let parts: Vec<Arc<FiniteModule>> = kept.iter().map(|(i, _)| rad.candidates[*i].clone()).collect();
    let sum = direct_sum(ring, &parts);
    let phi = kept
        .iter()
        .zip(&sum.projections)
        .map(|((_, mu), p)| mu.compose(p))
        .fold(ModuleHom::zero(&sum.module, q), |acc, h| acc.add(&h));
    assert!(phi.is_bijective(), "kept copies are independent and span M/aM");
    SelectOutcome::Selected(Selection { counts, maps: kept, top, phi, sum })
}

/// A refinement of the candidate list found from a nonzero map `S_i -> S_h`.
#[derive(Clone, Debug)]
pub enum Refinement {
    SplitByKernel { index: usize, submodule: Submodule },
    SplitByImage { index: usize, submodule: Submodule },
    Remove { index: usize },
}

pub fn pairwise_hom_refine(list: &[Arc<FiniteModule>]) -> Option<Refinement> {
    for i in 0..list.len() {
        for h in 0..list.len() {
            if i == h {
                continue;
            }
            let homs = hom_group(&list[i], &list[h]).expect("same ring");
            let Some(f) = homs.gens().iter().find(|f| !f.is_zero()) else { continue };
            let kernel = f.kernel();
            if !kernel.is_zero() {
                return Some(Refinement::SplitByKernel { index: i, submodule: kernel });
            }
            let image = f.image();
            if !image.is_whole() {
                return Some(Refinement::SplitByImage { index: h, submodule: image });
            }
            return Some(Refinement::Remove { index: h });
        }
    }
    None
}

fn split_at(list: &mut Vec<Arc<FiniteModule>>, index: usize, sub: &Submodule) {
    let q = sub.quotient().module;
    let t = sub.as_module().module;
    list[index] = t;
    list.insert(index + 1, q);
}

fn apply_refinement(list: &mut Vec<Arc<FiniteModule>>, r: &Refinement) {
    match r {
        Refinement::SplitByKernel { index, submodule } | Refinement::SplitByImage { index, submodule } => {
            split_at(list, *index, submodule)
        }
        Refinement::Remove { index } => {
            list.remove(*index);
        }
    }
}

#[derive(Clone, Debug)]
pub struct MingenResult {
    pub count: usize,
    pub generators: Vec<Coords>,
    pub radical: RadicalApprox,
    /// Number of times the candidate list was refined.
    pub restarts: usize,
}

/// A generating set of `M` of minimum size.
pub fn mingen(ring: &Arc<FiniteRing>, m: &Arc<FiniteModule>) -> MingenResult {
    let mut list = vec![Arc::new(regular_module(ring))];
    let mut restarts = 0;
    loop {
        let rad = update(ring, &list);
        let sel = match semisimple_select(&rad, m) {
            SelectOutcome::Witness(w) => {
                list = rad.candidates.clone();
                split_at(&mut list, w.index, &w.submodule);
                restarts += 1;
                continue;
            }
            SelectOutcome::Selected(sel) => sel,
        };
        if let Some(r) = pairwise_hom_refine(&rad.candidates) {
            list = rad.candidates.clone();
            apply_refinement(&mut list, &r);
            restarts += 1;
            continue;
        }
        let count = sel
            .counts
            .iter()
            .zip(&rad.multiplicities)
            .filter(|(&c, _)| c > 0)
            .map(|(&c, &a)| c.div_ceil(a))
            .max()
            .unwrap_or(0);
        let q = &sel.top.module;
        let mut tops = vec![q.zero(); count];
        let mut copy = vec![0usize; rad.candidates.len()];
        for (i, mu) in &sel.maps {
            let qn = copy[*i];
            copy[*i] += 1;
            let a = rad.multiplicities[*i];
            let y = mu.apply(&rad.seeds[*i][qn % a]);
            let k = qn / a;
            tops[k] = q.shape().add(&tops[k], &y);
        }
        let generators: Vec<Coords> = tops.iter().map(|y| sel.top.lift(y)).collect();
        assert!(
            Submodule::generated(m, &generators).expect("module shape").is_whole(),
            "lifted generators generate M"
        );
        return MingenResult { count, generators, radical: rad, restarts };
    }
}

/// An isomorphism `M2 -> M1` with its inverse, if the modules are isomorphic.
pub fn iso_mingen(m1: &Arc<FiniteModule>, m2: &Arc<FiniteModule>) -> Option<(ModuleHom, ModuleHom)> {
    if m1.order() != m2.order() {
        return None;
    }
    if m1.is_zero() {
        let z = ModuleHom::zero(m2, m1);
        return Some((z, ModuleHom::zero(m1, m2)));
    }
    let end = end_ring(m1);
    let k = hom_as_end_module(&end, m2);
    if k.module.order() != end.ring.order() {
        return None;
    }
    let res = mingen(&end.ring, &k.module);
    if res.count != 1 {
        return None;
    }
    let lambda = k.decode(&res.generators[0]);
    let inv = lambda.inverse()?;
    Some((lambda, inv))
}
