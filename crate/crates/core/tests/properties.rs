mod common;

use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use common::*;
use finmod::grouplin::{canonical_subgroup, quotient, solve, Coords, GroupShape, LinearSystem};
use finmod::homspace::{divide_right, hom_group, internal_projections, ModuleHom};
use finmod::oracle::{oracle_homs, OracleBudget};
use finmod::structures::{direct_sum, FiniteModule, Submodule};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn shape_and_gens() -> impl Strategy<Value = (GroupShape, Vec<Coords>)> {
    prop::collection::vec(1u64..=12, 0..=3).prop_flat_map(|orders| {
        let shape = GroupShape::new(orders.clone()).unwrap();
        let elem = orders.iter().map(|&o| 0..o).collect::<Vec<_>>();
        (Just(shape), prop::collection::vec(elem, 0..=3))
    })
}

fn closure(shape: &GroupShape, gens: &[Coords]) -> HashSet<Coords> {
    let mut seen: HashSet<Coords> = HashSet::from([shape.zero()]);
    let mut frontier = vec![shape.zero()];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = shape.add(&x, g);
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

struct Pool {
    modules: Vec<Arc<FiniteModule>>,
}

fn pools() -> &'static Vec<Pool> {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        suite_rings().iter().map(|sr| Pool { modules: module_pool(&sr.ring, 16, &mut rng) }).collect()
    })
}

fn module_pair() -> impl Strategy<Value = (Arc<FiniteModule>, Arc<FiniteModule>)> {
    (0..pools().len(), any::<prop::sample::Index>(), any::<prop::sample::Index>()).prop_map(|(k, i, j)| {
        let p = &pools()[k].modules;
        (p[i.index(p.len())].clone(), p[j.index(p.len())].clone())
    })
}

fn random_hom(dom: &Arc<FiniteModule>, cod: &Arc<FiniteModule>, seed: &[u64]) -> ModuleHom {
    let h = hom_group(dom, cod).unwrap();
    let c: Coords = h.shape().orders().iter().zip(seed.iter().cycle()).map(|(&o, &s)| s % o).collect();
    h.decode(&c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonical_subgroup_matches_enumeration((shape, gens) in shape_and_gens()) {
        let basis = canonical_subgroup(&shape, &gens).unwrap();
        let elems = closure(&shape, &gens);
        prop_assert_eq!(basis.order().clone(), (elems.len() as u64).into());
        for x in shape.elements() {
            prop_assert_eq!(basis.contains(&x), elems.contains(&x));
        }
        let mut rev = gens.clone();
        rev.reverse();
        rev.extend(gens.iter().map(|g| shape.add(g, g)));
        prop_assert_eq!(canonical_subgroup(&shape, &rev).unwrap(), basis);
    }

    #[test]
    fn solve_agrees_with_brute_force(
        moduli in prop::collection::vec(2u64..=9, 1..=2),
        cols in 1usize..=2,
        seed in prop::collection::vec(-20i64..20, 12),
    ) {
        let shape = GroupShape::new(moduli.clone()).unwrap();
        let matrix: Vec<Vec<i64>> = (0..moduli.len()).map(|i| (0..cols).map(|k| seed[i * cols + k]).collect()).collect();
        let rhs: Vec<i64> = (0..moduli.len()).map(|i| seed[8 + i]).collect();
        let sys = LinearSystem::over_integers(shape, matrix, rhs).unwrap();
        let unknowns = sys.unknowns.clone();
        let brute: Vec<Coords> = unknowns.elements().filter(|x| sys.satisfied_by(x)).collect();
        match solve(&sys).unwrap() {
            None => prop_assert!(brute.is_empty()),
            Some((x, kernel)) => {
                prop_assert!(sys.satisfied_by(&x));
                let homogeneous = LinearSystem::new(sys.unknowns.clone(), sys.moduli.clone(), sys.matrix.clone(), vec![0; moduli.len()]).unwrap();
                for k in &kernel {
                    prop_assert!(homogeneous.satisfied_by(k));
                }
                prop_assert_eq!(closure(&unknowns, &kernel).len(), brute.len());
            }
        }
    }

    #[test]
    fn quotient_round_trip((shape, gens) in shape_and_gens()) {
        let sub = canonical_subgroup(&shape, &gens).unwrap();
        let q = quotient(&shape, &sub);
        prop_assert_eq!(q.shape.order() * sub.order(), shape.order());
        for y in q.shape.elements() {
            prop_assert_eq!(q.project(&q.lift(&y)), y);
        }
        for g in &gens {
            prop_assert!(q.shape.is_zero(&q.project(g)));
        }
    }

    #[test]
    fn hom_group_matches_oracle_count((m, n) in module_pair()) {
        let h = hom_group(&m, &n).unwrap();
        let homs = oracle_homs(&m, &n, &OracleBudget::default()).unwrap();
        prop_assert_eq!(h.order(), (homs.len() as u64).into());
        for c in h.shape().elements().take(64) {
            let f = h.decode(&c);
            prop_assert!(f.linearity_violation().is_none());
            prop_assert_eq!(h.encode(&f), c);
        }
    }

    #[test]
    fn kernel_and_image_orders_multiply((m, n) in module_pair(), seed in prop::collection::vec(0u64..1000, 8)) {
        let f = random_hom(&m, &n, &seed);
        prop_assert_eq!(f.kernel().order() * f.image().order(), m.order());
        prop_assert!(f.kernel().is_closed());
        prop_assert!(f.image().is_closed());
    }

    #[test]
    fn internal_projections_are_complementary_idempotents((a, b) in module_pair()) {
        let ring = a.ring().clone();
        let ds = direct_sum(&ring, &[a.clone(), b.clone()]);
        let m = Arc::new(ds.module.clone());
        let gens = |k: usize| -> Vec<Coords> {
            let part = [&a, &b][k];
            (0..part.rank()).map(|j| ds.injections[k].apply(&part.shape().gen(j))).collect()
        };
        let u = Submodule::generated(&m, &gens(0)).unwrap();
        let v = Submodule::generated(&m, &gens(1)).unwrap();
        let (pu, pv) = internal_projections(&m, &u, &v).unwrap();
        prop_assert!(pu.add(&pv).is_identity());
        prop_assert_eq!(pu.compose(&pu), pu.clone());
        prop_assert!(pu.compose(&pv).is_zero());
        prop_assert_eq!(pu.image(), u);
        prop_assert_eq!(pv.image(), v);
    }

    #[test]
    fn divide_right_is_sound((m, n) in module_pair(), s1 in prop::collection::vec(0u64..1000, 8), s2 in prop::collection::vec(0u64..1000, 8)) {
        let f = random_hom(&m, &n, &s1);
        let g = random_hom(&n, &m, &s2);
        let x = g.compose(&f);
        let q = divide_right(&f, &x);
        prop_assert!(q.is_some());
        prop_assert_eq!(q.unwrap().compose(&f), x);
        if let Some(h) = divide_right(&f, &ModuleHom::identity(&m)) {
            prop_assert!(h.compose(&f).is_identity());
            prop_assert!(f.is_injective());
        }
    }
}
