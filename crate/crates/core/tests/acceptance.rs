//! Acceptance suite: each criterion prints one PASS/FAIL line.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use finmod::cli::verify_isomorphism;
use finmod::fixtures::*;
use finmod::grouplin::Coords;
use finmod::homspace::{hom_group, ModuleHom};
use finmod::nilpotency::{find_non_nilpotent, ideal_is_nilpotent, nilpotency_exponent};
use finmod::oracle::{oracle_iso, oracle_max_common_summand, oracle_mingen, span, OracleBudget};
use finmod::sideexit::{iso_mingen, mingen, update};
use finmod::splitter::{common_summand, fitting, iso_splitter};
use finmod::structures::{direct_sum, regular_module, FiniteModule, FiniteRing, Submodule};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut total, mut isomorphic) = (0usize, 0usize);
    for sr in suite_rings() {
        let pool = module_pool(&sr.ring, 16, &mut rng);
        let mut pairs: Vec<(Arc<FiniteModule>, Arc<FiniteModule>)> = Vec::new();
        for m in &pool {
            pairs.push((m.clone(), represent(m, &mut rng)));
        }
        let mut same_order = Vec::new();
        for i in 0..pool.len() {
            for j in i + 1..pool.len() {
                if pool[i].order() == pool[j].order() {
                    same_order.push((pool[i].clone(), pool[j].clone()));
                }
            }
        }
        let step = (same_order.len() / 40).max(1);
        pairs.extend(same_order.into_iter().step_by(step));
        for _ in 0..5.min(pool.len()) {
            let a = pool[rng.gen_range(0..pool.len())].clone();
            let b = pool[rng.gen_range(0..pool.len())].clone();
            pairs.push((a, b));
        }
        for (m, n) in pairs {
            let truth = oracle_iso(&m, &n, &budget).map_err(|e| e.to_string())?.is_some();
            let sp = iso_splitter(&m, &n);
            let mg = iso_mingen(&m, &n);
            ensure(sp.is_some() == truth && mg.is_some() == truth, || {
                format!(
                    "{}: disagreement on orders {:?} / {:?}: oracle {truth}, splitter {}, mingen {}",
                    sr.name,
                    m.shape().orders(),
                    n.shape().orders(),
                    sp.is_some(),
                    mg.is_some()
                )
            })?;
            if let Some(f) = sp {
                let g = f.inverse().ok_or("splitter witness is not invertible")?;
                verify_isomorphism(&f, &g).map_err(|e| e.to_string())?;
            }
            if let Some((lambda, inv)) = mg {
                verify_isomorphism(&lambda, &inv).map_err(|e| e.to_string())?;
            }
            total += 1;
            isomorphic += usize::from(truth);
        }
    }
    let elapsed = start.elapsed();
    ensure(total >= 500, || format!("only {total} pairs"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} pairs ({isomorphic} isomorphic) agree with the oracle, witnesses verified, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut total = 0usize;
    for sr in suite_rings() {
        let pool = module_pool(&sr.ring, 32, &mut rng);
        let step = (pool.len() / 30).max(1);
        for m in pool.iter().step_by(step) {
            let expected = oracle_mingen(m, &budget).map_err(|e| e.to_string())?;
            let res = mingen(&sr.ring, m);
            ensure(res.count == expected, || {
                format!("{}: module {:?} mingen {} vs oracle {expected}", sr.name, m.shape().orders(), res.count)
            })?;
            ensure(res.generators.len() == res.count, || "generator count mismatch".into())?;
            let generated = span(m, &res.generators).len() as u64;
            ensure(generated == order_u64(m), || format!("{}: generators span only {generated}", sr.name))?;
            total += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(total >= 200, || format!("only {total} modules"))?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{total} modules match the oracle minimum, generators span, {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let mut checked = 0;
    for n in 1..=24u64 {
        let r = Arc::new(zn(n));
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        for &a in &divisors {
            for &b in &divisors {
                let h = hom_group(&Arc::new(cyclic(&r, a)), &Arc::new(cyclic(&r, b))).map_err(|e| e.to_string())?;
                let expected = BigUint::from(num_integer::gcd(a, b));
                ensure(h.order() == expected, || format!("Hom_Z/{n}(Z/{a}, Z/{b}) has order {}", h.order()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} triples (n, a, b) satisfy |Hom| = gcd(a, b)"))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let rings = suite_rings();
    let pools: Vec<_> = rings.iter().map(|sr| module_pool(&sr.ring, 16, &mut rng)).collect();
    let mut done = 0;
    while done < 200 {
        let k = rng.gen_range(0..rings.len());
        let pool = &pools[k];
        let m = &pool[rng.gen_range(0..pool.len())];
        let h = hom_group(m, m).map_err(|e| e.to_string())?;
        let random = |rng: &mut ChaCha8Rng| -> ModuleHom {
            let c: Coords = h.shape().orders().iter().map(|&o| rng.gen_range(0..o)).collect();
            h.decode(&c)
        };
        let s = random(&mut rng).compose(&random(&mut rng)).add(&random(&mut rng));
        let fit = fitting(&s);
        ensure(fit.kernel.intersection(&fit.image).is_zero(), || "kernel and image meet".into())?;
        ensure(fit.kernel.order() * fit.image.order() == m.order(), || "orders do not multiply to |M|".into())?;
        let sub = fit.image.as_module();
        let restricted = s.restrict(&sub).corestrict(&sub).map_err(|e| e.to_string())?;
        ensure(restricted.is_bijective(), || format!("{}: s is not bijective on its Fitting image", rings[k].name))?;
        done += 1;
    }
    Ok(format!("{done} random endomorphisms, zero violations"))
}

fn criterion_5() -> Outcome {
    let (mut nil, mut non_nil) = (0, 0);
    for sr in suite_rings() {
        let ring = &sr.ring;
        if ring.order() > BigUint::from(16u32) {
            continue;
        }
        let reg = regular_module(ring);
        let l = nilpotency_exponent(ring);
        for ideal in small_left_ideals(ring) {
            let elems = span(&reg, &ideal.rows());
            let all_nilpotent = elems.iter().all(|x| ring.shape().is_zero(&ring.pow(x, l)));
            if all_nilpotent {
                ensure(ideal_is_nilpotent(&ideal), || format!("{}: nil ideal reported non-nilpotent", sr.name))?;
                ensure(find_non_nilpotent(&ideal).is_err(), || format!("{}: finder accepted a nil ideal", sr.name))?;
                nil += 1;
            } else {
                ensure(!ideal_is_nilpotent(&ideal), || format!("{}: ideal wrongly reported nilpotent", sr.name))?;
                let cert = find_non_nilpotent(&ideal).map_err(|e| e.to_string())?;
                ensure(elems.contains(&cert.element), || format!("{}: certificate outside the ideal", sr.name))?;
                ensure(!ring.shape().is_zero(&ring.pow(&cert.element, l)), || "certificate power vanishes".into())?;
                non_nil += 1;
            }
        }
    }
    Ok(format!("{non_nil} non-nilpotent ideals certified, {nil} nilpotent ideals recognized"))
}

fn criterion_6() -> Outcome {
    let mut rings = 0;
    for sr in suite_rings() {
        let ring = &sr.ring;
        let rad = update(ring, &[Arc::new(regular_module(ring))]);
        let mut product = rad.ideal.order();
        for (s, &a) in rad.candidates.iter().zip(&rad.multiplicities) {
            product *= s.order().pow(a as u32);
        }
        ensure(product == ring.order(), || format!("{}: |R| != |a| prod |S_i|^a_i", sr.name))?;
        ensure(
            rad.phi_bar.compose(&rad.phi_bar_inv).is_identity() && rad.phi_bar_inv.compose(&rad.phi_bar).is_identity(),
            || format!("{}: phi_bar is not bijective", sr.name),
        )?;
        let l = ring.length_bound() as usize + 1;
        ensure(rad.ideal.is_zero() || rad.ideal.power(l + 1).is_zero(), || format!("{}: ideal not nilpotent", sr.name))?;
        rings += 1;
    }
    let r = Arc::new(zn(4));
    let rad = update(&r, &[Arc::new(regular_module(&r))]);
    ensure(rad.ideal.is_zero() && rad.multiplicities == vec![1], || "Z/4 trace differs".into())?;
    Ok(format!("{rings} rings satisfy the postconditions; Z/4 gives a = 0 with one candidate of multiplicity 1"))
}

fn criterion_7() -> Outcome {
    let budget = OracleBudget::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total = 0;
    for sr in suite_rings() {
        let pool = module_pool(&sr.ring, 16, &mut rng);
        for _ in 0..10 {
            let m = pool[rng.gen_range(0..pool.len())].clone();
            let n = pool[rng.gen_range(0..pool.len())].clone();
            let cs = common_summand(&m, &n);
            ensure(cs.verify(), || format!("{}: certificate fails", sr.name))?;
            let expected = oracle_max_common_summand(&m, &n, &budget).map_err(|e| e.to_string())?;
            ensure(cs.a.order() == BigUint::from(expected), || {
                format!("{}: common summand {} vs oracle {expected}", sr.name, cs.a.order())
            })?;
            total += 1;
        }
    }
    let r = Arc::new(zn(4));
    let sum = |ds: &[u64]| direct_sum(&r, &ds.iter().map(|&d| Arc::new(cyclic(&r, d))).collect::<Vec<_>>()).module;
    let cs = common_summand(&sum(&[4, 2]), &sum(&[2, 2]));
    ensure(cs.a.order() == BigUint::from(2u32), || format!("Z/4+Z/2 vs Z/2+Z/2 gave {}", cs.a.order()))?;
    ensure(total >= 100, || format!("only {total} pairs"))?;
    Ok(format!("{total} pairs match the oracle maximum; (Z/4+Z/2, Z/2+Z/2) gives order 2"))
}

fn timed_iso(m: &Arc<FiniteModule>, n: &Arc<FiniteModule>) -> Result<(bool, Duration), String> {
    let start = Instant::now();
    let sp = iso_splitter(m, n);
    let mg = iso_mingen(m, n);
    if let Some(f) = &sp {
        verify_isomorphism(f, &f.inverse().ok_or("not invertible")?).map_err(|e| e.to_string())?;
    }
    if let Some((f, g)) = &mg {
        verify_isomorphism(f, g).map_err(|e| e.to_string())?;
    }
    let elapsed = start.elapsed();
    ensure(sp.is_some() == mg.is_some(), || "methods disagree".into())?;
    Ok((sp.is_some(), elapsed))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ring: Arc<FiniteRing> = Arc::new(matrix_ring(2, 4));
    let reg = Arc::new(regular_module(&ring));
    let s = Arc::new(column_module_of(&ring, 2, 4));
    let twice: Vec<Coords> = (0..s.rank()).map(|j| s.shape().scale(2, &s.shape().gen(j))).collect();
    let sbar = Submodule::generated(&s, &twice).unwrap().quotient().module;
    let sum = |parts: &[&Arc<FiniteModule>]| direct_sum(&ring, &parts.iter().map(|p| (*p).clone()).collect::<Vec<_>>()).module;

    let family = [
        (sum(&[&reg]), sum(&[&s, &s])),
        (sum(&[&reg, &sbar]), sum(&[&s, &s, &sbar])),
        (sum(&[&reg, &s]), sum(&[&s, &s, &s])),
    ];
    let mut lines = Vec::new();
    let mut times = Vec::new();
    for (m, n) in &family {
        let n = represent(n, &mut rng);
        let (iso, t) = timed_iso(m, &n)?;
        ensure(iso, || format!("order {} instance should be isomorphic", m.order()))?;
        ensure(t < Duration::from_secs(10), || format!("order {} took {t:?}", m.order()))?;
        lines.push(format!("{}: {t:.2?}", m.order()));
        times.push((m.order(), t));
    }
    let (non_m, non_n) = (sum(&[&reg, &s]), sum(&[&s, &s, &sbar, &sbar]));
    let (iso, t) = timed_iso(&non_m, &non_n)?;
    ensure(!iso, || "R+S and S+S+Sbar+Sbar are not isomorphic".into())?;
    ensure(t < Duration::from_secs(10), || format!("non-isomorphic instance took {t:?}"))?;
    lines.push(format!("4096 (non-iso): {t:.2?}"));

    let floor = Duration::from_millis(5);
    for w in times.windows(2) {
        let (o1, t1) = (&w[0].0, w[0].1.max(floor));
        let (o2, t2) = (&w[1].0, w[1].1.max(floor));
        let doublings = (o2.bits() - o1.bits()) as f64;
        let per_doubling = (t2.as_secs_f64() / t1.as_secs_f64()).powf(1.0 / doublings);
        ensure(per_doubling < 8.0, || format!("growth {per_doubling:.2}x per doubling from {o1} to {o2}"))?;
    }
    Ok(format!("M2(Z/4) iso --method both: {}", lines.join(", ")))
}

fn doc_json(ring: &FiniteRing, modules: &[(&str, &FiniteModule)]) -> String {
    let mods: serde_json::Map<String, serde_json::Value> = modules
        .iter()
        .map(|(name, m)| (name.to_string(), json!({ "orders": m.shape().orders(), "action": m.action() })))
        .collect();
    json!({
        "ring": { "orders": ring.shape().orders(), "mul": ring.mul_table(), "one": ring.one() },
        "modules": mods,
    })
    .to_string()
}

fn criterion_9() -> Outcome {
    let exe = env!("CARGO_BIN_EXE_finmod");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut runs = 0;
    for (k, sr) in suite_rings().iter().enumerate() {
        let pool = module_pool(&sr.ring, 16, &mut rng);
        let m = pool.iter().max_by_key(|m| m.order()).unwrap().clone();
        let n = represent(&m, &mut rng);
        let path = dir.path().join(format!("ring{k}.json"));
        std::fs::write(&path, doc_json(&sr.ring, &[("M", &m), ("N", &n)])).map_err(|e| e.to_string())?;
        let p = path.to_str().unwrap();
        let commands: Vec<Vec<&str>> = vec![
            vec!["validate", p],
            vec!["hom", p, "M", "N"],
            vec!["iso", p, "M", "N", "--method", "both"],
            vec!["iso", p, "M", "N", "--method", "splitter"],
            vec!["iso", p, "M", "N", "--method", "mingen"],
            vec!["summand", p, "M", "N"],
            vec!["mingen", p, "M"],
            vec!["radical-approx", p],
            vec!["oracle", "homs", p, "M", "N"],
            vec!["oracle", "iso", p, "M", "N"],
            vec!["oracle", "mingen", p, "M"],
            vec!["oracle", "summands", p, "M"],
        ];
        for args in commands {
            let first = Command::new(exe).args(&args).output().map_err(|e| e.to_string())?;
            let second = Command::new(exe).args(&args).output().map_err(|e| e.to_string())?;
            ensure(first.status.success(), || {
                format!("{} {:?} failed: {}", sr.name, args, String::from_utf8_lossy(&first.stderr))
            })?;
            ensure(first.stdout == second.stdout && first.status.code() == second.status.code(), || {
                format!("{}: output of {:?} differs between runs", sr.name, args)
            })?;
            runs += 1;
        }
    }
    Ok(format!("{runs} commands produce byte-identical output across two runs"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("dual-method and oracle agreement on isomorphism", criterion_1),
        ("minimum generator count matches the oracle", criterion_2),
        ("Hom order law over Z/n", criterion_3),
        ("Fitting decomposition invariants", criterion_4),
        ("non-nilpotent element finder", criterion_5),
        ("radical approximation postconditions", criterion_6),
        ("common summand maximality", criterion_7),
        ("scaling over M2(Z/4)", criterion_8),
        ("CLI determinism", criterion_9),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("criterion {id} PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {id} FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
