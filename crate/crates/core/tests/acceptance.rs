//! Acceptance suite. Each check prints one PASS/FAIL line; the process
//! exits nonzero if any check fails. Every library answer is compared with
//! a brute-force reference from `common`, never with itself.

mod common;

use std::collections::{BTreeSet, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use eigencone::bkring::{bk_coefficient, bk_product_idx, enumerate_partition_tuples};
use eigencone::tensoracle::TensorOracle;
use eigencone::{Classifier, ClassifyOptions, CupCalculator, GroupType, Weight, WeylGroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{dominant_box, weight, Reference};

type Outcome = Result<String, String>;

fn group(t: &str) -> (Arc<WeylGroup>, Reference) {
    let gt: GroupType = t.parse().unwrap();
    let g = Arc::new(WeylGroup::for_type(gt).unwrap());
    let r = Reference::new(t, g.root_system());
    (g, r)
}

/// Inversion masks per element, cross-checked against the library.
fn masks(g: &WeylGroup, r: &Reference) -> Vec<u64> {
    g.elements()
        .iter()
        .map(|e| {
            let m = r.inversions(e.word());
            assert_eq!(m, e.inversions().bits(), "inversion set of {}", e.word_string());
            m
        })
        .collect()
}

fn brute_partitions(r: &Reference, m: &[u64]) -> Vec<[usize; 3]> {
    let n = m.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if r.partitions(&[m[a], m[b], m[c]]) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn levi_cup_and_bk_support() -> Outcome {
    let mut report = Vec::new();
    for t in ["A2", "B2", "G2", "A3", "B3"] {
        let (g, r) = group(t);
        let m = masks(&g, &r);
        let full = r.full();
        let comp: Vec<u64> = m.iter().map(|x| full ^ x).collect();
        let cup = CupCalculator::new(g.clone()).map_err(|e| e.to_string())?;
        let n = g.order();
        let top = 2 * g.max_length();
        let (mut levi, mut cup_only) = (0usize, 0usize);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lm = r.partitions(&[comp[a], comp[b], comp[c]]);
                    let (ea, eb, ec) = (g.element(a), g.element(b), g.element(c));
                    let bk = bk_coefficient(&g, ea, eb, ec).map_err(|e| e.to_string())?;
                    ensure(bk == lm as u8, || {
                        format!("{t}: bk({},{},{}) = {bk}", ea.word_string(), eb.word_string(), ec.word_string())
                    })?;
                    if ea.length() + eb.length() + ec.length() != top {
                        continue;
                    }
                    let cc = cup.cup_coefficient(a, b, c).map_err(|e| e.to_string())?;
                    if lm {
                        levi += 1;
                        ensure(cc == 1, || {
                            format!(
                                "{t}: Levi-movable ({},{},{}) has cup coefficient {cc}",
                                ea.word_string(),
                                eb.word_string(),
                                ec.word_string()
                            )
                        })?;
                    } else if cc > 0 {
                        cup_only += 1;
                    }
                }
            }
        }
        report.push(format!("{t}: {levi} Levi-movable, {cup_only} cup-only"));
        if t == "A2" {
            let w = |s: &str| g.parse_element(s).unwrap();
            let (u, v) = (w("1.2"), w("2.1"));
            ensure(cup.cup_coefficient(u, v, u).unwrap() == 1, || "A2 (12,21,12) cup != 1".into())?;
            let lm = r.partitions(&[comp[u], comp[v], comp[u]]);
            ensure(!lm, || "A2 (12,21,12) should not be Levi-movable".into())?;
        }
    }
    Ok(report.join("; "))
}

struct SweepRow {
    weights: Vec<Vec<i64>>,
    prv: bool,
    cohomological: bool,
    dims: Vec<(u32, u64)>,
}

fn sweep(t: &str) -> Result<Vec<SweepRow>, String> {
    let (g, r) = group(t);
    let m = masks(&g, &r);
    let parts = brute_partitions(&r, &m);
    let classifier = Classifier::new(g.clone());
    let opts = ClassifyOptions { depth: 3, verify_cup: false };
    let boxw = dominant_box(r.rank(), 2);
    let mut rows = Vec::new();
    for a in &boxw {
        for b in &boxw {
            for c in &boxw {
                let ws = [weight(a), weight(b), weight(c)];
                let cls = classifier.classify(&ws, &opts).map_err(|e| e.to_string())?;
                ensure(cls.overflow.is_none(), || format!("{t}: oracle overflow on {a:?},{b:?},{c:?}"))?;

                let (oa, ob, oc) = (r.orbit(a), r.orbit(b), r.orbit(c));
                let prv = oa.iter().any(|x| {
                    ob.iter().any(|y| {
                        let z: Vec<i64> = x.iter().zip(y).map(|(p, q)| -(p + q)).collect();
                        oc.contains(&z)
                    })
                });
                let coh = parts.iter().any(|p| {
                    let mut acc = vec![0i64; r.rank()];
                    for (k, lam) in [a, b, c].iter().enumerate() {
                        let mut inv = g.element(p[k]).word().to_vec();
                        inv.reverse();
                        for (s, v) in acc.iter_mut().zip(r.act_weight(&inv, lam)) {
                            *s += v;
                        }
                    }
                    acc.iter().all(|&x| x == 0)
                });
                ensure(cls.prv == prv, || format!("{t}: PRV flag wrong on {a:?},{b:?},{c:?}"))?;
                ensure(cls.cohomological == coh, || format!("{t}: cohomological flag wrong on {a:?},{b:?},{c:?}"))?;
                ensure(cls.regularly_extremal == coh, || {
                    format!("{t}: regularly extremal flag wrong on {a:?},{b:?},{c:?}")
                })?;
                rows.push(SweepRow {
                    weights: vec![a.clone(), b.clone(), c.clone()],
                    prv,
                    cohomological: coh,
                    dims: cls.oracle_mults,
                });
            }
        }
    }
    Ok(rows)
}

fn cohomological_iff_prv_and_mult_one(sweeps: &[(&str, Vec<SweepRow>)]) -> Outcome {
    let mut report = Vec::new();
    for (t, rows) in sweeps {
        let (mut coh, mut prv) = (0, 0);
        for row in rows {
            ensure(row.dims.len() == 3, || format!("{t}: probe incomplete on {:?}", row.weights))?;
            let ones = row.dims.iter().all(|&(_, d)| d == 1);
            if row.cohomological {
                ensure(row.dims == vec![(1, 1), (2, 1), (3, 1)], || {
                    format!("{t}: cohomological {:?} has dims {:?}", row.weights, row.dims)
                })?;
            }
            ensure(row.cohomological == (row.prv && ones), || {
                format!(
                    "{t}: {:?} prv={} dims={:?} but cohomological={}",
                    row.weights, row.prv, row.dims, row.cohomological
                )
            })?;
            coh += row.cohomological as usize;
            prv += row.prv as usize;
        }
        report.push(format!("{t}: {} triples, {prv} PRV, {coh} cohomological", rows.len()));
    }
    Ok(report.join("; "))
}

fn prv_lower_bound(sweeps: &[(&str, Vec<SweepRow>)]) -> Outcome {
    let mut checked = 0;
    for (t, rows) in sweeps {
        for row in rows.iter().filter(|r| r.prv) {
            ensure(row.dims.first().is_some_and(|&(k, d)| k == 1 && d >= 1), || {
                format!("{t}: PRV triple {:?} has dims {:?}", row.weights, row.dims)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} PRV triples have an invariant"))
}

fn partition_counts() -> Outcome {
    let mut report = Vec::new();
    for (t, expected) in [("A1", Some(3)), ("A2", Some(15)), ("A3", None), ("B2", None), ("G2", None)] {
        let (g, r) = group(t);
        let m = masks(&g, &r);
        let brute: BTreeSet<Vec<usize>> = brute_partitions(&r, &m).into_iter().map(|p| p.to_vec()).collect();
        let lib = enumerate_partition_tuples(&g, 3).map_err(|e| e.to_string())?;
        let lib_set: BTreeSet<Vec<usize>> = lib.iter().cloned().collect();
        ensure(lib.len() == lib_set.len(), || format!("{t}: duplicate tuples"))?;
        ensure(lib_set == brute, || format!("{t}: {} enumerated vs {} brute force", lib.len(), brute.len()))?;
        if let Some(e) = expected {
            ensure(lib.len() == e, || format!("{t}: {} tuples, expected {e}", lib.len()))?;
        }
        report.push(format!("{t}={}", lib.len()));
    }
    Ok(report.join(", "))
}

fn ring_axioms() -> Outcome {
    let mut report = Vec::new();
    for t in ["A2", "B2", "G2"] {
        let (g, r) = group(t);
        let m = masks(&g, &r);
        let full = r.full();
        let n = g.order();
        let w0 = g.longest_index();
        for a in 0..n {
            for b in 0..n {
                let ab = bk_product_idx(&g, a, b);
                ensure(ab == bk_product_idx(&g, b, a), || format!("{t}: not commutative at ({a},{b})"))?;
                for c in 0..n {
                    let left = ab.and_then(|x| bk_product_idx(&g, x, c));
                    let right = bk_product_idx(&g, b, c).and_then(|x| bk_product_idx(&g, a, x));
                    ensure(left == right, || format!("{t}: not associative at ({a},{b},{c})"))?;
                }
            }
            ensure(bk_product_idx(&g, w0, a) == Some(a), || format!("{t}: fundamental class is not a unit"))?;
            for v in 0..n {
                let bk = bk_coefficient(&g, g.element(a), g.element(v), g.element(w0)).map_err(|e| e.to_string())?;
                // the dual of sigma_a is the element whose inversion set is the complement
                let dual = m[v] == full ^ m[a];
                ensure((bk == 1) == dual, || format!("{t}: duality fails at ({a},{v})"))?;
            }
        }
        report.push(format!("{t}: {} triples", n * n * n));
    }
    Ok(report.join("; "))
}

fn random_dominant(rng: &mut ChaCha8Rng, rank: usize, bound: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(0..=bound)).collect()
}

fn oracle_self_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let mut report = Vec::new();
    for t in ["A2", "B2", "G2", "A3"] {
        let (g, r) = group(t);
        let oracle = TensorOracle::new(g.root_system_arc());
        for _ in 0..100 {
            let a = random_dominant(&mut rng, r.rank(), 3);
            let b = random_dominant(&mut rng, r.rank(), 3);
            let (la, lb) = (weight(&a), weight(&b));
            let dec = oracle.decompose(&la, &lb).map_err(|e| e.to_string())?;
            let total: u128 = dec.terms.iter().map(|(nu, m)| *m as u128 * r.weyl_dim(nu.coords())).sum();
            ensure(total == r.weyl_dim(&a) * r.weyl_dim(&b), || {
                format!("{t}: dimension identity fails for {a:?} x {b:?}")
            })?;
            let swapped = oracle.decompose(&lb, &la).map_err(|e| e.to_string())?;
            ensure(swapped == dec, || format!("{t}: decompose not symmetric for {a:?}, {b:?}"))?;

            let (nu, mult) = dec.terms[rng.gen_range(0..dec.terms.len())].clone();
            let nu_star = weight(&r.dual(nu.coords()));
            let triple = [la.clone(), lb.clone(), nu_star];
            let mut values = HashSet::new();
            for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
                let ws: Vec<Weight> = p.iter().map(|&k| triple[k].clone()).collect();
                values.insert(oracle.invariant_dim(&ws).map_err(|e| e.to_string())?);
            }
            ensure(values == HashSet::from([mult]), || {
                format!("{t}: invariant_dim {values:?} vs multiplicity {mult} for {a:?}, {b:?}, {:?}", nu.coords())
            })?;
        }
        report.push(format!("{t}: 100 pairs"));
    }
    Ok(report.join("; "))
}

fn distinguishing_witnesses() -> Outcome {
    let (g, _) = group("A2");
    let classifier = Classifier::new(g);
    let rho = vec![weight(&[1, 1]); 3];
    let cls = classifier.classify(&rho, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(cls.prv, || "(rho,rho,rho) should be PRV".into())?;
    let dim = classifier.oracle().invariant_dim(&rho).map_err(|e| e.to_string())?;
    ensure(dim == 2, || format!("(rho,rho,rho) invariant dimension {dim}"))?;
    ensure(cls.coh_witnesses.is_empty(), || "(rho,rho,rho) has a cohomological witness".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    let mut checked = 0;
    for t in ["A2", "B2", "G2", "A3"] {
        let (g, r) = group(t);
        let classifier = Classifier::new(g.clone());
        let w0 = g.longest_index();
        let full = r.full();
        for _ in 0..20 {
            let a = random_dominant(&mut rng, r.rank(), 3);
            let b = random_dominant(&mut rng, r.rank(), 3);
            let sum: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
            let c = r.dual(&sum);
            // the witness (e, e, w0) checked by hand: w0^{-1} (l+m)^* = -(l+m)
            let w0_word = g.element(w0).word().to_vec();
            let back = r.act_weight(&w0_word, &c);
            ensure(back.iter().zip(&sum).all(|(x, y)| x + y == 0), || format!("{t}: w0 (l+m)^* != -(l+m)"))?;
            ensure(r.partitions(&[0, 0, full]), || "partition".into())?;
            let found =
                classifier.cohomological_witnesses(&[weight(&a), weight(&b), weight(&c)]).map_err(|e| e.to_string())?;
            ensure(found.contains(&vec![0, 0, w0]), || format!("{t}: ({a:?}, {b:?}, {c:?}) lacks (e, e, w0)"))?;
            checked += 1;
        }
    }
    Ok(format!("(rho,rho,rho): PRV, dim 2, no witness; {checked} Cartan triples"))
}

fn run(name: &str, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let secs = start.elapsed().as_secs_f64();
    match outcome {
        Ok(detail) => {
            println!("PASS  {name} ({secs:.1}s): {detail}");
            true
        }
        Err(detail) => {
            println!("FAIL  {name} ({secs:.1}s): {detail}");
            false
        }
    }
}

fn main() {
    let mut ok = true;
    ok &= run("levi-movable triples have cup coefficient 1, BK vanishes elsewhere", levi_cup_and_bk_support);

    let sweeps: Result<Vec<(&str, Vec<SweepRow>)>, String> =
        ["A2", "B2"].into_iter().map(|t| sweep(t).map(|rows| (t, rows))).collect();
    match &sweeps {
        Ok(sw) => {
            ok &=
                run("cohomological iff PRV with multiplicity one up to k=3", || cohomological_iff_prv_and_mult_one(sw));
            ok &= run("PRV triples carry an invariant", || prv_lower_bound(sw));
        }
        Err(e) => {
            println!("FAIL  cohomological iff PRV with multiplicity one up to k=3: sweep failed: {e}");
            println!("FAIL  PRV triples carry an invariant: sweep failed: {e}");
            ok = false;
        }
    }

    ok &= run("inversion-set partition counts", partition_counts);
    ok &= run("BK ring is commutative, associative, with Poincare duality", ring_axioms);
    ok &= run("tensor oracle self-consistency", oracle_self_consistency);
    ok &= run("(rho,rho,rho) versus Cartan-component triples", distinguishing_witnesses);
    if !ok {
        std::process::exit(1);
    }
}
