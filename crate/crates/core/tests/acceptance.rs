//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::time::Instant;

use cluster_tilt_core::cluster::{ClusterCategory, ObjectId};
use cluster_tilt_core::cluster_tilted::{apr_mutate, endo_presentation, exchange_simples, module_category, theorem_b_verify};
use cluster_tilt_core::oracle::{catalan_count, OracleObject, TypeAQuiver};
use cluster_tilt_core::quiver::{euler_form, QuiverSpec};
use cluster_tilt_core::tilting::{
    complements, enumerate_almost_complete, enumerate_tilting, exchange, ext_h, hom_h, is_tilting, AlmostComplete,
};
use cluster_tilt_core::translation::Automorphism;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)*) => {
        if !$cond {
            return Err(format!($($fmt)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn cat(text: &str) -> Result<ClusterCategory, String> {
    ClusterCategory::parse(text).map_err(err)
}

fn a(n: u32) -> QuiverSpec {
    QuiverSpec::linear_a(n)
}

fn d(n: u32) -> QuiverSpec {
    QuiverSpec::standard_d(n)
}

fn cat_of(q: &QuiverSpec) -> Result<ClusterCategory, String> {
    ClusterCategory::new(q).map_err(err)
}

fn three_cycle_example() -> Outcome {
    let c = cat("1->2 2->3")?;
    ensure!(c.len() == 9, "cluster category has {} objects", c.len());
    let t = c.resolve_list("S3,P1,S1").map_err(err)?;
    let p = endo_presentation(&c, &t).map_err(err)?;
    let arrows = p.arrow_pairs();
    ensure!(arrows == vec![(1, 3), (2, 1), (3, 2)], "arrows {arrows:?}");
    let mut rels: Vec<Vec<u32>> = Vec::new();
    for r in p.relation_vertex_paths() {
        ensure!(r.len() == 1, "relation with {} terms", r.len());
        rels.push(r[0].clone());
    }
    rels.sort();
    ensure!(rels == vec![vec![1, 3, 2], vec![2, 1, 3], vec![3, 2, 1]], "relations {rels:?}");
    let model = module_category(&c, &t).map_err(err)?;
    ensure!(model.len() == 6, "module category has {} vertices", model.len());
    Ok("3 arrows 3→2→1→3, 3 zero relations of length 2, 6 Γ-modules, 9 objects".into())
}

fn indecomposable_counts() -> Outcome {
    let mut checked = 0;
    let mut cases: Vec<(QuiverSpec, usize)> = (1..=5).map(|n| (a(n), (n * (n + 1) / 2) as usize)).collect();
    cases.extend([4u32, 5].map(|n| (d(n), (n * (n - 1)) as usize)));
    for (q, expected) in cases {
        let c = cat_of(&q)?;
        if q.rank() <= 5 && c.dynkin().family == cluster_tilt_core::quiver::Family::A {
            let intervals = TypeAQuiver::new(&q).map_err(err)?.intervals().len();
            ensure!(intervals == expected, "{}: {intervals} intervals", c.dynkin());
        }
        let modules = c.region().modules().len();
        ensure!(modules == expected, "{}: knitted {modules} modules, expected {expected}", c.dynkin());
        ensure!(c.len() == expected + q.rank(), "{}: {} objects", c.dynkin(), c.len());
        for t in enumerate_tilting(&c).map_err(err)? {
            let got = module_category(&c, t.summands()).map_err(err)?.len();
            ensure!(got == expected, "{} T = {t}: {got} Γ-modules, expected {expected}", c.dynkin());
            checked += 1;
        }
    }
    Ok(format!("{checked} tilting objects over A1–A5, D4, D5"))
}

fn two_completions() -> Outcome {
    let mut checked = 0;
    for q in [a(1), a(2), a(3), a(4), d(4)] {
        let c = cat_of(&q)?;
        for tbar in enumerate_almost_complete(&c).map_err(err)? {
            let mut direct = Vec::new();
            for x in c.objects().filter(|x| !tbar.summands().contains(x)) {
                if is_tilting(&c, tbar.with(x).summands()).map_err(err)? {
                    direct.push(x);
                }
            }
            ensure!(direct.len() == 2, "{}: {} completions", c.dynkin(), direct.len());
            let pair = complements(&c, &tbar).map_err(err)?;
            ensure!(
                BTreeSet::from([pair.m, pair.m_star]) == direct.iter().copied().collect(),
                "{}: complements disagree with the direct scan",
                c.dynkin()
            );
            let forward = exchange(&c, &pair.tilting(), pair.m).map_err(err)?;
            let back = exchange(&c, &forward.tilting_prime(), forward.m_star).map_err(err)?;
            ensure!(back.tilting_prime() == pair.tilting(), "{}: mutation is not an involution", c.dynkin());
            ensure!(back == forward.flipped(), "{}: exchange data not symmetric", c.dynkin());
            checked += 1;
        }
    }
    Ok(format!("{checked} almost complete tilting objects"))
}

fn scope() -> Result<Vec<(ClusterCategory, Vec<AlmostComplete>)>, String> {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut out = Vec::new();
    for (q, sample) in [(a(2), None), (a(3), None), (a(4), Some(50)), (d(4), Some(50))] {
        let c = cat_of(&q)?;
        let mut all = enumerate_almost_complete(&c).map_err(err)?;
        if let Some(k) = sample {
            ensure!(all.len() >= k, "{} has only {} almost complete objects", c.dynkin(), all.len());
            all = all.choose_multiple(&mut rng, k).cloned().collect();
        }
        out.push((c, all));
    }
    Ok(out)
}

fn factor_categories() -> Outcome {
    let mut checked = 0;
    for (c, tbars) in scope()? {
        for tbar in tbars {
            let r = theorem_b_verify(&c, &tbar).map_err(err)?;
            ensure!(r.pass && r.gamma_objects == r.gamma_prime_objects, "{}: report failed", c.dynkin());
            ensure!(r.gamma_objects == c.region().modules().len() - 1, "{}: {} objects", c.dynkin(), r.gamma_objects);
            checked += 1;
        }
    }
    Ok(format!("{checked} exchanges (A2, A3 all; 50 sampled each in A4, D4)"))
}

fn exchange_simple_modules() -> Outcome {
    let mut checked = 0;
    for (c, tbars) in scope()? {
        for tbar in tbars {
            let pair = complements(&c, &tbar).map_err(err)?;
            let s = exchange_simples(&c, &pair).map_err(err)?;
            let unit = |v: &[i64], i: usize| v.iter().enumerate().all(|(j, &x)| x == i64::from(j == i));
            ensure!(unit(&s.s_m_dims.0, s.m_index), "{}: S_M = {}", c.dynkin(), s.s_m_dims);
            ensure!(unit(&s.s_m_star_dims.0, s.m_star_index), "{}: S_M* = {}", c.dynkin(), s.s_m_star_dims);
            let e1 = c.ext1(pair.m, pair.m_star).map_err(err)?;
            let e2 = c.ext1(pair.m_star, pair.m).map_err(err)?;
            ensure!(e1 == 1 && e2 == 1, "{}: Ext¹ dims {e1}, {e2}", c.dynkin());
            checked += 1;
        }
    }
    Ok(format!("{checked} exchanges"))
}

fn oracle_equivalence() -> Outcome {
    let mut pairs = 0;
    let mut orientations = 0;
    for n in 2..=4 {
        for q in a(n).all_orientations() {
            let c = cat_of(&q)?;
            let o = TypeAQuiver::new(&q).map_err(err)?;
            let objs: Vec<OracleObject> = c
                .objects()
                .map(|x| match c.dim_vector(x) {
                    Some(d) => OracleObject::Module(o.from_dim_vector(&d).expect("interval")),
                    None => OracleObject::ShiftedProjective(c.shifted_projective_vertex(x).unwrap()),
                })
                .collect();
            for x in c.objects() {
                for y in c.objects() {
                    let (ox, oy) = (objs[x.0], objs[y.0]);
                    if let (OracleObject::Module(m), OracleObject::Module(nn)) = (ox, oy) {
                        let hd = hom_h(&c, x, y).map_err(err)?;
                        ensure!(hd == o.hom_bruteforce(m, nn), "{q}: Hom_D({}, {})", c.name(x), c.name(y));
                        let ed = ext_h(&c, x, y).map_err(err)?;
                        ensure!(ed == o.ext_bruteforce(m, nn).map_err(err)?, "{q}: Ext_D({}, {})", c.name(x), c.name(y));
                    }
                    let hc = c.hom_dim(x, y).map_err(err)?;
                    let want = o.cluster_hom_oracle(ox, oy).map_err(err)?;
                    ensure!(hc == want, "{q}: Hom_C({}, {}) = {hc}, oracle {want}", c.name(x), c.name(y));
                    pairs += 1;
                }
            }
            orientations += 1;
        }
    }
    Ok(format!("{pairs} object pairs over {orientations} orientations"))
}

fn tilting_counts() -> Outcome {
    let mut got = Vec::new();
    for n in 1..=5 {
        let c = cat_of(&a(n))?;
        let count = enumerate_tilting(&c).map_err(err)?.len() as u64;
        let want = catalan_count(n as usize);
        ensure!(count == want, "A{n}: {count} tilting objects, triangulations {want}");
        got.push(count.to_string());
    }
    Ok(format!("counts {}", got.join(", ")))
}

fn sink_mutation() -> Outcome {
    let mut checked = 0;
    for base in [a(3), d(4)] {
        for q in base.all_orientations() {
            let c = cat_of(&q)?;
            for &v in q.vertices().iter().filter(|&&v| q.is_sink(v)) {
                let r = apr_mutate(&c, v).map_err(err)?;
                ensure!(r.presentation.relations.is_empty(), "{q} at {v}: relations present");
                let got = r.hereditary_quiver().expect("hereditary").map_err(err)?;
                ensure!(got == q.reflect_at(v), "{q} at {v}: got {got}");
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} sink mutations"))
}

fn invariants() -> Outcome {
    let mut quivers: Vec<QuiverSpec> = (1..=6).map(a).collect();
    quivers.extend((4..=6).map(d));
    quivers.extend((6..=8).map(QuiverSpec::standard_e));
    quivers.push(QuiverSpec::parse("2->1 2->3 4->3 4->5").map_err(err)?);
    quivers.push(QuiverSpec::parse("1->3 3->2 4->3").map_err(err)?);
    let mut names = Vec::new();
    for q in quivers {
        let c = cat_of(&q)?;
        let modules: Vec<ObjectId> = c.objects().filter(|&x| c.is_module(x)).collect();
        for &x in &modules {
            for &y in &modules {
                let dx = c.dim_vector(x).unwrap();
                let dy = c.dim_vector(y).unwrap();
                let lhs = hom_h(&c, x, y).map_err(err)? as i64 - ext_h(&c, x, y).map_err(err)? as i64;
                let rhs = euler_form(&q, &dx, &dy).map_err(err)?;
                ensure!(lhs == rhs, "{}: Euler identity at ({}, {})", c.dynkin(), c.name(x), c.name(y));
            }
        }
        let tq = c.tq();
        for x in c.objects() {
            for y in c.objects() {
                let e = c.ext1(x, y).map_err(err)?;
                ensure!(e == c.ext1(y, x).map_err(err)?, "{}: Ext¹ asymmetric at ({}, {})", c.dynkin(), c.name(x), c.name(y));
                for i in [-3, 3] {
                    let far = tq.apply_in_window(Automorphism::F, i, c.position(y)).map_err(err)?;
                    let dim = c.mesh().dim(c.position(x), far).map_err(err)?;
                    ensure!(dim == 0, "{}: Hom_D({}, F^{i} {}) = {dim}", c.dynkin(), c.name(x), c.name(y));
                }
            }
        }
        for &v in q.vertices() {
            let image = c.tau(c.tau(c.projective(v)));
            ensure!(image == c.injective(v), "{}: τ²P{v} = {}", c.dynkin(), c.name(image));
        }
        names.push(c.dynkin().to_string());
    }
    Ok(format!("types {}", names.join(" ")))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("A3 cluster-tilted example", three_cycle_example),
        ("indecomposable counts of Γ and H agree", indecomposable_counts),
        ("exactly two completions, involutive mutation", two_completions),
        ("factor categories of an exchange agree", factor_categories),
        ("exchange simples and one-dimensional Ext¹", exchange_simple_modules),
        ("Hom dimensions agree with brute force", oracle_equivalence),
        ("tilting counts equal triangulation counts", tilting_counts),
        ("sink mutation reverses arrows", sink_mutation),
        ("invariant suite", invariants),
    ];
    let start = Instant::now();
    let handles: Vec<_> = criteria
        .into_iter()
        .map(|(name, f)| {
            (name, std::thread::spawn(move || {
                let t = Instant::now();
                let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
                (r, t.elapsed())
            }))
        })
        .collect();
    let mut failed = 0;
    for (i, (name, h)) in handles.into_iter().enumerate() {
        let (r, took) = h.join().expect("criterion thread");
        match r {
            Ok(detail) => println!("criterion {}: PASS (exact) {name}: {detail} [{:.1}s]", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL (exact) {name}: {why} [{:.1}s]", i + 1, took.as_secs_f64());
            }
        }
    }
    println!("acceptance: {} of 9 passed in {:.1}s", 9 - failed, start.elapsed().as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}
