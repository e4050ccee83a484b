use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use cluster_tilt_core::cluster::{CMorphism, ClusterCategory, ObjectId};
use cluster_tilt_core::linalg::{rat, Rational};
use cluster_tilt_core::quiver::QuiverSpec;
use cluster_tilt_core::tilting::{enumerate_tilting, exchange, ext_h, hom_h, TiltingObject};
use cluster_tilt_core::translation::Automorphism;
use proptest::prelude::*;

fn bases() -> Vec<QuiverSpec> {
    vec![
        QuiverSpec::linear_a(2),
        QuiverSpec::linear_a(3),
        QuiverSpec::linear_a(4),
        QuiverSpec::standard_d(4),
        QuiverSpec::standard_d(5),
        QuiverSpec::standard_e(6),
    ]
}

fn category(base: usize, mask: u64) -> Arc<ClusterCategory> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u64), Arc<ClusterCategory>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let q = bases()[base].clone();
    let orientations = q.all_orientations();
    let key = (base, mask % orientations.len() as u64);
    if let Some(c) = cache.lock().unwrap().get(&key) {
        return c.clone();
    }
    let c = Arc::new(ClusterCategory::new(&orientations[key.1 as usize]).unwrap());
    cache.lock().unwrap().insert(key, c.clone());
    c
}

fn tiltings(c: &ClusterCategory) -> Vec<TiltingObject> {
    enumerate_tilting(c).unwrap()
}

fn random_morphism(c: &ClusterCategory, x: ObjectId, y: ObjectId, seed: &[i64]) -> CMorphism {
    let hom = c.hom_cluster(x, y).unwrap();
    let coords: Vec<Rational> = (0..hom.total()).map(|i| rat(seed[i % seed.len()])).collect();
    hom.unflatten(&coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn hammock_matches_basis(base in 0usize..5, mask in any::<u64>(), pick in any::<usize>()) {
        let c = category(base, mask);
        let x = ObjectId(pick % c.len());
        let zx = c.position(x);
        for (z, d) in c.mesh().hammock_dims(zx) {
            prop_assert_eq!(c.mesh().dim(zx, z).unwrap(), d);
        }
    }

    #[test]
    fn f_preserves_hom_dims(base in 0usize..5, mask in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let c = category(base, mask);
        let (x, y) = (ObjectId(a % c.len()), ObjectId(b % c.len()));
        let tq = c.tq();
        let (zx, zy) = (c.position(x), c.position(y));
        let fx = tq.apply_in_window(Automorphism::F, 1, zx).unwrap();
        let fy = tq.apply_in_window(Automorphism::F, 1, zy).unwrap();
        prop_assert_eq!(c.mesh().dim(zx, zy).unwrap(), c.mesh().dim(fx, fy).unwrap());
    }

    #[test]
    fn serre_duality_on_modules(base in 0usize..5, mask in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let c = category(base, mask);
        let modules: Vec<ObjectId> = c.objects().filter(|&x| c.is_module(x)).collect();
        let (x, y) = (modules[a % modules.len()], modules[b % modules.len()]);
        let tau_x = c.tq().tau(c.position(x));
        prop_assert_eq!(ext_h(&c, x, y).unwrap(), c.mesh().dim(c.position(y), tau_x).unwrap());
    }

    #[test]
    fn composition_is_associative_and_bilinear(
        base in 0usize..4,
        mask in any::<u64>(),
        picks in prop::array::uniform4(any::<usize>()),
        seed in prop::collection::vec(-3i64..4, 1..5),
    ) {
        let c = category(base, mask);
        let [x, y, z, w] = picks.map(|p| ObjectId(p % c.len()));
        let f = random_morphism(&c, x, y, &seed);
        let g = random_morphism(&c, y, z, &seed[1..].iter().chain(&seed).copied().collect::<Vec<_>>());
        let h = random_morphism(&c, z, w, &seed.iter().rev().copied().collect::<Vec<_>>());
        let left = c.compose(&c.compose(&f, &g).unwrap(), &h).unwrap();
        let right = c.compose(&f, &c.compose(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let f2 = random_morphism(&c, x, y, &[1, -2]);
        let sum = c.compose(&f.add(&f2), &g).unwrap();
        let parts = c.compose(&f, &g).unwrap().add(&c.compose(&f2, &g).unwrap());
        prop_assert_eq!(sum, parts);
        prop_assert_eq!(c.compose(&c.identity(x), &f).unwrap(), f.clone());
        prop_assert_eq!(c.compose(&f, &c.identity(y)).unwrap(), f);
    }

    #[test]
    fn transport_is_functorial(base in 0usize..4, mask in any::<u64>(), a in any::<usize>()) {
        let c = category(base, mask);
        let m = c.mesh();
        let modules = c.region().modules();
        let zx = modules[a % modules.len()];
        let support: Vec<_> = m.hammock_dims(zx).into_keys().collect();
        let zy = support[a % support.len()];
        let zz = *support.last().unwrap();
        if m.dim(zx, zy).unwrap() == 0 || m.dim(zy, zz).unwrap() == 0 {
            return Ok(());
        }
        let f = m.hom_derived(zx, zy).unwrap().element(0);
        let g = m.hom_derived(zy, zz).unwrap().element(0);
        let composed = m.transport(&m.compose(&f, &g).unwrap(), Automorphism::F, 1).unwrap();
        let separately = m.compose(
            &m.transport(&f, Automorphism::F, 1).unwrap(),
            &m.transport(&g, Automorphism::F, 1).unwrap(),
        ).unwrap();
        prop_assert_eq!(m.coordinates(&composed).unwrap(), m.coordinates(&separately).unwrap());
    }

    #[test]
    fn tilting_objects_detect_their_summands(base in 0usize..5, mask in any::<u64>(), pick in any::<usize>()) {
        let c = category(base, mask);
        let all = tiltings(&c);
        let t = &all[pick % all.len()];
        for x in c.objects() {
            let orthogonal = t.summands().iter().all(|&s| c.ext1(s, x).unwrap() == 0 && c.ext1(x, s).unwrap() == 0);
            prop_assert_eq!(orthogonal, t.contains(x));
            prop_assert!(!(t.contains(x) && t.contains(c.tau(x))));
        }
        for &m in t.summands() {
            let pair = exchange(&c, t, m).unwrap();
            prop_assert_eq!(c.ext1(pair.m, pair.m_star).unwrap(), 1);
        }
    }

    #[test]
    fn euler_identity(base in 0usize..6, mask in any::<u64>(), a in any::<usize>(), b in any::<usize>()) {
        let c = category(base, mask);
        let modules: Vec<ObjectId> = c.objects().filter(|&x| c.is_module(x)).collect();
        let (x, y) = (modules[a % modules.len()], modules[b % modules.len()]);
        let form = cluster_tilt_core::quiver::euler_form(
            c.quiver(), &c.dim_vector(x).unwrap(), &c.dim_vector(y).unwrap()).unwrap();
        prop_assert_eq!(hom_h(&c, x, y).unwrap() as i64 - ext_h(&c, x, y).unwrap() as i64, form);
    }
}

#[test]
fn two_tilting_objects_contain_all_but_one_projective() {
    for base in 0..5 {
        let c = category(base, 0);
        let all = tiltings(&c);
        for &v in c.quiver().vertices() {
            let others: Vec<ObjectId> =
                c.quiver().vertices().iter().filter(|&&w| w != v).map(|&w| c.projective(w)).collect();
            let count = all.iter().filter(|t| others.iter().all(|&p| t.contains(p))).count();
            assert_eq!(count, 2, "{} at {v}", c.dynkin());
        }
    }
}
