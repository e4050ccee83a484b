//! The translation quiver `ZQ^op` of the derived category, the knitted
//! module region and the cluster AR-quiver obtained as the quotient by
//! `F = τ⁻¹[1]`.
//!
//! Coordinates: `(k, v)` with `τ(k, v) = (k - 1, v)`. Every arrow `u -> w` of
//! `Q` yields arrows `(k, w) -> (k, u)` and `(k, u) -> (k + 1, w)`. The
//! indecomposable projective `P_v` sits at `(0, v)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quiver::{recognize_dynkin, DimVector, DynkinClass, QuiverSpec, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ZVertex {
    pub slice: i32,
    pub vertex: VertexId,
}

impl ZVertex {
    pub const fn new(slice: i32, vertex: VertexId) -> Self {
        Self { slice, vertex }
    }
}

impl fmt::Display for ZVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.slice, self.vertex)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Automorphism {
    Tau,
    Shift,
    F,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct ShiftData {
    /// Indexed by vertex index: `[1](k, v) = (k + offset, target)`.
    forward: Vec<(i32, VertexId)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StableTranslationQuiver {
    quiver: QuiverSpec,
    class: DynkinClass,
    window: (i32, i32),
    /// Vertices of one slice in a linear order compatible with the arrows
    /// inside a slice (sinks of `Q` first).
    slice_order: Vec<VertexId>,
    slice_pos: HashMap<VertexId, usize>,
    shift: Option<ShiftData>,
}

/// Default window half-width for a Dynkin class with Coxeter number `h`.
pub fn default_window(class: DynkinClass) -> (i32, i32) {
    let w = 4 * (class.coxeter_number() as i32 + 2);
    (-w, w)
}

pub fn build_zquiver(q: &QuiverSpec, window: (i32, i32)) -> Result<StableTranslationQuiver> {
    let class = recognize_dynkin(q)?;
    let h = class.coxeter_number() as i32;
    if window.0 > -2 || window.1 < h {
        return Err(Error::WindowTooSmall(format!(
            "window [{}, {}] must contain [-2, {h}]",
            window.0, window.1
        )));
    }
    let mut slice_order = q.topological_order().map_err(Error::NotAcyclic)?;
    slice_order.reverse();
    let slice_pos = slice_order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    Ok(StableTranslationQuiver { quiver: q.clone(), class, window, slice_order, slice_pos, shift: None })
}

impl StableTranslationQuiver {
    pub fn quiver(&self) -> &QuiverSpec {
        &self.quiver
    }

    pub fn dynkin(&self) -> DynkinClass {
        self.class
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    pub fn in_window(&self, z: ZVertex) -> bool {
        (self.window.0..=self.window.1).contains(&z.slice)
    }

    pub fn slice_order(&self) -> &[VertexId] {
        &self.slice_order
    }

    /// Sort key realizing the directedness of the quiver: every arrow goes
    /// from a smaller key to a larger one.
    pub fn order_key(&self, z: ZVertex) -> (i32, usize) {
        (z.slice, self.slice_pos[&z.vertex])
    }

    /// All window vertices in order-key order.
    pub fn vertices(&self) -> Vec<ZVertex> {
        (self.window.0..=self.window.1)
            .flat_map(|k| self.slice_order.iter().map(move |&v| ZVertex::new(k, v)))
            .collect()
    }

    pub fn tau(&self, z: ZVertex) -> ZVertex {
        ZVertex::new(z.slice - 1, z.vertex)
    }

    pub fn tau_inv(&self, z: ZVertex) -> ZVertex {
        ZVertex::new(z.slice + 1, z.vertex)
    }

    /// Middles of the mesh ending at `z`, i.e. the direct predecessors of
    /// `z`; slice-major, arrow-id-minor.
    pub fn predecessors(&self, z: ZVertex) -> Vec<ZVertex> {
        let mut out: Vec<ZVertex> =
            self.quiver.in_arrows(z.vertex).map(|a| ZVertex::new(z.slice - 1, a.src)).collect();
        out.extend(self.quiver.out_arrows(z.vertex).map(|a| ZVertex::new(z.slice, a.tgt)));
        out
    }

    pub fn successors(&self, z: ZVertex) -> Vec<ZVertex> {
        let mut out: Vec<ZVertex> = self.quiver.in_arrows(z.vertex).map(|a| ZVertex::new(z.slice, a.src)).collect();
        out.extend(self.quiver.out_arrows(z.vertex).map(|a| ZVertex::new(z.slice + 1, a.tgt)));
        out
    }

    pub fn has_arrow(&self, from: ZVertex, to: ZVertex) -> bool {
        self.successors(from).contains(&to)
    }

    pub fn has_shift(&self) -> bool {
        self.shift.is_some()
    }

    fn shift_data(&self) -> &ShiftData {
        self.shift.as_ref().expect("shift installed by install_shift_and_f")
    }

    pub fn shift(&self, z: ZVertex) -> ZVertex {
        let (off, w) = self.shift_data().forward[self.quiver.index_of(z.vertex).unwrap()];
        ZVertex::new(z.slice + off, w)
    }

    pub fn shift_inv(&self, z: ZVertex) -> ZVertex {
        let data = self.shift_data();
        let (i, (off, _)) = data.forward.iter().enumerate().find(|(_, (_, w))| *w == z.vertex).unwrap();
        ZVertex::new(z.slice - off, self.quiver.vertices()[i])
    }

    pub fn f(&self, z: ZVertex) -> ZVertex {
        self.tau_inv(self.shift(z))
    }

    pub fn f_inv(&self, z: ZVertex) -> ZVertex {
        self.shift_inv(self.tau(z))
    }

    /// Applies `auto^power`; the formulas are total on the infinite quiver.
    pub fn apply(&self, auto: Automorphism, power: i32, z: ZVertex) -> ZVertex {
        let mut z = z;
        for _ in 0..power.unsigned_abs() {
            z = match (auto, power > 0) {
                (Automorphism::Tau, true) => self.tau(z),
                (Automorphism::Tau, false) => self.tau_inv(z),
                (Automorphism::Shift, true) => self.shift(z),
                (Automorphism::Shift, false) => self.shift_inv(z),
                (Automorphism::F, true) => self.f(z),
                (Automorphism::F, false) => self.f_inv(z),
            };
        }
        z
    }

    /// Like [`apply`](Self::apply) but insists that the image lies in the window.
    pub fn apply_in_window(&self, auto: Automorphism, power: i32, z: ZVertex) -> Result<ZVertex> {
        let w = self.apply(auto, power, z);
        if self.in_window(w) {
            Ok(w)
        } else {
            Err(Error::WindowTooSmall(format!("{auto:?}^{power} {z} = {w} leaves the window")))
        }
    }
}

/// The knitted module category of `H = kQ` inside `ZQ^op`, together with the
/// Grothendieck classes of every window vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRegion {
    classes: BTreeMap<ZVertex, DimVector>,
    modules: Vec<ZVertex>,
    projectives: BTreeMap<VertexId, ZVertex>,
    injectives: BTreeMap<VertexId, ZVertex>,
    last_slice: BTreeMap<VertexId, i32>,
}

impl ModuleRegion {
    pub fn class(&self, z: ZVertex) -> Option<&DimVector> {
        self.classes.get(&z)
    }

    pub fn is_module(&self, z: ZVertex) -> bool {
        z.slice >= 0 && self.last_slice.get(&z.vertex).is_some_and(|&l| z.slice <= l)
    }

    pub fn dim(&self, z: ZVertex) -> Option<&DimVector> {
        self.is_module(z).then(|| &self.classes[&z])
    }

    /// Module vertices in order-key order.
    pub fn modules(&self) -> &[ZVertex] {
        &self.modules
    }

    pub fn projective(&self, v: VertexId) -> ZVertex {
        self.projectives[&v]
    }

    pub fn injective(&self, v: VertexId) -> ZVertex {
        self.injectives[&v]
    }

    pub fn projectives(&self) -> &BTreeMap<VertexId, ZVertex> {
        &self.projectives
    }

    pub fn injectives(&self) -> &BTreeMap<VertexId, ZVertex> {
        &self.injectives
    }

    /// Last module slice of the τ-orbit through base vertex `v`.
    pub fn last_slice(&self, v: VertexId) -> i32 {
        self.last_slice[&v]
    }

    pub fn is_projective(&self, z: ZVertex) -> bool {
        z.slice == 0
    }

    pub fn is_injective(&self, z: ZVertex) -> bool {
        self.is_module(z) && z.slice == self.last_slice[&z.vertex]
    }

    pub fn find_by_dim(&self, d: &DimVector) -> Option<ZVertex> {
        self.modules.iter().copied().find(|&z| &self.classes[&z] == d)
    }
}

pub fn knit(tq: &StableTranslationQuiver) -> Result<ModuleRegion> {
    let q = tq.quiver();
    let (kmin, kmax) = tq.window();
    let mut classes: BTreeMap<ZVertex, DimVector> = BTreeMap::new();
    for &v in q.vertices() {
        classes.insert(ZVertex::new(0, v), q.projective_dim(v));
    }
    let mesh_sum = |classes: &BTreeMap<ZVertex, DimVector>, z: ZVertex| {
        tq.predecessors(z).iter().fold(DimVector::zero(q.rank()), |acc, m| acc.add(&classes[m]))
    };
    // forward: dim τ⁻¹X = Σ middles − dim X
    for k in 0..kmax {
        for &v in tq.slice_order() {
            let z = ZVertex::new(k + 1, v);
            let c = mesh_sum(&classes, z).sub(&classes[&ZVertex::new(k, v)]);
            classes.insert(z, c);
        }
    }
    // backward: dim τX = Σ middles(X) − dim X, sources of Q first
    for k in (kmin + 1..=0).rev() {
        for &v in tq.slice_order().iter().rev() {
            let z = ZVertex::new(k, v);
            let c = mesh_sum(&classes, z).sub(&classes[&z]);
            classes.insert(ZVertex::new(k - 1, v), c);
        }
    }

    let mut last_slice = BTreeMap::new();
    for &v in q.vertices() {
        let mut k = 0;
        while classes[&ZVertex::new(k + 1, v)].is_positive() {
            k += 1;
            if k + 1 > kmax {
                return Err(Error::WindowTooSmall("module region reaches the window edge".into()));
            }
        }
        last_slice.insert(v, k);
    }
    let mut modules: Vec<ZVertex> = q
        .vertices()
        .iter()
        .flat_map(|&v| (0..=last_slice[&v]).map(move |k| ZVertex::new(k, v)))
        .collect();
    modules.sort_by_key(|&z| tq.order_key(z));

    // Nakayama: the τ-orbit of P_v ends at an injective I_σ(v), σ a permutation.
    let mut injectives = BTreeMap::new();
    for &v in q.vertices() {
        let end = ZVertex::new(last_slice[&v], v);
        let d = &classes[&end];
        let w = q
            .vertices()
            .iter()
            .copied()
            .find(|&w| &q.injective_dim(w) == d)
            .ok_or_else(|| Error::Internal(format!("τ-orbit of P_{v} ends at non-injective {d}")))?;
        if injectives.insert(w, end).is_some() {
            return Err(Error::Internal(format!("injective I_{w} found twice")));
        }
    }
    for &v in q.vertices() {
        let tp = &classes[&ZVertex::new(-1, v)];
        if *tp != q.injective_dim(v).neg() {
            return Err(Error::Internal(format!("τP_{v} has class {tp}, expected −dim I_{v}")));
        }
    }
    let expected = tq.dynkin().num_indecomposables();
    if modules.len() != expected {
        return Err(Error::Internal(format!("knitted {} modules, expected {expected}", modules.len())));
    }
    let projectives = q.vertices().iter().map(|&v| (v, ZVertex::new(0, v))).collect();
    Ok(ModuleRegion { classes, modules, projectives, injectives, last_slice })
}

/// Installs `[1]` from `[1]P_v = τ⁻¹ I_v`, extended τ-equivariantly, and
/// with it `F = τ⁻¹[1]`.
pub fn install_shift_and_f(tq: &StableTranslationQuiver, region: &ModuleRegion) -> Result<StableTranslationQuiver> {
    let q = tq.quiver();
    let forward: Vec<(i32, VertexId)> = q
        .vertices()
        .iter()
        .map(|&v| {
            let inj = region.injective(v);
            (inj.slice + 1, inj.vertex)
        })
        .collect();
    let mut out = tq.clone();
    out.shift = Some(ShiftData { forward });
    for &v in q.vertices() {
        let p = region.projective(v);
        let fp = out.f(p);
        if !out.in_window(fp) {
            return Err(Error::WindowTooSmall(format!("F(P_{v}) = {fp} leaves the window")));
        }
        if region.is_module(fp) {
            return Err(Error::Internal(format!("F(P_{v}) = {fp} lies in the module region")));
        }
    }
    Ok(out)
}

/// The AR-quiver of the cluster category: F-orbits of `ZQ^op` with
/// representatives in the module region and the slice of `τP_v ≅ P_v[1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterQuiver {
    objects: Vec<ZVertex>,
    index: HashMap<ZVertex, usize>,
    arrows: Vec<(usize, usize)>,
    tau: Vec<usize>,
    last_slice: BTreeMap<VertexId, i32>,
}

pub fn cluster_ar_quiver(tq: &StableTranslationQuiver, region: &ModuleRegion) -> Result<ClusterQuiver> {
    if !tq.has_shift() {
        return Err(Error::Internal("shift not installed".into()));
    }
    let mut objects: Vec<ZVertex> = region.modules().to_vec();
    objects.extend(tq.quiver().vertices().iter().map(|&v| ZVertex::new(-1, v)));
    let index = objects.iter().enumerate().map(|(i, &z)| (z, i)).collect();
    let last_slice = tq.quiver().vertices().iter().map(|&v| (v, region.last_slice(v))).collect();
    let mut cq = ClusterQuiver { objects, index, arrows: Vec::new(), tau: Vec::new(), last_slice };
    let mut arrows = Vec::new();
    let mut tau = Vec::new();
    for (i, &z) in cq.objects.iter().enumerate() {
        for t in tq.successors(z) {
            arrows.push((i, cq.index[&cq.canonical(tq, t)]));
        }
        tau.push(cq.index[&cq.canonical(tq, tq.tau(z))]);
    }
    arrows.sort_unstable();
    cq.arrows = arrows;
    cq.tau = tau;
    let mut seen = vec![false; cq.tau.len()];
    for &t in &cq.tau {
        if std::mem::replace(&mut seen[t], true) {
            return Err(Error::Internal("τ is not a permutation of the cluster quiver".into()));
        }
    }
    Ok(cq)
}

impl ClusterQuiver {
    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[ZVertex] {
        &self.objects
    }

    pub fn position(&self, id: usize) -> ZVertex {
        self.objects[id]
    }

    pub fn id_of(&self, z: ZVertex) -> Option<usize> {
        self.index.get(&z).copied()
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn tau(&self, id: usize) -> usize {
        self.tau[id]
    }

    pub fn tau_inv(&self, id: usize) -> usize {
        self.tau.iter().position(|&t| t == id).expect("τ is a permutation")
    }

    pub fn in_domain(&self, z: ZVertex) -> bool {
        z.slice >= -1 && self.last_slice.get(&z.vertex).is_some_and(|&l| z.slice <= l)
    }

    /// Representative of the F-orbit of `z` in the fundamental domain.
    pub fn canonical(&self, tq: &StableTranslationQuiver, z: ZVertex) -> ZVertex {
        let mut z = z;
        for _ in 0..10_000 {
            if self.in_domain(z) {
                return z;
            }
            z = if z.slice < -1 { tq.f(z) } else { tq.f_inv(z) };
        }
        panic!("F-orbit canonicalization did not converge at {z}");
    }

    /// The unique power `i` with `F^i(canonical) = z`.
    pub fn orbit_index(&self, tq: &StableTranslationQuiver, z: ZVertex) -> (ZVertex, i32) {
        let c = self.canonical(tq, z);
        let mut i = 0;
        let mut w = c;
        while w != z {
            if w.slice < z.slice {
                w = tq.f(w);
                i += 1;
            } else {
                w = tq.f_inv(w);
                i -= 1;
            }
        }
        (c, i)
    }
}
