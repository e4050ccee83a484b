//! The cluster category `C = D^b(mod kQ)/F`.
//!
//! Objects are F-orbit representatives from the fundamental domain (the
//! module region plus `τP_v ≅ P_v[1]`). Morphism spaces are orbit sums
//!
//! ```text
//! Hom_C(X, Y) = ⊕_i Hom_D(X, F^i Y)
//! ```
//!
//! evaluated over the guard window `|i| ≤ GUARD`; the two extreme degrees
//! are checked to vanish.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::RwLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Rational};
use crate::mesh::{HomBasis, MeshCategory, PathExpression};
use crate::quiver::{recognize_dynkin, DimVector, DynkinClass, QuiverSpec, VertexId};
use crate::translation::{
    build_zquiver, cluster_ar_quiver, default_window, install_shift_and_f, knit, Automorphism, ClusterQuiver,
    ModuleRegion, StableTranslationQuiver, ZVertex,
};

pub const GUARD: i32 = 3;

/// Index of an indecomposable object of `C`: modules first, in the
/// translation quiver's order, then `P_v[1]` by ascending `v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ObjectId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategorySummary {
    pub n: usize,
    pub h: usize,
    pub objects: usize,
}

/// A Hom space of `C` with its graded components `Hom_D(X, F^i Y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CHom {
    pub source: ObjectId,
    pub target: ObjectId,
    /// Nonzero components only, keyed by the orbit index `i`.
    pub components: BTreeMap<i32, HomBasis>,
}

impl CHom {
    pub fn total(&self) -> usize {
        self.components.values().map(|b| b.dimension).sum()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        self.components.iter().map(|(&i, b)| (i, b.dimension)).collect()
    }

    /// `{"dims": {"0": d0, "1": d1}, "total": t}`
    pub fn to_json(&self) -> serde_json::Value {
        let dims: serde_json::Map<String, serde_json::Value> =
            self.components.iter().map(|(i, b)| (i.to_string(), b.dimension.into())).collect();
        serde_json::json!({ "dims": dims, "total": self.total() })
    }

    /// The `k`-th basis element in degree-major order.
    pub fn element(&self, k: usize) -> CMorphism {
        let mut k = k;
        let mut components = BTreeMap::new();
        for (&i, b) in &self.components {
            if k < b.dimension {
                components.insert(i, unit_vec(b.dimension, k));
                break;
            }
            k -= b.dimension;
        }
        CMorphism { source: self.source, target: self.target, components }
    }

    pub fn elements(&self) -> Vec<CMorphism> {
        (0..self.total()).map(|k| self.element(k)).collect()
    }

    /// Coordinates of a morphism in the degree-major basis.
    pub fn flatten(&self, f: &CMorphism) -> Vec<Rational> {
        let mut out = Vec::with_capacity(self.total());
        for (i, b) in &self.components {
            match f.components.get(i) {
                Some(c) => out.extend(c.iter().cloned()),
                None => out.extend(zero_vec(b.dimension)),
            }
        }
        out
    }

    pub fn unflatten(&self, v: &[Rational]) -> CMorphism {
        let mut components = BTreeMap::new();
        let mut at = 0;
        for (&i, b) in &self.components {
            let c = v[at..at + b.dimension].to_vec();
            at += b.dimension;
            if !is_zero_vec(&c) {
                components.insert(i, c);
            }
        }
        CMorphism { source: self.source, target: self.target, components }
    }
}

/// A morphism of `C`: coordinates of each graded component in the basis of
/// `Hom_D(X, F^i Y)`. Zero components are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CMorphism {
    pub source: ObjectId,
    pub target: ObjectId,
    pub components: BTreeMap<i32, Vec<Rational>>,
}

impl CMorphism {
    pub fn zero(source: ObjectId, target: ObjectId) -> Self {
        Self { source, target, components: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|c| is_zero_vec(c))
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.components.iter().filter(|(_, c)| !is_zero_vec(c)).map(|(&i, _)| i).collect()
    }

    pub fn add(&self, other: &CMorphism) -> CMorphism {
        assert_eq!((self.source, self.target), (other.source, other.target));
        let mut components = self.components.clone();
        for (i, c) in &other.components {
            let e = components.entry(*i).or_insert_with(|| zero_vec(c.len()));
            for (a, b) in e.iter_mut().zip(c) {
                *a += b;
            }
        }
        components.retain(|_, c| !is_zero_vec(c));
        CMorphism { source: self.source, target: self.target, components }
    }

    pub fn scale(&self, s: &Rational) -> CMorphism {
        let mut components: BTreeMap<i32, Vec<Rational>> =
            self.components.iter().map(|(&i, c)| (i, c.iter().map(|x| x * s).collect())).collect();
        components.retain(|_, c| !is_zero_vec(c));
        CMorphism { source: self.source, target: self.target, components }
    }
}

pub struct ClusterCategory {
    quiver: QuiverSpec,
    dynkin: DynkinClass,
    region: ModuleRegion,
    cq: ClusterQuiver,
    mesh: MeshCategory,
    dims: RwLock<HashMap<(ObjectId, ObjectId), usize>>,
}

impl fmt::Debug for ClusterCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClusterCategory")
            .field("quiver", &self.quiver.to_string())
            .field("dynkin", &self.dynkin)
            .field("objects", &self.cq.len())
            .finish()
    }
}

impl ClusterCategory {
    pub fn new(q: &QuiverSpec) -> Result<Self> {
        let dynkin = recognize_dynkin(q)?;
        Self::with_window(q, default_window(dynkin))
    }

    pub fn with_window(q: &QuiverSpec, window: (i32, i32)) -> Result<Self> {
        let dynkin = recognize_dynkin(q)?;
        let tq = build_zquiver(q, window)?;
        let region = knit(&tq)?;
        let tq = install_shift_and_f(&tq, &region)?;
        let cq = cluster_ar_quiver(&tq, &region)?;
        let cat = Self {
            quiver: q.clone(),
            dynkin,
            region,
            cq,
            mesh: MeshCategory::new(tq),
            dims: RwLock::new(HashMap::new()),
        };
        // every F^i-translate used by the guard window must fit
        for &z in cat.cq.objects() {
            for i in [-GUARD, GUARD] {
                cat.tq().apply_in_window(Automorphism::F, i, z)?;
            }
        }
        Ok(cat)
    }

    pub fn parse(quiver: &str) -> Result<Self> {
        Self::new(&QuiverSpec::parse(quiver)?)
    }

    pub fn quiver(&self) -> &QuiverSpec {
        &self.quiver
    }

    pub fn dynkin(&self) -> DynkinClass {
        self.dynkin
    }

    pub fn region(&self) -> &ModuleRegion {
        &self.region
    }

    pub fn cluster_quiver(&self) -> &ClusterQuiver {
        &self.cq
    }

    pub fn mesh(&self) -> &MeshCategory {
        &self.mesh
    }

    pub fn tq(&self) -> &StableTranslationQuiver {
        self.mesh.tq()
    }

    pub fn summary(&self) -> CategorySummary {
        let n = self.quiver.rank();
        let h = self.region.modules().len();
        CategorySummary { n, h, objects: self.cq.len() }
    }

    pub fn len(&self) -> usize {
        self.cq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cq.is_empty()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjectId> {
        (0..self.cq.len()).map(ObjectId)
    }

    pub fn position(&self, x: ObjectId) -> ZVertex {
        self.cq.position(x.0)
    }

    pub fn object_at(&self, z: ZVertex) -> ObjectId {
        ObjectId(self.cq.id_of(self.cq.canonical(self.tq(), z)).expect("canonical vertex is an object"))
    }

    pub fn is_module(&self, x: ObjectId) -> bool {
        self.region.is_module(self.position(x))
    }

    /// `Some(v)` when `x` is the shifted projective `P_v[1]`.
    pub fn shifted_projective_vertex(&self, x: ObjectId) -> Option<VertexId> {
        let z = self.position(x);
        (z.slice == -1).then_some(z.vertex)
    }

    pub fn dim_vector(&self, x: ObjectId) -> Option<DimVector> {
        self.region.dim(self.position(x)).cloned()
    }

    pub fn name(&self, x: ObjectId) -> String {
        match self.shifted_projective_vertex(x) {
            Some(v) => format!("P{v}[1]"),
            None => self.dim_vector(x).unwrap().dotted(),
        }
    }

    pub fn projective(&self, v: VertexId) -> ObjectId {
        self.object_at(self.region.projective(v))
    }

    pub fn injective(&self, v: VertexId) -> ObjectId {
        self.object_at(self.region.injective(v))
    }

    pub fn shifted_projective(&self, v: VertexId) -> ObjectId {
        self.object_at(ZVertex::new(-1, v))
    }

    pub fn simple(&self, v: VertexId) -> ObjectId {
        let z = self.region.find_by_dim(&self.quiver.simple_dim(v)).expect("simple modules are knitted");
        self.object_at(z)
    }

    /// Resolves an object id or name: `7`, `0.1.1`, `P2[1]`, `P2`, `S2`, `I2`.
    pub fn resolve(&self, name: &str) -> Result<ObjectId> {
        let name = name.trim();
        let unknown = || Error::UnknownObject(name.to_string());
        if let Ok(i) = name.parse::<usize>() {
            return (i < self.len()).then_some(ObjectId(i)).ok_or_else(unknown);
        }
        let vertex = |s: &str| -> Result<VertexId> {
            let v: VertexId = s.parse().map_err(|_| unknown())?;
            if self.quiver.contains(v) {
                Ok(v)
            } else {
                Err(unknown())
            }
        };
        if let Some(rest) = name.strip_suffix("[1]") {
            let v = rest.strip_prefix('P').ok_or_else(unknown)?;
            return Ok(self.shifted_projective(vertex(v)?));
        }
        if let Some(v) = name.strip_prefix('P') {
            return Ok(self.projective(vertex(v)?));
        }
        if let Some(v) = name.strip_prefix('S') {
            return Ok(self.simple(vertex(v)?));
        }
        if let Some(v) = name.strip_prefix('I') {
            return Ok(self.injective(vertex(v)?));
        }
        let parts: Vec<i64> = name.split('.').map(|p| p.parse().map_err(|_| unknown())).collect::<Result<_>>()?;
        if parts.len() != self.quiver.rank() {
            return Err(unknown());
        }
        let z = self.region.find_by_dim(&DimVector(parts)).ok_or_else(unknown)?;
        Ok(self.object_at(z))
    }

    pub fn resolve_list(&self, names: &str) -> Result<Vec<ObjectId>> {
        names.split(',').filter(|s| !s.trim().is_empty()).map(|s| self.resolve(s)).collect()
    }

    pub fn tau(&self, x: ObjectId) -> ObjectId {
        ObjectId(self.cq.tau(x.0))
    }

    pub fn tau_inv(&self, x: ObjectId) -> ObjectId {
        ObjectId(self.cq.tau_inv(x.0))
    }

    /// `[1]` on objects of `C`.
    pub fn shift(&self, x: ObjectId) -> ObjectId {
        self.object_at(self.tq().shift(self.position(x)))
    }

    /// `Hom_C(X, Y)` with bases in each degree; the degrees `±GUARD` must vanish.
    pub fn hom_cluster(&self, x: ObjectId, y: ObjectId) -> Result<CHom> {
        let (zx, zy) = (self.position(x), self.position(y));
        let mut components = BTreeMap::new();
        for i in -GUARD..=GUARD {
            let target = self.tq().apply_in_window(Automorphism::F, i, zy)?;
            let b = self.mesh.hom_derived(zx, target)?;
            if b.dimension == 0 {
                continue;
            }
            if i.abs() == GUARD {
                return Err(Error::WindowTooSmall(format!(
                    "Hom_D({zx}, F^{i}{zy}) is nonzero at the guard edge"
                )));
            }
            components.insert(i, b);
        }
        Ok(CHom { source: x, target: y, components })
    }

    /// Total dimension of `Hom_C(X, Y)`, memoized.
    pub fn hom_dim(&self, x: ObjectId, y: ObjectId) -> Result<usize> {
        if let Some(&d) = self.dims.read().unwrap().get(&(x, y)) {
            return Ok(d);
        }
        let (zx, zy) = (self.position(x), self.position(y));
        let mut total = 0;
        for i in -GUARD..=GUARD {
            let target = self.tq().apply_in_window(Automorphism::F, i, zy)?;
            let d = self.mesh.dim(zx, target)?;
            if d > 0 && i.abs() == GUARD {
                return Err(Error::WindowTooSmall(format!("Hom_D({zx}, F^{i}{zy}) nonzero at guard edge")));
            }
            total += d;
        }
        self.dims.write().unwrap().insert((x, y), total);
        Ok(total)
    }

    /// `dim Ext¹_C(A, B) = dim Hom_C(A, B[1])`.
    pub fn ext1(&self, a: ObjectId, b: ObjectId) -> Result<usize> {
        self.hom_dim(a, self.shift(b))
    }

    pub fn identity(&self, x: ObjectId) -> CMorphism {
        let mut components = BTreeMap::new();
        components.insert(0, vec![Rational::from_integer(1.into())]);
        CMorphism { source: x, target: x, components }
    }

    fn component_expr(&self, f: &CMorphism, i: i32, coords: &[Rational]) -> Result<PathExpression> {
        let target = self.tq().apply_in_window(Automorphism::F, i, self.position(f.target))?;
        self.mesh.from_coordinates(self.position(f.source), target, coords)
    }

    /// `g ∘ f` with `(g ∘ f)_k = Σ_{i+j=k} F^i(g_j) ∘ f_i`.
    pub fn compose(&self, f: &CMorphism, g: &CMorphism) -> Result<CMorphism> {
        if f.target != g.source {
            return Err(Error::Composability(format!("target {} ≠ source {}", f.target, g.source)));
        }
        let mut acc: BTreeMap<i32, Vec<Rational>> = BTreeMap::new();
        let zx = self.position(f.source);
        for (&i, fc) in &f.components {
            if is_zero_vec(fc) {
                continue;
            }
            let fe = self.component_expr(f, i, fc)?;
            for (&j, gc) in &g.components {
                if is_zero_vec(gc) {
                    continue;
                }
                let k = i + j;
                if k.abs() >= GUARD {
                    continue;
                }
                let ge = self.component_expr(g, j, gc)?;
                let moved = self.mesh.transport(&ge, Automorphism::F, i)?;
                let prod = self.mesh.compose(&fe, &moved)?;
                let coords = self.mesh.coordinates(&prod)?;
                let d = self.mesh.table(zx)?.dim(prod.target);
                let e = acc.entry(k).or_insert_with(|| zero_vec(d));
                for (a, b) in e.iter_mut().zip(coords) {
                    *a += b;
                }
            }
        }
        acc.retain(|_, c| !c.iter().all(Zero::is_zero));
        Ok(CMorphism { source: f.source, target: g.target, components: acc })
    }
}
