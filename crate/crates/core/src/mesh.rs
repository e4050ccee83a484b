//! Hom spaces of the mesh category of `ZQ^op`, which models the
//! indecomposables of the bounded derived category of `kQ`.
//!
//! For a fixed source `X` the spaces `Hom(X, z)` are built slice by slice:
//! `Hom(X, X)` is spanned by the identity, and for `z ≠ X`
//!
//! ```text
//! Hom(X, z) = coker( Hom(X, τz) → ⊕_m Hom(X, m) )
//! ```
//!
//! where `m` runs over the middles of the mesh ending at `z` and the map
//! composes with the arrows `τz → m`. Each space carries a basis of paths
//! together with the matrices of "compose with the arrow `m → z`".

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vec, unit_vec, zero_vec, Matrix, Rational, Subspace};
use crate::translation::{Automorphism, StableTranslationQuiver, ZVertex};

/// Vertex sequence of a path in `ZQ^op`; a single vertex is the trivial path.
pub type Path = Vec<ZVertex>;

/// A rational linear combination of parallel paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathExpression {
    pub source: ZVertex,
    pub target: ZVertex,
    #[serde(serialize_with = "serialize_terms")]
    pub terms: Vec<(Rational, Path)>,
}

fn serialize_terms<S: serde::Serializer>(terms: &[(Rational, Path)], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(terms.len()))?;
    for (c, p) in terms {
        seq.serialize_element(&serde_json::json!({
            "coeff": crate::linalg::fmt_rational(c),
            "path": p,
        }))?;
    }
    seq.end()
}

impl PathExpression {
    pub fn identity(x: ZVertex) -> Self {
        Self { source: x, target: x, terms: vec![(Rational::one(), vec![x])] }
    }

    pub fn path(p: Path) -> Self {
        Self { source: p[0], target: *p.last().unwrap(), terms: vec![(Rational::one(), p)] }
    }

    pub fn zero(source: ZVertex, target: ZVertex) -> Self {
        Self { source, target, terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|(c, _)| c.is_zero())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            source: self.source,
            target: self.target,
            terms: self.terms.iter().map(|(d, p)| (c * d, p.clone())).collect(),
        }
    }
}

/// Basis of a mesh-category Hom space. Every basis element is a single path
/// that no mesh relation rewrites further.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomBasis {
    pub source: ZVertex,
    pub target: ZVertex,
    pub dimension: usize,
    pub basis: Vec<Path>,
}

impl HomBasis {
    pub fn element(&self, i: usize) -> PathExpression {
        PathExpression::path(self.basis[i].clone())
    }
}

#[derive(Debug, Clone)]
struct HomEntry {
    basis: Vec<Path>,
    /// `(m, A)`: composing with the arrow `m → z` maps `Hom(X, m)` to
    /// `Hom(X, z)` by the matrix `A`.
    incoming: Vec<(ZVertex, Matrix)>,
}

/// All nonzero spaces `Hom(X, -)` for one source `X`.
#[derive(Debug, Clone)]
pub struct HomTable {
    source: ZVertex,
    entries: HashMap<ZVertex, HomEntry>,
    /// Set when the recursion ran into the right edge of the window with
    /// nonzero spaces still alive.
    truncated: bool,
}

impl HomTable {
    pub fn source(&self) -> ZVertex {
        self.source
    }

    pub fn dim(&self, y: ZVertex) -> usize {
        self.entries.get(&y).map_or(0, |e| e.basis.len())
    }

    pub fn support(&self) -> BTreeMap<ZVertex, usize> {
        self.entries.iter().map(|(&z, e)| (z, e.basis.len())).collect()
    }

    fn incoming(&self, to: ZVertex, from: ZVertex) -> Option<&Matrix> {
        self.entries.get(&to)?.incoming.iter().find(|(m, _)| *m == from).map(|(_, a)| a)
    }
}

/// Mesh category over a windowed translation quiver, with a memo of Hom
/// tables keyed by source. Safe to share between threads.
#[derive(Debug)]
pub struct MeshCategory {
    tq: StableTranslationQuiver,
    cache: RwLock<HashMap<ZVertex, Arc<HomTable>>>,
}

impl MeshCategory {
    pub fn new(tq: StableTranslationQuiver) -> Self {
        Self { tq, cache: RwLock::new(HashMap::new()) }
    }

    pub fn tq(&self) -> &StableTranslationQuiver {
        &self.tq
    }

    fn check_window(&self, z: ZVertex) -> Result<()> {
        if self.tq.in_window(z) {
            Ok(())
        } else {
            Err(Error::WindowTooSmall(format!("{z} lies outside the window")))
        }
    }

    pub fn table(&self, x: ZVertex) -> Result<Arc<HomTable>> {
        self.check_window(x)?;
        if let Some(t) = self.cache.read().unwrap().get(&x) {
            return Ok(Arc::clone(t));
        }
        let t = Arc::new(self.build_table(x)?);
        let mut cache = self.cache.write().unwrap();
        Ok(Arc::clone(cache.entry(x).or_insert(t)))
    }

    fn build_table(&self, x: ZVertex) -> Result<HomTable> {
        let tq = &self.tq;
        let key_x = tq.order_key(x);
        let mut entries: HashMap<ZVertex, HomEntry> = HashMap::new();
        let mut hammock: HashMap<ZVertex, i64> = HashMap::new();
        entries.insert(x, HomEntry { basis: vec![vec![x]], incoming: Vec::new() });
        hammock.insert(x, 1);
        let mut truncated = false;
        for k in x.slice..=tq.window().1 {
            let mut alive = false;
            for &v in tq.slice_order() {
                let z = ZVertex::new(k, v);
                if tq.order_key(z) <= key_x {
                    continue;
                }
                let preds: Vec<ZVertex> = tq.predecessors(z).into_iter().filter(|m| entries.contains_key(m)).collect();
                let expected = {
                    let s: i64 = tq.predecessors(z).iter().map(|m| hammock.get(m).copied().unwrap_or(0)).sum();
                    (s - hammock.get(&tq.tau(z)).copied().unwrap_or(0)).max(0)
                };
                if expected > 0 {
                    hammock.insert(z, expected);
                }
                if preds.is_empty() {
                    if expected != 0 {
                        return Err(Error::Internal(format!("hammock/basis mismatch at Hom({x},{z})")));
                    }
                    continue;
                }
                // coordinates of ⊕_m Hom(X, m)
                let offsets: Vec<usize> = preds
                    .iter()
                    .scan(0, |acc, m| {
                        let o = *acc;
                        *acc += entries[m].basis.len();
                        Some(o)
                    })
                    .collect();
                let total: usize = preds.iter().map(|m| entries[m].basis.len()).sum();
                let mut relations = Subspace::new(total);
                let tz = tq.tau(z);
                if let Some(te) = entries.get(&tz) {
                    for b in 0..te.basis.len() {
                        let mut r = zero_vec(total);
                        for (m, &off) in preds.iter().zip(&offsets) {
                            if let Some((_, a)) = entries[m].incoming.iter().find(|(s, _)| *s == tz) {
                                for (i, val) in a.column(b).into_iter().enumerate() {
                                    r[off + i] = val;
                                }
                            }
                        }
                        relations.insert(r);
                    }
                }
                let free = relations.free_coordinates();
                let dim = free.len();
                if dim as i64 != expected {
                    return Err(Error::Internal(format!(
                        "hammock/basis mismatch at Hom({x},{z}): basis {dim}, hammock {expected}"
                    )));
                }
                if dim == 0 {
                    continue;
                }
                let mut basis = Vec::with_capacity(dim);
                for &c in &free {
                    let mi = offsets.iter().rposition(|&o| o <= c).unwrap();
                    let mut p = entries[&preds[mi]].basis[c - offsets[mi]].clone();
                    p.push(z);
                    basis.push(p);
                }
                let incoming = preds
                    .iter()
                    .zip(&offsets)
                    .map(|(m, &off)| {
                        let dm = entries[m].basis.len();
                        let cols: Vec<Vec<Rational>> =
                            (0..dm).map(|b| relations.quotient_coords(&unit_vec(total, off + b), &free)).collect();
                        (*m, Matrix::from_columns(dim, &cols))
                    })
                    .collect();
                entries.insert(z, HomEntry { basis, incoming });
                alive = true;
            }
            if k > x.slice && !alive {
                break;
            }
            if k == tq.window().1 && alive {
                truncated = true;
            }
        }
        Ok(HomTable { source: x, entries, truncated })
    }

    pub fn hom_derived(&self, x: ZVertex, y: ZVertex) -> Result<HomBasis> {
        self.check_window(y)?;
        let t = self.table(x)?;
        let basis = t.entries.get(&y).map(|e| e.basis.clone()).unwrap_or_default();
        Ok(HomBasis { source: x, target: y, dimension: basis.len(), basis })
    }

    pub fn dim(&self, x: ZVertex, y: ZVertex) -> Result<usize> {
        self.check_window(y)?;
        let t = self.table(x)?;
        if t.truncated && y.slice == self.tq.window().1 {
            return Err(Error::WindowTooSmall(format!("Hom({x}, {y}) touches the window edge")));
        }
        Ok(t.dim(y))
    }

    /// Dimension-only recursion `f(z) = max(0, Σ f(middles) − f(τz))`.
    pub fn hammock_dims(&self, x: ZVertex) -> BTreeMap<ZVertex, usize> {
        let tq = &self.tq;
        let key_x = tq.order_key(x);
        let mut f: BTreeMap<ZVertex, i64> = BTreeMap::new();
        f.insert(x, 1);
        for k in x.slice..=tq.window().1 {
            let mut alive = false;
            for &v in tq.slice_order() {
                let z = ZVertex::new(k, v);
                if tq.order_key(z) <= key_x {
                    continue;
                }
                let s: i64 = tq.predecessors(z).iter().map(|m| f.get(m).copied().unwrap_or(0)).sum();
                let val = s - f.get(&tq.tau(z)).copied().unwrap_or(0);
                if val > 0 {
                    f.insert(z, val);
                    alive = true;
                }
            }
            if k > x.slice && !alive {
                break;
            }
        }
        f.into_iter().map(|(z, d)| (z, d as usize)).collect()
    }

    /// Coordinates of a path in the basis of `Hom(path[0], path.last())`.
    pub fn evaluate_path(&self, path: &[ZVertex]) -> Result<Vec<Rational>> {
        let x = path[0];
        let y = *path.last().unwrap();
        let table = self.table(x)?;
        self.check_window(y)?;
        for w in path.windows(2) {
            if !self.tq.has_arrow(w[0], w[1]) {
                return Err(Error::Composability(format!("{} -> {} is not an arrow", w[0], w[1])));
            }
            self.check_window(w[1])?;
        }
        let mut v = vec![Rational::one()];
        for w in path.windows(2) {
            match table.incoming(w[1], w[0]) {
                Some(a) => v = a.mul_vec(&v),
                None => return Ok(zero_vec(table.dim(y))),
            }
        }
        Ok(v)
    }

    /// Coordinates of an expression in the basis of its Hom space.
    pub fn coordinates(&self, f: &PathExpression) -> Result<Vec<Rational>> {
        let d = self.table(f.source)?.dim(f.target);
        let mut acc = zero_vec(d);
        for (c, p) in &f.terms {
            if p[0] != f.source || *p.last().unwrap() != f.target {
                return Err(Error::Composability("path endpoints differ from the expression's".into()));
            }
            if c.is_zero() {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(self.evaluate_path(p)?) {
                *a += c * x;
            }
        }
        Ok(acc)
    }

    /// Rewrites coordinates as a combination of basis paths.
    pub fn from_coordinates(&self, source: ZVertex, target: ZVertex, coords: &[Rational]) -> Result<PathExpression> {
        let b = self.hom_derived(source, target)?;
        if coords.len() != b.dimension {
            return Err(Error::Internal("coordinate length differs from Hom dimension".into()));
        }
        let terms = coords
            .iter()
            .zip(b.basis)
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, p)| (c.clone(), p))
            .collect();
        Ok(PathExpression { source, target, terms })
    }

    pub fn reduce(&self, f: &PathExpression) -> Result<PathExpression> {
        let c = self.coordinates(f)?;
        self.from_coordinates(f.source, f.target, &c)
    }

    /// `g ∘ f` for `f: X → Y`, `g: Y → Z`, reduced in `Hom(X, Z)`.
    pub fn compose(&self, f: &PathExpression, g: &PathExpression) -> Result<PathExpression> {
        if f.target != g.source {
            return Err(Error::Composability(format!("target {} ≠ source {}", f.target, g.source)));
        }
        let d = self.table(f.source)?.dim(g.target);
        let mut acc = zero_vec(d);
        for (c1, p1) in &f.terms {
            for (c2, p2) in &g.terms {
                let c = c1 * c2;
                if c.is_zero() {
                    continue;
                }
                let mut p = p1.clone();
                p.extend_from_slice(&p2[1..]);
                for (a, x) in acc.iter_mut().zip(self.evaluate_path(&p)?) {
                    *a += &c * x;
                }
            }
        }
        self.from_coordinates(f.source, g.target, &acc)
    }

    /// Relabels every path by `auto^power`.
    pub fn transport(&self, f: &PathExpression, auto: Automorphism, power: i32) -> Result<PathExpression> {
        let map = |z: ZVertex| self.tq.apply_in_window(auto, power, z);
        let terms = f
            .terms
            .iter()
            .map(|(c, p)| Ok((c.clone(), p.iter().map(|&z| map(z)).collect::<Result<Path>>()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PathExpression { source: map(f.source)?, target: map(f.target)?, terms })
    }

    pub fn is_zero(&self, f: &PathExpression) -> Result<bool> {
        Ok(is_zero_vec(&self.coordinates(f)?))
    }
}
