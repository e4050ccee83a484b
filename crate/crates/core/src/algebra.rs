//! Basic algebras given by a quiver and a path basis, their representations,
//! minimal projective resolutions and the presentation record.

use std::collections::BTreeSet;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cluster::ObjectId;
use crate::linalg::{fmt_rational, solve, Matrix, Rational, Subspace};
use crate::quiver::DimVector;

/// A path as a sequence of arrow ids, read from source to target. The empty
/// path is the idempotent at its vertex.
pub type GPath = Vec<usize>;

/// A representation over `n` vertices; `maps[a]` has shape `dim(tgt) × dim(src)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaRep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl GammaRep {
    pub fn simple(n: usize, arrows: &[(usize, usize)], at: usize) -> Self {
        let dims: Vec<usize> = (0..n).map(|i| usize::from(i == at)).collect();
        let maps = arrows.iter().map(|&(s, t)| Matrix::zeros(dims[t], dims[s])).collect();
        Self { dims, maps }
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    pub fn dim_vector(&self) -> DimVector {
        DimVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn apply_path(&self, path: &[usize], v: &[Rational]) -> Vec<Rational> {
        path.iter().fold(v.to_vec(), |acc, &a| self.maps[a].mul_vec(&acc))
    }
}

/// A basic algebra `kQ/I` recorded through a basis of paths between every
/// pair of vertices and the indecomposable projectives written in it.
#[derive(Debug, Clone)]
pub struct BasicAlgebra {
    n: usize,
    arrows: Vec<(usize, usize)>,
    /// `paths[s][t]`: paths `s → t` whose classes form a basis of `e_s Λ e_t`.
    paths: Vec<Vec<Vec<GPath>>>,
    /// `projectives[s]` has basis `paths[s][t]` at vertex `t`.
    projectives: Vec<GammaRep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GlobalDimension {
    Finite { value: usize },
    /// Some simple has a nonzero syzygy at the depth bound.
    WitnessedInfinite { vertex: usize, depth: usize },
}

impl GlobalDimension {
    pub fn is_finite(&self) -> bool {
        matches!(self, GlobalDimension::Finite { .. })
    }
}

impl BasicAlgebra {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>, paths: Vec<Vec<Vec<GPath>>>, projectives: Vec<GammaRep>) -> Self {
        Self { n, arrows, paths, projectives }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn paths(&self, s: usize, t: usize) -> &[GPath] {
        &self.paths[s][t]
    }

    pub fn projective(&self, s: usize) -> &GammaRep {
        &self.projectives[s]
    }

    pub fn simple(&self, s: usize) -> GammaRep {
        GammaRep::simple(self.n, &self.arrows, s)
    }

    pub fn dimension(&self) -> usize {
        self.projectives.iter().map(GammaRep::total_dim).sum()
    }

    /// Generators of `M` modulo its radical, as `(vertex, vector)` pairs.
    pub fn top(&self, m: &GammaRep) -> Vec<(usize, Vec<Rational>)> {
        let mut gens = Vec::new();
        for v in 0..self.n {
            let mut span = Subspace::new(m.dims[v]);
            for (a, &(_, t)) in self.arrows.iter().enumerate() {
                if t == v {
                    for c in 0..m.maps[a].cols() {
                        span.insert(m.maps[a].column(c));
                    }
                }
            }
            for i in 0..m.dims[v] {
                let e = crate::linalg::unit_vec(m.dims[v], i);
                if span.insert(e.clone()) {
                    gens.push((v, e));
                }
            }
        }
        gens
    }

    /// Kernel of the projective cover of `m`.
    pub fn syzygy(&self, m: &GammaRep) -> GammaRep {
        let gens = self.top(m);
        let mut kernels: Vec<Vec<Vec<Rational>>> = Vec::with_capacity(self.n);
        let mut cover_dims = Vec::with_capacity(self.n);
        for t in 0..self.n {
            let mut cols = Vec::new();
            for (k, g) in &gens {
                for p in &self.paths[*k][t] {
                    cols.push(m.apply_path(p, g));
                }
            }
            cover_dims.push(cols.len());
            kernels.push(Matrix::from_columns(m.dims[t], &cols).kernel());
        }
        let mut maps = Vec::with_capacity(self.arrows.len());
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            let mut cols = Vec::with_capacity(kernels[s].len());
            for u in &kernels[s] {
                // the cover's arrow map is block diagonal over the generators
                let mut w = Vec::with_capacity(cover_dims[t]);
                let mut offset = 0;
                for (k, _) in &gens {
                    let block = &self.projectives[*k].maps[a];
                    w.extend(block.mul_vec(&u[offset..offset + block.cols()]));
                    offset += block.cols();
                }
                let coords = solve(&kernels[t], &w).expect("syzygy is a subrepresentation");
                cols.push(coords);
            }
            maps.push(Matrix::from_columns(kernels[t].len(), &cols));
        }
        GammaRep { dims: kernels.iter().map(Vec::len).collect(), maps }
    }

    /// Projective dimension of `m`, or `None` if the syzygy at `bound` is nonzero.
    pub fn projective_dimension(&self, m: &GammaRep, bound: usize) -> Option<usize> {
        let mut cur = m.clone();
        for d in 0..=bound {
            let next = self.syzygy(&cur);
            if next.is_zero() {
                return Some(d);
            }
            cur = next;
        }
        None
    }

    /// Maximum projective dimension of the simples, searched to depth `bound`.
    pub fn global_dimension(&self, bound: usize) -> GlobalDimension {
        let mut value = 0;
        for v in 0..self.n {
            match self.projective_dimension(&self.simple(v), bound) {
                Some(d) => value = value.max(d),
                None => return GlobalDimension::WitnessedInfinite { vertex: v, depth: bound },
            }
        }
        GlobalDimension::Finite { value }
    }

    /// Dimension vectors of the first `depth` syzygies of `m`.
    pub fn syzygy_dims(&self, m: &GammaRep, depth: usize) -> Vec<DimVector> {
        let mut out = Vec::with_capacity(depth);
        let mut cur = m.clone();
        for _ in 0..depth {
            cur = self.syzygy(&cur);
            out.push(cur.dim_vector());
            if cur.is_zero() {
                break;
            }
        }
        out
    }
}

pub fn has_oriented_cycle(n: usize, arrows: &[(usize, usize)]) -> bool {
    // Kahn's algorithm: a cycle leaves vertices with positive in-degree
    let mut indeg = vec![0usize; n];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.push(t);
                }
            }
        }
    }
    seen < n
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedVertex {
    pub label: u32,
    pub object: ObjectId,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedArrow {
    pub id: usize,
    pub src: u32,
    pub tgt: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationTerm {
    pub path: GPath,
    pub coeff: Rational,
}

impl Serialize for RelationTerm {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("RelationTerm", 2)?;
        st.serialize_field("path", &self.path)?;
        st.serialize_field("coeff", &fmt_rational(&self.coeff))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for RelationTerm {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            path: GPath,
            coeff: String,
        }
        let raw = Raw::deserialize(d)?;
        let coeff = raw.coeff.parse::<Rational>().map_err(serde::de::Error::custom)?;
        Ok(RelationTerm { path: raw.path, coeff })
    }
}

pub type Relation = Vec<RelationTerm>;

/// Gabriel quiver with a minimal set of relations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraPresentation {
    pub vertices: Vec<PresentedVertex>,
    pub arrows: Vec<PresentedArrow>,
    pub relations: Vec<Relation>,
    pub dimension: usize,
    /// Smallest `L` with `rad^L = 0`.
    pub loewy_length: usize,
    pub is_hereditary: bool,
    pub has_cycles: bool,
    pub global_dimension: GlobalDimension,
}

impl AlgebraPresentation {
    /// Arrows as `(src label, tgt label)` pairs, sorted.
    pub fn arrow_pairs(&self) -> Vec<(u32, u32)> {
        let mut v: Vec<(u32, u32)> = self.arrows.iter().map(|a| (a.src, a.tgt)).collect();
        v.sort();
        v
    }

    /// The relation paths, each as a sequence of vertex labels.
    pub fn relation_vertex_paths(&self) -> Vec<Vec<Vec<u32>>> {
        self.relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|term| {
                        let mut labels = vec![self.arrows[term.path[0]].src];
                        labels.extend(term.path.iter().map(|&a| self.arrows[a].tgt));
                        labels
                    })
                    .collect()
            })
            .collect()
    }

    pub fn labels(&self) -> BTreeSet<u32> {
        self.vertices.iter().map(|v| v.label).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("presentation serializes")
    }
}
