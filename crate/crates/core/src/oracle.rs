//! Brute-force ground truth for type A, built from explicit matrices and
//! the Euler form only. Nothing here touches the mesh machinery.
//!
//! Reduction table used by [`cluster_hom_oracle`] (modules `M`, `N`;
//! projectives `P_u`, `P_w`; τ and τ⁻¹ are the module translates, zero on
//! projectives resp. injectives):
//!
//! | X        | Y        | dim Hom_C(X, Y)                 |
//! |----------|----------|---------------------------------|
//! | `M`      | `N`      | `Hom(M, N) + Ext¹(M, τ⁻¹N)`     |
//! | `P_u[1]` | `N`      | `Hom(P_u, τ⁻¹N)`                |
//! | `M`      | `P_w[1]` | `Ext¹(M, P_w)`                  |
//! | `P_u[1]` | `P_w[1]` | `Hom(P_u, P_w)`                 |

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quiver::{euler_form, recognize_dynkin, DimVector, Family, QuiverSpec, VertexId};

/// A quiver representation: a vector space per vertex and a matrix per arrow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    /// Indexed by vertex index.
    pub dims: Vec<usize>,
    /// Indexed by arrow id; `maps[a]` has shape `dim(tgt) × dim(src)`.
    pub maps: Vec<Matrix>,
}

/// Dimension of the space of morphisms `M → N`, by solving the commuting
/// squares `N_a φ_u = φ_w M_a` for every arrow `a: u → w`.
pub fn hom_representations(q: &QuiverSpec, m: &Representation, n: &Representation) -> usize {
    // unknown φ_v is a dim N_v × dim M_v block
    let mut offsets = Vec::with_capacity(q.rank());
    let mut unknowns = 0;
    for i in 0..q.rank() {
        offsets.push(unknowns);
        unknowns += m.dims[i] * n.dims[i];
    }
    if unknowns == 0 {
        return 0;
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut rows: Vec<Vec<crate::linalg::Rational>> = Vec::new();
    for a in q.arrows() {
        let (u, w) = (q.index_of(a.src).unwrap(), q.index_of(a.tgt).unwrap());
        let (ma, na) = (&m.maps[a.id], &n.maps[a.id]);
        // entry (r, c) of N_a φ_u − φ_w M_a, r < dim N_w, c < dim M_u
        for r in 0..n.dims[w] {
            for c in 0..m.dims[u] {
                let mut row = crate::linalg::zero_vec(unknowns);
                for k in 0..n.dims[u] {
                    row[var(u, k, c)] += na.get(r, k);
                }
                for k in 0..m.dims[w] {
                    row[var(w, r, k)] -= ma.get(k, c);
                }
                rows.push(row);
            }
        }
    }
    let mut mat = Matrix::zeros(rows.len(), unknowns);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            mat.set(i, j, x);
        }
    }
    mat.kernel().len()
}

/// Interval module on positions `start..=end` of the line underlying a
/// type-A quiver.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntervalRep {
    pub start: usize,
    pub end: usize,
}

/// A type-A quiver with its vertices listed along the underlying line.
#[derive(Debug, Clone)]
pub struct TypeAQuiver {
    quiver: QuiverSpec,
    line: Vec<VertexId>,
}

/// An indecomposable object of the cluster category in oracle terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleObject {
    Module(IntervalRep),
    ShiftedProjective(VertexId),
}

impl TypeAQuiver {
    pub fn new(q: &QuiverSpec) -> Result<Self> {
        let class = recognize_dynkin(q)?;
        if class.family != Family::A {
            return Err(Error::NotDynkin(format!("interval oracle needs type A, got {class}")));
        }
        let start = *q.vertices().iter().find(|&&v| q.neighbours(v).len() <= 1).unwrap();
        let mut line = vec![start];
        while line.len() < q.rank() {
            let last = *line.last().unwrap();
            let next = q.neighbours(last).into_iter().find(|w| !line.contains(w)).unwrap();
            line.push(next);
        }
        Ok(Self { quiver: q.clone(), line })
    }

    pub fn quiver(&self) -> &QuiverSpec {
        &self.quiver
    }

    pub fn intervals(&self) -> Vec<IntervalRep> {
        let n = self.line.len();
        (0..n).flat_map(|a| (a..n).map(move |b| IntervalRep { start: a, end: b })).collect()
    }

    fn contains(&self, iv: IntervalRep, v: VertexId) -> bool {
        let pos = self.line.iter().position(|&w| w == v).unwrap();
        (iv.start..=iv.end).contains(&pos)
    }

    pub fn dim_vector(&self, iv: IntervalRep) -> DimVector {
        DimVector(self.quiver.vertices().iter().map(|&v| self.contains(iv, v) as i64).collect())
    }

    pub fn from_dim_vector(&self, d: &DimVector) -> Option<IntervalRep> {
        self.intervals().into_iter().find(|&iv| &self.dim_vector(iv) == d)
    }

    pub fn representation(&self, iv: IntervalRep) -> Representation {
        let q = &self.quiver;
        let dims = q.vertices().iter().map(|&v| self.contains(iv, v) as usize).collect::<Vec<_>>();
        let maps = q
            .arrows()
            .iter()
            .map(|a| {
                let (s, t) = (self.contains(iv, a.src) as usize, self.contains(iv, a.tgt) as usize);
                if s == 1 && t == 1 {
                    Matrix::identity(1)
                } else {
                    Matrix::zeros(t, s)
                }
            })
            .collect();
        Representation { dims, maps }
    }

    /// The projective `P_v`: the vertices reachable from `v` along arrows.
    pub fn projective(&self, v: VertexId) -> IntervalRep {
        let mut reach = vec![v];
        let mut i = 0;
        while i < reach.len() {
            let u = reach[i];
            for a in self.quiver.out_arrows(u) {
                if !reach.contains(&a.tgt) {
                    reach.push(a.tgt);
                }
            }
            i += 1;
        }
        let pos: Vec<usize> = reach.iter().map(|w| self.line.iter().position(|x| x == w).unwrap()).collect();
        IntervalRep { start: *pos.iter().min().unwrap(), end: *pos.iter().max().unwrap() }
    }

    /// The injective `I_v`: the vertices from which `v` is reachable.
    pub fn injective(&self, v: VertexId) -> IntervalRep {
        let mut reach = vec![v];
        let mut i = 0;
        while i < reach.len() {
            let u = reach[i];
            for a in self.quiver.in_arrows(u) {
                if !reach.contains(&a.src) {
                    reach.push(a.src);
                }
            }
            i += 1;
        }
        let pos: Vec<usize> = reach.iter().map(|w| self.line.iter().position(|x| x == w).unwrap()).collect();
        IntervalRep { start: *pos.iter().min().unwrap(), end: *pos.iter().max().unwrap() }
    }

    pub fn hom_bruteforce(&self, m: IntervalRep, n: IntervalRep) -> usize {
        hom_representations(&self.quiver, &self.representation(m), &self.representation(n))
    }

    /// `dim Ext¹ = dim Hom − <dim M, dim N>` (hereditary).
    pub fn ext_bruteforce(&self, m: IntervalRep, n: IntervalRep) -> Result<usize> {
        let e = euler_form(&self.quiver, &self.dim_vector(m), &self.dim_vector(n))?;
        let ext = self.hom_bruteforce(m, n) as i64 - e;
        if ext < 0 {
            return Err(Error::NegativeExt(format!("{m:?}, {n:?}")));
        }
        Ok(ext as usize)
    }

    /// `τM`: the unique interval `Z` with `dim Hom(N, Z) = dim Ext¹(M, N)`
    /// for every interval `N`; `None` when `M` is projective.
    pub fn tau(&self, m: IntervalRep) -> Result<Option<IntervalRep>> {
        let all = self.intervals();
        let ext: Vec<usize> = all.iter().map(|&n| self.ext_bruteforce(m, n)).collect::<Result<_>>()?;
        if ext.iter().all(|&e| e == 0) {
            return Ok(None);
        }
        let hits: Vec<IntervalRep> = all
            .iter()
            .copied()
            .filter(|&z| all.iter().zip(&ext).all(|(&n, &e)| self.hom_bruteforce(n, z) == e))
            .collect();
        match hits.as_slice() {
            [z] => Ok(Some(*z)),
            _ => Err(Error::Internal(format!("no unique τ for {m:?}: {hits:?}"))),
        }
    }

    /// `τ⁻¹N`: the unique interval `Z` with `τZ = N`; `None` when `N` is injective.
    pub fn tau_inv(&self, n: IntervalRep) -> Result<Option<IntervalRep>> {
        for z in self.intervals() {
            if self.tau(z)? == Some(n) {
                return Ok(Some(z));
            }
        }
        Ok(None)
    }

    /// τ on objects of the cluster category: `τP_v = P_v[1]` and
    /// `τ(P_v[1]) = I_v`.
    pub fn cluster_tau(&self, x: OracleObject) -> Result<OracleObject> {
        Ok(match x {
            OracleObject::Module(m) => match self.tau(m)? {
                Some(t) => OracleObject::Module(t),
                None => {
                    let v = *self.quiver.vertices().iter().find(|&&v| self.projective(v) == m).unwrap();
                    OracleObject::ShiftedProjective(v)
                }
            },
            OracleObject::ShiftedProjective(v) => OracleObject::Module(self.injective(v)),
        })
    }

    /// `dim Ext¹_C(X, Y) = dim Hom_C(X, τY)`, since `[1] = τ` in `C`.
    pub fn cluster_ext_oracle(&self, x: OracleObject, y: OracleObject) -> Result<usize> {
        self.cluster_hom_oracle(x, self.cluster_tau(y)?)
    }

    pub fn cluster_hom_oracle(&self, x: OracleObject, y: OracleObject) -> Result<usize> {
        use OracleObject::*;
        Ok(match (x, y) {
            (Module(m), Module(n)) => {
                let twisted = match self.tau_inv(n)? {
                    Some(t) => self.ext_bruteforce(m, t)?,
                    None => 0,
                };
                self.hom_bruteforce(m, n) + twisted
            }
            (ShiftedProjective(u), Module(n)) => match self.tau_inv(n)? {
                Some(t) => self.hom_bruteforce(self.projective(u), t),
                None => 0,
            },
            (Module(m), ShiftedProjective(w)) => self.ext_bruteforce(m, self.projective(w))?,
            (ShiftedProjective(u), ShiftedProjective(w)) => {
                self.hom_bruteforce(self.projective(u), self.projective(w))
            }
        })
    }
}

/// Number of triangulations of a convex `(n + 3)`-gon.
pub fn catalan_count(n: usize) -> u64 {
    assert!(n >= 1, "rank must be positive");
    let sides = n + 3;
    // t[p]: triangulations of a convex polygon with p vertices (t[2] = 1 for an edge)
    let mut t = vec![0u64; sides + 1];
    t[2] = 1;
    for p in 3..=sides {
        // fix the edge (0, p-1); the apex k splits into polygons of k+1 and p-k vertices
        t[p] = (1..p - 1).map(|k| t[k + 1] * t[p - k]).sum();
    }
    t[sides]
}
