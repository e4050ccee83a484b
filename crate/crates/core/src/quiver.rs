//! Quiver data model, Dynkin recognition and the Euler form.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub id: usize,
    pub src: VertexId,
    pub tgt: VertexId,
}

/// A finite simply-laced quiver: no loops and at most one arrow between any
/// unordered pair of vertices. Vertices are kept sorted ascending and arrow
/// ids are assigned in `(src, tgt)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuiverSpec {
    vertices: Vec<VertexId>,
    arrows: Vec<Arrow>,
}

#[derive(Debug, Serialize, Deserialize)]
struct QuiverJson {
    vertices: Vec<VertexId>,
    arrows: Vec<ArrowJson>,
}

#[derive(Debug, Serialize, Deserialize)]
struct ArrowJson {
    #[serde(default)]
    id: Option<usize>,
    src: VertexId,
    tgt: VertexId,
}

impl QuiverSpec {
    pub fn new(vertices: impl IntoIterator<Item = VertexId>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let vertex_set: BTreeSet<VertexId> = vertices.into_iter().collect();
        if vertex_set.is_empty() {
            return Err(Error::Validation("quiver has no vertices".into()));
        }
        let mut pairs = BTreeSet::new();
        let mut edges = edges.to_vec();
        edges.sort();
        for &(s, t) in &edges {
            if !vertex_set.contains(&s) || !vertex_set.contains(&t) {
                return Err(Error::Validation(format!("arrow {s}->{t} uses an undeclared vertex")));
            }
            if s == t {
                return Err(Error::Validation(format!("loop at vertex {s}")));
            }
            if !pairs.insert((s.min(t), s.max(t))) {
                return Err(Error::Validation(format!("multiple edges between {} and {}", s.min(t), s.max(t))));
            }
        }
        let vertices: Vec<VertexId> = vertex_set.into_iter().collect();
        let arrows = edges
            .into_iter()
            .enumerate()
            .map(|(id, (src, tgt))| Arrow { id, src, tgt })
            .collect();
        let q = Self { vertices, arrows };
        if !q.is_connected() {
            return Err(Error::Validation("underlying graph is disconnected".into()));
        }
        Ok(q)
    }

    /// Parses the text format (`"1->2 2->3"`, isolated vertices as bare ids)
    /// or the JSON format, chosen by the first non-blank character.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim();
        if trimmed.starts_with('{') {
            Self::from_json(trimmed)
        } else {
            Self::parse_text(trimmed)
        }
    }

    pub fn parse_text(input: &str) -> Result<Self> {
        let mut vertices = BTreeSet::new();
        let mut edges = Vec::new();
        for token in input.split_whitespace() {
            if let Some((s, t)) = token.split_once("->") {
                let s = parse_vertex(s, token)?;
                let t = parse_vertex(t, token)?;
                vertices.insert(s);
                vertices.insert(t);
                edges.push((s, t));
            } else {
                vertices.insert(parse_vertex(token, token)?);
            }
        }
        if vertices.is_empty() {
            return Err(Error::Parse("empty quiver".into()));
        }
        Self::new(vertices, &edges)
    }

    pub fn from_json(input: &str) -> Result<Self> {
        let raw: QuiverJson = serde_json::from_str(input).map_err(|e| Error::Parse(e.to_string()))?;
        let edges: Vec<_> = raw.arrows.iter().map(|a| (a.src, a.tgt)).collect();
        Self::new(raw.vertices, &edges)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let raw = QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self.arrows.iter().map(|a| ArrowJson { id: Some(a.id), src: a.src, tgt: a.tgt }).collect(),
        };
        serde_json::to_value(raw).expect("quiver serializes")
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.vertices.binary_search(&v).ok()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index_of(v).is_some()
    }

    /// Arrows `v -> w`, in arrow-id order.
    pub fn out_arrows(&self, v: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.src == v)
    }

    /// Arrows `u -> v`, in arrow-id order.
    pub fn in_arrows(&self, v: VertexId) -> impl Iterator<Item = &Arrow> {
        self.arrows.iter().filter(move |a| a.tgt == v)
    }

    pub fn neighbours(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.arrows
            .iter()
            .filter_map(|a| {
                if a.src == v {
                    Some(a.tgt)
                } else if a.tgt == v {
                    Some(a.src)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.out_arrows(v).next().is_none()
    }

    pub fn is_source(&self, v: VertexId) -> bool {
        self.in_arrows(v).next().is_none()
    }

    fn is_connected(&self) -> bool {
        let mut seen = BTreeSet::new();
        let mut queue = VecDeque::from([self.vertices[0]]);
        seen.insert(self.vertices[0]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbours(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Topological order (sources first, ties by vertex id), or the vertex of
    /// an oriented cycle.
    pub fn topological_order(&self) -> std::result::Result<Vec<VertexId>, VertexId> {
        let mut indeg: BTreeMap<VertexId, usize> = self.vertices.iter().map(|&v| (v, 0)).collect();
        for a in &self.arrows {
            *indeg.get_mut(&a.tgt).unwrap() += 1;
        }
        let mut ready: BTreeSet<VertexId> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut order = Vec::with_capacity(self.vertices.len());
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for a in self.out_arrows(v) {
                let d = indeg.get_mut(&a.tgt).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(a.tgt);
                }
            }
        }
        if order.len() == self.vertices.len() {
            Ok(order)
        } else {
            let stuck = indeg.iter().find(|(v, _)| !order.contains(v)).map(|(&v, _)| v).unwrap();
            Err(stuck)
        }
    }

    /// Number of paths from `from` to `to`. Requires an acyclic quiver.
    pub fn path_count(&self, from: VertexId, to: VertexId) -> i64 {
        let order = self.topological_order().expect("acyclic quiver");
        let mut count: BTreeMap<VertexId, i64> = BTreeMap::new();
        count.insert(from, 1);
        for v in order {
            let c = count.get(&v).copied().unwrap_or(0);
            if c == 0 {
                continue;
            }
            for a in self.out_arrows(v) {
                *count.entry(a.tgt).or_insert(0) += c;
            }
        }
        count.get(&to).copied().unwrap_or(0)
    }

    /// Dimension vector of the indecomposable projective at `v`.
    pub fn projective_dim(&self, v: VertexId) -> DimVector {
        DimVector(self.vertices.iter().map(|&w| self.path_count(v, w)).collect())
    }

    /// Dimension vector of the indecomposable injective at `v`.
    pub fn injective_dim(&self, v: VertexId) -> DimVector {
        DimVector(self.vertices.iter().map(|&u| self.path_count(u, v)).collect())
    }

    pub fn simple_dim(&self, v: VertexId) -> DimVector {
        let mut d = DimVector::zero(self.rank());
        d.0[self.index_of(v).expect("vertex of quiver")] = 1;
        d
    }

    /// Same underlying graph with the arrows touching `v` reversed.
    pub fn reflect_at(&self, v: VertexId) -> QuiverSpec {
        let edges: Vec<_> = self
            .arrows
            .iter()
            .map(|a| if a.src == v || a.tgt == v { (a.tgt, a.src) } else { (a.src, a.tgt) })
            .collect();
        QuiverSpec::new(self.vertices.iter().copied(), &edges).expect("reflection keeps validity")
    }

    /// Every orientation of the underlying graph.
    pub fn all_orientations(&self) -> Vec<QuiverSpec> {
        let m = self.arrows.len();
        (0u64..(1u64 << m))
            .map(|mask| {
                let edges: Vec<_> = self
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(i, a)| if mask >> i & 1 == 1 { (a.tgt, a.src) } else { (a.src, a.tgt) })
                    .collect();
                QuiverSpec::new(self.vertices.iter().copied(), &edges).unwrap()
            })
            .collect()
    }

    /// Linear orientation `1 -> 2 -> ... -> n` of A_n.
    pub fn linear_a(n: u32) -> QuiverSpec {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        QuiverSpec::new(1..=n, &edges).unwrap()
    }

    /// D_n with arms `1 - 3`, `2 - 3` and the tail `3 - 4 - ... - n`, all
    /// arrows oriented towards the larger id.
    pub fn standard_d(n: u32) -> QuiverSpec {
        assert!(n >= 4);
        let mut edges = vec![(1, 3), (2, 3)];
        edges.extend((3..n).map(|i| (i, i + 1)));
        QuiverSpec::new(1..=n, &edges).unwrap()
    }

    /// E_n with branch vertex 3, short arm `3 - n` and the chain
    /// `1 - 2 - ... - (n-1)`.
    pub fn standard_e(n: u32) -> QuiverSpec {
        assert!((6..=8).contains(&n));
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((3, n));
        QuiverSpec::new(1..=n, &edges).unwrap()
    }
}

fn parse_vertex(s: &str, token: &str) -> Result<VertexId> {
    s.parse::<VertexId>().map_err(|_| Error::Parse(format!("bad token `{token}`")))
}

impl fmt::Display for QuiverSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            let vs: Vec<String> = self.vertices.iter().map(|v| v.to_string()).collect();
            return write!(f, "{}", vs.join(" "));
        }
        let parts: Vec<String> = self.arrows.iter().map(|a| format!("{}->{}", a.src, a.tgt)).collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DynkinClass {
    pub family: Family,
    pub rank: usize,
}

impl DynkinClass {
    pub fn new(family: Family, rank: usize) -> Option<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        ok.then_some(Self { family, rank })
    }

    pub fn coxeter_number(&self) -> usize {
        match (self.family, self.rank) {
            (Family::A, n) => n + 1,
            (Family::D, n) => 2 * n - 2,
            (Family::E, 6) => 12,
            (Family::E, 7) => 18,
            (Family::E, _) => 30,
        }
    }

    /// Number of positive roots, i.e. of indecomposable modules.
    pub fn num_indecomposables(&self) -> usize {
        self.rank * self.coxeter_number() / 2
    }
}

impl fmt::Display for DynkinClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

/// Classifies the underlying graph. An oriented cycle is reported before
/// the shape check.
pub fn recognize_dynkin(q: &QuiverSpec) -> Result<DynkinClass> {
    if let Err(v) = q.topological_order() {
        return Err(Error::NotAcyclic(v));
    }
    let n = q.rank();
    if q.arrows().len() != n - 1 {
        return Err(Error::NotDynkin("underlying graph contains a cycle".into()));
    }
    let degree = |v: VertexId| q.neighbours(v).len();
    if let Some(&v) = q.vertices().iter().find(|&&v| degree(v) > 3) {
        return Err(Error::NotDynkin(format!("vertex {v} has degree {}", degree(v))));
    }
    let branches: Vec<VertexId> = q.vertices().iter().copied().filter(|&v| degree(v) == 3).collect();
    match branches.as_slice() {
        [] => Ok(DynkinClass { family: Family::A, rank: n }),
        [center] => {
            let mut arms: Vec<usize> = q.neighbours(*center).into_iter().map(|w| arm_length(q, *center, w)).collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, r] => Ok(DynkinClass { family: Family::D, rank: r + 3 }),
                [1, 2, 2] => Ok(DynkinClass { family: Family::E, rank: 6 }),
                [1, 2, 3] => Ok(DynkinClass { family: Family::E, rank: 7 }),
                [1, 2, 4] => Ok(DynkinClass { family: Family::E, rank: 8 }),
                _ => Err(Error::NotDynkin(format!("branch arms {arms:?}"))),
            }
        }
        _ => Err(Error::NotDynkin("more than one branch vertex".into())),
    }
}

fn arm_length(q: &QuiverSpec, center: VertexId, start: VertexId) -> usize {
    let (mut prev, mut cur, mut len) = (center, start, 1);
    loop {
        let next: Vec<_> = q.neighbours(cur).into_iter().filter(|&w| w != prev).collect();
        match next.as_slice() {
            [w] => {
                prev = cur;
                cur = *w;
                len += 1;
            }
            _ => return len,
        }
    }
}

/// Dimension vector (or, in the derived category, Grothendieck class),
/// indexed by the quiver's ascending vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DimVector(pub Vec<i64>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x >= 0) && self.0.iter().any(|&x| x > 0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> DimVector {
        DimVector(self.0.iter().map(|a| -a).collect())
    }

    /// The dotted form used for object names, e.g. `0.1.1`.
    pub fn dotted(&self) -> String {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        parts.join(".")
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `<d,e> = sum_v d_v e_v - sum_{u->w} d_u e_w`.
pub fn euler_form(q: &QuiverSpec, d: &DimVector, e: &DimVector) -> Result<i64> {
    if d.0.len() != q.rank() || e.0.len() != q.rank() {
        return Err(Error::SupportMismatch);
    }
    let diag: i64 = d.0.iter().zip(&e.0).map(|(a, b)| a * b).sum();
    let off: i64 = q
        .arrows()
        .iter()
        .map(|a| d.0[q.index_of(a.src).unwrap()] * e.0[q.index_of(a.tgt).unwrap()])
        .sum();
    Ok(diag - off)
}
