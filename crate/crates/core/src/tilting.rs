//! Rigid and tilting objects of the cluster category, their enumeration,
//! complements of almost complete tilting objects, and the minimal
//! approximations entering the exchange triangles.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cluster::{CMorphism, ClusterCategory, ObjectId};
use crate::error::{Error, Result};
use crate::linalg::{Rational, Subspace};

/// A basic tilting object `T = T_1 ⊕ … ⊕ T_n`, summands sorted by id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TiltingObject {
    summands: Vec<ObjectId>,
}

impl TiltingObject {
    /// Validates and sorts the summands.
    pub fn new(cat: &ClusterCategory, summands: impl IntoIterator<Item = ObjectId>) -> Result<Self> {
        let set: BTreeSet<ObjectId> = summands.into_iter().collect();
        let summands: Vec<ObjectId> = set.into_iter().collect();
        if !is_tilting(cat, &summands)? {
            let names: Vec<String> = summands.iter().map(|&x| cat.name(x)).collect();
            return Err(Error::NotTilting(names.join(",")));
        }
        Ok(Self { summands })
    }

    /// `H` itself, the sum of the indecomposable projectives.
    pub fn projectives(cat: &ClusterCategory) -> Self {
        let mut summands: Vec<ObjectId> = cat.quiver().vertices().iter().map(|&v| cat.projective(v)).collect();
        summands.sort();
        Self { summands }
    }

    pub fn summands(&self) -> &[ObjectId] {
        &self.summands
    }

    pub fn contains(&self, x: ObjectId) -> bool {
        self.summands.binary_search(&x).is_ok()
    }

    pub fn without(&self, x: ObjectId) -> AlmostComplete {
        AlmostComplete { summands: self.summands.iter().copied().filter(|&y| y != x).collect() }
    }

    /// `{"summands": [ids]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "summands": self.summands })
    }
}

impl fmt::Display for TiltingObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ids: Vec<String> = self.summands.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", ids.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlmostComplete {
    summands: Vec<ObjectId>,
}

impl AlmostComplete {
    pub fn new(cat: &ClusterCategory, summands: impl IntoIterator<Item = ObjectId>) -> Result<Self> {
        let set: BTreeSet<ObjectId> = summands.into_iter().collect();
        let summands: Vec<ObjectId> = set.into_iter().collect();
        if summands.len() + 1 != cat.quiver().rank() {
            return Err(Error::NotAlmostComplete(format!(
                "{} summands, expected {}",
                summands.len(),
                cat.quiver().rank() - 1
            )));
        }
        if !is_exceptional(cat, &summands)? {
            return Err(Error::NotAlmostComplete("summands are not Ext-orthogonal".into()));
        }
        Ok(Self { summands })
    }

    pub fn summands(&self) -> &[ObjectId] {
        &self.summands
    }

    pub fn with(&self, x: ObjectId) -> TiltingObject {
        let mut summands = self.summands.clone();
        summands.push(x);
        summands.sort();
        TiltingObject { summands }
    }
}

/// A minimal right approximation `B → target` with `B` in `add T̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Approximation {
    pub target: ObjectId,
    /// The summands of `B`, with multiplicity, in the order of `maps`.
    pub middle: Vec<ObjectId>,
    pub maps: Vec<CMorphism>,
}

/// An almost complete tilting object with its two complements and the
/// middle terms of the exchange triangles `M* → B → M →` and `M → B' → M* →`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangePair {
    pub tbar: AlmostComplete,
    pub m: ObjectId,
    pub m_star: ObjectId,
    pub b: Approximation,
    pub b_prime: Approximation,
}

impl ExchangePair {
    pub fn tilting(&self) -> TiltingObject {
        self.tbar.with(self.m)
    }

    pub fn tilting_prime(&self) -> TiltingObject {
        self.tbar.with(self.m_star)
    }

    /// The same pair seen from the other complement.
    pub fn flipped(&self) -> ExchangePair {
        ExchangePair {
            tbar: self.tbar.clone(),
            m: self.m_star,
            m_star: self.m,
            b: self.b_prime.clone(),
            b_prime: self.b.clone(),
        }
    }

    /// `{"summands": [...], "M": id, "Mstar": id, "B": [...], "Bprime": [...]}`
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "summands": self.tbar.summands,
            "M": self.m,
            "Mstar": self.m_star,
            "B": self.b.middle,
            "Bprime": self.b_prime.middle,
        })
    }
}

/// Classes of the torsion pair `(Fac T, F_T)` of a tilting `H`-module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionPair {
    pub torsion: Vec<ObjectId>,
    pub torsion_free: Vec<ObjectId>,
}

/// `Ext¹_C` vanishes on all ordered pairs of summands.
pub fn is_exceptional(cat: &ClusterCategory, xs: &[ObjectId]) -> Result<bool> {
    for &a in xs {
        for &b in xs {
            if cat.ext1(a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Rigid with `n` distinct summands; cross-checked against maximal rigidity.
pub fn is_tilting(cat: &ClusterCategory, xs: &[ObjectId]) -> Result<bool> {
    let distinct: BTreeSet<ObjectId> = xs.iter().copied().collect();
    if distinct.len() != xs.len() || !is_exceptional(cat, xs)? {
        return Ok(false);
    }
    let by_count = xs.len() == cat.quiver().rank();
    let mut maximal = true;
    for y in cat.objects().filter(|y| !distinct.contains(y)) {
        if cat.ext1(y, y)? == 0 && xs.iter().try_fold(true, |ok, &x| Ok::<_, Error>(ok && compatible(cat, x, y)?))? {
            maximal = false;
            break;
        }
    }
    if by_count != maximal {
        return Err(Error::Internal(format!(
            "rigid object with {} summands: count test {by_count}, maximality test {maximal}",
            xs.len()
        )));
    }
    Ok(by_count)
}

fn compatible(cat: &ClusterCategory, x: ObjectId, y: ObjectId) -> Result<bool> {
    Ok(cat.ext1(x, y)? == 0 && cat.ext1(y, x)? == 0)
}

/// Ext-orthogonality graph on the objects of `C` (with the diagonal
/// recording self-rigidity).
pub fn compatibility_graph(cat: &ClusterCategory) -> Result<Vec<Vec<bool>>> {
    let n = cat.len();
    let mut g = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i..n {
            let ok = compatible(cat, ObjectId(i), ObjectId(j))?;
            g[i][j] = ok;
            g[j][i] = ok;
        }
    }
    Ok(g)
}

/// All tilting objects, in lexicographic order of their sorted summand ids.
pub fn enumerate_tilting(cat: &ClusterCategory) -> Result<Vec<TiltingObject>> {
    let g = compatibility_graph(cat)?;
    let n = cat.quiver().rank();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(n);
    fn grow(g: &[Vec<bool>], n: usize, start: usize, stack: &mut Vec<usize>, out: &mut Vec<TiltingObject>) {
        if stack.len() == n {
            out.push(TiltingObject { summands: stack.iter().map(|&i| ObjectId(i)).collect() });
            return;
        }
        for c in start..g.len() {
            if g[c][c] && stack.iter().all(|&s| g[s][c]) {
                stack.push(c);
                grow(g, n, c + 1, stack, out);
                stack.pop();
            }
        }
    }
    grow(&g, n, 0, &mut stack, &mut out);
    Ok(out)
}

/// Every almost complete tilting object, obtained by dropping one summand
/// from each tilting object; sorted and deduplicated.
pub fn enumerate_almost_complete(cat: &ClusterCategory) -> Result<Vec<AlmostComplete>> {
    let mut set = BTreeSet::new();
    for t in enumerate_tilting(cat)? {
        for &x in t.summands() {
            set.insert(t.without(x));
        }
    }
    Ok(set.into_iter().collect())
}

/// The two completions of `T̄`, as an exchange pair with `M` the smaller id.
pub fn complements(cat: &ClusterCategory, tbar: &AlmostComplete) -> Result<ExchangePair> {
    let completions: Vec<ObjectId> = cat
        .objects()
        .filter(|x| !tbar.summands.contains(x))
        .map(|x| Ok((x, cat.ext1(x, x)? == 0 && tbar.summands.iter().try_fold(true, |ok, &t| Ok::<_, Error>(ok && compatible(cat, t, x)?))?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter_map(|(x, ok)| ok.then_some(x))
        .collect();
    let [m, m_star] = completions.as_slice() else {
        return Err(Error::Internal(format!(
            "almost complete object has {} completions, expected 2",
            completions.len()
        )));
    };
    exchange_pair(cat, tbar, *m, *m_star)
}

/// The exchange at summand `at` of `t`: `M = at`, `M*` the other completion.
pub fn exchange(cat: &ClusterCategory, t: &TiltingObject, at: ObjectId) -> Result<ExchangePair> {
    if !t.contains(at) {
        return Err(Error::UnknownObject(format!("{} is not a summand of {t}", cat.name(at))));
    }
    let pair = complements(cat, &t.without(at))?;
    Ok(if pair.m == at { pair } else { pair.flipped() })
}

fn exchange_pair(cat: &ClusterCategory, tbar: &AlmostComplete, m: ObjectId, m_star: ObjectId) -> Result<ExchangePair> {
    let b = minimal_right_approximation(cat, m, tbar.summands())?;
    let b_prime = minimal_right_approximation(cat, m_star, tbar.summands())?;
    Ok(ExchangePair { tbar: tbar.clone(), m, m_star, b, b_prime })
}

fn radical_basis(cat: &ClusterCategory, x: ObjectId, y: ObjectId) -> Result<Vec<CMorphism>> {
    let hom = cat.hom_cluster(x, y)?;
    if x != y {
        return Ok(hom.elements());
    }
    if hom.total() != 1 {
        return Err(Error::Internal(format!("End_C({}) has dimension {}", cat.name(x), hom.total())));
    }
    Ok(Vec::new())
}

/// Minimal right `add(from)`-approximation of `target`.
///
/// `B` collects, for each summand `t`, a basis of `Hom(t, target)` modulo
/// the maps factoring through radical maps `t → t'` of `add(from)`.
pub fn minimal_right_approximation(cat: &ClusterCategory, target: ObjectId, from: &[ObjectId]) -> Result<Approximation> {
    let mut middle = Vec::new();
    let mut maps = Vec::new();
    for &t in from {
        let hom = cat.hom_cluster(t, target)?;
        let mut span = Subspace::new(hom.total());
        for &s in from {
            let into_target = cat.hom_cluster(s, target)?.elements();
            for phi in radical_basis(cat, t, s)? {
                for g in &into_target {
                    span.insert(hom.flatten(&cat.compose(&phi, g)?));
                }
            }
        }
        for f in hom.elements() {
            if span.insert(hom.flatten(&f)) {
                middle.push(t);
                maps.push(f);
            }
        }
    }
    let approx = Approximation { target, middle, maps };
    if !is_right_approximation(cat, &approx, from)? {
        return Err(Error::Internal(format!("approximation of {} is not surjective", cat.name(target))));
    }
    for k in 0..approx.maps.len() {
        let mut smaller = approx.clone();
        smaller.middle.remove(k);
        smaller.maps.remove(k);
        if is_right_approximation(cat, &smaller, from)? {
            return Err(Error::Internal(format!("approximation of {} is not minimal", cat.name(target))));
        }
    }
    Ok(approx)
}

/// `Hom(t, B) → Hom(t, target)` is onto for every `t` in `from`.
pub fn is_right_approximation(cat: &ClusterCategory, approx: &Approximation, from: &[ObjectId]) -> Result<bool> {
    for &t in from {
        let hom = cat.hom_cluster(t, approx.target)?;
        let mut span = Subspace::new(hom.total());
        for (&b, g) in approx.middle.iter().zip(&approx.maps) {
            for phi in cat.hom_cluster(t, b)?.elements() {
                span.insert(hom.flatten(&cat.compose(&phi, g)?));
            }
        }
        if span.dim() != hom.total() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn module_positions(cat: &ClusterCategory, xs: &[ObjectId]) -> Result<()> {
    match xs.iter().find(|&&x| !cat.is_module(x)) {
        Some(&x) => Err(Error::NotAModuleCollection(format!("{} is a shifted projective", cat.name(x)))),
        None => Ok(()),
    }
}

pub fn hom_h(cat: &ClusterCategory, x: ObjectId, y: ObjectId) -> Result<usize> {
    cat.mesh().dim(cat.position(x), cat.position(y))
}

/// `Ext¹_H(X, Y) = Hom_D(X, Y[1])`.
pub fn ext_h(cat: &ClusterCategory, x: ObjectId, y: ObjectId) -> Result<usize> {
    let shifted = cat.tq().shift(cat.position(y));
    cat.mesh().dim(cat.position(x), shifted)
}

/// Classical tilting `H`-module test: `Ext¹_H(T, T) = 0` and `n` summands.
pub fn is_tilting_module_h(cat: &ClusterCategory, xs: &[ObjectId]) -> Result<bool> {
    module_positions(cat, xs)?;
    let distinct: BTreeSet<ObjectId> = xs.iter().copied().collect();
    if distinct.len() != cat.quiver().rank() {
        return Ok(false);
    }
    for &a in xs {
        for &b in xs {
            if ext_h(cat, a, b)? != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Matrix of `Hom_H(P_v, X) → Hom_H(P_v, Z)`, `φ ↦ f ∘ φ`, for a module map
/// `f: X → Z` in degree 0.
fn action_at_vertex(cat: &ClusterCategory, v: u32, f: &crate::mesh::PathExpression) -> Result<Vec<Vec<Rational>>> {
    let p = cat.region().projective(v);
    let src = cat.mesh().hom_derived(p, f.source)?;
    (0..src.dimension)
        .map(|k| {
            let phi = src.element(k);
            cat.mesh().coordinates(&cat.mesh().compose(&phi, f)?)
        })
        .collect()
}

/// Rows spanning the image of `φ ↦ f ∘ φ` on `Hom(P_v, X)` for every listed
/// map `f`, viewed in `Hom(P_v, Z)`.
fn image_at_vertex(cat: &ClusterCategory, v: u32, maps: &[crate::mesh::PathExpression], ambient: usize) -> Result<Subspace> {
    let mut span = Subspace::new(ambient);
    for f in maps {
        for col in action_at_vertex(cat, v, f)? {
            span.insert(col);
        }
    }
    Ok(span)
}

fn basis_maps(cat: &ClusterCategory, x: crate::translation::ZVertex, y: crate::translation::ZVertex) -> Result<Vec<crate::mesh::PathExpression>> {
    let hom = cat.mesh().hom_derived(x, y)?;
    Ok((0..hom.dimension).map(|k| hom.element(k)).collect())
}

/// `X` embeds in a sum of copies of the `by` objects: the joint map
/// `X → ⊕ Z^{Hom(X, Z)}` is injective at every vertex.
fn is_cogenerated(cat: &ClusterCategory, x: ObjectId, by: &[crate::translation::ZVertex]) -> Result<bool> {
    let zx = cat.position(x);
    for &v in cat.quiver().vertices() {
        let dim_here = cat.mesh().hom_derived(cat.region().projective(v), zx)?.dimension;
        if dim_here == 0 {
            continue;
        }
        // kernel of the joint map = common kernel of the rows of all action matrices
        let mut rows = Subspace::new(dim_here);
        for &z in by {
            for f in basis_maps(cat, zx, z)? {
                let cols = action_at_vertex(cat, v, &f)?;
                let out_dim = cols.first().map_or(0, Vec::len);
                for r in 0..out_dim {
                    rows.insert(cols.iter().map(|c| c[r].clone()).collect());
                }
            }
        }
        if rows.dim() < dim_here {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Y` is a quotient of a sum of copies of the `by` objects.
fn is_generated(cat: &ClusterCategory, y: ObjectId, by: &[crate::translation::ZVertex]) -> Result<bool> {
    let zy = cat.position(y);
    for &v in cat.quiver().vertices() {
        let dim_here = cat.mesh().hom_derived(cat.region().projective(v), zy)?.dimension;
        if dim_here == 0 {
            continue;
        }
        let mut image = Subspace::new(dim_here);
        for &t in by {
            for b in image_at_vertex(cat, v, &basis_maps(cat, t, zy)?, dim_here)?.basis() {
                image.insert(b.clone());
            }
        }
        if image.dim() < dim_here {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Fac T = {Y : Ext¹_H(T, Y) = 0}` and `F_T = {X : Hom_H(T, X) = 0}`.
/// Also checks that the classes are disjoint, `Hom(Fac T, F_T) = 0`,
/// `Fac T` is generated by `T` and `F_T = Sub(τT)`.
pub fn torsion_pair(cat: &ClusterCategory, t: &[ObjectId]) -> Result<TorsionPair> {
    if !is_tilting_module_h(cat, t)? {
        return Err(Error::NotTilting("not a tilting module".into()));
    }
    let modules: Vec<ObjectId> = cat.objects().filter(|&x| cat.is_module(x)).collect();
    let mut torsion = Vec::new();
    let mut torsion_free = Vec::new();
    for &y in &modules {
        let ext_zero = t.iter().try_fold(true, |ok, &ti| Ok::<_, Error>(ok && ext_h(cat, ti, y)? == 0))?;
        let hom_zero = t.iter().try_fold(true, |ok, &ti| Ok::<_, Error>(ok && hom_h(cat, ti, y)? == 0))?;
        if ext_zero && hom_zero {
            return Err(Error::VerificationFailed(format!("{} lies in both classes", cat.name(y))));
        }
        if ext_zero {
            torsion.push(y);
        }
        if hom_zero {
            torsion_free.push(y);
        }
    }
    for &y in &torsion {
        for &x in &torsion_free {
            if hom_h(cat, y, x)? != 0 {
                return Err(Error::VerificationFailed(format!("Hom({}, {}) ≠ 0", cat.name(y), cat.name(x))));
            }
        }
    }
    let t_pos: Vec<_> = t.iter().map(|&x| cat.position(x)).collect();
    // τT inside mod H: projective summands contribute nothing
    let tau_t: Vec<_> = t_pos.iter().filter(|z| z.slice > 0).map(|&z| cat.tq().tau(z)).collect();
    for &x in &modules {
        let in_gen = is_generated(cat, x, &t_pos)?;
        if in_gen != torsion.contains(&x) {
            return Err(Error::VerificationFailed(format!("Fac T differs from Gen T at {}", cat.name(x))));
        }
        let in_sub = !tau_t.is_empty() && is_cogenerated(cat, x, &tau_t)?;
        if in_sub != torsion_free.contains(&x) {
            return Err(Error::VerificationFailed(format!("F_T differs from Sub(τT) at {}", cat.name(x))));
        }
    }
    Ok(TorsionPair { torsion, torsion_free })
}
