//! Graphviz output. Vertices are emitted in slice-major order so that
//! identical inputs give identical documents.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::ops::RangeInclusive;

use crate::algebra::AlgebraPresentation;
use crate::cluster::{ClusterCategory, ObjectId};
use crate::cluster_tilted::ModuleCategoryModel;
use crate::linalg::fmt_rational;
use crate::translation::ZVertex;

struct Dot {
    out: String,
}

impl Dot {
    fn new(name: &str) -> Self {
        let mut out = String::new();
        writeln!(out, "digraph {name} {{").unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        writeln!(out, "  node [shape=box, fontname=\"Helvetica\"];").unwrap();
        Self { out }
    }

    fn node(&mut self, id: &str, label: &str, attrs: &str) {
        let extra = if attrs.is_empty() { String::new() } else { format!(", {attrs}") };
        writeln!(self.out, "  {id} [label=\"{}\"{extra}];", escape(label)).unwrap();
    }

    fn edge(&mut self, from: &str, to: &str, attrs: &str) {
        if attrs.is_empty() {
            writeln!(self.out, "  {from} -> {to};").unwrap();
        } else {
            writeln!(self.out, "  {from} -> {to} [{attrs}];").unwrap();
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn zid(z: ZVertex) -> String {
    if z.slice < 0 {
        format!("m{}_{}", -z.slice, z.vertex)
    } else {
        format!("z{}_{}", z.slice, z.vertex)
    }
}

const TAU_EDGE: &str = "style=dashed, constraint=false, arrowhead=open";

fn object_label(cat: &ClusterCategory, x: ObjectId) -> String {
    let z = cat.position(x);
    match cat.dim_vector(x) {
        Some(d) => format!("{z} d={}", d.dotted()),
        None => format!("{z} {}", cat.name(x)),
    }
}

/// Emits vertices, mesh arrows among them, and τ back-edges.
fn translation_graph(name: &str, cat: &ClusterCategory, zs: &[ZVertex], label: impl Fn(ZVertex) -> (String, String)) -> String {
    let tq = cat.tq();
    let mut sorted = zs.to_vec();
    sorted.sort_by_key(|&z| tq.order_key(z));
    let members: std::collections::BTreeSet<ZVertex> = sorted.iter().copied().collect();
    let mut dot = Dot::new(name);
    for &z in &sorted {
        let (l, attrs) = label(z);
        dot.node(&zid(z), &l, &attrs);
    }
    for &z in &sorted {
        let mut succ = tq.successors(z);
        succ.sort_by_key(|&y| tq.order_key(y));
        for y in succ.into_iter().filter(|y| members.contains(y)) {
            dot.edge(&zid(z), &zid(y), "");
        }
    }
    for &z in &sorted {
        let t = tq.tau(z);
        if members.contains(&t) {
            dot.edge(&zid(z), &zid(t), TAU_EDGE);
        }
    }
    dot.finish()
}

/// AR-quiver of `mod H`.
pub fn module_quiver(cat: &ClusterCategory) -> String {
    let region = cat.region();
    translation_graph("mod_h", cat, region.modules(), |z| {
        (format!("{z} d={}", region.dim(z).expect("module vertex").dotted()), String::new())
    })
}

/// The slices `slices` of `ZQ`, with module vertices marked by their
/// dimension vectors.
pub fn derived_quiver(cat: &ClusterCategory, slices: RangeInclusive<i32>) -> String {
    let order = cat.tq().slice_order().to_vec();
    let zs: Vec<ZVertex> = slices.flat_map(|k| order.iter().map(move |&v| ZVertex::new(k, v))).collect();
    let region = cat.region();
    translation_graph("derived", cat, &zs, |z| match region.dim(z) {
        Some(d) => (format!("{z} d={}", d.dotted()), String::new()),
        None => (z.to_string(), "color=gray".to_string()),
    })
}

/// Slice range covering the module region and the shifted projectives.
pub fn default_derived_slices(cat: &ClusterCategory) -> RangeInclusive<i32> {
    let last = cat.quiver().vertices().iter().map(|&v| cat.region().last_slice(v)).max().unwrap_or(0);
    -1..=last + 1
}

/// AR-quiver of the cluster category; `highlight` summands are drawn bold.
pub fn cluster_quiver(cat: &ClusterCategory, highlight: &[ObjectId]) -> String {
    let cq = cat.cluster_quiver();
    let mut dot = Dot::new("cluster");
    let ids: Vec<ObjectId> = cat.objects().collect();
    for &x in &ids {
        let attrs = if highlight.contains(&x) { "style=bold, color=blue" } else { "" };
        dot.node(&zid(cat.position(x)), &object_label(cat, x), attrs);
    }
    let mut arrows = cq.arrows().to_vec();
    arrows.sort();
    for (a, b) in arrows {
        dot.edge(&zid(cq.position(a)), &zid(cq.position(b)), "");
    }
    for &x in &ids {
        dot.edge(&zid(cat.position(x)), &zid(cat.position(cat.tau(x))), TAU_EDGE);
    }
    dot.finish()
}

/// AR-quiver of `mod Γ`: the cluster quiver with `add τT` greyed out.
pub fn gamma_quiver(cat: &ClusterCategory, model: &ModuleCategoryModel) -> String {
    let mut dot = Dot::new("mod_gamma");
    for x in cat.objects() {
        let id = zid(cat.position(x));
        match model.dims.get(&x) {
            Some(d) => {
                let attrs = if model.tilting.contains(&x) { "style=bold" } else { "" };
                dot.node(&id, &format!("{} d={}", cat.position(x), d.dotted()), attrs);
            }
            None => dot.node(&id, &format!("{} deleted", cat.position(x)), "style=dotted, color=gray, fontcolor=gray"),
        }
    }
    for &(a, b) in &model.arrows {
        dot.edge(&zid(cat.position(a)), &zid(cat.position(b)), "");
    }
    for (&x, &t) in &model.tau {
        dot.edge(&zid(cat.position(x)), &zid(cat.position(t)), TAU_EDGE);
    }
    dot.finish()
}

/// Gabriel quiver; each relation term becomes a dashed edge from the start
/// to the end of its path, labelled with the coefficient and the path.
pub fn presentation(p: &AlgebraPresentation) -> String {
    let mut dot = Dot::new("gamma");
    for v in &p.vertices {
        dot.node(&format!("v{}", v.label), &format!("{} ({})", v.label, v.name), "");
    }
    for a in &p.arrows {
        dot.edge(&format!("v{}", a.src), &format!("v{}", a.tgt), &format!("label=\"a{}\"", a.id));
    }
    let by_id: BTreeMap<usize, (u32, u32)> = p.arrows.iter().map(|a| (a.id, (a.src, a.tgt))).collect();
    for (r, rel) in p.relations.iter().enumerate() {
        for term in rel {
            let (Some(first), Some(last)) = (term.path.first(), term.path.last()) else { continue };
            let word: Vec<String> = term.path.iter().map(|a| format!("a{a}")).collect();
            let label = format!("r{r}: {} {}", fmt_rational(&term.coeff), word.join("·"));
            dot.edge(
                &format!("v{}", by_id[first].0),
                &format!("v{}", by_id[last].1),
                &format!("style=dashed, color=red, constraint=false, label=\"{}\"", escape(&label)),
            );
        }
    }
    dot.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> ClusterCategory {
        ClusterCategory::parse("1->2 2->3").unwrap()
    }

    #[test]
    fn module_quiver_has_six_vertices_and_tau_edges() {
        let d = module_quiver(&a3());
        assert_eq!(d.matches("label=\"(").count(), 6);
        assert_eq!(d.matches("style=dashed").count(), 3);
        assert!(d.contains("(0,3) d=0.0.1"));
        assert!(d.starts_with("digraph mod_h {"));
    }

    #[test]
    fn cluster_quiver_is_deterministic() {
        let c = a3();
        let a = cluster_quiver(&c, &[]);
        assert_eq!(a, cluster_quiver(&a3(), &[]));
        assert_eq!(a.matches("style=dashed").count(), 9);
        assert!(a.contains("P1[1]"));
    }

    #[test]
    fn presentation_marks_relations() {
        let c = a3();
        let t = c.resolve_list("S3,P1,S1").unwrap();
        let p = crate::cluster_tilted::endo_presentation(&c, &t).unwrap();
        let d = presentation(&p);
        assert_eq!(d.matches("color=red").count(), 3);
        assert_eq!(d.matches("label=\"a").count(), 3);
    }

    #[test]
    fn gamma_view_greys_deleted() {
        let c = a3();
        let t = c.resolve_list("S3,P1,S1").unwrap();
        let model = crate::cluster_tilted::module_category(&c, &t).unwrap();
        assert_eq!(gamma_quiver(&c, &model).matches("deleted").count(), 3);
    }

    #[test]
    fn derived_window_slice() {
        let c = a3();
        let d = derived_quiver(&c, default_derived_slices(&c));
        assert!(d.contains("(-1,3)"));
        assert!(d.contains("color=gray"));
    }
}
