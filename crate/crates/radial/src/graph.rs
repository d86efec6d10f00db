//! Bidirected multigraph data model: signed edge ends, loops, parallel
//! edges, and the structural operators (signed cuts, contraction, gluing
//! sum, edits).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};

/// The sign carried by one end of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    /// Negation; an involution.
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// One signed end of an edge, by vertex index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeEnd {
    pub vertex: usize,
    pub sign: Sign,
}

/// An edge record. A loop has both ends at the same vertex and carries
/// two signs there (an "(a1, a2)-edge").
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub ends: [EdgeEnd; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0].vertex == self.ends[1].vertex
    }

    /// The end opposite to the given vertex, for a non-loop edge.
    pub fn other_end(&self, v: usize) -> EdgeEnd {
        if self.ends[0].vertex == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    /// Sign of vertex `v` over this non-loop edge.
    pub fn sign_at(&self, v: usize) -> Sign {
        if self.ends[0].vertex == v {
            self.ends[0].sign
        } else {
            self.ends[1].sign
        }
    }

    pub fn touches(&self, v: usize) -> bool {
        self.ends[0].vertex == v || self.ends[1].vertex == v
    }
}

/// A finite bidirected multigraph. Vertices and edges carry stable
/// string names; indices are dense and valid only within one graph
/// value. Values are immutable once built.
#[derive(Debug, Clone, Default)]
pub struct BidirectedGraph {
    vertices: Vec<String>,
    vindex: HashMap<String, usize>,
    edges: Vec<Edge>,
    eindex: HashMap<String, usize>,
    incidence: Vec<Vec<usize>>,
}

impl BidirectedGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        if self.vindex.contains_key(name) {
            return Err(input(format!("duplicate vertex {name}")));
        }
        let idx = self.vertices.len();
        self.vertices.push(name.to_string());
        self.vindex.insert(name.to_string(), idx);
        self.incidence.push(Vec::new());
        Ok(idx)
    }

    /// Adds a vertex, reusing the index if the name is already present.
    pub fn ensure_vertex(&mut self, name: &str) -> usize {
        match self.vindex.get(name) {
            Some(&i) => i,
            None => self.add_vertex(name).expect("fresh name"),
        }
    }

    pub fn add_edge(&mut self, id: &str, u: &str, su: Sign, v: &str, sv: Sign) -> Result<usize> {
        if self.eindex.contains_key(id) {
            return Err(input(format!("duplicate edge id {id}")));
        }
        let ui = *self
            .vindex
            .get(u)
            .ok_or_else(|| input(format!("unknown vertex {u}")))?;
        let vi = *self
            .vindex
            .get(v)
            .ok_or_else(|| input(format!("unknown vertex {v}")))?;
        let idx = self.edges.len();
        self.edges.push(Edge {
            id: id.to_string(),
            ends: [
                EdgeEnd { vertex: ui, sign: su },
                EdgeEnd { vertex: vi, sign: sv },
            ],
        });
        self.eindex.insert(id.to_string(), idx);
        self.incidence[ui].push(idx);
        if ui != vi {
            self.incidence[vi].push(idx);
        }
        Ok(idx)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_name(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.vindex.get(name).copied()
    }

    pub fn require_vertex(&self, name: &str) -> Result<usize> {
        self.vertex(name)
            .ok_or_else(|| input(format!("unknown vertex {name}")))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, idx: usize) -> &Edge {
        &self.edges[idx]
    }

    pub fn edge_by_id(&self, id: &str) -> Option<usize> {
        self.eindex.get(id).copied()
    }

    pub fn require_edge(&self, id: &str) -> Result<usize> {
        self.edge_by_id(id)
            .ok_or_else(|| input(format!("unknown edge {id}")))
    }

    /// Edge indices incident to `v` (loops listed once).
    pub fn incident(&self, v: usize) -> &[usize] {
        &self.incidence[v]
    }

    pub fn vertex_indices(&self) -> impl Iterator<Item = usize> {
        0..self.vertices.len()
    }

    /// Non-loop neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &e in &self.incidence[v] {
            let edge = &self.edges[e];
            if !edge.is_loop() {
                out.insert(edge.other_end(v).vertex);
            }
        }
        out
    }

    /// Neighbors of a vertex set: vertices outside `s` joined by an edge
    /// to a vertex in `s`.
    pub fn set_neighbors(&self, s: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &v in s {
            for &e in &self.incidence[v] {
                let edge = &self.edges[e];
                for end in edge.ends {
                    if !s.contains(&end.vertex) {
                        out.insert(end.vertex);
                    }
                }
            }
        }
        out
    }

    /// All non-loop edges with exactly one end in `s`.
    pub fn cut(&self, s: &BTreeSet<usize>) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, edge) in self.edges.iter().enumerate() {
            let a = s.contains(&edge.ends[0].vertex);
            let b = s.contains(&edge.ends[1].vertex);
            if a != b {
                out.push(i);
            }
        }
        out
    }

    /// The signed cut: non-loop edges with exactly one end in `s` whose
    /// `s`-side end carries sign `alpha`, paired with the vertices
    /// outside `s` those edges join.
    pub fn signed_cut(&self, s: &BTreeSet<usize>, alpha: Sign) -> (Vec<usize>, BTreeSet<usize>) {
        let mut cut = Vec::new();
        let mut nei = BTreeSet::new();
        for (i, edge) in self.edges.iter().enumerate() {
            let a = s.contains(&edge.ends[0].vertex);
            let b = s.contains(&edge.ends[1].vertex);
            if a == b {
                continue;
            }
            let (inside, outside) = if a {
                (edge.ends[0], edge.ends[1])
            } else {
                (edge.ends[1], edge.ends[0])
            };
            if inside.sign == alpha {
                cut.push(i);
                nei.insert(outside.vertex);
            }
        }
        (cut, nei)
    }

    /// Loops over `v`.
    pub fn loops_at(&self, v: usize) -> Vec<usize> {
        self.incidence[v]
            .iter()
            .copied()
            .filter(|&e| self.edges[e].is_loop())
            .collect()
    }

    /// Resolves a set of vertex names to indices.
    pub fn vertex_set(&self, names: &[&str]) -> Result<BTreeSet<usize>> {
        names.iter().map(|n| self.require_vertex(n)).collect()
    }

    /// Contraction G/X: `x` becomes a single fresh vertex; edges inside
    /// `x` (including arising loops) are deleted; edges with one end in
    /// `x` keep their outside end and signs.
    pub fn contract(&self, x: &BTreeSet<usize>) -> Result<(BidirectedGraph, usize)> {
        if x.is_empty() {
            return Err(input("cannot contract the empty set"));
        }
        for &v in x {
            if v >= self.vertices.len() {
                return Err(input(format!("vertex index {v} out of range")));
            }
        }
        let mut name = format!(
            "[{}]",
            x.iter()
                .map(|&v| self.vertices[v].as_str())
                .collect::<Vec<_>>()
                .join(",")
        );
        while self.vindex.contains_key(&name) {
            name.push('\'');
        }
        let mut g = BidirectedGraph::new();
        let fresh = g.add_vertex(&name)?;
        for (i, n) in self.vertices.iter().enumerate() {
            if !x.contains(&i) {
                g.add_vertex(n)?;
            }
        }
        for edge in &self.edges {
            let a = x.contains(&edge.ends[0].vertex);
            let b = x.contains(&edge.ends[1].vertex);
            if a && b {
                continue; // internal to X, deleted
            }
            let map = |end: EdgeEnd| -> (String, Sign) {
                if x.contains(&end.vertex) {
                    (name.clone(), end.sign)
                } else {
                    (self.vertices[end.vertex].clone(), end.sign)
                }
            };
            let (u, su) = map(edge.ends[0]);
            let (v, sv) = map(edge.ends[1]);
            g.add_edge(&edge.id, &u, su, &v, sv)?;
        }
        Ok((g, fresh))
    }

    /// Returns a copy with the given edge added.
    pub fn with_edge(&self, id: &str, u: &str, su: Sign, v: &str, sv: Sign) -> Result<Self> {
        let mut g = self.clone();
        g.add_edge(id, u, su, v, sv)?;
        Ok(g)
    }

    /// Returns a copy with the listed edges removed. Vertices are never
    /// removed by deletion.
    pub fn without_edges(&self, ids: &[&str]) -> Result<Self> {
        let mut drop = BTreeSet::new();
        for id in ids {
            drop.insert(self.require_edge(id)?);
        }
        Ok(self.without_edge_indices(&drop))
    }

    pub fn without_edge_indices(&self, drop: &BTreeSet<usize>) -> Self {
        let mut g = BidirectedGraph::new();
        for n in &self.vertices {
            g.add_vertex(n).unwrap();
        }
        for (i, edge) in self.edges.iter().enumerate() {
            if !drop.contains(&i) {
                g.add_edge(
                    &edge.id,
                    &self.vertices[edge.ends[0].vertex],
                    edge.ends[0].sign,
                    &self.vertices[edge.ends[1].vertex],
                    edge.ends[1].sign,
                )
                .unwrap();
            }
        }
        g
    }

    /// Graph union: shared vertex names merge; edge ids must not clash.
    pub fn union(&self, other: &BidirectedGraph) -> Result<Self> {
        let mut g = self.clone();
        for n in &other.vertices {
            g.ensure_vertex(n);
        }
        for edge in &other.edges {
            g.add_edge(
                &edge.id,
                &other.vertices[edge.ends[0].vertex],
                edge.ends[0].sign,
                &other.vertices[edge.ends[1].vertex],
                edge.ends[1].sign,
            )?;
        }
        Ok(g)
    }

    /// Materializes the subgraph on the given vertex and edge index
    /// sets, keeping names and edge ids.
    pub fn subgraph(&self, vset: &BTreeSet<usize>, eset: &BTreeSet<usize>) -> Result<Self> {
        let mut g = BidirectedGraph::new();
        for &v in vset {
            g.add_vertex(&self.vertices[v])?;
        }
        for &e in eset {
            let edge = &self.edges[e];
            if !vset.contains(&edge.ends[0].vertex) || !vset.contains(&edge.ends[1].vertex) {
                return Err(input(format!(
                    "edge {} has an end outside the vertex set",
                    edge.id
                )));
            }
            g.add_edge(
                &edge.id,
                &self.vertices[edge.ends[0].vertex],
                edge.ends[0].sign,
                &self.vertices[edge.ends[1].vertex],
                edge.ends[1].sign,
            )?;
        }
        Ok(g)
    }

    /// The edge/vertex-induced subgraph on a vertex set: all edges with
    /// both ends inside.
    pub fn induced(&self, vset: &BTreeSet<usize>) -> Self {
        let eset: BTreeSet<usize> = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| {
                vset.contains(&e.ends[0].vertex) && vset.contains(&e.ends[1].vertex)
            })
            .map(|(i, _)| i)
            .collect();
        self.subgraph(vset, &eset).unwrap()
    }

    /// True when `other`'s vertices and edges all occur in `self` with
    /// identical names, ids, and signed ends.
    pub fn contains_subgraph(&self, other: &BidirectedGraph) -> bool {
        for n in &other.vertices {
            if !self.vindex.contains_key(n) {
                return false;
            }
        }
        for edge in &other.edges {
            let Some(i) = self.edge_by_id(&edge.id) else {
                return false;
            };
            let mine = &self.edges[i];
            let tr = |e: &Edge, g: &BidirectedGraph| {
                let mut ends = [
                    (g.vertices[e.ends[0].vertex].clone(), e.ends[0].sign),
                    (g.vertices[e.ends[1].vertex].clone(), e.ends[1].sign),
                ];
                ends.sort();
                ends
            };
            if tr(edge, other) != tr(mine, self) {
                return false;
            }
        }
        true
    }

    /// Structural equality by names, ids, and signed ends (ordering of
    /// declarations is ignored; the two ends of an edge are unordered).
    pub fn same_labelled(&self, other: &BidirectedGraph) -> bool {
        self.vertex_count() == other.vertex_count()
            && self.edge_count() == other.edge_count()
            && self.contains_subgraph(other)
    }

    /// Returns a copy with one vertex renamed.
    pub fn renamed_vertex(&self, old: &str, new: &str) -> Result<Self> {
        self.require_vertex(old)?;
        if old != new && self.vindex.contains_key(new) {
            return Err(input(format!("vertex {new} already exists")));
        }
        let mut g = BidirectedGraph::new();
        for n in &self.vertices {
            g.add_vertex(if n == old { new } else { n })?;
        }
        let nm = |i: usize| -> &str {
            if self.vertices[i] == old {
                new
            } else {
                &self.vertices[i]
            }
        };
        for edge in &self.edges {
            g.add_edge(
                &edge.id,
                nm(edge.ends[0].vertex),
                edge.ends[0].sign,
                nm(edge.ends[1].vertex),
                edge.ends[1].sign,
            )?;
        }
        Ok(g)
    }

    /// Renames every vertex and edge with the given suffix; used to keep
    /// part names disjoint under composition.
    pub fn suffixed(&self, suffix: &str) -> Self {
        let mut g = BidirectedGraph::new();
        for n in &self.vertices {
            g.add_vertex(&format!("{n}{suffix}")).unwrap();
        }
        for edge in &self.edges {
            g.add_edge(
                &format!("{}{suffix}", edge.id),
                &format!("{}{suffix}", self.vertices[edge.ends[0].vertex]),
                edge.ends[0].sign,
                &format!("{}{suffix}", self.vertices[edge.ends[1].vertex]),
                edge.ends[1].sign,
            )
            .unwrap();
        }
        g
    }
}

/// A graph with a distinguished root and the orientation sign of the
/// class under study.
#[derive(Debug, Clone)]
pub struct RootedGraph {
    pub graph: BidirectedGraph,
    pub root: usize,
    pub orientation: Sign,
}

impl RootedGraph {
    pub fn new(graph: BidirectedGraph, root_name: &str, orientation: Sign) -> Result<Self> {
        let root = graph.require_vertex(root_name)?;
        Ok(RootedGraph {
            graph,
            root,
            orientation,
        })
    }

    pub fn root_name(&self) -> &str {
        self.graph.vertex_name(self.root)
    }
}

/// Reassignment of the glue vertex's edge ends onto target vertices, by
/// edge id. A loop over the glue vertex maps to an ordered pair of
/// targets (first for `ends[0]`, second for `ends[1]`).
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct GluingSpec {
    pub targets: BTreeMap<String, (String, Option<String>)>,
}

/// The gluing sum (G; s) + (H; T): vertex `s` of `g` is identified with
/// the set `t` in `h`, redistributing the s-incident edge ends over `t`
/// with all signs preserved.
pub fn gluing_sum(
    g: &BidirectedGraph,
    s: &str,
    h: &BidirectedGraph,
    t: &BTreeSet<String>,
    spec: &GluingSpec,
) -> Result<BidirectedGraph> {
    let s_idx = g.require_vertex(s)?;
    for n in g.vertex_names() {
        if h.vertex(n).is_some() {
            return Err(input(format!("vertex sets overlap on {n}")));
        }
    }
    for name in t {
        h.require_vertex(name)?;
    }
    // F = cut(s) + loops over s.
    let f: BTreeSet<&str> = g
        .incident(s_idx)
        .iter()
        .map(|&e| g.edge(e).id.as_str())
        .collect();
    let spec_keys: BTreeSet<&str> = spec.targets.keys().map(|k| k.as_str()).collect();
    if f != spec_keys {
        return Err(input(format!(
            "gluing spec must cover exactly the glue-incident edges: expected {f:?}, got {spec_keys:?}"
        )));
    }
    let mut out = BidirectedGraph::new();
    for n in g.vertex_names() {
        if n != s {
            out.add_vertex(n)?;
        }
    }
    for n in h.vertex_names() {
        out.add_vertex(n)?;
    }
    for edge in g.edges() {
        if edge.touches(s_idx) {
            continue;
        }
        out.add_edge(
            &edge.id,
            g.vertex_name(edge.ends[0].vertex),
            edge.ends[0].sign,
            g.vertex_name(edge.ends[1].vertex),
            edge.ends[1].sign,
        )?;
    }
    for edge in h.edges() {
        out.add_edge(
            &edge.id,
            h.vertex_name(edge.ends[0].vertex),
            edge.ends[0].sign,
            h.vertex_name(edge.ends[1].vertex),
            edge.ends[1].sign,
        )?;
    }
    for (id, (t1, t2)) in &spec.targets {
        let e = g.edge(g.require_edge(id)?);
        if !t.contains(t1) {
            return Err(input(format!("target {t1} for edge {id} is outside T")));
        }
        if e.is_loop() {
            let t2 = t2
                .as_ref()
                .ok_or_else(|| input(format!("loop {id} needs a pair of targets")))?;
            if !t.contains(t2) {
                return Err(input(format!("target {t2} for loop {id} is outside T")));
            }
            out.add_edge(id, t1, e.ends[0].sign, t2, e.ends[1].sign)?;
        } else {
            if t2.is_some() {
                return Err(input(format!("non-loop {id} takes a single target")));
            }
            let (s_end, v_end) = if e.ends[0].vertex == s_idx {
                (e.ends[0], e.ends[1])
            } else {
                (e.ends[1], e.ends[0])
            };
            out.add_edge(
                id,
                t1,
                s_end.sign,
                g.vertex_name(v_end.vertex),
                v_end.sign,
            )?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn signed_cut_of_f2_root() {
        let g = fixtures::f2();
        let s = g.vertex_set(&["r"]).unwrap();
        let (cut, nei) = g.signed_cut(&s, Sign::Minus);
        let ids: BTreeSet<&str> = cut.iter().map(|&e| g.edge(e).id.as_str()).collect();
        assert_eq!(ids, ["e1", "e2"].into_iter().collect());
        assert_eq!(nei, g.vertex_set(&["a"]).unwrap());

        let (cut, nei) = g.signed_cut(&s, Sign::Plus);
        assert!(cut.is_empty());
        assert!(nei.is_empty());
    }

    #[test]
    fn signed_cut_of_full_vertex_set_is_empty() {
        let g = fixtures::f3();
        let s: BTreeSet<usize> = g.vertex_indices().collect();
        let (cut, nei) = g.signed_cut(&s, Sign::Plus);
        assert!(cut.is_empty() && nei.is_empty());
    }

    #[test]
    fn contract_f3_ra() {
        let g = fixtures::f3();
        let x = g.vertex_set(&["r", "a"]).unwrap();
        let (c, fresh) = g.contract(&x).unwrap();
        assert_eq!(c.vertex_count(), 2);
        assert_eq!(c.edge_count(), 1);
        let e = c.edge(0);
        assert_eq!(e.id, "e2");
        let b = c.require_vertex("b").unwrap();
        assert_eq!(e.sign_at(b), Sign::Plus);
        assert_eq!(e.sign_at(fresh), Sign::Minus);
    }

    #[test]
    fn contract_f2_ra_deletes_arising_loops() {
        let g = fixtures::f2();
        let x = g.vertex_set(&["r", "a"]).unwrap();
        let (c, _) = g.contract(&x).unwrap();
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.edge_count(), 0);
    }

    #[test]
    fn contract_singleton_preserves_structure() {
        let g = fixtures::f3();
        let x = g.vertex_set(&["b"]).unwrap();
        let (c, _) = g.contract(&x).unwrap();
        assert_eq!(c.vertex_count(), g.vertex_count());
        assert_eq!(c.edge_count(), g.edge_count());
    }

    #[test]
    fn contract_counts() {
        let g = fixtures::f6();
        let x = g.vertex_set(&["r", "p"]).unwrap();
        let (c, _) = g.contract(&x).unwrap();
        assert_eq!(c.vertex_count(), g.vertex_count() - x.len() + 1);
        for e in c.edges() {
            assert!(g.edge_by_id(&e.id).is_some());
        }
    }

    #[test]
    fn contract_empty_set_rejected() {
        let g = fixtures::f1();
        assert!(g.contract(&BTreeSet::new()).is_err());
    }

    #[test]
    fn edit_add_then_delete_is_identity() {
        let f1 = fixtures::f1();
        let f2 = f1
            .with_edge("e2", "a", Sign::Minus, "r", Sign::Minus)
            .unwrap();
        assert!(f2.same_labelled(&fixtures::f2()));
        let back = f2.without_edges(&["e2"]).unwrap();
        assert!(back.same_labelled(&f1));
    }

    #[test]
    fn union_shares_vertices_and_rejects_id_clash() {
        let a = fixtures::f1();
        let mut b = BidirectedGraph::new();
        b.add_vertex("r").unwrap();
        b.add_vertex("a2").unwrap();
        b.add_edge("e9", "a2", Sign::Plus, "r", Sign::Minus).unwrap();
        let u = a.union(&b).unwrap();
        assert_eq!(u.vertex_count(), 3);
        assert_eq!(u.edge_count(), 2);
        assert!(a.union(&a).is_err());
    }

    #[test]
    fn gluing_f6_onto_f1() {
        // G = F6 with root renamed s; H = F1; T = {a}; h3's s-end goes to a.
        let g = fixtures::f6_rooted_s();
        let h = fixtures::f1();
        let t: BTreeSet<String> = ["a".to_string()].into();
        let mut spec = GluingSpec::default();
        spec.targets.insert("h3".into(), ("a".into(), None));
        let glued = gluing_sum(&g, "s", &h, &t, &spec).unwrap();
        assert_eq!(glued.vertex_count(), 4);
        assert_eq!(glued.edge_count(), 4);
        let h3 = glued.edge(glued.require_edge("h3").unwrap()).clone();
        let a = glued.require_vertex("a").unwrap();
        let p = glued.require_vertex("p").unwrap();
        assert_eq!(h3.sign_at(a), Sign::Minus);
        assert_eq!(h3.sign_at(p), Sign::Plus);
    }

    #[test]
    fn gluing_with_no_incident_edges_drops_s() {
        let mut g = BidirectedGraph::new();
        g.add_vertex("s").unwrap();
        let h = fixtures::f2();
        let t: BTreeSet<String> = ["a".to_string()].into();
        let glued = gluing_sum(&g, "s", &h, &t, &GluingSpec::default()).unwrap();
        assert!(glued.same_labelled(&h));
    }

    #[test]
    fn gluing_loop_becomes_edge_between_targets() {
        let mut g = BidirectedGraph::new();
        g.add_vertex("s").unwrap();
        g.add_edge("l", "s", Sign::Plus, "s", Sign::Minus).unwrap();
        let mut h = BidirectedGraph::new();
        h.add_vertex("t1").unwrap();
        h.add_vertex("t2").unwrap();
        let t: BTreeSet<String> = ["t1".to_string(), "t2".to_string()].into();
        let mut spec = GluingSpec::default();
        spec.targets
            .insert("l".into(), ("t1".into(), Some("t2".into())));
        let glued = gluing_sum(&g, "s", &h, &t, &spec).unwrap();
        let e = glued.edge(0);
        let t1 = glued.require_vertex("t1").unwrap();
        let t2 = glued.require_vertex("t2").unwrap();
        assert_eq!(e.sign_at(t1), Sign::Plus);
        assert_eq!(e.sign_at(t2), Sign::Minus);
    }

    #[test]
    fn gluing_edge_count_is_additive() {
        let g = fixtures::f6_rooted_s();
        let h = fixtures::f1();
        let t: BTreeSet<String> = ["a".to_string()].into();
        let mut spec = GluingSpec::default();
        spec.targets.insert("h3".into(), ("a".into(), None));
        let glued = gluing_sum(&g, "s", &h, &t, &spec).unwrap();
        assert_eq!(glued.edge_count(), g.edge_count() + h.edge_count());
    }

    #[test]
    fn gluing_rejects_bad_inputs() {
        let g = fixtures::f6_rooted_s();
        let h = fixtures::f1();
        let t: BTreeSet<String> = ["a".to_string()].into();
        // incomplete spec
        assert!(gluing_sum(&g, "s", &h, &t, &GluingSpec::default()).is_err());
        // target outside T
        let mut spec = GluingSpec::default();
        spec.targets.insert("h3".into(), ("r".into(), None));
        assert!(gluing_sum(&g, "s", &h, &t, &spec).is_err());
        // overlapping vertex names
        let mut spec = GluingSpec::default();
        spec.targets.insert("h3".into(), ("a".into(), None));
        let h2 = fixtures::f6_rooted_s();
        assert!(gluing_sum(&g, "s", &h2, &t, &spec).is_err());
    }
}
