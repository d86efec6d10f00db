//! The five ground structures of a rooted graph — absolute, linear,
//! strong, almost strong, and extended (with its two shells) — each the
//! maximum subgraph with its defining property.
//!
//! `ground` grows a candidate by predicate-checked accretion of ears
//! and arms; `exact_ground` enumerates edge subsets exhaustively and is
//! the reference the accretion is certified against in tests.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::{
    is_absolute_semiradial_p, is_almost_strong_radial_p, is_linear, is_linear_semiradial_p,
    is_radial_p, is_semiradial_p, is_strong_radial_p, is_sublinear, root_kind_p, RootKind,
};
use crate::ditrail::{reach_profile, search, ReachProfile, TrailQuery};
use crate::ears::{find_diear, EarConstraints, EarKindFilter};
use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, RootedGraph, Sign};

pub const DEFAULT_EXACT_GROUND_MAX_EDGES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroundKind {
    Absolute,
    Linear,
    Strong,
    AlmostStrong,
    Extended,
}

impl GroundKind {
    pub const ALL: [GroundKind; 5] = [
        GroundKind::Absolute,
        GroundKind::Linear,
        GroundKind::Strong,
        GroundKind::AlmostStrong,
        GroundKind::Extended,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GroundKind::Absolute => "absolute",
            GroundKind::Linear => "linear",
            GroundKind::Strong => "strong",
            GroundKind::AlmostStrong => "almost-strong",
            GroundKind::Extended => "extended",
        }
    }
}

/// A computed ground: the subgraph (with original names and edge ids)
/// plus, for the extended kind, the two shells as vertex-name sets.
#[derive(Debug, Clone)]
pub struct Ground {
    pub kind: GroundKind,
    pub subgraph: BidirectedGraph,
    pub shell1: BTreeSet<String>,
    pub shell2: BTreeSet<String>,
}

impl Ground {
    /// Structural equality: same subgraph and same shells.
    pub fn same_as(&self, other: &Ground) -> bool {
        self.kind == other.kind
            && self.subgraph.same_labelled(&other.subgraph)
            && self.shell1 == other.shell1
            && self.shell2 == other.shell2
    }
}

/// Does `cand` (a subgraph of `rg.graph`, sharing names and ids)
/// satisfy the defining property of `kind`? Side conditions about
/// classes "in G" are checked through `gp`, the profile of the host
/// graph; `asg_names` is the almost strong ground's vertex set, needed
/// by the extended kind.
fn satisfies_kind(
    rg: &RootedGraph,
    gp: &ReachProfile,
    kind: GroundKind,
    cand: &BidirectedGraph,
    asg_names: Option<&BTreeSet<String>>,
) -> Result<bool> {
    let a = rg.orientation;
    let Some(croot) = cand.vertex(rg.root_name()) else {
        return Ok(false);
    };
    let cp = reach_profile(cand, croot)?;
    let in_host = |name: &str| rg.graph.vertex(name).expect("candidate vertex in host");
    Ok(match kind {
        GroundKind::Absolute => is_absolute_semiradial_p(cand, &cp),
        GroundKind::Linear => {
            is_linear_semiradial_p(cand, &cp, a)
                && cand
                    .vertex_names()
                    .iter()
                    .filter(|n| n.as_str() != rg.root_name())
                    .all(|n| is_linear(gp, a, in_host(n)))
        }
        GroundKind::Strong => is_strong_radial_p(cand, &cp, a),
        GroundKind::AlmostStrong => is_almost_strong_radial_p(cand, &cp, a),
        GroundKind::Extended => {
            let asg = asg_names.expect("extended kind needs the almost strong ground");
            is_radial_p(cand, &cp, a)
                && asg.iter().all(|n| cand.vertex(n).is_some())
                && cand
                    .vertex_names()
                    .iter()
                    .filter(|n| !asg.contains(n.as_str()))
                    .all(|n| is_sublinear(gp, a, in_host(n)))
        }
    })
}

fn precondition(rg: &RootedGraph, gp: &ReachProfile, kind: GroundKind) -> Result<()> {
    let g = &rg.graph;
    let a = rg.orientation;
    match kind {
        GroundKind::Absolute | GroundKind::Linear => {
            if !is_semiradial_p(g, gp, a) {
                return Err(Error::ClassMismatch {
                    expected: "semiradial".into(),
                    found: "not a semiradial".into(),
                });
            }
        }
        GroundKind::Strong => {
            if root_kind_p(g, gp, a) != RootKind::Strong {
                return Err(Error::ClassMismatch {
                    expected: "radial with strong root".into(),
                    found: format!("{:?}", root_kind_p(g, gp, a)),
                });
            }
            if !is_radial_p(g, gp, a) {
                return Err(Error::ClassMismatch {
                    expected: "radial".into(),
                    found: "not a radial".into(),
                });
            }
        }
        GroundKind::AlmostStrong | GroundKind::Extended => {
            if root_kind_p(g, gp, a) != RootKind::Sublinear {
                return Err(Error::ClassMismatch {
                    expected: "radial with sublinear root".into(),
                    found: format!("{:?}", root_kind_p(g, gp, a)),
                });
            }
        }
    }
    Ok(())
}

/// One growth move: the vertices and edges it would add.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Move {
    vertices: BTreeSet<usize>,
    edges: BTreeSet<usize>,
}

/// Candidate moves relative to the current subgraph (vset, eset):
/// simple diears anchored per cut edge and far endpoint, one scoop per
/// grip, and "arms" — open trails from an outside vertex into the
/// subgraph, per attachment vertex. Vertices in `blocked` are
/// disqualified in the host and never entered, so a long witness
/// through one cannot shadow a short qualifying move.
fn candidate_moves(
    g: &BidirectedGraph,
    vset: &BTreeSet<usize>,
    eset: &BTreeSet<usize>,
    blocked: &BTreeSet<usize>,
) -> Result<Vec<Move>> {
    let mut out: Vec<Move> = Vec::new();
    let mut push = |m: Move| {
        if !m.edges.is_empty() && !out.contains(&m) {
            out.push(m);
        }
    };
    // Every single edge between base vertices is a length-1 simple ear;
    // enumerate them individually so one disqualifying witness cannot
    // shadow a qualifying parallel edge.
    for e in 0..g.edge_count() {
        if eset.contains(&e) {
            continue;
        }
        let edge = g.edge(e);
        if vset.contains(&edge.ends[0].vertex) && vset.contains(&edge.ends[1].vertex) {
            push(Move {
                vertices: [edge.ends[0].vertex, edge.ends[1].vertex].into(),
                edges: [e].into(),
            });
        }
    }
    // Longer simple ears, one witness per (first cut edge, far base
    // endpoint, far end sign). Whether a move qualifies depends on its
    // base endpoints and their signs, so enumerating only per sign
    // pair lets one witness shadow a differently-anchored one.
    let walls: BTreeSet<usize> = vset.union(blocked).copied().collect();
    for e in 0..g.edge_count() {
        if eset.contains(&e) {
            continue;
        }
        let edge = g.edge(e);
        if edge.is_loop() {
            continue;
        }
        for (ye, xe) in [(edge.ends[0], edge.ends[1]), (edge.ends[1], edge.ends[0])] {
            let x = xe.vertex;
            if !vset.contains(&ye.vertex) || vset.contains(&x) || blocked.contains(&x) {
                continue;
            }
            for &z in vset.iter() {
                for b in Sign::BOTH {
                    let mut q = TrailQuery::new(x, xe.sign.flip(), b, z);
                    q.targets = [z].into();
                    let q = q
                        .forbid_edges(eset.iter().copied().chain([e]))
                        .block_internal(g.vertex_count(), &walls);
                    if let Some(p) = search(g, &q)? {
                        let mut vertices: BTreeSet<usize> = p.vertices().into_iter().collect();
                        vertices.insert(ye.vertex);
                        let mut edges = p.edge_set();
                        edges.insert(e);
                        push(Move { vertices, edges });
                    }
                }
            }
        }
    }
    for e in 0..g.edge_count() {
        let c = EarConstraints {
            grip: Some(e),
            forbidden_vertices: blocked.clone(),
            ..Default::default()
        };
        if let Some(ear) = find_diear(g, vset, eset, &c)? {
            push(Move {
                vertices: ear.vertices(),
                edges: ear.edges(),
            });
        }
    }
    for u in g.vertex_indices() {
        if vset.contains(&u) || blocked.contains(&u) {
            continue;
        }
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                for &z in vset.iter() {
                    let mut q = TrailQuery::new(u, a, b, z);
                    q.targets = [z].into();
                    let q = q
                        .forbid_edges(eset.iter().copied())
                        .block_internal(g.vertex_count(), &walls);
                    if let Some(p) = search(g, &q)? {
                        push(Move {
                            vertices: p.vertices().into_iter().collect(),
                            edges: p.edge_set(),
                        });
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Grows (vset, eset) to a fixed point under predicate-checked moves.
fn accrete(
    rg: &RootedGraph,
    gp: &ReachProfile,
    kind: GroundKind,
    mut vset: BTreeSet<usize>,
    mut eset: BTreeSet<usize>,
    asg_names: Option<&BTreeSet<String>>,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    let g = &rg.graph;
    // Vertices ineligible for this kind no matter the candidate: not
    // linear in the host (linear kind), or outside the almost strong
    // ground and not sublinear in the host (extended kind). Keeping
    // searches out of them stops a witness through one from shadowing a
    // qualifying move.
    let blocked: BTreeSet<usize> = match kind {
        GroundKind::Linear => g
            .vertex_indices()
            .filter(|&v| v != rg.root && !is_linear(gp, rg.orientation, v))
            .collect(),
        GroundKind::Extended => {
            let asg = asg_names.expect("extended kind needs the almost strong ground");
            g.vertex_indices()
                .filter(|&v| {
                    !asg.contains(g.vertex_name(v)) && !is_sublinear(gp, rg.orientation, v)
                })
                .collect()
        }
        _ => BTreeSet::new(),
    };
    loop {
        let mut committed = false;
        for mv in candidate_moves(g, &vset, &eset, &blocked)? {
            let nv: BTreeSet<usize> = vset.union(&mv.vertices).copied().collect();
            let ne: BTreeSet<usize> = eset.union(&mv.edges).copied().collect();
            let cand = g.subgraph(&nv, &ne)?;
            if satisfies_kind(rg, gp, kind, &cand, asg_names)? {
                vset = nv;
                eset = ne;
                committed = true;
                break;
            }
        }
        if !committed {
            return Ok((vset, eset));
        }
    }
}

/// First/second shell split of the extended ground `i_graph` against
/// the almost strong ground's vertex names.
fn shell_split(
    rg: &RootedGraph,
    i_graph: &BidirectedGraph,
    asg_names: &BTreeSet<String>,
) -> Result<(BTreeSet<String>, BTreeSet<String>)> {
    let a = rg.orientation;
    let iroot = i_graph
        .vertex(rg.root_name())
        .ok_or_else(|| Error::Input("extended ground lost its root".into()))?;
    let blocked: BTreeSet<usize> = asg_names
        .iter()
        .filter(|n| n.as_str() != rg.root_name())
        .filter_map(|n| i_graph.vertex(n))
        .collect();
    let mut s1 = BTreeSet::new();
    let mut s2 = BTreeSet::new();
    for name in i_graph.vertex_names() {
        if asg_names.contains(name) {
            continue;
        }
        let x = i_graph.vertex(name).unwrap();
        // the trail must avoid V(H)\{r}; x starts outside H and the
        // only admissible endpoint is r, so blocking internals suffices
        let q = TrailQuery::new(x, a, a.flip(), iroot)
            .block_internal(i_graph.vertex_count(), &blocked);
        if search(i_graph, &q)?.is_some() {
            s1.insert(name.clone());
        } else {
            s2.insert(name.clone());
        }
    }
    Ok((s1, s2))
}

/// The ground of `kind`, by diear/arm accretion from the kind's base.
pub fn ground(rg: &RootedGraph, kind: GroundKind) -> Result<Ground> {
    let gp = reach_profile(&rg.graph, rg.root)?;
    ground_with(rg, &gp, kind)
}

pub fn ground_with(rg: &RootedGraph, gp: &ReachProfile, kind: GroundKind) -> Result<Ground> {
    precondition(rg, gp, kind)?;
    let g = &rg.graph;
    let root_only: BTreeSet<usize> = [rg.root].into();
    let (vset, eset, asg_names) = match kind {
        GroundKind::Absolute | GroundKind::Linear | GroundKind::AlmostStrong => {
            let (v, e) = accrete(rg, gp, kind, root_only, BTreeSet::new(), None)?;
            (v, e, None)
        }
        GroundKind::Strong => {
            // Base: a simple (−α,−α)-diear relative to the bare root —
            // an internally root-avoiding closed ditrail, which exists
            // because the root is strong and is itself a strong radial.
            let na = rg.orientation.flip();
            let c = EarConstraints {
                sign_pair: Some((na, na)),
                kind: Some(EarKindFilter::SimpleOnly),
                ..Default::default()
            };
            let base = find_diear(g, &root_only, &BTreeSet::new(), &c)?.ok_or_else(|| {
                Error::Hypothesis("strong root without a closed base diear".into())
            })?;
            let (v, e) = accrete(rg, gp, kind, base.vertices(), base.edges(), None)?;
            (v, e, None)
        }
        GroundKind::Extended => {
            let asg = ground_with(rg, gp, GroundKind::AlmostStrong)?;
            let asg_names: BTreeSet<String> =
                asg.subgraph.vertex_names().iter().cloned().collect();
            let vset: BTreeSet<usize> = asg_names
                .iter()
                .map(|n| g.vertex(n).unwrap())
                .collect();
            let eset: BTreeSet<usize> = asg
                .subgraph
                .edges()
                .iter()
                .map(|e| g.edge_by_id(&e.id).unwrap())
                .collect();
            let (v, e) = accrete(rg, gp, kind, vset, eset, Some(&asg_names))?;
            (v, e, Some(asg_names))
        }
    };
    let subgraph = g.subgraph(&vset, &eset)?;
    let (shell1, shell2) = match (kind, &asg_names) {
        (GroundKind::Extended, Some(asg)) => shell_split(rg, &subgraph, asg)?,
        _ => (BTreeSet::new(), BTreeSet::new()),
    };
    Ok(Ground {
        kind,
        subgraph,
        shell1,
        shell2,
    })
}

/// The ground of `kind` by exhaustive enumeration over edge subsets
/// (each with vertex set = endpoints + root); the guaranteed-correct
/// reference, guarded by edge count.
pub fn exact_ground(rg: &RootedGraph, kind: GroundKind, max_edges: usize) -> Result<Ground> {
    let g = &rg.graph;
    let m = g.edge_count();
    if m > max_edges {
        return Err(Error::Guard(format!(
            "exact ground bound is {max_edges} edges, graph has {m}"
        )));
    }
    let gp = reach_profile(g, rg.root)?;
    precondition(rg, &gp, kind)?;
    let asg_names: Option<BTreeSet<String>> = match kind {
        GroundKind::Extended => {
            let asg = exact_ground(rg, GroundKind::AlmostStrong, max_edges)?;
            Some(asg.subgraph.vertex_names().iter().cloned().collect())
        }
        _ => None,
    };
    let mut masks: Vec<u32> = (0..(1u32 << m)).collect();
    masks.sort_by_key(|x| std::cmp::Reverse(x.count_ones()));
    let mut union_mask: u32 = 0;
    let mut any = false;
    for mask in masks {
        if any && mask & !union_mask == 0 {
            continue; // adds nothing to the union
        }
        let eset: BTreeSet<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let mut vset: BTreeSet<usize> = [rg.root].into();
        for &e in &eset {
            for end in g.edge(e).ends {
                vset.insert(end.vertex);
            }
        }
        let cand = g.subgraph(&vset, &eset)?;
        if satisfies_kind(rg, &gp, kind, &cand, asg_names.as_ref())? {
            union_mask |= mask;
            any = true;
        }
    }
    if !any {
        return Err(Error::Hypothesis(format!(
            "no subgraph satisfies the {} ground property",
            kind.name()
        )));
    }
    let eset: BTreeSet<usize> = (0..m).filter(|&i| union_mask >> i & 1 == 1).collect();
    let mut vset: BTreeSet<usize> = [rg.root].into();
    for &e in &eset {
        for end in g.edge(e).ends {
            vset.insert(end.vertex);
        }
    }
    let subgraph = g.subgraph(&vset, &eset)?;
    if !satisfies_kind(rg, &gp, kind, &subgraph, asg_names.as_ref())? {
        return Err(Error::Hypothesis(format!(
            "union of {} ground candidates does not satisfy the property; union closure violated",
            kind.name()
        )));
    }
    let (shell1, shell2) = match (kind, &asg_names) {
        (GroundKind::Extended, Some(asg)) => shell_split(rg, &subgraph, asg)?,
        _ => (BTreeSet::new(), BTreeSet::new()),
    };
    Ok(Ground {
        kind,
        subgraph,
        shell1,
        shell2,
    })
}

/// The first/second shell split of a radial with sublinear root.
pub fn shells(rg: &RootedGraph) -> Result<(BTreeSet<String>, BTreeSet<String>)> {
    let ext = ground(rg, GroundKind::Extended)?;
    Ok((ext.shell1, ext.shell2))
}

/// Is `rg` equal to its own extended ground? Assumes the caller has
/// already established "radial with sublinear root". This holds iff
/// every vertex outside the almost strong ground is sublinear in G,
/// because then G itself qualifies as its extended ground.
pub(crate) fn is_triplex_with(rg: &RootedGraph, gp: &ReachProfile) -> Result<bool> {
    let asg = ground_with(rg, gp, GroundKind::AlmostStrong)?;
    let asg_names: BTreeSet<&str> = asg
        .subgraph
        .vertex_names()
        .iter()
        .map(|s| s.as_str())
        .collect();
    Ok(rg
        .graph
        .vertex_names()
        .iter()
        .enumerate()
        .filter(|(_, n)| !asg_names.contains(n.as_str()))
        .all(|(v, _)| is_sublinear(gp, rg.orientation, v)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, rooted};

    fn name_set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn f2_absolute_ground_is_whole_graph() {
        let r = rooted(fixtures::f2());
        let gr = ground(&r, GroundKind::Absolute).unwrap();
        assert!(gr.subgraph.same_labelled(&r.graph));
        let ex = exact_ground(&r, GroundKind::Absolute, 10).unwrap();
        assert!(gr.same_as(&ex));
    }

    #[test]
    fn f1_absolute_ground_is_trivial() {
        let r = rooted(fixtures::f1());
        let gr = ground(&r, GroundKind::Absolute).unwrap();
        assert_eq!(gr.subgraph.vertex_count(), 1);
        assert_eq!(gr.subgraph.edge_count(), 0);
        assert!(gr.same_as(&exact_ground(&r, GroundKind::Absolute, 10).unwrap()));
    }

    #[test]
    fn f1_linear_ground_is_whole_graph() {
        let r = rooted(fixtures::f1());
        let gr = ground(&r, GroundKind::Linear).unwrap();
        assert!(gr.subgraph.same_labelled(&r.graph));
        assert!(gr.same_as(&exact_ground(&r, GroundKind::Linear, 10).unwrap()));
    }

    #[test]
    fn f3_linear_ground_is_whole_graph() {
        let r = rooted(fixtures::f3());
        let ex = exact_ground(&r, GroundKind::Linear, 10).unwrap();
        assert!(ex.subgraph.same_labelled(&r.graph));
        assert!(ground(&r, GroundKind::Linear).unwrap().same_as(&ex));
    }

    #[test]
    fn f2_strong_ground_is_whole_graph() {
        let r = rooted(fixtures::f2());
        let gr = ground(&r, GroundKind::Strong).unwrap();
        assert!(gr.subgraph.same_labelled(&r.graph));
        assert!(gr.same_as(&exact_ground(&r, GroundKind::Strong, 10).unwrap()));
    }

    #[test]
    fn f6_almost_strong_and_extended() {
        let r = rooted(fixtures::f6());
        let asg = ground(&r, GroundKind::AlmostStrong).unwrap();
        assert!(asg.subgraph.same_labelled(&r.graph));
        let ext = ground(&r, GroundKind::Extended).unwrap();
        assert!(ext.subgraph.same_labelled(&r.graph));
        assert!(ext.shell1.is_empty() && ext.shell2.is_empty());
        assert!(ext.same_as(&exact_ground(&r, GroundKind::Extended, 10).unwrap()));
    }

    #[test]
    fn f3_extended_ground_and_shells() {
        let r = rooted(fixtures::f3());
        // the almost strong ground of F3 is trivial
        let asg = exact_ground(&r, GroundKind::AlmostStrong, 10).unwrap();
        assert_eq!(asg.subgraph.vertex_count(), 1);
        let ext = exact_ground(&r, GroundKind::Extended, 10).unwrap();
        assert!(ext.subgraph.same_labelled(&r.graph));
        assert_eq!(ext.shell1, name_set(&["a", "b"]));
        assert!(ext.shell2.is_empty());
        assert!(ground(&r, GroundKind::Extended).unwrap().same_as(&ext));
    }

    #[test]
    fn preconditions_are_enforced() {
        // F1's root is sublinear: no strong ground.
        let r = rooted(fixtures::f1());
        assert!(matches!(
            ground(&r, GroundKind::Strong),
            Err(Error::ClassMismatch { .. })
        ));
        // F2's root is strong: no almost strong ground.
        let r2 = rooted(fixtures::f2());
        assert!(matches!(
            ground(&r2, GroundKind::AlmostStrong),
            Err(Error::ClassMismatch { .. })
        ));
    }

    #[test]
    fn edgeless_graph_has_trivial_grounds() {
        let r = rooted(fixtures::f0());
        for kind in [
            GroundKind::Absolute,
            GroundKind::Linear,
            GroundKind::AlmostStrong,
            GroundKind::Extended,
        ] {
            let gr = ground(&r, kind).unwrap();
            assert_eq!(gr.subgraph.vertex_count(), 1);
            assert_eq!(gr.subgraph.edge_count(), 0);
        }
    }

    #[test]
    fn exact_ground_guard() {
        let r = rooted(fixtures::f2());
        assert!(matches!(
            exact_ground(&r, GroundKind::Absolute, 1),
            Err(Error::Guard(_))
        ));
    }
}
