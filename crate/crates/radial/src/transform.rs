//! Decomposition down to the principal classes, the gluing
//! compositions that invert each step, and seeded generators for every
//! class.
//!
//! Each decomposition step contracts a ground and records enough data
//! (attachment targets, deleted edges) for exact re-composition; the
//! composition operations build members of a class from smaller parts
//! and re-verify the claimed class before returning.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{class_report, GraphClassReport, RootKind};
use crate::error::{Error, Result};
use crate::graph::{gluing_sum, BidirectedGraph, GluingSpec, RootedGraph, Sign};
use crate::grounds::{ground, Ground, GroundKind};

/// Above this many edges, `compose` trusts the gluing conclusion
/// unless verification is forced.
pub const COMPOSE_VERIFY_MAX_EDGES: usize = 24;

const GENERATE_MAX_ATTEMPTS: usize = 200;

/// A detached edge record, used for deleted edges and extra edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRec {
    pub id: String,
    pub u: String,
    pub su: Sign,
    pub v: String,
    pub sv: Sign,
}

impl EdgeRec {
    fn of(g: &BidirectedGraph, e: usize) -> EdgeRec {
        let edge = g.edge(e);
        EdgeRec {
            id: edge.id.clone(),
            u: g.vertex_name(edge.ends[0].vertex).to_string(),
            su: edge.ends[0].sign,
            v: g.vertex_name(edge.ends[1].vertex).to_string(),
            sv: edge.ends[1].sign,
        }
    }

    fn add_to(&self, g: &mut BidirectedGraph) -> Result<()> {
        g.add_edge(&self.id, &self.u, self.su, &self.v, self.sv)?;
        Ok(())
    }
}

/// One decomposition step: the contracted ground, the quotient rooted
/// at the contracted vertex, and the inversion data.
#[derive(Debug, Clone)]
pub struct GroundDecomposition {
    pub kind: GroundKind,
    pub input_root: String,
    pub orientation: Sign,
    pub ground: Ground,
    pub quotient: RootedGraph,
    /// Maps each quotient edge at the contracted vertex back to its
    /// original ground-side endpoint.
    pub attachment: GluingSpec,
    /// Edges deleted before contraction: the root-to-outside edges of
    /// the round step, plus any edge between ground vertices that is
    /// not itself a ground edge.
    pub removed_edges: Vec<EdgeRec>,
}

fn host_sets(rg: &RootedGraph, gr: &Ground) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let g = &rg.graph;
    let x: BTreeSet<usize> = gr
        .subgraph
        .vertex_names()
        .iter()
        .map(|n| g.vertex(n).expect("ground vertex in host"))
        .collect();
    let ge: BTreeSet<usize> = gr
        .subgraph
        .edges()
        .iter()
        .map(|e| g.edge_by_id(&e.id).expect("ground edge in host"))
        .collect();
    (x, ge)
}

/// One decomposition step with an explicitly chosen ground kind; the
/// kind's precondition must hold.
pub fn decompose_with(rg: &RootedGraph, kind: GroundKind) -> Result<GroundDecomposition> {
    let g = &rg.graph;
    let gr = ground(rg, kind)?;
    let (x, ge) = host_sets(rg, &gr);
    let mut drop: BTreeSet<usize> = BTreeSet::new();
    for e in 0..g.edge_count() {
        let edge = g.edge(e);
        let a = x.contains(&edge.ends[0].vertex);
        let b = x.contains(&edge.ends[1].vertex);
        if a && b && !ge.contains(&e) {
            drop.insert(e);
        }
        // the round step deletes the root's edges to the outside first
        if kind == GroundKind::AlmostStrong && a != b && edge.touches(rg.root) {
            drop.insert(e);
        }
    }
    let removed_edges: Vec<EdgeRec> = drop.iter().map(|&e| EdgeRec::of(g, e)).collect();
    let trimmed = g.without_edge_indices(&drop);
    let (qgraph, fresh) = trimmed.contract(&x)?;
    let mut attachment = GluingSpec::default();
    for qe in qgraph.incident(fresh) {
        let id = &qgraph.edge(*qe).id;
        let orig = g.edge(g.require_edge(id)?);
        let inside = if x.contains(&orig.ends[0].vertex) {
            orig.ends[0].vertex
        } else {
            orig.ends[1].vertex
        };
        attachment
            .targets
            .insert(id.clone(), (g.vertex_name(inside).to_string(), None));
    }
    let fresh_name = qgraph.vertex_name(fresh).to_string();
    let quotient = RootedGraph::new(qgraph, &fresh_name, rg.orientation)?;
    let d = GroundDecomposition {
        kind,
        input_root: rg.root_name().to_string(),
        orientation: rg.orientation,
        ground: gr,
        quotient,
        attachment,
        removed_edges,
    };
    verify_quotient(&d)?;
    Ok(d)
}

fn verify_quotient(d: &GroundDecomposition) -> Result<()> {
    let rep = class_report(&d.quotient)?;
    let ok = match d.kind {
        GroundKind::Absolute | GroundKind::Strong | GroundKind::AlmostStrong => rep.is_sharp,
        GroundKind::Linear => rep.is_round,
        GroundKind::Extended => rep.is_round && rep.root_kind == RootKind::Sublinear,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::Hypothesis(format!(
            "{} step produced a quotient outside the expected class",
            d.kind.name()
        )))
    }
}

/// One decomposition step, dispatched on the input's class.
pub fn decompose_step(rg: &RootedGraph) -> Result<GroundDecomposition> {
    let rep = class_report(rg)?;
    let kind = step_kind(&rep).ok_or_else(|| Error::ClassMismatch {
        expected: "radial or semiradial".into(),
        found: "neither".into(),
    })?;
    decompose_with(rg, kind)
}

fn step_kind(rep: &GraphClassReport) -> Option<GroundKind> {
    if rep.is_radial && rep.root_kind == RootKind::Strong {
        Some(GroundKind::Strong)
    } else if rep.is_round {
        Some(GroundKind::AlmostStrong)
    } else if rep.is_radial && rep.root_kind == RootKind::Sublinear {
        Some(GroundKind::Extended)
    } else if rep.is_sharp {
        Some(GroundKind::Linear)
    } else if rep.is_semiradial {
        Some(GroundKind::Absolute)
    } else {
        None
    }
}

/// Exact inverse of `decompose_step`: glue the quotient back onto the
/// ground and re-add the deleted edges.
pub fn recompose(d: &GroundDecomposition) -> Result<RootedGraph> {
    let t: BTreeSet<String> = d.ground.subgraph.vertex_names().iter().cloned().collect();
    let glue = d.quotient.root_name().to_string();
    let mut g = gluing_sum(
        &d.quotient.graph,
        &glue,
        &d.ground.subgraph,
        &t,
        &d.attachment,
    )?;
    for er in &d.removed_edges {
        er.add_to(&mut g)?;
    }
    RootedGraph::new(g, &d.input_root, d.orientation)
}

/// The three-way split of a triplex: almost strong ground H1, the
/// first-shell part H2, and the contracted second-shell part H3, plus
/// the wiring edges of the two extra-edge clauses.
#[derive(Debug, Clone)]
pub struct TriplexSplit {
    pub h1: RootedGraph,
    pub h2: RootedGraph,
    pub h3: RootedGraph,
    /// H3's edges at its root, mapped back to their endpoints in
    /// V(H1) ∖ {r}.
    pub h3_attachment: GluingSpec,
    /// Edges from the first shell into the rest of the graph.
    pub wiring1: Vec<EdgeRec>,
    /// Edges from the root into the second shell.
    pub wiring2: Vec<EdgeRec>,
}

pub fn split_triplex(rg: &RootedGraph) -> Result<TriplexSplit> {
    let rep = class_report(rg)?;
    if !rep.is_triplex {
        return Err(Error::ClassMismatch {
            expected: "triplex radial".into(),
            found: "not a triplex".into(),
        });
    }
    let g = &rg.graph;
    let asg = ground(rg, GroundKind::AlmostStrong)?;
    let ext = ground(rg, GroundKind::Extended)?;
    if !ext.subgraph.same_labelled(g) {
        return Err(Error::Hypothesis(
            "triplex whose extended ground is a proper subgraph".into(),
        ));
    }
    let (h1set, h1edges) = host_sets(rg, &asg);
    let s1: BTreeSet<usize> = ext.shell1.iter().map(|n| g.vertex(n).unwrap()).collect();
    let s2: BTreeSet<usize> = ext.shell2.iter().map(|n| g.vertex(n).unwrap()).collect();

    // H2 = induced on S1 + r, minus edges already owned by H1 (loops
    // over the root).
    let mut h2v = s1.clone();
    h2v.insert(rg.root);
    let h2e: BTreeSet<usize> = (0..g.edge_count())
        .filter(|&e| {
            let edge = g.edge(e);
            !h1edges.contains(&e)
                && h2v.contains(&edge.ends[0].vertex)
                && h2v.contains(&edge.ends[1].vertex)
        })
        .collect();
    let h2 = RootedGraph::new(
        g.subgraph(&h2v, &h2e)?,
        rg.root_name(),
        rg.orientation,
    )?;

    // wiring2: root-to-second-shell edges, deleted before contraction.
    let wiring2_idx: BTreeSet<usize> = (0..g.edge_count())
        .filter(|&e| {
            let edge = g.edge(e);
            !edge.is_loop()
                && edge.touches(rg.root)
                && s2.contains(&edge.other_end(rg.root).vertex)
        })
        .collect();

    // H3 = G[S2 ∪ V(H1)] / V(H1), after removing wiring2.
    let mut kv = s2.clone();
    kv.extend(h1set.iter().copied());
    let ke: BTreeSet<usize> = (0..g.edge_count())
        .filter(|&e| {
            let edge = g.edge(e);
            // H1-internal edges stay with H1; H3 takes only edges
            // touching the second shell
            !wiring2_idx.contains(&e)
                && kv.contains(&edge.ends[0].vertex)
                && kv.contains(&edge.ends[1].vertex)
                && (s2.contains(&edge.ends[0].vertex) || s2.contains(&edge.ends[1].vertex))
        })
        .collect();
    let k = g.subgraph(&kv, &ke)?;
    let kx: BTreeSet<usize> = h1set.iter().map(|&v| k.vertex(g.vertex_name(v)).unwrap()).collect();
    let (h3g, sidx) = k.contract(&kx)?;
    let sname = h3g.vertex_name(sidx).to_string();
    let mut h3_attachment = GluingSpec::default();
    for &qe in h3g.incident(sidx) {
        let id = &h3g.edge(qe).id;
        let orig = g.edge(g.require_edge(id)?);
        let inside = if h1set.contains(&orig.ends[0].vertex) {
            orig.ends[0].vertex
        } else {
            orig.ends[1].vertex
        };
        if inside == rg.root {
            return Err(Error::Hypothesis(
                "second shell joined to the root outside the wiring clause".into(),
            ));
        }
        h3_attachment
            .targets
            .insert(id.clone(), (g.vertex_name(inside).to_string(), None));
    }
    let h3 = RootedGraph::new(h3g, &sname, rg.orientation)?;

    // wiring1: first shell to (V(H1) ∖ {r}) ∪ S2.
    let wiring1_idx: BTreeSet<usize> = (0..g.edge_count())
        .filter(|&e| {
            let edge = g.edge(e);
            let (a, b) = (edge.ends[0].vertex, edge.ends[1].vertex);
            let side = |v: usize| (h1set.contains(&v) && v != rg.root) || s2.contains(&v);
            (s1.contains(&a) && side(b)) || (s1.contains(&b) && side(a))
        })
        .collect();

    // Every edge of G must be accounted for exactly once.
    let mut owned: BTreeSet<usize> = h1edges.clone();
    owned.extend(&h2e);
    owned.extend(&ke);
    owned.extend(&wiring1_idx);
    owned.extend(&wiring2_idx);
    let total = h1edges.len() + h2e.len() + ke.len() + wiring1_idx.len() + wiring2_idx.len();
    if owned.len() != g.edge_count() || total != g.edge_count() {
        return Err(Error::Hypothesis(
            "triplex split does not partition the edge set".into(),
        ));
    }

    let h1 = RootedGraph::new(asg.subgraph.clone(), rg.root_name(), rg.orientation)?;
    Ok(TriplexSplit {
        h1,
        h2,
        h3,
        h3_attachment,
        wiring1: wiring1_idx.iter().map(|&e| EdgeRec::of(g, e)).collect(),
        wiring2: wiring2_idx.iter().map(|&e| EdgeRec::of(g, e)).collect(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComposeKind {
    /// round ⊕ linear on V(H)∖{r} → sharp semiradial.
    Sharp,
    /// sharp ⊕ almost strong on V(H)∖{r}, plus α-signed root edges →
    /// round radial.
    Round,
    /// sharp ⊕ absolute on V(H) → semiradial.
    Semiradial,
    /// sharp ⊕ strong on V(H) → radial with strong root.
    StrongRooted,
    /// linear H3 ⊕ (H1 + H2) on V(H1)∖{r}, plus shell wiring →
    /// triplex radial.
    Triplex,
    /// round ⊕ triplex on its shell, plus α-signed root edges →
    /// radial with sublinear root.
    SublinearRooted,
}

impl ComposeKind {
    pub fn name(self) -> &'static str {
        match self {
            ComposeKind::Sharp => "sharp",
            ComposeKind::Round => "round",
            ComposeKind::Semiradial => "semiradial",
            ComposeKind::StrongRooted => "strong-rooted",
            ComposeKind::Triplex => "triplex",
            ComposeKind::SublinearRooted => "sublinear-rooted",
        }
    }

    pub fn from_name(s: &str) -> Option<ComposeKind> {
        Some(match s {
            "sharp" => ComposeKind::Sharp,
            "round" => ComposeKind::Round,
            "semiradial" => ComposeKind::Semiradial,
            "strong-rooted" => ComposeKind::StrongRooted,
            "triplex" => ComposeKind::Triplex,
            "sublinear-rooted" => ComposeKind::SublinearRooted,
            _ => return None,
        })
    }
}

/// A composition request: parts in kind order (glue part first, except
/// Triplex which takes H1, H2, H3), the gluing spec for the glue
/// vertex's edges, and the extra edges the kind admits.
#[derive(Debug, Clone)]
pub struct ComposeJob {
    pub kind: ComposeKind,
    pub parts: Vec<RootedGraph>,
    pub spec: GluingSpec,
    pub extra_edges: Vec<EdgeRec>,
}

fn mismatch(expected: &str, found: &str) -> Error {
    Error::ClassMismatch {
        expected: expected.into(),
        found: found.into(),
    }
}

fn want_two(job: &ComposeJob) -> Result<(&RootedGraph, &RootedGraph)> {
    if job.parts.len() != 2 {
        return Err(Error::Input(format!(
            "{} composition takes two parts, got {}",
            job.kind.name(),
            job.parts.len()
        )));
    }
    Ok((&job.parts[0], &job.parts[1]))
}

fn check_extra_root_edges(
    extra: &[EdgeRec],
    root: &str,
    alpha: Sign,
    allowed_other: &BTreeSet<String>,
) -> Result<()> {
    for er in extra {
        let (rs, other, os) = if er.u == root {
            (er.su, &er.v, er.sv)
        } else if er.v == root {
            (er.sv, &er.u, er.su)
        } else {
            return Err(mismatch(
                "extra edge incident to the root",
                &format!("edge {} avoids the root", er.id),
            ));
        };
        let _ = os;
        if rs != alpha {
            return Err(mismatch(
                "extra edge with the orientation sign at the root",
                &format!("edge {} carries the opposite sign", er.id),
            ));
        }
        if !allowed_other.contains(other) {
            return Err(mismatch(
                "extra edge into the glued part",
                &format!("edge {} ends at {}", er.id, other),
            ));
        }
    }
    Ok(())
}

fn names_of(g: &BidirectedGraph) -> BTreeSet<String> {
    g.vertex_names().iter().cloned().collect()
}

/// Builds the gluing sum of a kind and re-verifies the promised class
/// when small enough (or when `force_verify` is set).
pub fn compose(job: &ComposeJob, force_verify: bool) -> Result<RootedGraph> {
    let alpha = job
        .parts
        .first()
        .ok_or_else(|| Error::Input("composition needs parts".into()))?
        .orientation;
    for p in &job.parts {
        if p.orientation != alpha {
            return Err(Error::Input("parts disagree on orientation".into()));
        }
    }
    let out = match job.kind {
        ComposeKind::Sharp => {
            let (gp, hp) = want_two(job)?;
            let grep = class_report(gp)?;
            let hrep = class_report(hp)?;
            if !grep.is_round {
                return Err(mismatch("round radial gluing part", "not round"));
            }
            if !hrep.is_linear_semiradial {
                return Err(mismatch("linear semiradial base part", "not a linear semiradial"));
            }
            if !job.extra_edges.is_empty() {
                return Err(Error::Input("sharp composition admits no extra edges".into()));
            }
            let mut t = names_of(&hp.graph);
            t.remove(hp.root_name());
            let g = gluing_sum(&gp.graph, gp.root_name(), &hp.graph, &t, &job.spec)?;
            RootedGraph::new(g, hp.root_name(), alpha)?
        }
        ComposeKind::Round => {
            let (gp, hp) = want_two(job)?;
            if !class_report(gp)?.is_sharp {
                return Err(mismatch("sharp semiradial gluing part", "not sharp"));
            }
            if !class_report(hp)?.is_almost_strong_radial {
                return Err(mismatch(
                    "almost strong radial base part",
                    "not almost strong",
                ));
            }
            let mut t = names_of(&hp.graph);
            t.remove(hp.root_name());
            let mut g = gluing_sum(&gp.graph, gp.root_name(), &hp.graph, &t, &job.spec)?;
            let mut allowed = names_of(&gp.graph);
            allowed.remove(gp.root_name());
            check_extra_root_edges(&job.extra_edges, hp.root_name(), alpha, &allowed)?;
            for er in &job.extra_edges {
                er.add_to(&mut g)?;
            }
            RootedGraph::new(g, hp.root_name(), alpha)?
        }
        ComposeKind::Semiradial | ComposeKind::StrongRooted => {
            let (gp, hp) = want_two(job)?;
            if !class_report(gp)?.is_sharp {
                return Err(mismatch("sharp semiradial gluing part", "not sharp"));
            }
            let hrep = class_report(hp)?;
            match job.kind {
                ComposeKind::Semiradial if !hrep.is_absolute_semiradial => {
                    return Err(mismatch(
                        "absolute semiradial base part",
                        "not an absolute semiradial",
                    ))
                }
                ComposeKind::StrongRooted if !hrep.is_strong_radial => {
                    return Err(mismatch("strong radial base part", "not a strong radial"))
                }
                _ => {}
            }
            if !job.extra_edges.is_empty() {
                return Err(Error::Input(format!(
                    "{} composition admits no extra edges",
                    job.kind.name()
                )));
            }
            let t = names_of(&hp.graph);
            let g = gluing_sum(&gp.graph, gp.root_name(), &hp.graph, &t, &job.spec)?;
            RootedGraph::new(g, hp.root_name(), alpha)?
        }
        ComposeKind::Triplex => {
            if job.parts.len() != 3 {
                return Err(Error::Input("triplex composition takes three parts".into()));
            }
            let (h1, h2, h3) = (&job.parts[0], &job.parts[1], &job.parts[2]);
            if !class_report(h1)?.is_almost_strong_radial {
                return Err(mismatch("almost strong radial H1", "not almost strong"));
            }
            if !class_report(h2)?.is_sublinear_radial {
                return Err(mismatch("sublinear radial H2", "not a sublinear radial"));
            }
            if !class_report(h3)?.is_linear_semiradial {
                return Err(mismatch("linear semiradial H3", "not a linear semiradial"));
            }
            let r = h1.root_name();
            if h2.root_name() != r {
                return Err(Error::Input("H1 and H2 must share their root".into()));
            }
            let n1 = names_of(&h1.graph);
            let n2 = names_of(&h2.graph);
            let shared: BTreeSet<&String> = n1.intersection(&n2).collect();
            if shared.len() != 1 {
                return Err(Error::Input("H1 and H2 may share only the root".into()));
            }
            let n3 = names_of(&h3.graph);
            if !n3.is_disjoint(&n1) || !n3.is_disjoint(&n2) {
                return Err(Error::Input("H3 must be disjoint from H1 and H2".into()));
            }
            if h1.graph.vertex_count() == 1
                && (h3.graph.vertex_count() != 1 || h3.graph.edge_count() != 0)
            {
                return Err(mismatch(
                    "trivial H3 when H1 is trivial",
                    "nontrivial H3",
                ));
            }
            let base = h1.graph.union(&h2.graph)?;
            let mut t = n1.clone();
            t.remove(r);
            let mut g = gluing_sum(&h3.graph, h3.root_name(), &base, &t, &job.spec)?;
            // wiring clauses: first-shell edges outward, root edges into
            // the second shell
            let s1: BTreeSet<String> = n2.iter().filter(|n| n.as_str() != r).cloned().collect();
            let s2: BTreeSet<String> =
                n3.iter().filter(|n| n.as_str() != h3.root_name()).cloned().collect();
            let side: BTreeSet<String> = t.union(&s2).cloned().collect();
            for er in &job.extra_edges {
                let c1 = (s1.contains(&er.u) && er.su == alpha && side.contains(&er.v))
                    || (s1.contains(&er.v) && er.sv == alpha && side.contains(&er.u));
                let c2 = (er.u == r && er.su == alpha && s2.contains(&er.v))
                    || (er.v == r && er.sv == alpha && s2.contains(&er.u));
                if !(c1 || c2) {
                    return Err(mismatch(
                        "wiring edge per the triplex clauses",
                        &format!("edge {} fits neither clause", er.id),
                    ));
                }
                er.add_to(&mut g)?;
            }
            RootedGraph::new(g, r, alpha)?
        }
        ComposeKind::SublinearRooted => {
            let (gp, hp) = want_two(job)?;
            let grep = class_report(gp)?;
            if !grep.is_round {
                return Err(mismatch("round radial gluing part", "not round"));
            }
            let hrep = class_report(hp)?;
            if !hrep.is_triplex {
                return Err(mismatch("triplex radial base part", "not a triplex"));
            }
            let asg = ground(hp, GroundKind::AlmostStrong)?;
            let shell: BTreeSet<String> = names_of(&hp.graph)
                .difference(&names_of(&asg.subgraph))
                .cloned()
                .collect();
            if shell.is_empty() {
                return Err(mismatch("triplex with nonempty shell", "empty shell"));
            }
            let mut g = gluing_sum(&gp.graph, gp.root_name(), &hp.graph, &shell, &job.spec)?;
            let mut allowed = names_of(&gp.graph);
            allowed.remove(gp.root_name());
            check_extra_root_edges(&job.extra_edges, hp.root_name(), alpha, &allowed)?;
            for er in &job.extra_edges {
                er.add_to(&mut g)?;
            }
            RootedGraph::new(g, hp.root_name(), alpha)?
        }
    };
    if force_verify || out.graph.edge_count() <= COMPOSE_VERIFY_MAX_EDGES {
        let rep = class_report(&out)?;
        let ok = match job.kind {
            ComposeKind::Sharp => rep.is_sharp,
            ComposeKind::Round => rep.is_round,
            ComposeKind::Semiradial => rep.is_semiradial,
            ComposeKind::StrongRooted => rep.is_radial && rep.root_kind == RootKind::Strong,
            ComposeKind::Triplex => rep.is_triplex,
            ComposeKind::SublinearRooted => {
                rep.is_radial && rep.root_kind == RootKind::Sublinear
            }
        };
        if !ok {
            return Err(Error::Hypothesis(format!(
                "{} composition left the promised class",
                job.kind.name()
            )));
        }
    }
    Ok(out)
}

/// Rebuilds the composition request a decomposition step inverts to;
/// running `compose` on it recovers the input graph exactly.
pub fn to_compose_job(d: &GroundDecomposition) -> Result<ComposeJob> {
    let ground_part = RootedGraph::new(
        d.ground.subgraph.clone(),
        &d.input_root,
        d.orientation,
    )?;
    let (kind, spec, extra) = match d.kind {
        GroundKind::Absolute => (ComposeKind::Semiradial, d.attachment.clone(), vec![]),
        GroundKind::Strong => (ComposeKind::StrongRooted, d.attachment.clone(), vec![]),
        GroundKind::Linear => {
            if !d.removed_edges.is_empty() {
                return Err(Error::Hypothesis(
                    "linear step with edges outside its ground".into(),
                ));
            }
            (ComposeKind::Sharp, d.attachment.clone(), vec![])
        }
        GroundKind::AlmostStrong => (
            ComposeKind::Round,
            d.attachment.clone(),
            d.removed_edges.clone(),
        ),
        GroundKind::Extended => {
            // root-targeted attachments are the extra-edge clause
            let mut spec = GluingSpec::default();
            let mut extra = Vec::new();
            for (id, (target, pair)) in &d.attachment.targets {
                if target == &d.input_root {
                    let e = d.quotient.graph.edge(d.quotient.graph.require_edge(id)?);
                    let qroot = d.quotient.root;
                    let outside = e.other_end(qroot);
                    extra.push(EdgeRec {
                        id: id.clone(),
                        u: d.input_root.clone(),
                        su: e.sign_at(qroot),
                        v: d.quotient.graph.vertex_name(outside.vertex).to_string(),
                        sv: outside.sign,
                    });
                } else {
                    spec.targets.insert(id.clone(), (target.clone(), pair.clone()));
                }
            }
            (ComposeKind::SublinearRooted, spec, extra)
        }
    };
    let quotient_part = match d.kind {
        GroundKind::Extended => {
            // drop the root-targeted edges from the gluing part; they
            // come back as extra edges
            let ids: Vec<&str> = extra
                .iter()
                .map(|er| er.id.as_str())
                .collect();
            let trimmed = d.quotient.graph.without_edges(&ids)?;
            RootedGraph::new(trimmed, d.quotient.root_name(), d.orientation)?
        }
        _ => d.quotient.clone(),
    };
    Ok(ComposeJob {
        kind,
        parts: vec![quotient_part, ground_part],
        spec,
        extra_edges: extra,
    })
}

/// The composition request inverting a triplex split.
pub fn triplex_compose_job(s: &TriplexSplit) -> ComposeJob {
    let mut extra = s.wiring1.clone();
    extra.extend(s.wiring2.clone());
    ComposeJob {
        kind: ComposeKind::Triplex,
        parts: vec![s.h1.clone(), s.h2.clone(), s.h3.clone()],
        spec: s.h3_attachment.clone(),
        extra_edges: extra,
    }
}

// --- full decomposition -------------------------------------------------

/// A node of the decomposition tree.
#[derive(Debug)]
pub struct TreeNode {
    pub label: String,
    pub graph: RootedGraph,
    pub detail: NodeDetail,
}

#[derive(Debug)]
pub enum NodeDetail {
    Leaf,
    Step {
        decomposition: Box<GroundDecomposition>,
        ground: Box<TreeNode>,
        quotient: Box<TreeNode>,
    },
    Triplex {
        split: Box<TriplexSplit>,
        parts: Vec<TreeNode>,
    },
}

#[derive(Debug)]
pub struct DecompositionTree {
    pub root: TreeNode,
}

fn leaf_label(rep: &GraphClassReport, rg: &RootedGraph) -> Option<&'static str> {
    if rg.graph.vertex_count() == 1 && rg.graph.edge_count() == 0 {
        return Some("trivial");
    }
    if rep.is_absolute_semiradial {
        return Some("absolute-semiradial");
    }
    if rep.is_strong_radial {
        return Some("strong-radial");
    }
    if rep.is_almost_strong_radial {
        return Some("almost-strong-radial");
    }
    if rep.is_linear_semiradial {
        return Some("linear-semiradial");
    }
    if rep.is_sublinear_radial {
        return Some("sublinear-radial");
    }
    None
}

fn decompose_node(rg: &RootedGraph, depth: usize) -> Result<TreeNode> {
    if depth > 64 {
        return Err(Error::Hypothesis("decomposition recursion too deep".into()));
    }
    let rep = class_report(rg)?;
    if let Some(label) = leaf_label(&rep, rg) {
        return Ok(TreeNode {
            label: label.into(),
            graph: rg.clone(),
            detail: NodeDetail::Leaf,
        });
    }
    if rep.is_triplex {
        let split = split_triplex(rg)?;
        let parts = vec![
            decompose_node(&split.h1, depth + 1)?,
            decompose_node(&split.h2, depth + 1)?,
            decompose_node(&split.h3, depth + 1)?,
        ];
        return Ok(TreeNode {
            label: "triplex".into(),
            graph: rg.clone(),
            detail: NodeDetail::Triplex {
                split: Box::new(split),
                parts,
            },
        });
    }
    let kind = step_kind(&rep).ok_or_else(|| Error::ClassMismatch {
        expected: "radial or semiradial".into(),
        found: "neither".into(),
    })?;
    let d = decompose_with(rg, kind)?;
    let q = &d.quotient;
    if q.graph.vertex_count() >= rg.graph.vertex_count()
        && q.graph.edge_count() >= rg.graph.edge_count()
    {
        return Err(Error::Hypothesis(
            "decomposition step made no progress".into(),
        ));
    }
    let ground_part = RootedGraph::new(
        d.ground.subgraph.clone(),
        rg.root_name(),
        rg.orientation,
    )?;
    let label = match kind {
        GroundKind::Absolute => "semiradial",
        GroundKind::Linear => "sharp-semiradial",
        GroundKind::Strong => "radial-strong-root",
        GroundKind::AlmostStrong => "round-radial",
        GroundKind::Extended => "radial-sublinear-root",
    };
    let ground_node = decompose_node(&ground_part, depth + 1)?;
    let quotient_node = decompose_node(q, depth + 1)?;
    Ok(TreeNode {
        label: label.into(),
        graph: rg.clone(),
        detail: NodeDetail::Step {
            decomposition: Box::new(d),
            ground: Box::new(ground_node),
            quotient: Box::new(quotient_node),
        },
    })
}

/// Repeated decomposition until every leaf is a principal class or
/// trivial.
pub fn decompose_full(rg: &RootedGraph) -> Result<DecompositionTree> {
    let rep = class_report(rg)?;
    if !rep.is_radial && !rep.is_semiradial {
        return Err(Error::ClassMismatch {
            expected: "radial or semiradial".into(),
            found: "neither".into(),
        });
    }
    Ok(DecompositionTree {
        root: decompose_node(rg, 0)?,
    })
}

/// Rebuilds a tree bottom-up; the result equals the decomposed graph.
pub fn recompose_tree(node: &TreeNode) -> Result<RootedGraph> {
    match &node.detail {
        NodeDetail::Leaf => Ok(node.graph.clone()),
        NodeDetail::Step {
            decomposition,
            ground,
            quotient,
        } => {
            let gpart = recompose_tree(ground)?;
            let qpart = recompose_tree(quotient)?;
            if !gpart.graph.same_labelled(&decomposition.ground.subgraph)
                || !qpart.graph.same_labelled(&decomposition.quotient.graph)
            {
                return Err(Error::Hypothesis(
                    "subtree recomposition diverged from the recorded parts".into(),
                ));
            }
            recompose(decomposition)
        }
        NodeDetail::Triplex { split, parts } => {
            for (part, want) in parts.iter().zip([&split.h1, &split.h2, &split.h3]) {
                if !recompose_tree(part)?.graph.same_labelled(&want.graph) {
                    return Err(Error::Hypothesis(
                        "subtree recomposition diverged from the recorded parts".into(),
                    ));
                }
            }
            compose(&triplex_compose_job(split), false)
        }
    }
}

// --- generation ----------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenClass {
    AbsoluteSemiradial,
    StrongRadial,
    AlmostStrongRadial,
    RoundRadial,
    SharpSemiradial,
    LinearSemiradial,
    SublinearRadial,
    Semiradial,
    RadialStrongRoot,
    RadialSublinearRoot,
    Triplex,
}

impl GenClass {
    pub const ALL: [GenClass; 11] = [
        GenClass::AbsoluteSemiradial,
        GenClass::StrongRadial,
        GenClass::AlmostStrongRadial,
        GenClass::RoundRadial,
        GenClass::SharpSemiradial,
        GenClass::LinearSemiradial,
        GenClass::SublinearRadial,
        GenClass::Semiradial,
        GenClass::RadialStrongRoot,
        GenClass::RadialSublinearRoot,
        GenClass::Triplex,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenClass::AbsoluteSemiradial => "absolute-semiradial",
            GenClass::StrongRadial => "strong-radial",
            GenClass::AlmostStrongRadial => "almost-strong-radial",
            GenClass::RoundRadial => "round-radial",
            GenClass::SharpSemiradial => "sharp-semiradial",
            GenClass::LinearSemiradial => "linear-semiradial",
            GenClass::SublinearRadial => "sublinear-radial",
            GenClass::Semiradial => "semiradial",
            GenClass::RadialStrongRoot => "radial-strong-root",
            GenClass::RadialSublinearRoot => "radial-sublinear-root",
            GenClass::Triplex => "triplex",
        }
    }

    pub fn from_name(s: &str) -> Option<GenClass> {
        GenClass::ALL.into_iter().find(|c| c.name() == s)
    }

    /// Does a class report certify membership?
    pub fn holds(self, rep: &GraphClassReport) -> bool {
        match self {
            GenClass::AbsoluteSemiradial => rep.is_absolute_semiradial,
            GenClass::StrongRadial => rep.is_strong_radial,
            GenClass::AlmostStrongRadial => rep.is_almost_strong_radial,
            GenClass::RoundRadial => rep.is_round,
            GenClass::SharpSemiradial => rep.is_sharp,
            GenClass::LinearSemiradial => rep.is_linear_semiradial,
            GenClass::SublinearRadial => rep.is_sublinear_radial,
            GenClass::Semiradial => rep.is_semiradial,
            GenClass::RadialStrongRoot => rep.is_radial && rep.root_kind == RootKind::Strong,
            GenClass::RadialSublinearRoot => {
                rep.is_radial && rep.root_kind == RootKind::Sublinear
            }
            GenClass::Triplex => rep.is_triplex,
        }
    }
}

/// Generator state: one seeded stream plus fresh-name counters.
struct Gen {
    rng: ChaCha8Rng,
    vnames: usize,
    enames: usize,
    alpha: Sign,
}

impl Gen {
    fn vname(&mut self) -> String {
        self.vnames += 1;
        format!("u{}", self.vnames)
    }

    fn ename(&mut self) -> String {
        self.enames += 1;
        format!("x{}", self.enames)
    }

    fn sign(&mut self) -> Sign {
        if self.rng.gen_bool(0.5) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    fn pick<'t, T>(&mut self, items: &'t [T]) -> &'t T {
        &items[self.rng.gen_range(0..items.len())]
    }
}

/// Adds one random diear relative to the whole current graph: a simple
/// ear through fresh internal vertices, or a scoop hanging a signed
/// loop off a fresh vertex.
fn add_random_ear(gen: &mut Gen, g: &mut BidirectedGraph) -> Result<()> {
    let names: Vec<String> = g.vertex_names().to_vec();
    if gen.rng.gen_bool(0.2) {
        // scoop: grip to a fresh vertex carrying a closed loop walk
        let y = gen.pick(&names).clone();
        let x = gen.vname();
        g.add_vertex(&x)?;
        let beta = gen.sign();
        let gamma = gen.sign();
        let (grip, lp) = (gen.ename(), gen.ename());
        g.add_edge(&grip, &y, beta, &x, gamma)?;
        g.add_edge(&lp, &x, gamma.flip(), &x, gamma.flip())?;
        return Ok(());
    }
    let y = gen.pick(&names).clone();
    let z = gen.pick(&names).clone();
    let a = gen.sign();
    let b = gen.sign();
    let k = gen.rng.gen_range(0..=2usize);
    let mut prev = y;
    let mut prev_sign = a;
    for _ in 0..k {
        let w = gen.vname();
        g.add_vertex(&w)?;
        let s = gen.sign();
        let id = gen.ename();
        g.add_edge(&id, &prev, prev_sign, &w, s)?;
        prev = w;
        prev_sign = s.flip();
    }
    let id = gen.ename();
    g.add_edge(&id, &prev, prev_sign, &z, b)?;
    Ok(())
}

fn gen_sqrset(gen: &mut Gen, budget: usize) -> Result<RootedGraph> {
    let mut g = BidirectedGraph::new();
    let root = gen.vname();
    g.add_vertex(&root)?;
    let mut fuel = budget * 3;
    while g.vertex_count() < budget && fuel > 0 {
        add_random_ear(gen, &mut g)?;
        fuel -= 1;
    }
    if budget > 1 && g.edge_count() == 0 {
        add_random_ear(gen, &mut g)?;
    }
    RootedGraph::new(g, &root, gen.alpha)
}

fn gen_acset(gen: &mut Gen, budget: usize, alpha: Sign) -> Result<RootedGraph> {
    let mut g = BidirectedGraph::new();
    let root = gen.vname();
    g.add_vertex(&root)?;
    let na = alpha.flip();
    if budget <= 1 && gen.rng.gen_bool(0.5) {
        // loop base: a one-edge closed diear over the root
        let id = gen.ename();
        g.add_edge(&id, &root, na, &root, na)?;
    } else {
        // two-edge base through a fresh vertex
        let x = gen.vname();
        g.add_vertex(&x)?;
        let s = gen.sign();
        let (e1, e2) = (gen.ename(), gen.ename());
        g.add_edge(&e1, &root, na, &x, s)?;
        g.add_edge(&e2, &x, s.flip(), &root, na)?;
    }
    let mut fuel = budget * 3;
    while g.vertex_count() < budget && fuel > 0 {
        add_random_ear(gen, &mut g)?;
        fuel -= 1;
    }
    let mut rg = RootedGraph::new(g, &root, gen.alpha)?;
    rg.orientation = alpha;
    Ok(rg)
}

fn gen_nacset(gen: &mut Gen, budget: usize, alpha: Sign) -> Result<RootedGraph> {
    let mut rg = if budget <= 1 {
        let mut g = BidirectedGraph::new();
        let root = gen.vname();
        g.add_vertex(&root)?;
        let mut out = RootedGraph::new(g, &root, gen.alpha)?;
        out.orientation = alpha;
        out
    } else if gen.rng.gen_bool(0.6) {
        // hang a strong β-radial off a fresh root
        let beta = gen.sign();
        let inner = gen_acset(gen, budget.saturating_sub(1).max(1), beta)?;
        let root = gen.vname();
        let mut g = inner.graph.clone();
        g.add_vertex(&root)?;
        let id = gen.ename();
        g.add_edge(&id, &root, alpha.flip(), inner.root_name(), beta)?;
        let mut out = RootedGraph::new(g, &root, gen.alpha)?;
        out.orientation = alpha;
        out
    } else {
        // root-merge of two smaller members
        let b1 = gen.rng.gen_range(1..budget.max(2));
        let b2 = (budget - b1.min(budget)).max(1);
        let p1 = gen_nacset(gen, b1, alpha)?;
        let p2 = gen_nacset(gen, b2, alpha)?;
        let renamed = p2
            .graph
            .renamed_vertex(p2.root_name(), p1.root_name())?;
        let g = p1.graph.union(&renamed)?;
        let mut out = RootedGraph::new(g, p1.root_name(), gen.alpha)?;
        out.orientation = alpha;
        out
    };
    // the root-edge clause: more edges at the root with sign alpha
    let extras = gen.rng.gen_range(0..=2usize);
    for _ in 0..extras {
        let names: Vec<String> = rg.graph.vertex_names().to_vec();
        let v = gen.pick(&names).clone();
        let id = gen.ename();
        let root = rg.root_name().to_string();
        let other = gen.sign();
        let g = rg.graph.with_edge(&id, &root, alpha, &v, other)?;
        rg = RootedGraph::new(g, &root, alpha)?;
    }
    Ok(rg)
}

/// Filtered growth for a class with no edge-by-edge grammar here:
/// random attachments kept only when the predicate survives, plus a
/// chain fallback that is always a member of both filtered classes.
fn gen_filtered(
    gen: &mut Gen,
    budget: usize,
    alpha: Sign,
    pred: fn(&GraphClassReport) -> bool,
) -> Result<RootedGraph> {
    let mut g = BidirectedGraph::new();
    let root = gen.vname();
    g.add_vertex(&root)?;
    let mut tip = root.clone();
    let mut tries = budget * 6;
    while g.vertex_count() < budget && tries > 0 {
        tries -= 1;
        let names: Vec<String> = g.vertex_names().to_vec();
        let t = gen.pick(&names).clone();
        let x = gen.vname();
        let id = gen.ename();
        let cand = {
            let mut c = g.clone();
            c.add_vertex(&x)?;
            c.add_edge(&id, &x, gen.sign(), &t, gen.sign())?;
            c
        };
        let rep = class_report(&RootedGraph::new(cand.clone(), &root, alpha)?)?;
        if pred(&rep) {
            g = cand;
            tip = x;
        }
    }
    // deterministic chain fallback toward the budget
    while g.vertex_count() < budget {
        let x = gen.vname();
        let id = gen.ename();
        g.add_vertex(&x)?;
        let tip_sign = if tip == root { gen.sign() } else { alpha.flip() };
        g.add_edge(&id, &x, alpha, &tip, tip_sign)?;
        tip = x;
    }
    RootedGraph::new(g, &root, alpha)
}

fn is_linear_rep(rep: &GraphClassReport) -> bool {
    rep.is_linear_semiradial
}

fn is_sublinear_rep(rep: &GraphClassReport) -> bool {
    rep.is_sublinear_radial
}

/// Glues `gp` (at its root) onto `hp` with uniformly random targets
/// from `t`.
fn random_glue(
    gen: &mut Gen,
    gp: &RootedGraph,
    hp: &BidirectedGraph,
    t: &BTreeSet<String>,
) -> Result<BidirectedGraph> {
    let tv: Vec<String> = t.iter().cloned().collect();
    let mut spec = GluingSpec::default();
    let s = gp.root;
    for &e in gp.graph.incident(s) {
        let edge = gp.graph.edge(e);
        if tv.is_empty() {
            return Err(Error::Input("no gluing targets available".into()));
        }
        let t1 = gen.pick(&tv).clone();
        let t2 = if edge.is_loop() {
            Some(gen.pick(&tv).clone())
        } else {
            None
        };
        spec.targets.insert(edge.id.clone(), (t1, t2));
    }
    gluing_sum(&gp.graph, gp.root_name(), hp, t, &spec)
}

fn split_budget(gen: &mut Gen, budget: usize) -> (usize, usize) {
    if budget <= 2 {
        return (1, 1);
    }
    let b1 = gen.rng.gen_range(1..budget);
    (b1, (budget - b1).max(1))
}

fn gen_rrset(gen: &mut Gen, budget: usize, alpha: Sign) -> Result<RootedGraph> {
    let mut rg = if budget <= 2 || gen.rng.gen_bool(0.5) {
        gen_nacset(gen, budget, alpha)?
    } else {
        let (b1, b2) = split_budget(gen, budget);
        let gp = gen_lsrset(gen, b1, alpha)?;
        let hp = gen_nacset(gen, b2.max(2), alpha)?;
        let mut t: BTreeSet<String> = hp.graph.vertex_names().iter().cloned().collect();
        t.remove(hp.root_name());
        if t.is_empty() {
            gen_nacset(gen, budget, alpha)?
        } else {
            let g = random_glue(gen, &gp, &hp.graph, &t)?;
            RootedGraph::new(g, hp.root_name(), alpha)?
        }
    };
    for _ in 0..gen.rng.gen_range(0..=1usize) {
        let names: Vec<String> = rg.graph.vertex_names().to_vec();
        let v = gen.pick(&names).clone();
        let id = gen.ename();
        let root = rg.root_name().to_string();
        let g = rg.graph.with_edge(&id, &root, alpha, &v, gen.sign())?;
        rg = RootedGraph::new(g, &root, alpha)?;
    }
    Ok(rg)
}

fn gen_lsrset(gen: &mut Gen, budget: usize, alpha: Sign) -> Result<RootedGraph> {
    if budget <= 2 || gen.rng.gen_bool(0.5) {
        return gen_filtered(gen, budget, alpha, is_linear_rep);
    }
    let (b1, b2) = split_budget(gen, budget);
    let gp = gen_rrset(gen, b1, alpha)?;
    let hp = gen_filtered(gen, b2.max(2), alpha, is_linear_rep)?;
    let mut t: BTreeSet<String> = hp.graph.vertex_names().iter().cloned().collect();
    t.remove(hp.root_name());
    if t.is_empty() {
        return gen_filtered(gen, budget, alpha, is_linear_rep);
    }
    let g = random_glue(gen, &gp, &hp.graph, &t)?;
    RootedGraph::new(g, hp.root_name(), alpha)
}

fn gen_triplex(gen: &mut Gen, budget: usize, alpha: Sign) -> Result<RootedGraph> {
    let b1 = gen.rng.gen_range(1..=budget);
    let rest = budget - b1;
    let b2 = if rest == 0 { 0 } else { gen.rng.gen_range(0..=rest) };
    let b3 = rest - b2;
    let h1 = gen_nacset(gen, b1.max(1), alpha)?;
    let h2raw = gen_filtered(gen, b2 + 1, alpha, is_sublinear_rep)?;
    let h2g = h2raw
        .graph
        .renamed_vertex(h2raw.root_name(), h1.root_name())?;
    let h2 = RootedGraph::new(h2g, h1.root_name(), alpha)?;
    let h3 = if h1.graph.vertex_count() == 1 {
        let mut g = BidirectedGraph::new();
        let s = gen.vname();
        g.add_vertex(&s)?;
        RootedGraph::new(g, &s, alpha)?
    } else {
        gen_filtered(gen, b3 + 1, alpha, is_linear_rep)?
    };
    let r = h1.root_name().to_string();
    let base = h1.graph.union(&h2.graph)?;
    let mut t: BTreeSet<String> = h1.graph.vertex_names().iter().cloned().collect();
    t.remove(&r);
    let h3part = RootedGraph::new(h3.graph.clone(), h3.root_name(), alpha)?;
    let mut g = random_glue(gen, &h3part, &base, &t)?;
    // optional wiring edges per the triplex clauses
    let s1: Vec<String> = h2
        .graph
        .vertex_names()
        .iter()
        .filter(|n| n.as_str() != r)
        .cloned()
        .collect();
    let s2: Vec<String> = h3
        .graph
        .vertex_names()
        .iter()
        .filter(|n| n.as_str() != h3.root_name())
        .cloned()
        .collect();
    let mut side: Vec<String> = t.iter().cloned().collect();
    side.extend(s2.iter().cloned());
    if !s1.is_empty() && !side.is_empty() {
        for _ in 0..gen.rng.gen_range(0..=1usize) {
            let u = gen.pick(&s1).clone();
            let w = gen.pick(&side).clone();
            let id = gen.ename();
            g.add_edge(&id, &u, alpha, &w, gen.sign())?;
        }
    }
    if !s2.is_empty() {
        for _ in 0..gen.rng.gen_range(0..=1usize) {
            let v = gen.pick(&s2).clone();
            let id = gen.ename();
            g.add_edge(&id, &r, alpha, &v, gen.sign())?;
        }
    }
    RootedGraph::new(g, &r, alpha)
}

fn build_class(gen: &mut Gen, class: GenClass, budget: usize) -> Result<RootedGraph> {
    let alpha = gen.alpha;
    match class {
        GenClass::AbsoluteSemiradial => gen_sqrset(gen, budget),
        GenClass::StrongRadial => gen_acset(gen, budget, alpha),
        GenClass::AlmostStrongRadial => gen_nacset(gen, budget, alpha),
        GenClass::RoundRadial => gen_rrset(gen, budget, alpha),
        GenClass::SharpSemiradial => gen_lsrset(gen, budget, alpha),
        GenClass::LinearSemiradial => gen_filtered(gen, budget, alpha, is_linear_rep),
        GenClass::SublinearRadial => gen_filtered(gen, budget, alpha, is_sublinear_rep),
        GenClass::Semiradial | GenClass::RadialStrongRoot => {
            let (b1, b2) = split_budget(gen, budget);
            let gp = gen_lsrset(gen, b1, alpha)?;
            let hp = if class == GenClass::Semiradial {
                gen_sqrset(gen, b2)?
            } else {
                gen_acset(gen, b2, alpha)?
            };
            let t: BTreeSet<String> = hp.graph.vertex_names().iter().cloned().collect();
            let g = random_glue(gen, &gp, &hp.graph, &t)?;
            RootedGraph::new(g, hp.root_name(), alpha)
        }
        GenClass::Triplex => gen_triplex(gen, budget, alpha),
        GenClass::RadialSublinearRoot => {
            if budget <= 2 || gen.rng.gen_bool(0.4) {
                return gen_triplex(gen, budget, alpha);
            }
            let (b1, b2) = split_budget(gen, budget);
            let hp = gen_triplex(gen, b2.max(2), alpha)?;
            let asg = ground(&hp, GroundKind::AlmostStrong)?;
            let shell: BTreeSet<String> = hp
                .graph
                .vertex_names()
                .iter()
                .filter(|n| asg.subgraph.vertex(n).is_none())
                .cloned()
                .collect();
            if shell.is_empty() {
                return Ok(hp);
            }
            let gp = gen_rrset(gen, b1, alpha)?;
            let mut g = random_glue(gen, &gp, &hp.graph, &shell)?;
            let root = hp.root_name().to_string();
            let others: Vec<String> = gp
                .graph
                .vertex_names()
                .iter()
                .filter(|n| n.as_str() != gp.root_name())
                .cloned()
                .collect();
            if !others.is_empty() {
                for _ in 0..gen.rng.gen_range(0..=1usize) {
                    let v = gen.pick(&others).clone();
                    let id = gen.ename();
                    g.add_edge(&id, &root, alpha, &v, gen.sign())?;
                }
            }
            RootedGraph::new(g, &root, alpha)
        }
    }
}

/// A pseudorandom member of the class with roughly `size` vertices,
/// reproducible from `seed`. The output root is always named `r`, and
/// the graph is definitionally re-verified before being returned.
pub fn generate(class: GenClass, size: usize, seed: u64) -> Result<RootedGraph> {
    if size == 0 {
        return Err(Error::Input("size must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATE_MAX_ATTEMPTS {
        let mut gen = Gen {
            rng: rng.clone(),
            vnames: 0,
            enames: 0,
            alpha: Sign::Plus,
        };
        let built = build_class(&mut gen, class, size);
        rng = gen.rng; // keep consuming one stream across attempts
        let Ok(rg) = built else { continue };
        let Ok(rep) = class_report(&rg) else { continue };
        if class.holds(&rep) {
            let g = rg.graph.renamed_vertex(rg.root_name(), "r")?;
            return RootedGraph::new(g, "r", rg.orientation);
        }
    }
    Err(Error::Hypothesis(format!(
        "could not generate a {} member of size {size} after {GENERATE_MAX_ATTEMPTS} attempts",
        class.name()
    )))
}
