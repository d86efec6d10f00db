//! Executable property checks, one per structural fact the library
//! relies on, run over the exhaustive tiny family plus seeded random
//! families. Each check skips instances that fail its hypotheses (and
//! reports the satisfaction rate so vacuous passes are visible),
//! asserts its conclusion through the other modules, and greedily
//! shrinks any counterexample by edge deletion before reporting it.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::classify::{
    class_report, is_absolute, is_absolute_semiradial_p, is_almost_strong_radial_p, is_linear,
    is_linear_semiradial_p, is_radial_p, is_semiradial_p, is_strong, is_strong_radial_p,
    is_sublinear, is_sublinear_radial_p, RootKind,
};
use crate::ditrail::{reach_profile, search, ReachProfile, TrailQuery};
use crate::ears::{find_diear, EarConstraints, EarKindFilter};
use crate::enumerate::{random_graph, tiny_family};
use crate::error::{Error, Result};
use crate::grammar::{in_grammar, Grammar};
use crate::graph::{gluing_sum, BidirectedGraph, GluingSpec, RootedGraph, Sign};
use crate::grounds::{ground, GroundKind};
use crate::transform::{decompose_with, generate, recompose, GenClass};

/// Instances above this edge count are skipped; the exhaustive
/// searches inside some assertions are exponential in edges.
const MAX_CHECK_EDGES: usize = 18;
const MAX_GRAMMAR_EDGES: usize = 10;

#[derive(Debug, Clone)]
pub struct Bounds {
    pub tiny_vertices: usize,
    pub tiny_edges: usize,
    pub random_instances: usize,
    pub random_size: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            tiny_vertices: 3,
            tiny_edges: 3,
            random_instances: 100,
            random_size: 7,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    /// The instance in BDG text form.
    pub graph: String,
    /// What failed, including witnesses where available.
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub id: String,
    pub statement: String,
    pub instances: usize,
    pub satisfied: usize,
    pub skipped: usize,
    pub failures: usize,
    pub random_instances: usize,
    pub random_satisfied: usize,
    /// Satisfaction rate over the class-targeted random portion — the
    /// vacuity guard for the targeted generators. The exhaustive tiny
    /// portion mostly misses narrow hypotheses by design.
    pub hypothesis_rate: f64,
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub seed: u64,
    pub checks: Vec<CheckReport>,
    pub failed_checks: usize,
}

enum Outcome {
    /// Hypotheses unsatisfied; nothing asserted.
    Skip,
    /// Hypotheses satisfied, conclusion held.
    Pass,
    /// Conclusion violated; the string describes the violation.
    Fail(String),
}

type CheckFn = fn(&RootedGraph, &mut ChaCha8Rng) -> Result<Outcome>;

struct Check {
    id: &'static str,
    statement: &'static str,
    targets: &'static [GenClass],
    run: CheckFn,
}

// --- small helpers -------------------------------------------------------

fn names(g: &BidirectedGraph, set: &BTreeSet<usize>) -> BTreeSet<String> {
    set.iter().map(|&v| g.vertex_name(v).to_string()).collect()
}

fn reach_names(g: &BidirectedGraph, p: &ReachProfile, a: Sign, b: Sign) -> BTreeSet<String> {
    names(g, p.reach(a, b))
}

fn reach_any_names(g: &BidirectedGraph, p: &ReachProfile, a: Sign) -> BTreeSet<String> {
    names(g, &p.reach_any(a))
}

/// Is there a nonempty ditrail from `start` (first sign `first`) to a
/// vertex of `targets` (last sign `last`, or either), avoiding the
/// forbidden edges, with internal vertices outside `blocked`?
fn trail_to(
    g: &BidirectedGraph,
    start: usize,
    first: Sign,
    last: Option<Sign>,
    targets: &BTreeSet<usize>,
    forbid: &BTreeSet<usize>,
    blocked: &BTreeSet<usize>,
) -> Result<bool> {
    if targets.is_empty() {
        return Ok(false);
    }
    let lasts: &[Sign] = match last {
        Some(b) => &[b][..],
        None => &Sign::BOTH[..],
    };
    for &b in lasts.iter() {
        let mut q = TrailQuery::new(start, first, b, start);
        q.targets = targets.clone();
        let q = q
            .forbid_edges(forbid.iter().copied())
            .block_internal(g.vertex_count(), blocked);
        if search(g, &q)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn rand_sign(rng: &mut ChaCha8Rng) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn pick<'t, T>(rng: &mut ChaCha8Rng, items: &'t [T]) -> &'t T {
    &items[rng.gen_range(0..items.len())]
}

/// A random subset, possibly empty.
fn rand_subset<T: Clone + Ord>(rng: &mut ChaCha8Rng, items: &BTreeSet<T>) -> BTreeSet<T> {
    items
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .cloned()
        .collect()
}

/// The same graph with every sign flipped; class memberships are
/// preserved with the orientation flipped.
fn negated(g: &BidirectedGraph) -> Result<BidirectedGraph> {
    let mut out = BidirectedGraph::new();
    for n in g.vertex_names() {
        out.add_vertex(n)?;
    }
    for e in g.edges() {
        out.add_edge(
            &e.id,
            g.vertex_name(e.ends[0].vertex),
            e.ends[0].sign.flip(),
            g.vertex_name(e.ends[1].vertex),
            e.ends[1].sign.flip(),
        )?;
    }
    Ok(out)
}

/// A disjoint partner graph for gluing constructions: a generated
/// class member with every name suffixed, matching `orientation`.
fn partner(
    rng: &mut ChaCha8Rng,
    class: GenClass,
    size: usize,
    orientation: Sign,
) -> Result<RootedGraph> {
    let seed = rng.gen::<u64>();
    let raw = generate(class, size, seed)?;
    let mut g = raw.graph.suffixed("_g");
    if raw.orientation != orientation {
        g = negated(&g)?;
    }
    RootedGraph::new(g, &format!("{}_g", raw.root_name()), orientation)
}

/// A random gluing spec sending every root-incident edge of `gp` to
/// uniformly random targets from `t`.
fn rand_spec(
    rng: &mut ChaCha8Rng,
    gp: &RootedGraph,
    t: &BTreeSet<String>,
) -> Option<GluingSpec> {
    let tv: Vec<&String> = t.iter().collect();
    let mut spec = GluingSpec::default();
    for &e in gp.graph.incident(gp.root) {
        if tv.is_empty() {
            return None;
        }
        let edge = gp.graph.edge(e);
        let t1 = pick(rng, &tv).to_string();
        let t2 = if edge.is_loop() {
            Some(pick(rng, &tv).to_string())
        } else {
            None
        };
        spec.targets.insert(edge.id.clone(), (t1, t2));
    }
    Some(spec)
}

/// Vertex-index set of a ground's subgraph in the host graph.
fn host_vset(g: &BidirectedGraph, sub: &BidirectedGraph) -> BTreeSet<usize> {
    sub.vertex_names()
        .iter()
        .map(|n| g.vertex(n).expect("ground vertex in host"))
        .collect()
}

fn host_eset(g: &BidirectedGraph, sub: &BidirectedGraph) -> BTreeSet<usize> {
    sub.edges()
        .iter()
        .map(|e| g.edge_by_id(&e.id).expect("ground edge in host"))
        .collect()
}

// --- the checks ----------------------------------------------------------

fn check_nobypass(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    let set1: BTreeSet<usize> = p.reach(a, na).difference(p.reach(na, na)).copied().collect();
    let set2: BTreeSet<usize> = p
        .reach_any(a)
        .difference(&p.reach_any(na))
        .copied()
        .collect();
    let mut satisfied = false;
    for set in [&set1, &set2] {
        let vs: Vec<usize> = set.iter().copied().collect();
        for (i, &x) in vs.iter().enumerate() {
            for &y in &vs[i + 1..] {
                satisfied = true;
                if trail_to(g, x, na, Some(na), &[y].into(), &BTreeSet::new(), &BTreeSet::new())? {
                    return Ok(Outcome::Fail(format!(
                        "found a forbidden ditrail between {} and {}",
                        g.vertex_name(x),
                        g.vertex_name(y)
                    )));
                }
            }
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

/// Shared body of the edge-adding checks: treat the instance as the
/// radial/semiradial part H, attach a disjoint random blob, add `k`
/// qualifying edges into it, and assert the reach sets are unchanged.
fn edge_add_body(
    rg: &RootedGraph,
    rng: &mut ChaCha8Rng,
    k: usize,
    semiradial: bool,
) -> Result<Outcome> {
    let h = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(h, rg.root)?;
    let class_ok = if semiradial {
        is_semiradial_p(h, &p, a)
    } else {
        is_radial_p(h, &p, a)
    };
    if !class_ok {
        return Ok(Outcome::Skip);
    }
    let good: Vec<usize> = if semiradial {
        let bad = p.reach_any(na);
        h.vertex_indices().filter(|v| !bad.contains(v)).collect()
    } else {
        h.vertex_indices()
            .filter(|v| !p.reach(na, na).contains(v))
            .collect()
    };
    if good.is_empty() {
        return Ok(Outcome::Skip);
    }
    let blob = random_graph(rng, 3, 3).suffixed("_o");
    let mut g = h.union(&blob)?;
    let blob_names: Vec<String> = blob.vertex_names().to_vec();
    for i in 0..k {
        let u = h.vertex_name(*pick(rng, &good)).to_string();
        let v = pick(rng, &blob_names).clone();
        g.add_edge(&format!("zadd{i}"), &u, a, &v, rand_sign(rng))?;
    }
    let ids: Vec<String> = (0..k).map(|i| format!("zadd{i}")).collect();
    let id_refs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
    let base = g.without_edges(&id_refs)?;
    let root = g.require_vertex(rg.root_name())?;
    let before = reach_profile(&base, root)?;
    let after = reach_profile(&g, root)?;
    for b in Sign::BOTH {
        let (lhs, rhs) = if semiradial {
            (
                reach_any_names(&base, &before, b),
                reach_any_names(&g, &after, b),
            )
        } else {
            (
                reach_names(&base, &before, b, na),
                reach_names(&g, &after, b, na),
            )
        };
        if lhs != rhs {
            return Ok(Outcome::Fail(format!(
                "reach set for first sign {b} changed: {:?} vs {:?}",
                lhs, rhs
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_oneadd(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    edge_add_body(rg, rng, 1, false)
}

fn check_edgeaddr(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = rng.gen_range(1..=3);
    edge_add_body(rg, rng, k, false)
}

fn check_edgeaddsr(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let k = rng.gen_range(1..=3);
    edge_add_body(rg, rng, k, true)
}

/// Shared body of the edge-deleting checks: build the augmented graph
/// as in the adding checks, then delete a random subset of the cut
/// edges (whose H-side sign is the orientation) and assert the reach
/// sets are unchanged.
fn edge_delete_body(rg: &RootedGraph, rng: &mut ChaCha8Rng, semiradial: bool) -> Result<Outcome> {
    let h = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(h, rg.root)?;
    let class_ok = if semiradial {
        is_semiradial_p(h, &p, a)
    } else {
        is_radial_p(h, &p, a)
    };
    if !class_ok {
        return Ok(Outcome::Skip);
    }
    let good: Vec<usize> = if semiradial {
        let bad = p.reach_any(na);
        h.vertex_indices().filter(|v| !bad.contains(v)).collect()
    } else {
        h.vertex_indices()
            .filter(|v| !p.reach(na, na).contains(v))
            .collect()
    };
    if good.is_empty() {
        return Ok(Outcome::Skip);
    }
    let blob = random_graph(rng, 3, 3).suffixed("_o");
    let mut g = h.union(&blob)?;
    let blob_names: Vec<String> = blob.vertex_names().to_vec();
    let k = rng.gen_range(1..=3);
    let mut added: Vec<String> = Vec::new();
    for i in 0..k {
        let u = h.vertex_name(*pick(rng, &good)).to_string();
        let v = pick(rng, &blob_names).clone();
        let id = format!("zadd{i}");
        g.add_edge(&id, &u, a, &v, rand_sign(rng))?;
        added.push(id);
    }
    // independently re-check the deletion lemma's hypothesis on the
    // augmented graph
    let root = g.require_vertex(rg.root_name())?;
    let gp = reach_profile(&g, root)?;
    let hvset: BTreeSet<usize> = h
        .vertex_names()
        .iter()
        .map(|n| g.require_vertex(n))
        .collect::<Result<_>>()?;
    let outside: BTreeSet<usize> = g.vertex_indices().filter(|v| !hvset.contains(v)).collect();
    let nei = g.set_neighbors(&outside);
    let bad: BTreeSet<usize> = if semiradial {
        gp.reach_any(na)
    } else {
        gp.reach(na, na).clone()
    };
    if nei.iter().any(|v| bad.contains(v)) {
        return Ok(Outcome::Skip);
    }
    let f: Vec<&str> = added
        .iter()
        .filter(|_| rng.gen_bool(0.7))
        .map(|s| s.as_str())
        .collect();
    let trimmed = g.without_edges(&f)?;
    let tp = reach_profile(&trimmed, trimmed.require_vertex(rg.root_name())?)?;
    for b in Sign::BOTH {
        let (lhs, rhs) = if semiradial {
            (reach_any_names(&g, &gp, b), reach_any_names(&trimmed, &tp, b))
        } else {
            (reach_names(&g, &gp, b, na), reach_names(&trimmed, &tp, b, na))
        };
        if lhs != rhs {
            return Ok(Outcome::Fail(format!(
                "deleting {} cut edges changed the reach set for first sign {b}",
                f.len()
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_r2delete(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    edge_delete_body(rg, rng, false)
}

fn check_sr2delete(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    edge_delete_body(rg, rng, true)
}

fn check_neigh2ear(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let p = reach_profile(g, rg.root)?;
    if g.vertex_count() < 2 {
        return Ok(Outcome::Skip);
    }
    let mut satisfied = false;
    for _ in 0..4 {
        let mut s: BTreeSet<usize> = [rg.root].into();
        for v in g.vertex_indices() {
            if v != rg.root && rng.gen_bool(0.5) {
                s.insert(v);
            }
        }
        if s.len() == g.vertex_count() {
            continue;
        }
        for e in 0..g.edge_count() {
            let edge = g.edge(e);
            if edge.is_loop() {
                continue;
            }
            let (e0, e1) = (edge.ends[0], edge.ends[1]);
            for (xe, ye) in [(e0, e1), (e1, e0)] {
                let (x, y) = (xe.vertex, ye.vertex);
                if s.contains(&x) || !s.contains(&y) {
                    continue;
                }
                let beta = xe.sign;
                if !p.reach_any(beta.flip()).contains(&x) {
                    continue;
                }
                satisfied = true;
                // simple diear through the edge, or a scoop gripping it
                let simple = trail_to(g, x, beta.flip(), None, &s, &[e].into(), &s)?;
                let scoop = find_diear(
                    g,
                    &s,
                    &BTreeSet::new(),
                    &EarConstraints {
                        grip: Some(e),
                        ..Default::default()
                    },
                )?
                .is_some();
                if !simple && !scoop {
                    return Ok(Outcome::Fail(format!(
                        "no diear through edge {} at {}",
                        edge.id,
                        g.vertex_name(x)
                    )));
                }
            }
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

/// Candidate subgraph of the instance: a random edge subset plus the
/// root and all endpoints.
fn rand_subgraph(
    rg: &RootedGraph,
    rng: &mut ChaCha8Rng,
) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    let g = &rg.graph;
    let eset: BTreeSet<usize> = (0..g.edge_count()).filter(|_| rng.gen_bool(0.4)).collect();
    let mut vset: BTreeSet<usize> = [rg.root].into();
    for &e in &eset {
        for end in g.edge(e).ends {
            vset.insert(end.vertex);
        }
    }
    Ok((vset, eset))
}

fn check_union(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let gp = reach_profile(g, rg.root)?;
    // classify a handful of random subgraphs
    struct Cand {
        vset: BTreeSet<usize>,
        eset: BTreeSet<usize>,
        semi: bool,
        radial: bool,
        absolute: bool,
        strongr: bool,
        almost: bool,
        lin_in_g: bool,
    }
    let mut cands: Vec<Cand> = Vec::new();
    for _ in 0..8 {
        let (vset, eset) = rand_subgraph(rg, rng)?;
        let sub = g.subgraph(&vset, &eset)?;
        let croot = sub.require_vertex(rg.root_name())?;
        let cp = reach_profile(&sub, croot)?;
        let semi = is_semiradial_p(&sub, &cp, a);
        if !semi {
            continue;
        }
        let radial = is_radial_p(&sub, &cp, a);
        let lin_in_g = is_linear_semiradial_p(&sub, &cp, a)
            && vset
                .iter()
                .all(|&v| v == rg.root || is_linear(&gp, a, v));
        cands.push(Cand {
            vset,
            eset,
            semi,
            radial,
            absolute: is_absolute_semiradial_p(&sub, &cp),
            strongr: is_strong_radial_p(&sub, &cp, a),
            almost: is_almost_strong_radial_p(&sub, &cp, a),
            lin_in_g,
        });
    }
    if cands.len() < 2 {
        return Ok(Outcome::Skip);
    }
    let mut satisfied = false;
    for _ in 0..6 {
        let i = rng.gen_range(0..cands.len());
        let j = rng.gen_range(0..cands.len());
        let (c1, c2) = (&cands[i], &cands[j]);
        if !(c1.semi && c2.semi) {
            continue;
        }
        satisfied = true;
        let vset: BTreeSet<usize> = c1.vset.union(&c2.vset).copied().collect();
        let eset: BTreeSet<usize> = c1.eset.union(&c2.eset).copied().collect();
        let u = g.subgraph(&vset, &eset)?;
        let up = reach_profile(&u, u.require_vertex(rg.root_name())?)?;
        let claims: [(&str, bool, bool); 5] = [
            ("semiradial union", true, is_semiradial_p(&u, &up, a)),
            ("radial union", c1.radial && c2.radial, is_radial_p(&u, &up, a)),
            (
                "absolute union",
                c1.absolute && c2.absolute,
                is_absolute_semiradial_p(&u, &up),
            ),
            (
                "strong union",
                c1.strongr && c2.strongr,
                is_strong_radial_p(&u, &up, a),
            ),
            // strong-or-almost-strong is one union-closed family: the
            // union of two almost strongs may close the root and come
            // out strong
            (
                "strong-or-almost-strong union",
                (c1.strongr || c1.almost) && (c2.strongr || c2.almost),
                is_strong_radial_p(&u, &up, a) || is_almost_strong_radial_p(&u, &up, a),
            ),
        ];
        for (what, applies, holds) in claims {
            if applies && !holds {
                return Ok(Outcome::Fail(format!("{what} left its class")));
            }
        }
        if c1.lin_in_g && c2.lin_in_g && !is_linear_semiradial_p(&u, &up, a) {
            return Ok(Outcome::Fail("linear union left its class".into()));
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

fn check_rnei2alt(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    if !is_semiradial_p(g, &p, a) {
        return Ok(Outcome::Skip);
    }
    let nei = g.neighbors(rg.root);
    if nei.is_empty() {
        return Ok(Outcome::Skip);
    }
    let abg = ground(rg, GroundKind::Absolute)?;
    let lg = ground(rg, GroundKind::Linear)?;
    for v in nei {
        let name = g.vertex_name(v);
        let in_lg = lg.subgraph.vertex(name).is_some();
        let in_abg = abg.subgraph.vertex(name).is_some();
        if is_linear(&p, a, v) {
            if !in_lg {
                return Ok(Outcome::Fail(format!(
                    "linear root neighbor {name} missing from the linear ground"
                )));
            }
        } else if !in_abg {
            return Ok(Outcome::Fail(format!(
                "non-linear root neighbor {name} missing from the absolute ground"
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_abgnei2lin(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    if !is_semiradial_p(g, &p, a) {
        return Ok(Outcome::Skip);
    }
    let abg = ground(rg, GroundKind::Absolute)?;
    let hv = host_vset(g, &abg.subgraph);
    let nei = g.set_neighbors(&hv);
    if nei.is_empty() {
        return Ok(Outcome::Skip);
    }
    for v in nei {
        if !is_linear(&p, a, v) {
            return Ok(Outcome::Fail(format!(
                "absolute-ground neighbor {} is not linear",
                g.vertex_name(v)
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_lg2neigh(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    if !is_semiradial_p(g, &p, a) || !crate::classify::is_sharp_p(g, &p, a) {
        return Ok(Outcome::Skip);
    }
    let lg = ground(rg, GroundKind::Linear)?;
    let hv = host_vset(g, &lg.subgraph);
    if hv.len() == g.vertex_count() {
        // the claims are conditional on a proper linear ground
        return Ok(Outcome::Pass);
    }
    let he = host_eset(g, &lg.subgraph);
    let c = EarConstraints {
        sign_pair: Some((na, na)),
        kind: Some(EarKindFilter::SimpleOnly),
        ..Default::default()
    };
    if let Some(ear) = find_diear(g, &hv, &he, &c)? {
        return Ok(Outcome::Fail(format!(
            "forbidden simple diear with edges {:?}",
            ear.edges()
        )));
    }
    let (cut, _) = g.signed_cut(&hv, na);
    if cut.is_empty() {
        return Ok(Outcome::Fail("expected a nonempty signed cut".into()));
    }
    for e in cut {
        let edge = g.edge(e);
        let u = if hv.contains(&edge.ends[0].vertex) {
            edge.ends[1].vertex
        } else {
            edge.ends[0].vertex
        };
        if !is_absolute(&p, u) {
            return Ok(Outcome::Fail(format!(
                "cut endpoint {} is not absolute",
                g.vertex_name(u)
            )));
        }
        let scoop = find_diear(
            g,
            &hv,
            &he,
            &EarConstraints {
                grip: Some(e),
                ..Default::default()
            },
        )?;
        if scoop.is_none() {
            return Ok(Outcome::Fail(format!(
                "no scoop diear gripping edge {}",
                edge.id
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_astg_neigh(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a) {
        return Ok(Outcome::Skip);
    }
    let kind = match crate::classify::root_kind_p(g, &p, a) {
        RootKind::Strong => GroundKind::Strong,
        RootKind::Sublinear => GroundKind::AlmostStrong,
        RootKind::NotRadial => return Ok(Outcome::Skip),
    };
    let h = ground(rg, kind)?;
    let hv = host_vset(g, &h.subgraph);
    let probe: BTreeSet<usize> = match kind {
        GroundKind::Strong => hv.clone(),
        _ => hv.iter().copied().filter(|&v| v != rg.root).collect(),
    };
    let nei = g.set_neighbors(&probe);
    for v in nei {
        if !is_sublinear(&p, a, v) {
            return Ok(Outcome::Fail(format!(
                "ground neighbor {} is not sublinear",
                g.vertex_name(v)
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_rrneigh2g(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a)
        || crate::classify::root_kind_p(g, &p, a) != RootKind::Sublinear
    {
        return Ok(Outcome::Skip);
    }
    let (_, nei) = g.signed_cut(&[rg.root].into(), na);
    let relevant: Vec<usize> = nei
        .into_iter()
        .filter(|&v| is_strong(&p, a, v) || is_sublinear(&p, a, v))
        .collect();
    if relevant.is_empty() {
        return Ok(Outcome::Skip);
    }
    let asg = ground(rg, GroundKind::AlmostStrong)?;
    let ext = ground(rg, GroundKind::Extended)?;
    for v in relevant {
        let name = g.vertex_name(v);
        if is_strong(&p, a, v) {
            if asg.subgraph.vertex(name).is_none() {
                return Ok(Outcome::Fail(format!(
                    "strong root neighbor {name} outside the almost strong ground"
                )));
            }
        } else if !ext.shell1.contains(name) {
            return Ok(Outcome::Fail(format!(
                "sublinear root neighbor {name} outside the first shell"
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_shellneigh2strong(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a)
        || crate::classify::root_kind_p(g, &p, a) != RootKind::Sublinear
    {
        return Ok(Outcome::Skip);
    }
    let ext = ground(rg, GroundKind::Extended)?;
    let iv = host_vset(g, &ext.subgraph);
    if iv.len() == g.vertex_count() {
        // with no outside vertices both claims are trivial
        return Ok(Outcome::Pass);
    }
    let ie = host_eset(g, &ext.subgraph);
    let c = EarConstraints {
        sign_pair: Some((na, na)),
        kind: Some(EarKindFilter::SimpleOnly),
        ..Default::default()
    };
    if find_diear(g, &iv, &ie, &c)?.is_some() {
        return Ok(Outcome::Fail(
            "forbidden simple diear relative to the extended ground".into(),
        ));
    }
    let (_, nei) = g.signed_cut(&iv, na);
    if nei.is_empty() {
        return Ok(Outcome::Fail("expected a nonempty signed neighborhood".into()));
    }
    for v in nei {
        if !is_strong(&p, a, v) {
            return Ok(Outcome::Fail(format!(
                "extended-ground neighbor {} is not strong",
                g.vertex_name(v)
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_obs_shell(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a)
        || crate::classify::root_kind_p(g, &p, a) != RootKind::Sublinear
    {
        return Ok(Outcome::Skip);
    }
    let asg = ground(rg, GroundKind::AlmostStrong)?;
    let ext = ground(rg, GroundKind::Extended)?;
    let mut satisfied = false;
    if ext.shell1.is_empty() && ext.shell2.is_empty() {
        satisfied = true;
        if !ext.subgraph.same_labelled(g) || !asg.subgraph.same_labelled(g) {
            return Ok(Outcome::Fail(
                "empty shells, yet the grounds are proper subgraphs".into(),
            ));
        }
    }
    if asg.subgraph.vertex_count() == 1 {
        satisfied = true;
        if !ext.shell2.is_empty() {
            return Ok(Outcome::Fail(format!(
                "trivial almost strong ground with nonempty second shell {:?}",
                ext.shell2
            )));
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

fn check_shell2path(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a)
        || crate::classify::root_kind_p(g, &p, a) != RootKind::Sublinear
    {
        return Ok(Outcome::Skip);
    }
    let asg = ground(rg, GroundKind::AlmostStrong)?;
    let ext = ground(rg, GroundKind::Extended)?;
    if ext.shell1.is_empty() && ext.shell2.is_empty() {
        return Ok(Outcome::Skip);
    }
    let s1: BTreeSet<usize> = ext.shell1.iter().map(|n| g.require_vertex(n)).collect::<Result<_>>()?;
    let s2: BTreeSet<usize> = ext.shell2.iter().map(|n| g.require_vertex(n)).collect::<Result<_>>()?;
    let hv = host_vset(g, &asg.subgraph);
    let hv_nr: BTreeSet<usize> = hv.iter().copied().filter(|&v| v != rg.root).collect();
    // first shell: a witness trail staying inside the first shell
    let mut block_not_s1: BTreeSet<usize> = g.vertex_indices().collect();
    for &v in &s1 {
        block_not_s1.remove(&v);
    }
    block_not_s1.remove(&rg.root);
    for &x in &s1 {
        if !trail_to(g, x, a, Some(na), &[rg.root].into(), &BTreeSet::new(), &block_not_s1)? {
            return Ok(Outcome::Fail(format!(
                "first-shell vertex {} has no witness trail within the first shell",
                g.vertex_name(x)
            )));
        }
    }
    // second shell: reaches the ground through the second shell, and
    // never with the opposite start sign
    let mut block_not_s2: BTreeSet<usize> = g.vertex_indices().collect();
    for &v in &s2 {
        block_not_s2.remove(&v);
    }
    for &x in &s2 {
        if !trail_to(g, x, a, None, &hv_nr, &BTreeSet::new(), &block_not_s2)? {
            return Ok(Outcome::Fail(format!(
                "second-shell vertex {} cannot reach the ground through the second shell",
                g.vertex_name(x)
            )));
        }
        for &y in &hv_nr {
            if trail_to(g, x, na, None, &[y].into(), &BTreeSet::new(), &block_not_s2)? {
                return Ok(Outcome::Fail(format!(
                    "forbidden trail from second-shell vertex {} to {}",
                    g.vertex_name(x),
                    g.vertex_name(y)
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn check_shell_structure(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a)
        || crate::classify::root_kind_p(g, &p, a) != RootKind::Sublinear
    {
        return Ok(Outcome::Skip);
    }
    let asg = ground(rg, GroundKind::AlmostStrong)?;
    let ext = ground(rg, GroundKind::Extended)?;
    if ext.shell1.is_empty() && ext.shell2.is_empty() {
        return Ok(Outcome::Skip);
    }
    let s1: BTreeSet<usize> = ext.shell1.iter().map(|n| g.require_vertex(n)).collect::<Result<_>>()?;
    let s2: BTreeSet<usize> = ext.shell2.iter().map(|n| g.require_vertex(n)).collect::<Result<_>>()?;
    let hv = host_vset(g, &asg.subgraph);
    // the first shell with the root induces a sublinear radial
    let mut v1 = s1.clone();
    v1.insert(rg.root);
    let part1 = g.induced(&v1);
    let p1 = reach_profile(&part1, part1.require_vertex(rg.root_name())?)?;
    if !is_sublinear_radial_p(&part1, &p1, a) {
        return Ok(Outcome::Fail(
            "first shell plus root is not a sublinear radial".into(),
        ));
    }
    // the second shell over the contracted ground, minus the root's
    // edges into it, is a linear semiradial
    let mut v2 = s2.clone();
    v2.extend(hv.iter().copied());
    let drop: BTreeSet<usize> = (0..g.edge_count())
        .filter(|&e| {
            let edge = g.edge(e);
            !edge.is_loop()
                && edge.touches(rg.root)
                && s2.contains(&edge.other_end(rg.root).vertex)
        })
        .collect();
    let k = g.without_edge_indices(&drop).induced(&v2);
    let kx: BTreeSet<usize> = hv
        .iter()
        .map(|&v| k.require_vertex(g.vertex_name(v)))
        .collect::<Result<_>>()?;
    let (quot, s) = k.contract(&kx)?;
    let qp = reach_profile(&quot, s)?;
    if !is_linear_semiradial_p(&quot, &qp, a) {
        return Ok(Outcome::Fail(
            "second shell over the contracted ground is not a linear semiradial".into(),
        ));
    }
    // sign conditions on shell-leaving edges
    for e in 0..g.edge_count() {
        let edge = g.edge(e);
        for (ue, ve) in [(edge.ends[0], edge.ends[1]), (edge.ends[1], edge.ends[0])] {
            if s1.contains(&ue.vertex)
                && ve.vertex != rg.root
                && (hv.contains(&ve.vertex) || s2.contains(&ve.vertex))
                && ue.sign != a
            {
                return Ok(Outcome::Fail(format!(
                    "edge {} leaves the first shell with the wrong sign",
                    edge.id
                )));
            }
            if ue.vertex == rg.root && s2.contains(&ve.vertex) && ue.sign != a {
                return Ok(Outcome::Fail(format!(
                    "edge {} joins the root to the second shell with the wrong sign",
                    edge.id
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn check_asg2neigh(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    if !crate::classify::is_round_p(g, &p, a) {
        return Ok(Outcome::Skip);
    }
    let (_, nei) = g.signed_cut(&[rg.root].into(), na);
    if nei.is_empty() {
        return Ok(Outcome::Skip);
    }
    let asg = ground(rg, GroundKind::AlmostStrong)?;
    for v in nei {
        if asg.subgraph.vertex(g.vertex_name(v)).is_none() {
            return Ok(Outcome::Fail(format!(
                "signed root neighbor {} outside the almost strong ground",
                g.vertex_name(v)
            )));
        }
    }
    Ok(Outcome::Pass)
}

/// Shared assertion: for every outside vertex and start sign, the
/// existence of a trail to the root is equivalent to the existence of
/// a trail into the subgraph avoiding its edges.
fn quotient_path_equiv(
    g: &BidirectedGraph,
    gp: &ReachProfile,
    root: usize,
    a: Sign,
    hvset: &BTreeSet<usize>,
    hedges: &BTreeSet<usize>,
    lhs_any: bool,
    rhs_last: Option<Sign>,
    rhs_targets: &BTreeSet<usize>,
) -> Result<Option<String>> {
    let na = a.flip();
    let _ = root;
    for x in g.vertex_indices() {
        if hvset.contains(&x) {
            continue;
        }
        for b in Sign::BOTH {
            let lhs = if lhs_any {
                gp.reach_any(b).contains(&x)
            } else {
                gp.reach(b, na).contains(&x)
            };
            let rhs = trail_to(g, x, b, rhs_last, rhs_targets, hedges, &BTreeSet::new())?;
            if lhs != rhs {
                return Ok(Some(format!(
                    "path equivalence fails at {} with start sign {b} ({lhs} vs {rhs})",
                    g.vertex_name(x)
                )));
            }
        }
    }
    Ok(None)
}

fn check_const4(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let gp = reach_profile(g, rg.root)?;
    let mut candidates: Vec<BTreeSet<usize>> = Vec::new();
    // grounds whose preconditions hold make good candidate subgraphs
    for kind in GroundKind::ALL {
        if let Ok(gr) = ground(rg, kind) {
            candidates.push(host_vset(g, &gr.subgraph));
        }
    }
    for _ in 0..3 {
        let (vset, _) = rand_subgraph(rg, rng)?;
        candidates.push(vset);
    }
    let mut satisfied = false;
    for hv in candidates {
        if hv.len() == g.vertex_count() {
            continue;
        }
        let h = g.induced(&hv);
        let hroot = h.require_vertex(rg.root_name())?;
        let hp = reach_profile(&h, hroot)?;
        let h_named = |set: &BTreeSet<usize>| -> BTreeSet<usize> {
            set.iter()
                .map(|&v| g.require_vertex(h.vertex_name(v)).unwrap())
                .collect()
        };
        let h_r = h_named(hp.reach(a, na));
        let h_rr = h_named(hp.reach(na, na));
        let h_any_a = h_named(&hp.reach_any(a));
        let h_any_na = h_named(&hp.reach_any(na));
        let outside: BTreeSet<usize> = g.vertex_indices().filter(|v| !hv.contains(v)).collect();
        let nei = g.set_neighbors(&outside);
        let hedges: BTreeSet<usize> = (0..g.edge_count())
            .filter(|&e| {
                let edge = g.edge(e);
                hv.contains(&edge.ends[0].vertex) && hv.contains(&edge.ends[1].vertex)
            })
            .collect();
        // (assumption, lhs uses reach-any, rhs end sign)
        let items: [(bool, bool, Option<Sign>); 4] = [
            (
                nei.iter()
                    .all(|v| h_r.contains(v) && !gp.reach(na, na).contains(v)),
                false,
                Some(na),
            ),
            (
                nei.iter()
                    .all(|v| h_any_a.contains(v) && !gp.reach_any(na).contains(v)),
                true,
                Some(na),
            ),
            (
                nei.iter().all(|v| h_r.contains(v) && h_rr.contains(v)),
                false,
                None,
            ),
            (
                nei.iter()
                    .all(|v| h_any_a.contains(v) && h_any_na.contains(v)),
                true,
                None,
            ),
        ];
        for (assumption, lhs_any, rhs_last) in items {
            if !assumption {
                continue;
            }
            satisfied = true;
            if let Some(msg) = quotient_path_equiv(
                g, &gp, rg.root, a, &hv, &hedges, lhs_any, rhs_last, &hv,
            )? {
                return Ok(Outcome::Fail(msg));
            }
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

fn check_quotient_paths(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let gp = reach_profile(g, rg.root)?;
    let rep = crate::classify::class_report_with(rg, &gp)?;
    let mut satisfied = false;
    let mut run = |kind: GroundKind,
                   lhs_any: bool,
                   rhs_last: Option<Sign>,
                   drop_root_cut: bool,
                   target_no_root: bool|
     -> Result<Option<String>> {
        let gr = ground(rg, kind)?;
        let hv = host_vset(g, &gr.subgraph);
        if hv.len() == g.vertex_count() {
            return Ok(None);
        }
        satisfied = true;
        let he = host_eset(g, &gr.subgraph);
        let mut targets = hv.clone();
        if target_no_root {
            targets.remove(&rg.root);
        }
        if drop_root_cut {
            // delete the root's edges to the outside first, then
            // compare against the trimmed graph's reach sets
            let cut: BTreeSet<usize> = (0..g.edge_count())
                .filter(|&e| {
                    let edge = g.edge(e);
                    !edge.is_loop()
                        && edge.touches(rg.root)
                        && !hv.contains(&edge.other_end(rg.root).vertex)
                })
                .collect();
            let trimmed = g.without_edge_indices(&cut);
            let tp = reach_profile(&trimmed, rg.root)?;
            for b in Sign::BOTH {
                if tp.reach(b, na) != gp.reach(b, na) {
                    return Ok(Some(format!(
                        "deleting the root cut changed the reach set for start sign {b}"
                    )));
                }
            }
            let mut forbid = he.clone();
            forbid.extend(cut.iter().copied());
            return quotient_path_equiv(
                g, &gp, rg.root, a, &hv, &forbid, lhs_any, rhs_last, &targets,
            );
        }
        quotient_path_equiv(g, &gp, rg.root, a, &hv, &he, lhs_any, rhs_last, &targets)
    };
    let mut cases: Vec<(GroundKind, bool, Option<Sign>, bool, bool)> = Vec::new();
    if rep.is_semiradial {
        cases.push((GroundKind::Absolute, true, None, false, false));
    }
    if rep.is_radial && rep.root_kind == RootKind::Strong {
        cases.push((GroundKind::Strong, false, None, false, false));
    }
    if rep.is_sharp {
        cases.push((GroundKind::Linear, true, Some(na), false, false));
    }
    if rep.is_round {
        cases.push((GroundKind::AlmostStrong, false, None, true, true));
    }
    if rep.is_radial && rep.root_kind == RootKind::Sublinear {
        cases.push((GroundKind::Extended, false, Some(na), true, true));
    }
    for (kind, lhs_any, rhs_last, drop, no_root) in cases {
        if let Some(msg) = run(kind, lhs_any, rhs_last, drop, no_root)? {
            return Ok(Outcome::Fail(format!("{}: {msg}", kind.name())));
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

fn check_glue_reach(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let h = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let hp = reach_profile(h, rg.root)?;
    let rep = crate::classify::class_report_with(rg, &hp)?;
    let mut satisfied = false;

    // (gluing part class, qualifying target set, compare radial reach)
    let mut subcases: Vec<(GenClass, BTreeSet<String>, bool, bool)> = Vec::new();
    if rep.is_radial {
        let strongs: BTreeSet<String> = h
            .vertex_indices()
            .filter(|&v| is_strong(&hp, a, v))
            .map(|v| h.vertex_name(v).to_string())
            .collect();
        if !strongs.is_empty() {
            subcases.push((GenClass::SharpSemiradial, strongs, false, false));
        }
        let sublin: BTreeSet<String> = h
            .vertex_indices()
            .filter(|&v| !hp.reach(na, na).contains(&v))
            .map(|v| h.vertex_name(v).to_string())
            .collect();
        if !sublin.is_empty() {
            subcases.push((GenClass::RadialSublinearRoot, sublin, false, true));
        }
    }
    if rep.is_semiradial {
        let absolutes: BTreeSet<String> = h
            .vertex_indices()
            .filter(|&v| is_absolute(&hp, v))
            .map(|v| h.vertex_name(v).to_string())
            .collect();
        if !absolutes.is_empty() {
            subcases.push((GenClass::SharpSemiradial, absolutes, true, false));
        }
        let nolin: BTreeSet<String> = h
            .vertex_indices()
            .filter(|&v| !hp.reach_any(na).contains(&v))
            .map(|v| h.vertex_name(v).to_string())
            .collect();
        if !nolin.is_empty() {
            subcases.push((GenClass::RadialSublinearRoot, nolin, true, true));
        }
    }
    for (class, pool, any_h, sublin_g) in subcases {
        let part_size = rng.gen_range(2..=4);
        let Ok(gp_part) = partner(rng, class, part_size, a) else {
            continue;
        };
        let s: BTreeSet<String> = {
            let mut s = rand_subset(rng, &pool);
            if s.is_empty() {
                s.insert(pool.iter().next().unwrap().clone());
            }
            s
        };
        let Some(spec) = rand_spec(rng, &gp_part, &s) else {
            continue;
        };
        let glued = gluing_sum(&gp_part.graph, gp_part.root_name(), h, &s, &spec)?;
        let groot = glued.require_vertex(rg.root_name())?;
        let qp = reach_profile(&glued, groot)?;
        let part_p = reach_profile(&gp_part.graph, gp_part.root)?;
        satisfied = true;
        let gnames: BTreeSet<String> = gp_part
            .graph
            .vertex_names()
            .iter()
            .filter(|n| n.as_str() != gp_part.root_name())
            .cloned()
            .collect();
        let hnames: BTreeSet<String> = h.vertex_names().iter().cloned().collect();
        for b in Sign::BOTH {
            // reach inside the glued graph, restricted to each side
            let big: BTreeSet<String> = if any_h {
                reach_any_names(&glued, &qp, b)
            } else {
                reach_names(&glued, &qp, b, na)
            };
            let lhs_g: BTreeSet<String> = if sublin_g {
                reach_names(&gp_part.graph, &part_p, b, na)
            } else {
                reach_any_names(&gp_part.graph, &part_p, b)
            }
            .into_iter()
            .filter(|n| n != gp_part.root_name())
            .collect();
            let rhs_g: BTreeSet<String> = big.intersection(&gnames).cloned().collect();
            if lhs_g != rhs_g {
                return Ok(Outcome::Fail(format!(
                    "glued reach over the gluing part changed for start sign {b}: {:?} vs {:?}",
                    lhs_g, rhs_g
                )));
            }
            let lhs_h: BTreeSet<String> = if any_h {
                reach_any_names(h, &hp, b)
            } else {
                reach_names(h, &hp, b, na)
            };
            let rhs_h: BTreeSet<String> = big.intersection(&hnames).cloned().collect();
            if lhs_h != rhs_h {
                return Ok(Outcome::Fail(format!(
                    "glued reach over the base part changed for start sign {b}: {:?} vs {:?}",
                    lhs_h, rhs_h
                )));
            }
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

fn check_redge(rg: &RootedGraph, rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let g = &rg.graph;
    let a = rg.orientation;
    let na = a.flip();
    let p = reach_profile(g, rg.root)?;
    if !is_radial_p(g, &p, a)
        || crate::classify::root_kind_p(g, &p, a) != RootKind::Sublinear
    {
        return Ok(Outcome::Skip);
    }
    // deletion direction: drop a random subset of the root's signed cut
    let (cut, _) = g.signed_cut(&[rg.root].into(), a);
    let f: BTreeSet<usize> = cut.into_iter().filter(|_| rng.gen_bool(0.6)).collect();
    let trimmed = g.without_edge_indices(&f);
    let tp = reach_profile(&trimmed, rg.root)?;
    for b in Sign::BOTH {
        if tp.reach(b, na) != p.reach(b, na) {
            return Ok(Outcome::Fail(format!(
                "deleting {} signed root edges changed the reach set for start sign {b}",
                f.len()
            )));
        }
    }
    // addition direction: new root edges carrying the orientation sign
    let others: Vec<String> = g
        .vertex_names()
        .iter()
        .filter(|n| n.as_str() != rg.root_name())
        .cloned()
        .collect();
    if !others.is_empty() {
        let mut g2 = g.clone();
        let root = rg.root_name().to_string();
        for i in 0..rng.gen_range(1..=2usize) {
            let v = pick(rng, &others).clone();
            g2.add_edge(&format!("zra{i}"), &root, a, &v, rand_sign(rng))?;
        }
        let p2 = reach_profile(&g2, rg.root)?;
        for b in Sign::BOTH {
            if p2.reach(b, na) != p.reach(b, na) {
                return Ok(Outcome::Fail(format!(
                    "adding signed root edges changed the reach set for start sign {b}"
                )));
            }
        }
    }
    Ok(Outcome::Pass)
}

fn check_decomp_thms(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    let rep = class_report(rg)?;
    let mut kinds: Vec<GroundKind> = Vec::new();
    if rep.is_semiradial {
        kinds.push(GroundKind::Absolute);
    }
    if rep.is_radial && rep.root_kind == RootKind::Strong {
        kinds.push(GroundKind::Strong);
    }
    if rep.is_sharp {
        kinds.push(GroundKind::Linear);
    }
    if rep.is_round {
        kinds.push(GroundKind::AlmostStrong);
    }
    if rep.is_radial && rep.root_kind == RootKind::Sublinear {
        kinds.push(GroundKind::Extended);
    }
    if kinds.is_empty() {
        return Ok(Outcome::Skip);
    }
    for kind in kinds {
        // decompose_with re-verifies the quotient's promised class
        let d = match decompose_with(rg, kind) {
            Ok(d) => d,
            Err(e) => {
                return Ok(Outcome::Fail(format!(
                    "{} step failed: {e}",
                    kind.name()
                )))
            }
        };
        let back = recompose(&d)?;
        if !back.graph.same_labelled(&rg.graph) {
            return Ok(Outcome::Fail(format!(
                "{} step did not recompose exactly",
                kind.name()
            )));
        }
    }
    Ok(Outcome::Pass)
}

fn check_grammar_sound(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if rg.graph.edge_count() > MAX_GRAMMAR_EDGES {
        return Ok(Outcome::Skip);
    }
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    let mut satisfied = false;
    let preds = [
        is_absolute_semiradial_p(g, &p),
        is_strong_radial_p(g, &p, a),
        is_almost_strong_radial_p(g, &p, a),
    ];
    for (grammar, pred) in [Grammar::Sqrset, Grammar::Acset, Grammar::Nacset]
        .into_iter()
        .zip(preds)
    {
        if in_grammar(rg, grammar)? {
            satisfied = true;
            if !pred {
                return Ok(Outcome::Fail(format!(
                    "{grammar:?} member fails its definitional predicate"
                )));
            }
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

fn check_grammar_complete(rg: &RootedGraph, _rng: &mut ChaCha8Rng) -> Result<Outcome> {
    if rg.graph.edge_count() > MAX_GRAMMAR_EDGES {
        return Ok(Outcome::Skip);
    }
    let g = &rg.graph;
    let a = rg.orientation;
    let p = reach_profile(g, rg.root)?;
    let mut satisfied = false;
    let preds = [
        is_absolute_semiradial_p(g, &p),
        is_strong_radial_p(g, &p, a),
        is_almost_strong_radial_p(g, &p, a),
    ];
    for (grammar, pred) in [Grammar::Sqrset, Grammar::Acset, Grammar::Nacset]
        .into_iter()
        .zip(preds)
    {
        if pred {
            satisfied = true;
            if !in_grammar(rg, grammar)? {
                return Ok(Outcome::Fail(format!(
                    "definitional member is unreachable by {grammar:?}"
                )));
            }
        }
    }
    Ok(if satisfied { Outcome::Pass } else { Outcome::Skip })
}

// --- the registry --------------------------------------------------------

fn registry() -> Vec<Check> {
    use GenClass::*;
    vec![
        Check {
            id: "L-nobypass",
            statement: "Between two vertices that both reach the root only via the orientation \
                        sign (set- or pair-wise), no opposite-signed closed-start trail exists.",
            targets: &[SublinearRadial, LinearSemiradial, Semiradial, RadialSublinearRoot],
            run: check_nobypass,
        },
        Check {
            id: "L-oneadd",
            statement: "Adding one qualifying signed edge from a radial into an attached blob \
                        leaves the root's reach sets unchanged.",
            targets: &[RadialSublinearRoot, SublinearRadial, RoundRadial, Triplex],
            run: check_oneadd,
        },
        Check {
            id: "L-edgeaddr",
            statement: "Adding several qualifying signed edges from a radial into an attached \
                        blob leaves the root's reach sets unchanged.",
            targets: &[RadialSublinearRoot, SublinearRadial, RoundRadial, Triplex],
            run: check_edgeaddr,
        },
        Check {
            id: "L-edgeaddsr",
            statement: "The semiradial analogue of the edge-adding invariance.",
            targets: &[LinearSemiradial, SharpSemiradial, SublinearRadial],
            run: check_edgeaddsr,
        },
        Check {
            id: "L-r2delete",
            statement: "Deleting signed cut edges under the radial hypothesis leaves the \
                        root's reach sets unchanged.",
            targets: &[RadialSublinearRoot, SublinearRadial, RoundRadial, Triplex],
            run: check_r2delete,
        },
        Check {
            id: "L-sr2delete",
            statement: "The semiradial analogue of the edge-deleting invariance.",
            targets: &[LinearSemiradial, SharpSemiradial, SublinearRadial],
            run: check_sr2delete,
        },
        Check {
            id: "L-neigh2ear",
            statement: "A qualified neighbor of a root-containing vertex set yields a simple \
                        diear through the joining edge or a scoop gripping it.",
            targets: &[Semiradial, RadialStrongRoot, SublinearRadial, Triplex],
            run: check_neigh2ear,
        },
        Check {
            id: "L-union",
            statement: "Unions of same-class rooted subgraphs stay in the class (semiradial, \
                        radial, absolute, strong, almost strong, linear-in-host).",
            targets: &[Semiradial, RadialStrongRoot, RoundRadial, AbsoluteSemiradial],
            run: check_union,
        },
        Check {
            id: "L-rnei2alt",
            statement: "Every root neighbor lies in the linear ground if linear, else in the \
                        absolute ground.",
            targets: &[Semiradial, SharpSemiradial, LinearSemiradial, AbsoluteSemiradial],
            run: check_rnei2alt,
        },
        Check {
            id: "L-abgnei2lin",
            statement: "Every neighbor of the absolute ground is linear.",
            targets: &[Semiradial, SharpSemiradial],
            run: check_abgnei2lin,
        },
        Check {
            id: "L-lg2neigh",
            statement: "Outside a proper linear ground of a sharp semiradial: no forbidden \
                        simple diear, a nonempty signed cut, absolute cut endpoints, and a \
                        scoop per cut edge.",
            targets: &[SharpSemiradial],
            run: check_lg2neigh,
        },
        Check {
            id: "L-astg-neigh",
            statement: "Neighbors of the strong ground, or of the almost strong ground minus \
                        the root, are sublinear.",
            targets: &[RadialStrongRoot, RadialSublinearRoot, RoundRadial],
            run: check_astg_neigh,
        },
        Check {
            id: "L-rrneigh2g",
            statement: "A signed root neighbor lies in the almost strong ground if strong, in \
                        the first shell if sublinear.",
            targets: &[RoundRadial, Triplex, RadialSublinearRoot],
            run: check_rrneigh2g,
        },
        Check {
            id: "L-shellneigh2strong",
            statement: "Outside a proper extended ground: no forbidden simple diear, and all \
                        signed neighbors of the ground are strong.",
            targets: &[RadialSublinearRoot, RoundRadial],
            run: check_shellneigh2strong,
        },
        Check {
            id: "L-obs-shell",
            statement: "Empty shells force the graph to equal its grounds; a trivial almost \
                        strong ground forces an empty second shell.",
            targets: &[AlmostStrongRadial, Triplex, SublinearRadial],
            run: check_obs_shell,
        },
        Check {
            id: "L-shell2path",
            statement: "First-shell vertices reach the root within the first shell; \
                        second-shell vertices reach the ground through the second shell and \
                        never with the opposite start sign.",
            targets: &[Triplex, RadialSublinearRoot, SublinearRadial],
            run: check_shell2path,
        },
        Check {
            id: "L-shell-structure",
            statement: "The first shell plus root induces a sublinear radial; the second shell \
                        over the contracted ground is a linear semiradial; shell-leaving edges \
                        carry the orientation sign.",
            targets: &[Triplex, RadialSublinearRoot, SublinearRadial],
            run: check_shell_structure,
        },
        Check {
            id: "L-asg2neigh",
            statement: "In a round radial, every signed root neighbor lies in the almost \
                        strong ground.",
            targets: &[RoundRadial, AlmostStrongRadial],
            run: check_asg2neigh,
        },
        Check {
            id: "L-const4",
            statement: "Under the contraction hypotheses, reaching the root is equivalent to \
                        reaching the subgraph while avoiding its edges.",
            targets: &[Semiradial, RadialStrongRoot, RoundRadial, RadialSublinearRoot],
            run: check_const4,
        },
        Check {
            id: "L-quotient-paths",
            statement: "Ground-specific path equivalences behind each decomposition step, \
                        including the root-cut deletions.",
            targets: &[Semiradial, RadialStrongRoot, RoundRadial, SharpSemiradial, RadialSublinearRoot],
            run: check_quotient_paths,
        },
        Check {
            id: "L-glue-reach",
            statement: "Gluing a qualifying part onto strong/absolute/non-reaching target sets \
                        preserves both sides' reach sets exactly.",
            targets: &[RadialStrongRoot, Semiradial, RoundRadial, SublinearRadial],
            run: check_glue_reach,
        },
        Check {
            id: "L-redge",
            statement: "Deleting or adding orientation-signed root edges in a sublinear-root \
                        radial leaves the reach sets unchanged.",
            targets: &[RadialSublinearRoot, RoundRadial, Triplex, SublinearRadial],
            run: check_redge,
        },
        Check {
            id: "L-decomp-thms",
            statement: "Every applicable decomposition step produces a quotient of the \
                        promised class and recomposes exactly.",
            targets: &[Semiradial, RadialStrongRoot, RoundRadial, SharpSemiradial, RadialSublinearRoot],
            run: check_decomp_thms,
        },
        Check {
            id: "L-grammar-sound",
            statement: "Every grammar member passes its definitional predicate.",
            targets: &[AbsoluteSemiradial, StrongRadial, AlmostStrongRadial],
            run: check_grammar_sound,
        },
        Check {
            id: "L-grammar-complete",
            statement: "Every graph passing a definitional predicate is reachable by the \
                        corresponding grammar.",
            targets: &[AbsoluteSemiradial, StrongRadial, AlmostStrongRadial],
            run: check_grammar_complete,
        },
    ]
}

pub fn check_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

fn random_instance(
    rng: &mut ChaCha8Rng,
    targets: &[GenClass],
    size: usize,
) -> Result<RootedGraph> {
    if !targets.is_empty() && rng.gen_bool(0.8) {
        let class = *pick(rng, targets);
        let n = rng.gen_range(2..=size.max(2));
        let seed = rng.gen::<u64>();
        if let Ok(rg) = generate(class, n, seed) {
            return Ok(rg);
        }
    }
    let g = random_graph(rng, size.max(1), size + 2);
    let alpha = rand_sign(rng);
    RootedGraph::new(g, "r", alpha)
}

/// Greedy shrink: repeatedly delete any single edge that keeps the
/// check failing under the same random stream.
fn shrink(
    check: &Check,
    rg: &RootedGraph,
    rng_state: &ChaCha8Rng,
) -> RootedGraph {
    let mut cur = rg.clone();
    loop {
        let mut improved = false;
        let ids: Vec<String> = cur.graph.edges().iter().map(|e| e.id.clone()).collect();
        for id in ids {
            let Ok(smaller) = cur.graph.without_edges(&[id.as_str()]) else {
                continue;
            };
            let Ok(cand) = RootedGraph::new(smaller, cur.root_name(), cur.orientation) else {
                continue;
            };
            let mut rng = rng_state.clone();
            if matches!((check.run)(&cand, &mut rng), Ok(Outcome::Fail(_))) {
                cur = cand;
                improved = true;
                break;
            }
        }
        if !improved {
            return cur;
        }
    }
}

fn run_one(check: &Check, idx: usize, bounds: &Bounds, seed: u64) -> Result<CheckReport> {
    let mut rng =
        ChaCha8Rng::seed_from_u64(seed ^ (idx as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut report = CheckReport {
        id: check.id.to_string(),
        statement: check.statement.to_string(),
        instances: 0,
        satisfied: 0,
        skipped: 0,
        failures: 0,
        random_instances: 0,
        random_satisfied: 0,
        hypothesis_rate: 0.0,
        counterexample: None,
    };
    let process = |rg: &RootedGraph, rng: &mut ChaCha8Rng, report: &mut CheckReport| {
        if rg.graph.edge_count() > MAX_CHECK_EDGES {
            return Ok::<(), Error>(());
        }
        report.instances += 1;
        let snapshot = rng.clone();
        match (check.run)(rg, rng)? {
            Outcome::Skip => report.skipped += 1,
            Outcome::Pass => report.satisfied += 1,
            Outcome::Fail(detail) => {
                report.satisfied += 1;
                report.failures += 1;
                if report.counterexample.is_none() {
                    let small = shrink(check, rg, &snapshot);
                    let mut rng2 = snapshot.clone();
                    let detail = match (check.run)(&small, &mut rng2) {
                        Ok(Outcome::Fail(d)) => d,
                        _ => detail,
                    };
                    report.counterexample = Some(Counterexample {
                        graph: crate::bdg::emit(
                            &small.graph,
                            Some(small.root_name()),
                            Some(small.orientation),
                        ),
                        detail,
                    });
                }
            }
        }
        Ok(())
    };
    for g in tiny_family(bounds.tiny_vertices, bounds.tiny_edges) {
        for alpha in Sign::BOTH {
            let rg = RootedGraph::new(g.clone(), "r", alpha)?;
            process(&rg, &mut rng, &mut report)?;
        }
    }
    let (tiny_instances, tiny_satisfied) = (report.instances, report.satisfied);
    for _ in 0..bounds.random_instances {
        let rg = random_instance(&mut rng, check.targets, bounds.random_size)?;
        process(&rg, &mut rng, &mut report)?;
    }
    report.random_instances = report.instances - tiny_instances;
    report.random_satisfied = report.satisfied - tiny_satisfied;
    report.hypothesis_rate = if report.random_instances == 0 {
        if report.instances == 0 {
            0.0
        } else {
            report.satisfied as f64 / report.instances as f64
        }
    } else {
        report.random_satisfied as f64 / report.random_instances as f64
    };
    Ok(report)
}

/// Runs one registered check.
pub fn run_check(id: &str, bounds: &Bounds, seed: u64) -> Result<CheckReport> {
    let reg = registry();
    let (idx, check) = reg
        .iter()
        .enumerate()
        .find(|(_, c)| c.id == id)
        .ok_or_else(|| Error::Input(format!("unknown check id: {id}")))?;
    run_one(check, idx, bounds, seed)
}

/// Runs every registered check, in parallel, with per-check
/// deterministic sub-seeds.
pub fn run_all(bounds: &Bounds, seed: u64) -> Result<SuiteReport> {
    let reg = registry();
    let mut results: Vec<Option<Result<CheckReport>>> = Vec::new();
    results.resize_with(reg.len(), || None);
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (idx, check) in reg.iter().enumerate() {
            let bounds = bounds.clone();
            handles.push((idx, scope.spawn(move || run_one(check, idx, &bounds, seed))));
        }
        for (idx, h) in handles {
            results[idx] = Some(h.join().expect("check thread panicked"));
        }
    });
    let mut checks = Vec::new();
    for r in results {
        checks.push(r.expect("missing check result")?);
    }
    let failed_checks = checks.iter().filter(|c| c.failures > 0).count();
    Ok(SuiteReport {
        seed,
        checks,
        failed_checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_bounds() -> Bounds {
        Bounds {
            tiny_vertices: 2,
            tiny_edges: 2,
            random_instances: 12,
            random_size: 5,
        }
    }

    #[test]
    fn unknown_id_is_rejected() {
        assert!(matches!(
            run_check("L-bogus", &small_bounds(), 1),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn single_check_runs_clean() {
        let rep = run_check("L-rnei2alt", &small_bounds(), 7).unwrap();
        assert_eq!(rep.failures, 0, "{:?}", rep.counterexample);
        assert!(rep.satisfied > 0);
    }

    #[test]
    fn reports_are_deterministic() {
        let a = run_check("L-redge", &small_bounds(), 42).unwrap();
        let b = run_check("L-redge", &small_bounds(), 42).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn suite_smoke() {
        let rep = run_all(&small_bounds(), 3).unwrap();
        assert_eq!(rep.checks.len(), 25);
        for c in &rep.checks {
            assert_eq!(c.failures, 0, "{}: {:?}", c.id, c.counterexample);
        }
    }
}
