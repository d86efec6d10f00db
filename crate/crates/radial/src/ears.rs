//! Diears relative to a base subgraph: simple ears (ditrails between
//! base vertices with interior outside) and scoops (walks that leave
//! and return through one "grip" edge), plus the construction that
//! turns a reachable outside neighbor into an ear.

use std::collections::BTreeSet;

use crate::ditrail::{find_ditrail, search, Ditrail, Step, TrailQuery};
use crate::error::{input, Error, Result};
use crate::graph::{BidirectedGraph, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiEar {
    /// A ditrail of length ≥ 1 whose endpoints lie in the base vertex
    /// set and whose internal vertices lie outside it.
    Simple(Ditrail),
    /// A walk (y, grip, x) + loopWalk + (x, grip, y) with y in the base
    /// set and x outside; loopWalk is a nonempty closed coherent walk
    /// at x with all vertices outside the base set, reusing no edge.
    Scoop { grip: usize, loop_walk: Ditrail },
}

impl DiEar {
    /// The edges the ear contributes (the grip counted once).
    pub fn edges(&self) -> BTreeSet<usize> {
        match self {
            DiEar::Simple(p) => p.edge_set(),
            DiEar::Scoop { grip, loop_walk } => {
                let mut s = loop_walk.edge_set();
                s.insert(*grip);
                s
            }
        }
    }

    pub fn vertices(&self) -> BTreeSet<usize> {
        match self {
            DiEar::Simple(p) => p.vertices().into_iter().collect(),
            DiEar::Scoop { loop_walk, .. } => loop_walk.vertices().into_iter().collect(),
        }
    }

    /// (first sign at the base-side start, last sign at the base-side
    /// end); for a scoop both are the grip's sign at its base end.
    pub fn sign_pair(&self, g: &BidirectedGraph, base: &BTreeSet<usize>) -> Option<(Sign, Sign)> {
        match self {
            DiEar::Simple(p) => Some((p.first_sign()?, p.last_sign()?)),
            DiEar::Scoop { grip, .. } => {
                let e = g.edge(*grip);
                let y = if base.contains(&e.ends[0].vertex) {
                    e.ends[0]
                } else {
                    e.ends[1]
                };
                Some((y.sign, y.sign))
            }
        }
    }
}

/// Checks every diear invariant of `ear` against the base subgraph
/// given by its vertex set `s` and edge set `base_edges`.
pub fn validate_diear(
    g: &BidirectedGraph,
    s: &BTreeSet<usize>,
    base_edges: &BTreeSet<usize>,
    ear: &DiEar,
) -> Result<bool> {
    match ear {
        DiEar::Simple(p) => {
            if !crate::ditrail::validate_ditrail(g, p)? {
                return Ok(false);
            }
            Ok(!p.is_empty()
                && s.contains(&p.start)
                && s.contains(&p.end_vertex())
                && p.internal_vertices().iter().all(|v| !s.contains(v))
                && p.edge_set().is_disjoint(base_edges))
        }
        DiEar::Scoop { grip, loop_walk } => {
            if *grip >= g.edge_count() {
                return Err(input("scoop grip out of range"));
            }
            let e = g.edge(*grip);
            if e.is_loop() {
                return Ok(false);
            }
            let (y_end, x_end) = if s.contains(&e.ends[0].vertex) && !s.contains(&e.ends[1].vertex)
            {
                (e.ends[0], e.ends[1])
            } else if s.contains(&e.ends[1].vertex) && !s.contains(&e.ends[0].vertex) {
                (e.ends[1], e.ends[0])
            } else {
                return Ok(false);
            };
            let _ = y_end;
            if base_edges.contains(grip) {
                return Ok(false);
            }
            if !crate::ditrail::validate_ditrail(g, loop_walk)? {
                return Ok(false);
            }
            let gamma = x_end.sign;
            Ok(!loop_walk.is_empty()
                && loop_walk.start == x_end.vertex
                && loop_walk.end_vertex() == x_end.vertex
                && loop_walk.first_sign() == Some(gamma.flip())
                && loop_walk.last_sign() == Some(gamma.flip())
                && loop_walk.vertices().iter().all(|v| !s.contains(v))
                && !loop_walk.edge_set().contains(grip)
                && loop_walk.edge_set().is_disjoint(base_edges))
        }
    }
}

/// Which kinds of ear a search may return.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EarKindFilter {
    Any,
    SimpleOnly,
    ScoopOnly,
}

/// Search constraints for [`find_diear`].
#[derive(Debug, Clone, Default)]
pub struct EarConstraints {
    pub sign_pair: Option<(Sign, Sign)>,
    pub kind: Option<EarKindFilter>,
    /// Require this exact grip edge (implies scoop).
    pub grip: Option<usize>,
    /// Vertices the ear may not visit outside the base set.
    pub forbidden_vertices: BTreeSet<usize>,
}

/// Finds any diear relative to the base (s, base_edges) satisfying the
/// constraints, searching in G − base_edges.
pub fn find_diear(
    g: &BidirectedGraph,
    s: &BTreeSet<usize>,
    base_edges: &BTreeSet<usize>,
    c: &EarConstraints,
) -> Result<Option<DiEar>> {
    let kind = c.kind.unwrap_or(EarKindFilter::Any);
    let want_scoop_only = c.grip.is_some() || kind == EarKindFilter::ScoopOnly;

    // Internal positions must avoid the base set and the forbidden set.
    let blocked: BTreeSet<usize> = s.union(&c.forbidden_vertices).copied().collect();

    if !want_scoop_only {
        for &y in s {
            if c.forbidden_vertices.contains(&y) {
                continue;
            }
            for a in Sign::BOTH {
                for b in Sign::BOTH {
                    if let Some((ca, cb)) = c.sign_pair {
                        if (a, b) != (ca, cb) {
                            continue;
                        }
                    }
                    let mut q = TrailQuery::new(y, a, b, y);
                    q.targets = s.difference(&c.forbidden_vertices).copied().collect();
                    let q = q
                        .forbid_edges(base_edges.iter().copied())
                        .block_internal(g.vertex_count(), &blocked);
                    if let Some(p) = search(g, &q)? {
                        let ear = DiEar::Simple(p);
                        debug_assert!(validate_diear(g, s, base_edges, &ear)?);
                        return Ok(Some(ear));
                    }
                }
            }
        }
    }

    if kind != EarKindFilter::SimpleOnly {
        // Candidate grips sorted by edge id for determinism.
        let mut grips: Vec<usize> = (0..g.edge_count())
            .filter(|&e| {
                if let Some(want) = c.grip {
                    if e != want {
                        return false;
                    }
                }
                if base_edges.contains(&e) {
                    return false;
                }
                let edge = g.edge(e);
                if edge.is_loop() {
                    return false;
                }
                let ins = s.contains(&edge.ends[0].vertex);
                let out = s.contains(&edge.ends[1].vertex);
                ins != out
            })
            .collect();
        grips.sort_by(|&a, &b| g.edge(a).id.cmp(&g.edge(b).id));
        for e in grips {
            let edge = g.edge(e);
            let (y_end, x_end) = if s.contains(&edge.ends[0].vertex) {
                (edge.ends[0], edge.ends[1])
            } else {
                (edge.ends[1], edge.ends[0])
            };
            if let Some((ca, cb)) = c.sign_pair {
                if ca != cb || y_end.sign != ca {
                    continue;
                }
            }
            if c.forbidden_vertices.contains(&x_end.vertex) {
                continue;
            }
            let gamma = x_end.sign;
            let q = TrailQuery::new(x_end.vertex, gamma.flip(), gamma.flip(), x_end.vertex)
                .forbid_edges(base_edges.iter().copied().chain([e]))
                .block_internal(g.vertex_count(), &blocked);
            if let Some(loop_walk) = search(g, &q)? {
                let ear = DiEar::Scoop { grip: e, loop_walk };
                debug_assert!(validate_diear(g, s, base_edges, &ear)?);
                return Ok(Some(ear));
            }
        }
    }
    Ok(None)
}

/// Builds a diear relative to `s` from an outside vertex `x` adjacent
/// to `y ∈ s` via `edge`, given that x can reach `root` by a ditrail
/// whose first sign is the opposite of x's sign over the edge. Traces
/// that ditrail to its first base vertex, yielding either a simple ear
/// starting with (y, edge, x) or a scoop with grip `edge`.
pub fn ear_from_neighbor(
    g: &BidirectedGraph,
    s: &BTreeSet<usize>,
    root: usize,
    x: usize,
    y: usize,
    edge: usize,
) -> Result<DiEar> {
    if !s.contains(&root) {
        return Err(input("root must be in the base set"));
    }
    if s.contains(&x) || !s.contains(&y) {
        return Err(input("x must be outside the base set and y inside"));
    }
    let e = g.edge(edge);
    if e.is_loop() || !e.touches(x) || !e.touches(y) {
        return Err(input("edge must join x and y"));
    }
    let beta = e.sign_at(x);
    let mut trail = None;
    for end in Sign::BOTH {
        if let Some(p) = find_ditrail(g, x, root, beta.flip(), end, &BTreeSet::new())? {
            trail = Some(p);
            break;
        }
    }
    let p = trail.ok_or_else(|| {
        Error::Hypothesis(format!(
            "no {}-ditrail from {} to {}",
            beta.flip(),
            g.vertex_name(x),
            g.vertex_name(root)
        ))
    })?;
    // Prefix of p up to its first arrival in s.
    let cut = p
        .steps
        .iter()
        .position(|st| s.contains(&st.to))
        .expect("ditrail to the root must enter the base set");
    let prefix = Ditrail {
        start: x,
        steps: p.steps[..=cut].to_vec(),
    };
    let first = Step {
        edge,
        tail: e.sign_at(y),
        head: beta,
        to: x,
    };
    if prefix.steps.iter().all(|st| st.edge != edge) {
        let mut steps = vec![first];
        steps.extend(prefix.steps.iter().copied());
        Ok(DiEar::Simple(Ditrail { start: y, steps }))
    } else {
        // The traced prefix re-uses the edge; it must be the final step
        // (the first base vertex reached is y), so the remainder is a
        // closed walk at x.
        let loop_walk = Ditrail {
            start: x,
            steps: prefix.steps[..prefix.steps.len() - 1].to_vec(),
        };
        Ok(DiEar::Scoop {
            grip: edge,
            loop_walk,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Sign::{Minus, Plus};

    fn base_r(g: &BidirectedGraph) -> BTreeSet<usize> {
        [g.vertex("r").unwrap()].into()
    }

    #[test]
    fn f2_cycle_is_a_simple_diear() {
        let g = fixtures::f2();
        let s = base_r(&g);
        let c = EarConstraints {
            sign_pair: Some((Minus, Minus)),
            kind: Some(EarKindFilter::SimpleOnly),
            ..Default::default()
        };
        let ear = find_diear(&g, &s, &BTreeSet::new(), &c).unwrap().unwrap();
        assert!(validate_diear(&g, &s, &BTreeSet::new(), &ear).unwrap());
        match &ear {
            DiEar::Simple(p) => assert_eq!(p.len(), 2),
            _ => panic!("expected simple ear"),
        }
        assert_eq!(ear.sign_pair(&g, &s), Some((Minus, Minus)));
    }

    #[test]
    fn f1_has_no_scoop() {
        let g = fixtures::f1();
        let s = base_r(&g);
        let c = EarConstraints {
            kind: Some(EarKindFilter::ScoopOnly),
            ..Default::default()
        };
        assert!(find_diear(&g, &s, &BTreeSet::new(), &c).unwrap().is_none());
    }

    #[test]
    fn f7_scoop_with_grip_e() {
        let g = fixtures::f7();
        let s = base_r(&g);
        let c = EarConstraints {
            grip: Some(g.edge_by_id("e").unwrap()),
            ..Default::default()
        };
        let ear = find_diear(&g, &s, &BTreeSet::new(), &c).unwrap().unwrap();
        assert!(validate_diear(&g, &s, &BTreeSet::new(), &ear).unwrap());
        match &ear {
            DiEar::Scoop { grip, loop_walk } => {
                assert_eq!(g.edge(*grip).id, "e");
                assert_eq!(loop_walk.len(), 2);
            }
            _ => panic!("expected scoop"),
        }
        // x's sign over e is +, so the scoop's base-side pair is (-,-).
        assert_eq!(ear.sign_pair(&g, &s), Some((Minus, Minus)));
    }

    #[test]
    fn simple_ear_endpoint_condition() {
        let g = fixtures::f3();
        let s = base_r(&g);
        let a = g.vertex("a").unwrap();
        let r = g.vertex("r").unwrap();
        let bad = DiEar::Simple(Ditrail {
            start: r,
            steps: vec![Step {
                edge: g.edge_by_id("e1").unwrap(),
                tail: Minus,
                head: Plus,
                to: a,
            }],
        });
        assert!(!validate_diear(&g, &s, &BTreeSet::new(), &bad).unwrap());
    }

    #[test]
    fn ear_from_neighbor_simple_branch() {
        let g = fixtures::f2();
        let s = base_r(&g);
        let r = g.vertex("r").unwrap();
        let a = g.vertex("a").unwrap();
        let e1 = g.edge_by_id("e1").unwrap();
        let ear = ear_from_neighbor(&g, &s, r, a, r, e1).unwrap();
        assert!(validate_diear(&g, &s, &BTreeSet::new(), &ear).unwrap());
        match &ear {
            DiEar::Simple(p) => {
                assert_eq!(p.start, r);
                assert_eq!(p.end_vertex(), r);
                assert_eq!(p.steps[0].edge, e1);
            }
            _ => panic!("expected simple ear"),
        }
    }

    #[test]
    fn ear_from_neighbor_scoop_branch() {
        let g = fixtures::f7();
        let s = base_r(&g);
        let r = g.vertex("r").unwrap();
        let x = g.vertex("x").unwrap();
        let e = g.edge_by_id("e").unwrap();
        let ear = ear_from_neighbor(&g, &s, r, x, r, e).unwrap();
        assert!(validate_diear(&g, &s, &BTreeSet::new(), &ear).unwrap());
        assert!(matches!(ear, DiEar::Scoop { grip, .. } if grip == e));
    }

    #[test]
    fn ear_from_neighbor_hypothesis_failure() {
        let g = fixtures::f1();
        let s = base_r(&g);
        let r = g.vertex("r").unwrap();
        let a = g.vertex("a").unwrap();
        let e1 = g.edge_by_id("e1").unwrap();
        assert!(matches!(
            ear_from_neighbor(&g, &s, r, a, r, e1),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn single_edge_and_loop_simple_ears() {
        let mut g = fixtures::f1();
        g.add_edge("l", "r", Plus, "r", Minus).unwrap();
        let s: BTreeSet<usize> = [g.vertex("r").unwrap(), g.vertex("a").unwrap()].into();
        // the loop at r is a length-1 simple ear relative to (s, {e1})
        let base: BTreeSet<usize> = [g.edge_by_id("e1").unwrap()].into();
        let ear = find_diear(&g, &s, &base, &EarConstraints::default())
            .unwrap()
            .unwrap();
        assert!(validate_diear(&g, &s, &base, &ear).unwrap());
        match ear {
            DiEar::Simple(p) => assert_eq!(p.len(), 1),
            _ => panic!("expected simple ear"),
        }
    }
}
