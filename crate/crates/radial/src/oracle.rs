//! Independent exhaustive reach-profile oracle: enumerates every
//! edge-distinct coherent walk with plain backtracking and no pruning.
//! Deliberately simple; guarded by an edge-count bound.

use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, Sign};

use crate::ditrail::ReachProfile;

pub const DEFAULT_ORACLE_MAX_EDGES: usize = 12;

/// Reach profile of `r` by exhaustive walk enumeration. Refuses graphs
/// with more than `max_edges` edges.
pub fn oracle_reach_profile(
    g: &BidirectedGraph,
    r: usize,
    max_edges: usize,
) -> Result<ReachProfile> {
    if g.edge_count() > max_edges {
        return Err(Error::Guard(format!(
            "oracle bound is {max_edges} edges, graph has {}",
            g.edge_count()
        )));
    }
    let mut hits: Vec<(usize, Sign, Sign)> = Vec::new();
    let mut closed: Vec<(Sign, Sign)> = Vec::new();
    for x in g.vertex_indices() {
        for alpha in Sign::BOTH {
            let mut used = vec![false; g.edge_count()];
            walk(g, r, x, alpha, x, alpha, &mut used, &mut hits, &mut closed);
        }
    }
    Ok(ReachProfile::from_raw(r, &hits, &closed))
}

/// Extends every coherent walk from `v` (next tail sign `need`) one
/// edge at a time, recording each arrival at `r`.
#[allow(clippy::too_many_arguments)]
fn walk(
    g: &BidirectedGraph,
    r: usize,
    x: usize,
    alpha: Sign,
    v: usize,
    need: Sign,
    used: &mut [bool],
    hits: &mut Vec<(usize, Sign, Sign)>,
    closed: &mut Vec<(Sign, Sign)>,
) {
    for &e in g.incident(v) {
        if used[e] {
            continue;
        }
        let edge = g.edge(e);
        let mut arrivals: Vec<(Sign, usize)> = Vec::new();
        if edge.is_loop() {
            let (s0, s1) = (edge.ends[0].sign, edge.ends[1].sign);
            if s0 == need {
                arrivals.push((s1, v));
            }
            if s1 == need && s1 != s0 {
                arrivals.push((s0, v));
            }
        } else if edge.sign_at(v) == need {
            let o = edge.other_end(v);
            arrivals.push((o.sign, o.vertex));
        }
        for (head, to) in arrivals {
            if to == r {
                if x == r {
                    closed.push((alpha, head));
                } else {
                    hits.push((x, alpha, head));
                }
            }
            used[e] = true;
            walk(g, r, x, alpha, to, head.flip(), used, hits, closed);
            used[e] = false;
        }
    }
}
