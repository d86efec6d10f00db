//! Rooted sign-preserving isomorphism by backtracking with
//! degree/sign-multiset pruning. Instances are desk-scale.

use std::collections::BTreeMap;

use crate::graph::{BidirectedGraph, RootedGraph, Sign};

/// Per-vertex signature invariant under isomorphism: for each sign, the
/// count of non-loop ends with that sign, plus the multiset of loop sign
/// pairs.
fn signature(g: &BidirectedGraph, v: usize) -> (usize, usize, Vec<(Sign, Sign)>) {
    let mut plus = 0;
    let mut minus = 0;
    let mut loops = Vec::new();
    for &e in g.incident(v) {
        let edge = g.edge(e);
        if edge.is_loop() {
            let mut pair = (edge.ends[0].sign, edge.ends[1].sign);
            if pair.0 > pair.1 {
                pair = (pair.1, pair.0);
            }
            loops.push(pair);
        } else {
            match edge.sign_at(v) {
                Sign::Plus => plus += 1,
                Sign::Minus => minus += 1,
            }
        }
    }
    loops.sort();
    (plus, minus, loops)
}

/// Multiset of signed edges between mapped vertices, used to check a
/// partial assignment edge-wise.
fn edges_between(g: &BidirectedGraph, u: usize, v: usize) -> Vec<(Sign, Sign)> {
    let mut out = Vec::new();
    for &e in g.incident(u) {
        let edge = g.edge(e);
        if edge.is_loop() {
            if u == v {
                let mut pair = (edge.ends[0].sign, edge.ends[1].sign);
                if pair.0 > pair.1 {
                    pair = (pair.1, pair.0);
                }
                out.push(pair);
            }
        } else if edge.other_end(u).vertex == v {
            out.push((edge.sign_at(u), edge.sign_at(v)));
        }
    }
    out.sort();
    out
}

/// Returns a root-to-root, sign-preserving vertex bijection inducing an
/// edge bijection, as a name→name map, or `None`.
pub fn find_isomorphism(a: &RootedGraph, b: &RootedGraph) -> Option<BTreeMap<String, String>> {
    let (ga, gb) = (&a.graph, &b.graph);
    if ga.vertex_count() != gb.vertex_count()
        || ga.edge_count() != gb.edge_count()
        || a.orientation != b.orientation
    {
        return None;
    }
    let n = ga.vertex_count();
    let sig_a: Vec<_> = (0..n).map(|v| signature(ga, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| signature(gb, v)).collect();
    {
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
    }
    // Assign in order of decreasing constraint: root first, then by
    // signature rarity (plain index order is fine at this scale).
    let mut order: Vec<usize> = (0..n).filter(|&v| v != a.root).collect();
    order.insert(0, a.root);

    let mut map = vec![usize::MAX; n]; // a-vertex -> b-vertex
    let mut used = vec![false; n];

    fn consistent(
        ga: &BidirectedGraph,
        gb: &BidirectedGraph,
        map: &[usize],
        order: &[usize],
        upto: usize,
        v: usize,
        w: usize,
    ) -> bool {
        if edges_between(ga, v, v) != edges_between(gb, w, w) {
            return false;
        }
        for &u in &order[..upto] {
            if edges_between(ga, v, u) != edges_between(gb, w, map[u]) {
                return false;
            }
        }
        true
    }

    fn go(
        ga: &BidirectedGraph,
        gb: &BidirectedGraph,
        sig_a: &[(usize, usize, Vec<(Sign, Sign)>)],
        sig_b: &[(usize, usize, Vec<(Sign, Sign)>)],
        order: &[usize],
        pos: usize,
        root_b: usize,
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        let candidates: Vec<usize> = if pos == 0 {
            vec![root_b]
        } else {
            (0..gb.vertex_count()).filter(|&w| !used[w]).collect()
        };
        for w in candidates {
            if sig_a[v] != sig_b[w] {
                continue;
            }
            if !consistent(ga, gb, map, order, pos, v, w) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if go(ga, gb, sig_a, sig_b, order, pos + 1, root_b, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }

    if go(
        ga, gb, &sig_a, &sig_b, &order, 0, b.root, &mut map, &mut used,
    ) {
        Some(
            (0..n)
                .map(|v| (ga.vertex_name(v).to_string(), gb.vertex_name(map[v]).to_string()))
                .collect(),
        )
    } else {
        None
    }
}

pub fn are_isomorphic(a: &RootedGraph, b: &RootedGraph) -> bool {
    find_isomorphism(a, b).is_some()
}
