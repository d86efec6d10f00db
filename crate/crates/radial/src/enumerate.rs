//! Instance families for differential and property testing: the
//! exhaustive family of small labelled bidirected multigraphs, and
//! seeded random graphs.

use rand::Rng;

use crate::graph::{BidirectedGraph, Sign};

/// One possible edge shape on `n` labelled vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct EdgeType {
    u: usize,
    su: Sign,
    v: usize,
    sv: Sign,
}

fn edge_types(n: usize) -> Vec<EdgeType> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            for su in Sign::BOTH {
                for sv in Sign::BOTH {
                    // A loop's sign pair is unordered; keep one order.
                    if u == v && su > sv {
                        continue;
                    }
                    out.push(EdgeType { u, su, v, sv });
                }
            }
        }
    }
    out
}

fn build(n: usize, picks: &[EdgeType]) -> BidirectedGraph {
    let mut g = BidirectedGraph::new();
    for i in 0..n {
        g.add_vertex(&vname(i)).unwrap();
    }
    for (k, t) in picks.iter().enumerate() {
        g.add_edge(
            &format!("e{}", k + 1),
            &vname(t.u),
            t.su,
            &vname(t.v),
            t.sv,
        )
        .unwrap();
    }
    g
}

fn vname(i: usize) -> String {
    if i == 0 {
        "r".to_string()
    } else {
        format!("v{i}")
    }
}

/// All labelled bidirected multigraphs with exactly `n` vertices
/// (named r, v1, v2, …) and at most `max_e` edges, one graph per edge
/// multiset (edge order is immaterial, so non-decreasing picks suffice).
fn family_for_n(n: usize, max_e: usize, out: &mut Vec<BidirectedGraph>) {
    let types = edge_types(n);
    fn rec(
        types: &[EdgeType],
        from: usize,
        picks: &mut Vec<EdgeType>,
        left: usize,
        n: usize,
        out: &mut Vec<BidirectedGraph>,
    ) {
        out.push(build(n, picks));
        if left == 0 {
            return;
        }
        for i in from..types.len() {
            picks.push(types[i]);
            rec(types, i, picks, left - 1, n, out);
            picks.pop();
        }
    }
    rec(&types, 0, &mut Vec::new(), max_e, n, out);
}

/// The exhaustive tiny family: every labelled multigraph with between 1
/// and `max_v` vertices and at most `max_e` edges, over all sign
/// assignments. The root is always the vertex named `r`.
pub fn tiny_family(max_v: usize, max_e: usize) -> Vec<BidirectedGraph> {
    let mut out = Vec::new();
    for n in 1..=max_v {
        family_for_n(n, max_e, &mut out);
    }
    out
}

/// A uniformly sloppy random multigraph: vertex count in 1..=max_v,
/// edge count in 0..=max_e, endpoints and signs uniform.
pub fn random_graph<R: Rng>(rng: &mut R, max_v: usize, max_e: usize) -> BidirectedGraph {
    let n = rng.gen_range(1..=max_v);
    let m = rng.gen_range(0..=max_e);
    let mut g = BidirectedGraph::new();
    for i in 0..n {
        g.add_vertex(&vname(i)).unwrap();
    }
    let sign = |rng: &mut R| if rng.gen::<bool>() { Sign::Plus } else { Sign::Minus };
    for k in 0..m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        let (su, sv) = (sign(rng), sign(rng));
        g.add_edge(&format!("e{}", k + 1), &vname(u), su, &vname(v), sv)
            .unwrap();
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_counts() {
        // n=1: 3 loop types; multisets of size <=3 from k types number
        // C(k,0)+C(k,1)+C(k+1,2)+C(k+2,3) with repetition.
        assert_eq!(tiny_family(1, 3).len(), 20);
        assert_eq!(tiny_family(2, 3).len(), 20 + 286);
        assert_eq!(tiny_family(3, 3).len(), 20 + 286 + 2024);
    }

    #[test]
    fn every_member_has_root() {
        for g in tiny_family(2, 2) {
            assert!(g.vertex("r").is_some());
        }
    }

    #[test]
    fn random_is_seed_deterministic() {
        use rand::SeedableRng;
        let mut a = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut b = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let ga = random_graph(&mut a, 6, 8);
            let gb = random_graph(&mut b, 6, 8);
            assert!(ga.same_labelled(&gb));
        }
    }
}
