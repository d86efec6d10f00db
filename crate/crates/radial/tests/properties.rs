//! Property tests over seeded random multigraphs: engine/oracle
//! agreement, structural identities of the graph operations, and the
//! ditrail algebra.

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use radial::bdg;
use radial::ditrail::{find_ditrail, reach_profile, validate_ditrail, Ditrail};
use radial::enumerate::random_graph;
use radial::graph::{gluing_sum, BidirectedGraph, GluingSpec, Sign};
use radial::oracle::oracle_reach_profile;

fn graph_from_seed(seed: u64, max_v: usize, max_e: usize) -> (BidirectedGraph, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_graph(&mut rng, max_v, max_e);
    (g, rng)
}

fn rand_sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn engine_matches_oracle(seed in any::<u64>()) {
        let (g, _) = graph_from_seed(seed, 6, 8);
        let r = g.vertex("r").unwrap();
        let engine = reach_profile(&g, r).unwrap();
        let oracle = oracle_reach_profile(&g, r, 12).unwrap();
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn adding_an_edge_never_shrinks_reach(seed in any::<u64>()) {
        let (g, mut rng) = graph_from_seed(seed, 5, 6);
        let r = g.vertex("r").unwrap();
        let before = reach_profile(&g, r).unwrap();
        let n = g.vertex_count();
        let u = g.vertex_name(rng.gen_range(0..n)).to_string();
        let v = g.vertex_name(rng.gen_range(0..n)).to_string();
        let g2 = g
            .with_edge("fresh", &u, rand_sign(&mut rng), &v, rand_sign(&mut rng))
            .unwrap();
        let after = reach_profile(&g2, r).unwrap();
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                prop_assert!(before.reach(a, b).is_subset(after.reach(a, b)));
                prop_assert!(!before.closed_over(a, b) || after.closed_over(a, b));
            }
        }
    }

    #[test]
    fn witnesses_validate_and_reverse(seed in any::<u64>()) {
        let (g, _) = graph_from_seed(seed, 5, 6);
        let r = g.vertex("r").unwrap();
        let none = BTreeSet::new();
        for x in g.vertex_indices() {
            for a in Sign::BOTH {
                for b in Sign::BOTH {
                    let Some(p) = find_ditrail(&g, x, r, a, b, &none).unwrap() else {
                        continue;
                    };
                    prop_assert!(validate_ditrail(&g, &p).unwrap());
                    prop_assert_eq!(p.start, x);
                    prop_assert_eq!(p.end_vertex(), r);
                    if !p.is_empty() {
                        prop_assert_eq!(p.first_sign(), Some(a));
                        prop_assert_eq!(p.last_sign(), Some(b));
                        let q = p.reversed();
                        prop_assert!(validate_ditrail(&g, &q).unwrap());
                        prop_assert_eq!(q.first_sign(), Some(b));
                        prop_assert_eq!(q.last_sign(), Some(a));
                        prop_assert_eq!(q.start, r);
                        prop_assert_eq!(q.end_vertex(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn coherent_disjoint_concatenation_validates(seed in any::<u64>()) {
        let (g, _) = graph_from_seed(seed, 5, 6);
        let r = g.vertex("r").unwrap();
        let none = BTreeSet::new();
        for x in g.vertex_indices() {
            for a in Sign::BOTH {
                for b in Sign::BOTH {
                    let Some(p) = find_ditrail(&g, x, r, a, b, &none).unwrap() else {
                        continue;
                    };
                    if p.is_empty() {
                        continue;
                    }
                    // continue from r with the flipped sign, avoiding P's edges
                    for c in Sign::BOTH {
                        let q: Option<Ditrail> = find_ditrail(
                            &g, r, x, b.flip(), c, &p.edge_set(),
                        )
                        .unwrap();
                        let Some(q) = q else { continue };
                        if q.is_empty() {
                            continue;
                        }
                        let pq = p.concat(&q);
                        prop_assert!(validate_ditrail(&g, &pq).unwrap());
                        prop_assert_eq!(pq.first_sign(), Some(a));
                        prop_assert_eq!(pq.last_sign(), Some(c));
                    }
                }
            }
        }
    }

    #[test]
    fn contraction_counts(seed in any::<u64>()) {
        let (g, mut rng) = graph_from_seed(seed, 6, 8);
        let n = g.vertex_count();
        let mut x = BTreeSet::new();
        x.insert(rng.gen_range(0..n));
        for v in 0..n {
            if rng.gen_bool(0.4) {
                x.insert(v);
            }
        }
        let (q, fresh) = g.contract(&x).unwrap();
        prop_assert_eq!(q.vertex_count(), n - x.len() + 1);
        prop_assert!(fresh < q.vertex_count());
        for e in q.edges() {
            // surviving edges keep their ids and come from g
            prop_assert!(g.edge_by_id(&e.id).is_some());
        }
    }

    #[test]
    fn gluing_preserves_edge_count(seed in any::<u64>()) {
        let (g, mut rng) = graph_from_seed(seed, 4, 5);
        let h = random_graph(&mut rng, 4, 5).suffixed("_h");
        let s = g.vertex_name(rng.gen_range(0..g.vertex_count())).to_string();
        let t: BTreeSet<String> = h.vertex_names().iter().cloned().collect();
        let tvec: Vec<&String> = t.iter().collect();
        // the spec must cover exactly the glue-incident edges
        let mut spec = GluingSpec::default();
        let s_idx = g.vertex(&s).unwrap();
        for &e in g.incident(s_idx) {
            let edge = g.edge(e);
            let pair = if edge.is_loop() {
                Some(tvec[rng.gen_range(0..tvec.len())].clone())
            } else {
                None
            };
            spec.targets.insert(
                edge.id.clone(),
                (tvec[rng.gen_range(0..tvec.len())].clone(), pair),
            );
        }
        let glued = gluing_sum(&g, &s, &h, &t, &spec).unwrap();
        prop_assert_eq!(glued.edge_count(), g.edge_count() + h.edge_count());
        prop_assert_eq!(
            glued.vertex_count(),
            g.vertex_count() + h.vertex_count() - 1
        );
    }

    #[test]
    fn signed_cut_partitions_the_cut(seed in any::<u64>()) {
        let (g, mut rng) = graph_from_seed(seed, 6, 8);
        let n = g.vertex_count();
        let mut s = BTreeSet::new();
        for v in 0..n {
            if rng.gen_bool(0.5) {
                s.insert(v);
            }
        }
        s.insert(0);
        let (plus, _) = g.signed_cut(&s, Sign::Plus);
        let (minus, _) = g.signed_cut(&s, Sign::Minus);
        let both: BTreeSet<usize> = plus.iter().chain(minus.iter()).copied().collect();
        let cut: BTreeSet<usize> = g.cut(&s).into_iter().collect();
        prop_assert_eq!(both, cut);
        // an edge with one end of each sign inside S appears in both
        let overlap: Vec<usize> = plus.iter().filter(|e| minus.contains(e)).copied().collect();
        for e in overlap {
            let edge = g.edge(e);
            let inside: Vec<Sign> = edge
                .ends
                .iter()
                .filter(|end| s.contains(&end.vertex))
                .map(|end| end.sign)
                .collect();
            prop_assert!(inside.contains(&Sign::Plus) && inside.contains(&Sign::Minus));
        }
    }

    #[test]
    fn add_then_delete_is_identity(seed in any::<u64>()) {
        let (g, mut rng) = graph_from_seed(seed, 5, 6);
        let n = g.vertex_count();
        let u = g.vertex_name(rng.gen_range(0..n)).to_string();
        let v = g.vertex_name(rng.gen_range(0..n)).to_string();
        let g2 = g
            .with_edge("fresh", &u, rand_sign(&mut rng), &v, rand_sign(&mut rng))
            .unwrap()
            .without_edges(&["fresh"])
            .unwrap();
        prop_assert!(g2.same_labelled(&g));
    }

    #[test]
    fn parse_emit_round_trip(seed in any::<u64>()) {
        let (g, _) = graph_from_seed(seed, 6, 8);
        let text = bdg::emit(&g, Some("r"), Some(Sign::Plus));
        let parsed = bdg::parse(&text).unwrap();
        prop_assert!(parsed.graph.same_labelled(&g));
        prop_assert_eq!(parsed.root.as_deref(), Some("r"));
        prop_assert_eq!(parsed.sign, Some(Sign::Plus));
        prop_assert_eq!(bdg::emit(&parsed.graph, Some("r"), Some(Sign::Plus)), text);
    }
}
