//! Vertex classes (absolute/linear, strong/sublinear) and the graph
//! class predicates: radial, semiradial, and the principal and derived
//! classes built on them.

use serde::Serialize;

use crate::ditrail::{reach_profile, ReachProfile};
use crate::error::Result;
use crate::graph::{BidirectedGraph, RootedGraph, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TrailClass {
    /// In both R(+) and R(−).
    Absolute,
    /// In R(α) but not R(−α).
    Linear(Sign),
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StrictClass {
    /// In R(α,−α) ∩ R(−α,−α), relative to the orientation α.
    Strong(Sign),
    /// In R(α,−α) ∖ R(−α,−α).
    Sublinear(Sign),
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub trail: TrailClass,
    pub strict: StrictClass,
}

/// Classifies `v` from a precomputed profile; `alpha` is the
/// orientation of the rooted graph.
pub fn vertex_class(p: &ReachProfile, alpha: Sign, v: usize) -> VertexClass {
    let in_plus = p.reach_any(Sign::Plus).contains(&v);
    let in_minus = p.reach_any(Sign::Minus).contains(&v);
    let trail = match (in_plus, in_minus) {
        (true, true) => TrailClass::Absolute,
        (true, false) => TrailClass::Linear(Sign::Plus),
        (false, true) => TrailClass::Linear(Sign::Minus),
        (false, false) => TrailClass::Neither,
    };
    let na = alpha.flip();
    let fwd = p.reach(alpha, na).contains(&v);
    let back = p.reach(na, na).contains(&v);
    let strict = match (fwd, back) {
        (true, true) => StrictClass::Strong(alpha),
        (true, false) => StrictClass::Sublinear(alpha),
        _ => StrictClass::Neither,
    };
    VertexClass { trail, strict }
}

pub fn classify_vertex(r: &RootedGraph, v: usize) -> Result<VertexClass> {
    let p = reach_profile(&r.graph, r.root)?;
    Ok(vertex_class(&p, r.orientation, v))
}

pub fn is_absolute(p: &ReachProfile, v: usize) -> bool {
    vertex_class(p, Sign::Plus, v).trail == TrailClass::Absolute
}

pub fn is_linear(p: &ReachProfile, alpha: Sign, v: usize) -> bool {
    vertex_class(p, alpha, v).trail == TrailClass::Linear(alpha)
}

pub fn is_strong(p: &ReachProfile, alpha: Sign, v: usize) -> bool {
    vertex_class(p, alpha, v).strict == StrictClass::Strong(alpha)
}

pub fn is_sublinear(p: &ReachProfile, alpha: Sign, v: usize) -> bool {
    vertex_class(p, alpha, v).strict == StrictClass::Sublinear(alpha)
}

// --- graph class predicates over a profile ---

pub fn is_radial_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let set = p.reach(alpha, alpha.flip());
    g.vertex_indices().all(|v| set.contains(&v))
}

pub fn is_semiradial_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let any = p.reach_any(alpha);
    g.vertex_indices().all(|v| any.contains(&v))
}

pub fn is_absolute_semiradial_p(g: &BidirectedGraph, p: &ReachProfile) -> bool {
    is_semiradial_p(g, p, Sign::Plus) && is_semiradial_p(g, p, Sign::Minus)
}

pub fn is_strong_radial_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let back = p.reach(alpha.flip(), alpha.flip());
    is_radial_p(g, p, alpha) && g.vertex_indices().all(|v| back.contains(&v))
}

pub fn is_almost_strong_radial_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let na = alpha.flip();
    let back = p.reach(na, na);
    is_radial_p(g, p, alpha)
        && !p.closed_over(na, na)
        && g.vertex_indices()
            .all(|v| v == p.root || back.contains(&v))
}

pub fn is_linear_semiradial_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let na = alpha.flip();
    let any = p.reach_any(na);
    is_semiradial_p(g, p, alpha)
        && g.loops_at(p.root).is_empty()
        && any.len() == 1
        && any.contains(&p.root)
        && !p.closed_over(na, Sign::Plus)
        && !p.closed_over(na, Sign::Minus)
}

pub fn is_sublinear_radial_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let na = alpha.flip();
    is_radial_p(g, p, alpha) && p.reach(na, na).is_empty() && !p.closed_over(na, na)
}

pub fn is_sharp_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    is_semiradial_p(g, p, alpha)
        && g.neighbors(p.root)
            .iter()
            .all(|&v| is_linear(p, alpha, v))
}

pub fn is_round_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> bool {
    let na = alpha.flip();
    if !is_radial_p(g, p, alpha) || p.closed_over(na, na) {
        return false;
    }
    let root_set = [p.root].into();
    let (_, nei) = g.signed_cut(&root_set, na);
    nei.iter().all(|&v| is_strong(p, alpha, v))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RootKind {
    Strong,
    Sublinear,
    NotRadial,
}

pub fn root_kind_p(g: &BidirectedGraph, p: &ReachProfile, alpha: Sign) -> RootKind {
    let na = alpha.flip();
    if p.closed_over(na, na) {
        RootKind::Strong
    } else if is_radial_p(g, p, alpha) {
        RootKind::Sublinear
    } else {
        RootKind::NotRadial
    }
}

pub fn root_kind(r: &RootedGraph) -> Result<RootKind> {
    let p = reach_profile(&r.graph, r.root)?;
    Ok(root_kind_p(&r.graph, &p, r.orientation))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub struct GraphClassReport {
    pub is_radial: bool,
    pub is_semiradial: bool,
    pub is_absolute_semiradial: bool,
    pub is_strong_radial: bool,
    pub is_almost_strong_radial: bool,
    pub is_linear_semiradial: bool,
    pub is_sublinear_radial: bool,
    pub is_sharp: bool,
    pub is_round: bool,
    pub is_triplex: bool,
    pub root_kind: RootKind,
}

/// Full class report using a precomputed profile.
pub fn class_report_with(r: &RootedGraph, p: &ReachProfile) -> Result<GraphClassReport> {
    let g = &r.graph;
    let a = r.orientation;
    let is_radial = is_radial_p(g, p, a);
    let root_kind = root_kind_p(g, p, a);
    let is_triplex = is_radial
        && root_kind == RootKind::Sublinear
        && crate::grounds::is_triplex_with(r, p)?;
    Ok(GraphClassReport {
        is_radial,
        is_semiradial: is_semiradial_p(g, p, a),
        is_absolute_semiradial: is_absolute_semiradial_p(g, p),
        is_strong_radial: is_strong_radial_p(g, p, a),
        is_almost_strong_radial: is_almost_strong_radial_p(g, p, a),
        is_linear_semiradial: is_linear_semiradial_p(g, p, a),
        is_sublinear_radial: is_sublinear_radial_p(g, p, a),
        is_sharp: is_sharp_p(g, p, a),
        is_round: is_round_p(g, p, a),
        is_triplex,
        root_kind,
    })
}

pub fn class_report(r: &RootedGraph) -> Result<GraphClassReport> {
    let p = reach_profile(&r.graph, r.root)?;
    class_report_with(r, &p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{self, rooted};
    use crate::graph::Sign::{Minus, Plus};

    #[test]
    fn vertex_classes_f1_f2() {
        let f1 = rooted(fixtures::f1());
        let a = f1.graph.vertex("a").unwrap();
        let c = classify_vertex(&f1, a).unwrap();
        assert_eq!(c.trail, TrailClass::Linear(Plus));
        assert_eq!(c.strict, StrictClass::Sublinear(Plus));

        let f2 = rooted(fixtures::f2());
        let a = f2.graph.vertex("a").unwrap();
        let c = classify_vertex(&f2, a).unwrap();
        assert_eq!(c.trail, TrailClass::Absolute);
        assert_eq!(c.strict, StrictClass::Strong(Plus));
    }

    #[test]
    fn root_is_always_absolute() {
        for g in [fixtures::f0(), fixtures::f1(), fixtures::f2(), fixtures::f6()] {
            let r = rooted(g);
            let c = classify_vertex(&r, r.root).unwrap();
            assert_eq!(c.trail, TrailClass::Absolute);
        }
    }

    #[test]
    fn report_f1() {
        let rep = class_report(&rooted(fixtures::f1())).unwrap();
        assert!(rep.is_radial && rep.is_semiradial);
        assert!(rep.is_linear_semiradial);
        assert!(rep.is_sublinear_radial);
        assert!(rep.is_sharp);
        assert!(!rep.is_round); // a is sublinear, not strong
        assert!(!rep.is_strong_radial && !rep.is_absolute_semiradial);
        assert_eq!(rep.root_kind, RootKind::Sublinear);
    }

    #[test]
    fn report_f2() {
        let rep = class_report(&rooted(fixtures::f2())).unwrap();
        assert!(rep.is_strong_radial);
        assert!(rep.is_absolute_semiradial);
        assert!(!rep.is_sharp && !rep.is_linear_semiradial);
        assert!(!rep.is_almost_strong_radial);
        assert_eq!(rep.root_kind, RootKind::Strong);
    }

    #[test]
    fn report_f6() {
        let rep = class_report(&rooted(fixtures::f6())).unwrap();
        assert!(rep.is_almost_strong_radial);
        assert!(rep.is_round);
        assert!(rep.is_triplex);
        assert_eq!(rep.root_kind, RootKind::Sublinear);
    }

    #[test]
    fn report_f7() {
        let rep = class_report(&rooted(fixtures::f7())).unwrap();
        assert!(rep.is_absolute_semiradial);
        assert!(rep.is_almost_strong_radial);
        assert!(!rep.is_strong_radial);
    }

    #[test]
    fn root_kind_not_radial() {
        let mut g = crate::graph::BidirectedGraph::new();
        g.add_vertex("r").unwrap();
        g.add_vertex("a").unwrap();
        g.add_edge("e", "a", Minus, "r", Minus).unwrap();
        let r = rooted(g);
        assert_eq!(root_kind(&r).unwrap(), RootKind::NotRadial);
    }

    #[test]
    fn dichotomy_in_semiradials_and_radials() {
        // In an α-semiradial every vertex is absolute or α-linear; in an
        // α-radial every vertex is strong or sublinear.
        for g in crate::enumerate::tiny_family(3, 2) {
            let root = g.vertex("r").unwrap();
            let p = crate::ditrail::reach_profile(&g, root).unwrap();
            for alpha in Sign::BOTH {
                if is_semiradial_p(&g, &p, alpha) {
                    for v in g.vertex_indices() {
                        let c = vertex_class(&p, alpha, v);
                        assert!(
                            c.trail == TrailClass::Absolute || c.trail == TrailClass::Linear(alpha),
                            "semiradial dichotomy violated"
                        );
                    }
                }
                if is_radial_p(&g, &p, alpha) {
                    for v in g.vertex_indices() {
                        let c = vertex_class(&p, alpha, v);
                        assert!(
                            c.strict == StrictClass::Strong(alpha)
                                || c.strict == StrictClass::Sublinear(alpha),
                            "radial dichotomy violated"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn strong_and_almost_strong_exclusive() {
        for g in crate::enumerate::tiny_family(2, 3) {
            let root = g.vertex("r").unwrap();
            let p = crate::ditrail::reach_profile(&g, root).unwrap();
            for alpha in Sign::BOTH {
                assert!(
                    !(is_strong_radial_p(&g, &p, alpha) && is_almost_strong_radial_p(&g, &p, alpha))
                );
            }
        }
    }
}
