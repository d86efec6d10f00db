//! Sign-coherent directed trails (ditrails): validation, witness
//! search, and reach profiles of a rooted graph.
//!
//! Conventions. A ditrail is an edge-distinct walk in which consecutive
//! edges carry opposite signs at every pass-through vertex; an
//! (α,β)-ditrail starts with sign α and ends with sign β. The zero-edge
//! walk at r counts as a (β,−β)-ditrail for both β but never as a
//! (β,β)-ditrail. A closed ditrail over r has both endpoints at r, at
//! least one edge, and no coherence constraint between its last and
//! first edges at r.

use std::collections::{BTreeSet, HashMap};

use crate::error::{input, Error, Result};
use crate::graph::{BidirectedGraph, Sign};

/// One traversal step: `edge` is entered with sign `tail` at the
/// current vertex and left with sign `head` at `to`. A loop has
/// `to` equal to the current vertex and consumes both of its ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub edge: usize,
    pub tail: Sign,
    pub head: Sign,
    pub to: usize,
}

/// A (possibly zero-length) ditrail starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ditrail {
    pub start: usize,
    pub steps: Vec<Step>,
}

impl Ditrail {
    pub fn trivial(at: usize) -> Self {
        Ditrail {
            start: at,
            steps: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end_vertex(&self) -> usize {
        self.steps.last().map_or(self.start, |s| s.to)
    }

    /// Sign of the start vertex over the first edge; `None` when empty.
    pub fn first_sign(&self) -> Option<Sign> {
        self.steps.first().map(|s| s.tail)
    }

    /// Sign of the end vertex over the last edge; `None` when empty.
    pub fn last_sign(&self) -> Option<Sign> {
        self.steps.last().map(|s| s.head)
    }

    /// All vertices visited, in order (start first).
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = vec![self.start];
        out.extend(self.steps.iter().map(|s| s.to));
        out
    }

    /// Vertices strictly between the two endpoints (positions 1..k-1).
    pub fn internal_vertices(&self) -> Vec<usize> {
        if self.steps.len() < 2 {
            return Vec::new();
        }
        self.steps[..self.steps.len() - 1]
            .iter()
            .map(|s| s.to)
            .collect()
    }

    pub fn edge_set(&self) -> BTreeSet<usize> {
        self.steps.iter().map(|s| s.edge).collect()
    }

    /// Alternating vertex/edge-id token line for reports.
    pub fn tokens(&self, g: &BidirectedGraph) -> String {
        let mut out = g.vertex_name(self.start).to_string();
        for s in &self.steps {
            out.push(' ');
            out.push_str(&g.edge(s.edge).id);
            out.push(' ');
            out.push_str(g.vertex_name(s.to));
        }
        out
    }

    /// The reverse walk: a (β,α)-ditrail when self is an (α,β)-ditrail.
    pub fn reversed(&self) -> Ditrail {
        let mut steps = Vec::with_capacity(self.steps.len());
        let froms: Vec<usize> = std::iter::once(self.start)
            .chain(self.steps.iter().map(|s| s.to))
            .collect();
        for (i, s) in self.steps.iter().enumerate().rev() {
            steps.push(Step {
                edge: s.edge,
                tail: s.head,
                head: s.tail,
                to: froms[i],
            });
        }
        Ditrail {
            start: self.end_vertex(),
            steps,
        }
    }

    /// Concatenation; caller guarantees edge-disjointness and the sign
    /// flip at the junction (re-validate afterwards when in doubt).
    pub fn concat(&self, other: &Ditrail) -> Ditrail {
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().copied());
        Ditrail {
            start: self.start,
            steps,
        }
    }
}

/// Checks every ditrail invariant of `p` against `g`.
pub fn validate_ditrail(g: &BidirectedGraph, p: &Ditrail) -> Result<bool> {
    if p.start >= g.vertex_count() {
        return Err(input("ditrail start vertex out of range"));
    }
    let mut seen = BTreeSet::new();
    let mut at = p.start;
    let mut prev_head: Option<Sign> = None;
    for s in &p.steps {
        if s.edge >= g.edge_count() {
            return Err(input("ditrail references an unknown edge"));
        }
        if !seen.insert(s.edge) {
            return Ok(false); // edge repeated
        }
        let edge = g.edge(s.edge);
        // The step must match one of the edge's end assignments.
        let ok = if edge.is_loop() {
            edge.ends[0].vertex == at
                && s.to == at
                && ((s.tail == edge.ends[0].sign && s.head == edge.ends[1].sign)
                    || (s.tail == edge.ends[1].sign && s.head == edge.ends[0].sign))
        } else {
            edge.touches(at)
                && edge.other_end(at).vertex == s.to
                && s.tail == edge.sign_at(at)
                && s.head == edge.sign_at(s.to)
        };
        if !ok {
            return Ok(false);
        }
        if let Some(h) = prev_head {
            if h == s.tail {
                return Ok(false); // coherence violated at `at`
            }
        }
        prev_head = Some(s.head);
        at = s.to;
    }
    Ok(true)
}

fn edge_bits(g: &BidirectedGraph) -> Result<()> {
    if g.edge_count() > 128 {
        return Err(Error::Guard(format!(
            "engine supports at most 128 edges, got {}",
            g.edge_count()
        )));
    }
    Ok(())
}

/// A parameterized witness search for coherent trails.
#[derive(Debug, Clone)]
pub struct TrailQuery {
    pub start: usize,
    /// Required sign of the start vertex over the first edge.
    pub start_sign: Sign,
    /// Required sign of the end vertex over the last edge.
    pub end_sign: Sign,
    /// Acceptable end vertices.
    pub targets: BTreeSet<usize>,
    /// Edge indices that may not be used.
    pub forbidden: u128,
    /// If set, vertices allowed as pass-through (internal) positions;
    /// endpoints are exempt.
    pub allowed_internal: Option<Vec<bool>>,
}

impl TrailQuery {
    pub fn new(start: usize, start_sign: Sign, end_sign: Sign, target: usize) -> Self {
        TrailQuery {
            start,
            start_sign,
            end_sign,
            targets: [target].into(),
            forbidden: 0,
            allowed_internal: None,
        }
    }

    pub fn forbid_edges<I: IntoIterator<Item = usize>>(mut self, edges: I) -> Self {
        for e in edges {
            self.forbidden |= 1u128 << e;
        }
        self
    }

    /// Restricts internal vertices to those outside `blocked`.
    pub fn block_internal(mut self, n: usize, blocked: &BTreeSet<usize>) -> Self {
        let mut allowed = vec![true; n];
        for &v in blocked {
            allowed[v] = false;
        }
        self.allowed_internal = Some(allowed);
        self
    }
}

struct Dfs<'g> {
    g: &'g BidirectedGraph,
    q: &'g TrailQuery,
    // Failed (vertex, next-tail-sign) states keyed by used-edge sets:
    // a state fails whenever a recorded subset of its used set failed.
    failed: HashMap<(usize, Sign), Vec<u128>>,
    prune: bool,
    steps: Vec<Step>,
}

impl<'g> Dfs<'g> {
    fn arrivals(&self, v: usize, need_tail: Sign, e: usize) -> Vec<Step> {
        let edge = self.g.edge(e);
        let mut out = Vec::new();
        if edge.is_loop() {
            let (s0, s1) = (edge.ends[0].sign, edge.ends[1].sign);
            if s0 == need_tail {
                out.push(Step { edge: e, tail: s0, head: s1, to: v });
            }
            if s1 == need_tail && s1 != s0 {
                out.push(Step { edge: e, tail: s1, head: s0, to: v });
            }
        } else if edge.sign_at(v) == need_tail {
            let other = edge.other_end(v);
            out.push(Step { edge: e, tail: need_tail, head: other.sign, to: other.vertex });
        }
        out
    }

    fn run(&mut self, v: usize, need_tail: Sign, used: u128) -> bool {
        if self.prune {
            if let Some(sets) = self.failed.get(&(v, need_tail)) {
                if sets.iter().any(|&u| u & used == u) {
                    return false;
                }
            }
        }
        for &e in self.g.incident(v) {
            let bit = 1u128 << e;
            if used & bit != 0 || self.q.forbidden & bit != 0 {
                continue;
            }
            for step in self.arrivals(v, need_tail, e) {
                self.steps.push(step);
                if self.q.targets.contains(&step.to) && step.head == self.q.end_sign {
                    return true;
                }
                let pass_ok = self
                    .q
                    .allowed_internal
                    .as_ref()
                    .map_or(true, |a| a[step.to]);
                if pass_ok && self.run(step.to, step.head.flip(), used | bit) {
                    return true;
                }
                self.steps.pop();
            }
        }
        if self.prune {
            let sets = self.failed.entry((v, need_tail)).or_default();
            sets.retain(|&u| u & used != used); // drop dominated records
            sets.push(used);
        }
        false
    }
}

fn search_inner(g: &BidirectedGraph, q: &TrailQuery, prune: bool) -> Result<Option<Ditrail>> {
    edge_bits(g)?;
    if q.start >= g.vertex_count() {
        return Err(input("query start vertex out of range"));
    }
    let mut dfs = Dfs {
        g,
        q,
        failed: HashMap::new(),
        prune,
        steps: Vec::new(),
    };
    if dfs.run(q.start, q.start_sign, 0) {
        Ok(Some(Ditrail {
            start: q.start,
            steps: dfs.steps,
        }))
    } else {
        Ok(None)
    }
}

/// Witness search with dominance pruning. A nonempty trail is always
/// required; the zero-edge convention is handled by callers.
pub fn search(g: &BidirectedGraph, q: &TrailQuery) -> Result<Option<Ditrail>> {
    search_inner(g, q, true)
}

/// The same search without pruning; used by tests to cross-check the
/// pruned engine.
pub fn search_unpruned(g: &BidirectedGraph, q: &TrailQuery) -> Result<Option<Ditrail>> {
    search_inner(g, q, false)
}

/// A witness (α,β)-ditrail from `x` to `r` avoiding `forbidden`, or
/// `None`. For x = r the trivial ditrail is returned iff β = −α;
/// otherwise a nonempty closed witness is sought.
pub fn find_ditrail(
    g: &BidirectedGraph,
    x: usize,
    r: usize,
    alpha: Sign,
    beta: Sign,
    forbidden: &BTreeSet<usize>,
) -> Result<Option<Ditrail>> {
    if x >= g.vertex_count() || r >= g.vertex_count() {
        return Err(input("vertex out of range"));
    }
    if x == r && beta == alpha.flip() {
        return Ok(Some(Ditrail::trivial(r)));
    }
    let q = TrailQuery::new(x, alpha, beta, r).forbid_edges(forbidden.iter().copied());
    search(g, &q)
}

/// The four reach sets and four closed-ditrail flags of a rooted graph.
/// Indexing is by `[first sign][last sign]` via `Sign as usize`-style
/// accessors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachProfile {
    pub root: usize,
    sets: [[BTreeSet<usize>; 2]; 2],
    closed: [[bool; 2]; 2],
}

fn idx(s: Sign) -> usize {
    match s {
        Sign::Plus => 0,
        Sign::Minus => 1,
    }
}

impl ReachProfile {
    fn empty(root: usize) -> Self {
        let mut p = ReachProfile {
            root,
            sets: Default::default(),
            closed: [[false; 2]; 2],
        };
        // Trivial zero-edge memberships.
        for a in Sign::BOTH {
            p.sets[idx(a)][idx(a.flip())].insert(root);
        }
        p
    }

    /// R(α,β): vertices with an (α,β)-ditrail to the root.
    pub fn reach(&self, alpha: Sign, beta: Sign) -> &BTreeSet<usize> {
        &self.sets[idx(alpha)][idx(beta)]
    }

    /// R(α) = R(α,+) ∪ R(α,−).
    pub fn reach_any(&self, alpha: Sign) -> BTreeSet<usize> {
        self.reach(alpha, Sign::Plus)
            .union(self.reach(alpha, Sign::Minus))
            .copied()
            .collect()
    }

    /// Whether a nonempty closed (β,β′)-ditrail over the root exists.
    pub fn closed_over(&self, beta: Sign, beta2: Sign) -> bool {
        self.closed[idx(beta)][idx(beta2)]
    }

    fn insert(&mut self, alpha: Sign, beta: Sign, v: usize) {
        self.sets[idx(alpha)][idx(beta)].insert(v);
    }

    /// Builds a profile from raw membership/closure records (the
    /// oracle's output shape); the trivial memberships are added here.
    pub(crate) fn from_raw(
        root: usize,
        hits: &[(usize, Sign, Sign)],
        closed: &[(Sign, Sign)],
    ) -> Self {
        let mut p = ReachProfile::empty(root);
        for &(x, a, b) in hits {
            p.insert(a, b, x);
        }
        for &(a, b) in closed {
            p.set_closed(a, b);
        }
        p
    }

    fn set_closed(&mut self, beta: Sign, beta2: Sign) {
        self.closed[idx(beta)][idx(beta2)] = true;
        self.sets[idx(beta)][idx(beta2)].insert(self.root);
    }
}

/// Computes the reach profile of `r` with the search engine.
pub fn reach_profile(g: &BidirectedGraph, r: usize) -> Result<ReachProfile> {
    edge_bits(g)?;
    let mut p = ReachProfile::empty(r);
    for a in Sign::BOTH {
        for b in Sign::BOTH {
            for x in g.vertex_indices() {
                if x == r {
                    continue;
                }
                let q = TrailQuery::new(x, a, b, r);
                if search(g, &q)?.is_some() {
                    p.insert(a, b, x);
                }
            }
            let q = TrailQuery::new(r, a, b, r);
            if search(g, &q)?.is_some() {
                p.set_closed(a, b);
            }
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::Sign::{Minus, Plus};

    fn names(g: &BidirectedGraph, s: &BTreeSet<usize>) -> BTreeSet<String> {
        s.iter().map(|&v| g.vertex_name(v).to_string()).collect()
    }

    fn set(items: &[&str]) -> BTreeSet<String> {
        items.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn validate_accepts_coherent_trails() {
        let g = fixtures::f3();
        let (b, a, r) = (
            g.vertex("b").unwrap(),
            g.vertex("a").unwrap(),
            g.vertex("r").unwrap(),
        );
        let e1 = g.edge_by_id("e1").unwrap();
        let e2 = g.edge_by_id("e2").unwrap();
        let p = Ditrail {
            start: b,
            steps: vec![
                Step { edge: e2, tail: Plus, head: Minus, to: a },
                Step { edge: e1, tail: Plus, head: Minus, to: r },
            ],
        };
        assert!(validate_ditrail(&g, &p).unwrap());
        assert_eq!(p.first_sign(), Some(Plus));
        assert_eq!(p.last_sign(), Some(Minus));
    }

    #[test]
    fn validate_rejects_repeated_edge() {
        let g = fixtures::f2();
        let (r, a) = (g.vertex("r").unwrap(), g.vertex("a").unwrap());
        let e1 = g.edge_by_id("e1").unwrap();
        let p = Ditrail {
            start: r,
            steps: vec![
                Step { edge: e1, tail: Minus, head: Plus, to: a },
                Step { edge: e1, tail: Plus, head: Minus, to: r },
            ],
        };
        assert!(!validate_ditrail(&g, &p).unwrap());
    }

    #[test]
    fn validate_accepts_f2_cycle() {
        let g = fixtures::f2();
        let (r, a) = (g.vertex("r").unwrap(), g.vertex("a").unwrap());
        let e1 = g.edge_by_id("e1").unwrap();
        let e2 = g.edge_by_id("e2").unwrap();
        let p = Ditrail {
            start: r,
            steps: vec![
                Step { edge: e1, tail: Minus, head: Plus, to: a },
                Step { edge: e2, tail: Minus, head: Minus, to: r },
            ],
        };
        assert!(validate_ditrail(&g, &p).unwrap());
    }

    #[test]
    fn validate_rejects_incoherent_trail() {
        let g = fixtures::f2();
        let (r, a) = (g.vertex("r").unwrap(), g.vertex("a").unwrap());
        let e1 = g.edge_by_id("e1").unwrap();
        let e2 = g.edge_by_id("e2").unwrap();
        // claims sign + for a over e2, but a's sign over e2 is -
        let p = Ditrail {
            start: r,
            steps: vec![
                Step { edge: e1, tail: Minus, head: Plus, to: a },
                Step { edge: e2, tail: Plus, head: Minus, to: r },
            ],
        };
        assert!(!validate_ditrail(&g, &p).unwrap());
    }

    #[test]
    fn find_ditrail_basics() {
        let g = fixtures::f1();
        let (a, r) = (g.vertex("a").unwrap(), g.vertex("r").unwrap());
        let none = BTreeSet::new();
        let w = find_ditrail(&g, a, r, Plus, Minus, &none).unwrap().unwrap();
        assert_eq!(w.len(), 1);
        assert!(validate_ditrail(&g, &w).unwrap());
        assert!(find_ditrail(&g, a, r, Minus, Minus, &none).unwrap().is_none());
        // trivial convention at r
        let t = find_ditrail(&g, r, r, Plus, Minus, &none).unwrap().unwrap();
        assert!(t.is_empty());
        assert!(find_ditrail(&g, r, r, Plus, Plus, &none).unwrap().is_none());
    }

    #[test]
    fn forbidden_edges_are_avoided() {
        let g = fixtures::f2();
        let (a, r) = (g.vertex("a").unwrap(), g.vertex("r").unwrap());
        let e1: BTreeSet<usize> = [g.edge_by_id("e1").unwrap()].into();
        assert!(find_ditrail(&g, a, r, Plus, Minus, &e1).unwrap().is_none());
        assert!(find_ditrail(&g, a, r, Minus, Minus, &e1).unwrap().is_some());
    }

    #[test]
    fn profile_f0() {
        let g = fixtures::f0();
        let r = g.vertex("r").unwrap();
        let p = reach_profile(&g, r).unwrap();
        assert_eq!(names(&g, p.reach(Plus, Minus)), set(&["r"]));
        assert_eq!(names(&g, p.reach(Minus, Plus)), set(&["r"]));
        assert!(p.reach(Plus, Plus).is_empty());
        assert!(p.reach(Minus, Minus).is_empty());
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                assert!(!p.closed_over(a, b));
            }
        }
    }

    #[test]
    fn profile_f1() {
        let g = fixtures::f1();
        let p = reach_profile(&g, g.vertex("r").unwrap()).unwrap();
        assert_eq!(names(&g, p.reach(Plus, Minus)), set(&["a", "r"]));
        assert_eq!(names(&g, p.reach(Minus, Plus)), set(&["r"]));
        assert!(p.reach(Plus, Plus).is_empty());
        assert!(p.reach(Minus, Minus).is_empty());
    }

    #[test]
    fn profile_f2() {
        let g = fixtures::f2();
        let p = reach_profile(&g, g.vertex("r").unwrap()).unwrap();
        assert_eq!(names(&g, p.reach(Plus, Minus)), set(&["a", "r"]));
        assert_eq!(names(&g, p.reach(Minus, Minus)), set(&["a", "r"]));
        assert!(p.closed_over(Minus, Minus));
    }

    #[test]
    fn profile_f6() {
        let g = fixtures::f6();
        let p = reach_profile(&g, g.vertex("r").unwrap()).unwrap();
        assert_eq!(names(&g, p.reach(Plus, Minus)), set(&["a", "p", "r"]));
        assert_eq!(names(&g, p.reach(Minus, Minus)), set(&["a", "p"]));
        assert!(!p.closed_over(Minus, Minus));
    }

    #[test]
    fn profile_f7() {
        let g = fixtures::f7();
        let p = reach_profile(&g, g.vertex("r").unwrap()).unwrap();
        assert_eq!(names(&g, p.reach(Plus, Minus)), set(&["r", "x", "y"]));
        assert_eq!(names(&g, p.reach(Minus, Minus)), set(&["x", "y"]));
    }

    #[test]
    fn reversal_is_an_involution_and_flips_signs() {
        let g = fixtures::f3();
        let b = g.vertex("b").unwrap();
        let r = g.vertex("r").unwrap();
        let w = find_ditrail(&g, b, r, Plus, Minus, &BTreeSet::new())
            .unwrap()
            .unwrap();
        let rev = w.reversed();
        assert!(validate_ditrail(&g, &rev).unwrap());
        assert_eq!(rev.start, r);
        assert_eq!(rev.end_vertex(), b);
        assert_eq!(rev.first_sign(), Some(Minus));
        assert_eq!(rev.last_sign(), Some(Plus));
        assert_eq!(rev.reversed(), w);
    }

    #[test]
    fn loop_traversal_both_orders() {
        let mut g = BidirectedGraph::new();
        g.add_vertex("r").unwrap();
        g.add_vertex("a").unwrap();
        g.add_edge("e", "a", Sign::Plus, "r", Sign::Minus).unwrap();
        g.add_edge("l", "a", Sign::Minus, "a", Sign::Plus).unwrap();
        let a = g.vertex("a").unwrap();
        let r = g.vertex("r").unwrap();
        // Taking the loop - then + leaves head +, so the next tail must
        // be -, but e carries + at a: no (-,-)-ditrail from a.
        assert!(find_ditrail(&g, a, r, Minus, Minus, &BTreeSet::new())
            .unwrap()
            .is_none());
        // (-,+) closed at a via the loop alone? tail -, head + -> closed over a with pair (-,+).
        let p = reach_profile(&g, a).unwrap();
        assert!(p.closed_over(Minus, Plus));
        assert!(p.closed_over(Plus, Minus));
        assert!(!p.closed_over(Plus, Plus));
    }

    #[test]
    fn internal_vertex_blocking() {
        let g = fixtures::f3();
        let b = g.vertex("b").unwrap();
        let r = g.vertex("r").unwrap();
        let a = g.vertex("a").unwrap();
        let blocked: BTreeSet<usize> = [a].into();
        let q = TrailQuery::new(b, Plus, Minus, r).block_internal(g.vertex_count(), &blocked);
        assert!(search(&g, &q).unwrap().is_none());
    }

    #[test]
    fn guard_on_edge_count() {
        let mut g = BidirectedGraph::new();
        g.add_vertex("r").unwrap();
        for i in 0..129 {
            g.add_edge(&format!("l{i}"), "r", Plus, "r", Minus).unwrap();
        }
        assert!(matches!(
            reach_profile(&g, 0),
            Err(Error::Guard(_))
        ));
    }
}
