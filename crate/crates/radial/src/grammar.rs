//! Structural membership decisions for the three construction
//! grammars, by memoized reverse search (peeling ears or clause edges).
//! Intended for small graphs; guarded by edge count.
//!
//! The bases are extended in two places relative to the pure ear
//! clauses, so that the grammars exactly match their definitional
//! predicates (verified exhaustively in tests):
//! - nacset additionally contains the bare root graph, and its
//!   root-edge clause admits loops over the root whose traversals
//!   cannot close a (−α,−α)-ditrail (at least one end signed α).

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, RootedGraph, Sign};

const GRAMMAR_MAX_EDGES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grammar {
    /// Absolute semiradials: bare root + repeated diear addition.
    Sqrset,
    /// Strong radials: a closed (−α,−α) base ear + repeated diears.
    Acset,
    /// Almost strong radials: strong radial hung off the root by a
    /// (−α,β)-edge, α-signed root edges, and root-merges.
    Nacset,
}

#[derive(PartialEq, Eq, Hash, Clone, Copy)]
struct Key {
    grammar: Grammar,
    root: usize,
    alpha: Sign, // ignored for sqrset
    vset: u64,
    eset: u128,
}

struct Decider<'g> {
    g: &'g BidirectedGraph,
    memo: HashMap<Key, bool>,
}

fn bits_v(s: &BTreeSet<usize>) -> u64 {
    s.iter().fold(0, |acc, &v| acc | 1 << v)
}

fn bits_e(s: &BTreeSet<usize>) -> u128 {
    s.iter().fold(0, |acc, &e| acc | 1 << e)
}

impl<'g> Decider<'g> {
    /// Vertices touched by the edge set, plus the root.
    fn support(&self, root: usize, eset: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut v: BTreeSet<usize> = [root].into();
        for &e in eset {
            for end in self.g.edge(e).ends {
                v.insert(end.vertex);
            }
        }
        v
    }

    /// Does some diear relative to (svset, base) have edge set exactly
    /// `d` and touch exactly the vertices of `extra` outside svset?
    fn is_exact_diear(
        &self,
        svset: &BTreeSet<usize>,
        d: &BTreeSet<usize>,
        extra: &BTreeSet<usize>,
    ) -> bool {
        // Simple: a ditrail over exactly d, endpoints in svset,
        // internals outside.
        for &y in svset {
            if self.simple_trail_covers(y, svset, d, extra) {
                return true;
            }
        }
        // Scoop: grip yx crossing svset, loop walk over exactly the
        // rest, closed (−γ,−γ) at x, vertices outside svset.
        for &grip in d {
            let e = self.g.edge(grip);
            if e.is_loop() {
                continue;
            }
            let (a, b) = (e.ends[0], e.ends[1]);
            let (_y, x) = if svset.contains(&a.vertex) && !svset.contains(&b.vertex) {
                (a, b)
            } else if svset.contains(&b.vertex) && !svset.contains(&a.vertex) {
                (b, a)
            } else {
                continue;
            };
            let rest: BTreeSet<usize> = d.iter().copied().filter(|&f| f != grip).collect();
            if rest.is_empty() {
                continue;
            }
            let need = x.sign.flip();
            if self.walk_covers(
                x.vertex, need, need, x.vertex, &rest, svset, extra, BTreeSet::new(),
            ) {
                return true;
            }
        }
        false
    }

    fn simple_trail_covers(
        &self,
        y: usize,
        svset: &BTreeSet<usize>,
        d: &BTreeSet<usize>,
        extra: &BTreeSet<usize>,
    ) -> bool {
        for a in Sign::BOTH {
            for b in Sign::BOTH {
                if self.walk_covers(y, a, b, usize::MAX, d, svset, extra, BTreeSet::new()) {
                    return true;
                }
            }
        }
        false
    }

    /// Exhaustive trail search using exactly the edges `d`: from `v`
    /// with next tail sign `need0`, ending with head sign `endsign` at
    /// `endat` (usize::MAX = any vertex of svset), internal vertices
    /// outside svset, visited `extra` vertices tracked for coverage.
    #[allow(clippy::too_many_arguments)]
    fn walk_covers(
        &self,
        v: usize,
        need0: Sign,
        endsign: Sign,
        endat: usize,
        d: &BTreeSet<usize>,
        svset: &BTreeSet<usize>,
        extra: &BTreeSet<usize>,
        seen_extra: BTreeSet<usize>,
    ) -> bool {
        fn rec(
            me: &Decider,
            v: usize,
            need: Sign,
            used: &mut BTreeSet<usize>,
            seen: &mut BTreeSet<usize>,
            endsign: Sign,
            endat: usize,
            d: &BTreeSet<usize>,
            svset: &BTreeSet<usize>,
            extra: &BTreeSet<usize>,
        ) -> bool {
            for &e in d {
                if used.contains(&e) {
                    continue;
                }
                let edge = me.g.edge(e);
                let mut arr: Vec<(Sign, usize)> = Vec::new();
                if edge.is_loop() {
                    if edge.ends[0].vertex == v {
                        let (s0, s1) = (edge.ends[0].sign, edge.ends[1].sign);
                        if s0 == need {
                            arr.push((s1, v));
                        }
                        if s1 == need && s1 != s0 {
                            arr.push((s0, v));
                        }
                    }
                } else if edge.touches(v) && edge.sign_at(v) == need {
                    let o = edge.other_end(v);
                    arr.push((o.sign, o.vertex));
                }
                for (head, to) in arr {
                    used.insert(e);
                    let newly = extra.contains(&to) && seen.insert(to);
                    let done = used.len() == d.len()
                        && head == endsign
                        && (if endat == usize::MAX {
                            svset.contains(&to)
                        } else {
                            to == endat
                        })
                        && seen.len() == extra.len();
                    if done {
                        return true;
                    }
                    // continue only if `to` may be internal
                    let may_pass = if endat == usize::MAX {
                        !svset.contains(&to)
                    } else {
                        to != endat || true // scoop walks may revisit x
                    } && !svset.contains(&to);
                    if may_pass
                        && rec(me, to, head.flip(), used, seen, endsign, endat, d, svset, extra)
                    {
                        return true;
                    }
                    used.remove(&e);
                    if newly {
                        seen.remove(&to);
                    }
                }
            }
            false
        }
        let mut used = BTreeSet::new();
        let mut seen = seen_extra;
        if extra.contains(&v) {
            seen.insert(v);
        }
        rec(
            self, v, need0, &mut used, &mut seen, endsign, endat, d, svset, extra,
        )
    }

    fn decide(
        &mut self,
        grammar: Grammar,
        root: usize,
        alpha: Sign,
        vset: &BTreeSet<usize>,
        eset: &BTreeSet<usize>,
    ) -> bool {
        let key = Key {
            grammar,
            root,
            alpha,
            vset: bits_v(vset),
            eset: bits_e(eset),
        };
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        self.memo.insert(key, false); // break cycles pessimistically
        let result = self.decide_inner(grammar, root, alpha, vset, eset);
        self.memo.insert(key, result);
        result
    }

    fn decide_inner(
        &mut self,
        grammar: Grammar,
        root: usize,
        alpha: Sign,
        vset: &BTreeSet<usize>,
        eset: &BTreeSet<usize>,
    ) -> bool {
        if !vset.contains(&root) {
            return false;
        }
        // Grammar members never carry isolated non-root vertices.
        if *vset != self.support(root, eset) {
            return false;
        }
        let root_only: BTreeSet<usize> = [root].into();
        // Bases.
        match grammar {
            Grammar::Sqrset => {
                if eset.is_empty() {
                    return vset.len() == 1;
                }
            }
            Grammar::Acset => {
                let extra: BTreeSet<usize> =
                    vset.iter().copied().filter(|&v| v != root).collect();
                let na = alpha.flip();
                if !eset.is_empty()
                    && self.walk_covers(
                        root, na, na, root, eset, &root_only, &extra, BTreeSet::new(),
                    )
                {
                    return true;
                }
            }
            Grammar::Nacset => {
                // extension: the bare root is almost strong
                if eset.is_empty() {
                    return vset.len() == 1;
                }
                if self.nacset_clauses(root, alpha, vset, eset) {
                    return true;
                }
            }
        }
        // Inductive ear-peel for sqrset/acset.
        if grammar != Grammar::Nacset {
            let edges: Vec<usize> = eset.iter().copied().collect();
            let m = edges.len();
            for mask in 1u32..(1 << m) {
                let d: BTreeSet<usize> = (0..m)
                    .filter(|&i| mask >> i & 1 == 1)
                    .map(|i| edges[i])
                    .collect();
                let rest: BTreeSet<usize> = eset.difference(&d).copied().collect();
                let hv = self.support(root, &rest);
                let extra: BTreeSet<usize> = vset.difference(&hv).copied().collect();
                if self.is_exact_diear(&hv, &d, &extra)
                    && self.decide(grammar, root, alpha, &hv, &rest)
                {
                    return true;
                }
            }
        }
        false
    }

    fn nacset_clauses(
        &mut self,
        root: usize,
        alpha: Sign,
        vset: &BTreeSet<usize>,
        eset: &BTreeSet<usize>,
    ) -> bool {
        let na = alpha.flip();
        let root_edges: Vec<usize> = eset
            .iter()
            .copied()
            .filter(|&e| self.g.edge(e).touches(root))
            .collect();
        // Clause: G' + rr' where G' is a strong β-radial with root r',
        // the root hangs by that single (−α at r, β at r') edge.
        if root_edges.len() == 1 {
            let e = self.g.edge(root_edges[0]);
            if !e.is_loop() && e.sign_at(root) == na {
                let rp = e.other_end(root).vertex;
                let beta = e.other_end(root).sign;
                let rest: BTreeSet<usize> = eset
                    .iter()
                    .copied()
                    .filter(|&x| x != root_edges[0])
                    .collect();
                let hv: BTreeSet<usize> = vset.iter().copied().filter(|&v| v != root).collect();
                if hv == self.support(rp, &rest)
                    && self.decide(Grammar::Acset, rp, beta, &hv, &rest)
                {
                    return true;
                }
            }
        }
        // Clause: G'' + rv with the sign of r over rv equal to α
        // (extension: loops over r qualify when at least one end is α).
        for &re in &root_edges {
            let e = self.g.edge(re);
            let qualifies = if e.is_loop() {
                e.ends[0].sign == alpha || e.ends[1].sign == alpha
            } else {
                e.sign_at(root) == alpha
            };
            if !qualifies {
                continue;
            }
            let rest: BTreeSet<usize> = eset.iter().copied().filter(|&x| x != re).collect();
            let hv = self.support(root, &rest);
            // v must remain a vertex of G''
            let v = if e.is_loop() {
                root
            } else {
                e.other_end(root).vertex
            };
            if hv.contains(&v)
                && *vset == {
                    let mut w = hv.clone();
                    w.insert(v);
                    w
                }
                && self.decide(Grammar::Nacset, root, alpha, &hv, &rest)
            {
                return true;
            }
        }
        // Clause: root-merge of two members. Split by the attachment
        // units of the root: components of G − r with their root edges,
        // and each loop over r on its own.
        let units = self.root_units(root, vset, eset);
        if units.len() >= 2 {
            let k = units.len();
            for mask in 0u32..(1 << (k - 1)) {
                // unit 0 always stays on side 1 to avoid mirror splits
                let mut v1: BTreeSet<usize> = [root].into();
                let mut e1: BTreeSet<usize> = BTreeSet::new();
                let mut v2: BTreeSet<usize> = [root].into();
                let mut e2: BTreeSet<usize> = BTreeSet::new();
                for (i, (uv, ue)) in units.iter().enumerate() {
                    let side1 = i == 0 || mask >> (i - 1) & 1 == 1;
                    if side1 {
                        v1.extend(uv);
                        e1.extend(ue);
                    } else {
                        v2.extend(uv);
                        e2.extend(ue);
                    }
                }
                if e2.is_empty() {
                    continue;
                }
                if self.decide(Grammar::Nacset, root, alpha, &v1, &e1)
                    && self.decide(Grammar::Nacset, root, alpha, &v2, &e2)
                {
                    return true;
                }
            }
        }
        false
    }

    /// Attachment units at the root: each connected component of
    /// G − root together with its root edges, plus each loop over the
    /// root as a singleton unit.
    fn root_units(
        &self,
        root: usize,
        vset: &BTreeSet<usize>,
        eset: &BTreeSet<usize>,
    ) -> Vec<(BTreeSet<usize>, BTreeSet<usize>)> {
        let others: Vec<usize> = vset.iter().copied().filter(|&v| v != root).collect();
        let mut comp: HashMap<usize, usize> = others.iter().map(|&v| (v, v)).collect();
        fn find(comp: &mut HashMap<usize, usize>, v: usize) -> usize {
            let p = comp[&v];
            if p == v {
                v
            } else {
                let r = find(comp, p);
                comp.insert(v, r);
                r
            }
        }
        for &e in eset {
            let edge = self.g.edge(e);
            let (a, b) = (edge.ends[0].vertex, edge.ends[1].vertex);
            if a != root && b != root && a != b {
                let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
                comp.insert(ra, rb);
            }
        }
        let mut units: HashMap<usize, (BTreeSet<usize>, BTreeSet<usize>)> = HashMap::new();
        for &v in &others {
            let rt = find(&mut comp, v);
            units.entry(rt).or_default().0.insert(v);
        }
        let mut loops = Vec::new();
        for &e in eset {
            let edge = self.g.edge(e);
            let (a, b) = (edge.ends[0].vertex, edge.ends[1].vertex);
            if edge.is_loop() {
                if a == root {
                    loops.push(([root].into(), [e].into()));
                } else {
                    let rt = find(&mut comp, a);
                    units.entry(rt).or_default().1.insert(e);
                }
            } else if a == root || b == root {
                let v = if a == root { b } else { a };
                let rt = find(&mut comp, v);
                units.entry(rt).or_default().1.insert(e);
            } else {
                let rt = find(&mut comp, a);
                units.entry(rt).or_default().1.insert(e);
            }
        }
        let mut out: Vec<_> = units.into_values().collect();
        out.sort();
        out.extend(loops);
        out
    }
}

fn check_guard(g: &BidirectedGraph) -> Result<()> {
    if g.edge_count() > GRAMMAR_MAX_EDGES {
        return Err(Error::Guard(format!(
            "grammar membership bound is {GRAMMAR_MAX_EDGES} edges, graph has {}",
            g.edge_count()
        )));
    }
    Ok(())
}

/// Structural membership of `rg` in the given grammar.
pub fn in_grammar(rg: &RootedGraph, grammar: Grammar) -> Result<bool> {
    check_guard(&rg.graph)?;
    let g = &rg.graph;
    let vset: BTreeSet<usize> = g.vertex_indices().collect();
    let eset: BTreeSet<usize> = (0..g.edge_count()).collect();
    let mut d = Decider {
        g,
        memo: HashMap::new(),
    };
    Ok(d.decide(grammar, rg.root, rg.orientation, &vset, &eset))
}
