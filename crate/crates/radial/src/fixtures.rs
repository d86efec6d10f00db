//! Small canonical graphs used across tests and docs. All are rooted at
//! `r` with orientation `+` unless stated otherwise.

use crate::graph::{BidirectedGraph, RootedGraph, Sign};

/// Single vertex `r`, no edges.
pub fn f0() -> BidirectedGraph {
    let mut g = BidirectedGraph::new();
    g.add_vertex("r").unwrap();
    g
}

/// `{r, a}` with e1 = (a:+, r:-).
pub fn f1() -> BidirectedGraph {
    let mut g = f0();
    g.add_vertex("a").unwrap();
    g.add_edge("e1", "a", Sign::Plus, "r", Sign::Minus).unwrap();
    g
}

/// F1 plus e2 = (a:-, r:-).
pub fn f2() -> BidirectedGraph {
    let mut g = f1();
    g.add_edge("e2", "a", Sign::Minus, "r", Sign::Minus).unwrap();
    g
}

/// `{r, a, b}` with e1 = (a:+, r:-), e2 = (b:+, a:-).
pub fn f3() -> BidirectedGraph {
    let mut g = f1();
    g.add_vertex("b").unwrap();
    g.add_edge("e2", "b", Sign::Plus, "a", Sign::Minus).unwrap();
    g
}

/// `{r, p, a}` with h1 = (a:+, p:-), h2 = (a:-, p:-), h3 = (r:-, p:+).
pub fn f6() -> BidirectedGraph {
    let mut g = BidirectedGraph::new();
    g.add_vertex("r").unwrap();
    g.add_vertex("p").unwrap();
    g.add_vertex("a").unwrap();
    g.add_edge("h1", "a", Sign::Plus, "p", Sign::Minus).unwrap();
    g.add_edge("h2", "a", Sign::Minus, "p", Sign::Minus).unwrap();
    g.add_edge("h3", "r", Sign::Minus, "p", Sign::Plus).unwrap();
    g
}

/// F6 with its root renamed to `s`; used as the left part of gluing
/// examples.
pub fn f6_rooted_s() -> BidirectedGraph {
    let mut g = BidirectedGraph::new();
    g.add_vertex("s").unwrap();
    g.add_vertex("p").unwrap();
    g.add_vertex("a6").unwrap();
    g.add_edge("h1", "a6", Sign::Plus, "p", Sign::Minus).unwrap();
    g.add_edge("h2", "a6", Sign::Minus, "p", Sign::Minus).unwrap();
    g.add_edge("h3", "s", Sign::Minus, "p", Sign::Plus).unwrap();
    g
}

/// `{r, x, y}` with e = (x:+, r:-), t1 = (x:-, y:+), t2 = (x:-, y:-).
pub fn f7() -> BidirectedGraph {
    let mut g = BidirectedGraph::new();
    g.add_vertex("r").unwrap();
    g.add_vertex("x").unwrap();
    g.add_vertex("y").unwrap();
    g.add_edge("e", "x", Sign::Plus, "r", Sign::Minus).unwrap();
    g.add_edge("t1", "x", Sign::Minus, "y", Sign::Plus).unwrap();
    g.add_edge("t2", "x", Sign::Minus, "y", Sign::Minus).unwrap();
    g
}

/// A fixture as a rooted graph with orientation `+`.
pub fn rooted(g: BidirectedGraph) -> RootedGraph {
    RootedGraph::new(g, "r", Sign::Plus).unwrap()
}
