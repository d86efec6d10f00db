//! Graphviz DOT export.
//!
//! Display convention: each edge end is drawn as an arrowhead decoration
//! at its vertex — a filled arrowhead for sign +, an open tee for
//! sign −. The root (when given) is double-circled. Output is
//! deterministic: vertices and edges are emitted in insertion order.

use crate::graph::{BidirectedGraph, Sign};

fn arrow(sign: Sign) -> &'static str {
    match sign {
        Sign::Plus => "normal",
        Sign::Minus => "otee",
    }
}

fn quote(name: &str) -> String {
    let mut out = String::with_capacity(name.len() + 2);
    out.push('"');
    for c in name.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

/// Renders `graph` as a DOT document; `root` (if any) is double-circled.
pub fn export(graph: &BidirectedGraph, root: Option<&str>) -> String {
    let mut out = String::from("graph bdg {\n");
    out.push_str("  node [shape=circle];\n");
    out.push_str("  edge [dir=both];\n");
    for name in graph.vertex_names() {
        let attrs = if root == Some(name.as_str()) {
            " [shape=doublecircle]"
        } else {
            ""
        };
        out.push_str(&format!("  {}{attrs};\n", quote(name)));
    }
    for edge in graph.edges() {
        // arrowtail decorates ends[0], arrowhead ends[1]
        out.push_str(&format!(
            "  {} -- {} [label={}, arrowtail={}, arrowhead={}];\n",
            quote(graph.vertex_name(edge.ends[0].vertex)),
            quote(graph.vertex_name(edge.ends[1].vertex)),
            quote(&edge.id),
            arrow(edge.ends[0].sign),
            arrow(edge.ends[1].sign),
        ));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_renders_stably() {
        let g = fixtures::f1();
        let a = export(&g, Some("r"));
        assert_eq!(a, export(&g, Some("r")));
        assert!(a.contains("doublecircle"));
        assert!(a.contains("arrowtail=normal"));
        assert!(a.contains("arrowhead=otee"));
        assert!(a.starts_with("graph bdg {"));
    }

    #[test]
    fn loops_and_quoting() {
        let mut g = crate::graph::BidirectedGraph::new();
        g.add_vertex("a\"b").unwrap();
        g.add_edge("l", "a\"b", Sign::Minus, "a\"b", Sign::Minus)
            .unwrap();
        let d = export(&g, None);
        assert!(d.contains("\"a\\\"b\" -- \"a\\\"b\""));
        assert!(d.contains("arrowtail=otee, arrowhead=otee"));
        assert!(!d.contains("doublecircle"));
    }
}
