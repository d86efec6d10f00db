//! The BDG text format: one declaration per line, `#` comments.
//!
//! ```text
//! bdg 1
//! vertex r
//! vertex a
//! edge e1 a + r -
//! root r
//! sign +
//! ```

use crate::error::{Error, Result};
use crate::graph::{BidirectedGraph, Sign};

/// A parsed BDG document: the graph plus the optional root and
/// orientation annotations.
#[derive(Debug, Clone)]
pub struct BdgFile {
    pub graph: BidirectedGraph,
    pub root: Option<String>,
    pub sign: Option<Sign>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_sign(line: usize, tok: &str) -> Result<Sign> {
    if tok.len() == 1 {
        if let Some(s) = Sign::from_char(tok.chars().next().unwrap()) {
            return Ok(s);
        }
    }
    Err(perr(line, format!("expected + or -, got {tok}")))
}

pub fn parse(text: &str) -> Result<BdgFile> {
    let mut graph = BidirectedGraph::new();
    let mut root = None;
    let mut sign = None;
    let mut saw_header = false;
    for (i, raw) in text.lines().enumerate() {
        let lineno = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.is_empty() {
            continue;
        }
        if !saw_header {
            if toks != ["bdg", "1"] {
                return Err(perr(lineno, "expected header `bdg 1`"));
            }
            saw_header = true;
            continue;
        }
        match toks[0] {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(perr(lineno, "vertex takes one name"));
                }
                graph
                    .add_vertex(toks[1])
                    .map_err(|e| perr(lineno, e.to_string()))?;
            }
            "edge" => {
                if toks.len() != 6 {
                    return Err(perr(lineno, "edge takes: id u sign v sign"));
                }
                let su = parse_sign(lineno, toks[3])?;
                let sv = parse_sign(lineno, toks[5])?;
                graph
                    .add_edge(toks[1], toks[2], su, toks[4], sv)
                    .map_err(|e| perr(lineno, e.to_string()))?;
            }
            "root" => {
                if toks.len() != 2 {
                    return Err(perr(lineno, "root takes one vertex name"));
                }
                graph
                    .require_vertex(toks[1])
                    .map_err(|e| perr(lineno, e.to_string()))?;
                root = Some(toks[1].to_string());
            }
            "sign" => {
                if toks.len() != 2 {
                    return Err(perr(lineno, "sign takes + or -"));
                }
                sign = Some(parse_sign(lineno, toks[1])?);
            }
            other => return Err(perr(lineno, format!("unknown keyword {other}"))),
        }
    }
    if !saw_header {
        return Err(perr(1, "missing header `bdg 1`"));
    }
    Ok(BdgFile { graph, root, sign })
}

pub fn emit(graph: &BidirectedGraph, root: Option<&str>, sign: Option<Sign>) -> String {
    let mut out = String::from("bdg 1\n");
    for name in graph.vertex_names() {
        out.push_str(&format!("vertex {name}\n"));
    }
    for edge in graph.edges() {
        out.push_str(&format!(
            "edge {} {} {} {} {}\n",
            edge.id,
            graph.vertex_name(edge.ends[0].vertex),
            edge.ends[0].sign,
            graph.vertex_name(edge.ends[1].vertex),
            edge.ends[1].sign,
        ));
    }
    if let Some(r) = root {
        out.push_str(&format!("root {r}\n"));
    }
    if let Some(s) = sign {
        out.push_str(&format!("sign {s}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn round_trip_fixture() {
        let g = fixtures::f6();
        let text = emit(&g, Some("r"), Some(Sign::Plus));
        let parsed = parse(&text).unwrap();
        assert!(parsed.graph.same_labelled(&g));
        assert_eq!(parsed.root.as_deref(), Some("r"));
        assert_eq!(parsed.sign, Some(Sign::Plus));
        // emit is stable
        assert_eq!(emit(&parsed.graph, Some("r"), Some(Sign::Plus)), text);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let text = "bdg 1\n# a comment\n\nvertex r # trailing\nvertex a\nedge e1 a + r -\n";
        let parsed = parse(text).unwrap();
        assert!(parsed.graph.same_labelled(&fixtures::f1()));
    }

    #[test]
    fn loops_parse() {
        let text = "bdg 1\nvertex r\nedge l r + r -\n";
        let parsed = parse(text).unwrap();
        assert!(parsed.graph.edge(0).is_loop());
    }

    #[test]
    fn errors_are_line_numbered() {
        for (text, want_line) in [
            ("vertex r\n", 1),                           // missing header
            ("bdg 1\nfrob r\n", 2),                      // unknown keyword
            ("bdg 1\nvertex r\nvertex r\n", 3),          // duplicate vertex
            ("bdg 1\nvertex r\nedge e r ? r -\n", 3),    // bad sign
            ("bdg 1\nvertex r\nroot q\n", 3),            // unknown root
            ("bdg 1\nvertex r\nedge e r + q -\n", 3),    // unknown endpoint
        ] {
            match parse(text) {
                Err(Error::Parse { line, .. }) => assert_eq!(line, want_line, "{text:?}"),
                other => panic!("expected parse error for {text:?}, got {other:?}"),
            }
        }
        let dup = "bdg 1\nvertex r\nedge e r + r -\nedge e r + r -\n";
        assert!(matches!(parse(dup), Err(Error::Parse { line: 4, .. })));
    }
}
