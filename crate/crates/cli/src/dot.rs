//! Deterministic DOT export with optional subgraph highlighting.

use bpe_core::graph::{Graph, Subgraph};
use bpe_core::{Error, Result};

/// Renders the graph in DOT, one node/edge per line in id order. Highlight
/// members are filled (vertices) or colored (edges).
pub fn export_dot(g: &Graph, highlight: Option<&Subgraph>) -> String {
    let mut out = String::from("digraph {\n");
    for v in g.vertices() {
        let marked = highlight.is_some_and(|h| h.contains_vertex(v));
        if marked {
            out.push_str(&format!(
                "  \"{}\" [style=filled fillcolor=gold];\n",
                g.vertex_name(v)
            ));
        } else {
            out.push_str(&format!("  \"{}\";\n", g.vertex_name(v)));
        }
    }
    for e in g.edge_ids() {
        let (u, v) = g.endpoints(e);
        let marked = highlight.is_some_and(|h| h.contains_edge(e));
        let extra = if marked { " color=red penwidth=2" } else { "" };
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"{}];\n",
            g.vertex_name(u),
            g.vertex_name(v),
            g.edge_name(e),
            extra
        ));
    }
    out.push_str("}\n");
    out
}

/// Parses a highlight spec `v1,v2;e1,e2` (either side may be empty) into a
/// subgraph of `g`.
pub fn parse_highlight(g: &Graph, spec: &str) -> Result<Subgraph> {
    let (vs, es) = spec
        .split_once(';')
        .ok_or_else(|| Error::Format("highlight spec needs `vertices;edges`".into()))?;
    let mut s = Subgraph::EMPTY;
    for name in vs.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        let v = g
            .find_vertex(name)
            .ok_or_else(|| Error::Format(format!("unknown vertex {name:?}")))?;
        s.vertices.insert(v.0);
    }
    for name in es.split(',').map(str::trim).filter(|n| !n.is_empty()) {
        let e = g
            .find_edge(name)
            .ok_or_else(|| Error::Format(format!("unknown edge {name:?}")))?;
        s.edges.insert(e.0);
        let (a, b) = g.endpoints(e);
        s.vertices.insert(a.0);
        s.vertices.insert(b.0);
    }
    Ok(s)
}
