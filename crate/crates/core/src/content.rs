//! Level-0 subgraphs of an arrow: the Abelian content, the exact
//! intersection of all realizing spans (computed by avoidance tests), its
//! connected component at the source, and a brute-force enumeration oracle.

use crate::error::{Error, Result};
use crate::graph::{Graph, Subgraph, VertexId};
use crate::variety::{realizable_in, ArrowValue, VarietySpec};
use std::collections::HashSet;

/// Level-0 snapshot of one arrow.
///
/// `content` (defined for Abelian varieties) is the non-zero support plus
/// endpoints plus the source; `core` is the exact intersection of spanned
/// subgraphs over all realizing paths; `anchor` is the connected component
/// of `core` at the source. Always `content ⊆ core` and `anchor ⊆ core`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContentReport {
    pub arrow: ArrowValue,
    pub content: Subgraph,
    pub core: Subgraph,
    pub anchor: Subgraph,
}

/// Support edges with their endpoints, plus the source vertex.
pub fn abelian_content(g: &Graph, x: &ArrowValue) -> Result<Subgraph> {
    if !x.variety().is_abelian() {
        return Err(Error::UnsupportedVariety(
            "content is defined for Abelian varieties only".into(),
        ));
    }
    Ok(x.content_subgraph(g))
}

/// Exact intersection of `span(p)` over all paths `p` realizing `x`.
///
/// An edge belongs to the core iff `x` is not realizable with that edge
/// removed; a vertex (besides the endpoints) iff `x` is not realizable
/// with the vertex and its incident edges removed. Unavoidable edges force
/// their endpoints unavoidable, so the result is closed.
pub fn exact_core(g: &Graph, x: &ArrowValue) -> Result<Subgraph> {
    let full = Subgraph::full(g);
    if !realizable_in(g, &full, x)? {
        return Err(Error::Domain("arrow is not realizable in its graph".into()));
    }
    let mut core = Subgraph::single_vertex(x.src()).with_vertex(x.dst());
    for e in g.edge_ids() {
        let mut allowed = full;
        allowed.edges.remove(e.0);
        if !realizable_in(g, &allowed, x)? {
            core.edges.insert(e.0);
            let (a, b) = g.endpoints(e);
            core.vertices.insert(a.0);
            core.vertices.insert(b.0);
        }
    }
    for w in g.vertices() {
        if w == x.src() || w == x.dst() {
            continue;
        }
        let mut allowed = full;
        allowed.vertices.remove(w.0);
        for e in g.incident_edges(w) {
            allowed.edges.remove(e.0);
        }
        if !realizable_in(g, &allowed, x)? {
            core.vertices.insert(w.0);
        }
    }
    debug_assert!(core.is_closed(g));
    Ok(core)
}

/// Connected component of the exact core at the arrow's source.
pub fn core_anchor(g: &Graph, x: &ArrowValue) -> Result<Subgraph> {
    let core = exact_core(g, x)?;
    g.component_of(&core, x.src())
}

pub fn report(g: &Graph, x: &ArrowValue) -> Result<ContentReport> {
    let content = abelian_content(g, x)?;
    let core = exact_core(g, x)?;
    let anchor = g.component_of(&core, x.src())?;
    debug_assert!(content.is_subset_of(core));
    Ok(ContentReport {
        arrow: x.clone(),
        content,
        core,
        anchor,
    })
}

/// Intersection of spans over *all* paths with value `x` and length at
/// most `max_len`, by exhaustive state search — a superset of the exact
/// core by definition. Independent of the realizability decision rule.
///
/// States `(vertex, net vector, span)` deduplicate equal-length prefixes;
/// every reachable realizing state corresponds to at least one literal
/// path, and every path of length `<= max_len` reaches its state.
pub fn core_by_enumeration(g: &Graph, x: &ArrowValue, max_len: usize) -> Result<Subgraph> {
    if g.edge_count() > 6 || max_len > 12 {
        return Err(Error::Budget(format!(
            "enumeration oracle is limited to 6 edges and length 12, got {} edges, length {max_len}",
            g.edge_count()
        )));
    }
    let reduce = |v: &mut Vec<i64>| {
        if let VarietySpec::AbExp(n) = x.variety() {
            for slot in v.iter_mut() {
                *slot = slot.rem_euclid(n as i64);
            }
        }
    };
    let vec_len = match x.variety() {
        VarietySpec::Trivial => 0,
        _ => g.edge_count(),
    };
    let start = (x.src(), vec![0i64; vec_len], Subgraph::single_vertex(x.src()));
    let mut frontier = vec![start.clone()];
    let mut seen: HashSet<(VertexId, Vec<i64>, Subgraph)> = HashSet::new();
    seen.insert(start);
    let mut intersection: Option<Subgraph> = None;
    let mut absorb = |state: &(VertexId, Vec<i64>, Subgraph)| {
        let (at, vec, span) = state;
        let matches = *at == x.dst()
            && match x.variety() {
                VarietySpec::Trivial => true,
                _ => vec.as_slice() == x.exponents(),
            };
        if matches {
            intersection = Some(match intersection {
                None => *span,
                Some(acc) => acc.intersection(*span),
            });
        }
    };
    for s in &seen {
        absorb(s);
    }
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (at, vec, span) in frontier {
            for e in g.edge_ids() {
                for step in [crate::paths::Step::fwd(e), crate::paths::Step::rev(e)] {
                    if step.src(g) != at {
                        continue;
                    }
                    let mut v = vec.clone();
                    if vec_len > 0 {
                        v[e.index()] += step.sign.value();
                        reduce(&mut v);
                    }
                    let mut sp = span;
                    sp.edges.insert(e.0);
                    sp.vertices.insert(step.dst(g).0);
                    let state = (step.dst(g), v, sp);
                    if seen.insert(state.clone()) {
                        absorb(&state);
                        next.push(state);
                    }
                }
            }
        }
        frontier = next;
    }
    intersection.ok_or_else(|| {
        Error::Domain(format!(
            "no path of length <= {max_len} realizes {}",
            x.display(g)
        ))
    })
}
