//! Small named graphs used throughout the test suites, the certificate
//! catalog and the documentation.

use crate::graph::Graph;

/// Triangle on `{u,v,w}` with the `(u,v)`-edge doubled:
/// `a,b: u->v`, `c: w->u`, `d: v->w`.
pub fn theta3() -> Graph {
    Graph::with_names(
        &["u", "v", "w"],
        &[("a", 0, 1), ("b", 0, 1), ("c", 2, 0), ("d", 1, 2)],
    )
    .expect("static fixture")
}

/// Two digons sharing the vertex `u`: `a,b: u->v`, `c,d: w->u`.
pub fn digons2() -> Graph {
    Graph::with_names(
        &["u", "v", "w"],
        &[("a", 0, 1), ("b", 0, 1), ("c", 2, 0), ("d", 2, 0)],
    )
    .expect("static fixture")
}

/// A bridge `e` hanging off a 2-cycle: `e: 0->1`, `f: 1->2`, `g: 2->1`.
pub fn bridgecyc() -> Graph {
    Graph::with_names(&["0", "1", "2"], &[("e", 0, 1), ("f", 1, 2), ("g", 2, 1)])
        .expect("static fixture")
}

/// Two parallel edges: `a,b: 0->1`.
pub fn digon() -> Graph {
    Graph::with_names(&["0", "1"], &[("a", 0, 1), ("b", 0, 1)]).expect("static fixture")
}

/// Directed 2-cycle: `a: 0->1`, `b: 1->0`.
pub fn c2() -> Graph {
    Graph::with_names(&["0", "1"], &[("a", 0, 1), ("b", 1, 0)]).expect("static fixture")
}

/// One vertex with a single loop `l`.
pub fn loop1() -> Graph {
    Graph::with_names(&["0"], &[("l", 0, 0)]).expect("static fixture")
}

/// Directed cycle `e0: 0->1, ..., e{n-1}: n-1->0` (n >= 2).
pub fn cycle(n: usize) -> Graph {
    assert!(n >= 2);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let edges: Vec<(&str, u32, u32)> = (0..n)
        .map(|i| (edge_names[i].as_str(), i as u32, ((i + 1) % n) as u32))
        .collect();
    Graph::with_names(&name_refs, &edges).expect("static fixture")
}

pub fn c3() -> Graph {
    cycle(3)
}

/// Directed path `p0: 0->1, ..., p{n-2}: n-2->n-1`.
pub fn path_graph(n: usize) -> Graph {
    assert!(n >= 1);
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_names: Vec<String> = (0..n.saturating_sub(1)).map(|i| format!("p{i}")).collect();
    let edges: Vec<(&str, u32, u32)> = (0..n.saturating_sub(1))
        .map(|i| (edge_names[i].as_str(), i as u32, (i + 1) as u32))
        .collect();
    Graph::with_names(&name_refs, &edges).expect("static fixture")
}

/// `k` parallel edges `m0..m{k-1}: 0->1`.
pub fn parallel_edges(k: usize) -> Graph {
    assert!(k >= 1);
    let edge_names: Vec<String> = (0..k).map(|i| format!("m{i}")).collect();
    let edges: Vec<(&str, u32, u32)> = (0..k).map(|i| (edge_names[i].as_str(), 0, 1)).collect();
    Graph::with_names(&["0", "1"], &edges).expect("static fixture")
}

/// Cycle of length `n` with a pendant 2-edge path attached at vertex 0 and
/// a loop at vertex 1: the decorated variant used by the verification
/// suites (a cycle with a tree and a loop attached).
pub fn decorated_cycle(n: usize) -> Graph {
    assert!(n >= 2);
    let names: Vec<String> = (0..n + 2).map(|i| i.to_string()).collect();
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let edge_names: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
    let mut edges: Vec<(&str, u32, u32)> = (0..n)
        .map(|i| (edge_names[i].as_str(), i as u32, ((i + 1) % n) as u32))
        .collect();
    edges.push(("t0", 0, n as u32));
    edges.push(("t1", n as u32, n as u32 + 1));
    edges.push(("l0", 1, 1));
    Graph::with_names(&name_refs, &edges).expect("static fixture")
}
