//! Independent brute-force oracles used by the verification suites. These
//! deliberately avoid the decision rules of the main code paths: they
//! enumerate literal paths or iterate naive products until convergence.

use crate::error::Result;
use crate::fixpoint::ArrowTable;
use crate::graph::{Atom, Graph, Subgraph, VertexId};
use crate::paths::Step;
use crate::variety::{ArrowValue, VarietySpec};
use std::collections::HashSet;

/// Bounded-length existence check: is there a path with value `x` and
/// length at most `max_len` whose span stays inside `allowed`? Exhaustive
/// over `(vertex, net vector)` states, which deduplicate literal paths
/// without changing reachability within the budget.
pub fn realizable_by_enumeration(
    g: &Graph,
    allowed: &Subgraph,
    x: &ArrowValue,
    max_len: usize,
) -> Result<bool> {
    if !allowed.contains_vertex(x.src()) {
        return Ok(false);
    }
    let vec_len = match x.variety() {
        VarietySpec::Trivial => 0,
        _ => g.edge_count(),
    };
    let reduce = |v: &mut Vec<i64>| {
        if let VarietySpec::AbExp(n) = x.variety() {
            for slot in v.iter_mut() {
                *slot = slot.rem_euclid(n as i64);
            }
        }
    };
    let matches = |at: VertexId, vec: &[i64]| {
        at == x.dst()
            && match x.variety() {
                VarietySpec::Trivial => true,
                _ => vec == x.exponents(),
            }
    };
    let start = (x.src(), vec![0i64; vec_len]);
    if matches(start.0, &start.1) {
        return Ok(true);
    }
    let mut seen: HashSet<(VertexId, Vec<i64>)> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (at, vec) in frontier {
            for e in allowed.edges.iter() {
                let e = crate::graph::EdgeId(e);
                for step in [Step::fwd(e), Step::rev(e)] {
                    if step.src(g) != at || !allowed.contains_vertex(step.dst(g)) {
                        continue;
                    }
                    let mut v = vec.clone();
                    if vec_len > 0 {
                        v[e.index()] += step.sign.value();
                        reduce(&mut v);
                    }
                    let state = (step.dst(g), v);
                    if matches(state.0, &state.1) {
                        return Ok(true);
                    }
                    if seen.insert(state.clone()) {
                        next.push(state);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(false)
}

/// Naive avoidance closure: start from the arrows whose current anchor
/// misses `atom` and repeatedly add all pairwise products until nothing
/// changes. Compositions go through [`ArrowValue::compose`] and a linear
/// index search, not the engine's composition table.
pub fn naive_avoidance_closure(table: &ArrowTable, atom: Atom) -> Vec<bool> {
    let arrows = table.arrows();
    let mut in_set: Vec<bool> = (0..arrows.len())
        .map(|i| !table.anchor(i).contains_atom(atom))
        .collect();
    loop {
        let mut grew = false;
        for i in 0..arrows.len() {
            if !in_set[i] {
                continue;
            }
            for j in 0..arrows.len() {
                if !in_set[j] {
                    continue;
                }
                if let Ok(prod) = arrows[i].compose(&arrows[j]) {
                    let k = arrows
                        .iter()
                        .position(|a| *a == prod)
                        .expect("the table is closed under composition");
                    if !in_set[k] {
                        in_set[k] = true;
                        grew = true;
                    }
                }
            }
        }
        if !grew {
            return in_set;
        }
    }
}
