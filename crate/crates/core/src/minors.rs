//! Minor containment up to redirection, the two-graph forbidden catalog,
//! the structural classifier for catalog-free graphs, and transport of
//! path words along loop deletion, bridge contraction and contraction
//! lifting.
//!
//! Directions never matter here: the minor order includes redirecting
//! edges, so all searches treat edges as unordered pairs.

use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{EdgeId, EditOp, Graph, Remap, VertexId};
use crate::paths::{PathWord, Step};

/// Default cap on the host's edge count for the disposition search
/// (3^|E| worst case). Override with the `*_with_budget` variants.
pub const MINOR_EDGE_BUDGET: usize = 10;

/// The two catalog graphs.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CatalogIndex {
    Theta3,
    Digons2,
}

impl CatalogIndex {
    pub fn all() -> [CatalogIndex; 2] {
        [CatalogIndex::Theta3, CatalogIndex::Digons2]
    }

    pub fn name(self) -> &'static str {
        match self {
            CatalogIndex::Theta3 => "theta3",
            CatalogIndex::Digons2 => "digons2",
        }
    }

    pub fn graph(self) -> Graph {
        match self {
            CatalogIndex::Theta3 => fixtures::theta3(),
            CatalogIndex::Digons2 => fixtures::digons2(),
        }
    }
}

/// How a minor sits inside the host: the edge dispositions plus the vertex
/// classes surviving into the minor.
#[derive(Clone, Debug)]
pub struct MinorWitness {
    pub deleted_edges: Vec<EdgeId>,
    /// Spanning-forest edges merged away, in a contractible order.
    pub contracted_edges: Vec<EdgeId>,
    pub deleted_vertices: Vec<VertexId>,
    /// Host vertex to minor vertex (`None` when deleted or merged away
    /// into a representative).
    pub vertex_map: Vec<Option<u32>>,
    /// Host edge to minor edge, for kept edges.
    pub edge_map: Vec<Option<u32>>,
}

/// Structural verdict for a connected graph: exactly one tag applies.
#[derive(Clone, Debug)]
pub enum StructureClass {
    /// A cycle of the given length (0 = a tree) with trees and loops
    /// attached, on at least 3 vertices.
    CycleWithDecorations { cycle_len: usize },
    /// At most 2 vertices, or a graph whose two-edge-connected core has at
    /// most 2 vertices.
    AtMostTwoVertices,
    ContainsForbidden {
        which: CatalogIndex,
        witness: MinorWitness,
    },
}

impl StructureClass {
    pub fn tag(&self) -> String {
        match self {
            StructureClass::CycleWithDecorations { cycle_len } => {
                format!("cycle-with-decorations({cycle_len})")
            }
            StructureClass::AtMostTwoVertices => "at-most-two-vertices".into(),
            StructureClass::ContainsForbidden { which, .. } => {
                format!("contains-forbidden({})", which.name())
            }
        }
    }

    pub fn is_forbidden(&self) -> bool {
        matches!(self, StructureClass::ContainsForbidden { .. })
    }
}

fn permutations(n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut items: Vec<u32> = (0..n as u32).collect();
    fn heap(k: usize, items: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn sorted_pairs(pairs: &mut Vec<(u32, u32)>) {
    for p in pairs.iter_mut() {
        if p.0 > p.1 {
            *p = (p.1, p.0);
        }
    }
    pairs.sort_unstable();
}

fn undirected_pairs(g: &Graph) -> Vec<(u32, u32)> {
    let mut pairs: Vec<(u32, u32)> = g
        .edge_ids()
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (u.0, v.0)
        })
        .collect();
    sorted_pairs(&mut pairs);
    pairs
}

/// Canonical code of the undirected multigraph underlying `g`: the vertex
/// count plus the least edge-pair list over all vertex permutations. Two
/// graphs get equal codes exactly when they are related by isomorphism
/// plus redirection. Brute-force permutation search: desk scale only.
pub fn canonical_code(g: &Graph) -> Result<(usize, Vec<(u32, u32)>)> {
    let n = g.vertex_count();
    if n > 8 {
        return Err(Error::Budget(format!(
            "canonical code is limited to 8 vertices, got {n}"
        )));
    }
    let base = undirected_pairs(g);
    let mut best: Option<Vec<(u32, u32)>> = None;
    for perm in permutations(n) {
        let mut mapped: Vec<(u32, u32)> = base
            .iter()
            .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
            .collect();
        sorted_pairs(&mut mapped);
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    }
    Ok((n, best.unwrap_or_default()))
}

/// Renders a canonical code as e.g. `3:0-1,0-1,0-2,1-2`.
pub fn code_string(code: &(usize, Vec<(u32, u32)>)) -> String {
    let pairs: Vec<String> = code.1.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    format!("{}:{}", code.0, pairs.join(","))
}

/// Isomorphic up to redirection.
pub fn undirected_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    Ok(canonical_code(a)? == canonical_code(b)?)
}

struct DispositionSearch<'a> {
    g: &'a Graph,
    h_pairs: Vec<(u32, u32)>,
    h_vertices: usize,
}

impl<'a> DispositionSearch<'a> {
    /// Tries one (keep, contract) split; deleted = the rest. Returns a
    /// witness if the quotient matches `h` up to iso + redirection.
    fn try_disposition(&self, keep: u64, contract: u64) -> Option<MinorWitness> {
        let g = self.g;
        let nv = g.vertex_count();
        // classes under the contract set; forest edges actually merge
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut forest: Vec<EdgeId> = Vec::new();
        let mut redundant: Vec<EdgeId> = Vec::new();
        for e in g.edge_ids() {
            if contract >> e.0 & 1 == 0 {
                continue;
            }
            let (u, v) = g.endpoints(e);
            let (ru, rv) = (find(&mut parent, u.index()), find(&mut parent, v.index()));
            if ru == rv {
                redundant.push(e);
            } else {
                parent[ru] = rv;
                forest.push(e);
            }
        }
        // representative = least vertex of the class
        let mut rep = vec![usize::MAX; nv];
        for v in 0..nv {
            let r = find(&mut parent, v);
            rep[r] = rep[r].min(v);
        }
        let class_of = |parent: &mut Vec<usize>, v: usize| rep[find(parent, v)];

        let mut kept_pairs: Vec<(u32, u32)> = Vec::new();
        let mut kept_edges: Vec<EdgeId> = Vec::new();
        let mut touched: Vec<usize> = Vec::new();
        for e in g.edge_ids() {
            if keep >> e.0 & 1 == 0 {
                continue;
            }
            let (u, v) = g.endpoints(e);
            let (cu, cv) = (
                class_of(&mut parent, u.index()),
                class_of(&mut parent, v.index()),
            );
            kept_pairs.push((cu as u32, cv as u32));
            kept_edges.push(e);
            touched.push(cu);
            touched.push(cv);
        }
        touched.sort_unstable();
        touched.dedup();
        if touched.len() > self.h_vertices {
            return None;
        }
        // pad with the first isolated classes; they are interchangeable
        let mut slots = touched.clone();
        let mut all_classes: Vec<usize> = (0..nv)
            .filter(|&v| find(&mut parent, v) == v)
            .map(|r| rep[r])
            .collect();
        all_classes.sort_unstable();
        for c in &all_classes {
            if slots.len() == self.h_vertices {
                break;
            }
            if !touched.contains(c) {
                slots.push(*c);
            }
        }
        if slots.len() != self.h_vertices {
            return None;
        }
        slots.sort_unstable();
        let slot_of = |class: usize| slots.iter().position(|&c| c == class).unwrap() as u32;

        let mut candidate: Vec<(u32, u32)> = kept_pairs
            .iter()
            .map(|&(a, b)| (slot_of(a as usize), slot_of(b as usize)))
            .collect();
        sorted_pairs(&mut candidate);
        if candidate.len() != self.h_pairs.len() {
            return None;
        }

        // find a slot permutation matching h's pair multiset
        let perm = permutations(self.h_vertices).into_iter().find(|perm| {
            let mut mapped: Vec<(u32, u32)> = candidate
                .iter()
                .map(|&(a, b)| (perm[a as usize], perm[b as usize]))
                .collect();
            sorted_pairs(&mut mapped);
            mapped == self.h_pairs
        })?;

        // assemble the witness
        let mut vertex_map: Vec<Option<u32>> = vec![None; nv];
        let mut deleted_vertices = Vec::new();
        for v in 0..nv {
            let c = class_of(&mut parent, v);
            if slots.contains(&c) {
                if c == v {
                    vertex_map[v] = Some(perm[slot_of(c) as usize]);
                }
            } else if c == v {
                deleted_vertices.push(VertexId(v as u32));
            }
        }
        // dropped classes also delete their merged members
        for v in 0..nv {
            let c = class_of(&mut parent, v);
            if !slots.contains(&c) && c != v {
                deleted_vertices.push(VertexId(v as u32));
            }
        }
        deleted_vertices.sort_unstable();

        // greedy assignment of kept host edges to minor edges per pair bucket
        let h_slots: Vec<(u32, u32)> = {
            let mut hp = self.h_pairs.clone();
            hp.sort_unstable();
            hp
        };
        let mut h_used = vec![false; h_slots.len()];
        let mut edge_map: Vec<Option<u32>> = vec![None; self.g.edge_count()];
        for (i, e) in kept_edges.iter().enumerate() {
            let (a, b) = kept_pairs[i];
            let (mut x, mut y) = (
                perm[slot_of(a as usize) as usize],
                perm[slot_of(b as usize) as usize],
            );
            if x > y {
                std::mem::swap(&mut x, &mut y);
            }
            let j = h_slots
                .iter()
                .enumerate()
                .position(|(j, &p)| !h_used[j] && p == (x, y))
                .expect("multisets match");
            h_used[j] = true;
            edge_map[e.index()] = Some(j as u32);
        }

        let mut deleted_edges: Vec<EdgeId> = g
            .edge_ids()
            .filter(|&e| keep >> e.0 & 1 == 0 && contract >> e.0 & 1 == 0)
            .collect();
        deleted_edges.extend(redundant);
        // edges contracted inside dropped classes are deletions as well
        let mut contracted = Vec::new();
        for e in forest {
            let (u, _) = g.endpoints(e);
            let c = class_of(&mut parent, u.index());
            if slots.contains(&c) {
                contracted.push(e);
            } else {
                deleted_edges.push(e);
            }
        }
        deleted_edges.sort_unstable();
        Some(MinorWitness {
            deleted_edges,
            contracted_edges: contracted,
            deleted_vertices,
            vertex_map,
            edge_map,
        })
    }
}

/// Whether `h` is a minor of `g` up to redirection, with an embedding
/// witness. Backtracking over edge dispositions (keep, delete, contract)
/// with count pruning; exhaustive at desk scale.
pub fn minor_contains(g: &Graph, h: &Graph) -> Result<Option<MinorWitness>> {
    minor_contains_with_budget(g, h, MINOR_EDGE_BUDGET)
}

pub fn minor_contains_with_budget(
    g: &Graph,
    h: &Graph,
    budget: usize,
) -> Result<Option<MinorWitness>> {
    if g.edge_count() > budget {
        return Err(Error::Budget(format!(
            "minor search over {} edges exceeds the budget of {budget}",
            g.edge_count()
        )));
    }
    if h.vertex_count() > 6 {
        return Err(Error::Budget(format!(
            "minor patterns are limited to 6 vertices, got {}",
            h.vertex_count()
        )));
    }
    if h.edge_count() > g.edge_count() || h.vertex_count() > g.vertex_count() {
        return Ok(None);
    }
    let mut h_pairs = undirected_pairs(h);
    h_pairs.sort_unstable();
    let search = DispositionSearch {
        g,
        h_pairs,
        h_vertices: h.vertex_count(),
    };
    let ne = g.edge_count();
    let want = h.edge_count() as u32;
    for keep in 0u64..1 << ne {
        if keep.count_ones() != want {
            continue;
        }
        let rest: Vec<u32> = (0..ne as u32).filter(|&e| keep >> e & 1 == 0).collect();
        for mask in 0u64..1 << rest.len() {
            let mut contract = 0u64;
            for (i, &e) in rest.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    contract |= 1 << e;
                }
            }
            if let Some(w) = search.try_disposition(keep, contract) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Replays a witness on the host graph: deletes, then removes dropped
/// vertices, then contracts the forest. The result is the embedded minor.
pub fn replay_witness(g: &Graph, w: &MinorWitness) -> Result<Graph> {
    let mut cur = g.clone();
    for &e in &w.deleted_edges {
        let name = g.edge_name(e).to_string();
        let id = cur
            .find_edge(&name)
            .ok_or_else(|| Error::Domain(format!("replay lost edge {name:?}")))?;
        cur = cur.edit(EditOp::DeleteEdge(id))?.0;
    }
    for &v in &w.deleted_vertices {
        let name = g.vertex_name(v).to_string();
        let id = cur
            .find_vertex(&name)
            .ok_or_else(|| Error::Domain(format!("replay lost vertex {name:?}")))?;
        cur = cur.edit(EditOp::DeleteVertex(id))?.0;
    }
    for &e in &w.contracted_edges {
        let name = g.edge_name(e).to_string();
        let id = cur
            .find_edge(&name)
            .ok_or_else(|| Error::Domain(format!("replay lost edge {name:?}")))?;
        cur = cur.edit(EditOp::ContractEdge(id))?.0;
    }
    Ok(cur)
}

/// Non-loop edges after iteratively stripping leaves: the graph's core.
/// Returns the surviving vertex ids and edge pairs.
fn stripped_core(g: &Graph) -> (Vec<u32>, Vec<(u32, u32)>) {
    let mut edges: Vec<(u32, u32)> = g
        .edge_ids()
        .filter(|&e| !g.is_loop(e))
        .map(|e| {
            let (u, v) = g.endpoints(e);
            (u.0, v.0)
        })
        .collect();
    let mut alive: Vec<bool> = vec![true; g.vertex_count()];
    loop {
        let mut deg = vec![0usize; g.vertex_count()];
        for &(u, v) in &edges {
            deg[u as usize] += 1;
            deg[v as usize] += 1;
        }
        let leaf = (0..g.vertex_count()).find(|&v| alive[v] && deg[v] == 1);
        match leaf {
            None => break,
            Some(v) => {
                alive[v] = false;
                edges.retain(|&(a, b)| a as usize != v && b as usize != v);
            }
        }
    }
    let mut kept: Vec<u32> = (0..g.vertex_count() as u32)
        .filter(|&v| alive[v as usize])
        .collect();
    // a stripped tree leaves lone vertices; keep the least as the core
    if !edges.is_empty() {
        let mut touched: Vec<u32> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        touched.sort_unstable();
        touched.dedup();
        kept = touched;
    } else {
        kept.truncate(1);
        if kept.is_empty() {
            kept.push(0);
        }
    }
    (kept, edges)
}

/// Whether the non-loop edges of `g` form a tree (the only graphs holding
/// for the trivial variety).
pub fn is_tree_with_loops(g: &Graph) -> bool {
    if !g.is_connected() {
        return false;
    }
    let nonloop = g.edge_ids().filter(|&e| !g.is_loop(e)).count();
    nonloop + 1 == g.vertex_count()
}

/// Classifies a connected graph: a forbidden catalog minor with witness,
/// or the structural tag of the catalog-free shapes (a cycle with trees
/// and loops attached, or a graph whose two-edge-connected core has at
/// most 2 vertices). Exactly one tag applies.
pub fn has_forbidden_minor(g: &Graph) -> Result<StructureClass> {
    has_forbidden_minor_with_budget(g, MINOR_EDGE_BUDGET)
}

pub fn has_forbidden_minor_with_budget(g: &Graph, budget: usize) -> Result<StructureClass> {
    if !g.is_connected() {
        return Err(Error::Domain(
            "structure classification requires a connected graph".into(),
        ));
    }
    for which in CatalogIndex::all() {
        if let Some(witness) = minor_contains_with_budget(g, &which.graph(), budget)? {
            return Ok(StructureClass::ContainsForbidden { which, witness });
        }
    }
    if g.vertex_count() <= 2 {
        return Ok(StructureClass::AtMostTwoVertices);
    }
    let (core_vertices, core_edges) = stripped_core(g);
    if core_edges.is_empty() {
        return Ok(StructureClass::CycleWithDecorations { cycle_len: 0 });
    }
    let mut deg = std::collections::HashMap::new();
    for &(u, v) in &core_edges {
        *deg.entry(u).or_insert(0usize) += 1;
        *deg.entry(v).or_insert(0usize) += 1;
    }
    if deg.values().all(|&d| d == 2) {
        return Ok(StructureClass::CycleWithDecorations {
            cycle_len: core_edges.len(),
        });
    }
    if core_vertices.len() <= 2 {
        return Ok(StructureClass::AtMostTwoVertices);
    }
    Err(Error::Domain(
        "structural dichotomy violated: catalog-free graph with a large non-cycle core".into(),
    ))
}

/// Removes every traversal of the loop `e` and transports the word into
/// the loop-free graph. Realizing paths stay realizing for the projected
/// arrow.
pub fn strip_loop(g: &Graph, e: EdgeId, p: &PathWord) -> Result<(Graph, Remap, PathWord)> {
    g.check_edge(e)?;
    if !g.is_loop(e) {
        return Err(Error::Domain(format!(
            "edge {} is not a loop",
            g.edge_name(e)
        )));
    }
    let (target, remap) = g.edit(EditOp::DeleteEdge(e))?;
    let steps: Vec<Step> = p
        .steps()
        .iter()
        .filter(|s| s.edge != e)
        .map(|s| Step {
            edge: remap.edge_map[s.edge.index()].expect("only the loop is removed"),
            sign: s.sign,
        })
        .collect();
    let start = remap.vertex_map[p.start().index()].expect("vertices survive edge deletion");
    let q = PathWord::new(&target, start, steps)?;
    Ok((target, remap, q))
}

/// Word image under contracting the non-loop edge `e`: occurrences of `e`
/// are dropped, everything else is remapped.
pub fn project_over_contraction(
    g: &Graph,
    e: EdgeId,
    p: &PathWord,
) -> Result<(Graph, Remap, PathWord)> {
    g.check_edge(e)?;
    let (target, remap) = g.edit(EditOp::ContractEdge(e))?;
    let steps: Vec<Step> = p
        .steps()
        .iter()
        .filter(|s| s.edge != e)
        .map(|s| Step {
            edge: remap.edge_map[s.edge.index()].expect("only the contracted edge is removed"),
            sign: s.sign,
        })
        .collect();
    let start = remap.vertex_map[p.start().index()].expect("contraction keeps a representative");
    let q = PathWord::new(&target, start, steps)?;
    Ok((target, remap, q))
}

/// Contracts a bridge and transports the word; the two sides of the bridge
/// merge, so dropping its traversals keeps the word consecutive.
pub fn contract_bridge(g: &Graph, e: EdgeId, p: &PathWord) -> Result<(Graph, Remap, PathWord)> {
    g.check_edge(e)?;
    if !g.bridges().contains(e.0) {
        return Err(Error::Domain(format!(
            "edge {} is not a bridge",
            g.edge_name(e)
        )));
    }
    project_over_contraction(g, e, p)
}

/// Lifts a word from the contraction `g/e` back to `g`: after every dart
/// arriving at the tail of `e` the lift traverses `e` forwards, and before
/// every dart departing from the tail it traverses `e` backwards, so the
/// merged junctions all meet at the head of `e`. Contracting the lift
/// recovers the input word.
pub fn lift_over_contraction(g: &Graph, e: EdgeId, p: &PathWord) -> Result<PathWord> {
    g.check_edge(e)?;
    if g.is_loop(e) {
        return Err(Error::Domain(format!(
            "edge {} is a loop and has no contraction",
            g.edge_name(e)
        )));
    }
    let (contracted, remap) = g.edit(EditOp::ContractEdge(e))?;
    // re-validate the word against our own contraction
    let p = PathWord::new(&contracted, p.start(), p.steps().to_vec()).map_err(|err| {
        Error::Domain(format!("path does not live in the contracted graph: {err}"))
    })?;
    let (u, v) = g.endpoints(e);
    let merged = remap.vertex_map[u.index()].expect("contraction keeps a representative");

    let mut preimage_edge = vec![None; contracted.edge_count()];
    for f in g.edge_ids() {
        if let Some(nf) = remap.edge_map[f.index()] {
            preimage_edge[nf.index()] = Some(f);
        }
    }
    let mut preimage_vertex = vec![None; contracted.vertex_count()];
    for w in g.vertices() {
        if w == u || w == v {
            continue;
        }
        if let Some(nw) = remap.vertex_map[w.index()] {
            preimage_vertex[nw.index()] = Some(w);
        }
    }

    let mut steps = Vec::with_capacity(p.len() * 2);
    for s in p.steps() {
        let f = preimage_edge[s.edge.index()].expect("every contracted-graph edge has a preimage");
        let step = Step { edge: f, sign: s.sign };
        if step.src(g) == u {
            steps.push(Step::rev(e));
        }
        steps.push(step);
        if step.dst(g) == u {
            steps.push(Step::fwd(e));
        }
    }
    let start = if p.start() == merged {
        v
    } else {
        preimage_vertex[p.start().index()].expect("unmerged vertices have unique preimages")
    };
    PathWord::new(g, start, steps)
}
