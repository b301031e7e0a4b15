//! Finite directed multigraphs with loops and parallel edges, the bitset
//! subgraph lattice, connectivity and bridge analysis, and the elementary
//! edit operations (delete, contract, redirect) underlying minors.
//!
//! Graphs are immutable values. Edits return a fresh graph together with the
//! id remapping. Vertex and edge ids are dense `0..n` within one graph, and
//! ascending id order is the canonical iteration order everywhere.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Hard cap so that vertex and edge sets fit a single machine word.
pub const MAX_VERTICES: usize = 64;
pub const MAX_EDGES: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of a subgraph: a vertex or an edge of the host graph.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Atom {
    Vertex(VertexId),
    Edge(EdgeId),
}

/// Set of up to 64 small ids, used for both vertex and edge sets.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(n: usize) -> AtomSet {
        debug_assert!(n <= 64);
        if n == 64 {
            AtomSet(!0)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: u32) -> AtomSet {
        AtomSet(1 << i)
    }

    pub fn contains(self, i: u32) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: u32) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: u32) {
        self.0 &= !(1 << i);
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn first(self) -> Option<u32> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros())
        }
    }

    pub fn iter(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(i)
            }
        })
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// A subgraph of a fixed host graph: a vertex set and an edge set closed
/// under endpoints. All set algebra is bitwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Subgraph {
    pub vertices: AtomSet,
    pub edges: AtomSet,
}

impl Subgraph {
    pub const EMPTY: Subgraph = Subgraph {
        vertices: AtomSet::EMPTY,
        edges: AtomSet::EMPTY,
    };

    pub fn full(g: &Graph) -> Subgraph {
        Subgraph {
            vertices: AtomSet::full(g.vertex_count()),
            edges: AtomSet::full(g.edge_count()),
        }
    }

    pub fn single_vertex(v: VertexId) -> Subgraph {
        Subgraph {
            vertices: AtomSet::singleton(v.0),
            edges: AtomSet::EMPTY,
        }
    }

    /// Smallest closed subgraph containing the given edges.
    pub fn from_edges(g: &Graph, edges: impl IntoIterator<Item = EdgeId>) -> Subgraph {
        let mut s = Subgraph::EMPTY;
        for e in edges {
            let (u, v) = g.endpoints(e);
            s.edges.insert(e.0);
            s.vertices.insert(u.0);
            s.vertices.insert(v.0);
        }
        s
    }

    pub fn with_vertex(mut self, v: VertexId) -> Subgraph {
        self.vertices.insert(v.0);
        self
    }

    pub fn union(self, other: Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.union(other.vertices),
            edges: self.edges.union(other.edges),
        }
    }

    pub fn intersection(self, other: Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.intersection(other.vertices),
            edges: self.edges.intersection(other.edges),
        }
    }

    pub fn is_subset_of(self, other: Subgraph) -> bool {
        self.vertices.is_subset_of(other.vertices) && self.edges.is_subset_of(other.edges)
    }

    pub fn is_empty(self) -> bool {
        self.vertices.is_empty() && self.edges.is_empty()
    }

    pub fn contains_vertex(self, v: VertexId) -> bool {
        self.vertices.contains(v.0)
    }

    pub fn contains_edge(self, e: EdgeId) -> bool {
        self.edges.contains(e.0)
    }

    pub fn contains_atom(self, a: Atom) -> bool {
        match a {
            Atom::Vertex(v) => self.contains_vertex(v),
            Atom::Edge(e) => self.contains_edge(e),
        }
    }

    /// Every edge of the set has both endpoints in the vertex set.
    pub fn is_closed(self, g: &Graph) -> bool {
        self.edges.iter().all(|e| {
            let (u, v) = g.endpoints(EdgeId(e));
            self.vertices.contains(u.0) && self.vertices.contains(v.0)
        })
    }

    /// Renders as `{v1,v2;e1,e2}` using the host graph's names.
    pub fn display(&self, g: &Graph) -> String {
        let vs: Vec<&str> = self.vertices.iter().map(|v| g.vertex_name(VertexId(v))).collect();
        let es: Vec<&str> = self.edges.iter().map(|e| g.edge_name(EdgeId(e))).collect();
        format!("{{{};{}}}", vs.join(","), es.join(","))
    }
}

/// Graph edit operations. `DeleteVertex` cascades to incident edges;
/// `ContractEdge` rejects loops.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EditOp {
    DeleteEdge(EdgeId),
    DeleteVertex(VertexId),
    ContractEdge(EdgeId),
    RedirectEdge(EdgeId),
}

/// Id remapping from an edit: `None` marks a removed id.
#[derive(Clone, Debug)]
pub struct Remap {
    pub vertex_map: Vec<Option<VertexId>>,
    pub edge_map: Vec<Option<EdgeId>>,
}

/// Breadth-first spanning tree of one connected component.
#[derive(Clone, Debug)]
pub(crate) struct BfsTree {
    /// Visit order; the root comes first.
    pub order: Vec<VertexId>,
    /// Parent vertex and connecting edge, indexed by vertex id.
    pub parent: Vec<Option<(VertexId, EdgeId)>>,
}

/// A finite directed multigraph. Endpoint lookups are by dense id; every
/// vertex and edge also carries a unique display name used by the file
/// format, the path syntax and traces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    edge_names: Vec<String>,
    edge_list: Vec<(VertexId, VertexId)>,
}

fn check_name(kind: &str, name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || "':;,{}".contains(c)) {
        return Err(Error::Format(format!(
            "{kind} name {name:?} is empty or contains reserved characters"
        )));
    }
    Ok(())
}

impl Graph {
    /// Builds a graph with default names (`0`, `1`, ... for vertices and
    /// `e0`, `e1`, ... for edges).
    pub fn new(vertex_count: usize, edges: &[(u32, u32)]) -> Result<Graph> {
        let vertex_names = (0..vertex_count).map(|i| i.to_string()).collect();
        let edge_list = edges
            .iter()
            .enumerate()
            .map(|(j, &(s, d))| (format!("e{j}"), s, d))
            .collect();
        Graph::with_names_vec(vertex_names, edge_list)
    }

    /// Builds a graph from named edges with numeric endpoints.
    pub fn with_names(vertices: &[&str], edges: &[(&str, u32, u32)]) -> Result<Graph> {
        Graph::with_names_vec(
            vertices.iter().map(|s| s.to_string()).collect(),
            edges
                .iter()
                .map(|&(n, s, d)| (n.to_string(), s, d))
                .collect(),
        )
    }

    fn with_names_vec(vertex_names: Vec<String>, edges: Vec<(String, u32, u32)>) -> Result<Graph> {
        if vertex_names.len() > MAX_VERTICES {
            return Err(Error::Domain(format!(
                "too many vertices: {} > {MAX_VERTICES}",
                vertex_names.len()
            )));
        }
        if edges.len() > MAX_EDGES {
            return Err(Error::Domain(format!(
                "too many edges: {} > {MAX_EDGES}",
                edges.len()
            )));
        }
        for n in &vertex_names {
            check_name("vertex", n)?;
        }
        let mut seen = std::collections::HashSet::new();
        for n in &vertex_names {
            if !seen.insert(n.clone()) {
                return Err(Error::Format(format!("duplicate vertex name {n:?}")));
            }
        }
        let mut edge_names = Vec::with_capacity(edges.len());
        let mut edge_list = Vec::with_capacity(edges.len());
        let mut seen_e = std::collections::HashSet::new();
        for (name, s, d) in edges {
            check_name("edge", &name)?;
            if !seen_e.insert(name.clone()) {
                return Err(Error::Format(format!("duplicate edge name {name:?}")));
            }
            if s as usize >= vertex_names.len() || d as usize >= vertex_names.len() {
                return Err(Error::Domain(format!(
                    "edge {name:?} endpoint out of range"
                )));
            }
            edge_names.push(name);
            edge_list.push((VertexId(s), VertexId(d)));
        }
        Ok(Graph {
            vertex_names,
            edge_names,
            edge_list,
        })
    }

    /// Builds a graph from the file representation (names only); internal
    /// ids are assigned in file order.
    pub fn from_file(file: &GraphFile) -> Result<Graph> {
        let mut edges = Vec::with_capacity(file.edges.len());
        for e in &file.edges {
            let s = file
                .vertices
                .iter()
                .position(|v| *v == e.src)
                .ok_or_else(|| Error::Format(format!("edge {:?}: unknown vertex {:?}", e.id, e.src)))?;
            let d = file
                .vertices
                .iter()
                .position(|v| *v == e.dst)
                .ok_or_else(|| Error::Format(format!("edge {:?}: unknown vertex {:?}", e.id, e.dst)))?;
            edges.push((e.id.clone(), s as u32, d as u32));
        }
        Graph::with_names_vec(file.vertices.clone(), edges)
    }

    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            vertices: self.vertex_names.clone(),
            edges: self
                .edge_list
                .iter()
                .zip(&self.edge_names)
                .map(|(&(s, d), name)| EdgeFile {
                    id: name.clone(),
                    src: self.vertex_names[s.index()].clone(),
                    dst: self.vertex_names[d.index()].clone(),
                })
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Graph> {
        let file: GraphFile =
            serde_json::from_str(text).map_err(|e| Error::Format(format!("graph json: {e}")))?;
        Graph::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_list.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> {
        (0..self.edge_count() as u32).map(EdgeId)
    }

    /// Canonical atom order: all vertices ascending, then all edges ascending.
    pub fn atoms(&self) -> Vec<Atom> {
        self.vertices()
            .map(Atom::Vertex)
            .chain(self.edge_ids().map(Atom::Edge))
            .collect()
    }

    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edge_list[e.index()]
    }

    pub fn edge_src(&self, e: EdgeId) -> VertexId {
        self.edge_list[e.index()].0
    }

    pub fn edge_dst(&self, e: EdgeId) -> VertexId {
        self.edge_list[e.index()].1
    }

    pub fn is_loop(&self, e: EdgeId) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertex_names[v.index()]
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edge_names[e.index()]
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertex_names
            .iter()
            .position(|n| n == name)
            .map(|i| VertexId(i as u32))
    }

    pub fn find_edge(&self, name: &str) -> Option<EdgeId> {
        self.edge_names
            .iter()
            .position(|n| n == name)
            .map(|i| EdgeId(i as u32))
    }

    pub fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v.index() >= self.vertex_count() {
            return Err(Error::Domain(format!("vertex id {v} out of range")));
        }
        Ok(())
    }

    pub fn check_edge(&self, e: EdgeId) -> Result<()> {
        if e.index() >= self.edge_count() {
            return Err(Error::Domain(format!("edge id {e} out of range")));
        }
        Ok(())
    }

    /// Edges incident to `v`, ascending, loops included once.
    pub fn incident_edges(&self, v: VertexId) -> impl Iterator<Item = EdgeId> + '_ {
        self.edge_ids().filter(move |&e| {
            let (a, b) = self.endpoints(e);
            a == v || b == v
        })
    }

    /// Maximal connected (undirected) sub-subgraph of `s` containing `v`.
    pub fn component_of(&self, s: &Subgraph, v: VertexId) -> Result<Subgraph> {
        self.check_vertex(v)?;
        if !s.contains_vertex(v) {
            return Err(Error::Domain(format!(
                "vertex {} not in the subgraph",
                self.vertex_name(v)
            )));
        }
        debug_assert!(s.is_closed(self));
        let mut visited = AtomSet::singleton(v.0);
        loop {
            let mut grew = false;
            for e in s.edges.iter() {
                let (a, b) = self.endpoints(EdgeId(e));
                let (av, bv) = (visited.contains(a.0), visited.contains(b.0));
                if av != bv {
                    visited.insert(a.0);
                    visited.insert(b.0);
                    grew = true;
                }
            }
            if !grew {
                break;
            }
        }
        let mut edges = AtomSet::EMPTY;
        for e in s.edges.iter() {
            let (a, b) = self.endpoints(EdgeId(e));
            if visited.contains(a.0) && visited.contains(b.0) {
                edges.insert(e);
            }
        }
        Ok(Subgraph {
            vertices: visited,
            edges,
        })
    }

    /// Connected components of `s` in ascending order of their least vertex.
    /// They partition the vertices and edges of `s`.
    pub fn components(&self, s: &Subgraph) -> Vec<Subgraph> {
        let mut out = Vec::new();
        let mut seen = AtomSet::EMPTY;
        for v in s.vertices.iter() {
            if !seen.contains(v) {
                let c = self
                    .component_of(s, VertexId(v))
                    .expect("vertex taken from the subgraph");
                seen = seen.union(c.vertices);
                out.push(c);
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count() <= 1 {
            return true;
        }
        let full = Subgraph::full(self);
        self.component_of(&full, VertexId(0))
            .map(|c| c.vertices == full.vertices)
            .unwrap_or(false)
    }

    /// Edges whose removal disconnects their component, computed by a
    /// lowlink depth-first search over the undirected view. Loops and
    /// parallel edges are never bridges.
    pub fn bridges(&self) -> AtomSet {
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(EdgeId, VertexId)>> = vec![Vec::new(); n];
        for e in self.edge_ids() {
            let (u, v) = self.endpoints(e);
            if u == v {
                continue;
            }
            adj[u.index()].push((e, v));
            adj[v.index()].push((e, u));
        }
        struct State<'a> {
            adj: &'a [Vec<(EdgeId, VertexId)>],
            disc: Vec<Option<u32>>,
            low: Vec<u32>,
            timer: u32,
            bridges: AtomSet,
        }
        fn dfs(st: &mut State, v: usize, via: Option<EdgeId>) {
            st.disc[v] = Some(st.timer);
            st.low[v] = st.timer;
            st.timer += 1;
            for k in 0..st.adj[v].len() {
                let (e, w) = st.adj[v][k];
                if Some(e) == via {
                    continue;
                }
                match st.disc[w.index()] {
                    None => {
                        dfs(st, w.index(), Some(e));
                        st.low[v] = st.low[v].min(st.low[w.index()]);
                        if st.low[w.index()] > st.disc[v].unwrap() {
                            st.bridges.insert(e.0);
                        }
                    }
                    Some(d) => st.low[v] = st.low[v].min(d),
                }
            }
        }
        let mut st = State {
            adj: &adj,
            disc: vec![None; n],
            low: vec![0; n],
            timer: 0,
            bridges: AtomSet::EMPTY,
        };
        for v in 0..n {
            if st.disc[v].is_none() {
                dfs(&mut st, v, None);
            }
        }
        st.bridges
    }

    pub fn is_two_edge_connected(&self) -> bool {
        self.is_connected() && self.bridges().is_empty()
    }

    /// Applies one edit and returns the new graph plus the id remapping.
    pub fn edit(&self, op: EditOp) -> Result<(Graph, Remap)> {
        match op {
            EditOp::DeleteEdge(e) => {
                self.check_edge(e)?;
                self.rebuild(|v| Some(v), |f| f != e, |f| self.endpoints(f))
            }
            EditOp::DeleteVertex(v) => {
                self.check_vertex(v)?;
                self.rebuild(
                    |w| if w == v { None } else { Some(w) },
                    |f| {
                        let (a, b) = self.endpoints(f);
                        a != v && b != v
                    },
                    |f| self.endpoints(f),
                )
            }
            EditOp::ContractEdge(e) => {
                self.check_edge(e)?;
                let (u, v) = self.endpoints(e);
                if u == v {
                    return Err(Error::Domain(format!(
                        "cannot contract loop {}",
                        self.edge_name(e)
                    )));
                }
                let (keep, drop) = if u < v { (u, v) } else { (v, u) };
                self.rebuild(
                    |w| {
                        if w == drop {
                            Some(keep)
                        } else {
                            Some(w)
                        }
                    },
                    |f| f != e,
                    |f| self.endpoints(f),
                )
            }
            EditOp::RedirectEdge(e) => {
                self.check_edge(e)?;
                self.rebuild(
                    |v| Some(v),
                    |_| true,
                    |f| {
                        let (a, b) = self.endpoints(f);
                        if f == e {
                            (b, a)
                        } else {
                            (a, b)
                        }
                    },
                )
            }
        }
    }

    /// Rebuilds with dense re-indexed ids. `vertex_image` sends an old
    /// vertex to its surviving representative (possibly another old vertex)
    /// or `None` for deletion; `keep_edge` filters edges; `endpoints_of`
    /// supplies (possibly redirected) old endpoints.
    fn rebuild(
        &self,
        vertex_image: impl Fn(VertexId) -> Option<VertexId>,
        keep_edge: impl Fn(EdgeId) -> bool,
        endpoints_of: impl Fn(EdgeId) -> (VertexId, VertexId),
    ) -> Result<(Graph, Remap)> {
        // Survivors are representatives in ascending old-id order.
        let mut new_id = vec![None; self.vertex_count()];
        let mut vertex_names = Vec::new();
        for v in self.vertices() {
            if vertex_image(v) == Some(v) {
                new_id[v.index()] = Some(VertexId(vertex_names.len() as u32));
                vertex_names.push(self.vertex_names[v.index()].clone());
            }
        }
        let vertex_map: Vec<Option<VertexId>> = self
            .vertices()
            .map(|v| vertex_image(v).and_then(|rep| new_id[rep.index()]))
            .collect();

        let mut edge_map = vec![None; self.edge_count()];
        let mut edge_names = Vec::new();
        let mut edge_list = Vec::new();
        for e in self.edge_ids() {
            if !keep_edge(e) {
                continue;
            }
            let (a, b) = endpoints_of(e);
            let (na, nb) = match (vertex_map[a.index()], vertex_map[b.index()]) {
                (Some(na), Some(nb)) => (na, nb),
                _ => continue,
            };
            edge_map[e.index()] = Some(EdgeId(edge_names.len() as u32));
            edge_names.push(self.edge_names[e.index()].clone());
            edge_list.push((na, nb));
        }
        Ok((
            Graph {
                vertex_names,
                edge_names,
                edge_list,
            },
            Remap {
                vertex_map,
                edge_map,
            },
        ))
    }

    /// Extracts a closed subgraph as a standalone graph with dense ids,
    /// keeping names and ascending order.
    pub fn extract(&self, s: &Subgraph) -> Result<(Graph, Remap)> {
        if !s.is_closed(self) {
            return Err(Error::Domain(
                "cannot extract a subgraph that is not closed under endpoints".into(),
            ));
        }
        self.rebuild(
            |v| if s.contains_vertex(v) { Some(v) } else { None },
            |e| s.contains_edge(e),
            |e| self.endpoints(e),
        )
    }

    /// Breadth-first spanning tree of the component of `root` inside
    /// `within`, scanning edges in ascending id order.
    pub(crate) fn bfs_tree(&self, root: VertexId, within: &Subgraph) -> BfsTree {
        let mut parent = vec![None; self.vertex_count()];
        let mut order = vec![root];
        let mut seen = AtomSet::singleton(root.0);
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for e in within.edges.iter() {
                let (a, b) = self.endpoints(EdgeId(e));
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen.contains(other.0) && within.contains_vertex(other) {
                    seen.insert(other.0);
                    parent[other.index()] = Some((v, EdgeId(e)));
                    order.push(other);
                }
            }
        }
        BfsTree { order, parent }
    }
}

/// On-disk representation: `{"vertices": [name, ...], "edges": [{"id":
/// name, "src": name, "dst": name}, ...]}`. Round-trips exactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeFile {
    pub id: String,
    pub src: String,
    pub dst: String,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn component_of_connected_graph_is_whole() {
        let g = fixtures::theta3();
        let full = Subgraph::full(&g);
        let c = g.component_of(&full, VertexId(0)).unwrap();
        assert_eq!(c, full);
    }

    #[test]
    fn component_of_isolated_anchor() {
        // Vertex 0 together with the far 2-cycle of the bridge fixture:
        // 0 is isolated inside that subgraph.
        let g = fixtures::bridgecyc();
        let f = g.find_edge("f").unwrap();
        let gg = g.find_edge("g").unwrap();
        let s = Subgraph::from_edges(&g, [f, gg]).with_vertex(VertexId(0));
        let c = g.component_of(&s, VertexId(0)).unwrap();
        assert_eq!(c, Subgraph::single_vertex(VertexId(0)));
    }

    #[test]
    fn component_of_requires_membership() {
        let g = fixtures::digon();
        let s = Subgraph::single_vertex(VertexId(0));
        assert!(g.component_of(&s, VertexId(1)).is_err());
    }

    #[test]
    fn component_of_edgeless_pair() {
        let g = fixtures::digon();
        let s = Subgraph {
            vertices: AtomSet::full(2),
            edges: AtomSet::EMPTY,
        };
        let c = g.component_of(&s, VertexId(1)).unwrap();
        assert_eq!(c, Subgraph::single_vertex(VertexId(1)));
    }

    #[test]
    fn components_partition() {
        let g = fixtures::bridgecyc();
        let e = g.find_edge("e").unwrap();
        let mut s = Subgraph::full(&g);
        s.edges.remove(e.0);
        let comps = g.components(&s);
        assert_eq!(comps.len(), 2);
        let mut vs = AtomSet::EMPTY;
        let mut es = AtomSet::EMPTY;
        for c in &comps {
            assert!(c.is_closed(&g));
            assert!(vs.intersection(c.vertices).is_empty());
            vs = vs.union(c.vertices);
            es = es.union(c.edges);
        }
        assert_eq!(vs, s.vertices);
        assert_eq!(es, s.edges);
    }

    #[test]
    fn bridges_of_fixtures() {
        let g = fixtures::bridgecyc();
        let e = g.find_edge("e").unwrap();
        assert_eq!(g.bridges(), AtomSet::singleton(e.0));

        assert!(fixtures::theta3().bridges().is_empty());

        let p = fixtures::path_graph(3);
        assert_eq!(p.bridges(), AtomSet::full(2));
    }

    #[test]
    fn loops_are_never_bridges() {
        let g = Graph::new(2, &[(0, 1), (0, 0), (1, 1)]).unwrap();
        assert_eq!(g.bridges(), AtomSet::singleton(0));
    }

    /// Lowlink bridges agree with single-edge-deletion component counting.
    #[test]
    fn bridges_match_brute_force() {
        for g in [
            fixtures::theta3(),
            fixtures::digons2(),
            fixtures::bridgecyc(),
            fixtures::digon(),
            fixtures::c2(),
            fixtures::cycle(5),
            fixtures::path_graph(4),
            fixtures::loop1(),
            fixtures::decorated_cycle(4),
        ] {
            let full = Subgraph::full(&g);
            let base = g.components(&full).len();
            for e in g.edge_ids() {
                let (h, _) = g.edit(EditOp::DeleteEdge(e)).unwrap();
                let after = h.components(&Subgraph::full(&h)).len();
                assert_eq!(
                    g.bridges().contains(e.0),
                    after > base,
                    "edge {} of {:?}",
                    g.edge_name(e),
                    g
                );
            }
        }
    }

    #[test]
    fn delete_parallel_edge_leaves_triangle() {
        let g = fixtures::theta3();
        let b = g.find_edge("b").unwrap();
        let (h, remap) = g.edit(EditOp::DeleteEdge(b)).unwrap();
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert!(h.is_connected());
        assert!(h.bridges().is_empty());
        assert_eq!(remap.edge_map[b.index()], None);
    }

    #[test]
    fn contract_merges_endpoints() {
        let g = fixtures::theta3();
        let d = g.find_edge("d").unwrap();
        let (h, _) = g.edit(EditOp::ContractEdge(d)).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 3);
        assert!(h.edge_ids().all(|e| !h.is_loop(e)));
    }

    #[test]
    fn contract_loop_rejected() {
        let g = fixtures::loop1();
        assert!(g.edit(EditOp::ContractEdge(EdgeId(0))).is_err());
    }

    #[test]
    fn redirect_turns_cycle_into_digon() {
        let g = fixtures::c2();
        let b = g.find_edge("b").unwrap();
        let (h, _) = g.edit(EditOp::RedirectEdge(b)).unwrap();
        assert_eq!(h.edge_src(b), VertexId(0));
        assert_eq!(h.edge_dst(b), VertexId(1));
    }

    #[test]
    fn delete_vertex_cascades() {
        let g = fixtures::theta3();
        let (h, remap) = g.edit(EditOp::DeleteVertex(VertexId(0))).unwrap();
        // a, b, c all touch vertex 0; only d survives.
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edge_name(EdgeId(0)), "d");
        assert_eq!(remap.vertex_map[0], None);
    }

    #[test]
    fn remap_is_bijective_on_survivors() {
        let g = fixtures::theta3();
        for op in [
            EditOp::DeleteEdge(EdgeId(1)),
            EditOp::DeleteVertex(VertexId(2)),
            EditOp::ContractEdge(EdgeId(3)),
        ] {
            let (h, remap) = g.edit(op).unwrap();
            let mut seen_v = std::collections::HashSet::new();
            for v in remap.vertex_map.iter().flatten() {
                assert!(v.index() < h.vertex_count());
            }
            // surviving originals (identity images) map injectively
            for (old, nv) in remap.vertex_map.iter().enumerate() {
                if let Some(nv) = nv {
                    if h.vertex_name(*nv) == g.vertex_name(VertexId(old as u32)) {
                        assert!(seen_v.insert(*nv));
                    }
                }
            }
            let mut seen_e = std::collections::HashSet::new();
            for e in remap.edge_map.iter().flatten() {
                assert!(e.index() < h.edge_count());
                assert!(seen_e.insert(*e));
            }
            assert_eq!(seen_e.len(), h.edge_count());
        }
    }

    #[test]
    fn extract_component_as_graph() {
        let g = fixtures::bridgecyc();
        let e = g.find_edge("e").unwrap();
        let mut s = Subgraph::full(&g);
        s.edges.remove(e.0);
        let far = g.component_of(&s, VertexId(1)).unwrap();
        let (h, remap) = g.extract(&far).unwrap();
        assert_eq!(h.vertex_count(), 2);
        assert_eq!(h.edge_count(), 2);
        assert_eq!(h.vertex_name(VertexId(0)), "1");
        assert_eq!(remap.vertex_map[0], None);

        let mut unclosed = Subgraph::full(&g);
        unclosed.vertices.remove(0);
        assert!(g.extract(&unclosed).is_err());
    }

    #[test]
    fn json_round_trip_is_identity_on_the_object() {
        let g = fixtures::theta3();
        let text = g.to_json();
        let g2 = Graph::from_json(&text).unwrap();
        assert_eq!(g, g2);
        let v1: serde_json::Value = serde_json::from_str(&text).unwrap();
        let v2: serde_json::Value = serde_json::from_str(&g2.to_json()).unwrap();
        assert_eq!(v1, v2);
    }

    #[test]
    fn names_must_be_unique_and_clean() {
        assert!(Graph::with_names(&["u", "u"], &[]).is_err());
        assert!(Graph::with_names(&["a b"], &[]).is_err());
        assert!(Graph::with_names(&["u"], &[("x'", 0, 0)]).is_err());
    }
}
