//! Group-variety semantics for path words.
//!
//! An arrow value is what a variety remembers about a path: its endpoints,
//! plus (for Abelian varieties) the net exponent of every edge — over the
//! integers for the free Abelian variety, modulo `n` for Abelian groups of
//! exponent `n`, and nothing at all for the trivial variety. Two coterminal
//! paths are equivalent exactly when their values agree.
//!
//! The decisive primitive is [`realizable_in`]: whether a value is the
//! value of some path confined to a given subgraph. For Abelian varieties
//! this reduces to an integer-flow argument: closed-walk net vectors within
//! a connected subgraph are exactly the vectors satisfying the endpoint
//! boundary condition, support edges must be available, and zero-net edges
//! can always be inserted as back-and-forth pairs. The rule is cross-checked
//! against bounded path enumeration by the test suites rather than trusted.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Subgraph, VertexId};
use crate::paths::{PathWord, Step};
use std::collections::HashMap;
use std::fmt;

/// Per-edge exponent map (dense over edge ids).
pub type AtomVector = Vec<i64>;

/// The shipped variety kinds. `AbExp(n)` requires `n >= 2`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VarietySpec {
    Trivial,
    AbExp(u32),
    AbFree,
}

impl VarietySpec {
    pub fn ab_exp(n: u32) -> Result<VarietySpec> {
        if n < 2 {
            return Err(Error::Domain(format!("exponent must be >= 2, got {n}")));
        }
        Ok(VarietySpec::AbExp(n))
    }

    /// Parses `trivial`, `ab` or `ab:N`.
    pub fn parse(text: &str) -> Result<VarietySpec> {
        match text {
            "trivial" => Ok(VarietySpec::Trivial),
            "ab" => Ok(VarietySpec::AbFree),
            _ => match text.strip_prefix("ab:") {
                Some(n) => {
                    let n: u32 = n
                        .parse()
                        .map_err(|_| Error::Format(format!("bad variety {text:?}")))?;
                    VarietySpec::ab_exp(n)
                }
                None => Err(Error::Format(format!(
                    "bad variety {text:?}; expected trivial, ab or ab:N"
                ))),
            },
        }
    }

    pub fn is_abelian(self) -> bool {
        matches!(self, VarietySpec::AbExp(_) | VarietySpec::AbFree)
    }

    /// Whether the arrow set over a finite graph is finite.
    pub fn is_locally_finite(self) -> bool {
        !matches!(self, VarietySpec::AbFree)
    }

    fn reduce(self, x: i64) -> i64 {
        match self {
            VarietySpec::AbExp(n) => x.rem_euclid(n as i64),
            _ => x,
        }
    }
}

impl fmt::Display for VarietySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietySpec::Trivial => write!(f, "trivial"),
            VarietySpec::AbExp(n) => write!(f, "ab:{n}"),
            VarietySpec::AbFree => write!(f, "ab"),
        }
    }
}

/// An arrow of the free category for a variety: endpoints plus the per-edge
/// net exponents the variety distinguishes. Construction validates the
/// boundary condition, so every held value is realizable in its host graph.
///
/// The boundary condition: for every vertex `w`, the inflow minus outflow
/// of exponents equals `[w = dst] - [w = src]` (exactly over the integers,
/// mod `n` for exponent-`n` varieties; loops contribute nothing).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ArrowValue {
    variety: VarietySpec,
    src: VertexId,
    dst: VertexId,
    vec: AtomVector,
}

impl ArrowValue {
    pub fn new(
        g: &Graph,
        variety: VarietySpec,
        src: VertexId,
        dst: VertexId,
        vec: AtomVector,
    ) -> Result<ArrowValue> {
        g.check_vertex(src)?;
        g.check_vertex(dst)?;
        let vec = match variety {
            VarietySpec::Trivial => {
                if !vec.is_empty() && vec.iter().any(|&x| x != 0) {
                    return Err(Error::Domain(
                        "trivial-variety values carry no exponents".into(),
                    ));
                }
                Vec::new()
            }
            _ => {
                if vec.len() != g.edge_count() {
                    return Err(Error::Domain(format!(
                        "exponent vector has length {} but the graph has {} edges",
                        vec.len(),
                        g.edge_count()
                    )));
                }
                vec.into_iter().map(|x| variety.reduce(x)).collect()
            }
        };
        let value = ArrowValue {
            variety,
            src,
            dst,
            vec,
        };
        if variety.is_abelian() && !value.boundary_holds(g) {
            return Err(Error::Domain(format!(
                "exponent vector violates the boundary condition for {} -> {}",
                g.vertex_name(src),
                g.vertex_name(dst)
            )));
        }
        Ok(value)
    }

    pub fn identity(g: &Graph, variety: VarietySpec, at: VertexId) -> Result<ArrowValue> {
        let vec = match variety {
            VarietySpec::Trivial => Vec::new(),
            _ => vec![0; g.edge_count()],
        };
        ArrowValue::new(g, variety, at, at, vec)
    }

    /// Value of a validated path word.
    pub fn of_path(g: &Graph, variety: VarietySpec, p: &PathWord) -> ArrowValue {
        let vec = match variety {
            VarietySpec::Trivial => Vec::new(),
            _ => {
                let mut v = vec![0i64; g.edge_count()];
                for s in p.steps() {
                    v[s.edge.index()] += s.sign.value();
                }
                v.into_iter().map(|x| variety.reduce(x)).collect()
            }
        };
        ArrowValue {
            variety,
            src: p.start(),
            dst: p.end(),
            vec,
        }
    }

    pub fn variety(&self) -> VarietySpec {
        self.variety
    }

    pub fn src(&self) -> VertexId {
        self.src
    }

    pub fn dst(&self) -> VertexId {
        self.dst
    }

    pub fn exponents(&self) -> &[i64] {
        &self.vec
    }

    pub fn exponent(&self, e: EdgeId) -> i64 {
        self.vec.get(e.index()).copied().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        self.src == self.dst && self.vec.iter().all(|&x| x == 0)
    }

    /// Edges with non-zero net exponent.
    pub fn support(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.vec
            .iter()
            .enumerate()
            .filter(|(_, &x)| x != 0)
            .map(|(i, _)| EdgeId(i as u32))
    }

    /// Non-zero support edges plus their endpoints, plus the source vertex.
    /// This is the Abelian content subgraph of the value.
    pub(crate) fn content_subgraph(&self, g: &Graph) -> Subgraph {
        Subgraph::from_edges(g, self.support()).with_vertex(self.src)
    }

    fn boundary_holds(&self, g: &Graph) -> bool {
        for w in g.vertices() {
            let mut net = 0i64;
            for e in g.edge_ids() {
                let (a, b) = g.endpoints(e);
                if b == w {
                    net += self.vec[e.index()];
                }
                if a == w {
                    net -= self.vec[e.index()];
                }
            }
            let want = i64::from(w == self.dst) - i64::from(w == self.src);
            let ok = match self.variety {
                VarietySpec::AbExp(n) => (net - want).rem_euclid(n as i64) == 0,
                _ => net == want,
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Arrow composition: vectors add, endpoints chain.
    pub fn compose(&self, other: &ArrowValue) -> Result<ArrowValue> {
        if self.variety != other.variety {
            return Err(Error::Composition(format!(
                "variety mismatch: {} vs {}",
                self.variety, other.variety
            )));
        }
        if self.dst != other.src {
            return Err(Error::Composition(format!(
                "arrow ends at vertex {} but the next starts at {}",
                self.dst, other.src
            )));
        }
        let vec = self
            .vec
            .iter()
            .zip(&other.vec)
            .map(|(a, b)| self.variety.reduce(a + b))
            .collect();
        Ok(ArrowValue {
            variety: self.variety,
            src: self.src,
            dst: other.dst,
            vec,
        })
    }

    /// Arrow inverse: endpoints swapped, vector negated.
    pub fn inverse(&self) -> ArrowValue {
        ArrowValue {
            variety: self.variety,
            src: self.dst,
            dst: self.src,
            vec: self.vec.iter().map(|&x| self.variety.reduce(-x)).collect(),
        }
    }

    /// Canonical arrow order: source, destination, then exponents
    /// lexicographically.
    pub fn canonical_key(&self) -> (u32, u32, Vec<i64>) {
        (self.src.0, self.dst.0, self.vec.clone())
    }

    /// Renders as `u->v[a:1,b:-1]` using the graph's names.
    pub fn display(&self, g: &Graph) -> String {
        let parts: Vec<String> = self
            .support()
            .map(|e| format!("{}:{}", g.edge_name(e), self.vec[e.index()]))
            .collect();
        format!(
            "{}->{}[{}]",
            g.vertex_name(self.src),
            g.vertex_name(self.dst),
            parts.join(",")
        )
    }
}

/// Soft cap on enumerated arrow sets: keeps the fixpoint engine's pairwise
/// composition table within memory at desk scale.
pub const MAX_ARROWS: usize = 4096;

/// All arrow values of the free category over `g` for a locally finite
/// variety, each exactly once, in canonical order.
///
/// For `AbExp(n)` the solutions of the boundary condition are parametrized
/// by free exponents on non-spanning-tree edges; tree-edge exponents are
/// solved leaves-up, so for a connected graph the count is
/// `|V|^2 * n^(|E|-|V|+1)` with no rejection.
pub fn enumerate_values(g: &Graph, variety: VarietySpec) -> Result<Vec<ArrowValue>> {
    if !g.is_connected() {
        return Err(Error::Domain("enumeration requires a connected graph".into()));
    }
    let nv = g.vertex_count();
    match variety {
        VarietySpec::AbFree => Err(Error::UnsupportedVariety(
            "the free Abelian variety has infinitely many arrows; use certificates".into(),
        )),
        VarietySpec::Trivial => {
            let mut out = Vec::with_capacity(nv * nv);
            for s in g.vertices() {
                for d in g.vertices() {
                    out.push(ArrowValue {
                        variety,
                        src: s,
                        dst: d,
                        vec: Vec::new(),
                    });
                }
            }
            Ok(out)
        }
        VarietySpec::AbExp(n) => {
            let tree = g.bfs_tree(VertexId(0), &Subgraph::full(g));
            let tree_edges: Vec<Option<EdgeId>> =
                tree.parent.iter().map(|p| p.map(|(_, e)| e)).collect();
            let in_tree = |e: EdgeId| tree_edges.iter().any(|t| *t == Some(e));
            let free: Vec<EdgeId> = g.edge_ids().filter(|&e| !in_tree(e)).collect();

            let total = (nv * nv) as u128 * (n as u128).pow(free.len() as u32);
            if total > MAX_ARROWS as u128 {
                return Err(Error::Budget(format!(
                    "arrow set would have {total} values (cap {MAX_ARROWS})"
                )));
            }

            let mut out = Vec::with_capacity(total as usize);
            let codes = (n as u64).pow(free.len() as u32);
            for s in g.vertices() {
                for d in g.vertices() {
                    for code in 0..codes {
                        let mut vec = vec![0i64; g.edge_count()];
                        let mut c = code;
                        for &e in free.iter().rev() {
                            vec[e.index()] = (c % n as u64) as i64;
                            c /= n as u64;
                        }
                        solve_tree_exponents(g, &tree.order, &tree.parent, s, d, n, &mut vec);
                        let value = ArrowValue {
                            variety,
                            src: s,
                            dst: d,
                            vec,
                        };
                        debug_assert!(value.boundary_holds(g));
                        out.push(value);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// Solves tree-edge exponents mod `n` from the boundary condition,
/// processing vertices deepest-first so each equation has one unknown.
fn solve_tree_exponents(
    g: &Graph,
    order: &[VertexId],
    parent: &[Option<(VertexId, EdgeId)>],
    src: VertexId,
    dst: VertexId,
    n: u32,
    vec: &mut [i64],
) {
    for &w in order.iter().rev() {
        let Some((_, t)) = parent[w.index()] else {
            continue;
        };
        let mut net = 0i64;
        for e in g.edge_ids() {
            if e == t {
                continue;
            }
            let (a, b) = g.endpoints(e);
            if b == w {
                net += vec[e.index()];
            }
            if a == w {
                net -= vec[e.index()];
            }
        }
        let want = i64::from(w == dst) - i64::from(w == src);
        // want = net + sign * x  =>  x = sign * (want - net)
        let sign = if g.edge_dst(t) == w { 1 } else { -1 };
        vec[t.index()] = (sign * (want - net)).rem_euclid(n as i64);
    }
}

/// Whether some path with value `x` stays inside `allowed`.
///
/// Decision rule: every support edge lies in `allowed`, and the source,
/// destination and all support endpoints share one connected component of
/// `allowed`. The boundary condition is endpoint-local and already holds
/// for every constructed value.
pub fn realizable_in(g: &Graph, allowed: &Subgraph, x: &ArrowValue) -> Result<bool> {
    check_value_shape(g, x)?;
    let fits = allowed
        .vertices
        .is_subset_of(crate::graph::AtomSet::full(g.vertex_count()))
        && allowed
            .edges
            .is_subset_of(crate::graph::AtomSet::full(g.edge_count()));
    if !fits {
        return Err(Error::Domain("subgraph does not fit the graph".into()));
    }
    if !allowed.is_closed(g) {
        return Err(Error::Domain("subgraph is not closed under endpoints".into()));
    }
    if !allowed.contains_vertex(x.src) || !allowed.contains_vertex(x.dst) {
        return Ok(false);
    }
    for e in x.support() {
        if !allowed.contains_edge(e) {
            return Ok(false);
        }
    }
    let comp = g.component_of(allowed, x.src)?;
    if !comp.contains_vertex(x.dst) {
        return Ok(false);
    }
    for e in x.support() {
        let (a, b) = g.endpoints(e);
        if !comp.contains_vertex(a) || !comp.contains_vertex(b) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_value_shape(g: &Graph, x: &ArrowValue) -> Result<()> {
    g.check_vertex(x.src)?;
    g.check_vertex(x.dst)?;
    match x.variety {
        VarietySpec::Trivial => Ok(()),
        _ => {
            if x.vec.len() != g.edge_count() {
                Err(Error::Domain("value does not belong to this graph".into()))
            } else {
                Ok(())
            }
        }
    }
}

/// Constructs some path whose value is `x`, inside the whole graph.
///
/// Construction: lift residues to integers, repair the integer boundary by
/// routing multiples of `n` along a spanning tree, join the support pieces
/// with zero-net back-and-forth edge pairs, then extract an Eulerian-style
/// trail over the signed traversal multiset. Any valid witness is accepted
/// downstream; witnesses are not canonical.
pub fn realize_value(g: &Graph, x: &ArrowValue) -> Result<PathWord> {
    check_value_shape(g, x)?;
    let full = Subgraph::full(g);
    if !realizable_in(g, &full, x)? {
        return Err(Error::Domain(format!(
            "value {} is not realizable in its graph",
            x.display(g)
        )));
    }
    if x.variety == VarietySpec::Trivial {
        return shortest_dart_path(g, &full, x.src, x.dst);
    }

    let comp = g.component_of(&full, x.src)?;
    let mut lifted = x.vec.clone();
    if let VarietySpec::AbExp(n) = x.variety {
        // Integer boundary defect of the naive lift, divisible by n.
        let mut demand = vec![0i64; g.vertex_count()];
        for w in g.vertices() {
            let mut net = 0i64;
            for e in g.edge_ids() {
                let (a, b) = g.endpoints(e);
                if b == w {
                    net += lifted[e.index()];
                }
                if a == w {
                    net -= lifted[e.index()];
                }
            }
            let want = i64::from(w == x.dst) - i64::from(w == x.src);
            let c = want - net;
            debug_assert_eq!(c.rem_euclid(n as i64), 0);
            demand[w.index()] = c / n as i64;
        }
        let tree = g.bfs_tree(x.src, &comp);
        let mut residual = demand;
        for &w in tree.order.iter().rev() {
            let Some((up, t)) = tree.parent[w.index()] else {
                continue;
            };
            let need = residual[w.index()];
            let sign_here = if g.edge_dst(t) == w { 1 } else { -1 };
            let flow = need * sign_here;
            lifted[t.index()] += flow * n as i64;
            // the edge contributes -need at the parent end
            residual[up.index()] += need;
            residual[w.index()] = 0;
        }
        debug_assert!(residual.iter().all(|&r| r == 0));
    }
    debug_assert!(ArrowValue {
        variety: VarietySpec::AbFree,
        src: x.src,
        dst: x.dst,
        vec: lifted.clone()
    }
    .boundary_holds(g));

    // Signed traversal multiset.
    let mut darts: Vec<Step> = Vec::new();
    for e in g.edge_ids() {
        let k = lifted[e.index()];
        for _ in 0..k.abs() {
            darts.push(if k > 0 { Step::fwd(e) } else { Step::rev(e) });
        }
    }

    // Join the pieces of the traversal multiset (plus src and dst) with
    // zero-net back-and-forth pairs along the spanning tree.
    let mut uf = UnionFind::new(g.vertex_count());
    for d in &darts {
        uf.union(d.src(g).index(), d.dst(g).index());
    }
    let tree = g.bfs_tree(x.src, &comp);
    let mut relevant: Vec<VertexId> = vec![x.dst];
    for d in &darts {
        relevant.push(d.src(g));
    }
    for r in relevant {
        // walk the tree path to the root (= src), bridging piece gaps
        let mut w = r;
        while let Some((up, t)) = tree.parent[w.index()] {
            if uf.find(w.index()) != uf.find(up.index()) {
                darts.push(Step::fwd(t));
                darts.push(Step::rev(t));
                uf.union(w.index(), up.index());
            }
            w = up;
        }
    }

    let steps = eulerian_trail(g, x.src, x.dst, darts)?;
    let p = PathWord::new(g, x.src, steps)?;
    debug_assert_eq!(&ArrowValue::of_path(g, x.variety, &p), x);
    Ok(p)
}

/// Hierholzer's algorithm over an explicit dart multiset, starting at
/// `src`. The multiset is balanced for a `src -> dst` trail by
/// construction.
fn eulerian_trail(g: &Graph, src: VertexId, dst: VertexId, darts: Vec<Step>) -> Result<Vec<Step>> {
    let total = darts.len();
    let mut adj: Vec<Vec<Step>> = vec![Vec::new(); g.vertex_count()];
    for d in &darts {
        adj[d.src(g).index()].push(*d);
    }
    for list in &mut adj {
        // pop() takes from the back: sort descending for ascending use
        list.sort_by_key(|s| std::cmp::Reverse((s.edge, s.sign)));
    }
    let mut stack: Vec<(VertexId, Option<Step>)> = vec![(src, None)];
    let mut trail: Vec<Step> = Vec::new();
    while let Some(&(v, _)) = stack.last() {
        if let Some(step) = adj[v.index()].pop() {
            stack.push((step.dst(g), Some(step)));
        } else {
            let (_, s) = stack.pop().unwrap();
            if let Some(s) = s {
                trail.push(s);
            }
        }
    }
    trail.reverse();
    if trail.len() != total {
        return Err(Error::Domain(
            "traversal multiset is not connected; no single trail covers it".into(),
        ));
    }
    if let Some(last) = trail.last() {
        debug_assert_eq!(last.dst(g), dst);
    } else {
        debug_assert_eq!(src, dst);
    }
    Ok(trail)
}

/// Shortest undirected dart path between two vertices of `allowed`.
fn shortest_dart_path(
    g: &Graph,
    allowed: &Subgraph,
    src: VertexId,
    dst: VertexId,
) -> Result<PathWord> {
    if src == dst {
        return PathWord::empty(g, src);
    }
    let mut prev: HashMap<VertexId, (VertexId, Step)> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([src]);
    let mut seen = vec![false; g.vertex_count()];
    seen[src.index()] = true;
    while let Some(v) = queue.pop_front() {
        if v == dst {
            break;
        }
        for e in allowed.edges.iter() {
            let e = EdgeId(e);
            for step in [Step::fwd(e), Step::rev(e)] {
                if step.src(g) == v && !seen[step.dst(g).index()] {
                    seen[step.dst(g).index()] = true;
                    prev.insert(step.dst(g), (v, step));
                    queue.push_back(step.dst(g));
                }
            }
        }
    }
    if !seen[dst.index()] {
        return Err(Error::Domain("no connecting path exists".into()));
    }
    let mut steps = Vec::new();
    let mut at = dst;
    while at != src {
        let (p, s) = prev[&at];
        steps.push(s);
        at = p;
    }
    steps.reverse();
    PathWord::new(g, src, steps)
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
