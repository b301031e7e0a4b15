//! Finite certificates that a path breaks over the free Abelian variety,
//! where the arrow set is infinite and the fixpoint engine does not apply.
//!
//! A certificate is a factorization tree rooted at the claimed breaking
//! arrow. The checker computes an upper bound on the limit anchor bottom-up:
//! leaves get the exact level-0 anchor (computable over the integers by
//! avoidance tests); an internal node intersects its own level-0 anchor
//! with the union bound of every listed factorization, then re-anchors at
//! the source. Each bound dominates the true anchor at the corresponding
//! level, so a root bound missing its destination proves a genuine
//! breaking path. Soundness only: a sound but insufficient certificate
//! reports `NotProven`, a structurally broken one `Malformed`.
//!
//! Certificates store arrows as exponent vectors, not literal paths;
//! witnesses are re-realized for display only.

use crate::content;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::graph::{Graph, GraphFile, Subgraph};
use crate::variety::{ArrowValue, VarietySpec};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// One node of a factorization tree, in name space. Leaves carry no
/// factorizations; every inner list must compose to the node's arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub arrow: ArrowSpec,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub factorizations: Vec<Vec<CertNode>>,
}

/// An arrow over the free Abelian variety, written with vertex and edge
/// names. Edges absent from `vec` have exponent zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowSpec {
    pub src: String,
    pub dst: String,
    pub vec: BTreeMap<String, i64>,
}

/// A certificate file: the host graph, the factorization tree for the
/// claimed breaking arrow, and the claimed refinement level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub graph: Graph,
    pub root: CertNode,
    pub claimed_level: u32,
}

#[derive(Serialize, Deserialize)]
struct CertificateFile {
    graph: GraphFile,
    root: CertNode,
    claimed_level: u32,
}

impl Certificate {
    pub fn from_json(text: &str) -> Result<Certificate> {
        let file: CertificateFile = serde_json::from_str(text)
            .map_err(|e| Error::Format(format!("certificate json: {e}")))?;
        Ok(Certificate {
            graph: Graph::from_file(&file.graph)?,
            root: file.root,
            claimed_level: file.claimed_level,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&CertificateFile {
            graph: self.graph.to_file(),
            root: self.root.clone(),
            claimed_level: self.claimed_level,
        })
        .expect("certificate serialization cannot fail")
    }
}

/// Checker verdict. `NotProven` is a sound certificate whose bounds do not
/// exclude the destination; `Malformed` is a structural error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertVerdict {
    Verified,
    NotProven,
    Malformed(String),
}

/// Bound computed for one tree node, addressed as e.g. `root.f0.1`.
#[derive(Clone, Debug)]
pub struct NodeBound {
    pub address: String,
    pub arrow: ArrowValue,
    pub bound: Subgraph,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub verdict: CertVerdict,
    /// Upper bound on the limit anchor of the root arrow.
    pub final_upper_anchor: Option<Subgraph>,
    pub node_bounds: Vec<NodeBound>,
    /// Tree depth reached; a Verified root proves breaking by this level.
    pub depth: u32,
}

fn resolve_arrow(g: &Graph, spec: &ArrowSpec) -> Result<ArrowValue> {
    let src = g
        .find_vertex(&spec.src)
        .ok_or_else(|| Error::Domain(format!("unknown vertex {:?}", spec.src)))?;
    let dst = g
        .find_vertex(&spec.dst)
        .ok_or_else(|| Error::Domain(format!("unknown vertex {:?}", spec.dst)))?;
    let mut vec = vec![0i64; g.edge_count()];
    for (name, x) in &spec.vec {
        let e = g
            .find_edge(name)
            .ok_or_else(|| Error::Domain(format!("unknown edge {name:?}")))?;
        vec[e.index()] = *x;
    }
    ArrowValue::new(g, VarietySpec::AbFree, src, dst, vec)
}

struct Checker<'a> {
    graph: &'a Graph,
    bounds: Vec<NodeBound>,
}

impl<'a> Checker<'a> {
    /// Returns the node's arrow, its anchor bound and its subtree depth.
    fn node_bound(&mut self, node: &CertNode, address: String) -> Result<(ArrowValue, Subgraph, u32)> {
        let arrow = resolve_arrow(self.graph, &node.arrow)?;
        let mut bound = content::core_anchor(self.graph, &arrow)?;
        let mut depth = 0;
        for (fi, factors) in node.factorizations.iter().enumerate() {
            if factors.is_empty() {
                return Err(Error::Composition(format!(
                    "{address}: empty factorization"
                )));
            }
            let mut union = Subgraph::EMPTY;
            let mut product: Option<ArrowValue> = None;
            let mut max_child_depth = 0;
            for (ci, child) in factors.iter().enumerate() {
                let (child_arrow, child_bound, child_depth) =
                    self.node_bound(child, format!("{address}.f{fi}.{ci}"))?;
                union = union.union(child_bound);
                max_child_depth = max_child_depth.max(child_depth);
                product = Some(match product {
                    None => child_arrow,
                    Some(acc) => acc.compose(&child_arrow)?,
                });
            }
            let product = product.expect("non-empty factorization");
            if product != arrow {
                return Err(Error::Composition(format!(
                    "{address}.f{fi}: factors compose to {} instead of {}",
                    product.display(self.graph),
                    arrow.display(self.graph)
                )));
            }
            bound = bound.intersection(union);
            depth = depth.max(max_child_depth + 1);
        }
        let anchored = self.graph.component_of(&bound, arrow.src())?;
        self.bounds.push(NodeBound {
            address,
            arrow: arrow.clone(),
            bound: anchored,
        });
        Ok((arrow, anchored, depth))
    }
}

/// Checks a certificate bottom-up. Structural failures (unknown names,
/// invalid boundary, composition mismatches) yield `Malformed`; otherwise
/// the verdict is `Verified` exactly when the root bound misses the
/// claimed destination.
pub fn check_certificate(cert: &Certificate) -> CheckReport {
    let mut checker = Checker {
        graph: &cert.graph,
        bounds: Vec::new(),
    };
    match checker.node_bound(&cert.root, "root".into()) {
        Err(e) => CheckReport {
            verdict: CertVerdict::Malformed(e.to_string()),
            final_upper_anchor: None,
            node_bounds: checker.bounds,
            depth: 0,
        },
        Ok((arrow, bound, depth)) => {
            let verdict = if bound.contains_vertex(arrow.dst()) {
                CertVerdict::NotProven
            } else {
                CertVerdict::Verified
            };
            CheckReport {
                verdict,
                final_upper_anchor: Some(bound),
                node_bounds: checker.bounds,
                depth,
            }
        }
    }
}

fn spec(src: &str, dst: &str, vec: &[(&str, i64)]) -> ArrowSpec {
    ArrowSpec {
        src: src.into(),
        dst: dst.into(),
        vec: vec.iter().map(|&(n, x)| (n.to_string(), x)).collect(),
    }
}

fn leaf(src: &str, dst: &str, vec: &[(&str, i64)]) -> CertNode {
    CertNode {
        arrow: spec(src, dst, vec),
        factorizations: Vec::new(),
    }
}

fn catalog_certificate(graph: Graph) -> Certificate {
    // root arrow: the doubled edge a from u to v, factored through w as
    // c-inverse, the closed (a - b) detour at w, then c b.
    let root = CertNode {
        arrow: spec("u", "v", &[("a", 1)]),
        factorizations: vec![vec![
            leaf("u", "w", &[("c", -1)]),
            leaf("w", "w", &[("a", 1), ("b", -1)]),
            leaf("w", "v", &[("c", 1), ("b", 1)]),
        ]],
    };
    Certificate {
        graph,
        root,
        claimed_level: 1,
    }
}

/// The two built-in certificates, one per catalog graph, proving the path
/// `a` breaking over the free Abelian variety.
pub fn builtin_certificates() -> Vec<(&'static str, Certificate)> {
    vec![
        ("theta3", catalog_certificate(fixtures::theta3())),
        ("digons2", catalog_certificate(fixtures::digons2())),
    ]
}
