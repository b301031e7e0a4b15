//! Exhaustive survey of small connected multigraphs: enumeration up to
//! isomorphism plus redirection, per-variety verdicts, structural
//! classification, agreement flags and obstruction mining.

use bpe_core::fixpoint::{decide, Verdict};
use bpe_core::graph::{EditOp, Graph, Subgraph};
use bpe_core::minors;
use bpe_core::variety::VarietySpec;
use bpe_core::{Error, Result};
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Mutex;

/// Default enumeration budgets. The vertex cap is structural (the
/// canonical form is a factorial-time permutation search); the edge cap
/// can be overridden through `BPE_BUDGET`.
pub const DEFAULT_MAX_VERTICES: usize = 4;
pub const DEFAULT_MAX_EDGES: usize = 6;

/// Reads the edge budget override from `BPE_BUDGET`, when set.
pub fn env_edge_budget() -> Option<usize> {
    std::env::var("BPE_BUDGET").ok().and_then(|v| v.parse().ok())
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyParams {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub varieties: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictRecord {
    pub variety: String,
    pub breaking: bool,
    /// Refinement level of the first violation, for breaking graphs.
    pub level: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphRecord {
    pub code: String,
    pub vertices: usize,
    pub edges: usize,
    pub verdicts: Vec<VerdictRecord>,
    pub structure: String,
    /// Verdicts match the structural predictions: forbidden-minor
    /// containment for Abelian exponents, non-tree-with-loops for the
    /// trivial variety.
    pub agreement: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveySummary {
    pub total: usize,
    pub breaking: BTreeMap<String, usize>,
    /// Canonical codes of the breaking graphs all of whose proper
    /// connected minors hold, per variety.
    pub minimal_breaking: BTreeMap<String, Vec<String>>,
    pub disagreements: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SurveyReport {
    pub params: SurveyParams,
    pub records: Vec<GraphRecord>,
    pub summary: SurveySummary,
}

/// All connected multigraphs with up to `max_vertices` vertices and
/// `max_edges` edges, one representative per isomorphism+redirection
/// class, in canonical order. Representatives orient every edge from the
/// lower endpoint.
pub fn enumerate_connected_multigraphs(max_vertices: usize, max_edges: usize) -> Result<Vec<Graph>> {
    if max_vertices > 4 {
        return Err(Error::Budget(format!(
            "survey enumeration is limited to 4 vertices, got {max_vertices}"
        )));
    }
    let edge_cap = env_edge_budget().unwrap_or(DEFAULT_MAX_EDGES);
    if max_edges > edge_cap {
        return Err(Error::Budget(format!(
            "survey enumeration is limited to {edge_cap} edges (BPE_BUDGET overrides), got {max_edges}"
        )));
    }
    let mut seen: BTreeSet<(usize, Vec<(u32, u32)>)> = BTreeSet::new();
    let mut out: Vec<((usize, Vec<(u32, u32)>), Graph)> = Vec::new();
    for nv in 1..=max_vertices {
        let mut slots = Vec::new();
        for i in 0..nv as u32 {
            for j in i..nv as u32 {
                slots.push((i, j));
            }
        }
        let mut choice: Vec<usize> = Vec::new();
        enumerate_multisets(&slots, max_edges, &mut choice, &mut |multiset| {
            let edges: Vec<(u32, u32)> = multiset.iter().map(|&i| slots[i]).collect();
            let g = Graph::new(nv, &edges).expect("slot endpoints are in range");
            if !g.is_connected() {
                return;
            }
            let code = minors::canonical_code(&g).expect("survey graphs are small");
            if seen.insert(code.clone()) {
                let representative =
                    Graph::new(code.0, &code.1).expect("canonical code endpoints are in range");
                out.push((code, representative));
            }
        });
    }
    out.sort_by(|a, b| {
        (a.1.vertex_count(), a.1.edge_count(), &a.0).cmp(&(
            b.1.vertex_count(),
            b.1.edge_count(),
            &b.0,
        ))
    });
    Ok(out.into_iter().map(|(_, g)| g).collect())
}

fn enumerate_multisets(
    slots: &[(u32, u32)],
    max_size: usize,
    choice: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    f(choice);
    if choice.len() == max_size {
        return;
    }
    let start = choice.last().copied().unwrap_or(0);
    for i in start..slots.len() {
        choice.push(i);
        enumerate_multisets(slots, max_size, choice, f);
        choice.pop();
    }
}

/// Verdict cache keyed by canonical code; disconnected graphs break iff
/// some component breaks.
pub struct VerdictCache {
    variety: VarietySpec,
    map: Mutex<HashMap<String, bool>>,
}

impl VerdictCache {
    pub fn new(variety: VarietySpec) -> VerdictCache {
        VerdictCache {
            variety,
            map: Mutex::new(HashMap::new()),
        }
    }

    pub fn is_breaking(&self, g: &Graph) -> Result<bool> {
        if g.vertex_count() == 0 {
            return Ok(false);
        }
        if !g.is_connected() {
            for comp in g.components(&Subgraph::full(g)) {
                let (part, _) = g.extract(&comp)?;
                if self.is_breaking(&part)? {
                    return Ok(true);
                }
            }
            return Ok(false);
        }
        let code = minors::code_string(&minors::canonical_code(g)?);
        if let Some(&b) = self.map.lock().unwrap().get(&code) {
            return Ok(b);
        }
        let b = decide(g, self.variety)?.is_breaking();
        self.map.lock().unwrap().insert(code, b);
        Ok(b)
    }
}

/// Single-operation minors: every edge deletion, every non-loop edge
/// contraction, every vertex deletion. Results may be disconnected.
pub fn one_step_minors(g: &Graph) -> Vec<Graph> {
    let mut out = Vec::new();
    for e in g.edge_ids() {
        out.push(g.edit(EditOp::DeleteEdge(e)).expect("edge exists").0);
        if !g.is_loop(e) {
            out.push(g.edit(EditOp::ContractEdge(e)).expect("non-loop").0);
        }
    }
    if g.vertex_count() > 1 {
        for v in g.vertices() {
            out.push(g.edit(EditOp::DeleteVertex(v)).expect("vertex exists").0);
        }
    }
    out
}

/// A breaking graph is minimal when every one-step minor (componentwise)
/// holds; breaking is upward closed, so this captures minimality over all
/// proper connected minors.
pub fn is_minimal_breaking(g: &Graph, cache: &VerdictCache) -> Result<bool> {
    if !cache.is_breaking(g)? {
        return Ok(false);
    }
    for m in one_step_minors(g) {
        if cache.is_breaking(&m)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Runs the survey: decide every corpus graph for every variety, classify,
/// flag agreement, and mine the minimal breaking graphs per variety.
pub fn run_survey(
    max_vertices: usize,
    max_edges: usize,
    varieties: &[VarietySpec],
) -> Result<SurveyReport> {
    for u in varieties {
        if !u.is_locally_finite() {
            return Err(Error::UnsupportedVariety(format!(
                "survey requires locally finite varieties, got {u}"
            )));
        }
    }
    let corpus = enumerate_connected_multigraphs(max_vertices, max_edges)?;
    let caches: Vec<VerdictCache> = varieties.iter().map(|&u| VerdictCache::new(u)).collect();

    let records: Vec<GraphRecord> = corpus
        .par_iter()
        .map(|g| -> Result<GraphRecord> {
            let code = minors::code_string(&minors::canonical_code(g)?);
            let structure = minors::has_forbidden_minor(g)?;
            let mut verdicts = Vec::new();
            let mut agreement = true;
            for u in varieties {
                let verdict = decide(g, *u)?;
                let (breaking, level) = match &verdict {
                    Verdict::Breaking { level, .. } => (true, Some(*level)),
                    Verdict::Holds { .. } => (false, None),
                };
                let predicted = match u {
                    VarietySpec::Trivial => !minors::is_tree_with_loops(g),
                    _ => structure.is_forbidden(),
                };
                agreement &= breaking == predicted;
                verdicts.push(VerdictRecord {
                    variety: u.to_string(),
                    breaking,
                    level,
                });
            }
            Ok(GraphRecord {
                code,
                vertices: g.vertex_count(),
                edges: g.edge_count(),
                verdicts,
                structure: structure.tag(),
                agreement,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut breaking: BTreeMap<String, usize> = BTreeMap::new();
    let mut minimal: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (ui, u) in varieties.iter().enumerate() {
        let count = records.iter().filter(|r| r.verdicts[ui].breaking).count();
        breaking.insert(u.to_string(), count);
        let mut codes = Vec::new();
        for (gi, g) in corpus.iter().enumerate() {
            if records[gi].verdicts[ui].breaking && is_minimal_breaking(g, &caches[ui])? {
                codes.push(records[gi].code.clone());
            }
        }
        codes.sort();
        minimal.insert(u.to_string(), codes);
    }
    let disagreements = records.iter().filter(|r| !r.agreement).count();
    Ok(SurveyReport {
        params: SurveyParams {
            max_vertices,
            max_edges,
            varieties: varieties.iter().map(|u| u.to_string()).collect(),
        },
        records,
        summary: SurveySummary {
            total: corpus.len(),
            breaking,
            minimal_breaking: minimal,
            disagreements,
        },
    })
}

impl SurveyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Human-readable rendering, one line per graph plus a summary block.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "survey: {} connected multigraphs, <= {} vertices, <= {} edges\n",
            self.summary.total, self.params.max_vertices, self.params.max_edges
        ));
        for r in &self.records {
            let verdicts: Vec<String> = r
                .verdicts
                .iter()
                .map(|v| {
                    format!(
                        "{}={}",
                        v.variety,
                        if v.breaking { "breaking" } else { "holds" }
                    )
                })
                .collect();
            out.push_str(&format!(
                "{:<24} |V|={} |E|={} {} structure={}{}\n",
                r.code,
                r.vertices,
                r.edges,
                verdicts.join(" "),
                r.structure,
                if r.agreement { "" } else { "  DISAGREEMENT" }
            ));
        }
        out.push_str(&format!("disagreements: {}\n", self.summary.disagreements));
        for (u, count) in &self.summary.breaking {
            out.push_str(&format!("breaking[{u}]: {count}\n"));
        }
        for (u, codes) in &self.summary.minimal_breaking {
            out.push_str(&format!(
                "minimal-breaking[{u}]: {}\n",
                if codes.is_empty() {
                    "(none)".to_string()
                } else {
                    codes.join(" ")
                }
            ));
        }
        out
    }
}
