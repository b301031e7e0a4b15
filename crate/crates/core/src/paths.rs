//! Paths in the doubled graph as words over the edge alphabet and its
//! formal inverses. A step traverses an edge forwards or backwards; a path
//! word is a start vertex plus a consecutive step sequence. The empty word
//! is a valid path anchored at its start vertex.
//!
//! No free-group reduction is ever applied here: the spanned subgraph of a
//! word depends on the unreduced letters. Equivalence of words is the
//! business of the variety layer.

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Subgraph, VertexId};
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    /// +1 or -1, the step's contribution to net exponents.
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// One traversal of an edge, forwards (`Pos`) or backwards (`Neg`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Step {
    pub edge: EdgeId,
    pub sign: Sign,
}

impl Step {
    pub fn fwd(edge: EdgeId) -> Step {
        Step {
            edge,
            sign: Sign::Pos,
        }
    }

    pub fn rev(edge: EdgeId) -> Step {
        Step {
            edge,
            sign: Sign::Neg,
        }
    }

    pub fn inverse(self) -> Step {
        Step {
            edge: self.edge,
            sign: self.sign.flip(),
        }
    }

    pub fn src(self, g: &Graph) -> VertexId {
        match self.sign {
            Sign::Pos => g.edge_src(self.edge),
            Sign::Neg => g.edge_dst(self.edge),
        }
    }

    pub fn dst(self, g: &Graph) -> VertexId {
        match self.sign {
            Sign::Pos => g.edge_dst(self.edge),
            Sign::Neg => g.edge_src(self.edge),
        }
    }
}

/// A validated path word: consecutive steps anchored at `start`. Endpoints
/// are computed at construction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PathWord {
    start: VertexId,
    end: VertexId,
    steps: Vec<Step>,
}

impl PathWord {
    /// Validates consecutiveness; the error names the first offending
    /// 1-based step position.
    pub fn new(g: &Graph, start: VertexId, steps: Vec<Step>) -> Result<PathWord> {
        g.check_vertex(start)?;
        let mut at = start;
        for (i, s) in steps.iter().enumerate() {
            g.check_edge(s.edge)?;
            let from = s.src(g);
            if from != at {
                return Err(Error::InvalidPath {
                    position: i + 1,
                    reason: format!(
                        "step over {} starts at {} but the path is at {}",
                        g.edge_name(s.edge),
                        g.vertex_name(from),
                        g.vertex_name(at)
                    ),
                });
            }
            at = s.dst(g);
        }
        Ok(PathWord {
            start,
            end: at,
            steps,
        })
    }

    pub fn empty(g: &Graph, at: VertexId) -> Result<PathWord> {
        PathWord::new(g, at, Vec::new())
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn end(&self) -> VertexId {
        self.end
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Word inverse: endpoints swapped, steps reversed with signs flipped.
    pub fn inverse(&self) -> PathWord {
        PathWord {
            start: self.end,
            end: self.start,
            steps: self.steps.iter().rev().map(|s| s.inverse()).collect(),
        }
    }

    /// Word concatenation; requires the endpoints to meet.
    pub fn concat(&self, g: &Graph, other: &PathWord) -> Result<PathWord> {
        if self.end != other.start {
            return Err(Error::Composition(format!(
                "path ends at {} but the next starts at {}",
                g.vertex_name(self.end),
                g.vertex_name(other.start)
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(PathWord {
            start: self.start,
            end: other.end,
            steps,
        })
    }

    /// Subgraph spanned by the word: the vertices visited plus every edge
    /// traversed in either direction. The empty path spans its anchor.
    pub fn spanned(&self, g: &Graph) -> Subgraph {
        let mut s = Subgraph::single_vertex(self.start);
        for step in &self.steps {
            s.edges.insert(step.edge.0);
            s.vertices.insert(step.dst(g).0);
        }
        s
    }

    /// Parses the textual syntax `start: e1 e2' e3` where a trailing
    /// apostrophe marks a backwards traversal.
    pub fn parse_syntax(g: &Graph, text: &str) -> Result<PathWord> {
        let (start_name, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::Format("path syntax needs `start: steps`".into()))?;
        let start = g
            .find_vertex(start_name.trim())
            .ok_or_else(|| Error::Format(format!("unknown vertex {:?}", start_name.trim())))?;
        let mut steps = Vec::new();
        for token in rest.split_whitespace() {
            let (name, sign) = match token.strip_suffix('\'') {
                Some(name) => (name, Sign::Neg),
                None => (token, Sign::Pos),
            };
            let edge = g
                .find_edge(name)
                .ok_or_else(|| Error::Format(format!("unknown edge {name:?}")))?;
            steps.push(Step { edge, sign });
        }
        PathWord::new(g, start, steps)
    }

    /// Renders the textual syntax; inverse of [`PathWord::parse_syntax`].
    pub fn display_syntax(&self, g: &Graph) -> String {
        let mut out = format!("{}:", g.vertex_name(self.start));
        for s in &self.steps {
            out.push(' ');
            out.push_str(g.edge_name(s.edge));
            if s.sign == Sign::Neg {
                out.push('\'');
            }
        }
        out
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Pos => Ok(()),
            Sign::Neg => write!(f, "'"),
        }
    }
}
