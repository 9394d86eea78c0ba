use serde::{Deserialize, Serialize};

use super::{CoreGraph, Edge, LabeledGraph};
use crate::error::{Error, Result};

/// Wire form of a core graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub rank: usize,
    pub vertices: usize,
    pub base: usize,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

impl From<&CoreGraph> for GraphJson {
    fn from(g: &CoreGraph) -> Self {
        GraphJson {
            rank: g.ambient_rank(),
            vertices: g.vertex_count(),
            base: 0,
            edges: g
                .edges()
                .into_iter()
                .map(|e| EdgeJson {
                    from: e.from,
                    to: e.to,
                    label: e.label,
                })
                .collect(),
        }
    }
}

impl GraphJson {
    /// Keeps the vertex numbering when the input is already a folded core
    /// graph based at `0`; anything else is folded into canonical form.
    pub fn to_graph(&self) -> Result<CoreGraph> {
        if self.base >= self.vertices {
            return Err(Error::InvalidGraph(format!("base {} out of range", self.base)));
        }
        let edges: Vec<Edge> = self.edges.iter().map(|e| Edge::new(e.from, e.to, e.label)).collect();
        if self.base == 0 {
            if let Ok(g) = CoreGraph::from_edges(self.rank, self.vertices, &edges) {
                return Ok(g);
            }
        }
        // move the base to vertex 0 before folding
        let swap = |v: usize| {
            if v == self.base {
                0
            } else if v == 0 {
                self.base
            } else {
                v
            }
        };
        LabeledGraph {
            rank: self.rank,
            vertex_count: self.vertices,
            edges: edges.iter().map(|e| Edge::new(swap(e.from), swap(e.to), e.label)).collect(),
        }
        .fold()
    }
}

impl CoreGraph {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(GraphJson::from(self)).expect("graph serializes")
    }

    pub fn from_json_str(text: &str) -> Result<CoreGraph> {
        let g: GraphJson =
            serde_json::from_str(text).map_err(|e| Error::InvalidGraph(e.to_string()))?;
        g.to_graph()
    }
}
