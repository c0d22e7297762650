//! Bicolored graphs: a graph with an ordered (green, red) bipartition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Permutation, VertexSet};

/// A graph whose vertices are colored green or red with every edge joining
/// a green vertex to a red one. The colors are not interchangeable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BicoloredGraph {
    graph: Graph,
    green: VertexSet,
}

impl BicoloredGraph {
    pub fn new(graph: Graph, green: VertexSet) -> Result<Self> {
        if !green.is_subset(graph.vertices()) {
            let v = green.difference(graph.vertices()).first().unwrap_or(0);
            return Err(Error::OutOfRange {
                vertex: v,
                n: graph.vertices().bound(),
            });
        }
        for (i, j) in graph.edges() {
            if green.contains(i) == green.contains(j) {
                return Err(Error::Monochromatic(i, j));
            }
        }
        Ok(BicoloredGraph { graph, green })
    }

    /// Builds a bicolored graph from a green set and a bipartite edge set
    /// without checking; callers guarantee every edge is bichromatic.
    pub(crate) fn from_parts_unchecked(graph: Graph, green: VertexSet) -> Self {
        debug_assert!(BicoloredGraph::new(graph, green).is_ok());
        BicoloredGraph { graph, green }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn green(&self) -> VertexSet {
        self.green
    }

    pub fn red(&self) -> VertexSet {
        self.graph.vertices().difference(self.green)
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    /// Green vertices with no neighbor.
    pub fn isolated_green(&self) -> VertexSet {
        self.green
            .iter()
            .filter(|&v| self.graph.degree(v) == 0)
            .collect()
    }

    pub fn relabel(&self, p: &Permutation) -> Result<Self> {
        Ok(BicoloredGraph {
            graph: self.graph.relabel(p)?,
            green: p.apply_set(self.green),
        })
    }
}

#[derive(Serialize, Deserialize)]
pub(crate) struct ColoredRepr {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<VertexSet>,
    pub edges: Vec<[usize; 2]>,
    pub green: VertexSet,
    pub red: VertexSet,
}

impl ColoredRepr {
    pub(crate) fn new(graph: &Graph, green: VertexSet) -> Self {
        ColoredRepr {
            n: graph.n(),
            vertices: (!graph.is_compact()).then_some(graph.vertices()),
            edges: graph.edges().into_iter().map(|(i, j)| [i, j]).collect(),
            green,
            red: graph.vertices().difference(green),
        }
    }

    /// Checks that green and red partition the vertex set and returns the
    /// graph and green set.
    pub(crate) fn into_parts(self) -> Result<(Graph, VertexSet)> {
        let verts = self.vertices.unwrap_or_else(|| self.green.union(self.red));
        if verts.len() != self.n
            || !self.green.is_disjoint(self.red)
            || self.green.union(self.red) != verts
        {
            return Err(Error::Parse(
                "green and red must partition the vertex set".into(),
            ));
        }
        let repr = serde_json::json!({
            "n": self.n,
            "vertices": verts,
            "edges": self.edges,
        });
        let graph: Graph = serde_json::from_value(repr).map_err(|e| Error::Parse(e.to_string()))?;
        Ok((graph, self.green))
    }
}

impl Serialize for BicoloredGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ColoredRepr::new(&self.graph, self.green).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BicoloredGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (graph, green) = ColoredRepr::deserialize(d)?
            .into_parts()
            .map_err(serde::de::Error::custom)?;
        BicoloredGraph::new(graph, green).map_err(serde::de::Error::custom)
    }
}
