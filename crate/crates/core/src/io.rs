//! The graph file format: one JSON object with `vertices`, `edges` and
//! `boundary`, nothing else.
//!
//! ```text
//! {"vertices":[{"id":"1","m":1.0},...],
//!  "edges":[{"u":"1","v":"2","w":1.0},...],
//!  "boundary":["1","3"]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BoundaryGraph, WeightedGraph};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexRecord {
    id: String,
    m: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeRecord {
    u: String,
    v: String,
    w: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    vertices: Vec<VertexRecord>,
    edges: Vec<EdgeRecord>,
    boundary: Vec<String>,
}

/// Parses a graph file into a validated boundary graph.
pub fn parse_graph_file(text: &str) -> Result<BoundaryGraph> {
    let file: GraphFile = serde_json::from_str(text)
        .map_err(|e| Error::Parse { line: e.line(), reason: e.to_string() })?;
    let vertices: Vec<(String, f64)> = file.vertices.into_iter().map(|r| (r.id, r.m)).collect();
    let edges: Vec<(String, String, f64)> =
        file.edges.into_iter().map(|r| (r.u, r.v, r.w)).collect();
    let graph = WeightedGraph::build(&vertices, &edges)?;
    BoundaryGraph::attach(graph, &file.boundary)
}

/// Serializes a boundary graph; [`parse_graph_file`] restores it exactly.
pub fn serialize_graph(bg: &BoundaryGraph) -> String {
    let file = GraphFile {
        vertices: bg
            .vertex_specs()
            .into_iter()
            .map(|(id, m)| VertexRecord { id, m })
            .collect(),
        edges: bg
            .edge_specs()
            .into_iter()
            .map(|(u, v, w)| EdgeRecord { u, v, w })
            .collect(),
        boundary: bg.boundary_ids().into_iter().map(str::to_string).collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("graph file serializes");
    s.push('\n');
    s
}
