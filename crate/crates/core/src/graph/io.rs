use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Graph, VertexId};
use crate::error::{Error, Result};

/// Canonical on-disk graph: `{"n": .., "vertices": [..], "edges": [[u, v], ..]}`
/// with `u < v` and edges sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<[VertexId; 2]>,
}

impl From<&Graph> for GraphFile {
    fn from(g: &Graph) -> Self {
        GraphFile {
            n: g.n(),
            vertices: g.ids().to_vec(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl TryFrom<GraphFile> for Graph {
    type Error = Error;

    fn try_from(file: GraphFile) -> Result<Graph> {
        let g = Graph::new(file.vertices, file.edges.into_iter().map(|[u, v]| (u, v)))?;
        if g.n() != file.n {
            return Err(Error::invalid(format!(
                "header says n = {} but {} distinct vertices are listed",
                file.n,
                g.n()
            )));
        }
        Ok(g)
    }
}

impl Graph {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphFile::from(self)).expect("graph files always serialize")
    }

    /// Parses either canonical JSON or a whitespace-separated edge list.
    ///
    /// In edge-list text every non-blank line is `u v`; a lone id declares an
    /// isolated vertex and `#` starts a comment.
    pub fn parse(text: &str) -> Result<Graph> {
        if text.trim_start().starts_with('{') {
            let file: GraphFile = serde_json::from_str(text)?;
            return Graph::try_from(file);
        }
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parsed: std::result::Result<Vec<VertexId>, _> =
                line.split_whitespace().map(VertexId::from_str).collect();
            let bad = || Error::invalid(format!("line {}: expected `u v`, got {raw:?}", lineno + 1));
            match parsed.map_err(|_| bad())?.as_slice() {
                [v] => vertices.push(*v),
                [u, v] => {
                    vertices.extend([*u, *v]);
                    edges.push((*u, *v));
                }
                _ => return Err(bad()),
            }
        }
        Graph::new(vertices, edges)
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<Graph> {
    Graph::parse(&fs::read_to_string(path)?)
}

pub fn write_graph(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, g.to_json() + "\n")?;
    Ok(())
}
