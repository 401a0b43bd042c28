//! Immutable simple undirected graphs and the distance primitives every
//! other module builds on.
//!
//! Vertices carry arbitrary non-negative integer ids. Internally a graph keeps
//! its ids sorted ascending and addresses vertices by dense index, so index
//! order and id order coincide: "maximum id" tie-breaks can be done on indices.

mod io;
mod paths;
mod quotient;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use io::{read_graph, write_graph, GraphFile};
pub use paths::{q_path_vertices, u_sets};
pub use quotient::{contract_labeled, contract_partition, QuotientGraph};

pub type VertexId = u64;
pub type VertexSet = BTreeSet<VertexId>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

/// Diameter of a graph; disconnected graphs have no finite diameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Diameter {
    Finite(usize),
    Disconnected,
}

impl Diameter {
    pub fn finite(self) -> Option<usize> {
        match self {
            Diameter::Finite(d) => Some(d),
            Diameter::Disconnected => None,
        }
    }
}

impl Graph {
    /// Builds a graph from a vertex list and an edge list.
    ///
    /// Duplicate edges (in either orientation) collapse into one; self-loops
    /// and endpoints missing from `vertices` are rejected.
    pub fn new(
        vertices: impl IntoIterator<Item = VertexId>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        let ids: Vec<VertexId> = vertices.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        let mut adj = vec![Vec::new(); ids.len()];
        for (u, v) in edges {
            if u == v {
                return Err(Error::invalid(format!("self-loop at vertex {u}")));
            }
            let iu = ids.binary_search(&u).map_err(|_| Error::UnknownVertex(u))?;
            let iv = ids.binary_search(&v).map_err(|_| Error::UnknownVertex(v))?;
            adj[iu].push(iv);
            adj[iv].push(iu);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        Ok(Graph {
            ids,
            adj,
            edge_count: edge_count / 2,
        })
    }

    /// Builds a graph whose vertex set is inferred from the edges.
    pub fn from_edges(edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        let edges: Vec<_> = edges.into_iter().collect();
        let vertices = edges.iter().flat_map(|&(u, v)| [u, v]);
        Graph::new(vertices, edges.iter().copied())
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn m(&self) -> usize {
        self.edge_count
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    /// Vertex ids in ascending order.
    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.ids.iter().copied().collect()
    }

    pub fn id(&self, index: usize) -> VertexId {
        self.ids[index]
    }

    pub fn index_of(&self, id: VertexId) -> Option<usize> {
        self.ids.binary_search(&id).ok()
    }

    pub fn contains(&self, id: VertexId) -> bool {
        self.index_of(id).is_some()
    }

    pub(crate) fn require(&self, id: VertexId) -> Result<usize> {
        self.index_of(id).ok_or(Error::UnknownVertex(id))
    }

    pub(crate) fn require_all<'a>(&self, ids: impl IntoIterator<Item = &'a VertexId>) -> Result<Vec<usize>> {
        ids.into_iter().map(|&v| self.require(v)).collect()
    }

    /// Neighbor indices of the vertex at `index`, ascending.
    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adj[index]
    }

    pub fn neighbor_ids(&self, id: VertexId) -> Result<Vec<VertexId>> {
        let i = self.require(id)?;
        Ok(self.adj[i].iter().map(|&j| self.ids[j]).collect())
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adj[index].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(iu), Some(iv)) => self.adj[iu].binary_search(&iv).is_ok(),
            _ => false,
        }
    }

    /// Edges as `(u, v)` id pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj.iter().enumerate().flat_map(move |(i, list)| {
            list.iter()
                .filter(move |&&j| j > i)
                .map(move |&j| (self.ids[i], self.ids[j]))
        })
    }

    /// Subgraph induced on `keep`; ids outside the graph are rejected.
    pub fn induced_subgraph(&self, keep: &VertexSet) -> Result<Graph> {
        for &v in keep {
            self.require(v)?;
        }
        let edges = self.edges().filter(|(u, v)| keep.contains(u) && keep.contains(v));
        Graph::new(keep.iter().copied(), edges)
    }

    /// Single-source BFS over indices. Unreachable vertices are `None`.
    pub fn bfs_from(&self, source: usize) -> Vec<Option<usize>> {
        self.multi_source_bfs(std::iter::once(source))
    }

    /// Multi-source BFS over indices: distance to the nearest source.
    pub fn multi_source_bfs(&self, sources: impl IntoIterator<Item = usize>) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for s in sources {
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].expect("queued vertices have a distance");
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Indices within distance `radius` of `source`, ascending.
    pub fn ball(&self, source: usize, radius: usize) -> Vec<usize> {
        let mut dist: BTreeMap<usize, usize> = BTreeMap::new();
        dist.insert(source, 0);
        let mut frontier = vec![source];
        for d in 1..=radius {
            let mut next = Vec::new();
            for u in frontier {
                for &w in &self.adj[u] {
                    if let std::collections::btree_map::Entry::Vacant(e) = dist.entry(w) {
                        e.insert(d);
                        next.push(w);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            frontier = next;
        }
        dist.into_keys().collect()
    }

    /// Connected components as sorted index lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.bfs_from(0).iter().all(Option::is_some)
    }

    /// Whether the vertices at `members` induce a connected subgraph.
    pub(crate) fn induces_connected(&self, members: &[usize]) -> bool {
        let Some(&start) = members.first() else {
            return false;
        };
        let inside: BTreeSet<usize> = members.iter().copied().collect();
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if inside.contains(&w) && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == inside.len()
    }

    pub(crate) fn to_ids(&self, indices: impl IntoIterator<Item = usize>) -> VertexSet {
        indices.into_iter().map(|i| self.ids[i]).collect()
    }
}

/// Exact shortest-path distances from `source` to every vertex of its component.
pub fn bfs_distances(g: &Graph, source: VertexId) -> Result<BTreeMap<VertexId, usize>> {
    let s = g.require(source)?;
    Ok(g.bfs_from(s)
        .into_iter()
        .enumerate()
        .filter_map(|(i, d)| d.map(|d| (g.id(i), d)))
        .collect())
}

/// The closed ball N^k[v].
pub fn k_ball(g: &Graph, v: VertexId, k: usize) -> Result<VertexSet> {
    let s = g.require(v)?;
    Ok(g.to_ids(g.ball(s, k)))
}

pub fn diameter(g: &Graph) -> Result<Diameter> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let mut best = 0;
    for s in 0..g.n() {
        for d in g.bfs_from(s) {
            match d {
                Some(d) => best = best.max(d),
                None => return Ok(Diameter::Disconnected),
            }
        }
    }
    Ok(Diameter::Finite(best))
}

/// Distance from every vertex to the nearest member of `set` (ids).
pub fn distances_to_set(g: &Graph, set: &VertexSet) -> Result<Vec<Option<usize>>> {
    let sources = g.require_all(set)?;
    Ok(g.multi_source_bfs(sources))
}
