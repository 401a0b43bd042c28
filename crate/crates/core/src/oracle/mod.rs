//! Ground truth: domination checks, exact minimum distance-k dominating sets
//! and brute-force K_{2,t}-minor detection.

mod cover;
mod minor;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};

use cover::CoverProblem;
pub use minor::{has_k2t_minor, has_k2t_minor_with_budget, DEFAULT_MINOR_BUDGET, MAX_MINOR_VERTICES};

/// Branch-and-bound nodes allowed per exact solve.
pub const DEFAULT_COVER_BUDGET: u64 = 20_000_000;

/// An optimal distance-k dominating set with proof-of-work statistics.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimalCertificate {
    pub dominators: VertexSet,
    pub size: usize,
    pub nodes_explored: u64,
}

pub fn is_distance_k_dominating(g: &Graph, dominators: &VertexSet, k: usize) -> Result<bool> {
    let sources = g.require_all(dominators)?;
    Ok(g.multi_source_bfs(sources)
        .into_iter()
        .all(|d| d.is_some_and(|d| d <= k)))
}

/// γ_k(G) with the lexicographically smallest optimal set as witness.
pub fn gamma_k_exact(g: &Graph, k: usize) -> Result<OptimalCertificate> {
    gamma_k_exact_with_budget(g, k, DEFAULT_COVER_BUDGET)
}

pub fn gamma_k_exact_with_budget(g: &Graph, k: usize, budget: u64) -> Result<OptimalCertificate> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (dominators, nodes_explored) = min_extension(g, &g.vertex_set(), &VertexSet::new(), k, budget)?;
    Ok(OptimalCertificate {
        size: dominators.len(),
        dominators,
        nodes_explored,
    })
}

/// Smallest `Q ⊆ region` (lexicographically first among optima) such that
/// every vertex of `region` is within distance `k` in `g` of `Q ∪ anchors`.
///
/// Distances are measured in the whole graph, not in `g[region]`.
pub fn min_extension(
    g: &Graph,
    region: &VertexSet,
    anchors: &VertexSet,
    k: usize,
    budget: u64,
) -> Result<(VertexSet, u64)> {
    let region_idx = g.require_all(region)?;
    let anchor_idx = g.require_all(anchors)?;
    let reach = g.multi_source_bfs(anchor_idx);
    let universe = region_idx.iter().copied().filter(|&v| reach[v].map_or(true, |d| d > k));
    let sets: Vec<Vec<usize>> = region_idx.iter().map(|&c| g.ball(c, k)).collect();
    let problem = CoverProblem::new(g.n(), universe, sets);
    let solution = problem.solve(budget)?;
    let chosen = g.to_ids(solution.chosen.into_iter().map(|c| region_idx[c]));
    Ok((chosen, solution.nodes))
}
