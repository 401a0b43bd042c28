//! The clustered `(1 + α)` pipeline and its bounded-degree variant.
//!
//! Both seed with a cheap dominating set, grow cells around the seeds,
//! contract the cells, partition the cell graph into low-boundary blocks and
//! lift the blocks back to `G`. A set of boundary vertices is charged up front
//! and every lifted block is then completed exactly, with coverage measured
//! in the whole graph.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::bounds;
use crate::decomposition::{
    fraction_to_f64, low_boundary_partition, partition_boundary, serialize_fraction, ClusterPartition, Fraction,
};
use crate::domset::domset;
use crate::error::{Error, Result};
use crate::graph::{diameter, Graph, QuotientGraph, VertexId, VertexSet};
use crate::oracle::{self, DEFAULT_COVER_BUDGET};
use crate::voronoi::{build_voronoi, cell_graph, intercell_edge_counts, VoronoiPartition};

/// Where the decomposition's boundary fraction comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EpsilonSource {
    /// The closed-form fraction for target ratio `1 + alpha`. It is far
    /// below `1/|V(H)|` at any practical size, so it is applied as
    /// `1/(|V(H)| + 1)`, which yields the same partition: one block per
    /// component of the cell graph.
    Alpha {
        #[serde(serialize_with = "serialize_fraction")]
        alpha: Fraction,
    },
    Direct(#[serde(serialize_with = "serialize_fraction")] Fraction),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Clustered,
    BoundedDegree,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxAudit {
    pub q_size: usize,
    /// Size of the set charged before the block solves: `∂(P′)` for the
    /// clustered pipeline, the border-cell centers for the bounded-degree one.
    pub charged_size: usize,
    pub lifted_boundary_size: usize,
    pub cell_boundary_size: usize,
    pub block_sizes: Vec<usize>,
    pub block_solution_sizes: Vec<usize>,
    pub block_search_nodes: Vec<u64>,
    pub q_is_dominating: bool,
    /// The partition has an empty boundary, so every block is a component.
    pub one_block_per_component: bool,
    pub max_intercell_edges: usize,
    /// `|∂(P′)| ≤ 2 |∂(P)| · max_intercell_edges`; diagnostic only.
    pub lifted_boundary_within_edge_bound: bool,
    pub quotient_within_sparsity: bool,
    /// log10 of the closed-form epsilon, when the source is `Alpha`.
    pub log10_formula_epsilon: Option<f64>,
    pub connected: bool,
    /// `diam(G) ≥ 4k`; `None` when `G` is disconnected.
    pub diameter_at_least_4k: Option<bool>,
    /// Bounded-degree only: vertices whose `k`-ball leaves their block but
    /// that no charged center of their block dominates. Always empty when the
    /// cells and blocks are consistent.
    pub transfer_violations: Vec<VertexId>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproxRun {
    pub variant: Variant,
    pub k: usize,
    pub t: usize,
    pub epsilon_source: EpsilonSource,
    #[serde(serialize_with = "serialize_fraction")]
    pub epsilon_used: Fraction,
    pub seed: VertexSet,
    pub cells: VoronoiPartition,
    pub cell_graph: QuotientGraph,
    pub partition: ClusterPartition,
    /// `V_1..V_l`, in partition order.
    pub blocks: Vec<VertexSet>,
    /// `∂(P′)`.
    pub lifted_boundary: VertexSet,
    pub charged: VertexSet,
    pub block_solutions: Vec<VertexSet>,
    pub dominators: VertexSet,
    pub audit: ApproxAudit,
}

/// Comparison of a run with a certified optimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OptimumAudit {
    pub optimum: usize,
    pub q_size: usize,
    /// `|Q| ≤ charged + γ_k`.
    pub within_charged_plus_optimum: bool,
    /// `None` unless the partition had one block per component; then
    /// whether `|Q| = γ_k`.
    pub exact_when_unsplit: Option<bool>,
}

impl ApproxRun {
    pub fn size(&self) -> usize {
        self.dominators.len()
    }

    pub fn audit_against_optimum(&self, optimum: usize) -> OptimumAudit {
        let q = self.size();
        OptimumAudit {
            optimum,
            q_size: q,
            within_charged_plus_optimum: q <= self.audit.charged_size + optimum,
            exact_when_unsplit: self.audit.one_block_per_component.then_some(q == optimum),
        }
    }
}

/// Lifts a partition of the cell graph to `G`: each block becomes the union
/// of its cells. Returns the lifted blocks and their boundary `∂(P′)`.
pub fn lift_partition(
    g: &Graph,
    cells: &VoronoiPartition,
    p: &ClusterPartition,
) -> Result<(Vec<VertexSet>, VertexSet)> {
    let mut seen = VertexSet::new();
    let mut lifted = Vec::with_capacity(p.blocks.len());
    for block in &p.blocks {
        let mut members = VertexSet::new();
        for c in block {
            let cell = cells
                .cells
                .get(c)
                .ok_or_else(|| Error::invalid(format!("partition block names {c}, which is not a cell center")))?;
            if !seen.insert(*c) {
                return Err(Error::invalid(format!("cell {c} lies in two blocks")));
            }
            members.extend(cell);
        }
        lifted.push(members);
    }
    if seen != cells.centers {
        return Err(Error::invalid("partition does not cover every cell"));
    }
    let boundary = partition_boundary(g, &lifted);
    Ok((lifted, boundary))
}

/// Smallest `Q_i ⊆ block` (lexicographically first among optima) such that
/// `Q_i ∪ anchors` dominates `block` within distance `k` in `g`.
pub fn solve_block_exact(g: &Graph, block: &VertexSet, anchors: &VertexSet, k: usize) -> Result<VertexSet> {
    Ok(solve_block_counted(g, block, anchors, k)?.0)
}

fn solve_block_counted(g: &Graph, block: &VertexSet, anchors: &VertexSet, k: usize) -> Result<(VertexSet, u64)> {
    if block.is_empty() {
        return Err(Error::invalid("block is empty"));
    }
    oracle::min_extension(g, block, anchors, k, DEFAULT_COVER_BUDGET)
}

pub fn k_domset_approx(g: &Graph, k: usize, t: usize, source: EpsilonSource) -> Result<ApproxRun> {
    let seed = domset(g, k)?.dominators;
    let log10_formula = |alpha: f64| bounds::log10_pipeline_epsilon(alpha, k, t);
    pipeline(g, k, t, source, Variant::Clustered, seed, log10_formula)
}

/// The variant for graphs where `γ_1 ≤ C γ_k`: cells are the stars of a
/// radius-one seed and the centers of cells on the partition boundary are
/// charged instead of the whole lifted boundary.
pub fn bounded_degree_approx(g: &Graph, k: usize, t: usize, c: Fraction, source: EpsilonSource) -> Result<ApproxRun> {
    if c <= Fraction::from_integer(0) {
        return Err(Error::invalid("C must be positive"));
    }
    let seed = domset(g, 1)?.dominators;
    let log10_c = fraction_to_f64(c).log10();
    let log10_formula = |alpha: f64| alpha.log10() - log10_c - bounds::log10_domset_ratio(1, t);
    pipeline(g, k, t, source, Variant::BoundedDegree, seed, log10_formula)
}

fn pipeline(
    g: &Graph,
    k: usize,
    t: usize,
    source: EpsilonSource,
    variant: Variant,
    seed: VertexSet,
    log10_formula: impl Fn(f64) -> f64,
) -> Result<ApproxRun> {
    if t < 2 {
        return Err(Error::invalid("t must be at least 2"));
    }
    let cells = build_voronoi(g, &seed, k)?;
    let h = cell_graph(g, &cells)?;
    let w = h.quotient.n();
    let (epsilon_used, log10_formula_epsilon) = match source {
        EpsilonSource::Direct(eps) => (eps, None),
        EpsilonSource::Alpha { alpha } => {
            if alpha <= Fraction::from_integer(0) || alpha >= Fraction::from_integer(1) {
                return Err(Error::invalid(format!("alpha must lie in (0, 1), got {alpha}")));
            }
            let log10 = log10_formula(fraction_to_f64(alpha));
            let floor = Fraction::new(1, w as u64 + 1);
            let used = if log10 < fraction_to_f64(floor).log10() {
                floor
            } else {
                const SCALE: u64 = 1_000_000_000_000;
                Fraction::new((10f64.powf(log10) * SCALE as f64).floor().max(1.0) as u64, SCALE)
            };
            (used, Some(log10))
        }
    };
    let partition = low_boundary_partition(&h.quotient, epsilon_used)?;
    let (blocks, lifted_boundary) = lift_partition(g, &cells, &partition)?;

    let charged = match variant {
        Variant::Clustered => lifted_boundary.clone(),
        Variant::BoundedDegree => partition.boundary.clone(),
    };
    let solved: Vec<(VertexSet, u64)> = blocks
        .par_iter()
        .map(|block| {
            let anchors = block.intersection(&charged).copied().collect();
            solve_block_counted(g, block, &anchors, k)
        })
        .collect::<Result<_>>()?;
    let mut dominators = charged.clone();
    for (q, _) in &solved {
        dominators.extend(q);
    }

    let transfer_violations = match variant {
        Variant::Clustered => Vec::new(),
        Variant::BoundedDegree => transfer_violations(g, &blocks, &charged, k),
    };
    let max_intercell_edges = intercell_edge_counts(g, &cells).into_values().max().unwrap_or(0);
    let connected = g.is_connected();
    let audit = ApproxAudit {
        q_size: dominators.len(),
        charged_size: charged.len(),
        lifted_boundary_size: lifted_boundary.len(),
        cell_boundary_size: partition.boundary.len(),
        block_sizes: blocks.iter().map(VertexSet::len).collect(),
        block_solution_sizes: solved.iter().map(|(q, _)| q.len()).collect(),
        block_search_nodes: solved.iter().map(|&(_, n)| n).collect(),
        q_is_dominating: oracle::is_distance_k_dominating(g, &dominators, k)?,
        one_block_per_component: partition.boundary.is_empty(),
        max_intercell_edges,
        lifted_boundary_within_edge_bound: lifted_boundary.len() <= 2 * partition.boundary.len() * max_intercell_edges,
        quotient_within_sparsity: bounds::within_sparsity_bound(w, h.quotient.m(), t),
        log10_formula_epsilon,
        connected,
        diameter_at_least_4k: if connected {
            diameter(g)?.finite().map(|d| d >= 4 * k)
        } else {
            None
        },
        transfer_violations,
    };
    Ok(ApproxRun {
        variant,
        k,
        t,
        epsilon_source: source,
        epsilon_used,
        seed,
        cells,
        cell_graph: h,
        partition,
        blocks,
        lifted_boundary,
        charged,
        block_solutions: solved.into_iter().map(|(q, _)| q).collect(),
        dominators,
        audit,
    })
}

/// Vertices whose `k`-ball reaches outside their block without a charged
/// vertex of their own block within distance `k`.
fn transfer_violations(g: &Graph, blocks: &[VertexSet], charged: &VertexSet, k: usize) -> Vec<VertexId> {
    let block_of: BTreeMap<VertexId, usize> = blocks
        .iter()
        .enumerate()
        .flat_map(|(i, b)| b.iter().map(move |&v| (v, i)))
        .collect();
    let mut out = Vec::new();
    for v in 0..g.n() {
        let home = block_of[&g.id(v)];
        let ball = g.ball(v, k);
        let crosses = ball.iter().any(|&u| block_of[&g.id(u)] != home);
        let covered = ball
            .iter()
            .any(|&u| block_of[&g.id(u)] == home && charged.contains(&g.id(u)));
        if crosses && !covered {
            out.push(g.id(v));
        }
    }
    out
}

/// Largest possible radius-`(k - 1)` ball at maximum degree `L`. Replacing
/// each k-dominator by its whole `(k - 1)`-ball gives a 1-dominating set, so
/// `γ_1 ≤ C γ_k`. `None` on overflow or `k = 0`.
pub fn degree_bounded_constant(max_degree: usize, k: usize) -> Option<u64> {
    let l = max_degree as u64;
    let mut total: u64 = 1;
    let mut layer = l;
    if k == 0 {
        return None;
    }
    for _ in 1..k {
        total = total.checked_add(layer)?;
        layer = layer.checked_mul(l.saturating_sub(1))?;
    }
    Some(total)
}

/// Checks `γ_1 ≤ C γ_k` exactly.
pub fn is_c_gamma_bounded(g: &Graph, k: usize, c: Fraction) -> Result<bool> {
    let g1 = oracle::gamma_k_exact(g, 1)?.size as u64;
    let gk = oracle::gamma_k_exact(g, k)?.size as u64;
    Ok(Fraction::from_integer(g1) <= c * Fraction::from_integer(gk))
}
