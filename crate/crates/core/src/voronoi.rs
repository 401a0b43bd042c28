//! Voronoi cells around a center set.
//!
//! A vertex joins the nearest center; among equally near centers the one with
//! the largest id wins. Because a vertex inherits the winning label from a
//! neighbor one step closer, every cell induces a connected subgraph.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{contract_labeled, u_sets, Graph, QuotientGraph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VoronoiPartition {
    pub centers: VertexSet,
    pub cell_of: BTreeMap<VertexId, VertexId>,
    pub cells: BTreeMap<VertexId, VertexSet>,
    /// Cell members with a neighbor in another cell.
    pub borders: BTreeMap<VertexId, VertexSet>,
    /// Per cell, the representative `v_C`: within distance `radius` of the
    /// whole cell, then largest `|N^radius[v_C]|`, then largest id. Cells
    /// where no vertex reaches the whole cell have no entry.
    pub representatives: BTreeMap<VertexId, VertexId>,
    pub radius: usize,
}

pub fn build_voronoi(g: &Graph, centers: &VertexSet, radius: usize) -> Result<VoronoiPartition> {
    if centers.is_empty() {
        return Err(Error::invalid("Voronoi cells need at least one center"));
    }
    let center_idx = g.require_all(centers)?;

    // layered multi-source BFS carrying the winning center index
    let mut label: Vec<Option<usize>> = vec![None; g.n()];
    for &c in &center_idx {
        label[c] = Some(c);
    }
    let mut frontier = center_idx.clone();
    while !frontier.is_empty() {
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &u in &frontier {
            let lu = label[u].unwrap();
            for &w in g.neighbors(u) {
                if label[w].is_none() {
                    let slot = next.entry(w).or_insert(lu);
                    *slot = (*slot).max(lu);
                }
            }
        }
        for (&w, &l) in &next {
            label[w] = Some(l);
        }
        frontier = next.into_keys().collect();
    }
    if let Some(orphan) = label.iter().position(Option::is_none) {
        return Err(Error::invalid(format!(
            "vertex {} is in a component without centers",
            g.id(orphan)
        )));
    }

    let mut cell_of = BTreeMap::new();
    let mut cells: BTreeMap<VertexId, VertexSet> = centers.iter().map(|&c| (c, VertexSet::new())).collect();
    for (v, l) in label.iter().enumerate() {
        let center = g.id(l.unwrap());
        cell_of.insert(g.id(v), center);
        cells.get_mut(&center).unwrap().insert(g.id(v));
    }
    let borders = cells
        .iter()
        .map(|(&c, members)| {
            let border = members
                .iter()
                .copied()
                .filter(|&v| {
                    let i = g.index_of(v).unwrap();
                    g.neighbors(i).iter().any(|&j| cell_of[&g.id(j)] != c)
                })
                .collect();
            (c, border)
        })
        .collect();
    let representatives = cells
        .iter()
        .filter_map(|(&c, members)| representative(g, members, radius).map(|r| (c, r)))
        .collect();
    Ok(VoronoiPartition {
        centers: centers.clone(),
        cell_of,
        cells,
        borders,
        representatives,
        radius,
    })
}

fn representative(g: &Graph, members: &VertexSet, radius: usize) -> Option<VertexId> {
    let idx: Vec<usize> = members.iter().map(|&v| g.index_of(v).unwrap()).collect();
    idx.iter()
        .filter_map(|&v| {
            let ball = g.ball(v, radius);
            let covers = idx.iter().all(|w| ball.binary_search(w).is_ok());
            covers.then_some((ball.len(), v))
        })
        .max()
        .map(|(_, v)| g.id(v))
}

/// All border vertices, `V*`.
pub fn border_union(p: &VoronoiPartition) -> VertexSet {
    p.borders.values().flatten().copied().collect()
}

/// The graph obtained by contracting every cell; blocks are named by center.
pub fn cell_graph(g: &Graph, p: &VoronoiPartition) -> Result<QuotientGraph> {
    contract_labeled(g, &p.cell_of)
}

/// Number of edges of `g` with one endpoint in each of two cells.
pub fn intercell_edge_count(g: &Graph, p: &VoronoiPartition, a: VertexId, b: VertexId) -> Result<usize> {
    for c in [a, b] {
        if !p.cells.contains_key(&c) {
            return Err(Error::invalid(format!("{c} is not a cell center")));
        }
    }
    if a == b {
        return Err(Error::invalid("inter-cell edges need two distinct cells"));
    }
    Ok(g.edges()
        .filter(|(u, v)| {
            let (cu, cv) = (p.cell_of[u], p.cell_of[v]);
            (cu == a && cv == b) || (cu == b && cv == a)
        })
        .count())
}

/// Edge counts for every adjacent pair of cells, keyed by `(smaller, larger)`.
pub fn intercell_edge_counts(g: &Graph, p: &VoronoiPartition) -> BTreeMap<(VertexId, VertexId), usize> {
    let mut counts = BTreeMap::new();
    for (u, v) in g.edges() {
        let (a, b) = (p.cell_of[&u], p.cell_of[&v]);
        if a != b {
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
        }
    }
    counts
}

/// Selected vertices that fall outside the closure `U_k` of their own cell.
///
/// The closure starts from the cell's border plus its representative and is
/// grown `k` times along paths of length at most `3k`. Returns
/// `(cell center, vertex)` pairs; empty means every selection is confined.
pub fn closure_violations(
    g: &Graph,
    p: &VoronoiPartition,
    selected: &VertexSet,
    k: usize,
) -> Result<Vec<(VertexId, VertexId)>> {
    let mut out = Vec::new();
    for (&c, members) in &p.cells {
        let inside: Vec<VertexId> = members.intersection(selected).copied().collect();
        if inside.is_empty() {
            continue;
        }
        let rep = *p
            .representatives
            .get(&c)
            .ok_or_else(|| Error::invalid(format!("cell {c} has no representative within distance {}", p.radius)))?;
        let closure = u_sets(g, &p.borders[&c], rep, k)?.pop().unwrap();
        out.extend(inside.into_iter().filter(|v| !closure.contains(v)).map(|v| (c, v)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn every_vertex_a_center() {
        let g = complete(3);
        let p = build_voronoi(&g, &g.vertex_set(), 1).unwrap();
        assert!(p.cells.iter().all(|(c, m)| *m == set([*c])));
        assert!(p.borders.iter().all(|(c, b)| *b == set([*c])));
        assert_eq!(border_union(&p), set(0..3));
        assert_eq!(cell_graph(&g, &p).unwrap().quotient, g);
    }

    #[test]
    fn p5_two_centers_ties_go_to_larger_id() {
        let p5 = path(1..=5);
        let p = build_voronoi(&p5, &set([1, 5]), 2).unwrap();
        assert_eq!(p.cells[&1], set([1, 2]));
        assert_eq!(p.cells[&5], set([3, 4, 5]));
        assert_eq!(p.borders[&1], set([2]));
        assert_eq!(p.borders[&5], set([3]));
        assert_eq!(border_union(&p), set([2, 3]));
        let h = cell_graph(&p5, &p).unwrap();
        assert_eq!(h.quotient.edges().collect::<Vec<_>>(), vec![(1, 5)]);
        assert_eq!(intercell_edge_count(&p5, &p, 1, 5).unwrap(), 1);
        // every member of {3,4,5} reaches the cell; 3 has the largest 2-ball
        assert_eq!(p.representatives[&5], 3);
        assert_eq!(p.representatives[&1], 2);
    }

    #[test]
    fn single_cell() {
        let c6 = cycle(6);
        let p = build_voronoi(&c6, &set([0]), 3).unwrap();
        assert_eq!(p.cells[&0], c6.vertex_set());
        assert!(p.borders[&0].is_empty());
        assert!(border_union(&p).is_empty());
        let h = cell_graph(&c6, &p).unwrap();
        assert_eq!(h.quotient.n(), 1);
        assert_eq!(h.quotient.m(), 0);
    }

    #[test]
    fn opposite_centers_on_c6() {
        let c6 = cycle(6);
        let p = build_voronoi(&c6, &set([0, 3]), 1).unwrap();
        assert_eq!(intercell_edge_count(&c6, &p, 0, 3).unwrap(), 2);
        assert_eq!(intercell_edge_counts(&c6, &p), BTreeMap::from([((0, 3), 2)]));
    }

    #[test]
    fn non_adjacent_cells_share_no_edges() {
        let p7 = path(0..7);
        let p = build_voronoi(&p7, &set([0, 3, 6]), 1).unwrap();
        assert_eq!(intercell_edge_count(&p7, &p, 0, 6).unwrap(), 0);
        assert!(intercell_edge_count(&p7, &p, 0, 0).is_err());
        assert!(intercell_edge_count(&p7, &p, 0, 1).is_err());
    }

    #[test]
    fn errors() {
        let c6 = cycle(6);
        assert!(build_voronoi(&c6, &set([]), 1).is_err());
        assert!(build_voronoi(&c6, &set([42]), 1).is_err());
        let split = Graph::new(0..4, [(0, 1), (2, 3)]).unwrap();
        assert!(build_voronoi(&split, &set([0]), 1).is_err());
    }

    #[test]
    fn representative_is_missing_when_cell_is_too_wide() {
        let p5 = path(0..5);
        let p = build_voronoi(&p5, &set([0]), 1).unwrap();
        assert!(p.representatives.is_empty());
        assert!(closure_violations(&p5, &p, &set([0]), 1).is_err());
    }

    #[test]
    fn closure_contains_the_representative_side() {
        let p5 = path(1..=5);
        let p = build_voronoi(&p5, &set([1, 5]), 2).unwrap();
        assert!(closure_violations(&p5, &p, &set([2, 3]), 2).unwrap().is_empty());
        // a lone seed closes over nothing but itself
        assert_eq!(closure_violations(&p5, &p, &set([4]), 2).unwrap(), vec![(5, 4)]);
    }
}
