//! The constant-round distance-k dominating set heuristic: every vertex `v`
//! picks, inside its ball `N^k[v]`, the vertex `w` whose own ball is largest,
//! breaking ties by larger id. The picks form the output set.
//!
//! As a LOCAL program this takes `2k` rounds: `k` rounds of adjacency flooding
//! give each node its ball size, and `k` more rounds flood the ball sizes so
//! each node can compare all candidates in its ball.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bounds;
use crate::error::{Error, Result};
use crate::graph::{Diameter, Graph, VertexId, VertexSet};
use crate::local::{self, AdjacencyTable, Batch, Inbox, NodeProgram, Schedule, Step};
use crate::oracle;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DomSetRun {
    pub k: usize,
    /// `v → w_v`.
    pub chosen: BTreeMap<VertexId, VertexId>,
    pub dominators: VertexSet,
    /// `v → |N^k[v]|`.
    pub ball_sizes: BTreeMap<VertexId, usize>,
    pub rounds: usize,
    pub messages: u64,
}

impl DomSetRun {
    pub fn size(&self) -> usize {
        self.dominators.len()
    }
}

#[derive(Clone, Debug)]
pub enum DomSetMessage {
    Lists(Batch),
    Sizes(Vec<(VertexId, usize)>),
}

#[derive(Clone, Debug)]
pub struct DomSetState {
    id: VertexId,
    table: AdjacencyTable,
    sizes: BTreeMap<VertexId, usize>,
    fresh: Vec<(VertexId, usize)>,
}

/// Node program for the heuristic; halts in round `2k` with `(w_v, |N^k[v]|)`.
pub struct DomSetProgram {
    pub k: usize,
}

impl NodeProgram for DomSetProgram {
    type State = DomSetState;
    type Message = DomSetMessage;
    type Output = (VertexId, usize);

    fn init(&self, id: VertexId, neighbors: &[VertexId]) -> DomSetState {
        DomSetState {
            id,
            table: AdjacencyTable::new(id, neighbors),
            sizes: BTreeMap::new(),
            fresh: Vec::new(),
        }
    }

    fn on_round(
        &self,
        round: usize,
        st: &mut DomSetState,
        inbox: &Inbox<DomSetMessage>,
    ) -> Step<DomSetMessage, (VertexId, usize)> {
        let k = self.k;
        if round <= k {
            st.table.absorb(inbox.values().filter_map(|m| match m {
                DomSetMessage::Lists(batch) => Some(batch),
                DomSetMessage::Sizes(_) => None,
            }));
            if round < k {
                return Step::send(DomSetMessage::Lists(st.table.take_fresh()));
            }
            // the table now holds exactly the lists of N^k[v]
            let own = st.table.known();
            st.sizes.insert(st.id, own);
            st.fresh.push((st.id, own));
        } else {
            for msg in inbox.values() {
                if let DomSetMessage::Sizes(batch) = msg {
                    for &(v, q) in batch {
                        if st.sizes.insert(v, q).is_none() {
                            st.fresh.push((v, q));
                        }
                    }
                }
            }
        }
        if round == 2 * k {
            let (&w, _) = st
                .sizes
                .iter()
                .max_by_key(|(&v, &q)| (q, v))
                .expect("own size is always known");
            Step::halt((w, st.sizes[&st.id]))
        } else {
            Step::send(DomSetMessage::Sizes(std::mem::take(&mut st.fresh)))
        }
    }
}

/// Runs the heuristic on the LOCAL simulator.
pub fn domset(g: &Graph, k: usize) -> Result<DomSetRun> {
    domset_with(g, k, Schedule::Sequential)
}

pub fn domset_with(g: &Graph, k: usize, schedule: Schedule) -> Result<DomSetRun> {
    check_args(g, k)?;
    let trace = local::run(g, &DomSetProgram { k }, local::default_max_rounds(k), schedule)?;
    let chosen: BTreeMap<_, _> = trace.outputs.iter().map(|(&v, &(w, _))| (v, w)).collect();
    Ok(DomSetRun {
        k,
        dominators: chosen.values().copied().collect(),
        ball_sizes: trace.outputs.iter().map(|(&v, &(_, q))| (v, q)).collect(),
        chosen,
        rounds: trace.rounds,
        messages: trace.messages,
    })
}

/// The same selection computed directly from global balls, no message passing.
pub fn domset_centralized(g: &Graph, k: usize) -> Result<DomSetRun> {
    check_args(g, k)?;
    let balls: Vec<Vec<usize>> = (0..g.n()).map(|v| g.ball(v, k)).collect();
    let mut chosen = BTreeMap::new();
    for (v, ball) in balls.iter().enumerate() {
        // indices follow id order, so the larger index is the larger id
        let w = *ball
            .iter()
            .max_by_key(|&&w| (balls[w].len(), w))
            .expect("a ball contains its center");
        chosen.insert(g.id(v), g.id(w));
    }
    Ok(DomSetRun {
        k,
        dominators: chosen.values().copied().collect(),
        ball_sizes: (0..g.n()).map(|v| (g.id(v), balls[v].len())).collect(),
        chosen,
        rounds: 2 * k,
        messages: 0,
    })
}

/// The heuristic with the small-component rule: components of diameter below
/// `4k` are solved exactly (every vertex can see such a component whole within
/// `2k` rounds), the rest run the heuristic.
pub fn domset_with_small_components(g: &Graph, k: usize) -> Result<VertexSet> {
    check_args(g, k)?;
    let mut out = VertexSet::new();
    for comp in g.components() {
        let sub = g.induced_subgraph(&g.to_ids(comp))?;
        let small = matches!(crate::graph::diameter(&sub)?, Diameter::Finite(d) if d < 4 * k);
        if small {
            out.extend(oracle::gamma_k_exact(&sub, k)?.dominators);
        } else {
            out.extend(domset(&sub, k)?.dominators);
        }
    }
    Ok(out)
}

fn check_args(g: &Graph, k: usize) -> Result<()> {
    if k < 1 {
        return Err(Error::invalid("radius k must be at least 1"));
    }
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok(())
}

/// Size of a heuristic run against a certified optimum.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioReport {
    pub found: usize,
    pub optimum: usize,
    pub ratio: f64,
    pub found_is_dominating: bool,
    /// log10 of the closed-form ceiling on the ratio for this `(k, t)`.
    pub log10_ceiling: f64,
    pub within_ceiling: bool,
}

impl RatioReport {
    pub fn passes(&self) -> bool {
        self.found_is_dominating && self.ratio >= 1.0 && self.within_ceiling
    }
}

pub fn approximation_report(
    g: &Graph,
    k: usize,
    t: usize,
    run: &DomSetRun,
    optimum: &VertexSet,
) -> Result<RatioReport> {
    if !oracle::is_distance_k_dominating(g, optimum, k)? {
        return Err(Error::invalid("claimed optimum is not distance-k dominating"));
    }
    let ratio = run.size() as f64 / optimum.len() as f64;
    let log10_ceiling = bounds::log10_domset_ratio(k, t);
    Ok(RatioReport {
        found: run.size(),
        optimum: optimum.len(),
        ratio,
        found_is_dominating: oracle::is_distance_k_dominating(g, &run.dominators, k)?,
        log10_ceiling,
        within_ceiling: bounds::fits_under(ratio, log10_ceiling),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn star_picks_its_center() {
        let s = star(3, [1, 2, 4, 5, 6]);
        let run = domset(&s, 1).unwrap();
        assert_eq!(run.ball_sizes[&3], 6);
        assert_eq!(run.ball_sizes[&1], 2);
        assert!(run.chosen.values().all(|&w| w == 3));
        assert_eq!(run.dominators, set([3]));
    }

    #[test]
    fn p5_radius_two() {
        let p5 = path(1..=5);
        let run = domset(&p5, 2).unwrap();
        assert_eq!(run.ball_sizes, BTreeMap::from([(1, 3), (2, 4), (3, 5), (4, 4), (5, 3)]));
        assert_eq!(run.dominators, set([3]));
        assert_eq!(run.rounds, 4);
    }

    #[test]
    fn c6_radius_one_breaks_ties_by_id() {
        let run = domset(&cycle(6), 1).unwrap();
        assert_eq!(
            run.chosen,
            BTreeMap::from([(0, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 5)])
        );
        assert_eq!(run.dominators, set([2, 3, 4, 5]));
    }

    #[test]
    fn distributed_matches_centralized() {
        let g = Graph::new(
            0..10,
            [
                (0, 1),
                (1, 2),
                (2, 0),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 3),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 6),
            ],
        )
        .unwrap();
        for k in 1..4 {
            let mut a = domset(&g, k).unwrap();
            let b = domset_centralized(&g, k).unwrap();
            a.messages = 0;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn rejects_zero_radius_and_empty_graphs() {
        assert!(domset(&path(0..3), 0).is_err());
        assert!(matches!(
            domset(&Graph::new([], []).unwrap(), 1),
            Err(Error::EmptyGraph)
        ));
    }

    #[test]
    fn ratio_reports() {
        let p5 = path(1..=5);
        let run = domset(&p5, 2).unwrap();
        let report = approximation_report(&p5, 2, 2, &run, &set([3])).unwrap();
        assert_eq!(report.ratio, 1.0);
        assert!(report.passes());

        let c6 = cycle(6);
        let run = domset(&c6, 1).unwrap();
        let report = approximation_report(&c6, 1, 3, &run, &set([0, 3])).unwrap();
        assert_eq!(report.ratio, 2.0);
        assert!(report.ratio <= c6.n() as f64);
        assert!(approximation_report(&c6, 1, 3, &run, &set([0])).is_err());
    }

    #[test]
    fn small_components_are_solved_exactly() {
        // C_6 has diameter 3 < 4: exact answer has two vertices, not four
        assert_eq!(domset_with_small_components(&cycle(6), 1).unwrap().len(), 2);
        let g = Graph::new(0..8, [(0, 1), (1, 2), (3, 4), (4, 5), (5, 6), (6, 7)]).unwrap();
        let d = domset_with_small_components(&g, 1).unwrap();
        assert!(oracle::is_distance_k_dominating(&g, &d, 1).unwrap());
        assert!(d.contains(&1));
    }
}
