//! Round-synchronous LOCAL-model simulator.
//!
//! Every vertex runs the same [`NodeProgram`]. In round `r` a node reads the
//! messages its neighbors sent in round `r - 1` (nothing in round 0), updates
//! its state, and may send one message per neighbor and/or halt with an
//! output. Messages are unbounded values; the engine only counts them.
//!
//! Nodes start out knowing their own id and the ids of their neighbors, so
//! after `r` rounds a node can know the full induced subgraph on its `r`-ball.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::SplitMix64;
use crate::graph::{Graph, VertexId};

pub type Inbox<M> = BTreeMap<VertexId, M>;

pub enum Outgoing<M> {
    Silent,
    Broadcast(M),
    /// One message per listed neighbor.
    Direct(Vec<(VertexId, M)>),
}

pub struct Step<M, O> {
    pub send: Outgoing<M>,
    pub halt: Option<O>,
}

impl<M, O> Step<M, O> {
    pub fn send(msg: M) -> Self {
        Step {
            send: Outgoing::Broadcast(msg),
            halt: None,
        }
    }

    pub fn halt(output: O) -> Self {
        Step {
            send: Outgoing::Silent,
            halt: Some(output),
        }
    }
}

/// A deterministic per-vertex program. Implementations must not depend on the
/// order in which nodes of one round are evaluated.
pub trait NodeProgram: Sync {
    type State: Send;
    type Message: Clone + Send + Sync;
    type Output: Clone + Send;

    fn init(&self, id: VertexId, neighbors: &[VertexId]) -> Self::State;

    fn on_round(
        &self,
        round: usize,
        state: &mut Self::State,
        inbox: &Inbox<Self::Message>,
    ) -> Step<Self::Message, Self::Output>;
}

/// How nodes within a round are evaluated. All modes must agree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Ascending id order on the calling thread.
    #[default]
    Sequential,
    /// Rayon parallel iteration.
    Parallel,
    /// A fresh seeded permutation every round, to flush out order dependence.
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExecutionTrace<O> {
    /// Round index in which the last node halted.
    pub rounds: usize,
    pub messages: u64,
    pub outputs: BTreeMap<VertexId, O>,
}

/// A run that hit `max_rounds`, with whatever nodes produced before that.
#[derive(Debug)]
pub struct Timeout<O> {
    pub max_rounds: usize,
    pub partial: ExecutionTrace<O>,
}

#[derive(Debug)]
pub enum RunError<O> {
    Timeout(Timeout<O>),
    InvalidRecipient { from: VertexId, to: VertexId },
}

impl<O> From<RunError<O>> for Error {
    fn from(e: RunError<O>) -> Self {
        match e {
            RunError::Timeout(t) => Error::RoundLimit {
                max_rounds: t.max_rounds,
            },
            RunError::InvalidRecipient { from, to } => Error::InvalidRecipient { from, to },
        }
    }
}

struct Node<P: NodeProgram> {
    state: P::State,
    inbox: Inbox<P::Message>,
    halted: bool,
}

pub fn run<P: NodeProgram>(
    g: &Graph,
    program: &P,
    max_rounds: usize,
    schedule: Schedule,
) -> Result<ExecutionTrace<P::Output>, RunError<P::Output>> {
    let mut nodes: Vec<Node<P>> = (0..g.n())
        .map(|i| {
            let nbrs: Vec<VertexId> = g.neighbors(i).iter().map(|&j| g.id(j)).collect();
            Node {
                state: program.init(g.id(i), &nbrs),
                inbox: Inbox::new(),
                halted: false,
            }
        })
        .collect();
    let mut trace = ExecutionTrace {
        rounds: 0,
        messages: 0,
        outputs: BTreeMap::new(),
    };
    let mut active = nodes.len();
    let mut round = 0;
    let mut shuffler = match schedule {
        Schedule::Shuffled(seed) => Some(SplitMix64::new(seed)),
        _ => None,
    };

    while active > 0 {
        if round > max_rounds {
            return Err(RunError::Timeout(Timeout {
                max_rounds,
                partial: trace,
            }));
        }
        let step = |node: &mut Node<P>| {
            if node.halted {
                return None;
            }
            let inbox = std::mem::take(&mut node.inbox);
            Some(program.on_round(round, &mut node.state, &inbox))
        };
        let steps: Vec<Option<Step<P::Message, P::Output>>> = match schedule {
            Schedule::Sequential => nodes.iter_mut().map(step).collect(),
            Schedule::Parallel => nodes.par_iter_mut().map(step).collect(),
            Schedule::Shuffled(_) => {
                let mut order: Vec<usize> = (0..nodes.len()).collect();
                shuffler.as_mut().unwrap().shuffle(&mut order);
                let mut out: Vec<Option<Step<_, _>>> = (0..nodes.len()).map(|_| None).collect();
                for i in order {
                    out[i] = step(&mut nodes[i]);
                }
                out
            }
        };

        for (i, step) in steps.into_iter().enumerate() {
            let Some(step) = step else { continue };
            let from = g.id(i);
            match step.send {
                Outgoing::Silent => {}
                Outgoing::Broadcast(msg) => {
                    for &j in g.neighbors(i) {
                        nodes[j].inbox.insert(from, msg.clone());
                        trace.messages += 1;
                    }
                }
                Outgoing::Direct(list) => {
                    for (to, msg) in list {
                        let j = g
                            .index_of(to)
                            .filter(|j| g.neighbors(i).binary_search(j).is_ok())
                            .ok_or(RunError::InvalidRecipient { from, to })?;
                        nodes[j].inbox.insert(from, msg);
                        trace.messages += 1;
                    }
                }
            }
            if let Some(output) = step.halt {
                nodes[i].halted = true;
                active -= 1;
                trace.outputs.insert(from, output);
                trace.rounds = round;
            }
        }
        // messages to halted nodes are dropped
        for node in nodes.iter_mut().filter(|n| n.halted) {
            node.inbox.clear();
        }
        round += 1;
    }
    Ok(trace)
}

/// Default round budget for the shipped programs at radius `k`.
pub fn default_max_rounds(k: usize) -> usize {
    10 * (k + 1)
}

/// Collects adjacency lists by flooding; after round `r` the table holds the
/// list of every vertex within distance `r`.
#[derive(Clone, Debug, Default)]
pub struct AdjacencyTable {
    lists: BTreeMap<VertexId, Vec<VertexId>>,
    fresh: Vec<(VertexId, Vec<VertexId>)>,
}

impl AdjacencyTable {
    pub fn new(id: VertexId, neighbors: &[VertexId]) -> Self {
        let own = (id, neighbors.to_vec());
        AdjacencyTable {
            lists: BTreeMap::from([own.clone()]),
            fresh: vec![own],
        }
    }

    /// Lists learned since the last call, to forward.
    pub fn take_fresh(&mut self) -> Vec<(VertexId, Vec<VertexId>)> {
        std::mem::take(&mut self.fresh)
    }

    pub fn absorb<'a>(&mut self, batches: impl IntoIterator<Item = &'a Vec<(VertexId, Vec<VertexId>)>>) {
        for batch in batches {
            for (v, list) in batch {
                if !self.lists.contains_key(v) {
                    self.lists.insert(*v, list.clone());
                    self.fresh.push((*v, list.clone()));
                }
            }
        }
    }

    pub fn known(&self) -> usize {
        self.lists.len()
    }

    /// Induced subgraph on the vertices whose lists are known.
    pub fn induced(&self) -> Graph {
        let edges = self.lists.iter().flat_map(|(&u, list)| {
            list.iter()
                .filter(move |w| self.lists.contains_key(w) && u < **w)
                .map(move |&w| (u, w))
        });
        Graph::new(self.lists.keys().copied(), edges).expect("flooded lists describe a simple graph")
    }
}

/// Flood-and-collect: every node halts after exactly `k` rounds with the
/// induced subgraph on its `k`-ball.
pub struct GatherBall {
    pub radius: usize,
}

pub type Batch = Vec<(VertexId, Vec<VertexId>)>;

impl NodeProgram for GatherBall {
    type State = AdjacencyTable;
    type Message = Batch;
    type Output = Graph;

    fn init(&self, id: VertexId, neighbors: &[VertexId]) -> AdjacencyTable {
        AdjacencyTable::new(id, neighbors)
    }

    fn on_round(&self, round: usize, table: &mut AdjacencyTable, inbox: &Inbox<Batch>) -> Step<Batch, Graph> {
        table.absorb(inbox.values());
        if round == self.radius {
            Step::halt(table.induced())
        } else {
            Step::send(table.take_fresh())
        }
    }
}

/// Every vertex's view of its `k`-ball, computed by running [`GatherBall`].
pub fn gather_k_hop(g: &Graph, k: usize) -> Result<BTreeMap<VertexId, Graph>> {
    let trace = run(g, &GatherBall { radius: k }, k, Schedule::Sequential)?;
    Ok(trace.outputs)
}
