use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{Graph, VertexId, VertexSet};
use crate::error::{Error, Result};

/// A graph contracted along a partition into connected blocks.
///
/// Loops and parallel edges produced by the contraction are discarded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientGraph {
    /// Base vertex → id of its block.
    pub block_of: BTreeMap<VertexId, VertexId>,
    /// Block id → members.
    pub blocks: BTreeMap<VertexId, VertexSet>,
    #[serde(serialize_with = "serialize_graph")]
    pub quotient: Graph,
}

fn serialize_graph<S: serde::Serializer>(g: &Graph, s: S) -> Result<S::Ok, S::Error> {
    super::GraphFile::from(g).serialize(s)
}

/// Contracts `blocks`; each block is named by its minimum member id.
pub fn contract_partition(g: &Graph, blocks: &[VertexSet]) -> Result<QuotientGraph> {
    let mut labels = BTreeMap::new();
    for block in blocks {
        let Some(&label) = block.first() else {
            return Err(Error::invalid("partition contains an empty block"));
        };
        for &v in block {
            if labels.insert(v, label).is_some() {
                return Err(Error::invalid(format!("vertex {v} lies in two blocks")));
            }
        }
    }
    contract_labeled(g, &labels)
}

/// Contracts the partition given by a vertex → block-label map.
pub fn contract_labeled(g: &Graph, block_of: &BTreeMap<VertexId, VertexId>) -> Result<QuotientGraph> {
    let mut blocks: BTreeMap<VertexId, VertexSet> = BTreeMap::new();
    for (&v, &label) in block_of {
        g.require(v)?;
        blocks.entry(label).or_default().insert(v);
    }
    if let Some(&missing) = g.ids().iter().find(|v| !block_of.contains_key(v)) {
        return Err(Error::invalid(format!(
            "vertex {missing} is not covered by the partition"
        )));
    }
    for (label, members) in &blocks {
        let idx = g.require_all(members)?;
        if !g.induces_connected(&idx) {
            return Err(Error::invalid(format!(
                "block {label} does not induce a connected subgraph"
            )));
        }
    }
    let mut edges = BTreeSet::new();
    for (u, v) in g.edges() {
        let (a, b) = (block_of[&u], block_of[&v]);
        if a != b {
            edges.insert((a.min(b), a.max(b)));
        }
    }
    let quotient = Graph::new(blocks.keys().copied(), edges)?;
    Ok(QuotientGraph {
        block_of: block_of.clone(),
        blocks,
        quotient,
    })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;

    #[test]
    fn path_pairs_contract_to_an_edge() {
        let p4 = path([1, 2, 3, 4]);
        let q = contract_partition(&p4, &[set([1, 2]), set([3, 4])]).unwrap();
        assert_eq!(q.quotient.ids(), &[1, 3]);
        assert_eq!(q.quotient.edges().collect::<Vec<_>>(), vec![(1, 3)]);
    }

    #[test]
    fn singleton_blocks_reproduce_the_graph() {
        let c6 = cycle(6);
        let singles: Vec<_> = c6.ids().iter().map(|&v| set([v])).collect();
        assert_eq!(contract_partition(&c6, &singles).unwrap().quotient, c6);
    }

    #[test]
    fn consecutive_pairs_of_c6_give_a_triangle() {
        let c6 = cycle(6);
        let q = contract_partition(&c6, &[set([0, 1]), set([2, 3]), set([4, 5])]).unwrap();
        assert_eq!(q.quotient, complete(3).relabel(&[0, 2, 4]));
    }

    #[test]
    fn rejects_bad_partitions() {
        let c6 = cycle(6);
        assert!(contract_partition(&c6, &[set([0, 3]), set([1, 2, 4, 5])]).is_err());
        assert!(contract_partition(&c6, &[set([0, 1, 2]), set([2, 3, 4, 5])]).is_err());
        assert!(contract_partition(&c6, &[set([0, 1, 2])]).is_err());
    }

    impl Graph {
        fn relabel(&self, ids: &[VertexId]) -> Graph {
            Graph::new(
                ids.iter().copied(),
                self.edges().map(|(u, v)| (ids[u as usize], ids[v as usize])),
            )
            .unwrap()
        }
    }
}
