//! Brute-force K_{2,t}-minor detection for small graphs.
//!
//! A K_{2,t} minor is a pair of disjoint connected hub sets A, B plus t
//! disjoint connected connector sets in the rest of the graph, each touching
//! both hubs. Minimal connectors are paths from N(A) to N(B), so for fixed
//! hubs the best number of connectors is a vertex-disjoint path count, which
//! Menger turns into a unit-capacity max flow. Only the hub pairs are
//! enumerated.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest vertex count accepted; hub sets are enumerated as `u32` masks.
pub const MAX_MINOR_VERTICES: usize = 20;

/// Hub-pair inspections allowed before giving up.
pub const DEFAULT_MINOR_BUDGET: u64 = 400_000_000;

pub fn has_k2t_minor(g: &Graph, t: usize) -> Result<bool> {
    has_k2t_minor_with_budget(g, t, DEFAULT_MINOR_BUDGET)
}

pub fn has_k2t_minor_with_budget(g: &Graph, t: usize, budget: u64) -> Result<bool> {
    if t < 2 {
        return Err(Error::invalid("K_{2,t} minor search needs t >= 2"));
    }
    let n = g.n();
    if n > MAX_MINOR_VERTICES {
        return Err(Error::BudgetExceeded {
            what: "K_{2,t} minor search (vertex cap)",
            budget: MAX_MINOR_VERTICES as u64,
        });
    }
    if n < t + 2 {
        return Ok(false);
    }
    let adj: Vec<u32> = (0..n)
        .map(|i| g.neighbors(i).iter().fold(0u32, |m, &j| m | (1 << j)))
        .collect();
    let full: u32 = (1u32 << n) - 1;
    let boundary = |mask: u32| -> u32 {
        let mut out = 0;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= adj[i];
        }
        out & !mask
    };

    // connected sets with at least t outside neighbors, by lowest member
    let mut hubs: Vec<(u32, u32)> = Vec::new();
    for mask in 1..=full {
        if is_connected(mask, &adj) {
            let nb = boundary(mask);
            if nb.count_ones() as usize >= t {
                hubs.push((mask, nb));
            }
        }
    }
    hubs.sort_by_key(|&(m, _)| (m.trailing_zeros(), m));

    let mut inspected = 0u64;
    let mut flow = DisjointPaths::new(n, &adj);
    for (ai, &(a, na)) in hubs.iter().enumerate() {
        let low_a = a.trailing_zeros();
        for &(b, nb) in &hubs[ai + 1..] {
            if b & a != 0 || b.trailing_zeros() <= low_a {
                continue;
            }
            inspected += 1;
            if inspected > budget {
                return Err(Error::BudgetExceeded {
                    what: "K_{2,t} minor search",
                    budget,
                });
            }
            let rest = full & !(a | b);
            let (xs, ys) = (na & rest, nb & rest);
            if (xs.count_ones() as usize) < t || (ys.count_ones() as usize) < t {
                continue;
            }
            if flow.count(rest, xs, ys, t) >= t {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

fn is_connected(mask: u32, adj: &[u32]) -> bool {
    let mut seen = mask & mask.wrapping_neg();
    loop {
        let mut next = seen;
        let mut rest = seen;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= adj[i] & mask;
        }
        if next == seen {
            return seen == mask;
        }
        seen = next;
    }
}

/// Vertex-disjoint X–Y paths inside a vertex mask, via unit-capacity flow on
/// the split graph (`v_in = 2v`, `v_out = 2v + 1`, source, sink).
struct DisjointPaths<'a> {
    n: usize,
    adj: &'a [u32],
    cap: Vec<u8>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> DisjointPaths<'a> {
    fn new(n: usize, adj: &'a [u32]) -> Self {
        let nodes = 2 * n + 2;
        DisjointPaths {
            n,
            adj,
            cap: vec![0; nodes * nodes],
            parent: vec![usize::MAX; nodes],
            queue: Vec::with_capacity(nodes),
        }
    }

    fn count(&mut self, inside: u32, xs: u32, ys: u32, want: usize) -> usize {
        let nodes = 2 * self.n + 2;
        let (source, sink) = (2 * self.n, 2 * self.n + 1);
        self.cap.iter_mut().for_each(|c| *c = 0);
        let mut rest = inside;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            self.cap[(2 * v) * nodes + 2 * v + 1] = 1;
            let mut nbrs = self.adj[v] & inside;
            while nbrs != 0 {
                let w = nbrs.trailing_zeros() as usize;
                nbrs &= nbrs - 1;
                self.cap[(2 * v + 1) * nodes + 2 * w] = 1;
            }
            if xs >> v & 1 == 1 {
                self.cap[source * nodes + 2 * v] = 1;
            }
            if ys >> v & 1 == 1 {
                self.cap[(2 * v + 1) * nodes + sink] = 1;
            }
        }

        let mut flow = 0;
        while flow < want {
            self.parent.iter_mut().for_each(|p| *p = usize::MAX);
            self.parent[source] = source;
            self.queue.clear();
            self.queue.push(source);
            let mut head = 0;
            while head < self.queue.len() && self.parent[sink] == usize::MAX {
                let u = self.queue[head];
                head += 1;
                for w in 0..nodes {
                    if self.parent[w] == usize::MAX && self.cap[u * nodes + w] > 0 {
                        self.parent[w] = u;
                        self.queue.push(w);
                    }
                }
            }
            if self.parent[sink] == usize::MAX {
                break;
            }
            let mut v = sink;
            while v != source {
                let u = self.parent[v];
                self.cap[u * nodes + v] -= 1;
                self.cap[v * nodes + u] += 1;
                v = u;
            }
            flow += 1;
        }
        flow
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    fn k2t(t: u64) -> Graph {
        // hubs 0 and 1, spokes 2..t+2
        Graph::new(0..t + 2, (2..t + 2).flat_map(|s| [(0, s), (1, s)])).unwrap()
    }

    #[test]
    fn c4_is_k22() {
        assert!(has_k2t_minor(&cycle(4), 2).unwrap());
    }

    #[test]
    fn trees_have_no_k22() {
        assert!(!has_k2t_minor(&path(0..9), 2).unwrap());
        assert!(!has_k2t_minor(&star(0, 1..8), 2).unwrap());
    }

    #[test]
    fn k23_contains_itself() {
        assert!(has_k2t_minor(&k2t(3), 3).unwrap());
        assert!(!has_k2t_minor(&k2t(3), 4).unwrap());
    }

    #[test]
    fn long_cycles_have_k22_but_not_k23() {
        let c9 = cycle(9);
        assert!(has_k2t_minor(&c9, 2).unwrap());
        assert!(!has_k2t_minor(&c9, 3).unwrap());
    }

    #[test]
    fn subdivided_k24_is_found() {
        // every spoke edge subdivided once
        let mut edges = Vec::new();
        let mut next = 6;
        for s in 2..6 {
            for hub in [0, 1] {
                edges.push((hub, next));
                edges.push((next, s));
                next += 1;
            }
        }
        let g = Graph::from_edges(edges).unwrap();
        assert!(has_k2t_minor(&g, 4).unwrap());
        assert!(!has_k2t_minor(&g, 5).unwrap());
    }

    #[test]
    fn k4_has_k22_but_no_k23() {
        assert!(has_k2t_minor(&complete(4), 2).unwrap());
        assert!(!has_k2t_minor(&complete(4), 3).unwrap());
        assert!(has_k2t_minor(&complete(5), 3).unwrap());
    }

    #[test]
    fn caps_and_parameters() {
        assert!(has_k2t_minor(&cycle(4), 1).is_err());
        assert!(matches!(
            has_k2t_minor(&cycle(21), 2),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(matches!(has_k2t_minor_with_budget(&complete(8), 9, 1), Ok(false)));
        let fan = Graph::new(0..10, (0..8).map(|i| (i, i + 1)).chain((0..9).map(|i| (i, 9)))).unwrap();
        assert!(!has_k2t_minor(&fan, 3).unwrap());
        assert!(matches!(
            has_k2t_minor_with_budget(&fan, 3, 1),
            Err(Error::BudgetExceeded { .. })
        ));
    }
}
