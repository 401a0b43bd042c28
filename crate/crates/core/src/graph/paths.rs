//! Vertices on short Q-paths.
//!
//! A Q-path is a path that meets Q exactly in its endpoints; a single vertex
//! of Q is a trivial Q-path. `Q_h` collects every vertex lying on some Q-path
//! of length at most `h`.
//!
//! A vertex `x` outside Q lies on such a path iff it splits the path into two
//! internally disjoint segments `x..a` and `x..b` (a ≠ b in Q, interiors
//! outside Q) of total length ≤ h. The shorter segment has length ≤ h/2, so we
//! enumerate only those by depth-bounded DFS and finish each one with a BFS
//! that avoids it. Enumeration stays exponential in h, which is fine for the
//! h ≤ 3k and desk-sized graphs this is used on.

use std::collections::VecDeque;

use super::{Graph, VertexId, VertexSet};
use crate::error::Result;

pub fn q_path_vertices(g: &Graph, q: &VertexSet, h: usize) -> Result<VertexSet> {
    let members = g.require_all(q)?;
    let mut in_q = vec![false; g.n()];
    for i in members {
        in_q[i] = true;
    }
    let on_path = QPathSearch::new(g, &in_q, h).run();
    Ok(g.to_ids((0..g.n()).filter(|&i| on_path[i])))
}

/// Iterated Q-path closures `U_0 ⊆ U_1 ⊆ … ⊆ U_k` of a Voronoi cell:
/// `U_0 = border ∪ {center}` and `U_i` is the set of vertices on
/// `U_{i-1}`-paths of length at most `3k`.
pub fn u_sets(g: &Graph, border: &VertexSet, center: VertexId, k: usize) -> Result<Vec<VertexSet>> {
    let mut current = border.clone();
    current.insert(center);
    g.require_all(&current)?;
    let mut out = vec![current.clone()];
    for _ in 0..k {
        let next = q_path_vertices(g, &current, 3 * k)?;
        out.push(next.clone());
        current = next;
    }
    Ok(out)
}

struct QPathSearch<'a> {
    g: &'a Graph,
    in_q: &'a [bool],
    h: usize,
    /// Shortest distance to Q through vertices outside Q.
    reach: Vec<Option<usize>>,
}

impl<'a> QPathSearch<'a> {
    fn new(g: &'a Graph, in_q: &'a [bool], h: usize) -> Self {
        let mut reach = vec![None; g.n()];
        let mut queue = VecDeque::new();
        for (i, &q) in in_q.iter().enumerate() {
            if q {
                reach[i] = Some(0);
                queue.push_back(i);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = reach[u].unwrap();
            for &w in g.neighbors(u) {
                if reach[w].is_none() && !in_q[w] {
                    reach[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        QPathSearch { g, in_q, h, reach }
    }

    fn run(&self) -> Vec<bool> {
        (0..self.g.n())
            .map(|x| self.in_q[x] || self.lies_on_q_path(x))
            .collect()
    }

    fn lies_on_q_path(&self, x: usize) -> bool {
        let half = self.h / 2;
        match self.reach[x] {
            Some(d) if d <= half => {}
            _ => return false,
        }
        let mut blocked = vec![false; self.g.n()];
        blocked[x] = true;
        self.extend_first_segment(x, x, 0, half, &mut blocked)
    }

    fn extend_first_segment(&self, x: usize, at: usize, len: usize, half: usize, blocked: &mut [bool]) -> bool {
        for &w in self.g.neighbors(at) {
            if blocked[w] {
                continue;
            }
            if self.in_q[w] {
                blocked[w] = true;
                let done = self.second_segment_fits(x, blocked, self.h - (len + 1));
                blocked[w] = false;
                if done {
                    return true;
                }
            } else if self.reach[w].is_some_and(|d| len + 1 + d <= half) {
                blocked[w] = true;
                let done = self.extend_first_segment(x, w, len + 1, half, blocked);
                blocked[w] = false;
                if done {
                    return true;
                }
            }
        }
        false
    }

    /// BFS from `x` through unblocked vertices outside Q to an unblocked Q vertex.
    fn second_segment_fits(&self, x: usize, blocked: &[bool], budget: usize) -> bool {
        let mut dist = vec![usize::MAX; self.g.n()];
        dist[x] = 0;
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            if du >= budget {
                continue;
            }
            for &w in self.g.neighbors(u) {
                if blocked[w] || dist[w] != usize::MAX {
                    continue;
                }
                if self.in_q[w] {
                    return true;
                }
                dist[w] = du + 1;
                queue.push_back(w);
            }
        }
        false
    }
}
