//! Slow, obviously-correct reference implementations shared by the
//! integration tests. None of them call into the library's algorithms; they
//! only read the graph's vertex and edge lists.

#![allow(dead_code)]

use kdom_core::generators::{generate, Family, GeneratorSpec};
use kdom_core::{Graph, VertexId, VertexSet};
use proptest::prelude::*;

pub const INF: usize = usize::MAX;

/// All-pairs distances, indexed by position in `g.ids()`.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let pos = |v: VertexId| g.ids().iter().position(|&x| x == v).unwrap();
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v) in g.edges() {
        let (a, b) = (pos(u), pos(v));
        d[a][b] = 1;
        d[b][a] = 1;
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if d[a][m] != INF && d[m][b] != INF && d[a][m] + d[m][b] < d[a][b] {
                    d[a][b] = d[a][m] + d[m][b];
                }
            }
        }
    }
    d
}

/// Calls `visit` on every `size`-subset of `0..n` in lexicographic order
/// until it returns true; returns that subset.
pub fn first_subset(n: usize, size: usize, mut visit: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    fn rec(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        for i in start..n {
            if n - i < size - cur.len() {
                break;
            }
            cur.push(i);
            if rec(n, size, i + 1, cur, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    let mut cur = Vec::new();
    rec(n, size, 0, &mut cur, &mut visit).then_some(cur)
}

/// Smallest subset of `region` (lexicographically first among optima) that,
/// together with `anchors`, dominates `region` within distance `k`.
pub fn naive_min_extension(g: &Graph, region: &VertexSet, anchors: &VertexSet, k: usize) -> VertexSet {
    let d = floyd_warshall(g);
    let pos = |v: &VertexId| g.ids().iter().position(|x| x == v).unwrap();
    let region: Vec<usize> = region.iter().map(pos).collect();
    let anchors: Vec<usize> = anchors.iter().map(pos).collect();
    let open: Vec<usize> = region
        .iter()
        .copied()
        .filter(|&v| anchors.iter().all(|&a| d[a][v] > k))
        .collect();
    for size in 0..=region.len() {
        let found = first_subset(region.len(), size, |pick| {
            open.iter().all(|&v| pick.iter().any(|&p| d[region[p]][v] <= k))
        });
        if let Some(pick) = found {
            return pick.iter().map(|&p| g.id(region[p])).collect();
        }
    }
    unreachable!("the whole region always works")
}

/// γ_k by enumerating subsets in increasing size.
pub fn naive_gamma(g: &Graph, k: usize) -> VertexSet {
    naive_min_extension(g, &g.vertex_set(), &VertexSet::new(), k)
}

pub fn naive_is_dominating(g: &Graph, set: &VertexSet, k: usize) -> bool {
    let d = floyd_warshall(g);
    let idx: Vec<usize> = set
        .iter()
        .map(|v| g.ids().iter().position(|x| x == v).unwrap())
        .collect();
    (0..g.n()).all(|v| idx.iter().any(|&s| d[s][v] <= k))
}

/// `Q_h` by listing every simple path that starts in Q, keeps its interior
/// outside Q, ends at a different vertex of Q and has length ≤ h.
pub fn brute_q_paths(g: &Graph, q: &VertexSet, h: usize) -> VertexSet {
    let n = g.n();
    let pos = |v: VertexId| g.ids().iter().position(|&x| x == v).unwrap();
    let mut adj = vec![Vec::new(); n];
    for (u, v) in g.edges() {
        adj[pos(u)].push(pos(v));
        adj[pos(v)].push(pos(u));
    }
    let in_q: Vec<bool> = g.ids().iter().map(|v| q.contains(v)).collect();
    let mut marked = in_q.clone();

    fn walk(adj: &[Vec<usize>], in_q: &[bool], h: usize, path: &mut Vec<usize>, marked: &mut [bool]) {
        let last = *path.last().unwrap();
        if path.len() > 1 && in_q[last] {
            for &v in path.iter() {
                marked[v] = true;
            }
            return;
        }
        if path.len() > h {
            return;
        }
        for &w in &adj[last] {
            if !path.contains(&w) {
                path.push(w);
                walk(adj, in_q, h, path, marked);
                path.pop();
            }
        }
    }
    for s in (0..n).filter(|&s| in_q[s]) {
        walk(&adj, &in_q, h, &mut vec![s], &mut marked);
    }
    (0..n).filter(|&i| marked[i]).map(|i| g.id(i)).collect()
}

/// Generated instances with their specs.
pub fn suite(families: &[Family], sizes: &[usize], seeds: std::ops::Range<u64>) -> Vec<(GeneratorSpec, Graph)> {
    let mut out = Vec::new();
    for &family in families {
        for &n in sizes {
            if n < family.min_n() {
                continue;
            }
            for seed in seeds.clone() {
                let spec = GeneratorSpec::new(family, n, seed);
                let g = generate(&spec).unwrap();
                out.push((spec, g));
            }
        }
    }
    out
}

/// Arbitrary small graphs on ids `0..n`, edges included independently.
pub fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n as u64).flat_map(|u| (u + 1..n as u64).map(move |v| (u, v)));
            let edges: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::new(0..n as u64, edges).unwrap()
        })
    })
}

/// Small connected graphs: a random tree plus random extra edges.
pub fn small_connected_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        (
            proptest::collection::vec(any::<prop::sample::Index>(), n.saturating_sub(1)),
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2),
            proptest::collection::vec(0u8..4, n * (n - 1) / 2),
        )
            .prop_map(move |(parents, extra, keep)| {
                let mut edges: Vec<(u64, u64)> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (p.index(i + 1) as u64, i as u64 + 1))
                    .collect();
                let pairs = (0..n as u64).flat_map(|u| (u + 1..n as u64).map(move |v| (u, v)));
                // sparse extras: roughly one pair in eight
                for ((e, b), c) in pairs.zip(extra).zip(keep) {
                    if b && c == 0 {
                        edges.push(e);
                    }
                }
                Graph::new(0..n as u64, edges).unwrap()
            })
    })
}
