//! Seeded generators for K_{2,t}-minor-free graph families.
//!
//! All randomness comes from [`SplitMix64`] so a `(family, n, seed)` triple
//! names the same graph on every platform and in every language that
//! implements the same mixer. Vertex ids are `1..=n` in construction order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{diameter, Diameter, Graph, VertexId};

/// SplitMix64 (Steele, Lea and Flood). Each step adds `0x9E3779B97F4A7C15` to
/// the state and returns the state passed through the finalizer
/// `z ^= z >> 30; z *= 0xBF58476D1CE4E5B9; z ^= z >> 27; z *= 0x94D049BB133111EB; z ^= z >> 31`.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `0..bound` by rejection: draws at or above the
    /// largest multiple of `bound` are discarded.
    pub fn below(&mut self, bound: u64) -> u64 {
        assert!(bound > 0, "empty range");
        let limit = u64::MAX - u64::MAX % bound;
        loop {
            let x = self.next_u64();
            if x < limit {
                return x % bound;
            }
        }
    }

    /// Fisher–Yates, swapping from the back.
    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Path,
    Cycle,
    Star,
    RandomTree,
    MaximalOuterplanar,
    Cactus,
    Fan,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Path,
        Family::Cycle,
        Family::Star,
        Family::RandomTree,
        Family::MaximalOuterplanar,
        Family::Cactus,
        Family::Fan,
    ];

    /// Smallest t for which every member of the family is K_{2,t}-minor-free.
    pub fn certified_t(self) -> usize {
        match self {
            Family::Path | Family::Star | Family::RandomTree => 2,
            Family::Cycle | Family::MaximalOuterplanar | Family::Cactus | Family::Fan => 3,
        }
    }

    pub fn min_n(self) -> usize {
        match self {
            Family::Cycle | Family::MaximalOuterplanar => 3,
            Family::Fan => 2,
            _ => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Star => "star",
            Family::RandomTree => "random-tree",
            Family::MaximalOuterplanar => "maximal-outerplanar",
            Family::Cactus => "cactus",
            Family::Fan => "fan",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown graph family {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub family: Family,
    pub n: usize,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        GeneratorSpec { family, n, seed }
    }
}

const MAX_CACTUS_CYCLE: u64 = 6;

pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    let GeneratorSpec { family, n, seed } = *spec;
    if n < family.min_n() {
        return Err(Error::invalid(format!(
            "{family} needs at least {} vertices, got {n}",
            family.min_n()
        )));
    }
    let mut rng = SplitMix64::new(seed);
    let nv = n as VertexId;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    match family {
        Family::Path => edges.extend((1..nv).map(|i| (i, i + 1))),
        Family::Cycle => {
            edges.extend((1..nv).map(|i| (i, i + 1)));
            edges.push((nv, 1));
        }
        Family::Star => edges.extend((2..=nv).map(|i| (1, i))),
        Family::RandomTree => {
            for v in 2..=nv {
                edges.push((rng.below(v - 1) + 1, v));
            }
        }
        Family::MaximalOuterplanar => {
            // clip uniformly random ears off the n-gon until a triangle remains
            edges.extend((1..nv).map(|i| (i, i + 1)));
            edges.push((nv, 1));
            let mut polygon: Vec<VertexId> = (1..=nv).collect();
            while polygon.len() > 3 {
                let len = polygon.len();
                let i = rng.below(len as u64) as usize;
                let prev = polygon[(i + len - 1) % len];
                let next = polygon[(i + 1) % len];
                edges.push((prev, next));
                polygon.remove(i);
            }
        }
        Family::Cactus => {
            let mut count: VertexId = 1;
            while count < nv {
                let anchor = rng.below(count) + 1;
                let remaining = nv - count;
                if remaining >= 2 && rng.below(2) == 0 {
                    let longest = (remaining + 1).min(MAX_CACTUS_CYCLE);
                    let len = 3 + rng.below(longest - 2);
                    let mut prev = anchor;
                    for _ in 1..len {
                        count += 1;
                        edges.push((prev, count));
                        prev = count;
                    }
                    edges.push((prev, anchor));
                } else {
                    count += 1;
                    edges.push((anchor, count));
                }
            }
        }
        Family::Fan => {
            edges.extend((1..nv - 1).map(|i| (i, i + 1)));
            edges.extend((1..nv).map(|i| (i, nv)));
        }
    }
    Graph::new(1..=nv, edges)
}

/// Whether a connected graph meets the `diam(G) ≥ 4k` requirement.
pub fn diameter_gate(g: &Graph, k: usize) -> Result<bool> {
    match diameter(g)? {
        Diameter::Finite(d) => Ok(d >= 4 * k),
        Diameter::Disconnected => Err(Error::Disconnected),
    }
}

/// Relabels `g` by a seeded permutation of its own ids.
pub fn permute_ids(g: &Graph, seed: u64) -> Graph {
    let mut ids = g.ids().to_vec();
    SplitMix64::new(seed).shuffle(&mut ids);
    let map = |v: VertexId| ids[g.index_of(v).unwrap()];
    Graph::new(ids.iter().copied(), g.edges().map(|(u, v)| (map(u), map(v))))
        .expect("a permutation keeps the graph simple")
}
