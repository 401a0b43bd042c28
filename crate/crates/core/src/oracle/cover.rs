//! Exact minimum set cover by branch and bound.
//!
//! Branches on the uncovered element with the fewest covering candidates and
//! prunes with the larger of two lower bounds: `ceil(uncovered / best single
//! gain)`, and a greedy packing of uncovered elements no two of which share a
//! candidate (each needs its own set). The incumbent is seeded with the greedy
//! cover. When the uncovered elements fall apart into groups sharing no
//! candidate, each group is solved on its own and the minima are added. Once the optimum size is known a second pass fixes
//! the lexicographically smallest optimal selection slot by slot, so the
//! answer never depends on search order.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

pub(crate) struct CoverProblem {
    universe: FixedBitSet,
    /// Coverage of each candidate, restricted to the universe.
    sets: Vec<FixedBitSet>,
    /// Element → candidates covering it, ascending.
    covered_by: Vec<Vec<usize>>,
    /// `covered_by` as bitsets over candidates.
    candidates_of: Vec<FixedBitSet>,
}

#[derive(Debug)]
pub(crate) struct CoverSolution {
    /// Chosen candidate positions, ascending and lexicographically minimal.
    pub chosen: Vec<usize>,
    pub nodes: u64,
}

impl CoverProblem {
    /// `universe` and every set live over `0..elements`.
    pub fn new(elements: usize, universe: impl IntoIterator<Item = usize>, sets: Vec<Vec<usize>>) -> Self {
        let mut uni = FixedBitSet::with_capacity(elements);
        uni.extend(universe);
        let mut covered_by = vec![Vec::new(); elements];
        let sets: Vec<FixedBitSet> = sets
            .into_iter()
            .enumerate()
            .map(|(c, members)| {
                let mut s = FixedBitSet::with_capacity(elements);
                for e in members {
                    if uni.contains(e) {
                        s.insert(e);
                        covered_by[e].push(c);
                    }
                }
                s
            })
            .collect();
        let candidates_of = covered_by
            .iter()
            .map(|cs| {
                let mut b = FixedBitSet::with_capacity(sets.len());
                b.extend(cs.iter().copied());
                b
            })
            .collect();
        CoverProblem {
            universe: uni,
            sets,
            covered_by,
            candidates_of,
        }
    }

    pub fn solve(&self, budget: u64) -> Result<CoverSolution> {
        let mut search = Search {
            problem: self,
            nodes: 0,
            budget,
        };
        for e in self.universe.ones() {
            if self.covered_by[e].is_empty() {
                return Err(Error::invalid(format!("element {e} cannot be covered")));
            }
        }
        let greedy = self.greedy();
        let size = match search.best_below(&self.universe, 0, greedy.len(), false)? {
            Some(better) => better.len(),
            None => greedy.len(),
        };

        let mut chosen = Vec::with_capacity(size);
        let mut uncovered = self.universe.clone();
        let mut from = 0;
        for slot in 0..size {
            let remaining = size - slot - 1;
            let mut fixed = None;
            for c in from..self.sets.len() {
                let mut rest = uncovered.clone();
                rest.difference_with(&self.sets[c]);
                if search.best_below(&rest, c + 1, remaining + 1, true)?.is_some() {
                    fixed = Some((c, rest));
                    break;
                }
            }
            let (c, rest) = fixed.expect("an optimum found by the search is reconstructible");
            chosen.push(c);
            uncovered = rest;
            from = c + 1;
        }
        Ok(CoverSolution {
            chosen,
            nodes: search.nodes,
        })
    }

    fn greedy(&self) -> Vec<usize> {
        let mut uncovered = self.universe.clone();
        let mut chosen = Vec::new();
        while !uncovered.is_clear() {
            let (best, _) = self
                .sets
                .iter()
                .enumerate()
                .map(|(c, s)| (c, s.intersection_count(&uncovered)))
                .fold((0, 0), |acc, x| if x.1 > acc.1 { x } else { acc });
            uncovered.difference_with(&self.sets[best]);
            chosen.push(best);
        }
        chosen
    }
}

struct Search<'a> {
    problem: &'a CoverProblem,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// A cover of `uncovered` using candidates `>= from` with fewer than
    /// `limit` sets, minimal unless `first` asks for any.
    fn best_below(
        &mut self,
        uncovered: &FixedBitSet,
        from: usize,
        limit: usize,
        first: bool,
    ) -> Result<Option<Vec<usize>>> {
        let mut best = None;
        let mut limit = limit;
        let mut stack = Vec::new();
        self.descend(uncovered, from, &mut limit, first, &mut stack, &mut best)?;
        Ok(best)
    }

    fn descend(
        &mut self,
        uncovered: &FixedBitSet,
        from: usize,
        limit: &mut usize,
        first: bool,
        stack: &mut Vec<usize>,
        best: &mut Option<Vec<usize>>,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                what: "set cover branch and bound",
                budget: self.budget,
            });
        }
        let left = uncovered.count_ones(..);
        if left == 0 {
            if stack.len() < *limit {
                *limit = stack.len();
                *best = Some(stack.clone());
            }
            return Ok(first);
        }
        if stack.len() + 1 >= *limit {
            return Ok(false);
        }

        let sets = &self.problem.sets;
        let mut max_gain = 0;
        for s in &sets[from..] {
            max_gain = max_gain.max(s.intersection_count(uncovered));
        }
        if max_gain == 0 || stack.len() + left.div_ceil(max_gain) >= *limit {
            return Ok(false);
        }
        if stack.len() + self.packing_bound(uncovered, from) >= *limit {
            return Ok(false);
        }

        let parts = self.independent_parts(uncovered, from);
        if parts.len() > 1 {
            return self.solve_parts(&parts, from, limit, first, stack, best);
        }

        // branch on the hardest uncovered element
        let mut pivot_options: Option<Vec<usize>> = None;
        for e in uncovered.ones() {
            let options: Vec<usize> = self.problem.covered_by[e]
                .iter()
                .copied()
                .filter(|&c| c >= from)
                .collect();
            if options.is_empty() {
                return Ok(false);
            }
            if pivot_options.as_ref().map_or(true, |p| options.len() < p.len()) {
                let single = options.len() == 1;
                pivot_options = Some(options);
                if single {
                    break;
                }
            }
        }
        let mut options = pivot_options.expect("uncovered is non-empty");
        options.sort_by_key(|&c| (std::cmp::Reverse(sets[c].intersection_count(uncovered)), c));

        for c in options {
            let mut rest = uncovered.clone();
            rest.difference_with(&sets[c]);
            stack.push(c);
            let done = self.descend(&rest, from, limit, first, stack, best)?;
            stack.pop();
            if done {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Every part needs its own sets, so the cheapest cover is the union of
    /// per-part minima. Each part is searched with whatever room the others'
    /// lower bounds leave.
    fn solve_parts(
        &mut self,
        parts: &[FixedBitSet],
        from: usize,
        limit: &mut usize,
        first: bool,
        stack: &[usize],
        best: &mut Option<Vec<usize>>,
    ) -> Result<bool> {
        let mut lower: Vec<usize> = parts.iter().map(|p| self.lower_bound(p, from)).collect();
        let mut picks = stack.to_vec();
        for (i, part) in parts.iter().enumerate() {
            let others: usize = lower[i + 1..].iter().sum();
            let room = limit.saturating_sub(picks.len() + others);
            if room <= lower[i] {
                return Ok(false);
            }
            match self.best_below(part, from, room, false)? {
                Some(cover) => {
                    lower[i] = cover.len();
                    picks.extend(cover);
                }
                None => return Ok(false),
            }
        }
        picks.sort_unstable();
        *limit = picks.len();
        *best = Some(picks);
        Ok(first)
    }

    fn lower_bound(&self, uncovered: &FixedBitSet, from: usize) -> usize {
        let max_gain = self.problem.sets[from..]
            .iter()
            .map(|s| s.intersection_count(uncovered))
            .max()
            .unwrap_or(0)
            .max(1);
        let ratio = uncovered.count_ones(..).div_ceil(max_gain);
        ratio.max(self.packing_bound(uncovered, from))
    }

    /// Groups of uncovered elements linked through shared candidates `>= from`.
    fn independent_parts(&self, uncovered: &FixedBitSet, from: usize) -> Vec<FixedBitSet> {
        let p = self.problem;
        let mut seen = FixedBitSet::with_capacity(uncovered.len());
        let mut used = FixedBitSet::with_capacity(p.sets.len());
        let mut parts = Vec::new();
        for start in uncovered.ones() {
            if seen.contains(start) {
                continue;
            }
            let mut part = FixedBitSet::with_capacity(uncovered.len());
            let mut queue = vec![start];
            seen.insert(start);
            while let Some(e) = queue.pop() {
                part.insert(e);
                for &c in p.covered_by[e].iter().filter(|&&c| c >= from) {
                    if used.put(c) {
                        continue;
                    }
                    for f in p.sets[c].intersection(uncovered) {
                        if !seen.put(f) {
                            queue.push(f);
                        }
                    }
                }
            }
            parts.push(part);
        }
        parts
    }

    /// Size of a greedy set of uncovered elements with pairwise disjoint
    /// candidate lists, scanning elements with few candidates first.
    fn packing_bound(&self, uncovered: &FixedBitSet, from: usize) -> usize {
        let p = self.problem;
        let mut order: Vec<(usize, usize)> = uncovered
            .ones()
            .map(|e| (p.candidates_of[e].count_ones(from..), e))
            .collect();
        order.sort_unstable();
        let mut used = FixedBitSet::with_capacity(p.sets.len());
        let mut packed = 0;
        for (_, e) in order {
            if p.candidates_of[e].is_disjoint(&used) {
                used.union_with(&p.candidates_of[e]);
                packed += 1;
            }
        }
        packed
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn picks_lexicographically_smallest_optimum() {
        // elements 0..4; sets {0,1}, {2,3}, {0,1,2}, {3}, {1,2,3}
        let p = CoverProblem::new(
            4,
            0..4,
            vec![vec![0, 1], vec![2, 3], vec![0, 1, 2], vec![3], vec![1, 2, 3]],
        );
        let sol = p.solve(10_000).unwrap();
        assert_eq!(sol.chosen, vec![0, 1]);
    }

    #[test]
    fn empty_universe_needs_nothing() {
        let p = CoverProblem::new(3, [], vec![vec![0], vec![1]]);
        assert!(p.solve(10).unwrap().chosen.is_empty());
    }

    #[test]
    fn uncoverable_element_is_reported() {
        let p = CoverProblem::new(3, 0..3, vec![vec![0, 1]]);
        assert!(p.solve(100).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let sets: Vec<Vec<usize>> = (0..20).map(|i| vec![i, (i + 1) % 20]).collect();
        let p = CoverProblem::new(20, 0..20, sets);
        assert!(matches!(p.solve(3), Err(Error::BudgetExceeded { .. })));
        assert_eq!(p.solve(1_000_000).unwrap().chosen.len(), 10);
    }
}
