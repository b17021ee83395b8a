//! Minimum coverings and maximum packings: greedy and exact.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::space::{space_size, SpaceSpec, DEFAULT_CAP};

use super::{Bitset, ExplicitCode, Universe};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Exact searches are limited to spaces of at most this many points.
pub const EXACT_LIMIT: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Greedy,
    Exact,
}

fn exact_universe(s: &SpaceSpec) -> Result<Universe> {
    let size = space_size(s);
    if size > EXACT_LIMIT.into() {
        return Err(Error::CapExceeded { size: size.to_string(), cap: EXACT_LIMIT });
    }
    Universe::new(s, EXACT_LIMIT)
}

fn to_code(u: &Universe, mut idx: Vec<usize>) -> Result<ExplicitCode> {
    idx.sort_unstable();
    ExplicitCode::new(u.space.clone(), idx.into_iter().map(|i| u.points[i].clone()).collect())
}

/// A code of covering radius at most `r`. Exact mode returns one of the
/// minimum size `K_X(r)`; greedy returns the ball-greedy cover.
pub fn min_covering(s: &SpaceSpec, r: u64, mode: SearchMode, budget: u64) -> Result<ExplicitCode> {
    s.validate()?;
    match mode {
        SearchMode::Greedy => {
            let u = Universe::new(s, DEFAULT_CAP)?;
            let balls = u.all_balls(r);
            let chosen = greedy_cover(&balls);
            to_code(&u, chosen)
        }
        SearchMode::Exact => {
            let u = exact_universe(s)?;
            let balls = u.all_balls(r);
            let greedy = greedy_cover(&balls);
            let sets: Vec<Bitset> = balls
                .iter()
                .map(|b| {
                    let mut bs = Bitset::new(u.len());
                    b.iter().for_each(|&j| bs.insert(j));
                    bs
                })
                .collect();
            let mut search = CoverSearch { sets: &sets, best: greedy, nodes: 0, budget };
            search.run(&mut Bitset::new(u.len()), &mut Vec::new())?;
            let best = search.best;
            to_code(&u, best)
        }
    }
}

/// Repeatedly takes the ball covering the most uncovered points (lowest
/// index on ties). Relies on the metric being symmetric.
fn greedy_cover(balls: &[Vec<usize>]) -> Vec<usize> {
    let n = balls.len();
    let mut gain: Vec<usize> = balls.iter().map(|b| b.len()).collect();
    let mut covered = vec![false; n];
    let mut left = n;
    let mut chosen = Vec::new();
    while left > 0 {
        let (best, _) = gain.iter().enumerate().fold((0, 0), |acc, (i, &g)| if g > acc.1 { (i, g) } else { acc });
        chosen.push(best);
        for &y in &balls[best] {
            if !covered[y] {
                covered[y] = true;
                left -= 1;
                for &z in &balls[y] {
                    gain[z] -= 1;
                }
            }
        }
    }
    chosen
}

struct CoverSearch<'a> {
    sets: &'a [Bitset],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    fn run(&mut self, covered: &mut Bitset, chosen: &mut Vec<usize>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        let Some(e) = covered.first_missing() else {
            if chosen.len() < self.best.len() {
                self.best = chosen.clone();
            }
            return Ok(());
        };
        if chosen.len() + 1 >= self.best.len() {
            return Ok(());
        }
        let uncovered = covered.len() - covered.count();
        let mut cands: Vec<(usize, usize)> =
            self.sets[e].iter().map(|c| (covered.missing_count(&self.sets[c]), c)).collect();
        let max_gain = (0..self.sets.len()).map(|c| covered.missing_count(&self.sets[c])).max().unwrap_or(0);
        if chosen.len() + uncovered.div_ceil(max_gain.max(1)) >= self.best.len() {
            return Ok(());
        }
        cands.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, c) in cands {
            let mut next = covered.clone();
            next.union_with(&self.sets[c]);
            chosen.push(c);
            self.run(&mut next, chosen)?;
            chosen.pop();
        }
        Ok(())
    }
}

/// A code of minimum distance at least `d`. Greedy mode scans points in
/// enumeration order (a lexicode); exact mode returns a maximum one.
pub fn max_packing(s: &SpaceSpec, d: u64, mode: SearchMode, budget: u64) -> Result<ExplicitCode> {
    s.validate()?;
    if d == 0 {
        return Err(invalid("packing distance must be positive"));
    }
    match mode {
        SearchMode::Greedy => {
            let u = Universe::new(s, DEFAULT_CAP)?;
            let mut chosen: Vec<usize> = Vec::new();
            for i in 0..u.len() {
                if chosen.iter().all(|&j| u.dist(i, j) >= d) {
                    chosen.push(i);
                }
            }
            to_code(&u, chosen)
        }
        SearchMode::Exact => {
            let u = exact_universe(s)?;
            let close = u.all_balls(d - 1);
            let adj: Vec<Bitset> = close
                .iter()
                .map(|b| {
                    let mut bs = Bitset::full(u.len());
                    b.iter().for_each(|&j| bs.remove(j));
                    bs
                })
                .collect();
            let mut search = CliqueSearch { adj: &adj, best: Vec::new(), nodes: 0, budget };
            let mut cands = Bitset::full(u.len());
            let mut current = Vec::new();
            if s.is_center_transitive() {
                // any maximum packing can be moved to contain point 0
                current.push(0);
                cands.intersect_with(&adj[0]);
            }
            search.run(&mut current, cands)?;
            let best = search.best;
            to_code(&u, best)
        }
    }
}

struct CliqueSearch<'a> {
    adj: &'a [Bitset],
    best: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `cands`; returns vertices with their colour
    /// number, in increasing colour order.
    fn colour(&self, cands: &Bitset) -> Vec<(usize, usize)> {
        let mut left = cands.clone();
        let mut out = Vec::new();
        let mut colour = 0;
        while !left.is_empty() {
            colour += 1;
            let mut avail = left.clone();
            loop {
                let Some(v) = avail.iter().next() else { break };
                avail.remove(v);
                avail.intersect_with(&self.nonadj_complement(v));
                left.remove(v);
                out.push((v, colour));
            }
        }
        out
    }

    fn nonadj_complement(&self, v: usize) -> Bitset {
        // vertices still usable in the same colour class: those not adjacent to v
        let mut b = Bitset::full(self.adj[v].len());
        for j in self.adj[v].iter() {
            b.remove(j);
        }
        b
    }

    fn run(&mut self, current: &mut Vec<usize>, cands: Bitset) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if current.len() > self.best.len() {
            self.best = current.clone();
        }
        let order = self.colour(&cands);
        let mut cands = cands;
        for &(v, c) in order.iter().rev() {
            if current.len() + c <= self.best.len() {
                return Ok(());
            }
            let mut next = cands.clone();
            next.intersect_with(&self.adj[v]);
            current.push(v);
            self.run(current, next)?;
            current.pop();
            cands.remove(v);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{covering_radius, min_distance};
    use crate::space::{PermMetric, SubspaceMetric};

    #[test]
    fn coverings() {
        let h3 = SpaceSpec::hamming(2, 3);
        let exact = min_covering(&h3, 1, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(exact.len(), 2);
        assert!(covering_radius(&exact).unwrap() <= 1);
        assert_eq!(min_covering(&h3, 3, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap().len(), 1);
        assert_eq!(min_covering(&h3, 3, SearchMode::Greedy, DEFAULT_NODE_BUDGET).unwrap().len(), 1);
        let rank = SpaceSpec::Rank { q: 2, m: 2, n: 2 };
        let k = min_covering(&rank, 1, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap().len();
        assert!((2..=4).contains(&k));
    }

    // Known covering numbers K_2(n, 1): 1, 2, 2, 4, 7, 12 for n = 1..6.
    #[test]
    fn binary_covering_numbers() {
        for (n, k) in [(1u64, 1usize), (2, 2), (3, 2), (4, 4), (5, 7), (6, 12)] {
            let s = SpaceSpec::hamming(2, n);
            let c = min_covering(&s, 1, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(c.len(), k, "n={n}");
            assert!(covering_radius(&c).unwrap() <= 1);
            let g = min_covering(&s, 1, SearchMode::Greedy, DEFAULT_NODE_BUDGET).unwrap();
            assert!(g.len() >= c.len());
        }
    }

    #[test]
    fn packings() {
        let h4 = SpaceSpec::hamming(2, 4);
        assert_eq!(max_packing(&h4, 1, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap().len(), 16);
        assert_eq!(max_packing(&h4, 1, SearchMode::Greedy, DEFAULT_NODE_BUDGET).unwrap().len(), 16);
        assert_eq!(max_packing(&h4, 3, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap().len(), 2);
        let lexi = max_packing(&SpaceSpec::hamming(2, 7), 3, SearchMode::Greedy, DEFAULT_NODE_BUDGET).unwrap();
        assert!(lexi.len() >= 16);
        assert!(min_distance(&lexi).unwrap() >= 3);
        assert!(max_packing(&h4, 0, SearchMode::Greedy, DEFAULT_NODE_BUDGET).is_err());
    }

    // Known A_2(n, 3): 2, 2, 4, 8 for n = 4..7 (n = 7 is the Hamming code, 16).
    #[test]
    fn binary_packing_numbers() {
        for (n, a) in [(4u64, 2usize), (5, 4), (6, 8), (7, 16)] {
            let c = max_packing(&SpaceSpec::hamming(2, n), 3, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
            assert_eq!(c.len(), a, "n={n}");
            assert!(min_distance(&c).unwrap() >= 3);
        }
    }

    #[test]
    fn other_spaces() {
        let p = SpaceSpec::Permutation { n: 4, metric: PermMetric::Hamming };
        let c = max_packing(&p, 4, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(c.len(), 4); // a Latin square's rows
        let g = SpaceSpec::ConstDimSubspace { q: 2, n: 4, k: 2, metric: SubspaceMetric::S };
        // a spread of F_2^4 has 5 lines
        assert_eq!(max_packing(&g, 4, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap().len(), 5);
    }

    #[test]
    fn budget_and_limits() {
        let s = SpaceSpec::hamming(2, 6);
        let err = min_covering(&s, 1, SearchMode::Exact, 5).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { budget: 5 }));
        let big = SpaceSpec::hamming(2, 13);
        assert!(matches!(min_covering(&big, 1, SearchMode::Exact, 10), Err(Error::CapExceeded { .. })));
    }
}
