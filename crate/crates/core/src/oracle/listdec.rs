//! Exact maximum `(d, L)`-list-decodable codes in spaces of at most 64
//! points: the largest `C` with `|B(x, d) ∩ C| <= L` for every `x`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::space::SpaceSpec;

use super::search::EXACT_LIMIT;
use super::{ExplicitCode, Universe};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ListDecodableSearch {
    pub code: ExplicitCode,
    pub nodes: u64,
}

struct State<'a> {
    balls: &'a [u64],
    /// Smallest ball, so that `sum_x |B(x) ∩ C| >= ball_size * |C|`.
    ball_size: usize,
    l: u32,
    best: u64,
    best_set: u64,
    nodes: u64,
    budget: u64,
}

impl State<'_> {
    fn bound(&self, size: u32, cnt: &[u32], eligible: u64) -> u64 {
        let left = eligible.count_ones() as u64;
        if left == 0 {
            return size as u64;
        }
        // capacity of the balls that eligible points can still reach
        let mut reach = 0u64;
        let mut e = eligible;
        while e != 0 {
            let v = e.trailing_zeros() as usize;
            e &= e - 1;
            reach |= self.balls[v];
        }
        let mut room = 0usize;
        let mut r = reach;
        while r != 0 {
            let x = r.trailing_zeros() as usize;
            r &= r - 1;
            room += (self.l - cnt[x]) as usize;
        }
        let capacity = (room / self.ball_size) as u64;
        // split eligible points into balls; each ball takes at most L - cnt more
        let mut partition = 0u64;
        let mut rest = eligible;
        while rest != 0 && partition < left.min(capacity) {
            let mut best = (0usize, f64::INFINITY);
            let mut cand = reach;
            while cand != 0 {
                let x = cand.trailing_zeros() as usize;
                cand &= cand - 1;
                let hit = (self.balls[x] & rest).count_ones();
                if hit > 0 {
                    let ratio = (self.l - cnt[x]).min(hit) as f64 / hit as f64;
                    if ratio < best.1 {
                        best = (x, ratio);
                    }
                }
            }
            let hit = (self.balls[best.0] & rest).count_ones();
            partition += (self.l - cnt[best.0]).min(hit) as u64;
            rest &= !self.balls[best.0];
        }
        if rest != 0 {
            partition = u64::MAX;
        }
        size as u64 + left.min(capacity).min(partition)
    }

    fn run(&mut self, set: u64, size: u32, cnt: &mut [u32], eligible: u64) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded { budget: self.budget });
        }
        if size as u64 > self.best {
            self.best = size as u64;
            self.best_set = set;
        }
        if self.bound(size, cnt, eligible) <= self.best {
            return Ok(());
        }
        let mut rest = eligible;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut next = rest;
            let mut bv = self.balls[v];
            while bv != 0 {
                let x = bv.trailing_zeros() as usize;
                bv &= bv - 1;
                cnt[x] += 1;
                if cnt[x] == self.l {
                    next &= !self.balls[x];
                }
            }
            self.run(set | 1 << v, size + 1, cnt, next)?;
            let mut bv = self.balls[v];
            while bv != 0 {
                let x = bv.trailing_zeros() as usize;
                bv &= bv - 1;
                cnt[x] -= 1;
            }
            if self.bound(size, cnt, rest) <= self.best {
                break;
            }
        }
        Ok(())
    }
}

/// Branch and bound over codes in increasing point order. On
/// center-transitive spaces point 0 is fixed in the code.
pub fn max_list_decodable(s: &SpaceSpec, d: u64, l: u64, budget: u64) -> Result<ListDecodableSearch> {
    s.validate()?;
    if l == 0 {
        return Err(invalid("list size L must be positive"));
    }
    let u = Universe::new(s, EXACT_LIMIT)?;
    let n = u.len();
    if n > 64 {
        return Err(Error::CapExceeded { size: n.to_string(), cap: 64 });
    }
    let balls: Vec<u64> = u.all_balls(d).iter().map(|b| b.iter().fold(0u64, |m, &j| m | 1 << j)).collect();
    let ball_size = balls.iter().map(|b| b.count_ones() as usize).min().unwrap_or(1);
    let transitive = s.is_center_transitive();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut st =
        State { balls: &balls, ball_size, l: l.min(u32::MAX as u64) as u32, best: 0, best_set: 0, nodes: 0, budget };
    let mut cnt = vec![0u32; n];
    if transitive {
        let mut eligible = all & !1;
        for x in 0..n {
            if balls[0] >> x & 1 == 1 {
                cnt[x] += 1;
                if cnt[x] == st.l {
                    eligible &= !balls[x];
                }
            }
        }
        st.run(1, 1, &mut cnt, eligible)?;
    } else {
        st.run(0, 0, &mut cnt, all)?;
    }
    let words = (0..n).filter(|&j| st.best_set >> j & 1 == 1).map(|j| u.points[j].clone()).collect();
    Ok(ListDecodableSearch { code: ExplicitCode::new(s.clone(), words)?, nodes: st.nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{list_profile, max_packing, SearchMode, DEFAULT_NODE_BUDGET};

    // Oracle: plain enumeration of every subset of a tiny space.
    fn brute(s: &SpaceSpec, d: u64, l: u64) -> usize {
        let u = Universe::new(s, 64).unwrap();
        let balls: Vec<u32> = u.all_balls(d).iter().map(|b| b.iter().fold(0u32, |m, &j| m | 1 << j)).collect();
        (0u32..1 << u.len())
            .filter(|&set| balls.iter().all(|&b| (b & set).count_ones() as u64 <= l))
            .map(|set| set.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn matches_subset_enumeration() {
        for n in 1..=4u64 {
            let s = SpaceSpec::hamming(2, n);
            for d in 0..=2 {
                for l in 1..=3 {
                    let got = max_list_decodable(&s, d, l, DEFAULT_NODE_BUDGET).unwrap();
                    assert_eq!(got.code.len(), brute(&s, d, l), "n={n} d={d} L={l}");
                    assert!(list_profile(&got.code, d).unwrap().l2 <= l);
                }
            }
        }
    }

    #[test]
    fn list_size_one_is_packing() {
        // (d,1)-list-decodable means minimum distance >= 2d + 1
        for n in 3..=6u64 {
            let s = SpaceSpec::hamming(2, n);
            let got = max_list_decodable(&s, 1, 1, DEFAULT_NODE_BUDGET).unwrap().code.len();
            let a = max_packing(&s, 3, SearchMode::Exact, DEFAULT_NODE_BUDGET).unwrap().len();
            assert_eq!(got, a);
        }
    }

    #[test]
    fn non_transitive_space() {
        let s = SpaceSpec::Insdel { v: 2, n: 3 };
        let got = max_list_decodable(&s, 2, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(got.code.len(), brute(&s, 2, 1));
    }
}
