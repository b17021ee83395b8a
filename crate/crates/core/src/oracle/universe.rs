//! An enumerated space with point indices, shared by the oracles.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::Result;
use crate::space::{digits, distance, points, undigits, Point, SpaceSpec};

pub struct Universe {
    pub space: SpaceSpec,
    pub points: Vec<Point>,
    index: HashMap<Point, usize>,
}

impl Universe {
    pub fn new(space: &SpaceSpec, cap: u64) -> Result<Self> {
        let points = points(space, cap)?;
        let index = if matches!(space, SpaceSpec::Hamming { .. }) {
            HashMap::new()
        } else {
            points.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect()
        };
        Ok(Universe { space: space.clone(), points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        match (&self.space, p) {
            (SpaceSpec::Hamming { q, n }, Point::Vector(v)) if v.len() as u64 == *n => Some(undigits(v, *q) as usize),
            _ => self.index.get(p).copied(),
        }
    }

    pub fn dist(&self, i: usize, j: usize) -> u64 {
        distance(&self.space, &self.points[i], &self.points[j]).expect("points of the same space")
    }

    /// Indices within distance `r` of point `i`, ascending.
    pub fn ball(&self, i: usize, r: u64) -> Vec<usize> {
        if let SpaceSpec::Hamming { q, n } = self.space {
            let center = digits(i as u64, q, n as usize);
            let mut out = Vec::new();
            hamming_ball(q, &center, r, 0, &mut center.clone(), &mut out);
            out.sort_unstable();
            return out;
        }
        (0..self.len()).filter(|&j| self.dist(i, j) <= r).collect()
    }

    /// Balls of radius `r` around every point, computed in parallel.
    pub fn all_balls(&self, r: u64) -> Vec<Vec<usize>> {
        (0..self.len()).into_par_iter().map(|i| self.ball(i, r)).collect()
    }
}

fn hamming_ball(q: u64, center: &[u32], r: u64, from: usize, cur: &mut Vec<u32>, out: &mut Vec<usize>) {
    out.push(undigits(cur, q) as usize);
    if r == 0 {
        return;
    }
    for pos in from..center.len() {
        for s in 0..q as u32 {
            if s == center[pos] {
                continue;
            }
            cur[pos] = s;
            hamming_ball(q, center, r - 1, pos + 1, cur, out);
        }
        cur[pos] = center[pos];
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_ball_matches_scan() {
        let s = SpaceSpec::hamming(3, 4);
        let u = Universe::new(&s, 1 << 20).unwrap();
        for i in [0usize, 5, 80] {
            for r in 0..=4 {
                let scan: Vec<usize> = (0..u.len()).filter(|&j| u.dist(i, j) <= r).collect();
                assert_eq!(u.ball(i, r), scan);
            }
        }
    }

    #[test]
    fn indices_round_trip() {
        let s = SpaceSpec::Permutation { n: 4, metric: crate::space::PermMetric::Chebyshev };
        let u = Universe::new(&s, 1 << 20).unwrap();
        for (i, p) in u.points.iter().enumerate() {
            assert_eq!(u.index_of(p), Some(i));
        }
    }
}
