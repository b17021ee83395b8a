use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{binomial, pow, rank_count};
use crate::matrix::Matrix;

use super::{distance, enumerate_space, Point, SpaceSpec, DEFAULT_CAP};

/// Per-weight counts of a sum-rank space: entry `w` is the number of
/// tuples of sum-rank weight exactly `w`.
pub fn sum_rank_weight_distribution(q: u64, blocks: &[(u64, u64)]) -> Vec<BigUint> {
    let mut dist = vec![BigUint::from(1u32)];
    for &(n, m) in blocks {
        let block: Vec<BigUint> = (0..=n).map(|s| rank_count(q, n, m, s)).collect();
        let mut next = vec![BigUint::zero(); dist.len() + block.len() - 1];
        for (i, a) in dist.iter().enumerate() {
            for (j, b) in block.iter().enumerate() {
                next[i + j] += a * b;
            }
        }
        dist = next;
    }
    dist
}

fn default_center(s: &SpaceSpec) -> Option<Point> {
    match s {
        SpaceSpec::Hamming { n, .. } | SpaceSpec::PairMetric { n, .. } => Some(Point::Vector(vec![0; *n as usize])),
        SpaceSpec::Rank { m, n, .. } | SpaceSpec::CoverMetric { m, n, .. } => {
            Some(Point::Matrix(Matrix::zeros(*n as usize, *m as usize)))
        }
        SpaceSpec::SumRank { blocks, .. } => {
            Some(Point::Blocks(blocks.iter().map(|&(n, m)| Matrix::zeros(n as usize, m as usize)).collect()))
        }
        SpaceSpec::Permutation { n, .. } => Some(Point::Perm((1..=*n as u32).collect())),
        SpaceSpec::ConstDimSubspace { .. } => enumerate_space(s, u64::MAX).ok()?.next(),
        SpaceSpec::Subspace { dims, .. } if dims.len() == 1 => enumerate_space(s, u64::MAX).ok()?.next(),
        _ => None,
    }
}

/// Number of points within distance `r` of `center`.
///
/// Hamming, rank and sum-rank use closed formulas; other kinds count
/// exhaustively. Kinds whose volume depends on the center require one.
pub fn ball_volume(s: &SpaceSpec, r: u64, center: Option<&Point>) -> Result<BigUint> {
    s.validate()?;
    match s {
        SpaceSpec::Hamming { q, n } => {
            return Ok((0..=r.min(*n)).map(|j| binomial(*n, j) * pow(q - 1, j)).sum());
        }
        SpaceSpec::Rank { q, m, n } => {
            return Ok((0..=r.min(*n)).map(|j| rank_count(*q, *n, *m, j)).sum());
        }
        SpaceSpec::SumRank { q, blocks } => {
            return Ok(sum_rank_weight_distribution(*q, blocks).into_iter().take(r as usize + 1).sum());
        }
        _ => {}
    }
    let owned;
    let center = match center {
        Some(c) => c,
        None => {
            owned = default_center(s).ok_or_else(|| Error::MissingCenter(s.name().to_string()))?;
            &owned
        }
    };
    let mut count = 0u64;
    for p in enumerate_space(s, DEFAULT_CAP)? {
        if distance(s, center, &p)? <= r {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}
