use crate::error::{invalid, Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;

use super::matching::cover_weight;
use super::{PermMetric, Point, SpaceSpec, SubspaceMetric};

fn mismatch(s: &SpaceSpec, a: &Point, b: &Point) -> Error {
    Error::ShapeMismatch(format!("points {a:?} and {b:?} do not both belong to {}", s.name()))
}

/// Cyclic pair vector: entry `i` is `(x_i, x_{i+1 mod n})`.
pub fn pair_vector(x: &[u32]) -> Result<Vec<(u32, u32)>> {
    if x.len() < 2 {
        return Err(invalid("pair vectors need length >= 2"));
    }
    Ok((0..x.len()).map(|i| (x[i], x[(i + 1) % x.len()])).collect())
}

/// True iff `shorter` is a subsequence of `longer`.
pub fn subsequence_test(shorter: &[u32], longer: &[u32]) -> bool {
    let mut it = longer.iter();
    shorter.iter().all(|s| it.any(|l| l == s))
}

/// Longest common subsequence length.
pub fn lcs_len(a: &[u32], b: &[u32]) -> usize {
    let mut prev = vec![0usize; b.len() + 1];
    let mut cur = vec![0usize; b.len() + 1];
    for &x in a {
        for (j, &y) in b.iter().enumerate() {
            cur[j + 1] = if x == y { prev[j] + 1 } else { prev[j + 1].max(cur[j]) };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[b.len()]
}

fn check_matrix(m: &Matrix, rows: u64, cols: u64) -> bool {
    m.rows() as u64 == rows && m.cols() as u64 == cols
}

fn hamming(a: &[u32], b: &[u32]) -> u64 {
    a.iter().zip(b).filter(|(x, y)| x != y).count() as u64
}

fn subspace_distance(f: &Field, n: u64, u: &Matrix, v: &Matrix, metric: SubspaceMetric) -> Option<u64> {
    if u.cols() as u64 != n || v.cols() as u64 != n {
        return None;
    }
    let (du, dv) = (u.rows() as u64, v.rows() as u64);
    let span = u.stack(v).rank(f) as u64;
    Some(match metric {
        SubspaceMetric::S => 2 * span - du - dv,
        SubspaceMetric::I => span - du.min(dv),
    })
}

/// Distance between two points of `s`.
pub fn distance(s: &SpaceSpec, a: &Point, b: &Point) -> Result<u64> {
    let bad = || mismatch(s, a, b);
    match (s, a, b) {
        (SpaceSpec::Hamming { n, .. }, Point::Vector(x), Point::Vector(y)) => {
            if x.len() as u64 != *n || y.len() as u64 != *n {
                return Err(bad());
            }
            Ok(hamming(x, y))
        }
        (SpaceSpec::PairMetric { n, .. }, Point::Vector(x), Point::Vector(y)) => {
            if x.len() as u64 != *n || y.len() as u64 != *n {
                return Err(bad());
            }
            let (px, py) = (pair_vector(x)?, pair_vector(y)?);
            Ok(px.iter().zip(&py).filter(|(u, v)| u != v).count() as u64)
        }
        (SpaceSpec::Rank { q, m, n }, Point::Matrix(x), Point::Matrix(y)) => {
            if !check_matrix(x, *n, *m) || !check_matrix(y, *n, *m) {
                return Err(bad());
            }
            let f = Field::get(*q)?;
            Ok(x.sub(&f, y).rank(&f) as u64)
        }
        (SpaceSpec::CoverMetric { q, m, n }, Point::Matrix(x), Point::Matrix(y)) => {
            if !check_matrix(x, *n, *m) || !check_matrix(y, *n, *m) {
                return Err(bad());
            }
            let f = Field::get(*q)?;
            Ok(cover_weight(&x.sub(&f, y)))
        }
        (SpaceSpec::SumRank { q, blocks }, Point::Blocks(x), Point::Blocks(y)) => {
            if x.len() != blocks.len() || y.len() != blocks.len() {
                return Err(bad());
            }
            let f = Field::get(*q)?;
            let mut total = 0;
            for ((&(n, m), u), v) in blocks.iter().zip(x).zip(y) {
                if !check_matrix(u, n, m) || !check_matrix(v, n, m) {
                    return Err(bad());
                }
                total += u.sub(&f, v).rank(&f) as u64;
            }
            Ok(total)
        }
        (SpaceSpec::Subspace { q, n, metric, .. }, Point::Subspace(u), Point::Subspace(v)) => {
            let f = Field::get(*q)?;
            subspace_distance(&f, *n, u, v, *metric).ok_or_else(bad)
        }
        (SpaceSpec::ConstDimSubspace { q, n, k, metric }, Point::Subspace(u), Point::Subspace(v)) => {
            if u.rows() as u64 != *k || v.rows() as u64 != *k {
                return Err(bad());
            }
            let f = Field::get(*q)?;
            subspace_distance(&f, *n, u, v, *metric).ok_or_else(bad)
        }
        (SpaceSpec::Insdel { v, .. }, Point::Word(x), Point::Word(y)) => {
            if x.iter().chain(y).any(|&c| c as u64 >= *v) {
                return Err(bad());
            }
            Ok((x.len() + y.len() - 2 * lcs_len(x, y)) as u64)
        }
        (SpaceSpec::Permutation { n, metric }, Point::Perm(x), Point::Perm(y)) => {
            if x.len() as u64 != *n || y.len() as u64 != *n {
                return Err(bad());
            }
            Ok(match metric {
                PermMetric::Hamming => hamming(x, y),
                PermMetric::Chebyshev => x.iter().zip(y).map(|(&u, &v)| u.abs_diff(v) as u64).max().unwrap_or(0),
            })
        }
        _ => Err(bad()),
    }
}
