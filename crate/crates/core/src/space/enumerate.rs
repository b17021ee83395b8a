use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

use super::{space_size, Point, SpaceSpec};

/// Default enumeration cap: `2^24` points.
pub const DEFAULT_CAP: u64 = 1 << 24;

pub type PointIter = Box<dyn Iterator<Item = Point> + Send>;

/// Digits of `idx` in base `radix`, most significant first.
pub fn digits(mut idx: u64, radix: u64, len: usize) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for slot in out.iter_mut().rev() {
        *slot = (idx % radix) as u32;
        idx /= radix;
    }
    out
}

/// Inverse of [`digits`].
pub fn undigits(d: &[u32], radix: u64) -> u64 {
    d.iter().fold(0, |acc, &x| acc * radix + x as u64)
}

fn words(radix: u64, len: usize) -> impl Iterator<Item = Vec<u32>> + Send {
    let total = radix.pow(len as u32);
    (0..total).map(move |i| digits(i, radix, len))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else { return out };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// All `k`-dimensional subspaces of `F_q^n` as RREF bases, ordered by pivot
/// set and then by free entries.
fn grassmannian(q: u64, n: usize, k: usize) -> impl Iterator<Item = Point> + Send {
    combinations(n, k).into_iter().flat_map(move |piv| {
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let piv = piv.clone();
                (piv[r] + 1..n).filter(move |c| !piv.contains(c)).map(move |c| (r, c))
            })
            .collect();
        let piv2 = piv.clone();
        words(q, free.len()).map(move |vals| {
            let mut m = Matrix::zeros(k, n);
            for (r, &c) in piv2.iter().enumerate() {
                m.set(r, c, 1);
            }
            for (&(r, c), &v) in free.iter().zip(&vals) {
                m.set(r, c, v);
            }
            Point::Subspace(m)
        })
    })
}

/// `n!` permutations of `1..=n` in lexicographic order.
fn permutations(n: usize) -> impl Iterator<Item = Point> + Send {
    let mut cur: Option<Vec<u32>> = Some((1..=n as u32).collect());
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let p = cur.as_mut().expect("checked above");
        match (0..p.len().saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) {
            None => cur = None,
            Some(i) => {
                let j = (i + 1..p.len()).rev().find(|&j| p[j] > p[i]).expect("successor exists");
                p.swap(i, j);
                p[i + 1..].reverse();
            }
        }
        Some(Point::Perm(out))
    })
}

fn check_cap(s: &SpaceSpec, cap: u64) -> Result<()> {
    let size = space_size(s);
    if size > BigUint::from(cap) || size.to_u64().is_none() {
        return Err(Error::CapExceeded { size: size.to_string(), cap });
    }
    Ok(())
}

/// Every point of `s` exactly once, in a fixed lexicographic order.
pub fn enumerate_space(s: &SpaceSpec, cap: u64) -> Result<PointIter> {
    s.validate()?;
    check_cap(s, cap)?;
    Ok(match s.clone() {
        SpaceSpec::Hamming { q, n } | SpaceSpec::PairMetric { q, n } => {
            Box::new(words(q, n as usize).map(Point::Vector))
        }
        SpaceSpec::Insdel { v, n } => Box::new(words(v, n as usize).map(Point::Word)),
        SpaceSpec::Rank { q, m, n } | SpaceSpec::CoverMetric { q, m, n } => {
            let (r, c) = (n as usize, m as usize);
            Box::new(words(q, r * c).map(move |d| Point::Matrix(Matrix::from_vec(r, c, d))))
        }
        SpaceSpec::SumRank { q, blocks } => {
            let total: u64 = blocks.iter().map(|(n, m)| n * m).sum();
            Box::new(words(q, total as usize).map(move |d| {
                let mut off = 0;
                let mats = blocks
                    .iter()
                    .map(|&(n, m)| {
                        let len = (n * m) as usize;
                        let mat = Matrix::from_vec(n as usize, m as usize, d[off..off + len].to_vec());
                        off += len;
                        mat
                    })
                    .collect();
                Point::Blocks(mats)
            }))
        }
        SpaceSpec::Subspace { q, n, dims, .. } => {
            Box::new(dims.into_iter().flat_map(move |k| grassmannian(q, n as usize, k as usize)))
        }
        SpaceSpec::ConstDimSubspace { q, n, k, .. } => Box::new(grassmannian(q, n as usize, k as usize)),
        SpaceSpec::Permutation { n, .. } => Box::new(permutations(n as usize)),
    })
}

/// Materialized [`enumerate_space`].
pub fn points(s: &SpaceSpec, cap: u64) -> Result<Vec<Point>> {
    Ok(enumerate_space(s, cap)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::space::{PermMetric, SubspaceMetric};
    use std::collections::HashSet;

    #[test]
    fn hamming_order() {
        let pts = points(&SpaceSpec::hamming(2, 3), DEFAULT_CAP).unwrap();
        assert_eq!(pts.len(), 8);
        assert_eq!(pts[0], Point::Vector(vec![0, 0, 0]));
        assert_eq!(pts[7], Point::Vector(vec![1, 1, 1]));
        let mut sorted = pts.clone();
        sorted.sort();
        assert_eq!(sorted, pts);
    }

    #[test]
    fn permutations_are_all_distinct() {
        let pts = points(&SpaceSpec::Permutation { n: 3, metric: PermMetric::Hamming }, DEFAULT_CAP).unwrap();
        assert_eq!(pts.len(), 6);
        assert_eq!(pts.iter().collect::<HashSet<_>>().len(), 6);
        assert_eq!(pts[0], Point::Perm(vec![1, 2, 3]));
        assert_eq!(pts[5], Point::Perm(vec![3, 2, 1]));
    }

    #[test]
    fn grassmannian_bases_are_canonical() {
        let f = Field::get(2).unwrap();
        let s = SpaceSpec::ConstDimSubspace { q: 2, n: 4, k: 2, metric: SubspaceMetric::I };
        let pts = points(&s, DEFAULT_CAP).unwrap();
        assert_eq!(pts.len(), 35);
        assert_eq!(pts.iter().collect::<HashSet<_>>().len(), 35);
        for p in &pts {
            let Point::Subspace(m) = p else { panic!() };
            assert_eq!(&m.rref(&f).0, m);
        }
    }

    // Oracle: RREF every 2-row matrix over F_2^4 and collect distinct rank-2 forms.
    #[test]
    fn grassmannian_count_by_rref() {
        for (q, n, k) in [(2u64, 4usize, 2usize), (3, 3, 1), (2, 5, 2)] {
            let f = Field::get(q).unwrap();
            let mut seen = HashSet::new();
            for d in words(q, n * k) {
                let (r, piv) = Matrix::from_vec(k, n, d).rref(&f);
                if piv.len() == k {
                    seen.insert(r);
                }
            }
            let s = SpaceSpec::ConstDimSubspace { q, n: n as u64, k: k as u64, metric: SubspaceMetric::S };
            let listed: HashSet<Point> = points(&s, DEFAULT_CAP).unwrap().into_iter().collect();
            assert_eq!(listed, seen.into_iter().map(Point::Subspace).collect());
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = points(&SpaceSpec::hamming(2, 30), DEFAULT_CAP).unwrap_err();
        assert!(err.to_string().contains("1073741824"));
        assert!(points(&SpaceSpec::hamming(2, 4), 15).is_err());
        assert!(points(&SpaceSpec::hamming(2, 4), 16).is_ok());
    }
}
