//! The finite metric spaces: specifications, points, distances, ball
//! volumes and exhaustive enumeration.

mod distance;
mod enumerate;
mod matching;
mod point;
mod volume;

pub use distance::{distance, lcs_len, pair_vector, subsequence_test};
pub use enumerate::{digits, enumerate_space, points, undigits, PointIter, DEFAULT_CAP};
pub use matching::{cover_weight, cover_weight_brute};
pub use point::{contains, Point};
pub use volume::{ball_volume, sum_rank_weight_distribution};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exact::{factorial, gaussian_binomial, pow, prime_power};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum SubspaceMetric {
    /// `d_S = dim U + dim V - 2 dim(U ∩ V)`
    S,
    /// `d_I = dim(U + V) - min(dim U, dim V)`
    #[default]
    I,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum PermMetric {
    #[default]
    Hamming,
    Chebyshev,
}

/// One of the supported finite metric spaces.
///
/// Matrix payloads are `n x m` (rows x columns) with `n <= m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceSpec {
    Hamming {
        q: u64,
        n: u64,
    },
    Rank {
        q: u64,
        m: u64,
        n: u64,
    },
    /// Blocks are `(n_i, m_i)`.
    SumRank {
        q: u64,
        blocks: Vec<(u64, u64)>,
    },
    Subspace {
        q: u64,
        n: u64,
        dims: Vec<u64>,
        metric: SubspaceMetric,
    },
    ConstDimSubspace {
        q: u64,
        n: u64,
        k: u64,
        metric: SubspaceMetric,
    },
    CoverMetric {
        q: u64,
        m: u64,
        n: u64,
    },
    PairMetric {
        q: u64,
        n: u64,
    },
    Insdel {
        v: u64,
        n: u64,
    },
    Permutation {
        n: u64,
        metric: PermMetric,
    },
}

impl SpaceSpec {
    pub fn hamming(q: u64, n: u64) -> Self {
        SpaceSpec::Hamming { q, n }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpaceSpec::Hamming { .. } => "hamming",
            SpaceSpec::Rank { .. } => "rank",
            SpaceSpec::SumRank { .. } => "sum_rank",
            SpaceSpec::Subspace { .. } => "subspace",
            SpaceSpec::ConstDimSubspace { .. } => "const_dim_subspace",
            SpaceSpec::CoverMetric { .. } => "cover_metric",
            SpaceSpec::PairMetric { .. } => "pair_metric",
            SpaceSpec::Insdel { .. } => "insdel",
            SpaceSpec::Permutation { .. } => "permutation",
        }
    }

    pub fn validate(&self) -> Result<()> {
        let field = |q: u64| -> Result<()> {
            if prime_power(q).is_none() {
                return Err(invalid(format!("q={q} must be a prime power")));
            }
            Ok(())
        };
        let positive = |name: &str, v: u64| -> Result<()> {
            if v == 0 {
                return Err(invalid(format!("{name} must be >= 1")));
            }
            Ok(())
        };
        match self {
            SpaceSpec::Hamming { q, n } | SpaceSpec::PairMetric { q, n } => {
                if *q < 2 {
                    return Err(invalid(format!("alphabet size q={q} must be >= 2")));
                }
                positive("n", *n)?;
                if matches!(self, SpaceSpec::PairMetric { .. }) && *n < 2 {
                    return Err(invalid("pair metric needs n >= 2"));
                }
            }
            SpaceSpec::Rank { q, m, n } | SpaceSpec::CoverMetric { q, m, n } => {
                field(*q)?;
                positive("n", *n)?;
                if m < n {
                    return Err(invalid(format!("matrix spaces need m >= n, got m={m} n={n}")));
                }
            }
            SpaceSpec::SumRank { q, blocks } => {
                field(*q)?;
                if blocks.is_empty() {
                    return Err(invalid("sum-rank space needs at least one block"));
                }
                for (i, &(n, m)) in blocks.iter().enumerate() {
                    positive("block n_i", n)?;
                    if n > m {
                        return Err(invalid(format!("block {i} has n_i={n} > m_i={m}")));
                    }
                    if i > 0 && blocks[i - 1].1 < m {
                        return Err(invalid("sum-rank blocks need m_1 >= m_2 >= ... >= m_t"));
                    }
                }
            }
            SpaceSpec::Subspace { q, n, dims, .. } => {
                field(*q)?;
                positive("n", *n)?;
                if dims.is_empty() {
                    return Err(invalid("subspace space needs at least one dimension"));
                }
                let mut prev = None;
                for &k in dims {
                    if k == 0 || k >= *n {
                        return Err(invalid(format!("subspace dimension {k} outside 1..{}", n - 1)));
                    }
                    if prev.is_some_and(|p| p >= k) {
                        return Err(invalid("subspace dims must be strictly increasing"));
                    }
                    prev = Some(k);
                }
            }
            SpaceSpec::ConstDimSubspace { q, n, k, .. } => {
                field(*q)?;
                positive("n", *n)?;
                if *k == 0 || k >= n {
                    return Err(invalid(format!("subspace dimension {k} outside 1..{}", n - 1)));
                }
            }
            SpaceSpec::Insdel { v, n } => {
                if *v < 2 {
                    return Err(invalid("insdel alphabet needs v >= 2"));
                }
                positive("n", *n)?;
            }
            SpaceSpec::Permutation { n, .. } => positive("n", *n)?,
        }
        Ok(())
    }

    /// Alphabet / field size, where one exists.
    pub fn q(&self) -> Option<u64> {
        match self {
            SpaceSpec::Hamming { q, .. }
            | SpaceSpec::Rank { q, .. }
            | SpaceSpec::SumRank { q, .. }
            | SpaceSpec::Subspace { q, .. }
            | SpaceSpec::ConstDimSubspace { q, .. }
            | SpaceSpec::CoverMetric { q, .. }
            | SpaceSpec::PairMetric { q, .. } => Some(*q),
            SpaceSpec::Insdel { v, .. } => Some(*v),
            SpaceSpec::Permutation { .. } => None,
        }
    }

    /// Largest possible distance between two points of the space.
    pub fn diameter(&self) -> u64 {
        match self {
            SpaceSpec::Hamming { n, .. } | SpaceSpec::PairMetric { n, .. } => *n,
            SpaceSpec::Rank { n, .. } | SpaceSpec::CoverMetric { n, .. } => *n,
            SpaceSpec::SumRank { blocks, .. } => blocks.iter().map(|b| b.0).sum(),
            SpaceSpec::Subspace { n, dims, metric, .. } => {
                let mut best = 0;
                for &a in dims {
                    for &b in dims {
                        let span = (a + b).min(*n);
                        let d = match metric {
                            SubspaceMetric::S => 2 * span - a - b,
                            SubspaceMetric::I => span - a.min(b),
                        };
                        best = best.max(d);
                    }
                }
                best
            }
            SpaceSpec::ConstDimSubspace { n, k, metric, .. } => {
                let span = (2 * k).min(*n);
                match metric {
                    SubspaceMetric::S => 2 * (span - k),
                    SubspaceMetric::I => span - k,
                }
            }
            SpaceSpec::Insdel { n, .. } => 2 * n,
            SpaceSpec::Permutation { n, metric } => match metric {
                PermMetric::Hamming => {
                    if *n == 1 {
                        0
                    } else {
                        *n
                    }
                }
                PermMetric::Chebyshev => n - 1,
            },
        }
    }

    /// True when every ball of a given radius has the same volume.
    pub fn is_center_transitive(&self) -> bool {
        match self {
            SpaceSpec::Subspace { dims, .. } => dims.len() == 1,
            SpaceSpec::Insdel { .. } => false,
            _ => true,
        }
    }
}

/// Number of points of the space.
pub fn space_size(s: &SpaceSpec) -> BigUint {
    match s {
        SpaceSpec::Hamming { q, n } | SpaceSpec::PairMetric { q, n } => pow(*q, *n),
        SpaceSpec::Rank { q, m, n } | SpaceSpec::CoverMetric { q, m, n } => pow(*q, m * n),
        SpaceSpec::SumRank { q, blocks } => pow(*q, blocks.iter().map(|(n, m)| n * m).sum()),
        SpaceSpec::Subspace { q, n, dims, .. } => {
            dims.iter().map(|&k| gaussian_binomial(*n, k, *q).unwrap_or_else(|_| BigUint::zero())).sum()
        }
        SpaceSpec::ConstDimSubspace { q, n, k, .. } => {
            gaussian_binomial(*n, *k, *q).unwrap_or_else(|_| BigUint::zero())
        }
        SpaceSpec::Insdel { v, n } => pow(*v, *n),
        SpaceSpec::Permutation { n, .. } => {
            if *n == 0 {
                BigUint::one()
            } else {
                factorial(*n)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(space_size(&SpaceSpec::hamming(2, 4)), BigUint::from(16u32));
        let g = SpaceSpec::ConstDimSubspace { q: 2, n: 4, k: 2, metric: SubspaceMetric::I };
        assert_eq!(space_size(&g), BigUint::from(35u32));
        let p = SpaceSpec::Permutation { n: 4, metric: PermMetric::Chebyshev };
        assert_eq!(space_size(&p), BigUint::from(24u32));
        let sr = SpaceSpec::SumRank { q: 2, blocks: vec![(2, 3), (1, 2)] };
        assert_eq!(space_size(&sr), BigUint::from(256u32));
    }

    #[test]
    fn validation() {
        assert!(SpaceSpec::Rank { q: 2, m: 2, n: 3 }.validate().is_err());
        assert!(SpaceSpec::Rank { q: 6, m: 3, n: 3 }.validate().is_err());
        assert!(SpaceSpec::SumRank { q: 2, blocks: vec![(1, 2), (2, 3)] }.validate().is_err());
        assert!(SpaceSpec::SumRank { q: 2, blocks: vec![] }.validate().is_err());
        assert!(SpaceSpec::SumRank { q: 2, blocks: vec![(2, 3), (1, 2)] }.validate().is_ok());
        let sub = |dims: Vec<u64>| SpaceSpec::Subspace { q: 2, n: 4, dims, metric: SubspaceMetric::S };
        assert!(sub(vec![0, 1]).validate().is_err());
        assert!(sub(vec![1, 4]).validate().is_err());
        assert!(sub(vec![1, 2, 3]).validate().is_ok());
        assert!(SpaceSpec::PairMetric { q: 2, n: 1 }.validate().is_err());
        assert!(SpaceSpec::Hamming { q: 6, n: 3 }.validate().is_ok());
    }

    #[test]
    fn diameters_match_enumeration() {
        let specs = vec![
            SpaceSpec::hamming(3, 3),
            SpaceSpec::Rank { q: 2, m: 3, n: 2 },
            SpaceSpec::CoverMetric { q: 2, m: 3, n: 2 },
            SpaceSpec::PairMetric { q: 2, n: 4 },
            SpaceSpec::SumRank { q: 2, blocks: vec![(2, 2), (1, 1)] },
            SpaceSpec::Subspace { q: 2, n: 4, dims: vec![1, 2, 3], metric: SubspaceMetric::S },
            SpaceSpec::Subspace { q: 2, n: 4, dims: vec![1, 2, 3], metric: SubspaceMetric::I },
            SpaceSpec::ConstDimSubspace { q: 2, n: 4, k: 2, metric: SubspaceMetric::S },
            SpaceSpec::ConstDimSubspace { q: 2, n: 5, k: 2, metric: SubspaceMetric::I },
            SpaceSpec::Permutation { n: 4, metric: PermMetric::Hamming },
            SpaceSpec::Permutation { n: 4, metric: PermMetric::Chebyshev },
        ];
        for s in specs {
            let pts = points(&s, DEFAULT_CAP).unwrap();
            let mut best = 0;
            for a in &pts {
                for b in &pts {
                    best = best.max(distance(&s, a, b).unwrap());
                }
            }
            assert_eq!(best, s.diameter(), "{s:?}");
        }
    }
}
