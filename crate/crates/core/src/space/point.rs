use serde::{Deserialize, Serialize};

use crate::matrix::Matrix;

/// An element of a [`super::SpaceSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    /// Hamming and pair-metric vectors.
    Vector(Vec<u32>),
    /// Rank and cover-metric matrices.
    Matrix(Matrix),
    /// Sum-rank tuples, one matrix per block.
    Blocks(Vec<Matrix>),
    /// A subspace as its reduced row echelon basis (rows = dimension).
    Subspace(Matrix),
    /// Insdel strings, any length.
    Word(Vec<u32>),
    /// Images of `1..=n`.
    Perm(Vec<u32>),
}

impl Point {
    pub fn as_vector(&self) -> Option<&[u32]> {
        match self {
            Point::Vector(v) | Point::Word(v) | Point::Perm(v) => Some(v),
            _ => None,
        }
    }
}

use crate::field::Field;

use super::SpaceSpec;

fn shape_is(m: &Matrix, rows: u64, cols: u64, q: u64) -> bool {
    m.rows() as u64 == rows && m.cols() as u64 == cols && m.data().iter().all(|&x| (x as u64) < q)
}

/// True iff `p` is a well-formed point of `s` (shape, symbol range,
/// canonical subspace basis, permutation bijectivity).
pub fn contains(s: &SpaceSpec, p: &Point) -> bool {
    let canonical = |q: u64, n: u64, m: &Matrix| -> bool {
        if !shape_is(m, m.rows() as u64, n, q) {
            return false;
        }
        let Ok(f) = Field::get(q) else { return false };
        let (r, piv) = m.rref(&f);
        piv.len() == m.rows() && &r == m
    };
    match (s, p) {
        (SpaceSpec::Hamming { q, n } | SpaceSpec::PairMetric { q, n }, Point::Vector(v)) => {
            v.len() as u64 == *n && v.iter().all(|&x| (x as u64) < *q)
        }
        (SpaceSpec::Insdel { v: alpha, .. }, Point::Word(w)) => w.iter().all(|&x| (x as u64) < *alpha),
        (SpaceSpec::Rank { q, m, n } | SpaceSpec::CoverMetric { q, m, n }, Point::Matrix(x)) => shape_is(x, *n, *m, *q),
        (SpaceSpec::SumRank { q, blocks }, Point::Blocks(xs)) => {
            xs.len() == blocks.len() && xs.iter().zip(blocks).all(|(x, &(n, m))| shape_is(x, n, m, *q))
        }
        (SpaceSpec::Subspace { q, n, dims, .. }, Point::Subspace(b)) => {
            dims.contains(&(b.rows() as u64)) && canonical(*q, *n, b)
        }
        (SpaceSpec::ConstDimSubspace { q, n, k, .. }, Point::Subspace(b)) => {
            b.rows() as u64 == *k && canonical(*q, *n, b)
        }
        (SpaceSpec::Permutation { n, .. }, Point::Perm(v)) => {
            let mut seen = vec![false; *n as usize + 1];
            v.len() as u64 == *n
                && v.iter().all(|&x| {
                    let ok = x >= 1 && (x as u64) <= *n && !seen[x as usize];
                    if ok {
                        seen[x as usize] = true;
                    }
                    ok
                })
        }
        _ => false,
    }
}
