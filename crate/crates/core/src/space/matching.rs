//! Cover weight of a matrix: the fewest rows plus columns containing every
//! nonzero entry. By König's theorem this equals the size of a maximum
//! matching in the bipartite row/column graph of nonzero entries.

use crate::matrix::Matrix;

pub fn cover_weight(m: &Matrix) -> u64 {
    let adj: Vec<Vec<usize>> = (0..m.rows()).map(|r| (0..m.cols()).filter(|&c| m.get(r, c) != 0).collect()).collect();
    let mut owner: Vec<Option<usize>> = vec![None; m.cols()];
    let mut size = 0;
    for r in 0..m.rows() {
        let mut seen = vec![false; m.cols()];
        if augment(r, &adj, &mut owner, &mut seen) {
            size += 1;
        }
    }
    size
}

fn augment(r: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &c in &adj[r] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if owner[c].is_none_or(|o| augment(o, adj, owner, seen)) {
            owner[c] = Some(r);
            return true;
        }
    }
    false
}

/// Minimum of `|I| + |J|` over all covers, trying every row subset `I`.
pub fn cover_weight_brute(m: &Matrix) -> u64 {
    assert!(m.rows() < 32, "brute force limited to fewer than 32 rows");
    let mut best = u64::MAX;
    for mask in 0u32..(1 << m.rows()) {
        let cols =
            (0..m.cols()).filter(|&c| (0..m.rows()).any(|r| mask >> r & 1 == 0 && m.get(r, c) != 0)).count() as u64;
        best = best.min(mask.count_ones() as u64 + cols);
    }
    best
}
