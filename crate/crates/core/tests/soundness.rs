//! Every comparable size-upper bound must be at least the true maximum size
//! of a (d, L)-list-decodable code, found here by exact search.

use num_bigint::BigUint;

use ldbound::bounds::{evaluate, BoundQuery, BoundValue};
use ldbound::oracle::max_list_decodable;
use ldbound::space::{PermMetric, SpaceSpec};

fn check(s: SpaceSpec, max_d: u64, max_l: u64) {
    for d in 0..=max_d.min(s.diameter()) {
        for l in 1..=max_l {
            let best = max_list_decodable(&s, d, l, u64::MAX).unwrap().code.len() as u64;
            for r in evaluate(&BoundQuery::new(s.clone(), d, l)).unwrap() {
                if !r.is_comparable_size_upper() {
                    continue;
                }
                let ok = match r.value.as_ref().unwrap() {
                    BoundValue::Exact(v) => *v >= BigUint::from(best),
                    v => v.log2() >= (best as f64).log2() - 1e-9,
                };
                assert!(ok, "{s:?} d={d} L={l}: {} = {:?} below the maximum {best}", r.name, r.value);
            }
        }
    }
}

#[test]
fn ternary_hamming() {
    check(SpaceSpec::hamming(3, 3), 2, 2);
}

#[test]
fn binary_rank_matrices() {
    check(SpaceSpec::Rank { q: 2, m: 2, n: 2 }, 2, 3);
    check(SpaceSpec::Rank { q: 2, m: 3, n: 2 }, 2, 2);
}

#[test]
fn permutations_of_four() {
    check(SpaceSpec::Permutation { n: 4, metric: PermMetric::Hamming }, 4, 2);
    check(SpaceSpec::Permutation { n: 4, metric: PermMetric::Chebyshev }, 3, 2);
}
