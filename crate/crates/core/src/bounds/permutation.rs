//! Permutation-code bounds in the Chebyshev and Hamming metrics.

use num_bigint::BigUint;
use num_integer::Roots;

use super::{ceil_f64, list_from_cover, BoundKind, BoundQuery, BoundResult, BoundValue};
use crate::error::{invalid, Result};
use crate::exact::{factorial, log2_big};
use crate::space::{PermMetric, SpaceSpec};

const C_CYCLIC: &str = "Chebyshev covering radius of the cyclic group G_n";
const C_BLOCK: &str = "Chebyshev covering of S_mt built from cyclic groups on blocks of size m";
const C_HAMMING: &str = "permutation covering codes of Hamming radius n - s with size e s! n log2 n";
const C_RATE: &str = "asymptotic Chebyshev permutation covering rate (leading term)";

/// `n - floor((sqrt(4n+1) + 1) / 2)`, the Chebyshev covering radius of the
/// cyclic group generated by `(1 2 ... n)`.
pub fn chebyshev_cyclic_radius(n: u64) -> u64 {
    n - ((4 * n + 1).sqrt() + 1) / 2
}

/// `R(rho) = -rho k log2 rho - (1 - rho k) log2(1 - rho k)` with `k = floor(1/rho)`.
pub fn chebyshev_rate(rho: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(invalid(format!("need 0 < rho < 1, got {rho}")));
    }
    let k = (1.0 / rho).floor();
    let a = rho * k;
    let xlog = |x: f64| if x <= 0.0 { 0.0 } else { x * x.log2() };
    Ok(-k * xlog(rho) - xlog(1.0 - a))
}

pub fn bound_permutation(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    let SpaceSpec::Permutation { n, metric } = query.space else {
        return Err(invalid("permutation bounds need a permutation space"));
    };
    let (l, d) = (query.l, query.d);
    let mut out = Vec::new();
    match metric {
        PermMetric::Chebyshev => {
            let r = chebyshev_cyclic_radius(n);
            out.push(if d >= r {
                BoundResult::cover_exact("chebyshev_cyclic", l, BigUint::from(n), C_CYCLIC)
                    .with_note(format!("cyclic covering radius {r}"))
            } else {
                BoundResult::inapplicable("chebyshev_cyclic", BoundKind::SizeUpper, C_CYCLIC, format!("needs d >= {r}"))
            });

            // Every factorization n = m t with t >= 2 and d >= R_m.
            let best = (1..n)
                .filter(|m| n % m == 0 && n / m >= 2 && d >= chebyshev_cyclic_radius(*m))
                .map(|m| {
                    let t = n / m;
                    (factorial(n) / factorial(m - 1).pow(t as u32), m, t)
                })
                .min();
            out.push(match best {
                Some((k, m, t)) => BoundResult::cover_exact("chebyshev_blocks", l, k, C_BLOCK)
                    .with_note(format!("m = {m}, t = {t}, block radius {}", chebyshev_cyclic_radius(m))),
                None => BoundResult::inapplicable(
                    "chebyshev_blocks",
                    BoundKind::SizeUpper,
                    C_BLOCK,
                    "no n = m t with t >= 2 and d >= R_m",
                ),
            });

            let rho = d as f64 / n as f64;
            out.push(match chebyshev_rate(rho) {
                Ok(v) => BoundResult::applies("chebyshev_rate", BoundKind::RateUpper, BoundValue::Real(v), C_RATE)
                    .asymptotic()
                    .with_note(format!("rho = {rho:.6}; o(1) term omitted; rate is log2|C| / n")),
                Err(e) => BoundResult::inapplicable("chebyshev_rate", BoundKind::RateUpper, C_RATE, e.to_string()),
            });
        }
        PermMetric::Hamming => {
            // Radius n - s <= d; a smaller s only shrinks the cover.
            let s = n.saturating_sub(d).max(1);
            out.push(if n >= 2 * s + 2 {
                let log2 = std::f64::consts::E.log2()
                    + (l as f64).log2()
                    + (n as f64).log2()
                    + (n as f64).log2().log2()
                    + log2_big(&factorial(s));
                let raw = 2f64.powf(log2);
                BoundResult::applies(
                    "permutation_hamming",
                    BoundKind::SizeUpper,
                    BoundValue::Exact(ceil_f64(raw)),
                    C_HAMMING,
                )
                .with_raw(raw)
                .with_note(format!("s = {s}"))
            } else {
                BoundResult::inapplicable(
                    "permutation_hamming",
                    BoundKind::SizeUpper,
                    C_HAMMING,
                    format!("needs n >= 2s + 2 with s = {s}"),
                )
            });
        }
    }
    if let Some(x) = list_from_cover(query, &out) {
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{best_size_upper, evaluate};

    #[test]
    fn cyclic_radius_values() {
        let got: Vec<u64> = (1..=10).map(chebyshev_cyclic_radius).collect();
        let want: Vec<u64> =
            (1..=10u64).map(|n| n - ((((4 * n + 1) as f64).sqrt() + 1.0) / 2.0).floor() as u64).collect();
        assert_eq!(got, want);
        assert_eq!(chebyshev_cyclic_radius(4), 2);
    }

    #[test]
    fn chebyshev_query_n4() {
        let s = SpaceSpec::Permutation { n: 4, metric: PermMetric::Chebyshev };
        for l in 1..=3 {
            let res = evaluate(&BoundQuery::new(s.clone(), 2, l)).unwrap();
            let r = res.iter().find(|r| r.name == "chebyshev_cyclic").unwrap();
            assert_eq!(r.value, Some(BoundValue::Exact(BigUint::from(4 * l))));
            assert_eq!(best_size_upper(&res).unwrap().value, Some(BoundValue::Exact(BigUint::from(4 * l))));
        }
        let res = evaluate(&BoundQuery::new(s, 1, 1)).unwrap();
        let r = res.iter().find(|r| r.name == "chebyshev_cyclic").unwrap();
        assert!(!r.applicable && r.reason.as_deref().unwrap().contains('2'));
    }

    #[test]
    fn block_form() {
        let s = SpaceSpec::Permutation { n: 6, metric: PermMetric::Chebyshev };
        let res = evaluate(&BoundQuery::new(s, 1, 1)).unwrap();
        let r = res.iter().find(|r| r.name == "chebyshev_blocks").unwrap();
        // m = 3, t = 2: 720 / 4.
        assert_eq!(r.value, Some(BoundValue::Exact(BigUint::from(180u32))));
    }

    #[test]
    fn hamming_form_n10_s4() {
        let s = SpaceSpec::Permutation { n: 10, metric: PermMetric::Hamming };
        let res = evaluate(&BoundQuery::new(s, 6, 1)).unwrap();
        let r = res.iter().find(|r| r.name == "permutation_hamming").unwrap();
        let raw = std::f64::consts::E * 10.0 * 10f64.log2() * 24.0;
        assert!((r.raw.unwrap() - raw).abs() < 1e-6 * raw);
        assert_eq!(r.value, Some(BoundValue::Exact(BigUint::from(raw.ceil() as u64))));
    }

    #[test]
    fn rate_at_half() {
        assert!((chebyshev_rate(0.5).unwrap() - 1.0).abs() < 1e-12);
        assert!(chebyshev_rate(1.0).is_err());
    }
}
