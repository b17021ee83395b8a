//! Rank-metric covering exponents and bounds in `n x m` matrices over `F_q`.

use serde::{Deserialize, Serialize};

use super::{list_from_cover, BoundKind, BoundQuery, BoundResult, BoundValue};
use crate::error::{invalid, Error, Result};
use crate::exact::LogSize;
use crate::space::SpaceSpec;

const C_GY: &str = "rank covering by block compositions: K_R <= q^(m(n-rho) - sum rho_i(n_i - rho_i))";
const C_CLOSED: &str = "rank covering closed form q^((n-rho)(n-rho+1)-rho) for square matrices";
const C_TABLE: &str = "covering bound |C| <= L K_R(q^m, n, rho) with a tabulated K_R";
const C_LIST: &str = "list size of a rank-metric code of size q^(nk)";
const C_RATE: &str = "asymptotic rank covering density (1-r)(1-br)";

/// An optimal composition `(n_i, rho_i)` for the rank covering exponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GyComposition {
    pub exponent: u64,
    pub parts: Vec<(u64, u64)>,
}

/// Minimizes `m(n - rho) - sum rho_i (n_i - rho_i)` over compositions
/// `sum n_i = n`, `sum rho_i = rho` with `n_i >= 1`, `0 <= rho_i <= n_i` and
/// `n_i + rho_i <= m`, by dynamic programming over (remaining n, remaining rho).
pub fn gy_exponent(q: u64, m: u64, n: u64, rho: u64) -> Result<GyComposition> {
    if q < 2 {
        return Err(invalid("q must be at least 2"));
    }
    if n == 0 || n > m {
        return Err(invalid(format!("need 1 <= n <= m, got n = {n}, m = {m}")));
    }
    if rho > n {
        return Err(invalid(format!("need rho <= n, got rho = {rho}, n = {n}")));
    }
    let (nn, rr) = (n as usize, rho as usize);
    // best[a][b]: max gain for a columns and b radius; choice records the first part.
    let mut best = vec![vec![None::<u64>; rr + 1]; nn + 1];
    let mut choice = vec![vec![(0usize, 0usize); rr + 1]; nn + 1];
    best[0][0] = Some(0);
    for a in 1..=nn {
        for b in 0..=rr.min(a) {
            for ni in 1..=a {
                for ri in 0..=ni.min(b) {
                    if (ni + ri) as u64 > m {
                        continue;
                    }
                    let Some(rest) = best[a - ni][b - ri] else { continue };
                    let gain = rest + (ri * (ni - ri)) as u64;
                    if best[a][b].is_none_or(|g| gain > g) {
                        best[a][b] = Some(gain);
                        choice[a][b] = (ni, ri);
                    }
                }
            }
        }
    }
    let Some(gain) = best[nn][rr] else {
        return Err(Error::Infeasible(format!("no composition of (n={n}, rho={rho}) has n_i + rho_i <= m = {m}")));
    };
    let mut parts = Vec::new();
    let (mut a, mut b) = (nn, rr);
    while a > 0 {
        let (ni, ri) = choice[a][b];
        parts.push((ni as u64, ri as u64));
        a -= ni;
        b -= ri;
    }
    Ok(GyComposition { exponent: m * (n - rho) - gain, parts })
}

/// `(n - rho)(n - rho + 1) - rho`, the closed-form square-matrix exponent.
pub(crate) fn closed_form_exponent(n: u64, rho: u64) -> i128 {
    let a = (n - rho) as i128;
    a * (a + 1) - rho as i128
}

/// Rank bounds for an `n x m` space, radius `rho = d`.
pub fn bound_rank(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    let SpaceSpec::Rank { q, m, n } = query.space else {
        return Err(invalid("rank bounds need a rank space"));
    };
    let (rho, l) = (query.d, query.l);
    let mut out = Vec::new();

    let gy = gy_exponent(q, m, n, rho);
    let gy_result = match &gy {
        Ok(c) => BoundResult::cover("rank_composition", l, q, c.exponent, C_GY)
            .with_note(format!("composition {:?}", c.parts)),
        Err(e) => BoundResult::inapplicable("rank_composition", BoundKind::SizeUpper, C_GY, e.to_string()),
    };

    let closed = if m != n {
        BoundResult::inapplicable("rank_closed_form", BoundKind::SizeUpper, C_CLOSED, "needs m = n")
    } else if rho == 0 || rho >= n {
        BoundResult::inapplicable("rank_closed_form", BoundKind::SizeUpper, C_CLOSED, "needs 0 < rho < n")
    } else if closed_form_exponent(n, rho) < 0 {
        BoundResult::inapplicable(
            "rank_closed_form",
            BoundKind::SizeUpper,
            C_CLOSED,
            "closed-form exponent is negative",
        )
    } else {
        let e = closed_form_exponent(n, rho);
        let mut r = BoundResult::cover("rank_closed_form", l, q, e as u64, C_CLOSED);
        if let Ok(c) = &gy {
            let agree = c.exponent as i128 == e;
            r.consistent = Some(agree);
            if !agree {
                r = r.with_note(format!(
                    "closed-form exponent {e} differs from the composition optimum {} (q^{e} vs q^{})",
                    c.exponent, c.exponent
                ));
            }
        }
        r
    };
    out.push(gy_result);
    out.push(closed);

    let tables = query.tables();
    out.push(match tables.rank_lookup(q, m, n, rho) {
        Some((r, e)) => BoundResult::cover_exact("rank_table", l, e.k_upper.clone(), C_TABLE)
            .with_note(format!("K_R({q}^{m},{n},{r}) <= {} ({})", e.k_upper, e.source)),
        None => BoundResult::inapplicable("rank_table", BoundKind::SizeUpper, C_TABLE, "no table entry"),
    });

    // List size for |C| >= q^(nk) with k counted over F_{q^n} (square case).
    if let Some(k) = query.aux.code_dimension {
        out.push(if m == n && rho > 0 && rho < n {
            let e = (n * k) as i128 - closed_form_exponent(n, rho);
            if e > 0 {
                BoundResult::applies(
                    "rank_list_closed_form",
                    BoundKind::ListLower,
                    BoundValue::Log(LogSize::new(q, e as f64)),
                    C_LIST,
                )
                .with_note(format!("c = {:.6}", e as f64 / n as f64))
            } else {
                BoundResult::inapplicable("rank_list_closed_form", BoundKind::ListLower, C_LIST, "c is not positive")
            }
        } else {
            BoundResult::inapplicable(
                "rank_list_closed_form",
                BoundKind::ListLower,
                C_LIST,
                "needs m = n and 0 < rho < n",
            )
        });
        if let Ok(c) = &gy {
            let e = (n * k) as i128 - c.exponent as i128;
            out.push(if e > 0 {
                BoundResult::applies(
                    "rank_list_composition",
                    BoundKind::ListLower,
                    BoundValue::Log(LogSize::new(q, e as f64)),
                    C_LIST,
                )
            } else {
                BoundResult::inapplicable(
                    "rank_list_composition",
                    BoundKind::ListLower,
                    C_LIST,
                    "exponent is not positive",
                )
            });
        }
    }

    let b = n as f64 / m as f64;
    let r = rho as f64 / n as f64;
    out.push(
        BoundResult::applies("rank_rate", BoundKind::RateUpper, BoundValue::Real((1.0 - r) * (1.0 - b * r)), C_RATE)
            .asymptotic()
            .with_note(format!("r = {r:.6}, b = {b:.6}")),
    );

    if let Some(x) = list_from_cover(query, &out) {
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{best_size_upper, evaluate};
    use num_bigint::BigUint;

    /// Exhaustive search over ordered compositions, as an oracle.
    fn exhaustive(m: u64, n: u64, rho: u64) -> Option<u64> {
        fn go(m: u64, n: u64, rho: u64) -> Option<u64> {
            if n == 0 {
                return (rho == 0).then_some(0);
            }
            let mut best = None;
            for ni in 1..=n {
                for ri in 0..=ni.min(rho) {
                    if ni + ri > m {
                        continue;
                    }
                    if let Some(g) = go(m, n - ni, rho - ri) {
                        let g = g + ri * (ni - ri);
                        best = Some(best.map_or(g, |b: u64| b.max(g)));
                    }
                }
            }
            best
        }
        go(m, n, rho).map(|g| m * (n - rho) - g)
    }

    #[test]
    fn table_value_reproduced() {
        let c = gy_exponent(2, 6, 4, 2).unwrap();
        assert_eq!(c.exponent, 8);
        let sum_n: u64 = c.parts.iter().map(|p| p.0).sum();
        let sum_r: u64 = c.parts.iter().map(|p| p.1).sum();
        assert_eq!((sum_n, sum_r), (4, 2));
        let gain: u64 = c.parts.iter().map(|&(a, b)| b * (a - b)).sum();
        assert_eq!(6 * 2 - gain, 8);
    }

    #[test]
    fn dp_matches_exhaustive() {
        for m in 1..=6 {
            for n in 1..=m {
                for rho in 0..=n {
                    let dp = gy_exponent(2, m, n, rho).ok().map(|c| c.exponent);
                    assert_eq!(dp, exhaustive(m, n, rho), "m={m} n={n} rho={rho}");
                }
            }
        }
    }

    #[test]
    fn full_radius_and_infeasible() {
        assert_eq!(gy_exponent(2, 4, 2, 2).unwrap().exponent, 0);
        assert!(matches!(gy_exponent(2, 1, 1, 1), Err(Error::Infeasible(_))));
        assert!(gy_exponent(2, 3, 4, 1).is_err());
    }

    #[test]
    fn closed_form_disagreement_flagged() {
        let res = evaluate(&BoundQuery::new(SpaceSpec::Rank { q: 2, m: 4, n: 4 }, 2, 1)).unwrap();
        let closed = res.iter().find(|r| r.name == "rank_closed_form").unwrap();
        let comp = res.iter().find(|r| r.name == "rank_composition").unwrap();
        assert_eq!(closed.value, Some(BoundValue::Exact(BigUint::from(16u32))));
        assert_eq!(comp.value, Some(BoundValue::Exact(BigUint::from(64u32))));
        assert_eq!(closed.consistent, Some(false));
    }

    #[test]
    fn table_query() {
        let res = evaluate(&BoundQuery::new(SpaceSpec::Rank { q: 2, m: 6, n: 4 }, 2, 1)).unwrap();
        assert_eq!(best_size_upper(&res).unwrap().value, Some(BoundValue::Exact(BigUint::from(256u32))));
    }

    #[test]
    fn zero_radius_is_whole_space() {
        let res = evaluate(&BoundQuery::new(SpaceSpec::Rank { q: 2, m: 3, n: 2 }, 0, 3)).unwrap();
        let comp = res.iter().find(|r| r.name == "rank_composition").unwrap();
        assert_eq!(comp.value, Some(BoundValue::Exact(BigUint::from(3u32 * 64))));
    }

    #[test]
    fn asymptotic_rate() {
        let res = evaluate(&BoundQuery::new(SpaceSpec::Rank { q: 2, m: 4, n: 4 }, 1, 1)).unwrap();
        let r = res.iter().find(|r| r.name == "rank_rate").unwrap();
        assert_eq!(r.value, Some(BoundValue::Real(0.75 * 0.75)));
    }
}
