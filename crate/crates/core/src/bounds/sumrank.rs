//! Sum-rank covering bounds and the sum-rank entropy function.

use super::rank::closed_form_exponent;
use super::{gy_exponent, l_times_pow, list_from_cover, BoundKind, BoundQuery, BoundResult, BoundValue};
use crate::error::{invalid, Result};
use crate::exact::{log2_big, rank_count, LogSize};
use crate::space::SpaceSpec;

const C_CLOSED: &str = "t-block sum-rank covering closed form q^(t((n-rho)(n-rho+1)-rho))";
const C_COMP: &str = "t-block sum-rank covering by per-block rank compositions";
const C_BLOCKS: &str = "sum-rank covering as a product of per-block rank coverings";
const C_SINGLETON: &str = "sum-rank Singleton bound q^(m(N-d+1)) at minimum distance 2d+1";
const C_RATE: &str = "asymptotic sum-rank covering density 1 - H_sr(rho)";
const C_LIST: &str = "list size of a t-block sum-rank code of size q^(nkt)";

/// `(1/mn) min_{z in (0,1]} log_q(f(z) / z^rho)` with
/// `f(z) = sum_i [n choose i]_q prod_{j<i} (q^m - q^j) z^i`, the number of
/// `n x m` matrices of rank `i` weighting `z^i`.
///
/// Minimized over `u = ln z`, where the objective is convex: a 1024-point
/// grid on `[u_lo, 0]` followed by golden-section refinement.
pub fn sumrank_entropy(q: u64, n: u64, m: u64, rho: f64) -> Result<f64> {
    if q < 2 || n == 0 || n > m {
        return Err(invalid(format!("need q >= 2 and 1 <= n <= m, got q={q} n={n} m={m}")));
    }
    if !(rho > 0.0 && rho < n as f64) {
        return Err(invalid(format!("need 0 < rho < n, got rho = {rho}")));
    }
    let ln_a: Vec<f64> = (0..=n).map(|i| log2_big(&rank_count(q, n, m, i)) * std::f64::consts::LN_2).collect();
    let g = |u: f64| {
        let terms: Vec<f64> = ln_a.iter().enumerate().map(|(i, a)| a + i as f64 * u).collect();
        let top = terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        top + terms.iter().map(|t| (t - top).exp()).sum::<f64>().ln() - rho * u
    };
    // The optimum sits near z = a_{rho-1} / a_rho >= q^-(m+n); start well below.
    let u_lo = -4.0 * ((m + n + 2) as f64) * (q as f64).ln() - 10.0;
    const GRID: usize = 1024;
    let step = -u_lo / (GRID - 1) as f64;
    let (mut best_i, mut best) = (0, f64::INFINITY);
    for i in 0..GRID {
        let v = g(u_lo + i as f64 * step);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    let mut a = u_lo + best_i.saturating_sub(1) as f64 * step;
    let mut b = (u_lo + (best_i + 1) as f64 * step).min(0.0);
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut c, mut d) = (b - phi * (b - a), a + phi * (b - a));
    let (mut gc, mut gd) = (g(c), g(d));
    while (b - a).abs() > 1e-12 {
        if gc < gd {
            b = d;
            d = c;
            gd = gc;
            c = b - phi * (b - a);
            gc = g(c);
        } else {
            a = c;
            c = d;
            gc = gd;
            d = a + phi * (b - a);
            gd = g(d);
        }
    }
    let min = best.min(g(0.5 * (a + b))).min(g(0.0));
    Ok(min / (q as f64).ln() / (m * n) as f64)
}

/// Minimizes `sum_i gy(q, m_i, n_i, rho_i)` over `sum rho_i <= d`.
fn block_product_exponent(q: u64, blocks: &[(u64, u64)], d: u64) -> Option<(u64, Vec<u64>)> {
    let d = d as usize;
    // best[b]: least exponent using radius budget exactly <= b over the blocks so far.
    let mut best: Vec<Option<(u64, Vec<u64>)>> = vec![Some((0, Vec::new())); d + 1];
    for &(n, m) in blocks {
        let costs: Vec<Option<u64>> =
            (0..=(n as usize).min(d)).map(|r| gy_exponent(q, m, n, r as u64).ok().map(|c| c.exponent)).collect();
        let mut next: Vec<Option<(u64, Vec<u64>)>> = vec![None; d + 1];
        for b in 0..=d {
            for (r, cost) in costs.iter().enumerate() {
                let (Some(cost), true) = (cost, r <= b) else { continue };
                let Some((e, radii)) = &best[b - r] else { continue };
                let cand = e + cost;
                if next[b].as_ref().is_none_or(|(x, _)| cand < *x) {
                    let mut radii = radii.clone();
                    radii.push(r as u64);
                    next[b] = Some((cand, radii));
                }
            }
        }
        best = next;
    }
    best[d].take()
}

/// Sum-rank bounds; the per-block radius is `rho = floor(d / t)` for the
/// equal-block forms.
pub fn bound_sumrank(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    let SpaceSpec::SumRank { q, blocks } = &query.space else {
        return Err(invalid("sum-rank bounds need a sum-rank space"));
    };
    let (q, l, d) = (*q, query.l, query.d);
    let t = blocks.len() as u64;
    let equal = blocks.iter().all(|b| *b == blocks[0]);
    let (n, m) = blocks[0];
    let rho = d / t;
    let mut out = Vec::new();

    let gy = if equal { gy_exponent(q, m, n, rho).ok() } else { None };
    out.push(match &gy {
        Some(c) => BoundResult::cover("sumrank_composition", l, q, t * c.exponent, C_COMP)
            .with_note(format!("per-block rho = {rho}, composition {:?}", c.parts)),
        None => BoundResult::inapplicable(
            "sumrank_composition",
            BoundKind::SizeUpper,
            C_COMP,
            "needs equal feasible blocks",
        ),
    });

    out.push(if !equal || m != n {
        BoundResult::inapplicable("sumrank_closed_form", BoundKind::SizeUpper, C_CLOSED, "needs equal square blocks")
    } else if rho == 0 || rho >= n {
        BoundResult::inapplicable("sumrank_closed_form", BoundKind::SizeUpper, C_CLOSED, "needs 0 < floor(d/t) < n")
    } else if closed_form_exponent(n, rho) < 0 {
        BoundResult::inapplicable(
            "sumrank_closed_form",
            BoundKind::SizeUpper,
            C_CLOSED,
            "closed-form exponent is negative",
        )
    } else {
        let e = closed_form_exponent(n, rho) as u64;
        let mut r = BoundResult::cover("sumrank_closed_form", l, q, t * e, C_CLOSED);
        if let Some(c) = &gy {
            r.consistent = Some(c.exponent == e);
            if c.exponent != e {
                r = r.with_note(format!(
                    "per-block closed-form exponent {e} differs from the composition optimum {}",
                    c.exponent
                ));
            }
        }
        r
    });

    out.push(match block_product_exponent(q, blocks, d) {
        Some((e, radii)) => {
            BoundResult::cover("sumrank_blocks", l, q, e, C_BLOCKS).with_note(format!("block radii {radii:?}"))
        }
        None => BoundResult::inapplicable("sumrank_blocks", BoundKind::SizeUpper, C_BLOCKS, "no feasible radius split"),
    });

    let big_n: u64 = blocks.iter().map(|b| b.0).sum();
    out.push(if l != 1 {
        BoundResult::inapplicable("sumrank_singleton", BoundKind::SizeUpper, C_SINGLETON, "needs L = 1")
    } else if !blocks.iter().all(|b| b.1 == m) {
        BoundResult::inapplicable("sumrank_singleton", BoundKind::SizeUpper, C_SINGLETON, "needs equal m_i")
    } else {
        BoundResult::applies(
            "sumrank_singleton",
            BoundKind::SizeUpper,
            l_times_pow(1, q, m * big_n.saturating_sub(2 * d)),
            C_SINGLETON,
        )
    });

    let rho_real = d as f64 / t as f64;
    out.push(if !equal {
        BoundResult::inapplicable("sumrank_rate", BoundKind::RateUpper, C_RATE, "needs equal blocks")
    } else {
        match sumrank_entropy(q, n, m, rho_real) {
            Ok(h) => BoundResult::applies("sumrank_rate", BoundKind::RateUpper, BoundValue::Real(1.0 - h), C_RATE)
                .asymptotic()
                .with_note(format!("H_sr({rho_real:.6}) = {h:.9}")),
            Err(e) => BoundResult::inapplicable("sumrank_rate", BoundKind::RateUpper, C_RATE, e.to_string()),
        }
    });

    if let Some(k) = query.aux.code_dimension {
        let size_exp = (n * k * t) as i128;
        let list = |name: &str, e: i128| {
            if e > 0 {
                BoundResult::applies(name, BoundKind::ListLower, BoundValue::Log(LogSize::new(q, e as f64)), C_LIST)
            } else {
                BoundResult::inapplicable(name, BoundKind::ListLower, C_LIST, "exponent is not positive")
            }
        };
        if equal && m == n && rho > 0 && rho < n {
            out.push(list("sumrank_list_closed_form", size_exp - t as i128 * closed_form_exponent(n, rho)));
        } else {
            out.push(BoundResult::inapplicable(
                "sumrank_list_closed_form",
                BoundKind::ListLower,
                C_LIST,
                "needs equal square blocks and 0 < floor(d/t) < n",
            ));
        }
        if let Some(c) = &gy {
            out.push(list("sumrank_list_composition", size_exp - (t * c.exponent) as i128));
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
    use crate::bounds::evaluate;
    use crate::exact::{gamma_q, log_q};
    use crate::space::sum_rank_weight_distribution;
    use num_bigint::BigUint;

    fn find(res: &[BoundResult], name: &str) -> BoundResult {
        res.iter().find(|r| r.name == name).unwrap().clone()
    }

    #[test]
    fn closed_form_three_blocks() {
        let s = SpaceSpec::SumRank { q: 2, blocks: vec![(2, 2); 3] };
        let res = evaluate(&BoundQuery::new(s, 3, 1)).unwrap();
        assert_eq!(find(&res, "sumrank_closed_form").value, Some(BoundValue::Exact(BigUint::from(8u32))));
    }

    #[test]
    fn singleton_form() {
        let s = SpaceSpec::SumRank { q: 2, blocks: vec![(2, 3); 2] };
        let res = evaluate(&BoundQuery::new(s, 1, 1)).unwrap();
        assert_eq!(find(&res, "sumrank_singleton").value, Some(BoundValue::Exact(BigUint::from(64u32))));
    }

    #[test]
    fn block_product_spends_radius_where_it_pays() {
        // One 1x4 block and one 2x2 block: rho=1 in the 1x4 block removes 4 of 4 bits.
        let (e, radii) = block_product_exponent(2, &[(1, 4), (2, 2)], 1).unwrap();
        assert_eq!(e, 4);
        assert_eq!(radii, vec![1, 0]);
        let res = evaluate(&BoundQuery::new(SpaceSpec::SumRank { q: 2, blocks: vec![(1, 4), (2, 2)] }, 1, 1)).unwrap();
        assert!(!find(&res, "sumrank_closed_form").applicable);
        assert_eq!(find(&res, "sumrank_blocks").value, Some(BoundValue::Exact(BigUint::from(16u32))));
    }

    #[test]
    fn entropy_lower_bound_with_gamma() {
        let (q, m, n, rho) = (2u64, 4u64, 4u64, 2u64);
        let h = sumrank_entropy(q, n, m, rho as f64).unwrap();
        let lower = (((m + n - rho) * rho) as f64 - 0.25 - log_q(q, gamma_q(q))) / (m * n) as f64;
        assert!(h >= lower - 1e-9, "{h} < {lower}");
        assert!(h <= 1.0);
    }

    #[test]
    fn entropy_bounds_exact_volumes() {
        // vol(B_{rho t}) <= f(z)^t / z^(rho t) for every z, so the entropy
        // dominates the normalized log-volume, and approaches it as t grows.
        let (q, n, m, rho) = (2u64, 2u64, 2u64, 1u64);
        let h = sumrank_entropy(q, n, m, rho as f64).unwrap();
        let mut gaps = Vec::new();
        for t in [2usize, 4, 8] {
            let dist = sum_rank_weight_distribution(q, &vec![(n, m); t]);
            let vol: BigUint = dist.iter().take(rho as usize * t + 1).sum();
            let normalized = log2_big(&vol) / (q as f64).log2() / (t as u64 * m * n) as f64;
            assert!(normalized <= h + 1e-9, "t={t}: {normalized} > {h}");
            gaps.push(h - normalized);
        }
        assert!(gaps[2] < gaps[0]);
        assert!(gaps[2] < 0.1);
    }

    #[test]
    fn entropy_domain() {
        assert!(sumrank_entropy(2, 3, 3, 0.0).is_err());
        assert!(sumrank_entropy(2, 3, 3, 3.0).is_err());
        assert!(sumrank_entropy(2, 4, 3, 1.0).is_err());
    }
}
