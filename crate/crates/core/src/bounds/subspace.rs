//! Bounds for subspace codes.

use num_traits::ToPrimitive;

use super::rank::closed_form_exponent;
use super::{gy_exponent, list_from_cover, BoundKind, BoundQuery, BoundResult, BoundValue};
use crate::error::{invalid, Result};
use crate::exact::{binomial, pow, LogSize};
use crate::space::{SpaceSpec, SubspaceMetric};

const C_LIFT: &str = "covering Grass(k, n) by lifted rank-metric covering codes, one per pivot set";
const C_RATE_S: &str = "asymptotic subspace-metric covering density 1 - 2r";
const C_RATE_I: &str = "asymptotic injection-metric covering density (1 - 2r)^2";
const C_LIST: &str = "list size of a large constant-dimension code in Grass(n, 2n)";

/// Subspace and constant-dimension bounds.
///
/// Radii are in the query's metric; for `d_S` the rank radius of the lifted
/// cover is `floor(d / 2)`, since `d_S = 2 d_I` between equal dimensions.
pub fn bound_subspace(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    let (l, d) = (query.l, query.d);
    let mut out = Vec::new();
    match query.space {
        SpaceSpec::ConstDimSubspace { q, n, k, metric } => {
            let rho = match metric {
                SubspaceMetric::I => d,
                SubspaceMetric::S => d / 2,
            };
            let (big, small) = (k.max(n - k), k.min(n - k));
            let pivots = binomial(n, k);
            let cover = if rho >= small { Ok(0) } else { gy_exponent(q, big, small, rho).map(|c| c.exponent) };
            out.push(match cover {
                Ok(e) => BoundResult::cover_exact("lifted_rank_cover", l, &pivots * pow(q, e), C_LIFT)
                    .with_note(format!("C({n},{k}) pivot sets x q^{e}, rank radius {rho}")),
                Err(err) => {
                    BoundResult::inapplicable("lifted_rank_cover", BoundKind::SizeUpper, C_LIFT, err.to_string())
                }
            });

            // Grass(n, 2n): |C| >= q^(n kk) forces L >= |C| / (C(2n,n) q^closed).
            if let Some(kk) = query.aux.code_dimension {
                out.push(if n == 2 * k && rho > 0 && rho < k {
                    let e = (k * kk) as f64 - closed_form_exponent(k, rho) as f64;
                    let exponent = e - binomial(n, k).to_f64().unwrap().log(q as f64);
                    if exponent > 0.0 {
                        BoundResult::applies(
                            "lifted_list",
                            BoundKind::ListLower,
                            BoundValue::Log(LogSize::new(q, exponent)),
                            C_LIST,
                        )
                        .with_note("uses the closed-form square rank exponent")
                    } else {
                        BoundResult::inapplicable(
                            "lifted_list",
                            BoundKind::ListLower,
                            C_LIST,
                            "exponent is not positive",
                        )
                    }
                } else {
                    BoundResult::inapplicable(
                        "lifted_list",
                        BoundKind::ListLower,
                        C_LIST,
                        "needs Grass(k, 2k) and 0 < rho < k",
                    )
                });
            }
            out.extend(rates(n, d, metric));
        }
        SpaceSpec::Subspace { n, metric, .. } => {
            out.push(BoundResult::inapplicable(
                "lifted_rank_cover",
                BoundKind::SizeUpper,
                C_LIFT,
                "mixed-dimension spaces only have asymptotic bounds",
            ));
            out.extend(rates(n, d, metric));
        }
        _ => return Err(invalid("subspace bounds need a subspace space")),
    }
    if let Some(x) = list_from_cover(query, &out) {
        out.push(x);
    }
    Ok(out)
}

fn rates(n: u64, d: u64, metric: SubspaceMetric) -> Vec<BoundResult> {
    let r = d as f64 / n as f64;
    let (name, cite, v) = match metric {
        SubspaceMetric::S => ("subspace_rate", C_RATE_S, 1.0 - 2.0 * r),
        SubspaceMetric::I => ("injection_rate", C_RATE_I, (1.0 - 2.0 * r).powi(2)),
    };
    if r > 0.5 {
        return vec![BoundResult::inapplicable(name, BoundKind::RateUpper, cite, "needs r = d/n <= 1/2")];
    }
    vec![BoundResult::applies(name, BoundKind::RateUpper, BoundValue::Real(v), cite)
        .asymptotic()
        .with_note(format!("r = {r:.6}"))]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::evaluate;
    use num_bigint::BigUint;

    #[test]
    fn lifted_cover_chain() {
        let s = SpaceSpec::ConstDimSubspace { q: 2, n: 8, k: 4, metric: SubspaceMetric::I };
        let res = evaluate(&BoundQuery::new(s, 2, 1)).unwrap();
        let r = res.iter().find(|r| r.name == "lifted_rank_cover").unwrap();
        // C(8,4) = 70, gy_exponent(2,4,4,2) = 6.
        assert_eq!(r.value, Some(BoundValue::Exact(BigUint::from(70u32 * 64))));
    }

    #[test]
    fn subspace_metric_halves_radius() {
        let s = SpaceSpec::ConstDimSubspace { q: 2, n: 8, k: 4, metric: SubspaceMetric::S };
        let res = evaluate(&BoundQuery::new(s, 4, 1)).unwrap();
        let r = res.iter().find(|r| r.name == "lifted_rank_cover").unwrap();
        assert_eq!(r.value, Some(BoundValue::Exact(BigUint::from(70u32 * 64))));
    }

    #[test]
    fn asymptotic_rates() {
        assert_eq!(rates(4, 1, SubspaceMetric::S)[0].value, Some(BoundValue::Real(0.5)));
        assert_eq!(rates(4, 1, SubspaceMetric::I)[0].value, Some(BoundValue::Real(0.25)));
        assert_eq!(rates(10, 1, SubspaceMetric::S)[0].value, Some(BoundValue::Real(0.8)));
    }

    #[test]
    fn mixed_dimension_has_no_finite_bound() {
        let s = SpaceSpec::Subspace { q: 2, n: 4, dims: vec![1, 2, 3], metric: SubspaceMetric::S };
        let res = evaluate(&BoundQuery::new(s, 1, 1)).unwrap();
        assert!(!res.iter().find(|r| r.name == "lifted_rank_cover").unwrap().applicable);
    }
}
