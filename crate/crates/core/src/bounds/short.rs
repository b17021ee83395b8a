//! Bounds in the cover, symbol-pair and insertion/deletion metrics.

use super::{ceil_f64, list_from_cover, BoundKind, BoundQuery, BoundResult, BoundValue};
use crate::error::{invalid, Result};
use crate::exact::LogSize;
use crate::space::SpaceSpec;

const C_COVER: &str = "cover-metric covering by matrices vanishing on d fixed rows";
const C_PAIR: &str = "symbol-pair covering by vectors fixed outside a run of d - 2 positions";
const C_INSDEL: &str = "binary insdel covering by alternating and constant strings";
const C_DELETION: &str = "single-deletion covering codes of size W v^n log n / n";

/// Cover-metric, pair-metric and insdel bounds.
pub fn bound_short_metrics(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    let (l, d) = (query.l, query.d);
    let mut out = Vec::new();
    match query.space {
        // Matrices zero on the first d rows cover every matrix at cover distance <= d.
        SpaceSpec::CoverMetric { q, m, n } => {
            out.push(
                BoundResult::cover("cover_metric", l, q, m * (n - d), C_COVER)
                    .with_note("L q^(m(n-d)); the form L q^(n-d) is not a valid cover"),
            );
        }
        SpaceSpec::PairMetric { q, n } => {
            let e = n.min((n + 2).saturating_sub(d));
            out.push(BoundResult::cover("pair_metric", l, q, e, C_PAIR));
        }
        SpaceSpec::Insdel { v, n } => {
            let (d1, d2) = (d, query.d2.unwrap_or(d));
            out.push(if v != 2 {
                BoundResult::inapplicable("insdel_binary", BoundKind::SizeUpper, C_INSDEL, "needs v = 2")
            } else {
                let e = n.saturating_sub(2 * d2).min(n.saturating_sub(d1));
                BoundResult::cover("insdel_binary", l, v, e, C_INSDEL).with_note(format!("d1 = {d1}, d2 = {d2}"))
            });
            out.push(single_deletion(query, v, n, d1));
        }
        _ => return Err(invalid("short-metric bounds need a cover, pair or insdel space")),
    }
    if let Some(x) = list_from_cover(query, &out) {
        out.push(x);
    }
    Ok(out)
}

/// `L W v^n log2(n) / n`, returned parametrically in `W`.
fn single_deletion(query: &BoundQuery, v: u64, n: u64, d1: u64) -> BoundResult {
    let name = "single_deletion";
    if d1 < 1 {
        return BoundResult::inapplicable(name, BoundKind::SizeUpper, C_DELETION, "needs deletion radius d1 >= 1");
    }
    let ratio = n as f64 / (n as f64).log2();
    if n < 2 || ratio < 48.0 * v as f64 {
        return BoundResult::inapplicable(
            name,
            BoundKind::SizeUpper,
            C_DELETION,
            format!("needs n / log2 n >= 48 v = {}", 48 * v),
        );
    }
    let w = query.aux.w.unwrap_or(1.0);
    let log2 = n as f64 * (v as f64).log2() + (query.l as f64 * w * (n as f64).log2() / n as f64).log2();
    let value = if log2 < 1000.0 {
        let raw = 2f64.powf(log2);
        BoundResult::applies(name, BoundKind::SizeUpper, BoundValue::Exact(ceil_f64(raw)), C_DELETION).with_raw(raw)
    } else {
        BoundResult::applies(
            name,
            BoundKind::SizeUpper,
            BoundValue::Log(LogSize::new(v, log2 / (v as f64).log2())),
            C_DELETION,
        )
    };
    let mut r = value.with_note(format!("W = {w} (unspecified constant)"));
    r.parametric = true;
    r
}
