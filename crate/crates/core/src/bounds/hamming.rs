//! Bounds in `F_q^n` with the Hamming metric.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{
    gap_bound, l_times_pow, list_from_cover, to_u32, BoundKind, BoundQuery, BoundResult, BoundValue, EXACT_BITS,
};
use crate::error::{invalid, Result};
use crate::exact::{binomial, pow, prime_power};
use crate::krawtchouk::{krawtchouk_smallest_root, KrawtchoukParams};
use crate::space::SpaceSpec;

/// Longest length for which Krawtchouk roots are scanned.
const ROOT_SCAN_MAX_N: u64 = 4096;

const C_REDUNDANCY: &str = "covering by a linear code of redundancy d (radius <= d)";
const C_SINGLETON: &str = "generalized Singleton bound for list decoding";
const C_SPHERE: &str = "sphere-packing bound for list decoding: |C| V(d) <= L q^n";
const C_TABLE: &str = "covering bound |C| <= L K_q(n, d) with a tabulated K";
const C_PERFECT: &str = "covering by a perfect code";
const C_RM1: &str = "covering radius of the first-order Reed-Muller code";
const C_RM_HALF: &str = "covering radius of the Reed-Muller code of order m/2";
const C_GRIESMER: &str = "covering radius d - ceil(d/q^k) of a length-optimal code";
const C_LONG: &str = "covering radius R of long codes of codimension tR";
const C_DELSARTE: &str = "Delsarte bound: covering radius <= number of nonzero dual weights";
const C_TIETAVAINEN: &str = "Tietavainen bound: covering radius <= smallest Krawtchouk root";
const C_LINEAR: &str = "covering by the supplied linear code";
const C_GV: &str = "Tietavainen bound with a Gilbert-Varshamov dual code";
const C_ROOT_EST: &str = "binary Krawtchouk root estimate n/2 - sqrt((n-u+2)(u-2))";
const C_AVERAGE: &str = "generalized Singleton bound for average-radius list decoding";
const C_BEYOND: &str = "list size beyond the Johnson radius";

fn hamming_params(query: &BoundQuery) -> Result<(u64, u64)> {
    match query.space {
        SpaceSpec::Hamming { q, n } => Ok((q, n)),
        _ => Err(invalid("Hamming bounds need a Hamming space")),
    }
}

fn volume(q: u64, n: u64, r: u64) -> BigUint {
    let qm1 = BigUint::from(q - 1);
    let mut acc = BigUint::zero();
    let mut p = BigUint::one();
    for j in 0..=r.min(n) {
        acc += binomial(n, j) * &p;
        p *= &qm1;
    }
    acc
}

fn too_large(q: u64, n: u64) -> bool {
    n as f64 * (q as f64).log2() > EXACT_BITS
}

/// Smallest `e` with `q^e >= x`.
fn ceil_log(q: u64, x: u64) -> u64 {
    let mut e = 0;
    let mut p: u128 = 1;
    while p < x as u128 {
        p *= q as u128;
        e += 1;
    }
    e
}

/// All Hamming-space bounds for the query.
pub fn bound_hamming(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    let (q, n) = hamming_params(query)?;
    let (d, l) = (query.d, query.l);
    let field = prime_power(q).is_some();
    let mut out = Vec::new();

    out.push(BoundResult::cover("redundancy", l, q, n.saturating_sub(d), C_REDUNDANCY));

    let drop = ((l as u128 + 1) * d as u128 / l as u128) as u64;
    let singleton = l_times_pow(l, q, n.saturating_sub(drop));
    out.push(BoundResult::applies("generalized_singleton", BoundKind::SizeUpper, singleton, C_SINGLETON));

    out.push(if too_large(q, n) {
        BoundResult::inapplicable(
            "sphere_packing",
            BoundKind::SizeUpper,
            C_SPHERE,
            "space too large for exact evaluation",
        )
    } else {
        let v = pow(q, n) * l / volume(q, n, d);
        BoundResult::applies("sphere_packing", BoundKind::SizeUpper, BoundValue::Exact(v), C_SPHERE)
            .reference()
            .with_note("reference bound; covering bounds are compared against it")
    });

    let tables = query.tables();
    out.push(match tables.hamming_lookup(q, n, d) {
        Some((r, e)) => BoundResult::cover_exact("covering_table", l, e.k_upper.clone(), C_TABLE)
            .with_note(format!("K_{q}({n},{r}) <= {} ({})", e.k_upper, e.source)),
        None => BoundResult::cover("covering_table", l, q, n.saturating_sub(d), C_TABLE)
            .with_note(format!("no table entry; fallback K_{q}({n},{d}) <= q^(n-d)")),
    });

    out.extend(perfect(q, n, d, l, field));
    out.extend(reed_muller(q, n, d, l, field));
    out.push(griesmer(query, q, n, d, l));
    out.push(long_codes(q, n, d, l));
    out.extend(from_linear_code(query, q, n, d, l)?);
    out.push(tietavainen_gv(q, n, d, l));
    out.push(root_estimate(q, n, d, l));
    if query.aux.average_radius {
        out.push(average_radius_bound(query)?);
    }
    if let Some(r) = beyond_johnson(query, q, n) {
        out.push(r);
    }
    if let Some(r) = list_from_cover(query, &out) {
        out.push(r);
    }
    if let Some(r) = gap_bound(query, &out) {
        out.push(r);
    }
    Ok(out)
}

fn perfect(q: u64, n: u64, d: u64, l: u64, field: bool) -> Vec<BoundResult> {
    let mut out = Vec::new();
    let m = (2..64).find(|&m| {
        let qm = (q as u128).checked_pow(m);
        qm.is_some_and(|qm| (qm - 1) / (q as u128 - 1) == n as u128)
    });
    out.push(match m {
        Some(m) if field && d >= 1 => BoundResult::cover("perfect_hamming", l, q, n - m as u64, C_PERFECT)
            .with_note(format!("[{n},{},3]_{q} Hamming code, radius 1", n - m as u64)),
        Some(_) if field => {
            BoundResult::inapplicable("perfect_hamming", BoundKind::SizeUpper, C_PERFECT, "needs d >= 1")
        }
        _ => BoundResult::inapplicable(
            "perfect_hamming",
            BoundKind::SizeUpper,
            C_PERFECT,
            "needs n = (q^m - 1)/(q - 1) with m >= 2 over a field",
        ),
    });
    let golay = |name: &str, gq: u64, gn: u64, gr: u64, gk: u64| {
        if q != gq || n != gn {
            BoundResult::inapplicable(name, BoundKind::SizeUpper, C_PERFECT, format!("needs q = {gq}, n = {gn}"))
        } else if d < gr {
            BoundResult::inapplicable(name, BoundKind::SizeUpper, C_PERFECT, format!("needs d >= {gr}"))
        } else {
            BoundResult::cover(name, l, q, gk, C_PERFECT).with_note(format!("[{gn},{gk}]_{gq} Golay code, radius {gr}"))
        }
    };
    out.push(golay("perfect_golay23", 2, 23, 3, 12));
    out.push(golay("perfect_golay11", 3, 11, 2, 6));
    out
}

/// `m` with `q^m = n`, if any.
fn log_exact(q: u64, n: u64) -> Option<u64> {
    let mut p: u128 = 1;
    for m in 0..128 {
        if p == n as u128 {
            return Some(m);
        }
        p *= q as u128;
        if p > n as u128 {
            return None;
        }
    }
    None
}

fn reed_muller(q: u64, n: u64, d: u64, l: u64, field: bool) -> Vec<BoundResult> {
    let mut out = Vec::new();
    let m = if field { log_exact(q, n) } else { None };

    // First-order binary, m even: radius 2^(m-1) - 2^((m-2)/2).
    out.push(match m {
        Some(m) if q == 2 && m >= 2 && m % 2 == 0 => {
            let radius = (1u64 << (m - 1)) - (1u64 << ((m - 2) / 2));
            if d >= radius {
                BoundResult::cover("rm1_even", l, 2, m + 1, C_RM1)
                    .with_note(format!("RM(1,{m}) has covering radius {radius}"))
            } else {
                BoundResult::inapplicable("rm1_even", BoundKind::SizeUpper, C_RM1, format!("needs d >= {radius}"))
            }
        }
        _ => BoundResult::inapplicable("rm1_even", BoundKind::SizeUpper, C_RM1, "needs q = 2, n = 2^m, m even"),
    });

    // First-order q-ary: radius <= floor((q-1) q^(m-1) - q^(m/2 - 1)).
    out.push(match m {
        Some(m) if m >= 1 => {
            let a = BigUint::from(q - 1) * pow(q, m - 1);
            let s = if m == 1 {
                BigUint::one()
            } else {
                let x = pow(q, m - 2);
                let r = x.sqrt();
                if &r * &r == x {
                    r
                } else {
                    r + 1u32
                }
            };
            let radius = if a > s { a - s } else { BigUint::zero() };
            if BigUint::from(d) >= radius {
                BoundResult::cover("rm1_q", l, q, m + 1, C_RM1)
                    .with_note(format!("first-order Reed-Muller code over F_{q}, covering radius <= {radius}"))
            } else {
                BoundResult::inapplicable("rm1_q", BoundKind::SizeUpper, C_RM1, format!("needs d >= {radius}"))
            }
        }
        _ => BoundResult::inapplicable("rm1_q", BoundKind::SizeUpper, C_RM1, "needs n = q^m over a field"),
    });

    // Order m/2 binary, m even: radius <= 2^(m-2) - 2^(m/2) + 2.
    out.push(match m {
        Some(m) if q == 2 && m >= 2 && m % 2 == 0 => {
            let radius = (1u64 << (m - 2)) + 2 - (1u64 << (m / 2));
            let k: u64 = (0..=m / 2).map(|i| binomial(m, i).to_u64().unwrap()).sum();
            if d >= radius {
                BoundResult::cover("rm_half", l, 2, k, C_RM_HALF)
                    .with_note(format!("RM({},{m}) has covering radius <= {radius}", m / 2))
            } else {
                BoundResult::inapplicable("rm_half", BoundKind::SizeUpper, C_RM_HALF, format!("needs d >= {radius}"))
            }
        }
        _ => BoundResult::inapplicable("rm_half", BoundKind::SizeUpper, C_RM_HALF, "needs q = 2, n = 2^m, m even"),
    });
    out
}

/// Griesmer sum `sum_{i<k} ceil(d / q^i)`, a lower bound on `n_q(k, d)`.
fn griesmer_sum(q: u64, k: u64, d: u64) -> u128 {
    let mut p: u128 = 1;
    let mut s: u128 = 0;
    for _ in 0..k {
        s += (d as u128).div_ceil(p);
        p = p.saturating_mul(q as u128);
    }
    s
}

fn griesmer(query: &BoundQuery, q: u64, n: u64, d: u64, l: u64) -> BoundResult {
    let Some((k, dp)) = query.aux.griesmer else {
        return BoundResult::inapplicable(
            "griesmer_cover",
            BoundKind::SizeUpper,
            C_GRIESMER,
            "needs n = n_q(k, d') supplied",
        );
    };
    if k == 0 || dp == 0 || griesmer_sum(q, k, dp) > n as u128 {
        return BoundResult::inapplicable(
            "griesmer_cover",
            BoundKind::SizeUpper,
            C_GRIESMER,
            format!("n = {n} is below the Griesmer length for k = {k}, d' = {dp}"),
        );
    }
    let qk = (q as u128).checked_pow(to_u32(k)).unwrap_or(u128::MAX);
    let radius = dp - (dp as u128).div_ceil(qk) as u64;
    if d >= radius {
        BoundResult::cover("griesmer_cover", l, q, k, C_GRIESMER)
            .with_note(format!("length-optimal [{n},{k},{dp}]_{q} code has covering radius <= {radius}"))
    } else {
        BoundResult::inapplicable("griesmer_cover", BoundKind::SizeUpper, C_GRIESMER, format!("needs d >= {radius}"))
    }
}

/// Best `(R, t, n - tR)` for long codes of covering radius `R <= d`: `q >= 8`
/// even, `R >= 4`, `m = ceil(log_q(R+1)) + 1`, `t >= 3m + 2` and
/// `n >= R q^((t-1)R) + 2 q^(t-2) + sum_{j=3}^{m+2} q^(t-j)`.
pub(crate) fn long_code_exponent(q: u64, n: &BigUint, d: &BigUint) -> Option<(u64, u64, BigUint)> {
    if q < 8 || q % 2 != 0 || prime_power(q).is_none() {
        return None;
    }
    let qb = BigUint::from(q);
    let mut best: Option<(u64, u64, BigUint)> = None;
    let mut r = 4u64;
    while BigUint::from(r) <= *d {
        let m = ceil_log(q, r + 1) + 1;
        let need = |t: u64| -> BigUint {
            let mut s = BigUint::from(r) * qb.pow(to_u32((t - 1) * r)) + BigUint::from(2u32) * qb.pow(to_u32(t - 2));
            for j in 3..=m + 2 {
                s += qb.pow(to_u32(t - j));
            }
            s
        };
        let t0 = 3 * m + 2;
        if need(t0) > *n {
            // Larger R only needs more length.
            break;
        }
        let mut t = t0;
        while need(t + 1) <= *n {
            t += 1;
        }
        let tr = BigUint::from(t) * r;
        if tr <= *n {
            let e = n - &tr;
            if best.as_ref().is_none_or(|b| e < b.2) {
                best = Some((r, t, e));
            }
        }
        r += 1;
    }
    best
}

fn long_codes(q: u64, n: u64, d: u64, l: u64) -> BoundResult {
    match long_code_exponent(q, &BigUint::from(n), &BigUint::from(d)) {
        Some((r, t, e)) => BoundResult::cover("long_code_cover", l, q, e.to_u64().unwrap(), C_LONG)
            .with_note(format!("R = {r}, t = {t}")),
        None => BoundResult::inapplicable(
            "long_code_cover",
            BoundKind::SizeUpper,
            C_LONG,
            "needs q >= 8 even, 4 <= R <= d, t >= 3m+2 and the length condition",
        ),
    }
}

fn root(u: u64, q: u64, n: u64) -> Option<f64> {
    if u == 0 || u > n || n > ROOT_SCAN_MAX_N {
        return None;
    }
    KrawtchoukParams::new(u, q, n).ok().and_then(|p| krawtchouk_smallest_root(p).ok())
}

fn from_linear_code(query: &BoundQuery, q: u64, n: u64, d: u64, l: u64) -> Result<Vec<BoundResult>> {
    let Some(code) = &query.aux.code else {
        return Ok(vec![
            BoundResult::inapplicable("delsarte", BoundKind::SizeUpper, C_DELSARTE, "needs a linear code"),
            BoundResult::inapplicable("tietavainen", BoundKind::SizeUpper, C_TIETAVAINEN, "needs a linear code"),
        ]);
    };
    if code.q() != q || code.n() as u64 != n {
        return Err(invalid(format!(
            "supplied code is over F_{} of length {}, query is q={q} n={n}",
            code.q(),
            code.n()
        )));
    }
    let k = code.k() as u64;
    let mut out = Vec::new();
    match code.dual_stats() {
        Ok(ds) if ds.degenerate => out.push(BoundResult::inapplicable(
            "delsarte",
            BoundKind::SizeUpper,
            C_DELSARTE,
            "dual code is zero (k = n)",
        )),
        Ok(ds) if ds.s <= d => out.push(
            BoundResult::cover("delsarte", l, q, k, C_DELSARTE)
                .with_note(format!("dual has s = {} nonzero weights", ds.s)),
        ),
        Ok(ds) => out.push(BoundResult::inapplicable(
            "delsarte",
            BoundKind::SizeUpper,
            C_DELSARTE,
            format!("dual has s = {} > d nonzero weights", ds.s),
        )),
        Err(e) => out.push(BoundResult::inapplicable("delsarte", BoundKind::SizeUpper, C_DELSARTE, e.to_string())),
    }
    let ds = code.dual_stats().ok();
    out.push(match ds.and_then(|ds| ds.dual_distance) {
        None => {
            BoundResult::inapplicable("tietavainen", BoundKind::SizeUpper, C_TIETAVAINEN, "dual distance unavailable")
        }
        Some(dd) => {
            let (u, len) = if dd % 2 == 0 { (dd / 2, n) } else { (dd.div_ceil(2), n - 1) };
            match root(u, q, len) {
                Some(x) if x <= d as f64 + 1e-9 => BoundResult::cover("tietavainen", l, q, k, C_TIETAVAINEN)
                    .with_note(format!("dual distance {dd}, x({u},{q},{len}) = {x:.9}"))
                    .with_raw(x),
                Some(x) => BoundResult::inapplicable(
                    "tietavainen",
                    BoundKind::SizeUpper,
                    C_TIETAVAINEN,
                    format!("x({u},{q},{len}) = {x:.9} > d"),
                ),
                None => {
                    BoundResult::inapplicable("tietavainen", BoundKind::SizeUpper, C_TIETAVAINEN, "no Krawtchouk root")
                }
            }
        }
    });
    out.push(match code.syndrome_covering_radius() {
        Ok(r) if r <= d => {
            BoundResult::cover("linear_cover", l, q, k, C_LINEAR).with_note(format!("covering radius {r}"))
        }
        Ok(r) => BoundResult::inapplicable(
            "linear_cover",
            BoundKind::SizeUpper,
            C_LINEAR,
            format!("covering radius {r} > d"),
        ),
        Err(e) => BoundResult::inapplicable("linear_cover", BoundKind::SizeUpper, C_LINEAR, e.to_string()),
    });
    Ok(out)
}

/// Smallest `u >= 1` with `x(u, q, n) <= d`.
fn smallest_u(q: u64, n: u64, d: u64) -> Option<(u64, f64)> {
    (1..=n).find_map(|u| root(u, q, n).filter(|&x| x <= d as f64 + 1e-9).map(|x| (u, x)))
}

fn tietavainen_gv(q: u64, n: u64, d: u64, l: u64) -> BoundResult {
    if too_large(q, n) || n > ROOT_SCAN_MAX_N {
        return BoundResult::inapplicable(
            "tietavainen_gv",
            BoundKind::SizeUpper,
            C_GV,
            "length too large for root scan",
        );
    }
    let Some((u, x)) = smallest_u(q, n, d) else {
        return BoundResult::inapplicable("tietavainen_gv", BoundKind::SizeUpper, C_GV, "no u with x(u,q,n) <= d");
    };
    // floor(log_q(q^n / V(2u-1))) = largest e with q^e V <= q^n.
    let v = volume(q, n, 2 * u - 1);
    let qn = pow(q, n);
    let mut e = 0u64;
    while pow(q, e + 1) * &v <= qn {
        e += 1;
    }
    BoundResult::cover("tietavainen_gv", l, q, n - e, C_GV)
        .with_note(format!("u = {u}, x(u,q,n) = {x:.9}, dual dimension {e}"))
}

fn root_estimate(q: u64, n: u64, d: u64, l: u64) -> BoundResult {
    if q != 2 {
        return BoundResult::inapplicable("binary_root_estimate", BoundKind::SizeUpper, C_ROOT_EST, "binary only");
    }
    if too_large(q, n) {
        return BoundResult::inapplicable("binary_root_estimate", BoundKind::SizeUpper, C_ROOT_EST, "space too large");
    }
    // (n - 2d)/2 <= sqrt((n-u+2)(u-2)), compared exactly after squaring.
    let ok = |u: u64| n <= 2 * d || ((n - 2 * d) as u128).pow(2) <= 4 * ((n - u + 2) as u128) * ((u - 2) as u128);
    match (2..=n / 2).find(|&u| ok(u)) {
        Some(u) => {
            let v = volume(2, n, 2 * u - 1) * 2u32;
            BoundResult::cover_exact("binary_root_estimate", l, v, C_ROOT_EST)
                .with_note(format!("u = {u}; relies on the root estimate, which fails for some (u, n)"))
        }
        None => BoundResult::inapplicable("binary_root_estimate", BoundKind::SizeUpper, C_ROOT_EST, "no u in [2, n/2]"),
    }
}

/// Size bound for average-radius list-decodable codes, `n <= q`, `d >= 1`.
pub fn average_radius_bound(query: &BoundQuery) -> Result<BoundResult> {
    let (q, n) = hamming_params(query)?;
    let (d, l) = (query.d, query.l);
    if n > q {
        return Ok(BoundResult::inapplicable("average_radius", BoundKind::SizeUpper, C_AVERAGE, "needs n <= q"));
    }
    if d == 0 {
        return Ok(BoundResult::inapplicable("average_radius", BoundKind::SizeUpper, C_AVERAGE, "needs d >= 1"));
    }
    let big = |x: BigUint| BigInt::from(x);
    let qnd = big(pow(q, n - d));
    let c_up = big(binomial(n, d + 1));
    let lm1 = BigInt::from(l) - 1;
    let shell = big(binomial(n, d - 1) * pow(q - 1, d - 1) + binomial(n, d) * pow(q - 1, d));
    let first: BigInt = lm1 * (&qnd - &c_up) + shell * &c_up;
    let second = (BigInt::from(l) - 2) * &qnd;
    let best = first.max(second);
    let v = if best.is_positive() { best.to_biguint().unwrap() } else { BigUint::one() };
    Ok(BoundResult::applies(
        "average_radius",
        BoundKind::SizeUpper,
        BoundValue::Exact(v.max(BigUint::one())),
        C_AVERAGE,
    )
    .with_note("bounds average-radius list-decodable codes only"))
}

/// `L >= q^(cn/2)` for a linear `[n,k,D]` code with
/// `n - D <= (1+eps) k^2/n - c`, list-decodable at `n - sqrt(n(n-D)/(1+eps))`.
fn beyond_johnson(query: &BoundQuery, q: u64, n: u64) -> Option<BoundResult> {
    let (k, dist, eps) = (query.aux.code_dimension?, query.aux.code_distance?, query.aux.epsilon?);
    let nf = n as f64;
    let c = (1.0 + eps) * (k as f64).powi(2) / nf - (n as f64 - dist as f64);
    let radius = nf - (nf * (nf - dist as f64) / (1.0 + eps)).sqrt();
    Some(if c <= 0.0 {
        BoundResult::inapplicable(
            "beyond_johnson",
            BoundKind::ListLower,
            C_BEYOND,
            format!("c = {c:.6} is not positive"),
        )
    } else if (query.d as f64) + 1e-9 < radius {
        BoundResult::inapplicable("beyond_johnson", BoundKind::ListLower, C_BEYOND, format!("needs d >= {radius:.6}"))
    } else {
        BoundResult::applies(
            "beyond_johnson",
            BoundKind::ListLower,
            BoundValue::Log(crate::exact::LogSize::new(q, c * nf / 2.0)),
            C_BEYOND,
        )
        .with_raw(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::{best_size_upper, evaluate};
    use crate::linear::LinearCode;

    fn val(res: &[BoundResult], name: &str) -> Option<BigUint> {
        res.iter().find(|r| r.name == name && r.applicable).and_then(|r| r.value.as_ref()?.exact().cloned())
    }

    fn run(q: u64, n: u64, d: u64, l: u64) -> Vec<BoundResult> {
        evaluate(&BoundQuery::new(SpaceSpec::hamming(q, n), d, l)).unwrap()
    }

    #[test]
    fn flagship_table_bound() {
        let res = run(2, 16, 3, 2);
        assert_eq!(val(&res, "covering_table"), Some(BigUint::from(384u32)));
        assert_eq!(val(&res, "generalized_singleton"), Some(BigUint::from(8192u32)));
        assert_eq!(val(&res, "redundancy"), Some(BigUint::from(16384u32)));
        let best = best_size_upper(&res).unwrap();
        assert_eq!(best.value, Some(BoundValue::Exact(BigUint::from(384u32))));
    }

    #[test]
    fn griesmer_example() {
        let mut q = BoundQuery::new(SpaceSpec::hamming(2, 23), 12, 1);
        q.aux.griesmer = Some((4, 12));
        let res = evaluate(&q).unwrap();
        assert_eq!(val(&res, "griesmer_cover"), Some(BigUint::from(16u32)));
        // Below the Griesmer length the claim is rejected.
        let mut q = BoundQuery::new(SpaceSpec::hamming(2, 20), 12, 1);
        q.aux.griesmer = Some((4, 12));
        assert_eq!(val(&evaluate(&q).unwrap(), "griesmer_cover"), None);
    }

    #[test]
    fn reed_muller_thresholds() {
        // m = 4: RM(1,4) has covering radius 6.
        let res = run(2, 16, 6, 3);
        assert_eq!(val(&res, "rm1_even"), Some(BigUint::from(3u32 * 32)));
        assert_eq!(val(&run(2, 16, 5, 3), "rm1_even"), None);
        // RM(2,4) = extended Hamming, covering radius 2, dimension 11.
        assert_eq!(val(&run(2, 16, 2, 1), "rm_half"), Some(BigUint::from(2048u32)));
        assert_eq!(val(&run(2, 16, 1, 1), "rm_half"), None);
        // q-ary first order, m = 3, q = 2: floor(4 - sqrt 2) = 2.
        assert_eq!(val(&run(2, 8, 2, 1), "rm1_q"), Some(BigUint::from(16u32)));
        assert_eq!(val(&run(2, 8, 1, 1), "rm1_q"), None);
        // q = 3, m = 2: 6 - 1 = 5.
        assert_eq!(val(&run(3, 9, 5, 1), "rm1_q"), Some(BigUint::from(27u32)));
        assert_eq!(val(&run(3, 9, 4, 1), "rm1_q"), None);
    }

    #[test]
    fn perfect_codes() {
        assert_eq!(val(&run(2, 7, 1, 2), "perfect_hamming"), Some(BigUint::from(32u32)));
        assert_eq!(val(&run(3, 4, 1, 1), "perfect_hamming"), Some(BigUint::from(9u32)));
        assert_eq!(val(&run(2, 23, 3, 1), "perfect_golay23"), Some(BigUint::from(4096u32)));
        assert_eq!(val(&run(3, 11, 2, 1), "perfect_golay11"), Some(BigUint::from(729u32)));
        assert_eq!(val(&run(2, 23, 2, 1), "perfect_golay23"), None);
    }

    #[test]
    fn long_code_conditions() {
        assert!(long_code_exponent(8, &BigUint::from(u64::MAX), &BigUint::from(100u32)).is_none());
        let q = BigUint::from(8u32);
        let n = BigUint::from(4u32) * q.pow(28) + BigUint::from(2u32) * q.pow(6) + q.pow(5) + q.pow(4);
        let (r, t, e) = long_code_exponent(8, &n, &BigUint::from(4u32)).unwrap();
        assert_eq!((r, t), (4, 8));
        assert_eq!(e, &n - 32u32);
        assert!(long_code_exponent(8, &(&n - 1u32), &BigUint::from(4u32)).is_none());
        assert!(long_code_exponent(9, &n, &BigUint::from(4u32)).is_none());
    }

    #[test]
    fn dual_weight_bounds() {
        let code = LinearCode::hamming_code(2, 3).unwrap();
        let mut q = BoundQuery::new(SpaceSpec::hamming(2, 7), 1, 1);
        q.aux.code = Some(code);
        let res = evaluate(&q).unwrap();
        // Simplex dual: one nonzero weight, dual distance 4, x(2,2,7) = 2.5 - sqrt(7)/2... > 1.
        assert_eq!(val(&res, "delsarte"), Some(BigUint::from(16u32)));
        assert_eq!(val(&res, "linear_cover"), Some(BigUint::from(16u32)));
        let t = res.iter().find(|r| r.name == "tietavainen").unwrap();
        assert!(!t.applicable);
    }

    #[test]
    fn tietavainen_gv_matches_hand_value() {
        // n = 7, q = 2, d = 1: x(1) = 3.5, x(2) = (7 - sqrt 7)/2, and K_3(1) = 5, K_3(2) = -5
        // puts x(3) in (1, 2), so u = 4.
        let res = run(2, 7, 1, 1);
        let r = res.iter().find(|r| r.name == "tietavainen_gv").unwrap();
        assert!(r.applicable, "{r:?}");
        assert!(r.note.as_ref().unwrap().starts_with("u = 4"));
        // V(7) = 128, so the dual dimension is 0.
        assert_eq!(val(&res, "tietavainen_gv"), Some(BigUint::from(128u32)));
    }

    #[test]
    fn average_radius_formula() {
        let q = BoundQuery::new(SpaceSpec::hamming(8, 8), 1, 3);
        let r = average_radius_bound(&q).unwrap();
        // (L-1)(8^7 - C(8,2)) + (C(8,0) + C(8,1)*7) * C(8,2), vs (L-2) 8^7.
        let first = 2u64 * (8u64.pow(7) - 28) + (1 + 56) * 28;
        let second = 8u64.pow(7);
        assert_eq!(r.value, Some(BoundValue::Exact(BigUint::from(first.max(second)))));
        let q = BoundQuery::new(SpaceSpec::hamming(8, 8), 0, 3);
        assert!(!average_radius_bound(&q).unwrap().applicable);
        let q = BoundQuery::new(SpaceSpec::hamming(2, 8), 1, 3);
        assert!(!average_radius_bound(&q).unwrap().applicable);
    }

    #[test]
    fn list_lower_from_cover() {
        let mut q = BoundQuery::new(SpaceSpec::hamming(2, 7), 1, 1);
        q.aux.code_size = Some(BigUint::from(64u32));
        q.aux.packing_size = Some(BigUint::from(16u32));
        let res = evaluate(&q).unwrap();
        // Perfect Hamming code, K = 16: L >= 4.
        assert_eq!(val(&res, "list_from_cover"), Some(BigUint::from(4u32)));
        let gap = res.iter().find(|r| r.name == "gap").unwrap();
        assert!(!gap.applicable, "K = A gives no gap");
    }

    #[test]
    fn volumes() {
        assert_eq!(volume(2, 7, 1), BigUint::from(8u32));
        assert_eq!(volume(3, 4, 4), BigUint::from(81u32));
        assert_eq!(volume(2, 3, 9), BigUint::from(8u32));
    }
}
