//! Closed-form bounds on list-decodable codes, evaluated per query.
//!
//! Every bound is returned, applicable or not; inapplicable ones carry the
//! failing precondition instead of a value.

mod asymptotic;
mod hamming;
mod permutation;
mod rank;
mod short;
mod subspace;
mod sumrank;
mod table;

pub use asymptotic::{asymptotic_threshold, hamming_radius_for_rate, AsymptoticFamily};
pub use hamming::{average_radius_bound, bound_hamming};
pub use permutation::{bound_permutation, chebyshev_cyclic_radius, chebyshev_rate};
pub use rank::{bound_rank, gy_exponent, GyComposition};
pub use short::bound_short_metrics;
pub use subspace::bound_subspace;
pub use sumrank::{bound_sumrank, sumrank_entropy};
pub use table::{KTable, TableEntry};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::exact::{log2_big, pow, LogSize};
use crate::linear::LinearCode;
use crate::space::{space_size, SpaceSpec};

/// Powers whose bit length would exceed this are kept in log form.
const EXACT_BITS: f64 = (1u64 << 20) as f64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    SizeUpper,
    ListLower,
    RateUpper,
    GapLower,
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BoundKind::SizeUpper => "size-upper",
            BoundKind::ListLower => "list-lower",
            BoundKind::RateUpper => "rate-upper",
            BoundKind::GapLower => "gap-lower",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundValue {
    Exact(#[serde(with = "decimal")] BigUint),
    Log(LogSize),
    Real(f64),
}

impl BoundValue {
    pub fn exact(&self) -> Option<&BigUint> {
        match self {
            BoundValue::Exact(v) => Some(v),
            _ => None,
        }
    }

    pub fn log2(&self) -> f64 {
        match self {
            BoundValue::Exact(v) if v.is_zero() => f64::NEG_INFINITY,
            BoundValue::Exact(v) => log2_big(v),
            BoundValue::Log(l) => l.log2(),
            BoundValue::Real(x) => x.log2(),
        }
    }

    /// Exact comparison between exact values, log-scale otherwise.
    pub fn cmp_value(&self, other: &BoundValue) -> Ordering {
        match (self, other) {
            (BoundValue::Exact(a), BoundValue::Exact(b)) => a.cmp(b),
            (BoundValue::Real(a), BoundValue::Real(b)) => a.total_cmp(b),
            _ => self.log2().total_cmp(&other.log2()),
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(v) => write!(f, "{v}"),
            BoundValue::Log(l) => write!(f, "{}^{:.6}", l.base, l.exponent),
            BoundValue::Real(x) => write!(f, "{x:.9}"),
        }
    }
}

mod decimal_opt {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_str_radix(10)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigUint>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| s.parse().map_err(D::Error::custom)).transpose()
    }
}

mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// One evaluated bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub name: String,
    pub kind: BoundKind,
    pub applicable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<BoundValue>,
    /// Real value before rounding, for bounds reported as ceilings.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// Set when two formulas for the same quantity disagree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub consistent: Option<bool>,
    #[serde(default)]
    pub asymptotic: bool,
    /// Value depends on an unspecified constant and is not comparable.
    #[serde(default)]
    pub parametric: bool,
    /// Comparison bound outside the covering-code family; listed but not
    /// taken as the best bound.
    #[serde(default)]
    pub reference: bool,
    /// Size of the covering code behind a `L |C'|` bound.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "decimal_opt")]
    pub cover_size: Option<BigUint>,
}

impl BoundResult {
    pub fn applies(name: &str, kind: BoundKind, value: BoundValue, citation: &str) -> Self {
        BoundResult {
            name: name.into(),
            kind,
            applicable: true,
            value: Some(value),
            raw: None,
            reason: None,
            citation: citation.into(),
            note: None,
            consistent: None,
            asymptotic: false,
            parametric: false,
            reference: false,
            cover_size: None,
        }
    }

    pub fn inapplicable(name: &str, kind: BoundKind, citation: &str, reason: impl Into<String>) -> Self {
        BoundResult {
            name: name.into(),
            kind,
            applicable: false,
            value: None,
            raw: None,
            reason: Some(reason.into()),
            citation: citation.into(),
            note: None,
            consistent: None,
            asymptotic: false,
            parametric: false,
            reference: false,
            cover_size: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_raw(mut self, raw: f64) -> Self {
        self.raw = Some(raw);
        self
    }

    pub fn with_cover(mut self, k: BigUint) -> Self {
        self.cover_size = Some(k);
        self
    }

    /// `L q^e` backed by a covering code of size `q^e`.
    pub fn cover(name: &str, l: u64, q: u64, e: u64, citation: &str) -> Self {
        let v = l_times_pow(l, q, e);
        let k = v.exact().map(|_| pow(q, e));
        let mut r = BoundResult::applies(name, BoundKind::SizeUpper, v, citation);
        r.cover_size = k;
        r
    }

    /// `L K` for an explicit covering size `K`.
    pub fn cover_exact(name: &str, l: u64, k: BigUint, citation: &str) -> Self {
        BoundResult::applies(name, BoundKind::SizeUpper, BoundValue::Exact(&k * l), citation).with_cover(k)
    }

    pub fn reference(mut self) -> Self {
        self.reference = true;
        self
    }

    pub fn asymptotic(mut self) -> Self {
        self.asymptotic = true;
        self
    }

    /// Applicable, finite, non-parametric size-upper bound.
    pub fn is_comparable_size_upper(&self) -> bool {
        self.applicable && self.kind == BoundKind::SizeUpper && !self.asymptotic && !self.parametric
    }
}

/// Optional inputs that enable further bounds.
#[derive(Debug, Clone, Default)]
pub struct Aux {
    /// Linear code feeding the dual-weight covering-radius bounds.
    pub code: Option<LinearCode>,
    /// Covering tables; the built-in tables are used when absent.
    pub tables: Option<KTable>,
    /// `(k, d')` with the query length equal to `n_q(k, d')`.
    pub griesmer: Option<(u64, u64)>,
    /// Size of the code whose list size is bounded from below.
    pub code_size: Option<BigUint>,
    /// Dimension `k` of that code (over `F_q`, or `F_{q^n}` for matrix codes).
    pub code_dimension: Option<u64>,
    /// Minimum distance of that code.
    pub code_distance: Option<u64>,
    pub epsilon: Option<f64>,
    /// A user covering code: `(size, covering radius)`.
    pub cover: Option<(BigUint, u64)>,
    /// Size of a code with minimum distance `2d + 1`.
    pub packing_size: Option<BigUint>,
    /// Unspecified constant of the single-deletion covering bound.
    pub w: Option<f64>,
    /// Evaluate the average-radius bound as well.
    pub average_radius: bool,
}

#[derive(Debug, Clone)]
pub struct BoundQuery {
    pub space: SpaceSpec,
    /// List radius; the deletion radius `d1` for insdel spaces.
    pub d: u64,
    /// Insertion radius `d2` for insdel spaces; defaults to `d`.
    pub d2: Option<u64>,
    pub l: u64,
    pub aux: Aux,
}

impl BoundQuery {
    pub fn new(space: SpaceSpec, d: u64, l: u64) -> Self {
        BoundQuery { space, d, d2: None, l, aux: Aux::default() }
    }

    pub fn validate(&self) -> Result<()> {
        self.space.validate()?;
        if self.l == 0 {
            return Err(invalid("list size L must be at least 1"));
        }
        let diam = self.space.diameter();
        if self.d > diam {
            return Err(invalid(format!("radius {} exceeds the diameter {diam} of the space", self.d)));
        }
        if let Some(d2) = self.d2 {
            if d2 > diam {
                return Err(invalid(format!("radius {d2} exceeds the diameter {diam} of the space")));
            }
        }
        Ok(())
    }

    pub(crate) fn tables(&self) -> KTable {
        self.aux.tables.clone().unwrap_or_else(KTable::builtin)
    }
}

/// All bounds for the query's space, plus the generic ones.
pub fn evaluate(query: &BoundQuery) -> Result<Vec<BoundResult>> {
    query.validate()?;
    let mut out = match &query.space {
        SpaceSpec::Hamming { .. } => bound_hamming(query)?,
        SpaceSpec::Rank { .. } => bound_rank(query)?,
        SpaceSpec::Subspace { .. } | SpaceSpec::ConstDimSubspace { .. } => bound_subspace(query)?,
        SpaceSpec::CoverMetric { .. } | SpaceSpec::PairMetric { .. } | SpaceSpec::Insdel { .. } => {
            bound_short_metrics(query)?
        }
        SpaceSpec::SumRank { .. } => bound_sumrank(query)?,
        SpaceSpec::Permutation { .. } => bound_permutation(query)?,
    };
    out.extend(generic(query));
    cap_at_space(query, &mut out);
    Ok(out)
}

/// Bounds valid in every space.
fn generic(query: &BoundQuery) -> Vec<BoundResult> {
    let mut out = Vec::new();
    let cite = "covering bound: a covering code of radius R <= d gives |C| <= L|C'|";
    let diam = query.space.diameter();
    out.push(if query.d >= diam {
        BoundResult::cover_exact("single_point_cover", query.l, BigUint::one(), cite)
    } else {
        BoundResult::inapplicable(
            "single_point_cover",
            BoundKind::SizeUpper,
            cite,
            format!("needs d >= diameter {diam}"),
        )
    });
    if let Some((size, radius)) = &query.aux.cover {
        out.push(if *radius <= query.d {
            BoundResult::cover_exact("user_cover", query.l, size.clone(), cite)
        } else {
            BoundResult::inapplicable("user_cover", BoundKind::SizeUpper, cite, format!("cover radius {radius} > d"))
        });
    }
    out
}

/// Rough `log2 |X|`, used to decide whether `|X|` is cheap to materialize.
fn space_log2(s: &SpaceSpec) -> f64 {
    let lg = |x: u64| (x as f64).log2();
    match s {
        SpaceSpec::Hamming { q, n } | SpaceSpec::PairMetric { q, n } => *n as f64 * lg(*q),
        SpaceSpec::Rank { q, m, n } | SpaceSpec::CoverMetric { q, m, n } => (*m as f64) * (*n as f64) * lg(*q),
        SpaceSpec::SumRank { q, blocks } => blocks.iter().map(|&(n, m)| (n * m) as f64).sum::<f64>() * lg(*q),
        SpaceSpec::Subspace { q, n, .. } | SpaceSpec::ConstDimSubspace { q, n, .. } => {
            ((*n as f64).powi(2) / 4.0 + *n as f64 + 2.0) * lg(*q)
        }
        SpaceSpec::Insdel { v, n } => *n as f64 * lg(*v),
        SpaceSpec::Permutation { n, .. } => *n as f64 * lg((*n).max(2)),
    }
}

/// Size-upper bounds are reported no larger than `L |X|`.
fn cap_at_space(query: &BoundQuery, results: &mut [BoundResult]) {
    if space_log2(&query.space) > EXACT_BITS {
        return;
    }
    let cap = space_size(&query.space) * query.l;
    for r in results.iter_mut() {
        if !r.is_comparable_size_upper() {
            continue;
        }
        let over = match &r.value {
            Some(BoundValue::Exact(v)) => *v > cap,
            Some(BoundValue::Log(l)) => l.log2() > log2_big(&cap) + 1e-9,
            _ => false,
        };
        if over {
            r.value = Some(BoundValue::Exact(cap.clone()));
            let note = match r.note.take() {
                Some(n) => format!("{n}; capped at L|X|"),
                None => "capped at L|X|".to_string(),
            };
            r.note = Some(note);
        }
    }
}

/// Smallest applicable finite size-upper bound, reference bounds excluded.
pub fn best_size_upper(results: &[BoundResult]) -> Option<&BoundResult> {
    results
        .iter()
        .filter(|r| r.is_comparable_size_upper() && !r.reference)
        .min_by(|a, b| a.value.as_ref().unwrap().cmp_value(b.value.as_ref().unwrap()))
}

/// `L q^e` as an exact integer, or in log form when it would be huge.
pub(crate) fn l_times_pow(l: u64, q: u64, e: u64) -> BoundValue {
    if e as f64 * (q as f64).log2() > EXACT_BITS {
        BoundValue::Log(LogSize::new(q, e as f64 + (l as f64).log(q as f64)))
    } else {
        BoundValue::Exact(pow(q, e) * l)
    }
}

/// `ceil(num / den)` for positive big integers.
pub(crate) fn ceil_div(num: &BigUint, den: &BigUint) -> BigUint {
    let (quo, rem) = (num / den, num % den);
    if rem.is_zero() {
        quo
    } else {
        quo + BigUint::one()
    }
}

/// Smallest integer `>= x`, for bounds reported as ceilings.
pub(crate) fn ceil_f64(x: f64) -> BigUint {
    let c = x.ceil();
    if c <= 0.0 {
        BigUint::zero()
    } else if c < 9.0e15 {
        BigUint::from(c as u64)
    } else {
        let lg = c.log2();
        let shift = (lg - 52.0).ceil() as u64;
        BigUint::from((c / 2f64.powi(shift as i32)).ceil() as u64) << shift
    }
}

/// Smallest covering code size behind any applicable bound.
pub fn best_cover_size(results: &[BoundResult]) -> Option<&BigUint> {
    results.iter().filter(|r| r.is_comparable_size_upper()).filter_map(|r| r.cover_size.as_ref()).min()
}

/// `L >= ceil(|C| / K)` from the smallest covering code found.
pub(crate) fn list_from_cover(query: &BoundQuery, results: &[BoundResult]) -> Option<BoundResult> {
    let size = query.aux.code_size.as_ref()?;
    let cite = "list size from the smallest covering code: L >= |C| / K";
    Some(match best_cover_size(results) {
        Some(k) => {
            BoundResult::applies("list_from_cover", BoundKind::ListLower, BoundValue::Exact(ceil_div(size, k)), cite)
                .with_cover(k.clone())
        }
        None => {
            BoundResult::inapplicable("list_from_cover", BoundKind::ListLower, cite, "no exact covering size applies")
        }
    })
}

/// `L_2 - L_1 >= |C| (1/K - 1/A)` for a covering code of size `K` and a
/// packing code of size `A` with minimum distance `2d + 1`.
pub(crate) fn gap_bound(query: &BoundQuery, results: &[BoundResult]) -> Option<BoundResult> {
    let size = query.aux.code_size.as_ref()?;
    let a = query.aux.packing_size.as_ref()?;
    let cite = "multiplicity gap: L1 A <= |C| <= L2 K";
    let Some(k) = best_cover_size(results) else {
        return Some(BoundResult::inapplicable("gap", BoundKind::GapLower, cite, "no exact covering size applies"));
    };
    if a.is_zero() || k >= a {
        return Some(BoundResult::inapplicable("gap", BoundKind::GapLower, cite, "needs K < A for a positive gap"));
    }
    // |C| (A - K) / (K A), rounded up since the gap is an integer.
    let num = size * (a - k);
    let den = k * a;
    let raw = num.to_f64().unwrap_or(f64::INFINITY) / den.to_f64().unwrap_or(f64::INFINITY);
    Some(BoundResult::applies("gap", BoundKind::GapLower, BoundValue::Exact(ceil_div(&num, &den)), cite).with_raw(raw))
}

pub(crate) fn to_u32(e: u64) -> u32 {
    e.to_u32().expect("exponent fits in u32")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_serde_uses_decimal_strings() {
        let v = BoundValue::Exact(BigUint::from(10u32).pow(30));
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"exact":"1000000000000000000000000000000"}"#);
        let back: BoundValue = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn ordering_mixes_exact_and_log() {
        let a = BoundValue::Exact(BigUint::from(1000u32));
        let b = BoundValue::Log(LogSize::new(2, 12.0));
        assert_eq!(a.cmp_value(&b), Ordering::Less);
    }

    #[test]
    fn ceilings() {
        assert_eq!(ceil_f64(2167.1), BigUint::from(2168u32));
        assert_eq!(ceil_f64(3.0), BigUint::from(3u32));
        assert_eq!(ceil_div(&BigUint::from(7u32), &BigUint::from(2u32)), BigUint::from(4u32));
    }

    #[test]
    fn radius_beyond_diameter_rejected() {
        let q = BoundQuery::new(SpaceSpec::hamming(2, 3), 4, 1);
        assert!(evaluate(&q).is_err());
        let q = BoundQuery::new(SpaceSpec::hamming(2, 3), 1, 0);
        assert!(evaluate(&q).is_err());
    }

    #[test]
    fn single_point_cover_at_diameter() {
        let q = BoundQuery::new(SpaceSpec::hamming(2, 3), 3, 2);
        let res = evaluate(&q).unwrap();
        assert_eq!(best_size_upper(&res).unwrap().value, Some(BoundValue::Exact(BigUint::from(2u32))));
    }
}
