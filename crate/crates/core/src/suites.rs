//! Seeded verification suites over exhaustively checkable instances.

use num_traits::ToPrimitive;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::chebyshev_cyclic_radius;
use crate::error::{invalid, Result};
use crate::exact::binomial;
use crate::krawtchouk::{krawtchouk_smallest_root, KrawtchoukParams};
use crate::linear::LinearCode;
use crate::oracle::{
    covering_radius, list_profile, min_covering, multiplicity_stats, probabilistic_construct, ExplicitCode, SearchMode,
    DEFAULT_NODE_BUDGET,
};
use crate::space::{digits, points, subsequence_test, PermMetric, Point, SpaceSpec, DEFAULT_CAP};

pub const SUITES: [&str; 6] =
    ["covering-bound", "probabilistic", "tietavainen", "delsarte", "insdel-example", "chebyshev-cyclic"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl SuiteReport {
    fn new(suite: &str, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        SuiteReport { suite: suite.into(), checks, passed }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteParams {
    pub seed: u64,
    /// Random trials (codes, runs) per suite.
    pub trials: u64,
    /// Restrict the probabilistic suite to one list size.
    pub l: Option<u64>,
    /// Single size parameter (insdel `n`).
    pub n: Option<u64>,
    /// Largest size for sweeps (Chebyshev `n`).
    pub n_max: Option<u64>,
    pub budget: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { seed: 0, trials: 100, l: None, n: None, n_max: None, budget: DEFAULT_NODE_BUDGET }
    }
}

pub fn run_suite(name: &str, p: &SuiteParams) -> Result<SuiteReport> {
    match name {
        "covering-bound" => covering_bound(p),
        "probabilistic" => probabilistic(p),
        "tietavainen" => tietavainen(p),
        "delsarte" => delsarte(p),
        "insdel-example" => insdel_example(p.n.unwrap_or(4)),
        "chebyshev-cyclic" => chebyshev_cyclic(p.n_max.unwrap_or(7)),
        _ => Err(invalid(format!("unknown suite {name:?}; expected one of {}", SUITES.join(", ")))),
    }
}

fn code_from_mask(space: &SpaceSpec, pts: &[Point], mask: u64) -> Result<ExplicitCode> {
    let words = pts.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, p)| p.clone()).collect();
    ExplicitCode::new(space.clone(), words)
}

/// `|C| <= L2(C, r) |C'|` for every nonempty code in F_2^3 against an exact
/// minimum cover at r = 1, then random codes in F_2^8 against greedy covers.
pub fn covering_bound(p: &SuiteParams) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    let small = SpaceSpec::hamming(2, 3);
    let cover = min_covering(&small, 1, SearchMode::Exact, p.budget)?;
    let pts = points(&small, DEFAULT_CAP)?;
    let mut bad = Vec::new();
    for mask in 1u64..256 {
        let c = code_from_mask(&small, &pts, mask)?;
        let l2 = list_profile(&c, 1)?.l2;
        if c.len() as u64 > l2 * cover.len() as u64 {
            bad.push(mask);
        }
    }
    checks.push(check(
        "exhaustive F_2^3, r = 1",
        bad.is_empty(),
        format!("255 codes against an exact cover of size {}; violations {bad:?}", cover.len()),
    ));

    let big = SpaceSpec::hamming(2, 8);
    let pts = points(&big, DEFAULT_CAP)?;
    let covers = (1..=3u64).map(|r| min_covering(&big, r, SearchMode::Greedy, p.budget)).collect::<Result<Vec<_>>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    for t in 0..p.trials {
        let r = 1 + t % 3;
        let size = rng.gen_range(1..=pts.len());
        let words = sample(&mut rng, pts.len(), size).into_iter().map(|i| pts[i].clone()).collect();
        let c = ExplicitCode::new(big.clone(), words)?;
        let cover = &covers[(r - 1) as usize];
        let l2 = list_profile(&c, r)?.l2;
        checks.push(check(
            format!("F_2^8 trial {t}, r = {r}"),
            c.len() as u64 <= l2 * cover.len() as u64,
            format!("|C| = {}, L2 = {l2}, |C'| = {}", c.len(), cover.len()),
        ));
    }
    Ok(SuiteReport::new("covering-bound", checks))
}

/// Codes built by drawing `L` points per cover ball: from the perfect
/// `[7,4]` cover the list size at radius 1 must stay at most `L`; from a
/// non-perfect greedy cover of F_2^4 it is compared with
/// `ceil(L (1 + multiratio / V(1)))`.
pub fn probabilistic(p: &SuiteParams) -> Result<SuiteReport> {
    let ls: Vec<u64> = match p.l {
        Some(l) => vec![l],
        None => vec![1, 2, 3],
    };
    let mut checks = Vec::new();
    let perfect = LinearCode::hamming_code(2, 3)?.enumerate_codewords()?;
    let greedy = min_covering(&SpaceSpec::hamming(2, 4), 1, SearchMode::Greedy, p.budget)?;
    for (label, cover, strict) in [("perfect [7,4]", &perfect, true), ("greedy F_2^4", &greedy, false)] {
        let r = covering_radius(cover)?;
        let stats = multiplicity_stats(cover, r)?;
        let n = match cover.space() {
            SpaceSpec::Hamming { n, .. } => *n,
            _ => unreachable!("hamming covers"),
        };
        let vol: u64 = (0..=r).map(|j| binomial(n, j).to_u64().expect("small binomial")).sum();
        for &l in &ls {
            // L (1 + m/V) with m = a/b: ceil(L (bV + a) / (bV)).
            let (a, b) = (stats.multiratio.num, stats.multiratio.den);
            let limit = if strict { l } else { (l * (b * vol + a)).div_ceil(b * vol) };
            for run in 0..p.trials {
                let seed = p.seed.wrapping_add(run);
                let c = probabilistic_construct(cover, l, seed)?;
                let l2 = list_profile(&c, r)?.l2;
                checks.push(check(
                    format!("{label}, L = {l}, run {run}"),
                    l2 <= limit,
                    format!(
                        "seed {seed}: |C| = {}, L2 = {l2}, limit {limit}, multiratio {}/{}",
                        c.len(),
                        stats.multiratio.num,
                        stats.multiratio.den
                    ),
                ));
            }
        }
    }
    Ok(SuiteReport::new("probabilistic", checks))
}

/// The seeded random linear codes shared by the Tietavainen and Delsarte
/// suites: `q` in {2, 3}, `n <= 12`, `k <= 8`, `k < n`.
pub fn random_linear_codes(seed: u64, count: u64) -> Result<Vec<LinearCode>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let q = if rng.gen_bool(0.5) { 2 } else { 3 };
            let n = rng.gen_range(2..=12usize);
            let k = rng.gen_range(1..=(n - 1).min(8));
            LinearCode::random(q, n, k, &mut rng)
        })
        .collect()
}

fn describe(c: &LinearCode) -> String {
    format!("[{}, {}]_{}", c.n(), c.k(), c.q())
}

/// Syndrome and exhaustive covering radii agree, and `R <= x(u, q, n)` when
/// the dual distance is `2u`.
pub fn tietavainen(p: &SuiteParams) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (i, code) in random_linear_codes(p.seed, p.trials)?.iter().enumerate() {
        let syn = code.syndrome_covering_radius()?;
        let exh = covering_radius(&code.enumerate_codewords()?)?;
        checks.push(check(
            format!("code {i} {}: syndrome = exhaustive", describe(code)),
            syn == exh,
            format!("syndrome {syn}, exhaustive {exh}"),
        ));
        let dual = code.dual_stats()?;
        if let Some(dd) = dual.dual_distance.filter(|d| d % 2 == 0) {
            let u = dd / 2;
            let x = krawtchouk_smallest_root(KrawtchoukParams::new(u, code.q(), code.n() as u64)?)?;
            checks.push(check(
                format!("code {i} {}: R <= x(u,q,n)", describe(code)),
                exh as f64 <= x + 1e-6,
                format!("dual distance {dd}, R = {exh}, x({u},{},{}) = {x:.9}", code.q(), code.n()),
            ));
        }
    }
    Ok(SuiteReport::new("tietavainen", checks))
}

/// Covering radius at most the number of distinct nonzero dual weights.
pub fn delsarte(p: &SuiteParams) -> Result<SuiteReport> {
    let mut checks = Vec::new();
    for (i, code) in random_linear_codes(p.seed, p.trials)?.iter().enumerate() {
        let dual = code.dual_stats()?;
        if dual.degenerate {
            continue;
        }
        let r = covering_radius(&code.enumerate_codewords()?)?;
        checks.push(check(
            format!("code {i} {}: R <= s", describe(code)),
            r <= dual.s,
            format!("R = {r}, s = {}, dual weights {:?}", dual.s, dual.dual_weights),
        ));
    }
    Ok(SuiteReport::new("delsarte", checks))
}

/// Every string in F_2^{2n} contains 0^n or 1^n as a subsequence, and every
/// length-n string is a subsequence of (01)^n, checked for all sizes up to `n`.
pub fn insdel_example(n: u64) -> Result<SuiteReport> {
    if n == 0 || n > 10 {
        return Err(invalid("insdel example needs 1 <= n <= 10"));
    }
    let mut checks = Vec::new();
    for k in 1..=n {
        let len = 2 * k as usize;
        let zeros = vec![0u32; k as usize];
        let ones = vec![1u32; k as usize];
        let missing = (0..1u64 << len)
            .map(|i| digits(i, 2, len))
            .filter(|w| !subsequence_test(&zeros, w) && !subsequence_test(&ones, w))
            .count();
        checks.push(check(
            format!("F_2^{len} strings contain 0^{k} or 1^{k}"),
            missing == 0,
            format!("{} strings, {missing} without either", 1u64 << len),
        ));
        let alt: Vec<u32> = (0..len).map(|i| (i % 2) as u32).collect();
        let missing = (0..1u64 << k).map(|i| digits(i, 2, k as usize)).filter(|w| !subsequence_test(w, &alt)).count();
        checks.push(check(
            format!("F_2^{k} strings embed in (01)^{k}"),
            missing == 0,
            format!("{} strings, {missing} not embedded", 1u64 << k),
        ));
    }
    Ok(SuiteReport::new("insdel-example", checks))
}

/// Brute-force Chebyshev covering radius of the cyclic group `G_n` over `S_n`.
pub fn cyclic_group_radius(n: u64) -> Result<u64> {
    let space = SpaceSpec::Permutation { n, metric: PermMetric::Chebyshev };
    let words = (0..n).map(|s| Point::Perm((0..n).map(|i| ((i + s) % n + 1) as u32).collect())).collect::<Vec<_>>();
    covering_radius(&ExplicitCode::new(space, words)?)
}

pub fn chebyshev_cyclic(n_max: u64) -> Result<SuiteReport> {
    if !(3..=9).contains(&n_max) {
        return Err(invalid("chebyshev-cyclic needs 3 <= n-max <= 9"));
    }
    let checks = (3..=n_max)
        .map(|n| {
            let brute = cyclic_group_radius(n)?;
            let formula = chebyshev_cyclic_radius(n);
            Ok(check(format!("n = {n}"), brute == formula, format!("brute force {brute}, formula {formula}")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteReport::new("chebyshev-cyclic", checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insdel_small() {
        let r = insdel_example(3).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), 6);
    }

    #[test]
    fn chebyshev_small() {
        let r = chebyshev_cyclic(5).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(cyclic_group_radius(4).unwrap(), 2);
    }

    #[test]
    fn random_codes_are_reproducible() {
        let a = random_linear_codes(3, 5).unwrap();
        let b = random_linear_codes(3, 5).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.generator(), y.generator());
            assert!(x.k() < x.n() && x.n() <= 12 && x.k() <= 8);
        }
    }

    #[test]
    fn delsarte_and_tietavainen_hold() {
        let p = SuiteParams { seed: 1, trials: 8, ..Default::default() };
        assert!(delsarte(&p).unwrap().passed);
        assert!(tietavainen(&p).unwrap().passed);
    }

    #[test]
    fn unknown_suite() {
        assert!(run_suite("nope", &SuiteParams::default()).is_err());
    }
}
