//! Rate thresholds above which polynomial list sizes are impossible.

use serde::{Deserialize, Serialize};

use super::permutation::chebyshev_rate;
use super::sumrank_entropy;
use crate::error::{invalid, Result};
use crate::exact::q_entropy;

/// A metric family and its fixed parameters; `rho` is always a ratio of the
/// radius to the length (`d / n`, or `d / (t n)` for sum-rank).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum AsymptoticFamily {
    /// `1 - H_q(rho)`.
    Hamming {
        q: u64,
    },
    /// Binary codes: `H(2x)` with `x` the smallest root of `(1-rho)/2 = sqrt(x(1-x))`.
    BinaryList,
    /// `2u + 1/(sqrt q - 1)` for `q >= 49`, `u` the least ratio whose
    /// Krawtchouk root ratio falls to `rho`.
    LargeQ {
        q: u64,
    },
    /// `(1 - r)(1 - b r)`, `b = n / m`.
    Rank {
        b: f64,
    },
    SubspaceS,
    SubspaceI,
    /// `1 - H_sr(rho n)` for `n x m` blocks.
    SumRank {
        q: u64,
        n: u64,
        m: u64,
    },
    PermutationChebyshev,
}

impl AsymptoticFamily {
    pub fn name(&self) -> &'static str {
        match self {
            AsymptoticFamily::Hamming { .. } => "hamming",
            AsymptoticFamily::BinaryList => "binary_list",
            AsymptoticFamily::LargeQ { .. } => "large_q",
            AsymptoticFamily::Rank { .. } => "rank",
            AsymptoticFamily::SubspaceS => "subspace_s",
            AsymptoticFamily::SubspaceI => "subspace_i",
            AsymptoticFamily::SumRank { .. } => "sum_rank",
            AsymptoticFamily::PermutationChebyshev => "permutation_chebyshev",
        }
    }
}

const LARGE_Q_GRID: usize = 10_000;

/// Limit of `x(u n, q, n) / n` for the smallest Krawtchouk root.
fn root_ratio(q: u64, tau: f64) -> f64 {
    let q = q as f64;
    ((q - 1.0) - (q - 2.0) * tau - 2.0 * ((q - 1.0) * tau * (1.0 - tau)).sqrt()) / q
}

fn out_of_domain(rho: f64, what: &str) -> crate::error::Error {
    invalid(format!("rho = {rho} outside {what}"))
}

pub fn asymptotic_threshold(family: AsymptoticFamily, rho: f64) -> Result<f64> {
    if !rho.is_finite() {
        return Err(out_of_domain(rho, "the reals"));
    }
    match family {
        AsymptoticFamily::Hamming { q } => {
            let top = (q - 1) as f64 / q as f64;
            if !(0.0..=top).contains(&rho) {
                return Err(out_of_domain(rho, &format!("[0, {top}]")));
            }
            Ok(1.0 - q_entropy(q, rho)?)
        }
        AsymptoticFamily::BinaryList => {
            if !(rho > 0.0 && rho < 0.5) {
                return Err(out_of_domain(rho, "(0, 1/2)"));
            }
            let h = (1.0 - rho) / 2.0;
            let x = (1.0 - (1.0 - 4.0 * h * h).sqrt()) / 2.0;
            if x >= 0.25 {
                return Err(invalid(format!("root x = {x} is not below 1/4")));
            }
            q_entropy(2, 2.0 * x)
        }
        AsymptoticFamily::LargeQ { q } => {
            if q < 49 {
                return Err(invalid(format!("needs q >= 49, got {q}")));
            }
            if !(rho > 0.0 && rho < 1.0) {
                return Err(out_of_domain(rho, "(0, 1)"));
            }
            let top = (q - 1) as f64 / q as f64;
            let u = (1..=LARGE_Q_GRID)
                .map(|i| i as f64 / LARGE_Q_GRID as f64 * top)
                .find(|&tau| root_ratio(q, tau) <= rho)
                .ok_or_else(|| out_of_domain(rho, "the range of the root ratio"))?;
            Ok(2.0 * u + 1.0 / ((q as f64).sqrt() - 1.0))
        }
        AsymptoticFamily::Rank { b } => {
            if !(0.0..=1.0).contains(&rho) || !(b > 0.0 && b <= 1.0) {
                return Err(out_of_domain(rho, "[0, 1] with 0 < b <= 1"));
            }
            Ok((1.0 - rho) * (1.0 - b * rho))
        }
        AsymptoticFamily::SubspaceS | AsymptoticFamily::SubspaceI => {
            if !(0.0..=0.5).contains(&rho) {
                return Err(out_of_domain(rho, "[0, 1/2]"));
            }
            let v = 1.0 - 2.0 * rho;
            Ok(if family == AsymptoticFamily::SubspaceS { v } else { v * v })
        }
        AsymptoticFamily::SumRank { q, n, m } => Ok(1.0 - sumrank_entropy(q, n, m, rho * n as f64)?),
        AsymptoticFamily::PermutationChebyshev => chebyshev_rate(rho),
    }
}

/// The radius ratio at which the Hamming threshold equals `rate`: `H_q^-1(1 - R)`.
pub fn hamming_radius_for_rate(q: u64, rate: f64) -> Result<f64> {
    crate::exact::q_entropy_inverse(q, 1.0 - rate)
}
