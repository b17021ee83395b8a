//! Alternating-sign Krawtchouk polynomials
//! `K_k(x) = sum_j (-1)^j C(x, j) C(n - x, k - j) (q - 1)^(k - j)`.

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::exact::{binomial, pow};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KrawtchoukParams {
    pub k: u64,
    pub q: u64,
    pub n: u64,
}

impl KrawtchoukParams {
    pub fn new(k: u64, q: u64, n: u64) -> Result<Self> {
        if q < 2 || n < 1 || k > n {
            return Err(invalid(format!("Krawtchouk parameters need q>=2, n>=1, k<=n; got k={k} q={q} n={n}")));
        }
        Ok(KrawtchoukParams { k, q, n })
    }
}

/// Exact value at an integer point `0 <= x <= n`.
pub fn krawtchouk_eval(p: KrawtchoukParams, x: u64) -> Result<BigInt> {
    if x > p.n {
        return Err(invalid(format!("Krawtchouk argument {x} outside [0, {}]", p.n)));
    }
    let mut acc = BigInt::zero();
    for j in 0..=p.k {
        let term = BigInt::from(binomial(x, j) * binomial(p.n - x, p.k - j) * pow(p.q - 1, p.k - j));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc)
}

fn falling_binomial(x: f64, j: u64) -> f64 {
    let mut acc = 1.0;
    for i in 0..j {
        acc *= (x - i as f64) / (i + 1) as f64;
    }
    acc
}

/// The polynomial extended to real `x` via falling factorials.
pub fn krawtchouk_eval_real(p: KrawtchoukParams, x: f64) -> f64 {
    let n = p.n as f64;
    let qm1 = (p.q - 1) as f64;
    (0..=p.k)
        .map(|j| {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            sign * falling_binomial(x, j) * falling_binomial(n - x, p.k - j) * qm1.powi((p.k - j) as i32)
        })
        .sum()
}

/// Smallest positive root `x(k, q, n)`: integer sign-change scan, then
/// bisection on the real extension down to `1e-9`.
pub fn krawtchouk_smallest_root(p: KrawtchoukParams) -> Result<f64> {
    if p.k == 0 {
        return Err(invalid("the degree-0 Krawtchouk polynomial has no roots"));
    }
    let mut prev = krawtchouk_eval(p, 0)?;
    for x in 1..=p.n {
        let cur = krawtchouk_eval(p, x)?;
        if cur.is_zero() {
            return Ok(x as f64);
        }
        if cur.sign() != prev.sign() {
            return Ok(bisect(p, (x - 1) as f64, x as f64, prev.sign()));
        }
        prev = cur;
    }
    Err(Error::NoPositiveRoot { k: p.k, q: p.q, n: p.n })
}

fn bisect(p: KrawtchoukParams, mut lo: f64, mut hi: f64, lo_sign: Sign) -> f64 {
    let positive_at_lo = lo_sign == Sign::Plus;
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        let v = krawtchouk_eval_real(p, mid);
        if v == 0.0 {
            return mid;
        }
        if (v > 0.0) == positive_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `K_k(x)` as `f64` for reporting.
pub fn krawtchouk_eval_f64(p: KrawtchoukParams, x: u64) -> Result<f64> {
    Ok(krawtchouk_eval(p, x)?.to_f64().unwrap_or(f64::NAN))
}
