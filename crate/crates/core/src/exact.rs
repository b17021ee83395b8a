//! Exact combinatorics and the real-valued scalar helpers used by the bound
//! engine: binomials, Gaussian binomials, q-ary entropy and its inverse, and
//! the constant `gamma_q = prod_{i>=1} (1 - q^-i)^-1`.
//!
//! Everything returning [`BigUint`] is computed with integer arithmetic only.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn pow(base: u64, exp: u64) -> BigUint {
    BigUint::from(base).pow(exp as u32)
}

/// Number of `k`-dimensional subspaces of `F_q^n`.
pub fn gaussian_binomial(n: u64, k: u64, q: u64) -> Result<BigUint> {
    if q < 2 {
        return Err(invalid(format!("gaussian binomial needs q >= 2, got {q}")));
    }
    if k > n {
        return Err(invalid(format!("gaussian binomial needs k <= n, got k={k} n={n}")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= pow(q, n - i) - 1u32;
        den *= pow(q, k - i) - 1u32;
    }
    Ok(num / den)
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Number of `rows x cols` matrices of rank exactly `r` over `F_q`.
pub fn rank_count(q: u64, rows: u64, cols: u64, r: u64) -> BigUint {
    if r > rows.min(cols) {
        return BigUint::zero();
    }
    let mut acc = gaussian_binomial(rows, r, q).expect("r <= rows");
    let qm = pow(q, cols);
    for j in 0..r {
        acc *= &qm - pow(q, j);
    }
    acc
}

/// Returns `(p, e)` with `q = p^e` for a prime `p`, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut e = 0;
    while rest % p == 0 {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn log_q(q: u64, x: f64) -> f64 {
    x.ln() / (q as f64).ln()
}

/// `H_q(x) = x log_q(q-1) - x log_q x - (1-x) log_q(1-x)` on `[0, (q-1)/q]`.
pub fn q_entropy(q: u64, x: f64) -> Result<f64> {
    if q < 2 {
        return Err(invalid(format!("entropy base must be >= 2, got {q}")));
    }
    let top = (q - 1) as f64 / q as f64;
    if !(0.0..=top + 1e-15).contains(&x) {
        return Err(invalid(format!("entropy argument {x} outside [0, {top}]")));
    }
    let x = x.min(top);
    let xlogx = |t: f64| if t <= 0.0 { 0.0 } else { t * log_q(q, t) };
    let mut h = -xlogx(x) - xlogx(1.0 - x);
    if q > 2 {
        h += x * log_q(q, (q - 1) as f64);
    }
    Ok(h)
}

/// The unique `x` in `[0, (q-1)/q]` with `H_q(x) = y`, by bisection to `1e-12`.
pub fn q_entropy_inverse(q: u64, y: f64) -> Result<f64> {
    if q < 2 {
        return Err(invalid(format!("entropy base must be >= 2, got {q}")));
    }
    if !(0.0..=1.0).contains(&y) {
        return Err(invalid(format!("entropy value {y} outside [0, 1]")));
    }
    let (mut lo, mut hi) = (0.0_f64, (q - 1) as f64 / q as f64);
    if y == 1.0 {
        return Ok(hi);
    }
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if q_entropy(q, mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `prod_{i>=1} (1 - q^-i)^-1`, truncated once a factor is within `1e-15` of 1.
pub fn gamma_q(q: u64) -> f64 {
    assert!(q >= 2, "gamma_q needs q >= 2");
    let mut acc = 1.0;
    let mut qi = 1.0;
    loop {
        qi /= q as f64;
        let factor = 1.0 / (1.0 - qi);
        if factor - 1.0 < 1e-15 {
            return acc;
        }
        acc *= factor;
    }
}

/// `log_base` of a size, kept as a real exponent.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogSize {
    pub base: u64,
    pub exponent: f64,
}

impl LogSize {
    pub fn new(base: u64, exponent: f64) -> Self {
        LogSize { base, exponent }
    }

    /// Exact integer part (largest `e` with `base^e <= value`) plus an `f64`
    /// fractional part kept strictly below one.
    pub fn from_count(value: &BigUint, base: u64) -> Self {
        assert!(base >= 2 && !value.is_zero(), "log of zero or base < 2");
        let b = BigUint::from(base);
        // Start from a float guess and correct it exactly.
        let guess = (log2_big(value) / (base as f64).log2()).floor().max(0.0) as u64;
        let mut e = guess.saturating_sub(1);
        while b.pow((e + 1) as u32) <= *value {
            e += 1;
        }
        while e > 0 && b.pow(e as u32) > *value {
            e -= 1;
        }
        let rest = log2_big(value) / (base as f64).log2() - e as f64;
        let frac = rest.clamp(0.0, 1.0 - 2f64.powi(-40));
        LogSize { base, exponent: e as f64 + frac }
    }

    /// `base^floor(exponent)`.
    pub fn floor_count(&self) -> BigUint {
        pow(self.base, self.exponent.floor().max(0.0) as u64)
    }

    pub fn log2(&self) -> f64 {
        self.exponent * (self.base as f64).log2()
    }
}

/// `log2` of an arbitrarily large integer.
pub fn log2_big(value: &BigUint) -> f64 {
    let bits = value.bits();
    if bits <= 1000 {
        return value.to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (value >> shift).to_f64().expect("64-bit prefix fits in f64");
    top.log2() + shift as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pascal(n: usize, k: usize) -> u128 {
        let mut row = vec![1u128];
        for _ in 0..n {
            let mut next = vec![1u128; row.len() + 1];
            for i in 1..row.len() {
                next[i] = row[i - 1] + row[i];
            }
            row = next;
        }
        row.get(k).copied().unwrap_or(0)
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(7, 1), BigUint::from(7u32));
        assert_eq!(binomial(4, 2), BigUint::from(6u32));
        assert_eq!(binomial(10, 5), BigUint::from(pascal(10, 5)));
        assert_eq!(binomial(3, 5), BigUint::zero());
        for n in 0..40 {
            for k in 0..=n {
                assert_eq!(binomial(n as u64, k as u64), BigUint::from(pascal(n, k)));
            }
        }
    }

    #[test]
    fn gaussian_binomial_values() {
        assert_eq!(gaussian_binomial(2, 1, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(gaussian_binomial(9, 0, 5).unwrap(), BigUint::one());
        assert_eq!(gaussian_binomial(4, 2, 2).unwrap(), BigUint::from(35u32));
        assert!(gaussian_binomial(2, 3, 2).is_err());
        assert!(gaussian_binomial(2, 1, 1).is_err());
    }

    #[test]
    fn gaussian_binomial_symmetry() {
        for q in [2, 3, 4, 5] {
            for n in 0..9 {
                for k in 0..=n {
                    assert_eq!(gaussian_binomial(n, k, q).unwrap(), gaussian_binomial(n, n - k, q).unwrap());
                }
            }
        }
    }

    #[test]
    fn rank_counts_sum_to_space() {
        for (q, r, c) in [(2, 2, 2), (2, 3, 4), (3, 2, 3), (4, 3, 3)] {
            let total: BigUint = (0..=r.min(c)).map(|s| rank_count(q, r, c, s)).sum();
            assert_eq!(total, pow(q, r * c));
        }
        // rank-1 2x2 binary matrices: 9
        assert_eq!(rank_count(2, 2, 2, 1), BigUint::from(9u32));
    }

    #[test]
    fn entropy_values() {
        assert_eq!(q_entropy(2, 0.0).unwrap(), 0.0);
        assert!((q_entropy(2, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((q_entropy(2, 0.25).unwrap() - 0.811278124459133).abs() < 1e-12);
        assert!((q_entropy(3, 2.0 / 3.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(q_entropy(2, 0.6).is_err());
        assert!(q_entropy(2, -0.1).is_err());
    }

    #[test]
    fn entropy_inverse_values() {
        assert_eq!(q_entropy_inverse(2, 1.0).unwrap(), 0.5);
        for y in [0.1, 0.5, 0.9, 0.999] {
            let x = q_entropy_inverse(3, y).unwrap();
            assert!((q_entropy(3, x).unwrap() - y).abs() < 1e-10);
        }
        assert!(q_entropy_inverse(2, 0.0).unwrap().abs() < 1e-11);
        assert!((q_entropy_inverse(2, 0.811278).unwrap() - 0.25).abs() < 1e-6);
        assert!(q_entropy_inverse(2, 1.5).is_err());
    }

    #[test]
    fn gamma_values() {
        assert!((gamma_q(2) - 3.463).abs() < 5e-4);
        assert!((gamma_q(3) - 1.785).abs() < 5e-4);
        assert!((gamma_q(4) - 1.452).abs() < 5e-4);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(512), Some((2, 9)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(49), Some((7, 2)));
    }

    #[test]
    fn log_size_round_trip() {
        for base in [2u64, 3, 5, 7] {
            let mut v = BigUint::one();
            while v.bits() < 1024 {
                let ls = LogSize::from_count(&v, base);
                assert!(ls.floor_count() <= v);
                assert!(ls.floor_count() * base > v);
                let v1 = &v + 1u32;
                let ls1 = LogSize::from_count(&v1, base);
                assert!(ls1.floor_count() <= v1);
                v *= base;
            }
        }
    }
}
