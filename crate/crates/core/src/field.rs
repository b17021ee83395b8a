//! Finite fields `F_q`, `q <= 512`.
//!
//! Elements are indices `0..q`. For `q = p^e` an index `c_0 + c_1 p + ...`
//! stands for the polynomial `c_0 + c_1 x + ...` modulo a primitive
//! polynomial of degree `e`; the lexicographically first primitive
//! polynomial is found at construction time. Prime fields are plain
//! residues.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{invalid, Result};
use crate::exact::prime_power;

pub const MAX_Q: u64 = 512;

#[derive(Debug)]
pub struct Field {
    q: u32,
    p: u32,
    e: u32,
    /// Low-to-high coefficients of the monic modulus (length `e + 1`).
    modulus: Vec<u32>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Field {
    /// Shared instance for `q`; tables are built once per process.
    pub fn get(q: u64) -> Result<Arc<Field>> {
        static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().expect("field cache poisoned").get(&q) {
            return Ok(f.clone());
        }
        let f = Arc::new(Field::build(q)?);
        cache.lock().expect("field cache poisoned").insert(q, f.clone());
        Ok(f)
    }

    fn build(q: u64) -> Result<Field> {
        if q > MAX_Q {
            return Err(invalid(format!("field size {q} above the supported maximum {MAX_Q}")));
        }
        let (p, e) = prime_power(q).ok_or_else(|| invalid(format!("{q} is not a prime power")))?;
        let (q, p) = (q as u32, p as u32);
        let qs = q as usize;
        let digits = |mut a: u32| -> Vec<u32> {
            (0..e)
                .map(|_| {
                    let d = a % p;
                    a /= p;
                    d
                })
                .collect()
        };
        let undigits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);

        let mut add = vec![0u16; qs * qs];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = undigits(&s) as u16;
            }
        }

        let mut mul = vec![0u16; qs * qs];
        let modulus;
        if e == 1 {
            modulus = vec![0, 1];
            for a in 0..q {
                for b in 0..q {
                    mul[(a * q + b) as usize] = ((a * b) % p) as u16;
                }
            }
        } else {
            let (poly, exp) = first_primitive(p, e);
            modulus = poly;
            let mut log = vec![0u32; qs];
            for (i, &x) in exp.iter().enumerate() {
                log[x as usize] = i as u32;
            }
            for a in 1..q {
                for b in 1..q {
                    let l = (log[a as usize] + log[b as usize]) % (q - 1);
                    mul[(a * q + b) as usize] = exp[l as usize] as u16;
                }
            }
        }

        let mut neg = vec![0u16; qs];
        let mut inv = vec![0u16; qs];
        for a in 0..q {
            for b in 0..q {
                if add[(a * q + b) as usize] == 0 {
                    neg[a as usize] = b as u16;
                }
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b as u16;
                }
            }
        }
        Ok(Field { q, p, e, modulus, add, mul, neg, inv })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a * self.q + b) as usize] as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize] as u32
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize] as u32
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, mut k: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }
}

/// Lexicographically first monic primitive polynomial of degree `e` over
/// `F_p`, with the power table `x^0, ..., x^(q-2)` as element indices.
fn first_primitive(p: u32, e: u32) -> (Vec<u32>, Vec<u32>) {
    let q = p.pow(e);
    // low coefficients c_0..c_{e-1}, enumerated as an integer in base p
    for code in 0..q {
        let mut low = Vec::with_capacity(e as usize);
        let mut c = code;
        for _ in 0..e {
            low.push(c % p);
            c /= p;
        }
        if low[0] == 0 {
            continue;
        }
        if let Some(exp) = power_table(p, e, &low) {
            let mut poly = low;
            poly.push(1);
            return (poly, exp);
        }
    }
    unreachable!("a primitive polynomial exists for every degree")
}

/// Powers of `x` modulo `x^e + low`, or `None` if `x` is not a generator.
fn power_table(p: u32, e: u32, low: &[u32]) -> Option<Vec<u32>> {
    let q = p.pow(e);
    let e = e as usize;
    let mut cur = vec![0u32; e];
    cur[0] = 1;
    let mut seen = vec![false; q as usize];
    let mut exp = Vec::with_capacity(q as usize - 1);
    for _ in 0..q - 1 {
        let idx = cur.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        if seen[idx as usize] {
            return None;
        }
        seen[idx as usize] = true;
        exp.push(idx);
        // multiply by x, reducing x^e = -low
        let top = cur[e - 1];
        for i in (1..e).rev() {
            cur[i] = cur[i - 1];
        }
        cur[0] = 0;
        for i in 0..e {
            cur[i] = (cur[i] + (p - low[i]) * top) % p;
        }
    }
    (cur[0] == 1 && cur[1..].iter().all(|&c| c == 0)).then_some(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(q: u64) {
        let f = Field::get(q).unwrap();
        let q = q as u32;
        for a in 0..q {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in 0..q {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in 0..q {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                }
            }
        }
    }

    #[test]
    fn small_fields_satisfy_axioms() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            check_axioms(q);
        }
    }

    #[test]
    fn known_moduli() {
        assert_eq!(Field::get(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::get(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::get(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
    }

    #[test]
    fn frobenius_and_orders() {
        for q in [64u64, 81, 125, 243, 256, 512] {
            let f = Field::get(q).unwrap();
            let p = f.characteristic();
            for a in 0..q as u32 {
                assert_eq!(f.pow(a, q), a);
                for b in [1u32, 2, (q - 1) as u32] {
                    let lhs = f.pow(f.add(a, b), p as u64);
                    let rhs = f.add(f.pow(a, p as u64), f.pow(b, p as u64));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::get(6).is_err());
        assert!(Field::get(1).is_err());
        assert!(Field::get(1024).is_err());
    }
}
