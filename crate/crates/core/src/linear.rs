//! Linear codes over `F_q`: constructions, syndrome covering radius and
//! dual weight statistics.

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::exact::pow;
use crate::field::Field;
use crate::matrix::Matrix;
use crate::oracle::ExplicitCode;
use crate::space::{digits, undigits, Point, SpaceSpec, DEFAULT_CAP};

#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Arc<Field>,
    n: usize,
    generator: Matrix,
    parity: Matrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualStats {
    pub dual_weights: BTreeSet<u64>,
    pub s: u64,
    pub dual_distance: Option<u64>,
    /// The dual is the zero code (`k = n`), so `s` and the dual distance
    /// carry no information.
    pub degenerate: bool,
}

fn check_cap(q: u64, e: usize, cap: u64) -> Result<()> {
    let size = pow(q, e as u64);
    if size > BigUint::from(cap) {
        return Err(Error::CapExceeded { size: size.to_string(), cap });
    }
    Ok(())
}

impl LinearCode {
    /// Rejects generators whose rows are linearly dependent.
    pub fn from_generator(q: u64, generator: &Matrix) -> Result<Self> {
        let field = Field::get(q)?;
        if generator.data().iter().any(|&x| x as u64 >= q) {
            return Err(invalid(format!("generator has entries outside F_{q}")));
        }
        let (g, piv) = generator.rref(&field);
        if piv.len() != generator.rows() {
            return Err(invalid(format!(
                "generator rows are dependent (rank {} < {} rows)",
                piv.len(),
                generator.rows()
            )));
        }
        let parity = g.nullspace(&field);
        Ok(LinearCode { n: generator.cols(), generator: g, parity, field })
    }

    pub fn from_parity(q: u64, parity: &Matrix) -> Result<Self> {
        let field = Field::get(q)?;
        let (h, piv) = parity.rref(&field);
        if piv.len() != parity.rows() {
            return Err(invalid("parity-check rows are dependent"));
        }
        let generator = h.nullspace(&field);
        Ok(LinearCode { n: parity.cols(), generator: generator.rref(&field).0, parity: h, field })
    }

    /// Evaluations of `1, x, ..., x^(k-1)` at the given points (default: the
    /// first `n` field elements).
    pub fn rs_code(q: u64, n: usize, k: usize, eval_points: Option<&[u32]>) -> Result<Self> {
        let field = Field::get(q)?;
        if k == 0 || k > n || n as u64 > q {
            return Err(invalid(format!("Reed-Solomon needs 1 <= k <= n <= q, got q={q} n={n} k={k}")));
        }
        let pts: Vec<u32> = match eval_points {
            Some(p) => p.to_vec(),
            None => (0..n as u32).collect(),
        };
        if pts.len() != n || pts.iter().any(|&x| x as u64 >= q) {
            return Err(invalid("evaluation points must be n field elements"));
        }
        if pts.iter().collect::<BTreeSet<_>>().len() != n {
            return Err(invalid("evaluation points repeat"));
        }
        let mut g = Matrix::zeros(k, n);
        for (j, &x) in pts.iter().enumerate() {
            for i in 0..k {
                g.set(i, j, field.pow(x, i as u64));
            }
        }
        LinearCode::from_generator(q, &g)
    }

    /// `[(q^m-1)/(q-1), (q^m-1)/(q-1) - m, 3]_q`: the parity matrix has one
    /// column per projective point of `F_q^m`.
    pub fn hamming_code(q: u64, m: usize) -> Result<Self> {
        if m < 2 {
            return Err(invalid("Hamming codes need m >= 2"));
        }
        Field::get(q)?;
        let mut cols = Vec::new();
        for idx in 1..q.pow(m as u32) {
            let v = digits(idx, q, m);
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                cols.push(v);
            }
        }
        let h = Matrix::from_rows(m, &cols).transpose();
        LinearCode::from_parity(q, &h)
    }

    /// Uniformly random `k x n` generator, redrawn until it has rank `k`.
    pub fn random<R: Rng>(q: u64, n: usize, k: usize, rng: &mut R) -> Result<Self> {
        let field = Field::get(q)?;
        if k > n {
            return Err(invalid("dimension exceeds length"));
        }
        loop {
            let data = (0..k * n).map(|_| rng.gen_range(0..q as u32)).collect();
            let g = Matrix::from_vec(k, n, data);
            if g.rank(&field) == k {
                return LinearCode::from_generator(q, &g);
            }
        }
    }

    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &Matrix {
        &self.generator
    }

    pub fn parity(&self) -> &Matrix {
        &self.parity
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn encode(&self, msg: &[u32]) -> Vec<u32> {
        self.generator.left_mul_vec(&self.field, msg)
    }

    pub fn syndrome(&self, word: &[u32]) -> Vec<u32> {
        self.parity.mul_vec(&self.field, word)
    }

    /// Smallest `l` such that every syndrome is a combination of at most
    /// `l` parity-check columns (BFS over `F_q^(n-k)`).
    pub fn syndrome_covering_radius(&self) -> Result<u64> {
        self.syndrome_covering_radius_with_cap(DEFAULT_CAP)
    }

    pub fn syndrome_covering_radius_with_cap(&self, cap: u64) -> Result<u64> {
        let r = self.n - self.k();
        check_cap(self.q(), r, cap)?;
        if r == 0 {
            return Ok(0);
        }
        let q = self.q();
        let f = &self.field;
        let steps: Vec<Vec<u32>> = (0..self.n)
            .flat_map(|j| {
                let col: Vec<u32> = (0..r).map(|i| self.parity.get(i, j)).collect();
                (1..q as u32).map(move |a| col.iter().map(|&c| f.mul(a, c)).collect::<Vec<u32>>())
            })
            .collect();
        let size = q.pow(r as u32) as usize;
        let mut dist = vec![u32::MAX; size];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        let mut radius = 0;
        while let Some(s) = queue.pop_front() {
            radius = radius.max(dist[s]);
            let v = digits(s as u64, q, r);
            for step in &steps {
                let w: Vec<u32> = v.iter().zip(step).map(|(&a, &b)| f.add(a, b)).collect();
                let t = undigits(&w, q) as usize;
                if dist[t] == u32::MAX {
                    dist[t] = dist[s] + 1;
                    queue.push_back(t);
                }
            }
        }
        if dist.contains(&u32::MAX) {
            return Err(invalid("parity-check matrix does not have full row rank"));
        }
        Ok(radius as u64)
    }

    fn span(&self, basis: &Matrix, cap: u64) -> Result<Vec<Vec<u32>>> {
        check_cap(self.q(), basis.rows(), cap)?;
        let q = self.q();
        Ok((0..q.pow(basis.rows() as u32))
            .map(|i| basis.left_mul_vec(&self.field, &digits(i, q, basis.rows())))
            .collect())
    }

    pub fn dual_stats(&self) -> Result<DualStats> {
        let words = self.span(&self.parity, DEFAULT_CAP)?;
        let dual_weights: BTreeSet<u64> =
            words.iter().map(|w| w.iter().filter(|&&x| x != 0).count() as u64).filter(|&w| w > 0).collect();
        Ok(DualStats {
            s: dual_weights.len() as u64,
            dual_distance: dual_weights.iter().next().copied(),
            degenerate: dual_weights.is_empty(),
            dual_weights,
        })
    }

    pub fn enumerate_codewords(&self) -> Result<ExplicitCode> {
        self.enumerate_codewords_with_cap(DEFAULT_CAP)
    }

    pub fn enumerate_codewords_with_cap(&self, cap: u64) -> Result<ExplicitCode> {
        let words = self.span(&self.generator, cap)?.into_iter().map(Point::Vector).collect();
        ExplicitCode::new(SpaceSpec::hamming(self.q(), self.n as u64), words)
    }

    /// Minimum nonzero codeword weight.
    pub fn min_distance(&self) -> Result<u64> {
        let words = self.span(&self.generator, DEFAULT_CAP)?;
        words
            .iter()
            .map(|w| w.iter().filter(|&&x| x != 0).count() as u64)
            .filter(|&w| w > 0)
            .min()
            .ok_or_else(|| invalid("the zero code has no minimum distance"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use crate::oracle::{covering_radius, list_profile};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reed_solomon() {
        let rs = LinearCode::rs_code(5, 4, 2, None).unwrap();
        assert_eq!(rs.min_distance().unwrap(), 3);
        assert_eq!(rs.enumerate_codewords().unwrap().len(), 25);
        let full = LinearCode::rs_code(5, 4, 4, None).unwrap();
        assert_eq!(full.syndrome_covering_radius().unwrap(), 0);
        assert_eq!(LinearCode::rs_code(7, 7, 3, None).unwrap().syndrome_covering_radius().unwrap(), 4);
        assert_eq!(LinearCode::rs_code(5, 5, 2, None).unwrap().syndrome_covering_radius().unwrap(), 3);
        assert!(LinearCode::rs_code(5, 6, 2, None).is_err());
        assert!(LinearCode::rs_code(5, 3, 2, Some(&[1, 1, 2])).is_err());
        let custom = LinearCode::rs_code(7, 3, 2, Some(&[6, 2, 4])).unwrap();
        assert_eq!(custom.min_distance().unwrap(), 2);
    }

    #[test]
    fn hamming_codes() {
        let h = LinearCode::hamming_code(2, 3).unwrap();
        assert_eq!((h.n(), h.k()), (7, 4));
        assert_eq!(h.syndrome_covering_radius().unwrap(), 1);
        assert_eq!(h.min_distance().unwrap(), 3);
        let t = LinearCode::hamming_code(3, 2).unwrap();
        assert_eq!((t.n(), t.k()), (4, 2));
        let code = t.enumerate_codewords().unwrap();
        assert_eq!(list_profile(&code, 1).unwrap().l2, 1);
        assert_eq!(list_profile(&code, 1).unwrap().l1, 1);
        let rep = LinearCode::hamming_code(2, 2).unwrap();
        assert_eq!((rep.n(), rep.k()), (3, 1));
        assert!(LinearCode::hamming_code(2, 1).is_err());
    }

    #[test]
    fn hamming_codes_are_perfect() {
        for (q, m) in [(2u64, 3usize), (2, 4), (3, 2), (3, 3), (4, 2), (5, 2)] {
            let h = LinearCode::hamming_code(q, m).unwrap();
            let v = 1 + h.n() as u64 * (q - 1);
            assert_eq!(pow(q, h.k() as u64) * v, pow(q, h.n() as u64));
            assert_eq!(h.syndrome_covering_radius().unwrap(), 1);
        }
    }

    #[test]
    fn dual_statistics() {
        let h = LinearCode::hamming_code(2, 3).unwrap();
        let d = h.dual_stats().unwrap();
        assert_eq!(d.dual_weights, BTreeSet::from([4]));
        assert_eq!((d.s, d.dual_distance, d.degenerate), (1, Some(4), false));
        let rep = LinearCode::hamming_code(2, 2).unwrap();
        assert_eq!(rep.dual_stats().unwrap().dual_weights, BTreeSet::from([2]));
        let full = LinearCode::from_generator(3, &Matrix::identity(3)).unwrap();
        let d = full.dual_stats().unwrap();
        assert!(d.degenerate);
        assert_eq!(d.s, 0);
    }

    #[test]
    fn dependent_rows_rejected() {
        let g = Matrix::from_rows(3, &[vec![1, 1, 0], vec![1, 1, 0]]);
        assert!(LinearCode::from_generator(2, &g).is_err());
    }

    #[test]
    fn parity_is_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for q in [2u64, 3, 4] {
            for _ in 0..10 {
                let c = LinearCode::random(q, 7, 3, &mut rng).unwrap();
                let f = Field::get(q).unwrap();
                assert!(c.generator().mul(&f, &c.parity().transpose()).is_zero());
                assert_eq!(c.parity().rank(&f), 4);
            }
        }
    }

    #[test]
    fn syndrome_radius_matches_exhaustive() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for q in [2u64, 3] {
            for n in 3..8 {
                for k in 1..n {
                    let c = LinearCode::random(q, n, k, &mut rng).unwrap();
                    let r = c.syndrome_covering_radius().unwrap();
                    assert_eq!(r, covering_radius(&c.enumerate_codewords().unwrap()).unwrap());
                    assert!(r <= (n - k) as u64);
                    let d = c.dual_stats().unwrap();
                    assert!(r <= d.s);
                }
            }
        }
    }

    #[test]
    fn weight_enumerator_sums() {
        let c = LinearCode::hamming_code(2, 4).unwrap();
        let code = c.enumerate_codewords().unwrap();
        assert_eq!(code.len(), 1 << 11);
        // 35 words of weight 3 in the [15,11] Hamming code: C(15,2)/3
        let w3 = code.codewords().iter().filter(|p| p.as_vector().unwrap().iter().sum::<u32>() == 3).count();
        assert_eq!(BigUint::from(w3 as u64) * 3u32, binomial(15, 2));
    }
}
