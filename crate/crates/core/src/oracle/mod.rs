//! Exhaustive ground-truth computations on enumerable spaces.

mod bitset;
mod construct;
mod listdec;
mod search;
mod universe;

pub use bitset::Bitset;
pub use construct::probabilistic_construct;
pub use listdec::{max_list_decodable, ListDecodableSearch};
pub use search::{max_packing, min_covering, SearchMode, DEFAULT_NODE_BUDGET};
pub use universe::Universe;

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::space::{contains, digits, distance, undigits, Point, SpaceSpec, DEFAULT_CAP};

/// A finite duplicate-free set of points of one space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitCode {
    space: SpaceSpec,
    codewords: Vec<Point>,
}

impl ExplicitCode {
    pub fn new(space: SpaceSpec, codewords: Vec<Point>) -> Result<Self> {
        space.validate()?;
        let mut seen = HashSet::with_capacity(codewords.len());
        for (i, w) in codewords.iter().enumerate() {
            if !contains(&space, w) {
                return Err(invalid(format!("codeword {i} ({w:?}) is not a point of the {} space", space.name())));
            }
            if !seen.insert(w) {
                return Err(invalid(format!("codeword {i} ({w:?}) is a duplicate")));
            }
        }
        Ok(ExplicitCode { space, codewords })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn codewords(&self) -> &[Point] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListProfile {
    pub radius: u64,
    pub l1: u64,
    pub l2: u64,
}

/// Exact nonnegative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let g = num.gcd(&den);
        Ratio { num: num / g, den: den / g }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplicityStats {
    pub max_mul: u64,
    pub multi_count: u64,
    pub multiratio: Ratio,
}

fn nonempty(c: &ExplicitCode) -> Result<()> {
    if c.is_empty() {
        return Err(invalid("the code is empty"));
    }
    Ok(())
}

/// Covering radius by multi-source BFS on Hamming spaces and by scanning
/// every point otherwise.
pub fn covering_radius(c: &ExplicitCode) -> Result<u64> {
    covering_radius_with_cap(c, DEFAULT_CAP)
}

pub fn covering_radius_with_cap(c: &ExplicitCode, cap: u64) -> Result<u64> {
    nonempty(c)?;
    if let SpaceSpec::Hamming { q, n } = *c.space() {
        let _ = crate::space::enumerate_space(c.space(), cap)?;
        let size = q.pow(n as u32) as usize;
        let mut dist = vec![u8::MAX; size];
        let mut queue = VecDeque::new();
        for w in c.codewords() {
            let i = undigits(w.as_vector().expect("hamming vector"), q) as usize;
            dist[i] = 0;
            queue.push_back(i);
        }
        let mut radius = 0;
        while let Some(i) = queue.pop_front() {
            radius = radius.max(dist[i]);
            let mut v = digits(i as u64, q, n as usize);
            for pos in 0..n as usize {
                let orig = v[pos];
                for s in 0..q as u32 {
                    if s == orig {
                        continue;
                    }
                    v[pos] = s;
                    let j = undigits(&v, q) as usize;
                    if dist[j] == u8::MAX {
                        dist[j] = dist[i] + 1;
                        queue.push_back(j);
                    }
                }
                v[pos] = orig;
            }
        }
        return Ok(radius as u64);
    }
    let pts = crate::space::points(c.space(), cap)?;
    let space = c.space();
    Ok(pts
        .par_iter()
        .map(|x| {
            let mut best = u64::MAX;
            for w in c.codewords() {
                best = best.min(distance(space, x, w).expect("same space"));
                if best == 0 {
                    break;
                }
            }
            best
        })
        .max()
        .unwrap_or(0))
}

/// `|B(x, r) ∩ C|` for every point `x`, in enumeration order.
pub fn ball_counts(c: &ExplicitCode, r: u64, cap: u64) -> Result<Vec<u32>> {
    let u = Universe::new(c.space(), cap)?;
    let mut counts = vec![0u32; u.len()];
    if matches!(c.space(), SpaceSpec::Hamming { .. }) {
        for w in c.codewords() {
            let i = u.index_of(w).expect("validated codeword");
            for j in u.ball(i, r) {
                counts[j] += 1;
            }
        }
        return Ok(counts);
    }
    let space = c.space();
    counts.par_iter_mut().zip(u.points.par_iter()).for_each(|(slot, x)| {
        *slot = c.codewords().iter().filter(|w| distance(space, x, w).expect("same space") <= r).count() as u32;
    });
    Ok(counts)
}

/// Minimum and maximum number of codewords in a radius-`r` ball.
pub fn list_profile(c: &ExplicitCode, r: u64) -> Result<ListProfile> {
    let counts = ball_counts(c, r, DEFAULT_CAP)?;
    let l1 = counts.iter().copied().min().unwrap_or(0) as u64;
    let l2 = counts.iter().copied().max().unwrap_or(0) as u64;
    Ok(ListProfile { radius: r, l1, l2 })
}

/// Covering multiplicity and the fraction of points in two or more balls.
pub fn multiplicity_stats(c: &ExplicitCode, r: u64) -> Result<MultiplicityStats> {
    let counts = ball_counts(c, r, DEFAULT_CAP)?;
    let max_mul = counts.iter().copied().max().unwrap_or(0) as u64;
    let multi_count = counts.iter().filter(|&&m| m >= 2).count() as u64;
    Ok(MultiplicityStats { max_mul, multi_count, multiratio: Ratio::new(multi_count, counts.len() as u64) })
}

pub fn min_distance(c: &ExplicitCode) -> Result<u64> {
    if c.len() < 2 {
        return Err(invalid("minimum distance needs at least two codewords"));
    }
    let w = c.codewords();
    let space = c.space();
    Ok((0..w.len())
        .into_par_iter()
        .map(|i| (i + 1..w.len()).map(|j| distance(space, &w[i], &w[j]).expect("same space")).min().unwrap_or(u64::MAX))
        .min()
        .expect("at least one pair"))
}

/// Outcome of checking `|C| <= L2 * |C'|` (and the packing sandwich).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringBoundCheck {
    pub radius: u64,
    pub cover_radius: u64,
    /// `false` when the cover does not reach radius `r`; no verdict is given then.
    pub precondition_holds: bool,
    pub code_size: u64,
    pub cover_size: u64,
    pub l1: u64,
    pub l2: u64,
    pub upper_holds: Option<bool>,
    pub packing_size: Option<u64>,
    pub packing_min_distance: Option<u64>,
    pub lower_holds: Option<bool>,
}

impl CoveringBoundCheck {
    pub fn holds(&self) -> bool {
        self.upper_holds == Some(true) && self.lower_holds != Some(false)
    }
}

pub fn verify_covering_bound(
    c: &ExplicitCode,
    cover: &ExplicitCode,
    r: u64,
    packing: Option<&ExplicitCode>,
) -> Result<CoveringBoundCheck> {
    if c.space() != cover.space() || packing.is_some_and(|p| p.space() != c.space()) {
        return Err(invalid("codes live in different spaces"));
    }
    let cover_radius = covering_radius(cover)?;
    let profile = list_profile(c, r)?;
    let precondition_holds = cover_radius <= r;
    let (code_size, cover_size) = (c.len() as u64, cover.len() as u64);
    let upper_holds = precondition_holds.then_some(code_size <= profile.l2 * cover_size);
    let mut out = CoveringBoundCheck {
        radius: r,
        cover_radius,
        precondition_holds,
        code_size,
        cover_size,
        l1: profile.l1,
        l2: profile.l2,
        upper_holds,
        packing_size: None,
        packing_min_distance: None,
        lower_holds: None,
    };
    if let Some(p) = packing {
        out.packing_size = Some(p.len() as u64);
        let d = if p.len() >= 2 { min_distance(p)? } else { u64::MAX };
        out.packing_min_distance = (d != u64::MAX).then_some(d);
        if d >= 2 * r + 1 && profile.l1 >= 1 {
            out.lower_holds = Some(profile.l1 * p.len() as u64 <= code_size);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::points;

    pub(crate) fn hamming_code(words: &[&str]) -> ExplicitCode {
        let n = words[0].len() as u64;
        let pts = words.iter().map(|w| Point::Vector(w.bytes().map(|b| (b - b'0') as u32).collect())).collect();
        ExplicitCode::new(SpaceSpec::hamming(2, n), pts).unwrap()
    }

    fn hamming_7_4() -> ExplicitCode {
        let g = [[1, 0, 0, 0, 1, 1, 0], [0, 1, 0, 0, 1, 0, 1], [0, 0, 1, 0, 0, 1, 1], [0, 0, 0, 1, 1, 1, 1]];
        let words = (0..16u32)
            .map(|m| {
                let mut v = vec![0u32; 7];
                for (i, row) in g.iter().enumerate() {
                    if m >> i & 1 == 1 {
                        for j in 0..7 {
                            v[j] ^= row[j];
                        }
                    }
                }
                Point::Vector(v)
            })
            .collect();
        ExplicitCode::new(SpaceSpec::hamming(2, 7), words).unwrap()
    }

    #[test]
    fn rejects_bad_codes() {
        let s = SpaceSpec::hamming(2, 3);
        assert!(ExplicitCode::new(s.clone(), vec![Point::Vector(vec![0, 0, 2])]).is_err());
        assert!(ExplicitCode::new(s.clone(), vec![Point::Vector(vec![0, 0])]).is_err());
        let dup = vec![Point::Vector(vec![0, 0, 1]), Point::Vector(vec![0, 0, 1])];
        assert!(ExplicitCode::new(s, dup).is_err());
    }

    #[test]
    fn covering_radii() {
        let s = SpaceSpec::hamming(2, 3);
        let all = ExplicitCode::new(s.clone(), points(&s, 64).unwrap()).unwrap();
        assert_eq!(covering_radius(&all).unwrap(), 0);
        assert_eq!(covering_radius(&hamming_code(&["000", "111"])).unwrap(), 1);
        assert_eq!(covering_radius(&hamming_7_4()).unwrap(), 1);
        assert_eq!(covering_radius(&hamming_code(&["0000"])).unwrap(), 4);
    }

    // BFS path against a direct min-max scan.
    #[test]
    fn bfs_matches_scan() {
        let s = SpaceSpec::hamming(3, 4);
        let pts = points(&s, 100).unwrap();
        for stride in [5usize, 13, 29] {
            let code: Vec<Point> = pts.iter().step_by(stride).cloned().collect();
            let c = ExplicitCode::new(s.clone(), code.clone()).unwrap();
            let scan =
                pts.iter().map(|x| code.iter().map(|w| distance(&s, x, w).unwrap()).min().unwrap()).max().unwrap();
            assert_eq!(covering_radius(&c).unwrap(), scan);
        }
    }

    #[test]
    fn profiles() {
        let rep = hamming_code(&["000", "111"]);
        assert_eq!(list_profile(&rep, 1).unwrap(), ListProfile { radius: 1, l1: 1, l2: 1 });
        assert_eq!(list_profile(&rep, 3).unwrap(), ListProfile { radius: 3, l1: 2, l2: 2 });
        assert_eq!(list_profile(&hamming_7_4(), 1).unwrap(), ListProfile { radius: 1, l1: 1, l2: 1 });
        assert_eq!(list_profile(&rep, 0).unwrap().l1, 0);
    }

    #[test]
    fn multiplicities() {
        let perfect = multiplicity_stats(&hamming_7_4(), 1).unwrap();
        assert_eq!(perfect.multi_count, 0);
        assert_eq!(perfect.max_mul, 1);
        let pair = hamming_code(&["000", "100"]);
        let m = multiplicity_stats(&pair, 1).unwrap();
        assert_eq!(m.multi_count, 2);
        assert_eq!(m.multiratio, Ratio::new(1, 4));
        let single = multiplicity_stats(&hamming_code(&["010"]), 1).unwrap();
        assert_eq!((single.max_mul, single.multiratio.num), (1, 0));
    }

    #[test]
    fn min_distances() {
        assert_eq!(min_distance(&hamming_code(&["000", "111"])).unwrap(), 3);
        assert_eq!(min_distance(&hamming_7_4()).unwrap(), 3);
        assert!(min_distance(&hamming_code(&["000"])).is_err());
    }

    #[test]
    fn covering_bound_examples() {
        let s = SpaceSpec::hamming(2, 3);
        let all = ExplicitCode::new(s.clone(), points(&s, 64).unwrap()).unwrap();
        let rep = hamming_code(&["000", "111"]);
        let chk = verify_covering_bound(&all, &rep, 1, None).unwrap();
        assert_eq!((chk.l2, chk.upper_holds), (4, Some(true)));
        assert_eq!(chk.code_size, chk.l2 * chk.cover_size);
        let h = hamming_7_4();
        let chk = verify_covering_bound(&h, &h, 1, Some(&h)).unwrap();
        assert!(chk.holds());
        assert_eq!(chk.lower_holds, Some(true));
        let bad = verify_covering_bound(&all, &hamming_code(&["000"]), 1, None).unwrap();
        assert!(!bad.precondition_holds);
        assert_eq!(bad.upper_holds, None);
    }
}
