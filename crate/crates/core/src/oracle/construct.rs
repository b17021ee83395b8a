use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Result};
use crate::space::DEFAULT_CAP;

use super::{covering_radius, ExplicitCode, Universe};

/// For each cover codeword, draws `l` points uniformly (with replacement)
/// from its covering-radius ball; returns the deduplicated union.
///
/// Codeword `i` uses the ChaCha8 stream `i` of `seed`, so the result is
/// reproducible and independent of evaluation order.
pub fn probabilistic_construct(cover: &ExplicitCode, l: u64, seed: u64) -> Result<ExplicitCode> {
    if l == 0 {
        return Err(invalid("list size L must be positive"));
    }
    let r = covering_radius(cover)?;
    let u = Universe::new(cover.space(), DEFAULT_CAP)?;
    let mut seen = vec![false; u.len()];
    let mut picked = Vec::new();
    for (i, w) in cover.codewords().iter().enumerate() {
        let ball = u.ball(u.index_of(w).expect("validated codeword"), r);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        for _ in 0..l {
            let j = ball[rng.gen_range(0..ball.len())];
            if !seen[j] {
                seen[j] = true;
                picked.push(j);
            }
        }
    }
    let words = picked.into_iter().map(|j| u.points[j].clone()).collect();
    ExplicitCode::new(cover.space().clone(), words)
}
