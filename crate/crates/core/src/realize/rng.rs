//! Every random choice in the pipeline comes from ChaCha8 seeded with the
//! user seed via `seed_from_u64`, on a stream chosen by stage and attempt.
//! Output is therefore a pure function of `(d, n, seed)` and the config.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Stage {
    DrawingJitter = 1,
    SnapY = 2,
    SnapX = 3,
    Lift = 4,
}

pub(crate) fn stream(seed: u64, stage: Stage, attempt: u32) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((stage as u64) << 32) | u64::from(attempt));
    rng
}
