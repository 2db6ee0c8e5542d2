//! Seeded random instance generation for cross-checking sweeps.

use crate::instance::Instance;
use crate::rational::rat;
use rand::Rng;

/// Draws an instance with n uniform in 1..=max_n and item sizes d/60 for
/// d uniform in 1..=60. Every size is positive and at most 1, so the
/// result always constructs.
pub fn random_grid_instance<R: Rng>(rng: &mut R, k: u32, max_n: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let sizes = (0..n).map(|_| rat(rng.gen_range(1..=60), 60)).collect();
    Instance::new(k, sizes).expect("grid sizes are always valid")
}
