//! Seeded random draws.
//!
//! Every sample index gets its own generator derived from `(seed, stream, index)`,
//! so results never depend on how work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::Octonion;
use crate::scalar::Rational;

/// splitmix64 finalizer
fn mix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn derive_seed(seed: u64, stream: u64, index: u64) -> u64 {
    mix(mix(mix(seed) ^ stream) ^ index)
}

pub fn rng_for(seed: u64, stream: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(seed, stream, index))
}

// Stream tags keep independent consumers of the same seed apart.
pub const STREAM_CONSISTENCY: u64 = 1;
pub const STREAM_REALIZE: u64 = 2;
pub const STREAM_ORBIT: u64 = 3;
pub const STREAM_MALCEV: u64 = 4;
pub const STREAM_MALCEV_RAY: u64 = 5;
pub const STREAM_SEMIHOMOG: u64 = 6;
pub const STREAM_RATIO: u64 = 7;
pub const STREAM_SELFCHECK: u64 = 8;
pub const STREAM_WITNESS: u64 = 9;

/// Small random rational: numerator in [-9, 9], denominator in [1, 6].
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

pub fn random_rational_octonion<R: Rng>(rng: &mut R) -> Octonion<Rational> {
    Octonion::from_coords(std::array::from_fn(|_| random_rational(rng)))
}

pub fn random_rational_pure<R: Rng>(rng: &mut R) -> Octonion<Rational> {
    let mut o = random_rational_octonion(rng);
    o.coords[0] = Rational::integer(0);
    o
}

/// Coordinates uniform in [-1, 1].
pub fn random_real_octonion<R: Rng>(rng: &mut R) -> Octonion<f64> {
    Octonion::from_coords(std::array::from_fn(|_| rng.gen_range(-1.0..=1.0)))
}

pub fn random_real_pure<R: Rng>(rng: &mut R) -> Octonion<f64> {
    let mut o = random_real_octonion(rng);
    o.coords[0] = 0.0;
    o
}
