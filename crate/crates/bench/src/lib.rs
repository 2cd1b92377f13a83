//! Seeded inputs shared by the benches.

use deflation_core::random::{random_angle, random_u2, random_u4};
use deflation_core::{DeflationInput, Mat2, Mat4};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn angle_inputs(n: usize, seed: u64) -> Vec<DeflationInput> {
    let mut r = rng(seed);
    (0..n)
        .map(|_| {
            DeflationInput::new(
                random_angle(&mut r),
                random_angle(&mut r),
                random_angle(&mut r),
                random_angle(&mut r),
            )
        })
        .collect()
}

pub fn u2_tuples<const K: usize>(n: usize, seed: u64) -> Vec<[Mat2; K]> {
    let mut r = rng(seed);
    (0..n).map(|_| std::array::from_fn(|_| random_u2(&mut r))).collect()
}

pub fn u4s(n: usize, seed: u64) -> Vec<Mat4> {
    let mut r = rng(seed);
    (0..n).map(|_| random_u4(&mut r)).collect()
}
