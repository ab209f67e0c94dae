//! Seeded random generation of test data: vectors, matrices and multilinear
//! maps with small integer coefficients. All randomized audits in the crate
//! and the CLI go through this module so runs are reproducible from a seed.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multilin::MultiLin;
use crate::qlinalg::{q_int, Matrix, Q};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random integer in [-bound, bound] as a rational.
pub fn random_q(rng: &mut ChaCha8Rng, bound: i64) -> Q {
    q_int(rng.gen_range(-bound..=bound))
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize, bound: i64) -> Vec<Q> {
    (0..n).map(|_| random_q(rng, bound)).collect()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_q(rng, bound))
}

pub fn random_multilin(
    rng: &mut ChaCha8Rng,
    shape_in: Vec<usize>,
    dim_out: usize,
    bound: i64,
) -> MultiLin {
    let size: usize = shape_in.iter().product::<usize>() * dim_out;
    let coeffs = (0..size).map(|_| random_q(rng, bound)).collect();
    MultiLin::from_flat(shape_in, dim_out, coeffs)
}
