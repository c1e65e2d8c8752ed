#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use srg_core::linalg::schur;
use srg_core::{CMatrix, C64};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gaussian(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    let data = (0..rows * cols)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    CMatrix::new(rows, cols, data).unwrap()
}

pub fn real_gaussian(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let data = (0..n * n).map(|_| C64::new(rng.sample(StandardNormal), 0.0)).collect();
    CMatrix::new(n, n, data).unwrap()
}

pub fn unitary(rng: &mut ChaCha8Rng, n: usize) -> CMatrix {
    schur(&gaussian(rng, n, n)).unwrap().q
}

pub fn unit_complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(1.0, rng.random_range(0.0..std::f64::consts::TAU))
}

/// `U diag(d) U*` for a random unitary `U`.
pub fn normal_with(rng: &mut ChaCha8Rng, diag: &[C64]) -> CMatrix {
    let u = unitary(rng, diag.len());
    u.matmul(&CMatrix::from_diag(diag)).unwrap().matmul(&u.adjoint()).unwrap()
}

pub fn four_by_four() -> CMatrix {
    CMatrix::from_real_rows(&[
        vec![1.0, 0.0, -1.0, 0.0],
        vec![0.0, 2.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 1.0],
    ])
    .unwrap()
}
