//! Fixtures shared by the benchmarks.

use num_complex::Complex64;
use srg_core::{CMatrix, RationalTF};

/// Deterministic dense complex matrix with entries in `[-1, 1] + [-1, 1]i`.
pub fn dense(n: usize, seed: u64) -> CMatrix {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    let data = (0..n * n).map(|_| Complex64::new(next(), next())).collect();
    CMatrix::new(n, n, data).expect("finite entries")
}

/// The 4x4 matrix with spectrum `{1, 1 + 2^(1/3), 1 + 2^(1/3) e^(+-2 pi i / 3)}`.
pub fn four_by_four() -> CMatrix {
    CMatrix::from_real_rows(&[
        vec![1.0, 0.0, -1.0, 0.0],
        vec![0.0, 2.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 1.0],
    ])
    .expect("finite entries")
}

/// `2 / (i omega + 1)^2`.
pub fn double_lag() -> RationalTF {
    RationalTF::from_real(&[2.0], &[1.0, 2.0, 1.0]).expect("valid transfer function")
}
