//! Polynomials as coefficient slices, leading coefficient first.

use super::{general_eig, CMatrix, C64, ZERO};
use crate::error::{Result, SrgError};

/// Drops exactly-zero leading coefficients. An all-zero input yields `[0]`.
pub fn poly_trim(coeffs: &[C64]) -> Vec<C64> {
    match coeffs.iter().position(|&c| c != ZERO) {
        Some(i) => coeffs[i..].to_vec(),
        None => vec![ZERO],
    }
}

/// Horner evaluation.
pub fn poly_eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().fold(ZERO, |acc, &c| acc * z + c)
}

pub fn poly_mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// All roots via eigenvalues of the companion matrix, followed by a few
/// Newton steps against the original coefficients.
pub fn poly_roots(coeffs: &[C64]) -> Result<Vec<C64>> {
    let p = poly_trim(coeffs);
    if p.len() == 1 {
        return if p[0] == ZERO {
            Err(SrgError::ZeroPolynomial)
        } else {
            Err(SrgError::InvalidArgument(
                "poly_roots needs degree >= 1".into(),
            ))
        };
    }
    if p.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(SrgError::NonFinite("polynomial coefficients"));
    }
    let deg = p.len() - 1;
    let lead = p[0];
    let mut companion = CMatrix::zeros(deg, deg);
    for j in 0..deg {
        companion[(0, j)] = -p[j + 1] / lead;
    }
    for i in 1..deg {
        companion[(i, i - 1)] = C64::new(1.0, 0.0);
    }
    let mut roots = general_eig(&companion)?.values;

    let deriv: Vec<C64> = p[..deg]
        .iter()
        .enumerate()
        .map(|(i, &c)| c * (deg - i) as f64)
        .collect();
    for r in roots.iter_mut() {
        polish(&p, &deriv, r);
    }
    Ok(roots)
}

fn polish(p: &[C64], dp: &[C64], root: &mut C64) {
    let mut val = poly_eval(p, *root);
    for _ in 0..4 {
        let d = poly_eval(dp, *root);
        if d == ZERO || val == ZERO {
            return;
        }
        let cand = *root - val / d;
        let cval = poly_eval(p, cand);
        if cval.norm() < val.norm() {
            *root = cand;
            val = cval;
        } else {
            return;
        }
    }
}
