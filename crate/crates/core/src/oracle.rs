//! Brute-force SRG sampling straight from the definition, and containment
//! checks of the samples against computed regions.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::cgeom::{bk_forward, ExtComplex, SrgRegion};
use crate::error::{Result, SrgError};
use crate::linalg::{inner, vec_norm, CMatrix, C64};
use crate::srg_matrix::Field;

/// Generator used by [`sample_srg`]. Chunk `k` of `CHUNK` consecutive
/// samples draws from `ChaCha8Rng::seed_from_u64(seed)` on stream `k`.
pub const SAMPLER_RNG: &str = "ChaCha8Rng (rand_chacha 0.9), seed_from_u64(seed), stream = chunk index";

/// Samples per independently seeded chunk.
pub const CHUNK: usize = 4096;

fn unit_vector(rng: &mut ChaCha8Rng, n: usize, field: Field) -> Vec<C64> {
    loop {
        let x: Vec<C64> = (0..n)
            .map(|_| {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = match field {
                    Field::Real => 0.0,
                    Field::Complex => rng.sample(StandardNormal),
                };
                C64::new(re, im)
            })
            .collect();
        let norm = vec_norm(&x);
        if norm > 0.0 {
            return x.into_iter().map(|v| v / norm).collect();
        }
    }
}

/// `count` random unit inputs `x`, each contributing
/// `|Tx| exp(+-i acos(Re<Tx, x> / |Tx|))`, or a single `0` when `Tx = 0`.
/// Deterministic in `(t, field, count, seed)` regardless of thread count.
pub fn sample_srg(t: &CMatrix, field: Field, count: usize, seed: u64) -> Result<Vec<ExtComplex>> {
    if !t.is_square() || t.rows() == 0 {
        return Err(SrgError::NotSquare {
            op: "sample_srg",
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    if count == 0 {
        return Err(SrgError::InvalidArgument("sample count must be at least 1".into()));
    }
    if field == Field::Real && !t.is_real() {
        return Err(SrgError::NonRealEntries);
    }
    let n = t.rows();
    let chunks = count.div_ceil(CHUNK);
    let parts: Vec<Vec<ExtComplex>> = (0..chunks)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(k as u64);
            let len = CHUNK.min(count - k * CHUNK);
            let mut out = Vec::with_capacity(2 * len);
            for _ in 0..len {
                let x = unit_vector(&mut rng, n, field);
                let y = t.mul_vec(&x);
                let gain = vec_norm(&y);
                if gain == 0.0 {
                    out.push(ExtComplex::Finite(C64::new(0.0, 0.0)));
                    continue;
                }
                let cos = (inner(&y, &x).re / gain).clamp(-1.0, 1.0);
                let z = Complex64::from_polar(gain, cos.acos());
                out.push(ExtComplex::Finite(z));
                out.push(ExtComplex::Finite(z.conj()));
            }
            out
        })
        .collect();
    Ok(parts.concat())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub total: usize,
    pub contained: usize,
    /// Largest amount by which a sample misses the region (0 if all are in).
    pub max_violation: f64,
    /// The sample attaining `max_violation`, or the least deep one if all are in.
    pub worst_point: Option<ExtComplex>,
    pub generator: &'static str,
}

impl SampleReport {
    pub fn all_contained(&self) -> bool {
        self.contained == self.total
    }
}

/// How far `z` misses `region`: disk-side excess over the region, or the
/// distance to its boundary curve for boundary-only regions.
pub fn sample_violation(region: &SrgRegion, z: ExtComplex) -> f64 {
    if region.boundary_only() {
        region.boundary_distance(z)
    } else {
        region.disk_excess(bk_forward(z).value())
    }
}

pub fn check_containment(samples: &[ExtComplex], region: &SrgRegion, tol: f64) -> SampleReport {
    let violations: Vec<f64> = samples.par_iter().map(|&z| sample_violation(region, z)).collect();
    let contained = violations.iter().filter(|&&v| v <= tol).count();
    let worst = violations
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, &v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((i, v)),
        });
    SampleReport {
        total: samples.len(),
        contained,
        max_violation: worst.map_or(0.0, |(_, v)| v.max(0.0)),
        worst_point: worst.map(|(i, _)| samples[i]),
        generator: SAMPLER_RNG,
    }
}
