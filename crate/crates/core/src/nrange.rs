//! Numerical range `W(A) = { <Ax, x> : |x| = 1 }` of a square matrix.
//!
//! The boundary is traced with the rotation method. For each direction
//! `theta` the Hermitian matrix
//!
//! ```text
//! H(theta) = (e^{-i theta} A + e^{i theta} A*) / 2
//! ```
//!
//! has top eigenvalue `h(theta) = max { Re(e^{-i theta} z) : z in W(A) }`
//! (the support function), and `<A x, x>` for a top eigenvector `x` is a
//! boundary point where that maximum is attained. When the top eigenvalue
//! is (nearly) repeated the boundary has a flat face in that direction;
//! the face endpoints come from diagonalizing the compression of `A` to
//! the top eigenspace.
//!
//! Optionally the uniform sweep is refined: wherever the outer polygon of
//! support lines sits further than `refine_tol` from the inner polygon of
//! support points, the direction normal to the chord is evaluated too.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cgeom::{convex_hull_2d, ConvexPolygon};
use crate::error::{Result, SrgError};
use crate::linalg::{herm_eig, CMatrix, C64};

pub const DEFAULT_NUM_ANGLES: usize = 720;

const MIN_ANGLES: usize = 8;
const MAX_REFINE_DEPTH: usize = 40;
const MAX_REFINE_PER_INTERVAL: usize = 1 << 16;
const GOLDEN_ITERS: usize = 80;
/// Bracket width where golden-section search stops. The objective is
/// smooth at its maximum, so the value error is about the square of this.
const GOLDEN_BRACKET: f64 = 1e-8;

/// Sweep configuration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NRangeOptions {
    pub num_angles: usize,
    /// Refine until the outer/inner polygon gap is below this, if set.
    pub refine_tol: Option<f64>,
}

impl Default for NRangeOptions {
    fn default() -> Self {
        Self {
            num_angles: DEFAULT_NUM_ANGLES,
            refine_tol: None,
        }
    }
}

/// A boundary point of `W(A)` and the direction it supports.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupportPoint {
    pub theta: f64,
    pub point: C64,
}

/// Result of a support-function sweep.
#[derive(Clone, Debug)]
pub struct NRangeBoundary {
    operator: CMatrix,
    /// Ascending, in `[0, 2pi)`.
    pub angles: Vec<f64>,
    /// `h(theta)` for each entry of `angles`.
    pub support_values: Vec<f64>,
    /// Counter-clockwise; flat faces contribute both endpoints.
    pub support_points: Vec<SupportPoint>,
    pub hull: ConvexPolygon,
    /// `e^{-i theta}` for each angle, so membership queries avoid trig.
    directions: Vec<C64>,
}

#[derive(Clone, Debug)]
struct Sample {
    theta: f64,
    value: f64,
    points: Vec<C64>,
}

fn rotated_hermitian(a: &CMatrix, theta: f64) -> CMatrix {
    let n = a.rows();
    let rot = Complex64::from_polar(1.0, -theta);
    let mut h = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            h[(i, j)] = (rot * a[(i, j)] + (rot * a[(j, i)]).conj()) * 0.5;
        }
    }
    h
}

fn degeneracy_tol(a: &CMatrix) -> f64 {
    1e-10 * a.frobenius_norm().max(1.0)
}

/// The support function `h(theta) = lambda_max(H(theta))`.
pub fn support_function(a: &CMatrix, theta: f64) -> Result<f64> {
    check_square(a)?;
    let h = rotated_hermitian(a, theta);
    match h.rows() {
        1 => Ok(h[(0, 0)].re),
        2 => {
            let (p, q) = (h[(0, 0)].re, h[(1, 1)].re);
            Ok(0.5 * (p + q) + (0.5 * (p - q)).hypot(h[(0, 1)].norm()))
        }
        _ => Ok(herm_eig(&h)?.max_eigenvalue()),
    }
}

fn evaluate(a: &CMatrix, theta: f64, gap_tol: f64) -> Result<Sample> {
    let eig = herm_eig(&rotated_hermitian(a, theta))?;
    let n = a.rows();
    let top = eig.max_eigenvalue();
    let k = eig
        .eigenvalues
        .iter()
        .rev()
        .take_while(|&&l| l >= top - gap_tol)
        .count();
    let vecs = &eig.eigenvectors;
    let points = if k == 1 {
        vec![a.quadratic_form(&vecs.column(n - 1))]
    } else {
        // Orthonormal basis X of the top eigenspace; along the face the
        // boundary is traced by Im(e^{-i theta} <A x, x>), i.e. by the
        // Hermitian matrix K = Im(e^{-i theta} X* A X).
        let mut basis = CMatrix::zeros(n, k);
        for r in 0..n {
            for c in 0..k {
                basis[(r, c)] = vecs[(r, n - k + c)];
            }
        }
        let compressed = basis.adjoint().mul_unchecked(&a.mul_unchecked(&basis));
        let rot = Complex64::from_polar(1.0, -theta);
        let mut im_part = CMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                im_part[(i, j)] =
                    (rot * compressed[(i, j)] - (rot * compressed[(j, i)]).conj()) / C64::new(0.0, 2.0);
            }
        }
        let face = herm_eig(&im_part)?;
        (0..k)
            .map(|c| {
                let x = basis.mul_vec(&face.eigenvectors.column(c));
                a.quadratic_form(&x)
            })
            .collect()
    };
    Ok(Sample {
        theta,
        value: top,
        points,
    })
}

fn check_square(a: &CMatrix) -> Result<()> {
    if !a.is_square() || a.rows() == 0 {
        return Err(SrgError::NotSquare {
            op: "nrange",
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    Ok(())
}

/// Uniform sweep over `num_angles` directions `2 pi k / num_angles`.
pub fn nrange_boundary(a: &CMatrix, num_angles: usize) -> Result<NRangeBoundary> {
    nrange_boundary_with(
        a,
        &NRangeOptions {
            num_angles,
            refine_tol: None,
        },
    )
}

pub fn nrange_boundary_with(a: &CMatrix, opts: &NRangeOptions) -> Result<NRangeBoundary> {
    check_square(a)?;
    if opts.num_angles < MIN_ANGLES {
        return Err(SrgError::InvalidArgument(format!(
            "num_angles must be at least {MIN_ANGLES}, got {}",
            opts.num_angles
        )));
    }
    let gap_tol = degeneracy_tol(a);
    let n = opts.num_angles;
    let mut samples = (0..n)
        .into_par_iter()
        .map(|k| evaluate(a, TAU * k as f64 / n as f64, gap_tol))
        .collect::<Result<Vec<_>>>()?;

    if let Some(tol) = opts.refine_tol {
        let extra = (0..samples.len())
            .into_par_iter()
            .map(|i| {
                let lo = &samples[i];
                let mut hi = samples[(i + 1) % samples.len()].clone();
                if i + 1 == samples.len() {
                    hi.theta += TAU;
                }
                let mut out = Vec::new();
                let mut budget = MAX_REFINE_PER_INTERVAL;
                refine(a, lo, &hi, tol, gap_tol, 0, &mut budget, &mut out)?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        samples.extend(extra.into_iter().flatten().map(|mut s| {
            s.theta = s.theta.rem_euclid(TAU);
            s
        }));
        samples.sort_by(|x, y| x.theta.total_cmp(&y.theta));
    }

    let angles: Vec<f64> = samples.iter().map(|s| s.theta).collect();
    let support_values = samples.iter().map(|s| s.value).collect();
    let support_points: Vec<SupportPoint> = samples
        .iter()
        .flat_map(|s| {
            s.points.iter().map(move |&point| SupportPoint {
                theta: s.theta,
                point,
            })
        })
        .collect();
    let pts: Vec<C64> = support_points.iter().map(|s| s.point).collect();
    let hull = convex_hull_2d(&pts)?;
    let directions = angles.iter().map(|&t| Complex64::from_polar(1.0, -t)).collect();
    Ok(NRangeBoundary {
        operator: a.clone(),
        directions,
        angles,
        support_values,
        support_points,
        hull,
    })
}

/// Distance from the intersection of the two support lines to the chord
/// joining the two support points; zero if the lines are (nearly) parallel.
fn outer_gap(lo: &Sample, hi: &Sample) -> f64 {
    let pa = *lo.points.last().unwrap();
    let pb = hi.points[0];
    let chord = pb - pa;
    let len = chord.norm();
    if len == 0.0 {
        return 0.0;
    }
    let spread = hi.theta - lo.theta;
    // The outer vertex sees the chord under base angles summing to `spread`,
    // so its height is at most len * tan(spread / 2) / 2. This also caps the
    // round-off of the line intersection below when `spread` is tiny.
    let bound = 0.5 * len * (0.5 * spread).tan();
    let det = spread.sin();
    if det <= 1e-14 {
        return bound;
    }
    let (sa, ca) = lo.theta.sin_cos();
    let (sb, cb) = hi.theta.sin_cos();
    let x = (lo.value * sb - hi.value * sa) / det;
    let y = (ca * hi.value - cb * lo.value) / det;
    let outer = C64::new(x, y) - pa;
    // perpendicular distance from the outer vertex to the chord line
    ((chord.re * outer.im - chord.im * outer.re).abs() / len).min(bound)
}

#[allow(clippy::too_many_arguments)]
fn refine(
    a: &CMatrix,
    lo: &Sample,
    hi: &Sample,
    tol: f64,
    gap_tol: f64,
    depth: usize,
    budget: &mut usize,
    out: &mut Vec<Sample>,
) -> Result<()> {
    if depth >= MAX_REFINE_DEPTH || *budget == 0 || outer_gap(lo, hi) <= tol {
        return Ok(());
    }
    let chord = hi.points[0] - *lo.points.last().unwrap();
    // outward normal of a counter-clockwise chord
    let normal = (chord * C64::new(0.0, -1.0)).arg();
    let mut theta = lo.theta + (normal - lo.theta).rem_euclid(TAU);
    if !(theta > lo.theta && theta < hi.theta) {
        theta = 0.5 * (lo.theta + hi.theta);
    }
    *budget -= 1;
    let mid = evaluate(a, theta, gap_tol)?;
    refine(a, lo, &mid, tol, gap_tol, depth + 1, budget, out)?;
    out.push(mid.clone());
    refine(a, &mid, hi, tol, gap_tol, depth + 1, budget, out)
}

impl NRangeBoundary {
    pub fn operator(&self) -> &CMatrix {
        &self.operator
    }

    /// `max_k Re(e^{-i theta_k} z) - h(theta_k)` over the sampled angles.
    /// Positive means `z` is certainly outside `W(A)`.
    pub fn max_excess(&self, z: C64) -> f64 {
        self.directions
            .iter()
            .zip(&self.support_values)
            .map(|(&u, &h)| z.re * u.re - z.im * u.im - h)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Membership in the outer approximation `{ Re(e^{-i theta} z) <= h(theta) + tol }`.
    pub fn contains(&self, z: C64, tol: f64) -> bool {
        self.max_excess(z) <= tol
    }

    fn argmax_excess(&self, z: C64) -> (usize, f64) {
        self.directions
            .iter()
            .zip(&self.support_values)
            .map(|(&u, &h)| z.re * u.re - z.im * u.im - h)
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best })
    }

    /// Signed distance from `z` to the closure of `W(A)`: positive outside,
    /// negative inside (minus the distance to the boundary).
    ///
    /// For a compact convex set this equals `max_theta Re(e^{-i theta} z) - h(theta)`.
    /// The sampled maximum is polished by golden-section search between the
    /// neighbouring sample angles, using exact support-function evaluations.
    pub fn signed_distance(&self, z: C64) -> f64 {
        let (k, coarse) = self.argmax_excess(z);
        let m = self.angles.len();
        let prev = if k == 0 {
            self.angles[m - 1] - TAU
        } else {
            self.angles[k - 1]
        };
        let next = if k + 1 == m {
            self.angles[0] + TAU
        } else {
            self.angles[k + 1]
        };
        let phi = |t: f64| -> f64 {
            match support_function(&self.operator, t) {
                Ok(h) => (z * Complex64::from_polar(1.0, -t)).re - h,
                Err(_) => f64::NEG_INFINITY,
            }
        };
        let refined = golden_max(phi, prev, next);
        coarse.max(refined)
    }
}

fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - ratio * (b - a);
    let mut d = a + ratio * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERS {
        if (b - a).abs() < GOLDEN_BRACKET {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - ratio * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + ratio * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// Support-function membership test: `Re(e^{-i theta} z) <= h(theta) + tol`
/// for every sampled `theta`. A `false` answer is certified.
pub fn nrange_contains(a: &CMatrix, z: C64, tol: f64, num_angles: usize) -> Result<bool> {
    Ok(nrange_boundary(a, num_angles)?.contains(z, tol))
}
