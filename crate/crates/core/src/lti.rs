//! SRGs of scalar rational transfer functions.
//!
//! A transfer function `h(omega) = b(i omega) / a(i omega)` defines a
//! multiplication operator on `L2`. Its graph is normalized with a stable
//! rational `s` satisfying `|s|^2 (|h|^2 + 1) = 1`, found by spectral
//! factorization of `a a~ + b b~` (the tilde is the paraconjugate
//! `p~(s) = conj(p(-conj s))`). Each frequency then contributes the disk
//! point `f(h(omega))`, and the region is the convex hull of those points.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::cgeom::{bk_forward, convex_hull_2d, DiskPoint, ExtComplex, SrgRegion};
use crate::error::{Result, SrgError};
use crate::linalg::{poly_eval, poly_mul, poly_roots, poly_trim, C64};

/// Roots with `|Re r| <= AXIS_TOL * max(1, |r|)` count as imaginary-axis roots.
pub const AXIS_TOL: f64 = 1e-8;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// `h(omega) = b(i omega) / a(i omega)`, coefficients leading first.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalTF {
    num: Vec<C64>,
    den: Vec<C64>,
}

/// A frequency on the extended real line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Frequency {
    Finite(f64),
    Infinity,
}

impl RationalTF {
    pub fn new(num: &[C64], den: &[C64]) -> Result<Self> {
        if num.iter().chain(den).any(|c| !(c.re.is_finite() && c.im.is_finite())) {
            return Err(SrgError::NonFinite("transfer function coefficients"));
        }
        if num.is_empty() || den.is_empty() {
            return Err(SrgError::EmptyInput("transfer function coefficients"));
        }
        let den = poly_trim(den);
        if den == [ZERO] {
            return Err(SrgError::ZeroPolynomial);
        }
        Ok(Self {
            num: poly_trim(num),
            den,
        })
    }

    pub fn from_real(num: &[f64], den: &[f64]) -> Result<Self> {
        let cv = |v: &[f64]| v.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>();
        Self::new(&cv(num), &cv(den))
    }

    pub fn num(&self) -> &[C64] {
        &self.num
    }

    pub fn den(&self) -> &[C64] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num == [ZERO]
    }

    /// `(q, p)`: numerator and denominator degrees.
    pub fn degrees(&self) -> (usize, usize) {
        (self.num.len() - 1, self.den.len() - 1)
    }

    /// More zeros than poles: the operator is unbounded.
    pub fn is_improper(&self) -> bool {
        let (q, p) = self.degrees();
        !self.is_zero() && q > p
    }

    /// Frequencies `omega` with `a(i omega) = 0`, ascending.
    pub fn axis_poles(&self) -> Result<Vec<f64>> {
        if self.den.len() < 2 {
            return Ok(Vec::new());
        }
        let mut out: Vec<f64> = poly_roots(&self.den)?
            .into_iter()
            .filter(|r| r.re.abs() <= AXIS_TOL * r.norm().max(1.0))
            .map(|r| r.im)
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() <= AXIS_TOL * a.abs().max(1.0));
        Ok(out)
    }

    /// `h(omega)`; `Infinity` at exact poles and, for improper `h`, at `omega = inf`.
    pub fn eval(&self, omega: Frequency) -> ExtComplex {
        match omega {
            Frequency::Infinity => {
                let (q, p) = self.degrees();
                if self.is_zero() || q < p {
                    ExtComplex::Finite(ZERO)
                } else if q == p {
                    ExtComplex::Finite(self.num[0] / self.den[0])
                } else {
                    ExtComplex::Infinity
                }
            }
            Frequency::Finite(w) => {
                let s = C64::new(0.0, w);
                let a = poly_eval(&self.den, s);
                let b = poly_eval(&self.num, s);
                if a == ZERO {
                    if b == ZERO {
                        ExtComplex::Finite(ZERO)
                    } else {
                        ExtComplex::Infinity
                    }
                } else {
                    let h = b / a;
                    if h.re.is_finite() && h.im.is_finite() {
                        ExtComplex::Finite(h)
                    } else {
                        ExtComplex::Infinity
                    }
                }
            }
        }
    }

    /// Whether `omega` sits on an imaginary-axis root of the denominator,
    /// judged by `|a(i omega)|` relative to the magnitude of its terms.
    pub fn is_pole(&self, omega: Frequency) -> bool {
        match omega {
            Frequency::Infinity => self.is_improper(),
            Frequency::Finite(w) => {
                let s = C64::new(0.0, w);
                let scale: f64 = self
                    .den
                    .iter()
                    .enumerate()
                    .map(|(j, c)| c.norm() * w.abs().powi((self.den.len() - 1 - j) as i32))
                    .sum();
                poly_eval(&self.den, s).norm() <= 1e-12 * scale
            }
        }
    }
}

/// `s(omega) = s_num(i omega) / s_den(i omega)` with `|s|^2 (|h|^2 + 1) = 1`.
///
/// `s_den` is monic and Hurwitz. `s_num = a / scale` where `a` is the
/// denominator of `h`, and `scale^2 c c~ = a a~ + b b~` for `c = s_den`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralFactor {
    pub s_num: Vec<C64>,
    pub s_den: Vec<C64>,
    pub scale: f64,
}

impl SpectralFactor {
    pub fn eval(&self, omega: f64) -> C64 {
        let s = C64::new(0.0, omega);
        poly_eval(&self.s_num, s) / poly_eval(&self.s_den, s)
    }

    /// Largest `| |s|^2 (|h|^2 + 1) - 1 |` over 64 frequencies spread over
    /// `tan` of a uniform angle grid, skipping poles of `h`.
    pub fn max_defect(&self, h: &RationalTF) -> f64 {
        (0..64)
            .map(|k| (std::f64::consts::PI * (k as f64 + 0.5) / 64.0 - FRAC_PI_2).tan())
            .filter(|&w| !h.is_pole(Frequency::Finite(w)))
            .map(|w| match h.eval(Frequency::Finite(w)) {
                ExtComplex::Finite(hv) => (self.eval(w).norm_sqr() * (hv.norm_sqr() + 1.0) - 1.0).abs(),
                ExtComplex::Infinity => 0.0,
            })
            .fold(0.0, f64::max)
    }
}

/// `p~`: conjugate coefficients with `s -> -s`.
fn paraconj(p: &[C64]) -> Vec<C64> {
    let d = p.len() - 1;
    p.iter()
        .enumerate()
        .map(|(j, c)| if (d - j) % 2 == 0 { c.conj() } else { -c.conj() })
        .collect()
}

fn poly_add(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len().max(b.len());
    let mut out = vec![ZERO; n];
    for (i, &c) in a.iter().enumerate() {
        out[n - a.len() + i] += c;
    }
    for (i, &c) in b.iter().enumerate() {
        out[n - b.len() + i] += c;
    }
    out
}

pub fn spectral_factorize(h: &RationalTF) -> Result<SpectralFactor> {
    let a = h.den();
    let b = h.num();
    if h.is_zero() {
        return Ok(SpectralFactor {
            s_num: vec![ONE],
            s_den: vec![ONE],
            scale: 1.0,
        });
    }
    let p = poly_trim(&poly_add(&poly_mul(a, &paraconj(a)), &poly_mul(b, &paraconj(b))));
    let m = (p.len() - 1) / 2;
    if p.len() % 2 == 0 {
        return Err(SrgError::Internal(format!(
            "a a~ + b b~ has odd degree {}",
            p.len() - 1
        )));
    }
    let mut c = vec![ONE];
    if m > 0 {
        let roots = poly_roots(&p)?;
        if let Some(r) = roots.iter().find(|r| r.re.abs() <= AXIS_TOL * r.norm().max(1.0)) {
            return Err(SrgError::FactorizationDegenerate { re: r.re, im: r.im });
        }
        let mut left: Vec<C64> = roots.into_iter().filter(|r| r.re < 0.0).collect();
        if left.len() != m {
            return Err(SrgError::Internal(format!(
                "expected {m} left-half-plane roots, found {}",
                left.len()
            )));
        }
        left.sort_by(|x, y| x.im.total_cmp(&y.im).then(x.re.total_cmp(&y.re)));
        for r in left {
            c = poly_mul(&c, &[ONE, -r]);
        }
        // for real data the roots pair up and c is real up to round-off
        if p.iter().all(|z| z.im == 0.0) {
            c.iter_mut().for_each(|z| z.im = 0.0);
        }
    }
    // scale^2 |c(0)|^2 = |a(0)|^2 + |b(0)|^2, i.e. the relation at omega = 0
    let p0 = poly_eval(&p, ZERO).re;
    let c0 = poly_eval(&c, ZERO).norm_sqr();
    let scale = (p0 / c0).sqrt();
    if !(scale.is_finite() && scale > 0.0) {
        return Err(SrgError::Internal(format!("invalid spectral factor gain {scale}")));
    }
    Ok(SpectralFactor {
        s_num: a.iter().map(|z| z / scale).collect(),
        s_den: c,
        scale,
    })
}

/// The disk point contributed by frequency `omega`:
/// `|s|^2 (-1 - i h - i conj(h) + |h|^2) = f(h(omega))`.
///
/// Evaluated through `s` and `h s` so poles need no special casing: at a
/// pole `s = 0`, `|h s| = 1` and the point is `1 = f(inf)`.
pub fn lti_disk_point(h: &RationalTF, sf: &SpectralFactor, omega: Frequency) -> Result<DiskPoint> {
    match omega {
        Frequency::Infinity => Ok(bk_forward(h.eval(Frequency::Infinity))),
        Frequency::Finite(w) => {
            let iw = C64::new(0.0, w);
            let c = poly_eval(&sf.s_den, iw);
            let s = poly_eval(&sf.s_num, iw) / c;
            let hs = poly_eval(h.num(), iw) / (c * sf.scale);
            let i = C64::new(0.0, 1.0);
            let pt = -s.norm_sqr() - i * s.conj() * hs - i * hs.conj() * s + hs.norm_sqr();
            DiskPoint::new(pt)
        }
    }
}

/// Frequencies sampled for an LTI region.
#[derive(Clone, Debug, PartialEq)]
pub struct FreqGrid {
    pub omegas: Vec<f64>,
    pub include_infinity: bool,
}

impl FreqGrid {
    pub fn new(mut omegas: Vec<f64>, include_infinity: bool) -> Result<Self> {
        if omegas.iter().any(|w| !w.is_finite()) {
            return Err(SrgError::NonFinite("frequency grid"));
        }
        omegas.sort_by(f64::total_cmp);
        omegas.dedup();
        Ok(Self {
            omegas,
            include_infinity,
        })
    }
}

/// `omega_k = tan(pi (2k - n) / (2n + 2))` for `k = 0..=n`, plus infinity and
/// points at and around every imaginary-axis pole.
pub fn default_grid(h: &RationalTF, n: usize) -> Result<FreqGrid> {
    if n < 16 {
        return Err(SrgError::InvalidArgument(format!("grid size must be at least 16, got {n}")));
    }
    let mut omegas: Vec<f64> = (0..=n)
        .map(|k| {
            let t = std::f64::consts::PI * (2.0 * k as f64 - n as f64) / (2.0 * n as f64 + 2.0);
            t.tan()
        })
        .collect();
    for wp in h.axis_poles()? {
        omegas.push(wp);
        for d in [1e-1, 1e-2, 1e-3, 1e-4] {
            let step = d * wp.abs().max(1.0);
            omegas.push(wp - step);
            omegas.push(wp + step);
        }
    }
    FreqGrid::new(omegas, true)
}

/// One frequency-response sample.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResponseSample {
    pub omega: Frequency,
    pub value: ExtComplex,
    pub disk: Complex64,
    pub pole: bool,
}

#[derive(Clone, Debug)]
pub struct LtiSrg {
    pub region: SrgRegion,
    pub factor: SpectralFactor,
    /// `h` and its disk image on the grid frequencies, in grid order.
    pub response: Vec<ResponseSample>,
    /// Number of disk points that went into the hull after refinement.
    pub hull_samples: usize,
}

/// Chord deviation below which the frequency curve is not subdivided further.
pub const DEFAULT_CURVE_TOL: f64 = 1e-9;
const MIN_CURVE_BUDGET: usize = 1024;
const MAX_CURVE_DEPTH: usize = 30;
const MAX_CURVE_POINTS: usize = 1 << 20;

pub fn lti_srg(h: &RationalTF, grid: &FreqGrid) -> Result<LtiSrg> {
    lti_srg_with(h, grid, Some(DEFAULT_CURVE_TOL))
}

/// As [`lti_srg`]; `curve_tol` enables adaptive subdivision of the frequency
/// curve in the variable `atan(omega)` until every chord is within
/// `curve_tol` of the curve midpoint. `None` uses the grid as is.
pub fn lti_srg_with(h: &RationalTF, grid: &FreqGrid, curve_tol: Option<f64>) -> Result<LtiSrg> {
    if grid.omegas.is_empty() && !grid.include_infinity {
        return Err(SrgError::EmptyInput("frequency grid"));
    }
    let factor = spectral_factorize(h)?;
    let poles = h.axis_poles()?;
    let unbounded = h.is_improper() || !poles.is_empty();
    let include_infinity = grid.include_infinity || unbounded;

    let response = grid
        .omegas
        .par_iter()
        .map(|&w| {
            let omega = Frequency::Finite(w);
            Ok(ResponseSample {
                omega,
                value: h.eval(omega),
                disk: lti_disk_point(h, &factor, omega)?.value(),
                pole: h.is_pole(omega),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inf_point = lti_disk_point(h, &factor, Frequency::Infinity)?.value();

    let mut disk: Vec<Complex64> = response.iter().map(|r| r.disk).collect();
    if include_infinity {
        disk.push(inf_point);
    }
    if let Some(tol) = curve_tol {
        // curve parameterized by phi = atan(omega); phi = +-pi/2 is omega = inf
        let mut knots: Vec<(f64, Complex64)> = grid
            .omegas
            .iter()
            .zip(&response)
            .map(|(&w, r)| (w.atan(), r.disk))
            .collect();
        if include_infinity {
            knots.insert(0, (-FRAC_PI_2, inf_point));
            knots.push((FRAC_PI_2, inf_point));
        }
        let budget = (MAX_CURVE_POINTS / knots.len().max(1)).max(MIN_CURVE_BUDGET);
        let extra = knots
            .par_windows(2)
            .map(|pair| {
                let mut out = Vec::new();
                let mut left = budget;
                subdivide(h, &factor, pair[0], pair[1], tol, 0, &mut left, &mut out)?;
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        disk.extend(extra.into_iter().flatten());
    }
    let hull = convex_hull_2d(&disk)?;
    let hull_samples = disk.len();
    let region = SrgRegion::from_disk_hull(hull, unbounded);
    Ok(LtiSrg {
        region,
        factor,
        response,
        hull_samples,
    })
}

fn phi_point(h: &RationalTF, sf: &SpectralFactor, phi: f64) -> Result<Complex64> {
    let omega = if phi.abs() >= FRAC_PI_2 {
        Frequency::Infinity
    } else {
        Frequency::Finite(phi.tan())
    };
    Ok(lti_disk_point(h, sf, omega)?.value())
}

#[allow(clippy::too_many_arguments)]
fn subdivide(
    h: &RationalTF,
    sf: &SpectralFactor,
    lo: (f64, Complex64),
    hi: (f64, Complex64),
    tol: f64,
    depth: usize,
    budget: &mut usize,
    out: &mut Vec<Complex64>,
) -> Result<()> {
    if depth >= MAX_CURVE_DEPTH || *budget == 0 {
        return Ok(());
    }
    let phi = 0.5 * (lo.0 + hi.0);
    if phi <= lo.0 || phi >= hi.0 {
        return Ok(());
    }
    let mid = phi_point(h, sf, phi)?;
    *budget -= 1;
    let chord = hi.1 - lo.1;
    let len = chord.norm();
    let off = mid - lo.1;
    let dev = if len == 0.0 {
        off.norm()
    } else {
        (chord.re * off.im - chord.im * off.re).abs() / len
    };
    out.push(mid);
    if dev <= tol {
        return Ok(());
    }
    subdivide(h, sf, lo, (phi, mid), tol, depth + 1, budget, out)?;
    subdivide(h, sf, (phi, mid), hi, tol, depth + 1, budget, out)
}
