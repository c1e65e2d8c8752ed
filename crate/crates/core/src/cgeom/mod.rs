//! Extended complex plane, the Beltrami-Klein map and its set-valued
//! inverse, planar convex hulls, and hyperbolic hulls built from them.
//!
//! The forward map
//!
//! ```text
//! f(z) = 1 - 2 (1 + i Re z) / (1 + |z|^2),    f(inf) = 1
//! ```
//!
//! sends the extended plane onto the closed unit disk and generalized
//! circles centred on the real axis onto chords. It cannot tell `z` from
//! `conj(z)`, so the inverse returns a conjugate pair.

mod hull;
mod region;

use std::fmt;

use num_complex::Complex64;

use crate::error::{Result, SrgError};

pub use hull::{convex_hull_2d, ConvexPolygon};
pub use region::{hull_bk, region_contains, SrgRegion};

/// Slack allowed outside the unit disk before a point is rejected.
pub const EPS_DISK: f64 = 1e-9;

/// `1 - |w|^2` at or below this counts as the unit circle in [`bk_inverse`].
const RIM_SNAP: f64 = 8.0 * f64::EPSILON;

/// A point of the extended complex plane.
#[derive(Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    /// Rejects NaN/inf components; use [`ExtComplex::Infinity`] for the point at infinity.
    pub fn finite(z: Complex64) -> Result<Self> {
        if z.re.is_finite() && z.im.is_finite() {
            Ok(Self::Finite(z))
        } else {
            Err(SrgError::NonFinite("ExtComplex::finite"))
        }
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Self::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match *self {
            Self::Finite(z) => Some(z),
            Self::Infinity => None,
        }
    }

    pub fn conj(&self) -> Self {
        match *self {
            Self::Finite(z) => Self::Finite(z.conj()),
            Self::Infinity => Self::Infinity,
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        debug_assert!(z.re.is_finite() && z.im.is_finite());
        Self::Finite(z)
    }
}

impl From<f64> for ExtComplex {
    fn from(x: f64) -> Self {
        Self::from(Complex64::new(x, 0.0))
    }
}

impl fmt::Debug for ExtComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

/// A point of the closed unit disk.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    /// Accepts `|w| <= 1 + EPS_DISK`, pulling excursions back onto the circle.
    pub fn new(w: Complex64) -> Result<Self> {
        if !(w.re.is_finite() && w.im.is_finite()) {
            return Err(SrgError::NonFinite("DiskPoint::new"));
        }
        let r = w.norm();
        if r > 1.0 + EPS_DISK {
            return Err(SrgError::OutOfDisk { re: w.re, im: w.im });
        }
        Ok(Self::clamp(w))
    }

    fn clamp(w: Complex64) -> Self {
        let r = w.norm();
        if r > 1.0 {
            Self(w / r)
        } else {
            Self(w)
        }
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        self.0
    }
}

/// The Beltrami-Klein map `f`.
pub fn bk_forward(z: ExtComplex) -> DiskPoint {
    match z {
        ExtComplex::Infinity => DiskPoint(Complex64::new(1.0, 0.0)),
        ExtComplex::Finite(z) => {
            let r2 = z.norm_sqr();
            if !r2.is_finite() {
                return DiskPoint(Complex64::new(1.0, 0.0));
            }
            let den = 1.0 + r2;
            // same as 1 - 2(1 + i Re z)/(1 + |z|^2), with |f| <= 1 preserved in rounding
            DiskPoint::clamp(Complex64::new((r2 - 1.0) / den, -2.0 * z.re / den))
        }
    }
}

/// The set-valued inverse `g`: the conjugate pair mapping to `w`, upper
/// representative (`Im >= 0`) first. Returns one point when the pair
/// coincides and `{inf}` for `w = 1`.
pub fn bk_inverse(w: DiskPoint) -> Vec<ExtComplex> {
    let w = w.value();
    let den = w.re - 1.0;
    if den >= 0.0 {
        return vec![ExtComplex::Infinity];
    }
    // 1 - |w|^2 written to avoid cancelling 1 against |w|^2 near the rim
    let d2 = (1.0 - w.re) * (1.0 + w.re) - w.im * w.im;
    // within a few ulps of the rim the pair is real; the square root would
    // otherwise turn rounding noise of 1e-16 into an imaginary part of 1e-8
    let d = if d2 <= RIM_SNAP { 0.0 } else { d2.sqrt() };
    let re = w.im / den;
    let im = (d / den).abs();
    if im == 0.0 {
        vec![ExtComplex::Finite(Complex64::new(re, 0.0))]
    } else {
        vec![
            ExtComplex::Finite(Complex64::new(re, im)),
            ExtComplex::Finite(Complex64::new(re, -im)),
        ]
    }
}

/// Checked variant of [`bk_inverse`] for raw complex input.
pub fn bk_inverse_raw(w: Complex64) -> Result<Vec<ExtComplex>> {
    Ok(bk_inverse(DiskPoint::new(w)?))
}

/// The representative of `g(w)` with non-negative imaginary part.
pub fn bk_inverse_upper(w: DiskPoint) -> ExtComplex {
    bk_inverse(w)[0]
}
