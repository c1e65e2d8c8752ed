use num_complex::Complex64;

use super::{bk_forward, bk_inverse, convex_hull_2d, ConvexPolygon, DiskPoint, ExtComplex, EPS_DISK};
use crate::error::{Result, SrgError};
use crate::nrange::NRangeBoundary;

/// Longest disk-side step between consecutive boundary samples when
/// mapping a hull edge back to the plane.
const BRANCH_STEP: f64 = 0.01;

/// A scaled relative graph, stored through its Beltrami-Klein image.
///
/// The disk side is a convex polygon. The plane side is the polygon's
/// boundary pushed through the inverse map, split into the representative
/// with non-negative imaginary part (`upper_branch`) and its conjugate.
/// Regions computed from an operator also keep the numerical-range sweep
/// they came from, which gives certified support-function membership tests.
#[derive(Clone, Debug)]
pub struct SrgRegion {
    disk_hull: ConvexPolygon,
    upper_branch: Vec<ExtComplex>,
    lower_branch: Vec<ExtComplex>,
    contains_infinity: bool,
    boundary_only: bool,
    support: Option<NRangeBoundary>,
}

impl SrgRegion {
    /// Builds the plane-side branches from a disk-side hull.
    ///
    /// `contains_infinity` is forced on when the hull reaches the point 1.
    pub fn from_disk_hull(disk_hull: ConvexPolygon, contains_infinity: bool) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let touches_one = disk_hull.distance(one) <= EPS_DISK;
        let upper_branch: Vec<ExtComplex> = disk_hull
            .densified_boundary(BRANCH_STEP)
            .into_iter()
            .map(|w| {
                let w = DiskPoint::new(w).expect("hull of disk points stays in the disk");
                bk_inverse(w)[0]
            })
            .collect();
        let lower_branch = upper_branch.iter().map(ExtComplex::conj).collect();
        Self {
            disk_hull,
            upper_branch,
            lower_branch,
            contains_infinity: contains_infinity || touches_one,
            boundary_only: false,
            support: None,
        }
    }

    pub(crate) fn with_support(mut self, support: NRangeBoundary) -> Self {
        self.support = Some(support);
        self
    }

    pub(crate) fn with_boundary_only(mut self, boundary_only: bool) -> Self {
        self.boundary_only = boundary_only;
        self
    }

    pub(crate) fn with_contains_infinity(mut self, contains_infinity: bool) -> Self {
        self.contains_infinity = contains_infinity;
        self
    }

    pub fn disk_hull(&self) -> &ConvexPolygon {
        &self.disk_hull
    }

    pub fn upper_branch(&self) -> &[ExtComplex] {
        &self.upper_branch
    }

    pub fn lower_branch(&self) -> &[ExtComplex] {
        &self.lower_branch
    }

    pub fn contains_infinity(&self) -> bool {
        self.contains_infinity
    }

    /// Set when only the boundary curve of the region is attained
    /// (real operators on a two-dimensional space).
    pub fn boundary_only(&self) -> bool {
        self.boundary_only
    }

    /// The numerical-range sweep behind this region, if it came from an operator.
    pub fn support(&self) -> Option<&NRangeBoundary> {
        self.support.as_ref()
    }

    /// How far the disk point `w` lies outside the region. Uses the sampled
    /// support function when available (never under-reports membership),
    /// otherwise the Euclidean distance to the hull. Zero or negative means
    /// inside.
    pub fn disk_excess(&self, w: Complex64) -> f64 {
        match &self.support {
            Some(s) => s.max_excess(w),
            None => self.disk_hull.distance(w),
        }
    }

    /// Signed distance from the disk point `w` to the region, negative inside.
    /// Operator-backed regions refine the support angle locally, so this is
    /// accurate to round-off rather than to the sweep resolution.
    pub fn disk_signed_distance(&self, w: Complex64) -> f64 {
        match &self.support {
            Some(s) => s.signed_distance(w),
            None => self.disk_hull.signed_distance(w),
        }
    }

    /// Distance from `f(z)` to the boundary of the disk-side region.
    pub fn boundary_distance(&self, z: ExtComplex) -> f64 {
        let w = bk_forward(z).value();
        match &self.support {
            Some(s) => s.signed_distance(w).abs(),
            None => self.disk_hull.boundary_distance(w),
        }
    }

    pub fn contains(&self, z: ExtComplex, tol: f64) -> bool {
        region_contains(self, z, tol)
    }
}

/// Hyperbolic hull: `g(hull(f(points)))`.
pub fn hull_bk(points: &[ExtComplex]) -> Result<SrgRegion> {
    if points.is_empty() {
        return Err(SrgError::EmptyInput("hull_bk"));
    }
    let images: Vec<Complex64> = points.iter().map(|&z| bk_forward(z).value()).collect();
    let hull = convex_hull_2d(&images)?;
    let has_inf = points.iter().any(ExtComplex::is_infinite);
    Ok(SrgRegion::from_disk_hull(hull, has_inf))
}

/// Whether `z` belongs to the region, judged on the disk side within `tol`.
pub fn region_contains(region: &SrgRegion, z: ExtComplex, tol: f64) -> bool {
    region.disk_excess(bk_forward(z).value()) <= tol
}
