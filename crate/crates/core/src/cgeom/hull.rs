use num_complex::Complex64;

use crate::error::{Result, SrgError};

/// Relative tolerance for the collinearity test and vertex merging.
const COLLINEAR_TOL: f64 = 1e-12;

/// Convex polygon with counter-clockwise vertices. May degenerate to a
/// segment (two vertices) or a single point.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon {
    vertices: Vec<Complex64>,
}

#[inline]
fn cross(o: Complex64, a: Complex64, b: Complex64) -> f64 {
    (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)
}

/// Turn at `a` is too small to keep `a`: the sine of the angle between
/// `a - o` and `b - o` is at most `COLLINEAR_TOL` (or the turn is clockwise).
#[inline]
fn not_left_turn(o: Complex64, a: Complex64, b: Complex64) -> bool {
    cross(o, a, b) <= COLLINEAR_TOL * (a - o).norm() * (b - o).norm()
}

fn point_segment_distance(z: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let len2 = d.norm_sqr();
    if len2 == 0.0 {
        return (z - a).norm();
    }
    let t = (((z - a) * d.conj()).re / len2).clamp(0.0, 1.0);
    (z - (a + d * t)).norm()
}

/// Andrew's monotone chain. A vertex is pruned as collinear when the sine
/// of its turning angle is below `1e-12`; vertices closer than `1e-12`
/// times the coordinate scale are merged.
pub fn convex_hull_2d(points: &[Complex64]) -> Result<ConvexPolygon> {
    if points.is_empty() {
        return Err(SrgError::EmptyInput("convex_hull_2d"));
    }
    if points.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(SrgError::NonFinite("convex_hull_2d"));
    }
    let scale = points
        .iter()
        .fold(1.0f64, |m, z| m.max(z.re.abs()).max(z.im.abs()));
    let merge_tol = COLLINEAR_TOL * scale;

    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    pts.dedup();
    if pts.len() == 1 {
        return Ok(ConvexPolygon { vertices: pts });
    }

    let mut hull: Vec<Complex64> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && not_left_turn(hull[hull.len() - 2], hull[hull.len() - 1], p) {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && not_left_turn(hull[hull.len() - 2], hull[hull.len() - 1], p)
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();

    let mut vertices: Vec<Complex64> = Vec::with_capacity(hull.len());
    for p in hull {
        if vertices.last().map_or(true, |&q| (p - q).norm() > merge_tol) {
            vertices.push(p);
        }
    }
    while vertices.len() > 1 && (vertices[0] - *vertices.last().unwrap()).norm() <= merge_tol {
        vertices.pop();
    }
    Ok(ConvexPolygon { vertices })
}

impl ConvexPolygon {
    pub fn point(z: Complex64) -> Self {
        Self { vertices: vec![z] }
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Edges `(v_i, v_{i+1})` in counter-clockwise order. A segment yields
    /// its one edge once; a point yields nothing.
    pub fn edges(&self) -> impl Iterator<Item = (Complex64, Complex64)> + '_ {
        let n = self.vertices.len();
        let count = match n {
            0 | 1 => 0,
            2 => 1,
            _ => n,
        };
        (0..count).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        let n = self.vertices.len();
        if n < 3 {
            return 0.0;
        }
        let mut acc = 0.0;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            acc += a.re * b.im - a.im * b.re;
        }
        0.5 * acc
    }

    /// Area centroid, or the vertex mean for degenerate polygons.
    pub fn centroid(&self) -> Complex64 {
        let n = self.vertices.len();
        let mean = self.vertices.iter().sum::<Complex64>() / n.max(1) as f64;
        let area = self.area();
        if n < 3 || area <= 0.0 {
            return mean;
        }
        let (mut cx, mut cy) = (0.0, 0.0);
        for i in 0..n {
            let a = self.vertices[i] - mean;
            let b = self.vertices[(i + 1) % n] - mean;
            let w = a.re * b.im - a.im * b.re;
            cx += (a.re + b.re) * w;
            cy += (a.im + b.im) * w;
        }
        mean + Complex64::new(cx, cy) / (6.0 * area)
    }

    /// Signed Euclidean distance: negative inside, zero on the boundary,
    /// positive outside. Degenerate polygons have no interior.
    pub fn signed_distance(&self, z: Complex64) -> f64 {
        let edge_dist = self.boundary_distance(z);
        if self.vertices.len() < 3 {
            return edge_dist;
        }
        let inside = self.edges().all(|(a, b)| cross(a, b, z) >= 0.0);
        if inside {
            -edge_dist
        } else {
            edge_dist
        }
    }

    /// Distance to the filled polygon (zero inside).
    pub fn distance(&self, z: Complex64) -> f64 {
        self.signed_distance(z).max(0.0)
    }

    /// Distance to the polygon's boundary curve.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        match self.vertices.len() {
            0 => f64::INFINITY,
            1 => (z - self.vertices[0]).norm(),
            _ => self
                .edges()
                .map(|(a, b)| point_segment_distance(z, a, b))
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn contains(&self, z: Complex64, tol: f64) -> bool {
        self.signed_distance(z) <= tol
    }

    /// Hausdorff distance between the filled polygons. For convex sets the
    /// one-sided maxima are attained at vertices.
    pub fn hausdorff(&self, other: &Self) -> f64 {
        let one_sided = |a: &Self, b: &Self| {
            let locate = Locator::new(b);
            a.vertices
                .iter()
                .map(|&v| locate.distance(v))
                .fold(0.0, f64::max)
        };
        one_sided(self, other).max(one_sided(other, self))
    }

    /// Boundary points in counter-clockwise order, with every edge split
    /// into pieces no longer than `max_step`. Segments are traversed out
    /// and back so the result is a closed loop.
    pub fn densified_boundary(&self, max_step: f64) -> Vec<Complex64> {
        let n = self.vertices.len();
        if n <= 1 {
            return self.vertices.clone();
        }
        let loop_edges: Vec<(Complex64, Complex64)> = if n == 2 {
            vec![(self.vertices[0], self.vertices[1]), (self.vertices[1], self.vertices[0])]
        } else {
            self.edges().collect()
        };
        let mut out = Vec::new();
        for (a, b) in loop_edges {
            let pieces = ((b - a).norm() / max_step).ceil().max(1.0) as usize;
            for k in 0..pieces {
                out.push(a + (b - a) * (k as f64 / pieces as f64));
            }
        }
        out
    }
}

/// Logarithmic-time distance queries against a fixed polygon.
///
/// Vertices are indexed by polar angle around their mean, an interior
/// point. A query first finds the edge crossed by the ray from that point,
/// which decides inside/outside. For outside points the nearest boundary
/// point lies on an edge whose supporting line separates it from the
/// polygon; those edges form a contiguous chain around the ray edge.
struct Locator<'a> {
    poly: &'a ConvexPolygon,
    center: Complex64,
    start: usize,
    angles: Vec<f64>,
}

impl<'a> Locator<'a> {
    fn new(poly: &'a ConvexPolygon) -> Self {
        let n = poly.vertices.len();
        if n < 3 {
            return Self {
                poly,
                center: Complex64::new(0.0, 0.0),
                start: 0,
                angles: Vec::new(),
            };
        }
        let center = poly.vertices.iter().sum::<Complex64>() / n as f64;
        let raw: Vec<f64> = poly.vertices.iter().map(|&v| (v - center).arg()).collect();
        let start = (0..n).min_by(|&i, &j| raw[i].total_cmp(&raw[j])).unwrap();
        let angles = (0..n).map(|k| raw[(start + k) % n]).collect();
        Self {
            poly,
            center,
            start,
            angles,
        }
    }

    fn edge(&self, i: usize) -> (Complex64, Complex64) {
        let v = &self.poly.vertices;
        (v[i % v.len()], v[(i + 1) % v.len()])
    }

    fn distance(&self, z: Complex64) -> f64 {
        let n = self.poly.vertices.len();
        if n < 3 {
            return self.poly.distance(z);
        }
        let theta = (z - self.center).arg();
        let k = self.angles.partition_point(|&a| a <= theta);
        let first = (self.start + if k == 0 { n - 1 } else { k - 1 }) % n;
        let (a, b) = self.edge(first);
        if cross(a, b, z) >= 0.0 {
            return 0.0;
        }
        let visible = |i: usize| {
            let (a, b) = self.edge(i);
            cross(a, b, z) < 0.0
        };
        let mut best = point_segment_distance(z, a, b);
        let mut steps = 1;
        let mut i = first + 1;
        while steps < n && visible(i) {
            let (a, b) = self.edge(i);
            best = best.min(point_segment_distance(z, a, b));
            i += 1;
            steps += 1;
        }
        let mut i = first + n - 1;
        while steps < n && visible(i) {
            let (a, b) = self.edge(i);
            best = best.min(point_segment_distance(z, a, b));
            i += n - 1;
            steps += 1;
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn interior_point_discarded() {
        let h = convex_hull_2d(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0), c(0.25, 0.25)]).unwrap();
        assert_eq!(h.vertices(), &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)]);
        assert!((h.area() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn single_point_and_segment() {
        let h = convex_hull_2d(&[c(0.5, 0.0)]).unwrap();
        assert!(h.is_point());
        let h = convex_hull_2d(&[c(0.0, 0.0), c(0.5, 0.0), c(1.0, 0.0), c(0.25, 0.0)]).unwrap();
        assert_eq!(h.vertices(), &[c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(h.distance(c(0.5, 0.0)), 0.0);
        assert!((h.distance(c(0.5, 0.1)) - 0.1).abs() < 1e-15);
    }

    #[test]
    fn near_coincident_points_merge() {
        let pts: Vec<Complex64> = (0..50).map(|k| c(0.3 + 1e-17 * k as f64, -0.2)).collect();
        assert!(convex_hull_2d(&pts).unwrap().is_point());
    }

    #[test]
    fn empty_rejected() {
        assert_eq!(convex_hull_2d(&[]), Err(SrgError::EmptyInput("convex_hull_2d")));
    }

    #[test]
    fn unit_square_monte_carlo_area() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Complex64> = (0..10_000)
            .map(|_| c(rng.random::<f64>(), rng.random::<f64>()))
            .collect();
        let area = convex_hull_2d(&pts).unwrap().area();
        assert!(area <= 1.0 && area > 0.95, "area {area}");
    }

    #[test]
    fn signed_distance_signs() {
        let sq = convex_hull_2d(&[c(0.0, 0.0), c(1.0, 0.0), c(1.0, 1.0), c(0.0, 1.0)]).unwrap();
        assert!((sq.signed_distance(c(0.5, 0.5)) + 0.5).abs() < 1e-15);
        assert!((sq.signed_distance(c(2.0, 0.5)) - 1.0).abs() < 1e-15);
        assert!((sq.boundary_distance(c(0.5, 0.75)) - 0.25).abs() < 1e-15);
        let shifted = convex_hull_2d(&[c(0.1, 0.0), c(1.1, 0.0), c(1.1, 1.0), c(0.1, 1.0)]).unwrap();
        assert!((sq.hausdorff(&shifted) - 0.1).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn hull_contains_inputs_and_is_ccw(
            pts in proptest::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 1..60)
        ) {
            let pts: Vec<Complex64> = pts.into_iter().map(|(a, b)| c(a, b)).collect();
            let h = convex_hull_2d(&pts).unwrap();
            for &p in &pts {
                prop_assert!(h.distance(p) <= 1e-9);
            }
            let v = h.vertices();
            if v.len() >= 3 {
                for i in 0..v.len() {
                    prop_assert!(cross(v[i], v[(i + 1) % v.len()], v[(i + 2) % v.len()]) > 0.0);
                }
            }
            let loc = Locator::new(&h);
            for &(x, y) in &[(0.0, 0.0), (6.0, 1.0), (-7.0, -7.0), (0.3, 5.2), (4.9, -5.1)] {
                let z = c(x, y);
                prop_assert!((loc.distance(z) - h.distance(z)).abs() <= 1e-12);
            }
            // idempotent
            let again = convex_hull_2d(v).unwrap();
            prop_assert_eq!(again.vertices(), v);
        }
    }
}
