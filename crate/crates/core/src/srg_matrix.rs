//! Scaled relative graphs of square matrices.
//!
//! With `S = (I + T*T)^{-1/2}` the graph of `T` is parameterized isometrically
//! by `v -> (S v, T S v)`, and the disk image of the SRG is the numerical
//! range of
//!
//! ```text
//! V = S* (-I - iT - iT* + T*T) S.
//! ```
//!
//! Tracing `W(V)` and pulling its boundary back through the inverse
//! Beltrami-Klein map gives the region in the plane.

use num_complex::Complex64;

use crate::cgeom::{bk_forward, convex_hull_2d, hull_bk, ExtComplex, SrgRegion};
use crate::error::{Result, SrgError};
use crate::linalg::{general_eig, inv_sqrt_hpd, lu, schur, CMatrix, C64};
use crate::nrange::{nrange_boundary_with, NRangeBoundary, NRangeOptions, DEFAULT_NUM_ANGLES};

/// Scalar field the operator acts over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Real,
    Complex,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SrgOptions {
    pub num_angles: usize,
    pub field: Field,
    pub tol: f64,
    /// Adaptive refinement of the boundary sweep; `None` keeps the uniform sweep.
    pub refine_tol: Option<f64>,
}

impl Default for SrgOptions {
    fn default() -> Self {
        Self {
            num_angles: DEFAULT_NUM_ANGLES,
            field: Field::Complex,
            tol: 1e-9,
            refine_tol: Some(1e-7),
        }
    }
}

impl SrgOptions {
    fn validate(&self) -> Result<()> {
        if self.num_angles < 8 {
            return Err(SrgError::InvalidArgument(format!(
                "num_angles must be at least 8, got {}",
                self.num_angles
            )));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(SrgError::InvalidArgument(format!("tol must be positive, got {}", self.tol)));
        }
        if let Some(r) = self.refine_tol {
            if r.is_nan() || r <= 0.0 {
                return Err(SrgError::InvalidArgument(format!("refine_tol must be positive, got {r}")));
            }
        }
        Ok(())
    }

    fn nrange(&self) -> NRangeOptions {
        NRangeOptions {
            num_angles: self.num_angles,
            refine_tol: self.refine_tol,
        }
    }
}

/// The bounded operator whose numerical range is `f(srg(T))`.
#[derive(Clone, Debug)]
pub struct VOperator {
    pub v: CMatrix,
    /// Hermitian positive-definite `(I + T*T)^{-1/2}`.
    pub s_factor: CMatrix,
}

fn check_square(t: &CMatrix, op: &'static str) -> Result<()> {
    if !t.is_square() || t.rows() == 0 {
        return Err(SrgError::NotSquare {
            op,
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    Ok(())
}

pub fn build_v(t: &CMatrix) -> Result<VOperator> {
    check_square(t, "build_v")?;
    let n = t.rows();
    let tt = t.adjoint();
    let gram = tt.mul_unchecked(t);
    let s = inv_sqrt_hpd(&gram.shift_diag(C64::new(1.0, 0.0))).map_err(|e| {
        SrgError::Internal(format!("I + T*T failed to factor: {e}"))
    })?;
    let minus_i = C64::new(0.0, -1.0);
    let mut inner = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inner[(i, j)] = gram[(i, j)] + minus_i * (t[(i, j)] + tt[(i, j)]);
        }
        inner[(i, i)] -= C64::new(1.0, 0.0);
    }
    // S is Hermitian, so S* = S
    let v = s.mul_unchecked(&inner.mul_unchecked(&s));
    Ok(VOperator { v, s_factor: s })
}

fn v_sweep(t: &CMatrix, opts: &SrgOptions) -> Result<NRangeBoundary> {
    opts.validate()?;
    let vop = build_v(t)?;
    nrange_boundary_with(&vop.v, &opts.nrange())
}

/// SRG of `T` acting on a complex space.
pub fn srg_complex(t: &CMatrix, opts: &SrgOptions) -> Result<SrgRegion> {
    check_square(t, "srg_complex")?;
    let sweep = v_sweep(t, opts)?;
    Ok(SrgRegion::from_disk_hull(sweep.hull.clone(), false)
        .with_contains_infinity(false)
        .with_support(sweep))
}

/// SRG of a real matrix acting on a real space. On a two-dimensional space
/// only the boundary of the complex SRG is attained, which is flagged.
pub fn srg_real(t: &CMatrix, opts: &SrgOptions) -> Result<SrgRegion> {
    check_square(t, "srg_real")?;
    if !t.is_real() {
        return Err(SrgError::NonRealEntries);
    }
    Ok(srg_complex(t, opts)?.with_boundary_only(t.rows() == 2))
}

/// Dispatches on `opts.field`.
pub fn srg(t: &CMatrix, opts: &SrgOptions) -> Result<SrgRegion> {
    match opts.field {
        Field::Real => srg_real(t, opts),
        Field::Complex => srg_complex(t, opts),
    }
}

/// Hyperbolic hull of the (complex) eigenvalues of `T`.
pub fn hull_bk_spectrum(t: &CMatrix) -> Result<SrgRegion> {
    check_square(t, "hull_bk_spectrum")?;
    let pts: Vec<ExtComplex> = general_eig(t)?.values.into_iter().map(ExtComplex::Finite).collect();
    hull_bk(&pts)
}

/// Condition number above which a scaling matrix is treated as singular.
pub const MAX_SCALING_CONDITION: f64 = 1e12;

/// `srg(S T S^{-1})`.
pub fn similarity_scaled_srg(t: &CMatrix, s: &CMatrix, opts: &SrgOptions) -> Result<SrgRegion> {
    check_square(t, "similarity_scaled_srg")?;
    check_square(s, "similarity_scaled_srg")?;
    if s.rows() != t.rows() {
        return Err(SrgError::ShapeMismatch {
            op: "similarity_scaled_srg",
            expected: format!("{0}x{0}", t.rows()),
            got: format!("{}x{}", s.rows(), s.cols()),
        });
    }
    let factor = lu(s)?;
    if factor.is_singular() {
        return Err(SrgError::SingularScaling {
            condition: f64::INFINITY,
        });
    }
    let s_inv = factor.inverse()?;
    let condition = s.frobenius_norm() * s_inv.frobenius_norm();
    if condition.is_nan() || condition >= MAX_SCALING_CONDITION {
        return Err(SrgError::SingularScaling { condition });
    }
    srg_complex(&s.mul_unchecked(&t.mul_unchecked(&s_inv)), opts)
}

/// For each `gamma`, the Hausdorff distance between the disk hull of
/// `srg(S_gamma T S_gamma^{-1})` and `hull(f(spectrum))`, where
/// `S_gamma = diag(gamma, gamma^2, ...) Q*` and `Q* T Q = U` is a Schur form.
///
/// `S_gamma T S_gamma^{-1} = D U D^{-1}` is formed entrywise as
/// `U_jk gamma^(j-k)` to avoid inverting `D`.
pub fn gamma_scaling_demo(t: &CMatrix, gammas: &[f64]) -> Result<Vec<(f64, f64)>> {
    check_square(t, "gamma_scaling_demo")?;
    if gammas.is_empty() {
        return Err(SrgError::EmptyInput("gamma_scaling_demo"));
    }
    if gammas.iter().any(|g| !(g.is_finite() && *g > 0.0)) {
        return Err(SrgError::InvalidArgument("gammas must be positive and finite".into()));
    }
    if gammas.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SrgError::InvalidArgument("gammas must be strictly ascending".into()));
    }
    let n = t.rows();
    let u = schur(t)?.u;
    let spectrum_hull = convex_hull_2d(
        &u.diag()
            .into_iter()
            .map(|l| bk_forward(l.into()).value())
            .collect::<Vec<_>>(),
    )?;
    let opts = SrgOptions::default();
    gammas
        .iter()
        .map(|&g| {
            let mut scaled = CMatrix::zeros(n, n);
            for j in 0..n {
                for k in j..n {
                    scaled[(j, k)] = u[(j, k)] * g.powi(j as i32 - k as i32);
                }
            }
            let region = srg_complex(&scaled, &opts)?;
            Ok((g, region.disk_hull().hausdorff(&spectrum_hull)))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct EigenMargin {
    pub eigenvalue: C64,
    pub disk_point: C64,
    /// `-max_theta (Re(e^{-i theta} w) - h(theta))` over the sweep; non-negative inside.
    pub margin: f64,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpectrumReport {
    pub tol: f64,
    pub entries: Vec<EigenMargin>,
}

impl SpectrumReport {
    pub fn all_contained(&self) -> bool {
        self.entries.iter().all(|e| e.contained)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EigenMargin> {
        self.entries.iter().filter(|e| !e.contained)
    }
}

/// Checks `f(lambda) in W(V)` for every eigenvalue with the support-function test.
pub fn spectrum_check(t: &CMatrix, opts: &SrgOptions) -> Result<SpectrumReport> {
    check_square(t, "spectrum_check")?;
    let sweep = v_sweep(t, opts)?;
    let entries = general_eig(t)?
        .values
        .into_iter()
        .map(|lambda| {
            let w: Complex64 = bk_forward(lambda.into()).value();
            let excess = sweep.max_excess(w);
            EigenMargin {
                eigenvalue: lambda,
                disk_point: w,
                margin: -excess,
                contained: excess <= opts.tol,
            }
        })
        .collect();
    Ok(SpectrumReport {
        tol: opts.tol,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn nilpotent() -> CMatrix {
        CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap()
    }

    fn on_ellipse(w: C64) -> f64 {
        ((w + c(0.5, 0.5)).norm() + (w + c(0.5, -0.5)).norm() - 2f64.sqrt()).abs()
    }

    #[test]
    fn v_of_zero_and_identity() {
        let v = build_v(&CMatrix::zeros(3, 3)).unwrap().v;
        assert!(v.sub(&CMatrix::identity(3).scale(c(-1.0, 0.0))).unwrap().frobenius_norm() < 1e-15);
        let v = build_v(&CMatrix::identity(2)).unwrap().v;
        assert!(v.sub(&CMatrix::identity(2).scale(c(0.0, -1.0))).unwrap().frobenius_norm() < 1e-14);
    }

    #[test]
    fn v_defining_relation() {
        let t = CMatrix::from_rows(&[
            vec![c(1.0, 2.0), c(-0.5, 0.0), c(0.0, 1.0)],
            vec![c(0.3, -0.1), c(2.0, 0.0), c(1.0, 1.0)],
            vec![c(0.0, 0.0), c(-1.0, 0.5), c(0.2, 0.0)],
        ])
        .unwrap();
        let VOperator { v, s_factor: s } = build_v(&t).unwrap();
        let m = t.adjoint().mul_unchecked(&t).shift_diag(c(1.0, 0.0));
        let r = s.adjoint().mul_unchecked(&s).mul_unchecked(&m);
        assert!(r.sub(&CMatrix::identity(3)).unwrap().frobenius_norm() <= 1e-9 * 3.0);
        let sweep = nrange_boundary_with(&v, &NRangeOptions::default()).unwrap();
        assert!(sweep.support_points.iter().all(|p| p.point.norm() <= 1.0 + 1e-8));
    }

    #[test]
    fn nilpotent_gives_ellipse() {
        let r = srg_complex(&nilpotent(), &SrgOptions::default()).unwrap();
        for p in &r.support().unwrap().support_points {
            assert!(on_ellipse(p.point) <= 1e-8, "{:?}", p);
        }
        assert!(!r.boundary_only());
        assert!(!r.contains_infinity());
    }

    #[test]
    fn scalar_multiple_of_identity_is_a_point() {
        let r = srg_complex(&CMatrix::identity(3).scale(c(3.0, 0.0)), &SrgOptions::default()).unwrap();
        assert!(r.disk_hull().is_point());
        for z in r.upper_branch().iter().chain(r.lower_branch()) {
            assert!((z.as_finite().unwrap() - c(3.0, 0.0)).norm() < 1e-9);
        }
    }

    #[test]
    fn diagonal_matches_spectral_hull() {
        let t = CMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let a = srg_complex(&t, &SrgOptions::default()).unwrap();
        let b = hull_bk_spectrum(&t).unwrap();
        assert!(a.disk_hull().hausdorff(b.disk_hull()) < 1e-7);
    }

    #[test]
    fn real_two_by_two_is_boundary_only() {
        let r = srg_real(&nilpotent(), &SrgOptions::default()).unwrap();
        assert!(r.boundary_only());
        let r = srg_real(&CMatrix::from_real_rows(&[vec![2.0]]).unwrap(), &SrgOptions::default()).unwrap();
        assert!(!r.boundary_only());
        assert!(r.disk_hull().is_point());
        let d3 = CMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let r = srg_real(&d3, &SrgOptions::default()).unwrap();
        assert!(!r.boundary_only());
        let h = hull_bk(&[1.0.into(), 2.0.into(), 3.0.into()]).unwrap();
        assert!(r.disk_hull().hausdorff(h.disk_hull()) < 1e-7);
    }

    #[test]
    fn real_rejects_complex_entries() {
        let t = CMatrix::from_diag(&[c(1.0, 1e-3)]);
        assert_eq!(srg_real(&t, &SrgOptions::default()).unwrap_err(), SrgError::NonRealEntries);
    }

    #[test]
    fn rotation_spectral_hull() {
        let rot = CMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        let a = hull_bk_spectrum(&rot).unwrap();
        let b = hull_bk(&[c(0.0, 1.0).into(), c(0.0, -1.0).into()]).unwrap();
        assert!(a.disk_hull().hausdorff(b.disk_hull()) < 1e-12);
    }

    #[test]
    fn scaling_by_identity_is_a_no_op() {
        let t = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let a = srg_complex(&t, &SrgOptions::default()).unwrap();
        let b = similarity_scaled_srg(&t, &CMatrix::identity(2), &SrgOptions::default()).unwrap();
        assert!(a.disk_hull().hausdorff(b.disk_hull()) < 1e-12);
    }

    #[test]
    fn diagonal_scaling_shrinks_jordan_block() {
        let t = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let q = schur(&t).unwrap().q;
        let s = CMatrix::from_diag(&[c(10.0, 0.0), c(100.0, 0.0)]).mul_unchecked(&q.adjoint());
        let plain = srg_complex(&t, &SrgOptions::default()).unwrap();
        let scaled = similarity_scaled_srg(&t, &s, &SrgOptions::default()).unwrap();
        assert!(scaled.disk_hull().area() < plain.disk_hull().area());
        assert!(scaled.contains(1.0.into(), 1e-7));
    }

    #[test]
    fn singular_scaling_rejected() {
        let t = CMatrix::identity(2);
        let s = CMatrix::from_real_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(matches!(
            similarity_scaled_srg(&t, &s, &SrgOptions::default()),
            Err(SrgError::SingularScaling { .. })
        ));
        let s = CMatrix::from_diag(&[c(1.0, 0.0), c(1e-13, 0.0)]);
        assert!(matches!(
            similarity_scaled_srg(&t, &s, &SrgOptions::default()),
            Err(SrgError::SingularScaling { .. })
        ));
    }

    #[test]
    fn gamma_scaling_on_jordan_block() {
        let t = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        let d = gamma_scaling_demo(&t, &[1.0, 10.0, 100.0]).unwrap();
        assert!(d[0].1 > d[1].1 && d[1].1 > d[2].1, "{d:?}");
        assert!(d[2].1 <= 0.02);
    }

    #[test]
    fn gamma_scaling_of_nilpotent_collapses_to_minus_one() {
        let d = gamma_scaling_demo(&nilpotent(), &[100.0]).unwrap();
        assert!(d[0].1 <= 0.02);
    }

    #[test]
    fn gamma_scaling_normal_is_tight() {
        let t = CMatrix::from_diag(&[c(1.0, 1.0), c(-2.0, 0.5), c(0.3, 0.0)]);
        for (_, dist) in gamma_scaling_demo(&t, &[0.5, 1.0, 7.0]).unwrap() {
            assert!(dist <= 1e-7, "{dist}");
        }
    }

    #[test]
    fn gamma_validation() {
        let t = CMatrix::identity(2);
        assert!(gamma_scaling_demo(&t, &[10.0, 1.0]).is_err());
        assert!(gamma_scaling_demo(&t, &[0.0, 1.0]).is_err());
        assert!(gamma_scaling_demo(&t, &[]).is_err());
    }

    #[test]
    fn spectrum_check_normal() {
        let t = CMatrix::from_diag(&[c(1.0, 1.0), c(-2.0, 0.5), c(0.3, 0.0)]);
        let report = spectrum_check(&t, &SrgOptions::default()).unwrap();
        assert!(report.all_contained());
        for e in &report.entries {
            assert!(e.margin >= -report.tol);
            // every eigenvalue of a normal matrix is a vertex: margin is ~0
            assert!(e.margin.abs() < 1e-9, "{e:?}");
        }
    }

    #[test]
    fn options_validated() {
        let t = CMatrix::identity(2);
        let bad = SrgOptions {
            num_angles: 4,
            ..SrgOptions::default()
        };
        assert!(srg_complex(&t, &bad).is_err());
        let bad = SrgOptions {
            tol: 0.0,
            ..SrgOptions::default()
        };
        assert!(srg_complex(&t, &bad).is_err());
    }
}
