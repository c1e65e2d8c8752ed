//! Scaled relative graphs (SRGs) of matrices and scalar rational transfer
//! functions.
//!
//! The SRG of an operator is mapped into the closed unit disk by the
//! Beltrami-Klein map, where it becomes the numerical range of a bounded
//! auxiliary operator. Regions are computed as convex polygons on the disk
//! side and pulled back to the plane as two conjugate boundary branches.
//!
//! ```
//! use srg_core::{srg_complex, CMatrix, SrgOptions};
//!
//! let t = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
//! let region = srg_complex(&t, &SrgOptions::default()).unwrap();
//! assert!(region.contains(num_complex::Complex64::new(0.0, 0.5).into(), 1e-9));
//! ```

pub mod cgeom;
pub mod error;
pub mod linalg;
pub mod lti;
pub mod nrange;
pub mod oracle;
pub mod srg_matrix;

pub use cgeom::{
    bk_forward, bk_inverse, convex_hull_2d, hull_bk, region_contains, ConvexPolygon, DiskPoint,
    ExtComplex, SrgRegion, EPS_DISK,
};
pub use error::{Result, SrgError};
pub use linalg::{adjoint, general_eig, herm_eig, inv_sqrt_hpd, matmul, poly_roots, CMatrix, HermEigResult, Spectrum, C64};
pub use lti::{
    default_grid, lti_disk_point, lti_srg, spectral_factorize, FreqGrid, Frequency, LtiSrg, RationalTF,
    SpectralFactor,
};
pub use nrange::{nrange_boundary, nrange_boundary_with, nrange_contains, NRangeBoundary, NRangeOptions, SupportPoint};
pub use oracle::{check_containment, sample_srg, SampleReport};
pub use srg_matrix::{
    build_v, gamma_scaling_demo, hull_bk_spectrum, similarity_scaled_srg, spectrum_check, srg, srg_complex, srg_real,
    Field, SpectrumReport, SrgOptions, VOperator,
};
