//! Boundary data as CSV.
//!
//! Columns are `kind,theta,re,im,branch`. Numbers carry 17 significant
//! digits in exponent notation. A point at infinity becomes a row with
//! `kind = infinity` and empty coordinates, never a float.

use std::fmt;
use std::io::Write;

use srg_core::{ExtComplex, C64};

use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 5] = ["kind", "theta", "re", "im", "branch"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Branch {
    Lower,
    None,
    Upper,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Lower => "lower",
            Self::None => "none",
            Self::Upper => "upper",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Boundary of the computed region (or of W(A) for `nrange`).
    Boundary,
    /// Boundary of the hyperbolic hull of the spectrum.
    Spectrum,
    Eigenvalue,
    /// Frequency response `h(i omega)`, with `theta = atan(omega)`.
    Response,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Self::Boundary => "boundary",
            Self::Spectrum => "spectrum",
            Self::Eigenvalue => "eigenvalue",
            Self::Response => "response",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Row {
    pub kind: Kind,
    pub theta: f64,
    pub point: ExtComplex,
    pub branch: Branch,
}

impl Row {
    pub fn new(kind: Kind, theta: f64, point: ExtComplex, branch: Branch) -> Self {
        Self {
            kind,
            theta,
            point,
            branch,
        }
    }

    pub fn finite(kind: Kind, theta: f64, z: C64, branch: Branch) -> Self {
        Self::new(kind, theta, ExtComplex::Finite(z), branch)
    }
}

fn num(x: f64) -> String {
    // adding zero turns -0 into +0
    format!("{:.16e}", x + 0.0)
}

/// Sorts by theta then branch and writes the table. The sort is stable,
/// so rows that tie keep their generation order.
pub fn write_csv<W: Write>(out: W, rows: &mut [Row]) -> CliResult<()> {
    rows.sort_by(|a, b| a.theta.total_cmp(&b.theta).then(a.branch.cmp(&b.branch)));
    let mut w = csv::Writer::from_writer(out);
    let err = |e: csv::Error| CliError::Input(format!("csv: {e}"));
    w.write_record(HEADER).map_err(err)?;
    for r in rows.iter() {
        let (kind, re, im) = match r.point {
            ExtComplex::Finite(z) => (r.kind.name(), num(z.re), num(z.im)),
            ExtComplex::Infinity => ("infinity", String::new(), String::new()),
        };
        w.write_record([kind, &num(r.theta), &re, &im, &r.branch.to_string()])
            .map_err(err)?;
    }
    w.flush().map_err(|e| CliError::Input(format!("csv: {e}")))?;
    Ok(())
}
