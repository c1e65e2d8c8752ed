//! JSON input files.

use std::path::Path;

use serde::Deserialize;
use srg_core::{CMatrix, Field, RationalTF, C64};

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldName {
    Real,
    #[default]
    Complex,
}

impl From<FieldName> for Field {
    fn from(f: FieldName) -> Self {
        match f {
            FieldName::Real => Field::Real,
            FieldName::Complex => Field::Complex,
        }
    }
}

/// A square matrix stored as separate real and imaginary row arrays.
/// `field` defaults to complex when omitted.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
    #[serde(default)]
    pub field: FieldName,
}

impl MatrixFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        parse_json(path)
    }

    pub fn field(&self) -> Field {
        self.field.into()
    }

    /// Checks shapes and the real-field constraint, then builds the matrix.
    pub fn to_matrix(&self) -> CliResult<CMatrix> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::Input("n must be positive".into()));
        }
        check_shape("re", &self.re, n)?;
        if let Some(im) = &self.im {
            check_shape("im", im, n)?;
            if self.field == FieldName::Real && im.iter().flatten().any(|&x| x != 0.0) {
                return Err(CliError::Input("field \"real\" requires im to be absent or all zero".into()));
            }
        }
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let im = self.im.as_ref().map_or(0.0, |m| m[i][j]);
                let z = C64::new(self.re[i][j], im);
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(CliError::Input(format!("entry ({i}, {j}) is not finite")));
                }
                data.push(z);
            }
        }
        Ok(CMatrix::new(n, n, data)?)
    }
}

fn check_shape(name: &str, rows: &[Vec<f64>], n: usize) -> CliResult<()> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(CliError::Input(format!("{name} must be {n}x{n}")));
    }
    Ok(())
}

/// Numerator and denominator coefficients, leading coefficient first.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TFFile {
    pub num_re: Vec<f64>,
    #[serde(default)]
    pub num_im: Option<Vec<f64>>,
    pub den_re: Vec<f64>,
    #[serde(default)]
    pub den_im: Option<Vec<f64>>,
}

impl TFFile {
    pub fn load(path: &Path) -> CliResult<Self> {
        parse_json(path)
    }

    pub fn to_tf(&self) -> CliResult<RationalTF> {
        let num = coeffs("num", &self.num_re, self.num_im.as_deref())?;
        let den = coeffs("den", &self.den_re, self.den_im.as_deref())?;
        match den.first() {
            Some(c) if *c != C64::new(0.0, 0.0) => {}
            _ => return Err(CliError::Input("den must have a nonzero leading coefficient".into())),
        }
        Ok(RationalTF::new(&num, &den)?)
    }
}

fn coeffs(name: &str, re: &[f64], im: Option<&[f64]>) -> CliResult<Vec<C64>> {
    if re.is_empty() {
        return Err(CliError::Input(format!("{name}_re is empty")));
    }
    if let Some(im) = im {
        if im.len() != re.len() {
            return Err(CliError::Input(format!("{name}_im must have the same length as {name}_re")));
        }
    }
    let out: Vec<C64> = re
        .iter()
        .enumerate()
        .map(|(k, &x)| C64::new(x, im.map_or(0.0, |v| v[k])))
        .collect();
    if out.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(CliError::Input(format!("{name} has non-finite coefficients")));
    }
    Ok(out)
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.display().to_string(),
        source,
    })
}
