use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::Path;

use srg_core::{
    bk_forward, bk_inverse, check_containment, default_grid, general_eig, hull_bk_spectrum, lti_srg, nrange_boundary,
    sample_srg, srg, ConvexPolygon, DiskPoint, ExtComplex, Field, Frequency, SrgOptions, SrgRegion, C64,
};

use crate::args::{Format, LtiArgs, MatrixArgs, NrangeArgs, Output};
use crate::error::{CliError, CliResult};
use crate::input::{MatrixFile, TFFile};
use crate::svg::{render, Figure, Shape};
use crate::table::{write_csv, Branch, Kind, Row};

/// Tolerance for `--check`.
pub const CHECK_TOL: f64 = 1e-7;

pub fn srg_matrix(args: &MatrixArgs) -> CliResult<()> {
    let file = MatrixFile::load(&args.input)?;
    let t = file.to_matrix()?;
    let field = file.field();
    let opts = SrgOptions {
        num_angles: args.angles as usize,
        field,
        ..SrgOptions::default()
    };
    let region = srg(&t, &opts)?;
    let spectrum = if args.spectrum {
        Some((hull_bk_spectrum(&t)?, general_eig(&t)?.values))
    } else {
        None
    };

    match args.output.format {
        Format::Csv => {
            let mut rows = region_rows(&region, Kind::Boundary);
            if let Some((hull, eigs)) = &spectrum {
                rows.extend(region_rows(hull, Kind::Spectrum));
                let center = hull.disk_hull().centroid();
                for &l in eigs {
                    rows.push(Row::finite(Kind::Eigenvalue, disk_angle(center, l.into()), l, Branch::None));
                }
            }
            emit_csv(&args.output, rows)?;
        }
        Format::Svg => {
            let mut fig = Figure {
                title: format!("SRG of a {0}x{0} {1} matrix", t.rows(), field_name(field)),
                shapes: region_shapes(&region),
            };
            if let Some((hull, eigs)) = &spectrum {
                fig.shapes.extend(branch_loops(hull).into_iter().map(Shape::Hull));
                fig.shapes.extend(eigs.iter().map(|&l| Shape::Dot(l)));
            }
            emit(&args.output, render(&fig).as_bytes())?;
        }
    }

    if args.check {
        let samples = sample_srg(&t, field, args.samples as usize, args.seed)?;
        let report = check_containment(&samples, &region, CHECK_TOL);
        eprintln!(
            "check: {}/{} samples contained, max violation {:.3e} ({})",
            report.contained, report.total, report.max_violation, report.generator
        );
        if !report.all_contained() {
            return Err(CliError::Check(format!(
                "{} of {} samples outside the region (worst {:?})",
                report.total - report.contained,
                report.total,
                report.worst_point
            )));
        }
    }
    Ok(())
}

pub fn srg_lti(args: &LtiArgs) -> CliResult<()> {
    let h = TFFile::load(&args.tf)?.to_tf()?;
    let grid = default_grid(&h, args.grid as usize)?;
    let lti = lti_srg(&h, &grid)?;
    if args.emit_factor {
        let f = &lti.factor;
        eprintln!("s_num = [{}]", coeff_list(&f.s_num));
        eprintln!("s_den = [{}]", coeff_list(&f.s_den));
        eprintln!("scale = {:.16e}", f.scale);
    }

    match args.output.format {
        Format::Csv => {
            let mut rows = region_rows(&lti.region, Kind::Boundary);
            for s in &lti.response {
                rows.push(Row::new(Kind::Response, freq_angle(s.omega), s.value, Branch::None));
            }
            emit_csv(&args.output, rows)?;
        }
        Format::Svg => {
            let mut fig = Figure {
                title: format!("SRG of a rational transfer function, {} grid points", args.grid),
                shapes: region_shapes(&lti.region),
            };
            let mut curve: Vec<(f64, Option<C64>)> = lti
                .response
                .iter()
                .filter(|s| matches!(s.omega, Frequency::Finite(_)))
                .map(|s| (freq_angle(s.omega), s.value.as_finite()))
                .collect();
            curve.sort_by(|a, b| a.0.total_cmp(&b.0));
            fig.shapes.push(Shape::Curve(curve.into_iter().map(|(_, z)| z).collect()));
            emit(&args.output, render(&fig).as_bytes())?;
        }
    }
    Ok(())
}

pub fn nrange(args: &NrangeArgs) -> CliResult<()> {
    let a = MatrixFile::load(&args.input)?.to_matrix()?;
    let w = nrange_boundary(&a, args.angles as usize)?;
    match args.output.format {
        Format::Csv => {
            let rows = w
                .support_points
                .iter()
                .map(|p| Row::finite(Kind::Boundary, p.theta, p.point, Branch::None))
                .collect();
            emit_csv(&args.output, rows)
        }
        Format::Svg => {
            let mut shapes = vec![Shape::Region(w.hull.vertices().to_vec())];
            shapes.extend(general_eig(&a)?.values.into_iter().map(Shape::Dot));
            let fig = Figure {
                title: format!("numerical range of a {0}x{0} matrix", a.rows()),
                shapes,
            };
            emit(&args.output, render(&fig).as_bytes())
        }
    }
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Real => "real",
        Field::Complex => "complex",
    }
}

/// Polar angle of `f(z)` about `center`, in `[0, 2 pi)`.
fn disk_angle(center: C64, z: ExtComplex) -> f64 {
    let d = bk_forward(z).value() - center;
    let a = d.im.atan2(d.re);
    if a < 0.0 {
        a + std::f64::consts::TAU
    } else {
        a
    }
}

/// `atan(omega)`, with the point at infinity at `pi/2`.
fn freq_angle(w: Frequency) -> f64 {
    match w {
        Frequency::Finite(w) => w.atan(),
        Frequency::Infinity => FRAC_PI_2,
    }
}

fn pair_rows(kind: Kind, theta: f64, w: C64) -> [Row; 2] {
    let upper = match DiskPoint::new(w) {
        Ok(p) => bk_inverse(p)[0],
        Err(_) => ExtComplex::Infinity,
    };
    [
        Row::new(kind, theta, upper, Branch::Upper),
        Row::new(kind, theta, upper.conj(), Branch::Lower),
    ]
}

/// Boundary rows of a region: one conjugate pair per sweep point when the
/// region came from an operator, else one per hull vertex.
fn region_rows(region: &SrgRegion, kind: Kind) -> Vec<Row> {
    match region.support() {
        Some(s) => s
            .support_points
            .iter()
            .flat_map(|p| pair_rows(kind, p.theta, p.point))
            .collect(),
        None => hull_rows(region.disk_hull(), kind),
    }
}

fn hull_rows(hull: &ConvexPolygon, kind: Kind) -> Vec<Row> {
    let c = hull.centroid();
    hull.vertices()
        .iter()
        .flat_map(|&w| {
            let d = w - c;
            let theta = if d.norm() == 0.0 { 0.0 } else { d.im.atan2(d.re).rem_euclid(std::f64::consts::TAU) };
            pair_rows(kind, theta, w)
        })
        .collect()
}

/// The two conjugate boundary loops of a region with infinite points dropped.
fn branch_loops(region: &SrgRegion) -> Vec<Vec<C64>> {
    let upper: Vec<C64> = region.upper_branch().iter().filter_map(|z| z.as_finite()).collect();
    let lower: Vec<C64> = upper.iter().map(|z| z.conj()).collect();
    vec![upper, lower]
}

fn region_shapes(region: &SrgRegion) -> Vec<Shape> {
    let loops = branch_loops(region);
    if region.boundary_only() {
        // only the curve itself is attained
        loops
            .into_iter()
            .map(|mut l| {
                if let Some(&first) = l.first() {
                    l.push(first);
                }
                Shape::Curve(l.into_iter().map(Some).collect())
            })
            .collect()
    } else {
        loops.into_iter().map(Shape::Region).collect()
    }
}

fn coeff_list(c: &[C64]) -> String {
    c.iter()
        .map(|z| format!("{:.16e}{:+.16e}i", z.re, z.im))
        .collect::<Vec<_>>()
        .join(", ")
}

fn emit_csv(out: &Output, mut rows: Vec<Row>) -> CliResult<()> {
    let mut buf = Vec::new();
    write_csv(&mut buf, &mut rows)?;
    emit(out, &buf)
}

/// Writes to stdout for `-`, otherwise through a temporary file renamed into place.
pub fn emit(out: &Output, bytes: &[u8]) -> CliResult<()> {
    let path = out.out.as_path();
    if path == Path::new("-") {
        let mut stdout = std::io::stdout().lock();
        return stdout
            .write_all(bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| CliError::io(path, e));
    }
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| CliError::io(path, e))?;
    tmp.write_all(bytes).map_err(|e| CliError::io(path, e))?;
    tmp.persist(path).map_err(|e| CliError::io(path, e.error))?;
    Ok(())
}
