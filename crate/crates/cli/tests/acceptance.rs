//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use srg_core::linalg::schur;
use srg_core::lti::Frequency;
use srg_core::oracle::sample_violation;
use srg_core::{
    bk_forward, build_v, check_containment, convex_hull_2d, default_grid, gamma_scaling_demo, general_eig,
    hull_bk_spectrum, lti_disk_point, nrange_contains, region_contains, sample_srg, spectral_factorize,
    srg_complex, srg_real, CMatrix, Field, RationalTF, SrgOptions, C64,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn gaussian(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let data = (0..n * n)
        .map(|_| C64::new(r.sample(StandardNormal), r.sample(StandardNormal)))
        .collect();
    CMatrix::new(n, n, data).unwrap()
}

fn real_gaussian(r: &mut ChaCha8Rng, n: usize) -> CMatrix {
    let data = (0..n * n).map(|_| C64::new(r.sample(StandardNormal), 0.0)).collect();
    CMatrix::new(n, n, data).unwrap()
}

fn f(z: C64) -> C64 {
    bk_forward(z.into()).value()
}

/// Outcome of one criterion: the checks passed and a short detail line.
struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn nilpotent_ellipse() -> Outcome {
    let t = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
    let region = srg_complex(&t, &SrgOptions::default()).unwrap();
    let (a, b) = (C64::new(0.5, 0.5), C64::new(0.5, -0.5));
    let worst = region
        .support()
        .unwrap()
        .support_points
        .iter()
        .map(|p| ((p.point + a).norm() + (p.point + b).norm() - 2f64.sqrt()).abs())
        .fold(0.0, f64::max);
    let real = srg_real(&t, &SrgOptions::default()).unwrap();
    let samples = sample_srg(&t, Field::Real, 10_000, 1).unwrap();
    let off = samples.iter().map(|&z| sample_violation(&real, z)).fold(0.0, f64::max);
    outcome(
        worst <= 1e-8 && real.boundary_only() && off <= 1e-6,
        format!("ellipse defect {worst:.2e}, boundary_only {}, real sample offset {off:.2e}", real.boundary_only()),
    )
}

fn trivial_fixed_points() -> Outcome {
    let lam = C64::new(2.0, -3.0);
    let cases = [
        (CMatrix::zeros(3, 3), C64::new(-1.0, 0.0)),
        (CMatrix::identity(3), C64::new(0.0, -1.0)),
        (CMatrix::identity(3).scale(lam), f(lam)),
    ];
    let mut worst: f64 = 0.0;
    for (t, want) in &cases {
        let region = srg_complex(t, &SrgOptions::default()).unwrap();
        for p in &region.support().unwrap().support_points {
            worst = worst.max((p.point - want).norm());
        }
    }
    outcome(worst <= 1e-12, format!("max deviation {worst:.2e}"))
}

fn normal_tightness() -> Outcome {
    let mut r = rng(103);
    let mut worst: f64 = 0.0;
    for k in 0..50 {
        let n = 1 + k % 8;
        let diag: Vec<C64> = (0..n)
            .map(|_| C64::new(r.sample(StandardNormal), r.sample(StandardNormal)))
            .collect();
        let u = schur(&gaussian(&mut r, n)).unwrap().q;
        let t = u.matmul(&CMatrix::from_diag(&diag)).unwrap().matmul(&u.adjoint()).unwrap();
        let region = srg_complex(&t, &SrgOptions::default()).unwrap();
        let want = convex_hull_2d(&diag.iter().map(|&l| f(l)).collect::<Vec<_>>()).unwrap();
        worst = worst.max(region.disk_hull().hausdorff(&want));
    }
    outcome(worst <= 1e-6, format!("max Hausdorff {worst:.2e} over 50 matrices"))
}

fn spectral_containment() -> Outcome {
    let mut r = rng(104);
    let mut failures = 0;
    let mut checked = 0;
    for k in 0..100 {
        let t = gaussian(&mut r, 1 + k % 6);
        let v = build_v(&t).unwrap().v;
        for lam in general_eig(&t).unwrap().values {
            checked += 1;
            if !nrange_contains(&v, f(lam), 1e-7, 720).unwrap() {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{failures} of {checked} eigenvalues outside"))
}

fn oracle_containment() -> Outcome {
    let mut r = rng(105);
    let mut outside = 0;
    let mut worst: f64 = 0.0;
    for k in 0..25 {
        let t = gaussian(&mut r, 2 + k % 5);
        let region = srg_complex(&t, &SrgOptions::default()).unwrap();
        let report = check_containment(&sample_srg(&t, Field::Complex, 10_000, k as u64).unwrap(), &region, 1e-7);
        outside += report.total - report.contained;
        worst = worst.max(report.max_violation);
    }
    outcome(outside == 0, format!("{outside} samples outside, max violation {worst:.2e}"))
}

fn four_by_four() -> CMatrix {
    CMatrix::from_real_rows(&[
        vec![1.0, 0.0, -1.0, 0.0],
        vec![0.0, 2.0, 0.0, 1.0],
        vec![1.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 1.0],
    ])
    .unwrap()
}

fn four_by_four_figure() -> Outcome {
    let t = four_by_four();
    let cbrt2 = 2f64.cbrt();
    let im = (27.0f64 / 16.0).powf(1.0 / 6.0);
    let want = [
        C64::new(1.0, 0.0),
        C64::new(1.0 + cbrt2, 0.0),
        C64::new(1.0 - cbrt2 / 2.0, im),
        C64::new(1.0 - cbrt2 / 2.0, -im),
    ];
    let got = general_eig(&t).unwrap().values;
    // match each expected eigenvalue to its nearest computed one, without reuse
    let mut used = [false; 4];
    let mut spec_err: f64 = 0.0;
    for w in &want {
        let (k, d) = got
            .iter()
            .enumerate()
            .filter(|(k, _)| !used[*k])
            .map(|(k, g)| (k, (g - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        used[k] = true;
        spec_err = spec_err.max(d);
    }
    let srg = srg_complex(&t, &SrgOptions::default()).unwrap();
    let hull = hull_bk_spectrum(&t).unwrap();
    let hull_in_srg = hull.disk_hull().vertices().iter().all(|&v| srg.disk_excess(v) <= 1e-7);
    let eig_in_hull = got.iter().all(|&l| region_contains(&hull, l.into(), 1e-7));
    outcome(
        spec_err <= 1e-9 && hull_in_srg && eig_in_hull,
        format!("spectrum error {spec_err:.2e}, srg ⊇ hull {hull_in_srg}, hull ⊇ spectrum {eig_in_hull}"),
    )
}

fn spectral_factor() -> Outcome {
    let h = RationalTF::from_real(&[2.0], &[1.0, 2.0, 1.0]).unwrap();
    let sf = spectral_factorize(&h).unwrap();
    let s5 = 5f64.sqrt();
    let want = [1.0, (2.0 + 2.0 * s5).sqrt(), s5];
    let coeff_err = if sf.s_den.len() == 3 {
        sf.s_den.iter().zip(want).map(|(c, w)| (c - w).norm()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let mut point_err: f64 = 0.0;
    for &w in &default_grid(&h, 512).unwrap().omegas {
        let omega = Frequency::Finite(w);
        let got = lti_disk_point(&h, &sf, omega).unwrap().value();
        point_err = point_err.max((got - bk_forward(h.eval(omega)).value()).norm());
    }
    outcome(
        coeff_err <= 1e-9 && point_err <= 1e-10,
        format!("s_den error {coeff_err:.2e}, point identity error {point_err:.2e}"),
    )
}

fn real_dichotomy() -> Outcome {
    let mut r = rng(108);
    let mut off: f64 = 0.0;
    for k in 0..20 {
        let t = real_gaussian(&mut r, 2);
        let region = srg_complex(&t, &SrgOptions::default()).unwrap();
        for z in sample_srg(&t, Field::Real, 2000, k).unwrap() {
            off = off.max(region.boundary_distance(z));
        }
    }
    let mut outside = 0;
    let mut shallow = 0;
    for k in 0..20 {
        let t = real_gaussian(&mut r, 4);
        let region = srg_real(&t, &SrgOptions::default()).unwrap();
        let samples = sample_srg(&t, Field::Real, 5000, 100 + k).unwrap();
        let report = check_containment(&samples, &region, 1e-7);
        outside += report.total - report.contained;
        if region.disk_hull().area() > 1e-2 {
            let deepest = samples
                .iter()
                .map(|&z| -region.disk_signed_distance(bk_forward(z).value()))
                .fold(f64::NEG_INFINITY, f64::max);
            if deepest <= 1e-3 {
                shallow += 1;
            }
        }
    }
    outcome(
        off <= 1e-6 && outside == 0 && shallow == 0,
        format!("2x2 boundary offset {off:.2e}; 4x4: {outside} outside, {shallow} without an interior sample"),
    )
}

fn gamma_scaling() -> Outcome {
    let t = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
    let d = gamma_scaling_demo(&t, &[1.0, 10.0, 100.0]).unwrap();
    let decreasing = d.windows(2).all(|p| p[1].1 < p[0].1);
    let last = d.last().unwrap().1;
    let list: Vec<String> = d.iter().map(|(g, h)| format!("{g}: {h:.4}")).collect();
    outcome(decreasing && last <= 0.02, format!("Hausdorff by gamma [{}]", list.join(", ")))
}

fn run_tool(args: &[&str]) -> bool {
    Command::new(env!("CARGO_BIN_EXE_srgtool"))
        .args(args)
        .env("SRG_THREADS", "3")
        .status()
        .map(|s| s.success())
        .unwrap_or(false)
}

fn cli_determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_owned();
    std::fs::write(
        p("m.json"),
        r#"{"n": 4, "re": [[1,0,-1,0],[0,2,0,1],[1,1,0,0],[0,0,1,1]], "field": "real"}"#,
    )
    .unwrap();
    std::fs::write(p("tf.json"), r#"{"num_re": [2], "den_re": [1, 2, 1]}"#).unwrap();
    let runs: [Vec<String>; 5] = [
        ["srg-matrix", "--input", &p("m.json"), "--spectrum", "--check", "--seed", "7"].map(String::from).to_vec(),
        ["srg-matrix", "--input", &p("m.json"), "--spectrum", "--format", "svg"].map(String::from).to_vec(),
        ["srg-lti", "--tf", &p("tf.json")].map(String::from).to_vec(),
        ["srg-lti", "--tf", &p("tf.json"), "--format", "svg"].map(String::from).to_vec(),
        ["nrange", "--input", &p("m.json")].map(String::from).to_vec(),
    ];
    let mut same = 0;
    for (k, args) in runs.iter().enumerate() {
        let mut outputs = Vec::new();
        for rep in 0..2 {
            let out = p(&format!("out{k}_{rep}"));
            let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
            full.extend(["--out", &out]);
            if !run_tool(&full) {
                return outcome(false, format!("srgtool {} failed", args.join(" ")));
            }
            outputs.push(std::fs::read(Path::new(&out)).unwrap());
        }
        if outputs[0] == outputs[1] && !outputs[0].is_empty() {
            same += 1;
        }
    }
    outcome(same == runs.len(), format!("{same} of {} outputs byte-identical", runs.len()))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria: [Criterion; 10] = [
        ("nilpotent ellipse", nilpotent_ellipse, secs(1)),
        ("trivial fixed points", trivial_fixed_points, secs(1)),
        ("normal-operator tightness", normal_tightness, secs(30)),
        ("spectral containment", spectral_containment, secs(60)),
        ("oracle containment", oracle_containment, secs(60)),
        ("4x4 figure reproduction", four_by_four_figure, secs(5)),
        ("spectral factor", spectral_factor, secs(2)),
        ("real-field dichotomy", real_dichotomy, secs(60)),
        ("gamma scaling", gamma_scaling, secs(5)),
        ("CLI determinism", cli_determinism, None),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check();
        let elapsed = start.elapsed();
        let in_time = limit.map_or(true, |l| elapsed < l);
        let ok = out.ok && in_time;
        if !ok {
            failed += 1;
        }
        let budget = limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
        println!(
            "{} {:>2} {name}: {}; {:.3}s{budget}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
