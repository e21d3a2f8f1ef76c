//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p orbitwave-core --test acceptance`. Tolerances and
//! grid sizes are fixed; a criterion that cannot be met reports FAIL and the
//! process exits non-zero.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use orbitwave_core::atoms::AtomSum;
use orbitwave_core::axb::axb_chart;
use orbitwave_core::engine::spectral_support_points;
use orbitwave_core::groups::{
    boost, chart_test_bump, classify_lorentz_orbit, classify_parabolic_suborbit, contragredient_act, default_orbit_tol,
    haar_invariance_defect, ipq, lorentz_defect, na_element, nilpotent, orbit_point_formula, plane_rotation,
    symm_act, symm_signature, tau_pq_scaled,
};
use orbitwave_core::packages::PackageOptions;
use orbitwave_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;

fn pass_if(ok: bool, detail: String) -> Check {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn err(e: Error) -> String {
    format!("error: {e}")
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().expect("thread pool").install(f)
}

fn half_line() -> OrbitLabel {
    OrbitLabel::HalfLine { positive: true }
}

// ---------------------------------------------------------------- A1

fn a1_grid() -> SpatialGrid {
    SpatialGrid::cube(1, 64.0, 1024).unwrap()
}

fn a1_signal(grid: &SpatialGrid) -> GridSignal {
    // f̂ is a bump on [1, 4]
    WaveletSpec::bump(half_line(), vec![2.5], 1.5).unwrap().sample(grid)
}

fn a1() -> Check {
    let limit = 30.0;
    let start = Instant::now();
    let (ratio, rec_err) = single_threaded(|| -> Result<(f64, f64)> {
        let grid = a1_grid();
        let f = a1_signal(&grid);
        let psi = AxbWavelet::bump(1.5, 0.4)?.with_admissibility()?;
        let chart = axb_chart(1.0 / 16.0, 16.0, 256)?;
        let w = axb_transform(&f, &psi, &chart)?;
        let ratio = axb_parseval_ratio(&w, &f, &psi)?;
        let rec = axb_reconstruct(&w, &psi, psi.c_psi_sq()?)?;
        Ok((ratio, rec.relative_error(&f)?))
    })
    .map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        (0.99..=1.01).contains(&ratio) && rec_err < 0.02 && secs < limit,
        format!("Parseval ratio {ratio:.6} (need [0.99, 1.01]), reconstruction error {rec_err:.3e} (< 2e-2), single-threaded {secs:.2}s (< {limit}s)"),
    )
}

// ---------------------------------------------------------------- A2

fn a2() -> Check {
    let start = Instant::now();
    let psi = WaveletSpec::indicator(half_line(), vec![1.5], 0.5).map_err(err)?;
    let c = axb_admissibility(&psi).map_err(err)?;
    let dev = (c - 2f64.ln()).abs();
    let secs = start.elapsed().as_secs_f64();
    pass_if(dev < 1e-6 && secs < 1.0, format!("C² = {c:.12}, |C² - ln 2| = {dev:.2e} (< 1e-6), {secs:.3}s (< 1s)"))
}

// ---------------------------------------------------------------- A3

fn a3() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = SpatialGrid::cube(1, 32.0, 512).unwrap();
    let (mut worst_sum, mut worst_half) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let values = (0..grid.len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
        let f = GridSignal::new(grid.clone(), values).map_err(err)?;
        let pair = hardy_project(&f).map_err(err)?;
        let (total, p, m) = (f.norm_sq(), pair.plus.norm_sq(), pair.minus.norm_sq());
        worst_sum = worst_sum.max((p + m - total).abs() / total);
        worst_half = worst_half.max((p - m).abs() / total);
    }
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        worst_sum < 1e-12 && worst_half < 1e-10 && secs < 5.0,
        format!("max |‖f₊‖²+‖f₋‖²-‖f‖²|/‖f‖² = {worst_sum:.2e} (< 1e-12), max |‖f₊‖²-‖f₋‖²|/‖f‖² = {worst_half:.2e} (< 1e-10), {secs:.2}s (< 5s)"),
    )
}

// ---------------------------------------------------------------- A4

fn random_lorentz_word(rng: &mut ChaCha8Rng, len: usize) -> GroupElement {
    let mut g = GroupElement::identity(3);
    for _ in 0..len {
        let step = match rng.gen_range(0..3) {
            0 => boost(2, rng.gen_range(-0.5..0.5)),
            1 => plane_rotation(2, 1, 2, rng.gen_range(0.0..2.0 * PI)),
            _ => nilpotent(&[rng.gen_range(-0.5..0.5)]),
        }
        .unwrap();
        g = g.compose(&step).unwrap();
    }
    g
}

fn a4() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst_defect = 0.0f64;
    for _ in 0..1000 {
        let g = random_lorentz_word(&mut rng, 6);
        worst_defect = worst_defect.max(lorentz_defect(&g));
    }
    let mut worst_formula = 0.0f64;
    for _ in 0..1000 {
        let (v, lambda, t) = (rng.gen_range(-1.0..1.0), rng.gen_range(0.3..3.0), rng.gen_range(-1.5..1.5));
        let g = na_element(&[v], lambda, t).map_err(err)?;
        let direct = g.act(&[0.0, 0.0, 1.0]).map_err(err)?;
        let formula = orbit_point_formula(&[v], lambda, t).map_err(err)?;
        let scale = direct.iter().map(|x| x.abs()).fold(1.0, f64::max);
        let diff = direct.iter().zip(&formula).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        worst_formula = worst_formula.max(diff / scale);
    }
    // points in every orbit, including exact cone points
    let mut points: Vec<Vec<f64>> = Vec::new();
    for _ in 0..10 {
        let phi = rng.gen_range(0.0..2.0 * PI);
        let s = rng.gen_range(0.5..2.0);
        let r = rng.gen_range(0.1..0.9);
        points.push(vec![s, s * r * phi.cos(), s * r * phi.sin()]);
        points.push(vec![-s, s * r * phi.cos(), s * r * phi.sin()]);
        points.push(vec![s * r, s * phi.cos(), s * phi.sin()]);
        points.push(vec![-s * r, s * phi.cos(), s * phi.sin()]);
        points.push(vec![s, s * phi.cos(), s * phi.sin()]);
    }
    let mut mismatches = 0;
    let mut fine_mismatches = 0;
    let mut actions = 0;
    for _ in 0..100 {
        let g = random_lorentz_word(&mut rng, 4).scaled(rng.gen_range(0.5..2.0)).map_err(err)?;
        let na = na_element(&[rng.gen_range(-1.0..1.0)], rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0)).map_err(err)?;
        for u in &points {
            let moved = contragredient_act(&g, u).map_err(err)?;
            if classify_lorentz_orbit(u, default_orbit_tol(u)) != classify_lorentz_orbit(&moved, default_orbit_tol(&moved)) {
                mismatches += 1;
            }
            // the NA sub-orbits of O3 are preserved by NA itself
            if let Ok(tag) = classify_parabolic_suborbit(u, default_orbit_tol(u)) {
                let image = na.act(u).map_err(err)?;
                if classify_parabolic_suborbit(&image, default_orbit_tol(&image)).ok() != Some(tag) {
                    fine_mismatches += 1;
                }
            }
            actions += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        worst_defect < 1e-11 && worst_formula < 1e-12 && mismatches == 0 && fine_mismatches == 0 && secs < 5.0,
        format!(
            "max Lorentz defect {worst_defect:.2e} (< 1e-11), orbit formula {worst_formula:.2e} (< 1e-12), label changes {mismatches}+{fine_mismatches} of {actions} actions (0), {secs:.2}s (< 5s)"
        ),
    )
}

// ---------------------------------------------------------------- A5

fn a5() -> Check {
    let start = Instant::now();
    let k = 512;
    let axb = HaarChart::new(GroupId::AxB, vec![[(-3.0f64).exp(), 3.0f64.exp()], [-6.0, 6.0]], vec![k, k]).map_err(err)?;
    let axb_g0 = GroupElement::from_rows(2, &[1.3, 0.4, 0.0, 1.0]).map_err(err)?;
    let d_axb = haar_invariance_defect(&axb, &axb_g0, &chart_test_bump(&axb, vec![0.0, 0.0], vec![1.0, 1.0])).map_err(err)?;

    let rb = HaarChart::new(GroupId::RplusBoost, vec![[(-3.0f64).exp(), 3.0f64.exp()], [-3.0, 3.0]], vec![k, k]).map_err(err)?;
    let rb_g0 = boost(1, 0.3).and_then(|g| g.scaled(1.2)).map_err(err)?;
    let d_rb = haar_invariance_defect(&rb, &rb_g0, &chart_test_bump(&rb, vec![0.0, 0.0], vec![1.0, 1.0])).map_err(err)?;

    let na_bounds = vec![[-3.0, 3.0], [(-2.0f64).exp(), 2.0f64.exp()], [-2.0, 2.0]];
    let na = HaarChart::new(GroupId::Na, na_bounds.clone(), vec![k, k, k]).map_err(err)?;
    let na_g0 = na_element(&[0.3], 1.2, 0.25).map_err(err)?;
    let bump = chart_test_bump(&na, vec![0.0; 3], vec![1.0; 3]);
    let d_na = haar_invariance_defect(&na, &na_g0, &bump).map_err(err)?;

    let tilted = HaarChart::new(GroupId::Na, na_bounds, vec![128; 3]).and_then(|c| c.with_tilt(1.0)).map_err(err)?;
    let d_tilt = haar_invariance_defect(&tilted, &na_g0, &bump).map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        d_axb < 1e-3 && d_rb < 1e-3 && d_na < 1e-3 && d_tilt > 0.1 && secs < 60.0,
        format!(
            "defects at {k}/axis: ax+b {d_axb:.2e}, R+SO(1,1) {d_rb:.2e}, NA {d_na:.2e} (< 1e-3); e^t-perturbed NA {d_tilt:.3} (> 0.1); {secs:.1}s (< 60s)"
        ),
    )
}

// ---------------------------------------------------------------- A6

fn a6() -> Check {
    let start = Instant::now();
    let o1 = OrbitLabel::lorentz(LorentzTag::O1);
    let grid = SpatialGrid::cube(2, 64.0, 256).map_err(err)?;
    let psi = WaveletSpec::bump(o1, vec![1.5, 0.0], 0.4).map_err(err)?;
    let f_atom = WaveletSpec::bump(o1, vec![2.2, 0.6], 0.5).map_err(err)?;
    let f = f_atom.sample(&grid);
    let template = HaarChart::new(GroupId::RplusBoost, vec![[0.5, 2.0], [-1.0, 1.0]], vec![64, 64]).map_err(err)?;
    let probes = vec![vec![1.5, 0.0], vec![2.2, 0.6], vec![1.0, -0.3], vec![3.0, 1.0], vec![0.8, 0.2]];
    let report = gcwt_admissibility(&psi, &template, &probes, &AdmissibilityOptions::default()).map_err(err)?;
    let support = spectral_support_points(&fourier(&f), 1e-14, 4000);
    let chart = covering_chart(&template, &support, &[(psi.center.clone(), psi.radius)], 0.05).map_err(err)?;
    let w = gcwt_transform(&f, &psi, &chart).map_err(err)?;
    let ratio = gcwt_parseval(&w, &f, report.c_psi_sq).map_err(err)?;

    // a second wavelet piece in the spacelike quadrant b > |a|
    let o31 = OrbitLabel::lorentz(LorentzTag::O31);
    let both = AtomSum::new(vec![
        Box::new(psi.clone()),
        Box::new(WaveletSpec::bump(o31, vec![0.0, 1.5], 0.4).map_err(err)?),
    ])
    .map_err(err)?;
    let g = WaveletSpec::bump(o31, vec![0.3, 2.0], 0.5).map_err(err)?.sample(&grid);
    let wf = gcwt_transform(&f, &both, &chart).map_err(err)?;
    let wg = gcwt_transform(&g, &both, &chart).map_err(err)?;
    let cross = wf.inner(&wg).map_err(err)?.norm() / (wf.norm() * wg.norm()).max(f64::MIN_POSITIVE);
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        (0.98..=1.02).contains(&ratio) && report.spread < 0.01 && cross < 1e-10 && wg.norm() > 0.0 && secs < 300.0,
        format!(
            "Parseval ratio {ratio:.5} (need [0.98, 1.02]) on a 64x64 chart x 256² grid, C² spread {:.2e} over 5 probes (< 1e-2), cross-orbit {cross:.1e} (< 1e-10), {secs:.1}s (< 300s)",
            report.spread
        ),
    )
}

// ---------------------------------------------------------------- A7

fn o3_wavelet() -> Result<WaveletSpec> {
    let c = vec![0.5f64.sinh(), 0.0, 0.5f64.cosh()];
    let r = 0.3 * (c[2] - c[0]) / 2f64.sqrt();
    WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O31), c, r)
}

fn a7() -> Check {
    let start = Instant::now();
    let psi = o3_wavelet().map_err(err)?;
    let probe = vec![psi.center.clone()];
    let opts = AdmissibilityOptions::default();
    let full = HaarChart::new(GroupId::FullLorentz, vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0], [0.0, 2.0 * PI]], vec![12, 12, 12, 24])
        .map_err(err)?;
    let full_outcome = gcwt_admissibility(&psi, &full, &probe, &opts);
    let na = HaarChart::new(GroupId::Na, vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0]], vec![16, 16, 16]).map_err(err)?;
    let na_outcome = gcwt_admissibility(&psi, &na, &probe, &opts);
    let secs = start.elapsed().as_secs_f64();
    let full_desc = match &full_outcome {
        Err(Error::Divergent(m)) => format!("full group diverges ({})", m.rsplit(": ").next().unwrap_or("")),
        Err(e) => format!("full group: {e}"),
        Ok(r) => format!("full group converged to {:.4e}", r.c_psi_sq),
    };
    let na_desc = match &na_outcome {
        Ok(r) => format!("NA converges: C² = {:.6e} after {} evaluations", r.c_psi_sq, r.probes[0].history.len()),
        Err(e) => format!("NA: {e}"),
    };
    pass_if(
        matches!(full_outcome, Err(Error::Divergent(_))) && na_outcome.is_ok() && secs < 300.0,
        format!("{full_desc}; {na_desc}; {secs:.1}s (< 300s)"),
    )
}

// ---------------------------------------------------------------- A8

struct PackageRun {
    mixture_error: f64,
    parseval: Vec<f64>,
    o1_output: f64,
}

fn package_signal(grid: &SpatialGrid, pkg: &WaveletPackage) -> Result<GridSignal> {
    let c1 = pkg.branches[0].psi.center.clone();
    let c2 = pkg.branches[1].psi.center.clone();
    let r = 0.8 * pkg.branches[0].psi.radius;
    let a = TransformedAtom::new(
        WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O31), vec![c1[0] + 0.01, c1[1] - 0.015, c1[2] + 0.01], r)?,
        SemidirectElement::translation(vec![2.0, -3.0, 1.0]),
    )?;
    let b = TransformedAtom::new(
        WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O32), vec![c2[0] - 0.01, c2[1] + 0.01, c2[2] + 0.015], r)?,
        SemidirectElement::translation(vec![-4.0, 1.0, 0.5]),
    )?;
    a.sample(grid).add(&b.sample(grid).scaled(Complex64::new(0.3, -0.8)))
}

fn run_package(grid: &SpatialGrid, samples: usize) -> Result<PackageRun> {
    let opts = PackageOptions { chart_samples: vec![samples; 3], ..PackageOptions::default() };
    let pkg = package_build(&OrbitLabel::lorentz(LorentzTag::O3), &opts)?;
    let f = package_signal(grid, &pkg)?;
    let coeffs = package_transform(&f, &pkg)?;
    let mut parseval = Vec::new();
    for (c, b) in coeffs.iter().zip(&pkg.branches) {
        let part = orbit_project(&f, &b.suborbit)?;
        parseval.push(gcwt_parseval(c, &part, b.c_psi_sq)?);
    }
    let rec = package_reconstruct(&coeffs, &pkg)?;
    let target = orbit_project(&f, &OrbitLabel::lorentz(LorentzTag::O3))?;
    let mixture_error = rec.relative_error(&target)?;

    let o1 = WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O1), vec![1.2, 0.2, 0.1], 0.3)?.sample(grid);
    let o1_rec = package_reconstruct(&package_transform(&o1, &pkg)?, &pkg)?;
    Ok(PackageRun { mixture_error, parseval, o1_output: o1_rec.norm() / o1.norm() })
}

fn a8() -> Check {
    let start = Instant::now();
    let grid = SpatialGrid::cube(3, 60.0, 64).map_err(err)?;
    let coarse = run_package(&grid, 16).map_err(err)?;
    let fine = run_package(&grid, 32).map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    let parseval_dev = fine.parseval.iter().map(|p| (p - 1.0).abs()).fold(0.0, f64::max);
    pass_if(
        parseval_dev < 0.02
            && fine.mixture_error < 0.05
            && fine.o1_output < 1e-10
            && coarse.o1_output < 1e-10
            && fine.mixture_error < coarse.mixture_error
            && secs < 1200.0,
        format!(
            "64³ grid: branch Parseval {:?} (within 2%), mixture error {:.3e} at 32³ vs {:.3e} at 16³ (< 5e-2, decreasing), O1 output {:.1e} (< 1e-10), {secs:.1}s (< 1200s)",
            fine.parseval.iter().map(|p| format!("{p:.4}")).collect::<Vec<_>>(),
            fine.mixture_error,
            coarse.mixture_error,
            fine.o1_output.max(coarse.o1_output)
        ),
    )
}

// ---------------------------------------------------------------- A9

fn kernel_signal(grid: &SpatialGrid, rng: &mut ChaCha8Rng) -> Result<GridSignal> {
    // random combination of dilated, translated bumps with spectra in [0.5, 10]
    let base = WaveletSpec::bump(half_line(), vec![3.0], 2.0)?;
    let mut u = GridSignal::zeros(grid.clone());
    for _ in 0..6 {
        let a = rng.gen_range(0.5..2.0);
        let b = rng.gen_range(-10.0..10.0);
        let coef = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let atom = TransformedAtom::new(base.clone(), SemidirectElement::new(GroupElement::from_rows(1, &[a])?, vec![b])?)?;
        u = u.add(&atom.sample(grid).scaled(coef))?;
    }
    Ok(u)
}

/// Fixed `(a, b)` sample points, snapped to the translation grid.
fn kernel_samples(grid: &SpatialGrid, count: usize) -> Vec<(f64, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(90);
    let (l, dx) = (grid.extent()[0], grid.spacing(0));
    (0..count)
        .map(|_| {
            let a: f64 = rng.gen_range(0.3..2.0);
            let b: f64 = rng.gen_range(-16.0..16.0);
            (a, ((b + l) / dx).round() as usize)
        })
        .collect()
}

fn kernel_defect(half_width: f64, samples: usize, scales: usize) -> Result<f64> {
    let grid = SpatialGrid::cube(1, half_width, samples)?;
    let u = kernel_signal(&grid, &mut ChaCha8Rng::seed_from_u64(9))?;
    let psi = AxbWavelet::bump(1.5, 0.4)?.with_admissibility()?;
    let chart = axb_chart(1.0 / 16.0, 16.0, scales)?;
    Ok(axb_kernel_defect(&psi, &u, &chart, &kernel_samples(&grid, 8))?.defect)
}

fn a9() -> Check {
    let start = Instant::now();
    // A1 grids, then a doubled periodic box at the same spacing with coarse and fine scales
    let at_a1 = kernel_defect(64.0, 1024, 256).map_err(err)?;
    let wide_coarse = kernel_defect(128.0, 2048, 64).map_err(err)?;
    let wide_fine = kernel_defect(128.0, 2048, 256).map_err(err)?;
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        at_a1 < 5e-2 && wide_fine < at_a1 && wide_fine < wide_coarse && secs < 120.0,
        format!(
            "kernel defect {at_a1:.3e} at A1 grids (< 5e-2); refined: L=128 with 64 scales {wide_coarse:.3e}, with 256 scales {wide_fine:.3e} (decreasing); {secs:.1}s (< 120s)"
        ),
    )
}

// ---------------------------------------------------------------- A10

fn random_so_pq(rng: &mut ChaCha8Rng, p: usize, q: usize) -> DMatrix<f64> {
    let n = p + q;
    let mut g = DMatrix::identity(n, n);
    if n < 2 {
        return g;
    }
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if i == j {
            j = (i + 1) % n;
        }
        let s: f64 = rng.gen_range(-0.8..0.8);
        let mut m = DMatrix::identity(n, n);
        if (i < p) == (j < p) {
            m[(i, i)] = s.cos();
            m[(j, j)] = s.cos();
            m[(i, j)] = -s.sin();
            m[(j, i)] = s.sin();
        } else {
            m[(i, i)] = s.cosh();
            m[(j, j)] = s.cosh();
            m[(i, j)] = s.sinh();
            m[(j, i)] = s.sinh();
        }
        g = g * m;
    }
    g
}

fn a10() -> Check {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut sig_fail, mut fixed_fail) = (0, 0);
    let (mut worst_tau, mut worst_fixed) = (0.0f64, 0.0f64);
    for _ in 0..500 {
        let n = rng.gen_range(1..=5);
        let p = rng.gen_range(0..=n);
        let q = n - p;
        // X = O D Oᵗ with signs fixed by construction: the oracle signature is (p, q, 0)
        let raw = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
        let o = raw.qr().q();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_fn(n, |i, _| {
            rng.gen_range(0.5..2.0) * if i < p { 1.0 } else { -1.0 }
        }));
        let x = &o * d * o.transpose();
        let x = (&x + x.transpose()) * 0.5;
        let mut gm = DMatrix::identity(n, n) + DMatrix::from_fn(n, n, |_, _| rng.gen_range(-0.4..0.4));
        if gm.determinant() < 0.0 {
            gm.row_mut(0).neg_mut();
        }
        let g = GroupElement::new(gm * rng.gen_range(0.5..2.0)).map_err(err)?;
        let moved = symm_act(&g, &x).map_err(err)?;
        let oracle = {
            let eig = nalgebra::SymmetricEigen::new(moved.clone());
            let pos = eig.eigenvalues.iter().filter(|&&l| l > 0.0).count();
            (pos, n - pos, 0)
        };
        if symm_signature(&x, None).map_err(err)? != (p, q, 0)
            || symm_signature(&moved, None).map_err(err)? != (p, q, 0)
            || oracle != (p, q, 0)
        {
            sig_fail += 1;
        }
        let t = tau_pq_scaled(&g, p, q).map_err(err)?;
        let back = tau_pq_scaled(&t, p, q).map_err(err)?;
        worst_tau = worst_tau.max(back.max_entry_diff(&g) / g.matrix().amax());

        let h = GroupElement::new(random_so_pq(&mut rng, p, q)).map_err(err)?;
        let i = ipq(p, q);
        let preserved = (h.matrix() * &i * h.matrix().transpose() - &i).amax();
        let image = tau_pq_scaled(&h, p, q).map_err(err)?;
        let fixed = image.max_entry_diff(&h) / h.matrix().amax();
        worst_fixed = worst_fixed.max(fixed).max(preserved);
        if fixed > 1e-12 || preserved > 1e-12 {
            fixed_fail += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    pass_if(
        sig_fail == 0 && worst_tau < 1e-12 && fixed_fail == 0 && secs < 10.0,
        format!(
            "signature mismatches {sig_fail}/500 (0), involution defect {worst_tau:.2e} (< 1e-12), SO(p,q) fixed-point defect {worst_fixed:.2e} ({fixed_fail} failures), {secs:.2}s (< 10s)"
        ),
    )
}

fn main() {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: [(&str, fn() -> Check); 10] = [
        ("A1", a1),
        ("A2", a2),
        ("A3", a3),
        ("A4", a4),
        ("A5", a5),
        ("A6", a6),
        ("A7", a7),
        ("A8", a8),
        ("A9", a9),
        ("A10", a10),
    ];
    let mut failed = Vec::new();
    for (id, check) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        match check() {
            Ok(detail) => println!("{id} PASS {detail}"),
            Err(detail) => {
                println!("{id} FAIL {detail}");
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {}", failed.join(", "));
        std::process::exit(1);
    }
}
