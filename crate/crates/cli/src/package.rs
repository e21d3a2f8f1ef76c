//! `package-demo`: the two-branch package on O3 applied to a random mixture.

use std::fs;

use anyhow::Result;
use num_complex::Complex64;
use orbitwave_core::{
    gcwt_parseval, orbit_project, package_build, package_reconstruct, package_transform, GridSignal, LorentzTag,
    OrbitLabel, Sampled, SemidirectElement, SpatialGrid, SpectralAtom, TransformedAtom, WaveletPackage, WaveletSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::Report;
use crate::{Job, PackageArgs};

/// One translated bump inside each branch ball, with seeded positions and weights.
fn mixture(grid: &SpatialGrid, pkg: &WaveletPackage, rng: &mut ChaCha8Rng) -> Result<GridSignal> {
    let mut f = GridSignal::zeros(grid.clone());
    for branch in &pkg.branches {
        let psi = &branch.psi;
        let r = 0.8 * psi.radius;
        let center: Vec<f64> = psi.center.iter().map(|c| c + rng.gen_range(-0.1..0.1) * psi.radius).collect();
        let shift: Vec<f64> = (0..grid.n_dims()).map(|_| rng.gen_range(-4.0..4.0)).collect();
        let atom = TransformedAtom::new(
            WaveletSpec::bump(branch.suborbit, center, r)?,
            SemidirectElement::translation(shift),
        )?;
        let weight = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        f = f.add(&atom.sample(grid).scaled(weight))?;
    }
    Ok(f)
}

pub fn run(job: &Job, args: &PackageArgs, report: &mut Report) -> Result<()> {
    let mut opts = job.config.package.clone().unwrap_or_default();
    if let Some(k) = args.chart_samples {
        opts.chart_samples = vec![k; 3];
    }
    let grid = match &job.config.grid {
        Some(g) => g.clone(),
        None => SpatialGrid::cube(3, args.half_width, args.grid_samples)?,
    };
    report.set("options", &opts);
    report.grid("spatial", &grid);
    crate::progress("building the package");
    let pkg = package_build(&OrbitLabel::lorentz(LorentzTag::O3), &opts)?;
    report.set("package", pkg.descriptor());
    report.grid("chart", &pkg.chart);
    report.grid("admissibility_charts", pkg.branches.iter().map(|b| &b.report.probes).collect::<Vec<_>>());

    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let f = mixture(&grid, &pkg, &mut rng)?;
    crate::progress("transforming the mixture");
    let coeffs = package_transform(&f, &pkg)?;
    let mut parseval = Vec::new();
    for (c, b) in coeffs.iter().zip(&pkg.branches) {
        parseval.push(gcwt_parseval(c, &orbit_project(&f, &b.suborbit)?, b.c_psi_sq)?);
    }
    let rec = package_reconstruct(&coeffs, &pkg)?;
    let target = orbit_project(&f, &OrbitLabel::lorentz(LorentzTag::O3))?;

    let o1 = WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O1), vec![1.2, 0.2, 0.1], 0.3)?.sample(&grid);
    let o1_rec = package_reconstruct(&package_transform(&o1, &pkg)?, &pkg)?;

    report.metric("branch_parseval", parseval);
    report.metric("mixture_relative_error", rec.relative_error(&target)?);
    report.metric("o1_leakage", o1_rec.norm() / o1.norm());
    report.metric("c_sq", pkg.branches.iter().map(|b| b.c_psi_sq).collect::<Vec<_>>());
    if let Some(dir) = &job.out {
        fs::create_dir_all(dir)?;
        let path = dir.join("descriptor.json");
        fs::write(&path, serde_json::to_string_pretty(&pkg.descriptor())? + "\n")?;
        report.set("files", [path]);
    }
    Ok(())
}

