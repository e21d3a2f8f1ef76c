//! Wavelet packages on the Lorentz orbit `O3`.
//!
//! `O3` has a non-compact stabilizer in `R⁺SO₀(1,n)`, so no single wavelet
//! exists there. The subgroup `NA` instead splits `O3` into two open orbits
//! `O31 = {a < b}` and `O32 = {a > b}` with compact (trivial) stabilizers.
//! One wavelet per piece, each with its own constant, reconstructs `P_{O3} f`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::WaveletSpec;
use crate::coefficients::CoefficientField;
use crate::engine::{
    ball_samples, covering_chart, gcwt_admissibility, gcwt_reconstruct, gcwt_transform, orbit_mask,
    AdmissibilityOptions, AdmissibilityReport,
};
use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier, GridSignal};
use crate::groups::lorentz::apply;
use crate::groups::{boost, weyl_s, GroupId, HaarChart, LorentzTag, OrbitLabel};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct PackageOptions {
    /// Spatial dimension of the boost group; signals live on `R^{1+n}`.
    pub n: usize,
    /// Boost applied to `e_{n+1}` to place the first branch centre.
    pub t0: f64,
    /// Bump radius as a fraction of the centre's distance to the sub-orbit boundary.
    pub radius_fraction: f64,
    /// Explicit first-branch centre; the second branch uses its image under `s`.
    pub center: Option<Vec<f64>>,
    pub chart_samples: Vec<usize>,
    /// Rescale each branch wavelet so that `C_j = 1`.
    pub normalize: bool,
    /// Frequency balls the shared chart must resolve. Defaults to the branch balls.
    pub coverage: Option<Vec<(Vec<f64>, f64)>>,
    /// Relative padding of the shared chart box.
    pub chart_margin: f64,
    pub admissibility: AdmissibilityOptions,
}

impl Default for PackageOptions {
    fn default() -> Self {
        Self {
            n: 2,
            t0: 0.5,
            radius_fraction: 0.3,
            center: None,
            chart_samples: vec![16, 16, 16],
            normalize: true,
            coverage: None,
            chart_margin: 0.1,
            admissibility: AdmissibilityOptions::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PackageBranch {
    pub suborbit: OrbitLabel,
    pub psi: WaveletSpec,
    pub report: AdmissibilityReport,
    /// The constant used for reconstruction (1 after normalization).
    pub c_psi_sq: f64,
}

/// Branch wavelets on the `NA` sub-orbits of `O3` and the shared chart of `NA`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WaveletPackage {
    pub chart: HaarChart,
    pub branches: Vec<PackageBranch>,
}

impl WaveletPackage {
    /// Compact JSON descriptor: chart plus per-branch tag, centre, radius and constant.
    pub fn descriptor(&self) -> serde_json::Value {
        serde_json::json!({
            "chart": self.chart,
            "branches": self.branches.iter().map(|b| serde_json::json!({
                "suborbit": b.suborbit,
                "center": b.psi.center,
                "radius": b.psi.radius,
                "c_sq": b.c_psi_sq,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Euclidean distance from a point of `O31 ∪ O32` to the closest point of the
/// light cone or the hyperplane `a = b` (valid for `n = 2`).
fn distance_to_suborbit_boundary(u: &[f64]) -> f64 {
    let (a, b) = (u[0], u[u.len() - 1]);
    let rho = u[1..].iter().map(|x| x * x).sum::<f64>().sqrt();
    ((a - b).abs() / 2f64.sqrt()).min((rho - a.abs()) / 2f64.sqrt())
}

/// Probe frequencies for one branch: the centre and half-radius axis offsets.
fn branch_probes(center: &[f64], radius: f64) -> Vec<Vec<f64>> {
    let mut out = vec![center.to_vec()];
    for axis in 0..center.len() {
        for s in [-0.5, 0.5] {
            let mut p = center.to_vec();
            p[axis] += s * radius;
            out.push(p);
        }
    }
    out
}

/// Builds the two-branch package on `O3` for `n = 2`.
pub fn package_build(orbit: &OrbitLabel, opts: &PackageOptions) -> Result<WaveletPackage> {
    if *orbit != OrbitLabel::lorentz(LorentzTag::O3) {
        return Err(Error::InvalidParameter { name: "orbit", reason: format!("packages are built on O3, not {orbit:?}") });
    }
    if opts.n != 2 {
        return Err(Error::UnsupportedDimension { dim: opts.n, reason: "packages ship for n = 2 (the NA chart)" });
    }
    if !(opts.radius_fraction > 0.0 && opts.radius_fraction < 1.0) {
        return Err(Error::InvalidParameter { name: "radius_fraction", reason: "must lie in (0, 1)".into() });
    }
    let dim = opts.n + 1;
    let first = match &opts.center {
        Some(c) if c.len() != dim => return Err(Error::DimensionMismatch { expected: dim, actual: c.len() }),
        Some(c) => c.clone(),
        None => {
            let mut e = vec![0.0; dim];
            e[dim - 1] = 1.0;
            apply(&boost(opts.n, opts.t0)?, &e)
        }
    };
    let second = apply(&weyl_s(opts.n)?, &first);
    let radius = opts.radius_fraction * distance_to_suborbit_boundary(&first);
    let specs = [
        (LorentzTag::O31, first),
        (LorentzTag::O32, second),
    ];
    let mut balls = Vec::new();
    let mut psis = Vec::new();
    for (tag, center) in specs {
        let label = OrbitLabel::lorentz(tag);
        if !label.contains(&center) {
            return Err(Error::OutsideOrbit(format!("branch centre {center:?} is not in {tag:?}")));
        }
        let psi = WaveletSpec::bump(label, center.clone(), radius)?;
        balls.push((center, radius));
        psis.push((label, psi));
    }
    let coverage = opts.coverage.clone().unwrap_or_else(|| balls.clone());
    let frequencies: Vec<Vec<f64>> = coverage.iter().flat_map(|(c, r)| ball_samples(c, *r)).collect();
    let template = HaarChart::new(GroupId::Na, vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0]], opts.chart_samples.clone())?;
    let chart = covering_chart(&template, &frequencies, &balls, opts.chart_margin)?;

    let branches: Vec<Result<PackageBranch>> = psis
        .into_par_iter()
        .map(|(label, psi)| {
            let probes = branch_probes(&psi.center, psi.radius);
            let mut report = gcwt_admissibility(&psi, &chart, &probes, &opts.admissibility)
                .map_err(|e| branch_failure(label, e))?;
            let (psi, c_psi_sq) = if opts.normalize {
                let c = report.c_psi_sq;
                rescale_report(&mut report, 1.0 / c);
                let amp = psi.amplitude / c.sqrt();
                (psi.with_amplitude(amp), 1.0)
            } else {
                let c = report.c_psi_sq;
                (psi, c)
            };
            Ok(PackageBranch { suborbit: label, psi, report, c_psi_sq })
        })
        .collect();
    Ok(WaveletPackage { chart, branches: branches.into_iter().collect::<Result<_>>()? })
}

fn branch_failure(label: OrbitLabel, e: Error) -> Error {
    let tag = match label {
        OrbitLabel::Lorentz { tag } => format!("{tag:?}"),
        other => format!("{other:?}"),
    };
    match e {
        Error::Divergent(m) => Error::Divergent(format!("package branch {tag}: {m}")),
        Error::TruncationFailure(m) => Error::TruncationFailure(format!("package branch {tag}: {m}")),
        Error::NotAdmissible(m) => Error::NotAdmissible(format!("package branch {tag}: {m}")),
        other => other,
    }
}

fn rescale_report(report: &mut AdmissibilityReport, factor: f64) {
    report.c_psi_sq *= factor;
    for p in &mut report.probes {
        p.integral *= factor;
        p.history.iter_mut().for_each(|h| *h *= factor);
    }
}

/// One coefficient field per branch over the shared chart.
pub fn package_transform(f: &GridSignal, pkg: &WaveletPackage) -> Result<Vec<CoefficientField>> {
    pkg.branches.par_iter().map(|b| gcwt_transform(f, &b.psi, &pkg.chart)).collect()
}

/// `Σ_j C_j⁻² Σ_g W_j f(g) ρ(g) ψ_j`, summed in branch order.
pub fn package_reconstruct(coeffs: &[CoefficientField], pkg: &WaveletPackage) -> Result<GridSignal> {
    if coeffs.len() != pkg.branches.len() {
        return Err(Error::BranchMismatch { expected: pkg.branches.len(), actual: coeffs.len() });
    }
    let parts: Vec<Result<GridSignal>> = coeffs
        .par_iter()
        .zip(&pkg.branches)
        .map(|(c, b)| gcwt_reconstruct(c, &b.psi, b.c_psi_sq))
        .collect();
    let mut parts = parts.into_iter();
    let mut total = parts.next().ok_or(Error::BranchMismatch { expected: 1, actual: 0 })??;
    for p in parts {
        total = total.add(&p?)?;
    }
    Ok(total)
}

/// Spectral projections onto `O1`, `O2`, `O31` and `O32`.
///
/// The parts sum to `f` minus its cone and `a = b` components.
pub fn four_part_split(f: &GridSignal) -> Result<Vec<(OrbitLabel, GridSignal)>> {
    let n = f.grid().n_dims();
    if n < 3 {
        return Err(Error::UnsupportedDimension { dim: n, reason: "the four-part split needs R^{1+n} with n >= 2" });
    }
    let fhat = fourier(f);
    [LorentzTag::O1, LorentzTag::O2, LorentzTag::O31, LorentzTag::O32]
        .into_iter()
        .map(|tag| {
            let label = OrbitLabel::lorentz(tag);
            let mask = orbit_mask(f.grid(), &label)?;
            let mut part = fhat.clone();
            part.values_mut().iter_mut().zip(&mask).for_each(|(v, m)| *v *= *m);
            Ok((label, inverse_fourier(&part)))
        })
        .collect()
}
