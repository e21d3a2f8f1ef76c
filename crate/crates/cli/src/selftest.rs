//! `selftest`: exact identities (quick) plus small numerical runs (full).

use std::f64::consts::{LN_2, PI};

use anyhow::Result;
use nalgebra::DMatrix;
use num_complex::Complex64;
use orbitwave_core::axb::axb_chart;
use orbitwave_core::groups::{
    boost, chart_test_bump, classify_fine, haar_invariance_defect, lorentz_defect, na_element, nilpotent,
    orbit_point_formula, plane_rotation, symm_signature, tau_pq_scaled, weyl_s,
};
use orbitwave_core::{
    axb_admissibility, axb_parseval_ratio, axb_reconstruct, axb_transform, fourier, gcwt_admissibility, hardy_project,
    inverse_fourier, AdmissibilityOptions, AxbWavelet, Error, GridSignal, GroupElement, GroupId, HaarChart,
    LorentzTag, OrbitLabel, Sampled, SpatialGrid, SpectralAtom, WaveletSpec,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::report::{CheckFailed, Report};
use crate::{Job, Level, SelftestArgs};

#[derive(Serialize)]
struct Outcome {
    name: &'static str,
    passed: bool,
    detail: String,
}

type Check = fn(&mut ChaCha8Rng) -> Result<(bool, String)>;

const QUICK: &[(&str, Check)] = &[
    ("fourier_unitarity", fourier_unitarity),
    ("hardy_split", hardy_split),
    ("boost_group_law", boost_group_law),
    ("lorentz_words", lorentz_words),
    ("dilation_modulus", dilation_modulus),
    ("orbit_labels", orbit_labels),
    ("orbit_formula", orbit_formula),
    ("indicator_constant", indicator_constant),
    ("symm_signature", symm_example),
];

const FULL: &[(&str, Check)] = &[
    ("axb_parseval", axb_parseval),
    ("axb_haar_density", axb_haar_density),
    ("noncompact_stabilizer", noncompact_stabilizer),
];

pub fn run(job: &Job, args: &SelftestArgs, report: &mut Report) -> Result<()> {
    let mut checks: Vec<&(&str, Check)> = QUICK.iter().collect();
    if args.level == Level::Full {
        checks.extend(FULL);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let outcomes: Vec<Outcome> = checks
        .into_iter()
        .map(|(name, check)| {
            crate::progress(format!("selftest {name}"));
            let (passed, detail) = check(&mut rng).unwrap_or_else(|e| (false, format!("error: {e:#}")));
            Outcome { name, passed, detail }
        })
        .collect();
    let failed: Vec<&str> = outcomes.iter().filter(|o| !o.passed).map(|o| o.name).collect();
    report.metric("passed", outcomes.len() - failed.len());
    report.metric("failed", failed.len());
    report.set("checks", outcomes);
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CheckFailed(failed.join(", ")).into())
    }
}

fn fourier_unitarity(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let grid = SpatialGrid::new(vec![3.0, 5.0], vec![16, 12], vec![0.5, -1.0])?;
    let values = (0..grid.len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
    let f = GridSignal::new(grid, values)?;
    let fhat = fourier(&f);
    let energy = (fhat.norm_sq() - f.norm_sq()).abs() / f.norm_sq();
    let round_trip = inverse_fourier(&fhat).max_abs_diff(&f)?;
    Ok((energy < 1e-12 && round_trip < 1e-13, format!("energy defect {energy:.1e}, round trip {round_trip:.1e}")))
}

fn hardy_split(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let grid = SpatialGrid::cube(1, 16.0, 256)?;
    let values = (0..grid.len()).map(|_| Complex64::new(rng.gen_range(-1.0..1.0), 0.0)).collect();
    let f = GridSignal::new(grid, values)?;
    let pair = hardy_project(&f)?;
    let (total, p, m) = (f.norm_sq(), pair.plus.norm_sq(), pair.minus.norm_sq());
    let (sum, halves) = ((p + m - total).abs() / total, (p - m).abs() / total);
    Ok((sum < 1e-12 && halves < 1e-10, format!("energy defect {sum:.1e}, half imbalance {halves:.1e}")))
}

fn boost_group_law(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let (s, t) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
    let defect = boost(2, s)?.compose(&boost(2, t)?)?.max_entry_diff(&boost(2, s + t)?);
    let nil = nilpotent(&[s])?.compose(&nilpotent(&[t])?)?.max_entry_diff(&nilpotent(&[s + t])?);
    Ok((defect < 1e-12 * (s.abs() + t.abs()).cosh() && nil < 1e-12, format!("boost {defect:.1e}, nilpotent {nil:.1e}")))
}

fn lorentz_words(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let mut g = GroupElement::identity(3);
        for _ in 0..10 {
            let step = match rng.gen_range(0..4) {
                0 => boost(2, rng.gen_range(-0.5..0.5))?,
                1 => plane_rotation(2, 1, 2, rng.gen_range(0.0..2.0 * PI))?,
                2 => nilpotent(&[rng.gen_range(-0.5..0.5)])?,
                _ => weyl_s(2)?,
            };
            g = g.compose(&step)?;
        }
        worst = worst.max(lorentz_defect(&g));
    }
    Ok((worst < 1e-11, format!("worst defect over 100 words of length 10: {worst:.1e}")))
}

fn dilation_modulus(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let delta = orbitwave_core::groups::dilation(2.0, 3)?.delta_pi();
    Ok(((delta - 0.125).abs() < 1e-15, format!("modulus of 2·I on R³ is {delta}")))
}

fn orbit_labels(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let e3 = [0.0, 0.0, 1.0];
    let flipped = weyl_s(2)?.act(&e3)?;
    let cases = [
        (e3.to_vec(), LorentzTag::O31),
        (flipped, LorentzTag::O32),
        (vec![1.0, 0.0, 0.0], LorentzTag::O1),
        (vec![-1.0, 0.2, 0.0], LorentzTag::O2),
        (vec![1.0, 0.0, 1.0], LorentzTag::ConeC),
    ];
    let wrong: Vec<String> = cases
        .iter()
        .filter(|(u, tag)| classify_fine(u, 1e-12) != *tag)
        .map(|(u, tag)| format!("{u:?} is not {tag:?}"))
        .collect();
    Ok((wrong.is_empty(), if wrong.is_empty() { "5 base points labelled".into() } else { wrong.join("; ") }))
}

fn orbit_formula(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let (v, lambda, t) = (rng.gen_range(-1.0..1.0), rng.gen_range(0.5..2.0), rng.gen_range(-1.0..1.0));
        let closed = orbit_point_formula(&[v], lambda, t)?;
        let product = na_element(&[v], lambda, t)?.act(&[0.0, 0.0, 1.0])?;
        worst = closed.iter().zip(&product).fold(worst, |m, (a, b)| m.max((a - b).abs()));
    }
    Ok((worst < 1e-12, format!("closed form vs matrix product: {worst:.1e}")))
}

fn indicator_constant(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let psi = WaveletSpec::indicator(OrbitLabel::HalfLine { positive: true }, vec![1.5], 0.5)?;
    let dev = (axb_admissibility(&psi)? - LN_2).abs();
    Ok((dev < 1e-6, format!("|C² - ln 2| = {dev:.1e} for the indicator of [1, 2]")))
}

fn symm_example(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let x = DMatrix::from_row_slice(3, 3, &[2.0, 1.0, 0.0, 1.0, -1.0, 0.0, 0.0, 0.0, 0.0]);
    let sig = symm_signature(&x, None)?;
    let m = GroupElement::from_rows(3, &[1.0, 0.3, 0.0, -0.2, 1.1, 0.1, 0.0, 0.4, 0.9])?;
    let twice = tau_pq_scaled(&tau_pq_scaled(&m, 2, 1)?, 2, 1)?.max_entry_diff(&m);
    Ok((sig == (1, 1, 1) && twice < 1e-12, format!("signature {sig:?}, involution defect {twice:.1e}")))
}

fn axb_parseval(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let grid = SpatialGrid::cube(1, 64.0, 1024)?;
    let f = WaveletSpec::bump(OrbitLabel::HalfLine { positive: true }, vec![2.5], 1.5)?.sample(&grid);
    let psi = AxbWavelet::bump(1.5, 0.4)?.with_admissibility()?;
    let w = axb_transform(&f, &psi, &axb_chart(1.0 / 16.0, 16.0, 256)?)?;
    let ratio = axb_parseval_ratio(&w, &f, &psi)?;
    let err = axb_reconstruct(&w, &psi, psi.c_psi_sq()?)?.relative_error(&f)?;
    Ok(((0.99..=1.01).contains(&ratio) && err < 0.02, format!("Parseval ratio {ratio:.5}, reconstruction error {err:.2e}")))
}

fn axb_haar_density(rng: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let chart = HaarChart::new(GroupId::AxB, vec![[(-3.0f64).exp(), 3.0f64.exp()], [-6.0, 6.0]], vec![512, 512])?;
    let (a, b) = (rng.gen_range(-0.3f64..0.3).exp(), rng.gen_range(-0.5..0.5));
    let g0 = GroupElement::from_rows(2, &[a, b, 0.0, 1.0])?;
    let defect = haar_invariance_defect(&chart, &g0, &chart_test_bump(&chart, vec![0.0, 0.0], vec![1.0, 1.0]))?;
    Ok((defect < 1e-3, format!("left-invariance defect {defect:.1e} at 512² nodes")))
}

fn noncompact_stabilizer(_: &mut ChaCha8Rng) -> Result<(bool, String)> {
    let c = vec![0.5f64.sinh(), 0.0, 0.5f64.cosh()];
    let psi = WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O31), c.clone(), 0.3 * (c[2] - c[0]) / 2f64.sqrt())?;
    let opts = AdmissibilityOptions::default();
    let full = HaarChart::new(
        GroupId::FullLorentz,
        vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0], [0.0, 2.0 * PI]],
        vec![12, 12, 12, 24],
    )?;
    let na = HaarChart::new(GroupId::Na, vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0]], vec![16, 16, 16])?;
    let diverges = matches!(gcwt_admissibility(&psi, &full, &[c.clone()], &opts), Err(Error::Divergent(_)));
    let na_c = gcwt_admissibility(&psi, &na, &[c], &opts)?.c_psi_sq;
    Ok((diverges, format!("full group divergent: {diverges}; NA constant {na_c:.6e}")))
}
