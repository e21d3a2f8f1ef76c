//! `transform` and `reconstruct`: file-to-file pipelines.

use std::fs::{self, File};
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use orbitwave_core::engine::spectral_support_points;
use orbitwave_core::signal_io::{read_signal, write_signal};
use orbitwave_core::{
    axb_admissibility, covering_chart, fourier, gcwt_admissibility, gcwt_parseval, gcwt_reconstruct, gcwt_transform,
    CoefficientField, GroupId, HaarChart, OrbitLabel, Sampled, WaveletSpec,
};
use serde::{Deserialize, Serialize};

use crate::defaults::{probes, template_chart, wavelet};
use crate::report::Report;
use crate::{Job, ReconstructArgs, TransformArgs};

/// Largest coefficient count written as plotting CSV.
const CSV_LIMIT: usize = 4_000_000;

/// The analysing wavelet and its constant, stored next to a coefficient dump.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletFile {
    pub wavelet: WaveletSpec,
    pub c_psi_sq: f64,
}

fn default_group(dim: usize) -> Result<GroupId> {
    Ok(match dim {
        1 => GroupId::Dilation,
        2 => GroupId::RplusBoost,
        3 => GroupId::Na,
        d => bail!("no default group for {d}-dimensional signals; pass a chart in the config"),
    })
}

/// `C_ψ²` by the exact 1-D integral where it applies, by chart quadrature otherwise.
fn admissibility(psi: &WaveletSpec, chart: &HaarChart, job: &Job, report: &mut Report) -> Result<f64> {
    let positive = psi.orbit == (OrbitLabel::HalfLine { positive: true });
    if chart.group_id == GroupId::Dilation && chart.space_dim() == 1 && positive && !chart.full_line {
        return Ok(axb_admissibility(psi)?);
    }
    let opts = job.config.admissibility.clone().unwrap_or_default();
    let result = gcwt_admissibility(psi, chart, &probes(&psi.center, psi.radius), &opts)?;
    report.metric("c_psi_sq_spread", result.spread);
    report.grid("admissibility_charts", &result.probes);
    Ok(result.c_psi_sq)
}

pub fn run_transform(job: &Job, args: &TransformArgs, report: &mut Report) -> Result<()> {
    let input = args.input.as_ref().or(job.config.input.as_ref()).context("pass --input or set `input` in the config")?;
    let out = job.out_dir()?;
    let f = read_signal(input).with_context(|| format!("reading {}", input.display()))?;
    let dim = f.grid().n_dims();
    let psi = wavelet(job.config.wavelet.as_ref(), &args.wavelet, dim)?;
    report.set("wavelet", &psi);
    report.grid("spatial", f.grid());

    let (chart, c_psi_sq) = match &job.config.chart {
        Some(chart) => {
            if args.group.is_some() || args.samples.is_some() {
                bail!("the chart is given both in the config and on the command line");
            }
            (chart.clone(), admissibility(&psi, chart, job, report)?)
        }
        None => {
            let group = match args.group {
                Some(g) => g.into(),
                None => default_group(dim)?,
            };
            let template = template_chart(group, dim, args.samples.as_deref())?;
            let c = admissibility(&psi, &template, job, report)?;
            if group == GroupId::Dilation && dim == 1 {
                (template, c)
            } else {
                // grow the template until it carries the wavelet onto the signal's spectrum
                let tol = &job.config.tolerances;
                let support = spectral_support_points(&fourier(&f), tol.support, 4000);
                let chart = covering_chart(&template, &support, &[(psi.center.clone(), psi.radius)], tol.chart_margin)?;
                (chart, c)
            }
        }
    };
    if chart.space_dim() != dim {
        bail!("the chart acts on R^{}, the signal lives on R^{dim}", chart.space_dim());
    }
    report.grid("chart", &chart);
    crate::progress(format!("transforming over {} chart nodes x {} translations", chart.node_count(), f.grid().len()));
    let w = gcwt_transform(&f, &psi, &chart)?;
    let ratio = gcwt_parseval(&w, &f, c_psi_sq)?;
    let (node, translation, peak) = w.argmax_abs();

    let stem = out.join("coefficients");
    w.write(&stem)?;
    let wavelet_path = out.join("wavelet.json");
    let file = WaveletFile { wavelet: psi, c_psi_sq };
    fs::write(&wavelet_path, serde_json::to_string_pretty(&file)? + "\n")?;
    let mut files = vec![stem.with_extension("json"), stem.with_extension("f64"), wavelet_path];
    if w.len() <= CSV_LIMIT {
        let csv = out.join("coefficients_abs.csv");
        w.write_abs_csv(BufWriter::new(File::create(&csv)?))?;
        files.push(csv);
    }

    report.metric("c_psi_sq", c_psi_sq);
    report.metric("parseval_ratio", ratio);
    report.metric("coefficient_energy", w.energy());
    report.metric("signal_norm_sq", f.norm_sq());
    report.metric("chart_nodes", w.node_count());
    report.metric("translations", w.translation_count());
    report.metric(
        "peak",
        serde_json::json!({ "params": w.params(node), "x": f.grid().node(translation), "abs": peak.norm() }),
    );
    report.set("files", files);
    Ok(())
}

pub fn run_reconstruct(job: &Job, args: &ReconstructArgs, report: &mut Report) -> Result<()> {
    let stem = args.coeffs.as_ref().or(job.config.input.as_ref()).context("pass --coeffs or set `input` in the config")?;
    let wavelet_path = match &args.wavelet {
        Some(p) => p.clone(),
        None => stem.parent().unwrap_or(Path::new(".")).join("wavelet.json"),
    };
    let out = job.out_dir()?;
    let text = fs::read_to_string(&wavelet_path).with_context(|| format!("reading {}", wavelet_path.display()))?;
    let file: WaveletFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", wavelet_path.display()))?;
    let psi = file.wavelet.validated()?;
    let w = CoefficientField::read(stem).with_context(|| format!("reading coefficients {}", stem.display()))?;
    report.set("wavelet", &psi);
    report.grid("chart", w.chart());
    report.grid("spatial", w.grid());

    let rec = gcwt_reconstruct(&w, &psi, file.c_psi_sq)?;
    let path: PathBuf = out.join(&args.output_name);
    write_signal(&rec, &path)?;
    report.metric("c_psi_sq", file.c_psi_sq);
    report.metric("norm", rec.norm());
    if let Some(reference) = &args.reference {
        let f = read_signal(reference).with_context(|| format!("reading {}", reference.display()))?;
        report.metric("relative_error", rec.relative_error(&f)?);
    }
    report.set("files", [path]);
    Ok(())
}
