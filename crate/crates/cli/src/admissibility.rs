//! `admissibility`: `C_ψ²` over a group chart, or divergence.

use anyhow::{bail, Result};
use orbitwave_core::{axb_admissibility, gcwt_admissibility, GroupId, OrbitLabel};

use crate::defaults::{probes, space_dim, template_chart, wavelet};
use crate::report::Report;
use crate::{AdmissibilityArgs, Job};

pub fn run(job: &Job, args: &AdmissibilityArgs, report: &mut Report) -> Result<()> {
    let group: GroupId = args.group.into();
    let chart = match &job.config.chart {
        Some(c) if c.group_id != group => bail!("config chart is for {:?}, not {group:?}", c.group_id),
        Some(c) => c.clone(),
        None => template_chart(group, space_dim(group, args.n)?, args.samples.as_deref())?,
    };
    let dim = chart.space_dim();
    let psi = wavelet(job.config.wavelet.as_ref(), &args.wavelet, dim)?;
    report.set("wavelet", &psi);

    if group == GroupId::AxB {
        if psi.orbit != (OrbitLabel::HalfLine { positive: true }) {
            bail!("ax+b wavelets live on the positive half-line");
        }
        let c = axb_admissibility(&psi)?;
        report.metric("c_psi_sq", c);
        report.set("method", "adaptive Gauss-Kronrod over the support of |psi_hat|^2 / omega");
        return Ok(());
    }

    let probes = probes(&psi.center, psi.radius);
    let opts = job.config.admissibility.clone().unwrap_or_default();
    report.set("probes", &probes);
    report.set("options", &opts);
    report.grid("template_chart", &chart);
    crate::progress(format!("{} probes over a {:?} chart", probes.len(), chart.samples));
    let result = gcwt_admissibility(&psi, &chart, &probes, &opts)?;
    report.metric("c_psi_sq", result.c_psi_sq);
    report.metric("spread", result.spread);
    report.metric("probe_integrals", result.probes.iter().map(|p| p.integral).collect::<Vec<_>>());
    report.grid("probe_charts", &result.probes);
    Ok(())
}
