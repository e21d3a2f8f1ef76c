//! `haar-check`: left-invariance defect of a chart density.

use anyhow::{Context, Result};
use orbitwave_core::groups::{boost, chart_test_bump, haar_invariance_defect, na_element, AxisScale};
use orbitwave_core::{GroupElement, GroupId, HaarChart};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::defaults::template_chart;
use crate::report::{CheckFailed, Report};
use crate::{HaarArgs, Job};

/// Wide boxes for the invariance check; the test bump sits in the middle third.
fn check_chart(group: GroupId, samples: Option<usize>) -> Result<HaarChart> {
    let e = |x: f64| x.exp();
    let (bounds, k) = match group {
        GroupId::Dilation => (vec![[e(-3.0), e(3.0)]], 512),
        GroupId::AxB => (vec![[e(-3.0), e(3.0)], [-6.0, 6.0]], 512),
        GroupId::RplusBoost => (vec![[e(-3.0), e(3.0)], [-3.0, 3.0]], 512),
        GroupId::Na => (vec![[-3.0, 3.0], [e(-2.0), e(2.0)], [-2.0, 2.0]], 96),
        GroupId::FullLorentz => {
            return template_chart(group, 3, samples.map(|k| vec![k; 4]).as_deref()).map(|c| HaarChart {
                bounds: vec![[-3.0, 3.0], [e(-2.0), e(2.0)], [-2.0, 2.0], [0.0, 2.0 * std::f64::consts::PI]],
                ..c
            })
        }
    };
    let k = samples.unwrap_or(k);
    Ok(HaarChart::new(group, bounds.clone(), vec![k; bounds.len()])?)
}

/// A random element close to the identity, so the moved bump stays inside the box.
fn random_element(group: GroupId, rng: &mut ChaCha8Rng) -> Result<GroupElement> {
    let mut u = || rng.gen_range(-0.3f64..0.3);
    Ok(match group {
        GroupId::Dilation => GroupElement::from_rows(1, &[u().exp()])?,
        GroupId::AxB => {
            let (a, b) = (u().exp(), u());
            GroupElement::from_rows(2, &[a, b, 0.0, 1.0])?
        }
        GroupId::RplusBoost => {
            let (lambda, t) = (u().exp(), u());
            boost(1, t)?.scaled(lambda)?
        }
        GroupId::Na | GroupId::FullLorentz => {
            let (v, lambda, t) = (u(), u().exp(), u());
            na_element(&[v], lambda, t)?
        }
    })
}

pub fn run(job: &Job, args: &HaarArgs, report: &mut Report) -> Result<()> {
    let group: GroupId = args.group.into();
    let chart = match &job.config.chart {
        Some(c) => c.clone(),
        None => check_chart(group, args.samples)?,
    };
    let chart = if args.tilt != 0.0 { chart.with_tilt(args.tilt)? } else { chart };
    let mut rng = ChaCha8Rng::seed_from_u64(job.seed);
    let g0 = random_element(chart.group_id, &mut rng)?;
    let (center, radii): (Vec<f64>, Vec<f64>) = chart
        .bounds
        .iter()
        .zip(&chart.scale)
        .map(|(b, s)| {
            let (lo, hi) = if *s == AxisScale::Log { (b[0].ln(), b[1].ln()) } else { (b[0], b[1]) };
            (0.5 * (lo + hi), 0.15 * (hi - lo))
        })
        .unzip();
    report.grid("chart", &chart);
    report.set("g0", g0.rows());
    report.set("test_bump", serde_json::json!({ "center": center, "radii": radii, "profile": "(1 - r^2)^6" }));
    crate::progress(format!("integrating over {} chart nodes", chart.node_count()));
    let bump = chart_test_bump(&chart, center, radii);
    let defect = haar_invariance_defect(&chart, &g0, &bump).context("invariance integral")?;
    let limit = job.config.tolerances.haar_defect;
    report.metric("defect", defect);
    report.metric("limit", limit);
    if !(defect < limit) {
        return Err(CheckFailed(format!("defect {defect:.3e} is not below {limit:.1e}")).into());
    }
    Ok(())
}
