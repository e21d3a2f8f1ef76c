//! `classify`: orbit labels for single frequency points.

use anyhow::{bail, Result};
use orbitwave_core::groups::{
    beta, classify_lorentz_orbit, classify_parabolic_suborbit, default_orbit_tol, symm_from_packed, symm_signature,
};
use orbitwave_core::LorentzTag;
use serde_json::json;

use crate::report::Report;
use crate::{ClassifyArgs, Family, Job};

fn tag_name(tag: LorentzTag) -> &'static str {
    match tag {
        LorentzTag::O1 => "O1",
        LorentzTag::O2 => "O2",
        LorentzTag::O3 => "O3",
        LorentzTag::ConeC => "C",
        LorentzTag::O31 => "O31",
        LorentzTag::O32 => "O32",
        LorentzTag::SuborbitBoundary => "boundary",
    }
}

pub fn run(job: &Job, args: &ClassifyArgs, report: &mut Report) -> Result<()> {
    let u = &args.point;
    match args.family {
        Family::Lorentz => {
            if args.n == 0 || u.len() != args.n + 1 {
                bail!("a Lorentz point for n = {} needs {} coordinates, got {}", args.n, args.n + 1, u.len());
            }
            let tol = args.tol.or(job.config.tolerances.orbit).unwrap_or_else(|| default_orbit_tol(u));
            let orbit = classify_lorentz_orbit(u, tol);
            let suborbit = match orbit {
                LorentzTag::O3 => Some(tag_name(classify_parabolic_suborbit(u, tol)?)),
                _ => None,
            };
            report.set("orbit", tag_name(orbit));
            report.set("suborbit", suborbit);
            report.metric("beta", beta(u, u));
            report.metric("tolerance", tol);
        }
        Family::Symm => {
            let n = args.n;
            if n == 0 || u.len() != n * (n + 1) / 2 {
                bail!("a symmetric {n}x{n} matrix needs {} upper-triangle entries, got {}", n * (n + 1) / 2, u.len());
            }
            let tol = args.tol.or(job.config.tolerances.signature);
            let (p, q, zeros) = symm_signature(&symm_from_packed(n, u), tol)?;
            let orbit = if zeros == 0 { format!("O_{{{p},{q}}}") } else { "degenerate".into() };
            report.set("orbit", orbit);
            report.set("signature", json!({ "p": p, "q": q, "zeros": zeros }));
            report.set("open", zeros == 0);
        }
    }
    Ok(())
}
