//! Default wavelets, charts and probe sets, shared by several commands.

use std::f64::consts::PI;

use anyhow::{bail, Result};
use orbitwave_core::groups::{boost, weyl_s};
use orbitwave_core::{GroupId, HaarChart, LorentzTag, OrbitLabel, WaveletForm, WaveletSpec};

use crate::{FormArg, OrbitArg, WaveletArgs};

pub fn orbit_label(orbit: OrbitArg) -> OrbitLabel {
    match orbit {
        OrbitArg::O1 => OrbitLabel::lorentz(LorentzTag::O1),
        OrbitArg::O2 => OrbitLabel::lorentz(LorentzTag::O2),
        OrbitArg::O3 => OrbitLabel::lorentz(LorentzTag::O3),
        OrbitArg::O31 => OrbitLabel::lorentz(LorentzTag::O31),
        OrbitArg::O32 => OrbitLabel::lorentz(LorentzTag::O32),
        OrbitArg::Positive => OrbitLabel::HalfLine { positive: true },
        OrbitArg::Negative => OrbitLabel::HalfLine { positive: false },
    }
}

pub fn default_orbit(dim: usize) -> OrbitArg {
    if dim == 1 {
        OrbitArg::Positive
    } else {
        OrbitArg::O1
    }
}

/// Default centre and radius of a bump on `orbit` in `R^dim`.
///
/// Timelike orbits get a ball around `±1.5·e₁`. The spacelike sub-orbit `O31`
/// gets the boosted base point `a(0.5)·e_last`, with the radius at 0.3 times its
/// distance to `{a = b}`; `O32` gets the mirror image under `s`.
fn default_ball(orbit: OrbitArg, dim: usize) -> Result<(Vec<f64>, f64)> {
    let axis = |x: f64| {
        let mut c = vec![0.0; dim];
        c[0] = x;
        c
    };
    match orbit {
        OrbitArg::Positive | OrbitArg::Negative if dim != 1 => bail!("half-line orbits live in one dimension, not {dim}"),
        OrbitArg::Positive => Ok((vec![1.5], 0.4)),
        OrbitArg::Negative => Ok((vec![-1.5], 0.4)),
        _ if dim < 2 => bail!("Lorentz orbits need at least two coordinates"),
        OrbitArg::O1 => Ok((axis(1.5), 0.4)),
        OrbitArg::O2 => Ok((axis(-1.5), 0.4)),
        OrbitArg::O3 | OrbitArg::O31 | OrbitArg::O32 => {
            let n = dim - 1;
            let mut e = vec![0.0; dim];
            e[n] = 1.0;
            let c = boost(n, 0.5)?.act(&e)?;
            let r = 0.3 * (c[n] - c[0]) / 2f64.sqrt();
            let c = if orbit == OrbitArg::O32 { weyl_s(n)?.act(&c)? } else { c };
            Ok((c, r))
        }
    }
}

/// The wavelet from the job file, or a default bump adjusted by the flags.
pub fn wavelet(config: Option<&WaveletSpec>, args: &WaveletArgs, dim: usize) -> Result<WaveletSpec> {
    if let Some(psi) = config {
        if args.orbit.is_some() || args.center.is_some() || args.radius.is_some() || args.form.is_some() {
            bail!("the wavelet is given both in the config and on the command line");
        }
        if psi.n_dims != dim {
            bail!("config wavelet is {}-dimensional, the problem is {dim}-dimensional", psi.n_dims);
        }
        return Ok(psi.clone());
    }
    let orbit = args.orbit.unwrap_or_else(|| default_orbit(dim));
    let (center, radius) = default_ball(orbit, dim)?;
    let center = args.center.clone().unwrap_or(center);
    if center.len() != dim {
        bail!("--center has {} coordinates, expected {dim}", center.len());
    }
    let spec = WaveletSpec {
        n_dims: dim,
        orbit: orbit_label(orbit),
        form: match args.form {
            Some(FormArg::Indicator) => WaveletForm::Indicator,
            _ => WaveletForm::Bump,
        },
        center,
        radius: args.radius.unwrap_or(radius),
        amplitude: 1.0,
    };
    Ok(spec.validated()?)
}

/// Space dimension a group's chart acts on (`n` is the boost dimension or,
/// for dilations, the space dimension).
pub fn space_dim(group: GroupId, n: Option<usize>) -> Result<usize> {
    Ok(match group {
        GroupId::Dilation => n.unwrap_or(1),
        GroupId::AxB => 1,
        GroupId::RplusBoost => match n.unwrap_or(1) {
            1 => 2,
            other => bail!("rplus-boost charts are shipped for n = 1, not {other}"),
        },
        GroupId::Na | GroupId::FullLorentz => match n.unwrap_or(2) {
            2 => 3,
            other => bail!("NA and full Lorentz charts are shipped for n = 2, not {other}"),
        },
    })
}

/// Starting charts. Admissibility and covering charts grow or recentre them.
pub fn template_chart(group: GroupId, dim: usize, samples: Option<&[usize]>) -> Result<HaarChart> {
    let (bounds, default): (Vec<[f64; 2]>, Vec<usize>) = match group {
        GroupId::Dilation if dim == 1 => (vec![[1.0 / 16.0, 16.0]], vec![256]),
        GroupId::Dilation => (vec![[0.5, 2.0]], vec![64]),
        GroupId::AxB => (vec![[(-3.0f64).exp(), 3.0f64.exp()], [-6.0, 6.0]], vec![512, 512]),
        GroupId::RplusBoost => (vec![[0.5, 2.0], [-1.0, 1.0]], vec![64, 64]),
        GroupId::Na => (vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0]], vec![16, 16, 16]),
        GroupId::FullLorentz => (vec![[-1.0, 1.0], [0.5, 2.0], [-1.0, 1.0], [0.0, 2.0 * PI]], vec![12, 12, 12, 24]),
    };
    let samples = per_axis(samples, default)?;
    let chart = HaarChart::new(group, bounds, samples)?;
    Ok(if group == GroupId::Dilation { HaarChart { space_dim: dim, ..chart }.validated()? } else { chart })
}

/// Broadcasts one value to every axis, or checks one value per axis.
pub fn per_axis(samples: Option<&[usize]>, default: Vec<usize>) -> Result<Vec<usize>> {
    match samples {
        None => Ok(default),
        Some([k]) => Ok(vec![*k; default.len()]),
        Some(s) if s.len() == default.len() => Ok(s.to_vec()),
        Some(s) => bail!("--samples has {} values, the chart has {} axes", s.len(), default.len()),
    }
}

/// The centre of a ball plus half-radius offsets along every axis.
pub fn probes(center: &[f64], radius: f64) -> Vec<Vec<f64>> {
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

#[cfg(test)]
mod tests {
    use super::*;

    fn no_flags() -> WaveletArgs {
        WaveletArgs { orbit: None, center: None, radius: None, form: None }
    }

    #[test]
    fn default_balls_sit_in_their_orbits() {
        for (orbit, dim) in [
            (OrbitArg::Positive, 1),
            (OrbitArg::Negative, 1),
            (OrbitArg::O1, 2),
            (OrbitArg::O2, 3),
            (OrbitArg::O3, 3),
            (OrbitArg::O31, 2),
            (OrbitArg::O32, 3),
        ] {
            let args = WaveletArgs { orbit: Some(orbit), ..no_flags() };
            let psi = wavelet(None, &args, dim).unwrap();
            assert!(psi.orbit.contains(&psi.center), "{orbit:?} in {dim}-D");
        }
        assert!(wavelet(None, &WaveletArgs { orbit: Some(OrbitArg::O1), ..no_flags() }, 1).is_err());
    }

    #[test]
    fn samples_broadcast_or_match_axes() {
        assert_eq!(per_axis(Some(&[8]), vec![16; 3]).unwrap(), vec![8; 3]);
        assert_eq!(per_axis(Some(&[4, 5]), vec![1, 1]).unwrap(), vec![4, 5]);
        assert!(per_axis(Some(&[4, 5]), vec![1; 3]).is_err());
    }

    #[test]
    fn templates_match_group_dimensions() {
        let na = template_chart(GroupId::Na, 3, None).unwrap();
        assert_eq!((na.param_dim(), na.space_dim()), (3, 3));
        let d = template_chart(GroupId::Dilation, 2, Some(&[10])).unwrap();
        assert_eq!((d.space_dim(), d.node_count()), (2, 10));
        assert_eq!(probes(&[1.0, 2.0], 0.4).len(), 5);
    }
}
