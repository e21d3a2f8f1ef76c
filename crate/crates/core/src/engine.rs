//! The wavelet transform of `G = H ⋉ R^n` acting by the quasi-regular
//! representation `ρ(h,x) f(y) = Δ_π(h)^{1/2} f(π(h)⁻¹(y - x))`.
//!
//! On the Fourier side `ρ̂(h,x) f̂(ω) = Δ_π(h)^{-1/2} e^{-i x·ω} f̂(π(h)ᵗω)`,
//! so for a fixed chart node `h` the coefficients over all translations are a
//! single inverse FFT of `(2π)^{n/2} Δ_π(h)^{-1/2} f̂ · conj ψ̂(π(h)ᵗ·)`.

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atoms::{sphere_directions, SpectralAtom, WaveletSpec};
use crate::coefficients::{CoefficientField, SpectralSlice};
use crate::error::{Error, Result};
use crate::fourier::{fourier, interpolate_spectrum, inverse_fourier, GridSignal, Sampled, SpatialGrid, SpectralSignal};
use crate::groups::chart::{apply3, lorentz_inverse3};
use crate::groups::{AxisScale, GroupElement, GroupId, HaarChart, OrbitLabel};

/// An element `(h, x)` of `H ⋉ R^n`, with `h` stored as the matrix `π(h)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemidirectElement {
    pub h: GroupElement,
    pub x: Vec<f64>,
}

impl SemidirectElement {
    pub fn new(h: GroupElement, x: Vec<f64>) -> Result<Self> {
        if h.dim() != x.len() {
            return Err(Error::DimensionMismatch { expected: h.dim(), actual: x.len() });
        }
        Ok(Self { h, x })
    }

    pub fn identity(n: usize) -> Self {
        Self { h: GroupElement::identity(n), x: vec![0.0; n] }
    }

    pub fn translation(x: Vec<f64>) -> Self {
        Self { h: GroupElement::identity(x.len()), x }
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    /// `(a,x)(b,y) = (ab, x + a y)`.
    pub fn compose(&self, other: &SemidirectElement) -> Result<SemidirectElement> {
        let ay = self.h.act(&other.x)?;
        Ok(Self {
            h: self.h.compose(&other.h)?,
            x: self.x.iter().zip(&ay).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn inverse(&self) -> SemidirectElement {
        let hinv = self.h.inverse();
        let x = hinv.act(&self.x).expect("dimensions checked at construction").into_iter().map(|v| -v).collect();
        Self { h: hinv, x }
    }
}

/// `ρ(g) f` through the spectral formula, with multilinear interpolation of
/// `f̂` at `π(h)ᵗω`. Exact for pure translations; use
/// [`crate::atoms::TransformedAtom`] when `f̂` is known in closed form.
pub fn quasi_regular_apply(g: &SemidirectElement, f: &GridSignal) -> Result<GridSignal> {
    let n = f.grid().n_dims();
    if g.dim() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: g.dim() });
    }
    let fhat = fourier(f);
    let mt = g.h.matrix().transpose();
    let scale = g.h.delta_pi().powf(-0.5);
    let grid = f.grid().clone();
    let identity = g.h.max_entry_diff(&GroupElement::identity(n)) == 0.0;
    let out = SpectralSignal::from_fn(grid.clone(), |w| {
        let phase: f64 = g.x.iter().zip(w).map(|(a, b)| a * b).sum();
        let value = if identity {
            // exact node lookup, no interpolation
            interpolate_spectrum(&fhat, w)
        } else {
            let mw = &mt * DVector::from_column_slice(w);
            interpolate_spectrum(&fhat, mw.as_slice())
        };
        value * Complex64::from_polar(scale, -phase)
    });
    Ok(inverse_fourier(&out))
}

/// Per-node weights of the spectral mask of `label` on `grid`'s frequency nodes.
///
/// Half-line masks give the `ω = 0` node and the Nyquist node weight ½, so the
/// two halves always partition the grid. Lorentz masks are 0/1; cone nodes and
/// nodes between the two `O3` sub-orbits belong to no open piece.
pub fn orbit_mask(grid: &SpatialGrid, label: &OrbitLabel) -> Result<Vec<f64>> {
    let n = grid.n_dims();
    if !label.dims_ok(n) {
        return Err(Error::InvalidParameter { name: "label", reason: format!("{label:?} does not fit {n}-D signals") });
    }
    let mut w = vec![0.0; n];
    Ok((0..grid.len())
        .map(|i| {
            grid.frequency_node_into(i, &mut w);
            match label {
                OrbitLabel::HalfLine { positive } => {
                    let m = i as i64 - (grid.samples()[0] / 2) as i64;
                    if m == 0 || i == 0 {
                        0.5
                    } else if (w[0] > 0.0) == *positive {
                        1.0
                    } else {
                        0.0
                    }
                }
                _ => f64::from(u8::from(label.contains(&w))),
            }
        })
        .collect())
}

/// Spectral projection of `f` onto `L²` of an orbit.
pub fn orbit_project(f: &GridSignal, label: &OrbitLabel) -> Result<GridSignal> {
    let mask = orbit_mask(f.grid(), label)?;
    let mut fhat = fourier(f);
    for (v, m) in fhat.values_mut().iter_mut().zip(&mask) {
        *v *= *m;
    }
    Ok(inverse_fourier(&fhat))
}

/// Tuning of the adaptive admissibility quadrature.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AdmissibilityOptions {
    /// Two successive expansions must each change the integral by less than this.
    pub plateau_tol: f64,
    /// Relative growth per expansion that counts towards divergence.
    pub growth_tol: f64,
    /// Consecutive growing expansions that declare divergence.
    pub divergence_expansions: usize,
    pub max_expansions: usize,
    /// Relative padding of the initial covering box.
    pub margin: f64,
    /// Centre each probe's initial box on the elements that carry it into the
    /// wavelet's support; otherwise start from the chart's own bounds.
    pub recenter: bool,
}

impl Default for AdmissibilityOptions {
    fn default() -> Self {
        Self {
            plateau_tol: 1e-6,
            growth_tol: 0.01,
            divergence_expansions: 4,
            max_expansions: 8,
            margin: 0.05,
            recenter: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeResult {
    pub omega: Vec<f64>,
    pub integral: f64,
    /// Integral after each bound expansion.
    pub history: Vec<f64>,
    pub boundary_ratio: f64,
    pub bounds: Vec<[f64; 2]>,
    pub node_count: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityReport {
    pub c_psi_sq: f64,
    pub probes: Vec<ProbeResult>,
    /// `max |I(ω) - C²| / C²` over the probes.
    pub spread: f64,
    pub chart_bounds_used: Vec<Vec<[f64; 2]>>,
    pub node_counts: Vec<usize>,
}

struct ChartSum {
    integral: f64,
    peak: f64,
    edge: f64,
}

/// `Σ_h w_h |ψ̂(π(h)ᵗ ω)|²` over a chart, with peak and boundary maxima.
fn chart_integral(chart: &HaarChart, psi: &WaveletSpec, omega: &[f64]) -> ChartSum {
    let d = chart.param_dim();
    let axes: Vec<_> = (0..d).map(|a| chart.axis_nodes(a)).collect();
    let dims = &chart.samples;
    let inner: usize = dims[1..].iter().product();
    let signs: &[f64] = if chart.full_line { &[1.0, -1.0] } else { &[1.0] };
    let lorentz = !matches!(chart.group_id, GroupId::Dilation | GroupId::AxB);
    let rows: Vec<ChartSum> = (0..dims[0])
        .into_par_iter()
        .map(|i0| {
            let mut acc = ChartSum { integral: 0.0, peak: 0.0, edge: 0.0 };
            let mut idx = [0usize; 4];
            let mut p = [0.0; 4];
            let mut w = vec![0.0; omega.len()];
            idx[0] = i0;
            for rest in 0..inner {
                let mut r = rest;
                for a in (1..d).rev() {
                    idx[a] = r % dims[a];
                    r /= dims[a];
                }
                let mut volume = 1.0;
                for a in 0..d {
                    p[a] = axes[a].values[idx[a]];
                    volume *= axes[a].volumes[idx[a]];
                }
                let on_edge = (0..d).any(|a| !chart.is_compact_axis(a) && (idx[a] == 0 || idx[a] + 1 == dims[a]));
                for &sign in signs {
                    p[0] = sign * axes[0].values[idx[0]];
                    if lorentz {
                        let m = lorentz_inverse3(chart, &p[..d]);
                        let v = apply3(&m, omega);
                        w.iter_mut().enumerate().for_each(|(k, x)| *x = v[k]);
                    } else {
                        w.iter_mut().zip(omega).for_each(|(x, o)| *x = p[0] * o);
                    }
                    let value = psi.value(&w);
                    if value == 0.0 {
                        continue;
                    }
                    let f = value * value;
                    acc.integral += chart.density(&p[..d]) * volume * f;
                    acc.peak = acc.peak.max(f);
                    if on_edge {
                        acc.edge = acc.edge.max(f);
                    }
                }
            }
            acc
        })
        .collect();
    let mut total = ChartSum { integral: 0.0, peak: 0.0, edge: 0.0 };
    for r in rows {
        total.integral += r.integral;
        total.peak = total.peak.max(r.peak);
        total.edge = total.edge.max(r.edge);
    }
    total
}

/// Points sampling a closed ball: centre plus two spherical shells.
pub(crate) fn ball_samples(center: &[f64], radius: f64) -> Vec<Vec<f64>> {
    let mut out = vec![center.to_vec()];
    for dir in sphere_directions(center.len()) {
        for s in [0.5, 1.0] {
            out.push(center.iter().zip(&dir).map(|(c, d)| c + s * radius * d).collect());
        }
    }
    out
}

/// A chart of `template`'s group and resolution whose box contains every
/// element carrying one of `frequencies` into one of the `targets` balls,
/// padded by `margin` of the box width on each side.
pub fn covering_chart(
    template: &HaarChart,
    frequencies: &[Vec<f64>],
    targets: &[(Vec<f64>, f64)],
    margin: f64,
) -> Result<HaarChart> {
    let d = template.param_dim();
    if template.group_id == GroupId::AxB {
        return Err(Error::ChartDomain("the ax+b chart has no frequency transporter".into()));
    }
    let etas: Vec<Vec<f64>> = targets.iter().flat_map(|(c, r)| ball_samples(c, *r)).collect();
    let boxes: Vec<Option<(Vec<f64>, Vec<f64>)>> = frequencies
        .par_iter()
        .map(|omega| {
            let mut lo = vec![f64::INFINITY; d];
            let mut hi = vec![f64::NEG_INFINITY; d];
            let mut any = false;
            for eta in &etas {
                if let Some(p) = template.transporter(omega, eta) {
                    any = true;
                    for a in 0..d {
                        let v = if template.scale[a] == AxisScale::Log { p[a].abs().ln() } else { p[a] };
                        lo[a] = lo[a].min(v);
                        hi[a] = hi[a].max(v);
                    }
                }
            }
            any.then_some((lo, hi))
        })
        .collect();
    let mut lo = vec![f64::INFINITY; d];
    let mut hi = vec![f64::NEG_INFINITY; d];
    for (l, h) in boxes.into_iter().flatten() {
        for a in 0..d {
            lo[a] = lo[a].min(l[a]);
            hi[a] = hi[a].max(h[a]);
        }
    }
    if lo.iter().any(|v| !v.is_finite()) {
        return Err(Error::OutsideOrbit("no group element maps the frequencies into the wavelet support".into()));
    }
    let mut chart = template.clone();
    for a in 0..d {
        if template.is_compact_axis(a) {
            chart.bounds[a] = [0.0, std::f64::consts::TAU];
            continue;
        }
        let width = (hi[a] - lo[a]).max(1e-6);
        let (l, h) = (lo[a] - margin * width, hi[a] + margin * width);
        chart.bounds[a] = if template.scale[a] == AxisScale::Log { [l.exp(), h.exp()] } else { [l, h] };
    }
    chart.validated()
}

/// Admissibility integral `∫_H |ψ̂(π(h)ᵗω)|² dh` at each probe, with adaptive
/// bound expansion. Returns [`Error::Divergent`] when the integral keeps growing
/// and [`Error::TruncationFailure`] when it neither settles nor diverges.
pub fn gcwt_admissibility(
    psi: &WaveletSpec,
    chart: &HaarChart,
    probes: &[Vec<f64>],
    opts: &AdmissibilityOptions,
) -> Result<AdmissibilityReport> {
    if chart.group_id == GroupId::AxB {
        return Err(Error::ChartDomain("use a dilation chart for the ax+b scale integral".into()));
    }
    if chart.space_dim() != psi.n_dims {
        return Err(Error::DimensionMismatch { expected: chart.space_dim(), actual: psi.n_dims });
    }
    if probes.is_empty() {
        return Err(Error::InvalidParameter { name: "probes", reason: "need at least one probe".into() });
    }
    let mut results = Vec::with_capacity(probes.len());
    for omega in probes {
        if omega.len() != psi.n_dims {
            return Err(Error::DimensionMismatch { expected: psi.n_dims, actual: omega.len() });
        }
        if !psi.orbit.contains(omega) {
            return Err(Error::OutsideOrbit(format!("probe {omega:?} is not in {:?}", psi.orbit)));
        }
        let mut current = if opts.recenter {
            covering_chart(chart, std::slice::from_ref(omega), &[(psi.center.clone(), psi.radius)], opts.margin)?
        } else {
            chart.clone()
        };
        let mut history = Vec::new();
        let mut changes: Vec<f64> = Vec::new();
        loop {
            let sum = chart_integral(&current, psi, omega);
            if sum.integral <= 0.0 {
                return Err(Error::NotAdmissible(format!("integrand vanishes on the chart for probe {omega:?}")));
            }
            if let Some(&prev) = history.last() {
                changes.push((sum.integral - prev) / prev);
            }
            history.push(sum.integral);
            let settled = changes.len() >= 2 && changes[changes.len() - 2..].iter().all(|c: &f64| c.abs() < opts.plateau_tol);
            if settled {
                results.push(ProbeResult {
                    omega: omega.clone(),
                    integral: sum.integral,
                    history,
                    boundary_ratio: if sum.peak > 0.0 { sum.edge / sum.peak } else { 0.0 },
                    bounds: current.bounds.clone(),
                    node_count: current.node_count(),
                });
                break;
            }
            let k = opts.divergence_expansions;
            if changes.len() >= k && changes[changes.len() - k..].iter().all(|&c| c > opts.growth_tol) {
                return Err(Error::Divergent(format!(
                    "probe {omega:?}: integral kept growing over {k} expansions: {history:?}"
                )));
            }
            if history.len() > opts.max_expansions {
                return Err(Error::TruncationFailure(format!(
                    "probe {omega:?}: no plateau after {} expansions: {history:?}",
                    opts.max_expansions
                )));
            }
            current = current.expanded()?;
        }
    }
    let mean = results.iter().map(|r| r.integral).sum::<f64>() / results.len() as f64;
    let spread = results.iter().map(|r| ((r.integral - mean) / mean).abs()).fold(0.0, f64::max);
    Ok(AdmissibilityReport {
        c_psi_sq: mean,
        spread,
        chart_bounds_used: results.iter().map(|r| r.bounds.clone()).collect(),
        node_counts: results.iter().map(|r| r.node_count).collect(),
        probes: results,
    })
}

#[inline]
fn mat_apply(m: &[f64], n: usize, w: &[f64], out: &mut [f64]) {
    for i in 0..n {
        out[i] = (0..n).map(|j| m[i * n + j] * w[j]).sum();
    }
}

/// Grid indices (and frequency-side values) where `ψ̂(M ω) ≠ 0`.
fn slice_support(
    grid: &SpatialGrid,
    psi: &dyn SpectralAtom,
    m: &[f64],
    m_inv: &[f64],
) -> Vec<(u32, Complex64)> {
    let n = grid.n_dims();
    let mut w = vec![0.0; n];
    let mut mw = vec![0.0; n];
    let mut out = Vec::new();
    let mut visit = |i: usize, out: &mut Vec<(u32, Complex64)>| {
        grid.frequency_node_into(i, &mut w);
        mat_apply(m, n, &w, &mut mw);
        let v = psi.eval(&mw);
        if v != Complex64::new(0.0, 0.0) {
            out.push((i as u32, v));
        }
    };
    match psi.support() {
        None => (0..grid.len()).for_each(|i| visit(i, &mut out)),
        Some(balls) => {
            let strides = grid.strides();
            for (c, r) in balls {
                // bounding box of the ellipsoid M⁻¹ B(c, r)
                let mut center = vec![0.0; n];
                mat_apply(m_inv, n, &c, &mut center);
                let mut lo = vec![0usize; n];
                let mut count = vec![0usize; n];
                let mut empty = false;
                for a in 0..n {
                    let half = r * (0..n).map(|j| m_inv[a * n + j].powi(2)).sum::<f64>().sqrt();
                    let dw = grid.frequency_spacing(a);
                    let off = (grid.samples()[a] / 2) as f64;
                    let first = ((center[a] - half) / dw + off).floor().max(0.0);
                    let last = ((center[a] + half) / dw + off).ceil().min(grid.samples()[a] as f64 - 1.0);
                    if last < first {
                        empty = true;
                        break;
                    }
                    lo[a] = first as usize;
                    count[a] = (last - first) as usize + 1;
                }
                if empty {
                    continue;
                }
                let total: usize = count.iter().product();
                for flat in 0..total {
                    let mut r = flat;
                    let mut index = 0;
                    for a in (0..n).rev() {
                        index += (lo[a] + r % count[a]) * strides[a];
                        r /= count[a];
                    }
                    visit(index, &mut out);
                }
            }
            out.sort_unstable_by_key(|e| e.0);
            out.dedup_by_key(|e| e.0);
        }
    }
    out
}

struct NodeGeometry {
    m: Vec<f64>,
    m_inv: Vec<f64>,
    delta_pi: f64,
}

fn node_geometry(chart: &HaarChart, params: &[f64]) -> Result<NodeGeometry> {
    let m = chart.frequency_matrix(params)?;
    let det = m.determinant().abs();
    let m_inv = m.clone().try_inverse().ok_or(Error::Singular { det })?;
    Ok(NodeGeometry {
        m: m.transpose().as_slice().to_vec(),
        m_inv: m_inv.transpose().as_slice().to_vec(),
        delta_pi: 1.0 / det,
    })
}

/// `W_ψ f(h, x) = (f | ρ(h,x) ψ)` at every chart node and grid translation.
pub fn gcwt_transform(f: &GridSignal, psi: &dyn SpectralAtom, chart: &HaarChart) -> Result<CoefficientField> {
    let grid = f.grid();
    let n = grid.n_dims();
    if chart.space_dim() != n || psi.n_dims() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: chart.space_dim().max(psi.n_dims()) });
    }
    if chart.group_id == GroupId::AxB {
        return Err(Error::ChartDomain("transforms use dilation or Lorentz-family charts".into()));
    }
    let fhat = fourier(f);
    let nodes = chart.nodes();
    let root = (2.0 * PI).powf(n as f64 / 2.0);
    let slices: Vec<Result<(SpectralSlice, f64)>> = nodes
        .par_iter()
        .map(|node| {
            let geo = node_geometry(chart, &node.params)?;
            let scale = root * geo.delta_pi.powf(-0.5);
            let support = slice_support(grid, psi, &geo.m, &geo.m_inv);
            let (indices, values) = support
                .into_iter()
                .map(|(i, p)| (i, fhat.values()[i as usize] * p.conj() * scale))
                .unzip();
            Ok((SpectralSlice { indices, values }, geo.delta_pi))
        })
        .collect();
    let mut out_slices = Vec::with_capacity(nodes.len());
    let mut deltas = Vec::with_capacity(nodes.len());
    for s in slices {
        let (slice, d) = s?;
        out_slices.push(slice);
        deltas.push(d);
    }
    CoefficientField::new(
        chart.clone(),
        grid.clone(),
        nodes.iter().map(|n| n.params.clone()).collect(),
        nodes.iter().map(|n| n.weight).collect(),
        deltas,
        out_slices,
    )
}

/// `‖W_ψ f‖² / (C_ψ² ‖f‖²)` with the `L²(G)` weights `w_h Δ_π(h) Δxⁿ / (2π)ⁿ`.
pub fn gcwt_parseval(coeffs: &CoefficientField, f: &GridSignal, c_psi_sq: f64) -> Result<f64> {
    if !(c_psi_sq > 0.0 && c_psi_sq.is_finite()) {
        return Err(Error::InvalidParameter { name: "c_psi_sq", reason: format!("{c_psi_sq} must be positive") });
    }
    let norm_sq = f.norm_sq();
    if norm_sq == 0.0 {
        return Err(Error::InvalidParameter { name: "f", reason: "zero signal: the ratio is undefined".into() });
    }
    Ok(coeffs.energy() / (c_psi_sq * norm_sq))
}

/// `C_ψ⁻² Σ_{h,x} w(h,x) W(h,x) ρ(h,x)ψ`, summed on the Fourier side.
pub fn gcwt_reconstruct(coeffs: &CoefficientField, psi: &dyn SpectralAtom, c_psi_sq: f64) -> Result<GridSignal> {
    Ok(inverse_fourier(&reconstruct_spectrum(coeffs, psi, c_psi_sq)?))
}

pub(crate) fn reconstruct_spectrum(
    coeffs: &CoefficientField,
    psi: &dyn SpectralAtom,
    c_psi_sq: f64,
) -> Result<SpectralSignal> {
    if !(c_psi_sq > 0.0 && c_psi_sq.is_finite()) {
        return Err(Error::InvalidParameter { name: "c_psi_sq", reason: format!("{c_psi_sq} must be positive") });
    }
    let grid = coeffs.grid().clone();
    let n = grid.n_dims();
    if psi.n_dims() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: psi.n_dims() });
    }
    let chart = coeffs.chart();
    let root = (2.0 * PI).powf(n as f64 / 2.0);
    let count = coeffs.node_count();
    let chunks = count.clamp(1, 32);
    let per = count.div_ceil(chunks);
    let partials: Vec<Result<Vec<Complex64>>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = vec![Complex64::new(0.0, 0.0); grid.len()];
            let mut w = vec![0.0; n];
            let mut mw = vec![0.0; n];
            for i in c * per..((c + 1) * per).min(count) {
                let slice = coeffs.slice(i);
                if slice.indices.is_empty() {
                    continue;
                }
                let geo = node_geometry(chart, coeffs.params(i))?;
                let factor = coeffs.haar_weight(i) * geo.delta_pi.sqrt() / root;
                for (&k, v) in slice.indices.iter().zip(&slice.values) {
                    grid.frequency_node_into(k as usize, &mut w);
                    mat_apply(&geo.m, n, &w, &mut mw);
                    acc[k as usize] += v * psi.eval(&mw) * factor;
                }
            }
            Ok(acc)
        })
        .collect();
    let mut total = vec![Complex64::new(0.0, 0.0); grid.len()];
    for p in partials {
        for (t, v) in total.iter_mut().zip(p?) {
            *t += v;
        }
    }
    let inv = 1.0 / c_psi_sq;
    total.iter_mut().for_each(|v| *v *= inv);
    SpectralSignal::new(grid, total)
}

/// Frequencies where `|f̂|` exceeds `rel_threshold` of its maximum, thinned to at most `max_points`.
pub fn spectral_support_points(spec: &SpectralSignal, rel_threshold: f64, max_points: usize) -> Vec<Vec<f64>> {
    let peak = spec.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let idx: Vec<usize> = spec
        .values()
        .iter()
        .enumerate()
        .filter(|(_, v)| v.norm() > rel_threshold * peak)
        .map(|(i, _)| i)
        .collect();
    let stride = idx.len().div_ceil(max_points.max(1)).max(1);
    idx.iter().step_by(stride).map(|&i| spec.grid().frequency_node(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::TransformedAtom;
    use crate::groups::LorentzTag;

    #[test]
    fn semidirect_product_law() {
        let a = SemidirectElement::new(GroupElement::from_rows(2, &[2.0, 1.0, 0.0, 1.0]).unwrap(), vec![1.0, -1.0]).unwrap();
        let b = SemidirectElement::new(GroupElement::from_rows(2, &[1.0, 0.0, 0.5, 3.0]).unwrap(), vec![0.2, 0.4]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert!((ab.x[0] - 1.8).abs() < 1e-15 && (ab.x[1] + 0.6).abs() < 1e-15);
        let e = ab.compose(&ab.inverse()).unwrap();
        assert!(e.h.max_entry_diff(&GroupElement::identity(2)) < 1e-14);
        assert!(e.x.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn grid_translation_is_a_circular_shift() {
        let grid = SpatialGrid::cube(1, 8.0, 64).unwrap();
        let f = GridSignal::from_fn(grid.clone(), |x| Complex64::new((-x[0] * x[0]).exp(), x[0].sin()));
        let shift = 5.0 * grid.spacing(0);
        let g = quasi_regular_apply(&SemidirectElement::translation(vec![shift]), &f).unwrap();
        for k in 0..64 {
            let expected = f.values()[(k + 64 - 5) % 64];
            assert!((g.values()[k] - expected).norm() < 1e-12);
        }
    }

    #[test]
    fn half_line_masks_partition_the_grid() {
        let grid = SpatialGrid::cube(1, 4.0, 16).unwrap();
        let p = orbit_mask(&grid, &OrbitLabel::HalfLine { positive: true }).unwrap();
        let m = orbit_mask(&grid, &OrbitLabel::HalfLine { positive: false }).unwrap();
        assert!(p.iter().zip(&m).all(|(a, b)| a + b == 1.0));
        assert_eq!(p[0], 0.5);
        assert_eq!(p[8], 0.5);
    }

    #[test]
    fn dilation_admissibility_matches_the_log_integral() {
        let psi = WaveletSpec::indicator(OrbitLabel::HalfLine { positive: true }, vec![1.5], 0.5).unwrap();
        let chart = HaarChart::dilation(1, [0.5, 2.0], 2000).unwrap();
        let report = gcwt_admissibility(&psi, &chart, &[vec![1.0], vec![3.0]], &AdmissibilityOptions::default()).unwrap();
        assert!((report.c_psi_sq - 2f64.ln()).abs() < 2e-3, "{}", report.c_psi_sq);
    }

    #[test]
    fn disjoint_orbits_give_zero_coefficients() {
        let grid = SpatialGrid::cube(2, 16.0, 32).unwrap();
        let psi = WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O1), vec![1.5, 0.0], 0.4).unwrap();
        let other = WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O2), vec![-1.5, 0.0], 0.4).unwrap();
        let f = other.sample(&grid);
        let chart = HaarChart::new(GroupId::RplusBoost, vec![[0.5, 2.0], [-1.0, 1.0]], vec![8, 8]).unwrap();
        let w = gcwt_transform(&f, &psi, &chart).unwrap();
        assert!(w.energy() < 1e-24 * f.norm_sq());
    }

    #[test]
    fn transformed_atom_spectrum_matches_quasi_regular_apply_for_translations() {
        let grid = SpatialGrid::cube(2, 10.0, 32).unwrap();
        let psi = WaveletSpec::bump(OrbitLabel::lorentz(LorentzTag::O1), vec![1.5, 0.0], 0.6).unwrap();
        let g = SemidirectElement::translation(vec![3.0 * grid.spacing(0), -2.0 * grid.spacing(1)]);
        let moved = quasi_regular_apply(&g, &psi.sample(&grid)).unwrap();
        let atom = TransformedAtom::new(psi, g).unwrap().sample(&grid);
        assert!(moved.max_abs_diff(&atom).unwrap() < 1e-12);
    }
}
