//! Parameter charts of matrix groups with explicit left-Haar densities.
//!
//! Every chart is a product box, sampled at cell midpoints. Log-scaled axes
//! are uniform in `ln x`, so a cell of log-width `h` around `x` has volume
//! `x·h`. Node weights are density × cell volume.
//!
//! | group          | parameters          | density          |
//! |----------------|---------------------|------------------|
//! | `dilation`     | `λ`                 | `1/λ`            |
//! | `axb`          | `a, b`              | `1/(2π a²)`      |
//! | `rplus-boost`  | `λ, t`              | `1/λ`            |
//! | `na`           | `v, λ, t`           | `e^{-t}/λ`       |
//! | `full-lorentz` | `v, λ, t, θ`        | `e^{-t}/λ`       |
//!
//! The group elements are `λI`, `[[a, b], [0, 1]]`, `λ a_t` on `R²`,
//! `λ n(v) a_t` and `λ n(v) a_t k_θ` on `R³`. The NA density follows from
//! `a_t n(v) a_{-t} = n(e^t v)`; the full group is unimodular, so its Haar
//! measure is the NA left-Haar measure times `dθ`.
//!
//! The dilation groups act on frequencies by `ω ↦ λω`. The Lorentz-family
//! groups are represented contragrediently, `π(g) = (g⁻¹)ᵗ`, so that the
//! frequency-side matrix `π(g)ᵗ` is `g⁻¹` and frequency orbits are the
//! ordinary orbits `O1, O2, O31, O32` of the matrix group.

use std::f64::consts::{PI, TAU};

use nalgebra::{DMatrix, Matrix3, Vector3};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::element::GroupElement;
use super::lorentz::{self, beta, LorentzTag};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GroupId {
    Dilation,
    #[serde(rename = "axb")]
    AxB,
    RplusBoost,
    Na,
    FullLorentz,
}

impl GroupId {
    pub fn param_dim(self) -> usize {
        match self {
            GroupId::Dilation => 1,
            GroupId::AxB | GroupId::RplusBoost => 2,
            GroupId::Na => 3,
            GroupId::FullLorentz => 4,
        }
    }

    /// Index of the boost parameter, if any.
    pub fn boost_axis(self) -> Option<usize> {
        match self {
            GroupId::RplusBoost => Some(1),
            GroupId::Na | GroupId::FullLorentz => Some(2),
            _ => None,
        }
    }

    /// Index of the scale parameter (`λ` or `a`).
    pub fn scale_axis(self) -> usize {
        match self {
            GroupId::Na | GroupId::FullLorentz => 1,
            _ => 0,
        }
    }

    fn default_scales(self) -> Vec<AxisScale> {
        let mut s = vec![AxisScale::Uniform; self.param_dim()];
        s[self.scale_axis()] = AxisScale::Log;
        s
    }

    fn is_lorentz(self) -> bool {
        matches!(self, GroupId::RplusBoost | GroupId::Na | GroupId::FullLorentz)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AxisScale {
    Uniform,
    Log,
}

fn default_space_dim() -> usize {
    1
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

fn is_false(x: &bool) -> bool {
    !*x
}

fn is_one(x: &usize) -> bool {
    *x == 1
}

/// A sampled product-box chart of a group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HaarChart {
    pub group_id: GroupId,
    pub bounds: Vec<[f64; 2]>,
    pub samples: Vec<usize>,
    pub scale: Vec<AxisScale>,
    /// Extra density factor `e^{tilt·t}` on the boost parameter. Zero for the
    /// true Haar density; nonzero values exist to exercise invariance checks.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub tilt: f64,
    /// Dimension of the space a dilation chart acts on.
    #[serde(default = "default_space_dim", skip_serializing_if = "is_one")]
    pub space_dim: usize,
    /// Dilation charts only: include `-λ` for every node (`|λ|^{-1/2}` normalization).
    #[serde(default, skip_serializing_if = "is_false")]
    pub full_line: bool,
}

/// One quadrature node of a chart.
#[derive(Clone, Debug, PartialEq)]
pub struct ChartNode {
    pub params: Vec<f64>,
    pub weight: f64,
}

/// Midpoint nodes of a single axis.
#[derive(Clone, Debug)]
pub struct AxisNodes {
    pub values: Vec<f64>,
    pub volumes: Vec<f64>,
}

impl HaarChart {
    pub fn new(group_id: GroupId, bounds: Vec<[f64; 2]>, samples: Vec<usize>) -> Result<Self> {
        let chart = Self {
            group_id,
            scale: group_id.default_scales(),
            bounds,
            samples,
            tilt: 0.0,
            space_dim: if group_id == GroupId::Dilation { 1 } else { 0 },
            full_line: false,
        };
        chart.normalized().validated()
    }

    /// Dilations `λ I` on `R^dim`.
    pub fn dilation(dim: usize, bounds: [f64; 2], samples: usize) -> Result<Self> {
        let mut c = Self::new(GroupId::Dilation, vec![bounds], vec![samples])?;
        c.space_dim = dim;
        c.validated()
    }

    pub fn with_tilt(mut self, tilt: f64) -> Result<Self> {
        self.tilt = tilt;
        self.validated()
    }

    pub fn with_full_line(mut self, full_line: bool) -> Result<Self> {
        self.full_line = full_line;
        self.validated()
    }

    pub fn with_scale(mut self, scale: Vec<AxisScale>) -> Result<Self> {
        self.scale = scale;
        self.validated()
    }

    fn normalized(mut self) -> Self {
        if self.group_id != GroupId::Dilation {
            self.space_dim = self.space_dim();
        }
        self
    }

    /// Checks shapes, domains and options; returns the chart on success.
    pub fn validated(self) -> Result<Self> {
        let chart = self.normalized();
        let d = chart.group_id.param_dim();
        for (name, len) in [("bounds", chart.bounds.len()), ("samples", chart.samples.len()), ("scale", chart.scale.len())] {
            if len != d {
                return Err(Error::ChartDomain(format!("{name} has {len} entries, {:?} needs {d}", chart.group_id)));
            }
        }
        for (axis, (&[lo, hi], &k)) in chart.bounds.iter().zip(&chart.samples).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::ChartDomain(format!("axis {axis}: bounds [{lo}, {hi}] are not an interval")));
            }
            if k == 0 {
                return Err(Error::ChartDomain(format!("axis {axis}: zero samples")));
            }
            if chart.scale[axis] == AxisScale::Log && lo <= 0.0 {
                return Err(Error::ChartDomain(format!("axis {axis}: log scale needs positive bounds")));
            }
        }
        let s = chart.group_id.scale_axis();
        if chart.bounds[s][0] <= 0.0 {
            return Err(Error::ChartDomain(format!("scale parameter must be positive, got lower bound {}", chart.bounds[s][0])));
        }
        if chart.group_id == GroupId::FullLorentz {
            let [lo, hi] = chart.bounds[3];
            if lo < 0.0 || hi > TAU + 1e-12 {
                return Err(Error::ChartDomain(format!("rotation angle bounds [{lo}, {hi}] exceed [0, 2π]")));
            }
        }
        if chart.tilt != 0.0 && chart.group_id.boost_axis().is_none() {
            return Err(Error::ChartDomain("tilt needs a boost parameter".into()));
        }
        if chart.full_line && chart.group_id != GroupId::Dilation {
            return Err(Error::ChartDomain("full-line mode is only defined for dilation charts".into()));
        }
        if chart.group_id == GroupId::Dilation && chart.space_dim == 0 {
            return Err(Error::ChartDomain("dilation chart needs space_dim >= 1".into()));
        }
        Ok(chart)
    }

    pub fn param_dim(&self) -> usize {
        self.group_id.param_dim()
    }

    /// Dimension of the frequency space the group acts on.
    pub fn space_dim(&self) -> usize {
        match self.group_id {
            GroupId::Dilation => self.space_dim,
            GroupId::AxB => 1,
            GroupId::RplusBoost => 2,
            GroupId::Na | GroupId::FullLorentz => 3,
        }
    }

    /// Axes that wrap around (rotation angles); never expanded.
    pub fn is_compact_axis(&self, axis: usize) -> bool {
        self.group_id == GroupId::FullLorentz && axis == 3
    }

    pub fn node_count(&self) -> usize {
        self.samples.iter().product::<usize>() * if self.full_line { 2 } else { 1 }
    }

    pub fn axis_nodes(&self, axis: usize) -> AxisNodes {
        let [lo, hi] = self.bounds[axis];
        let k = self.samples[axis];
        match self.scale[axis] {
            AxisScale::Uniform => {
                let h = (hi - lo) / k as f64;
                AxisNodes {
                    values: (0..k).map(|i| lo + (i as f64 + 0.5) * h).collect(),
                    volumes: vec![h; k],
                }
            }
            AxisScale::Log => {
                let (a, b) = (lo.ln(), hi.ln());
                let h = (b - a) / k as f64;
                let values: Vec<f64> = (0..k).map(|i| (a + (i as f64 + 0.5) * h).exp()).collect();
                let volumes = values.iter().map(|x| x * h).collect();
                AxisNodes { values, volumes }
            }
        }
    }

    /// Left-Haar density at `params` (including any tilt).
    pub fn density(&self, params: &[f64]) -> f64 {
        let tilt = match self.group_id.boost_axis() {
            Some(i) if self.tilt != 0.0 => (self.tilt * params[i]).exp(),
            _ => 1.0,
        };
        tilt * match self.group_id {
            GroupId::Dilation => 1.0 / params[0].abs(),
            GroupId::AxB => 1.0 / (2.0 * PI * params[0] * params[0]),
            GroupId::RplusBoost => 1.0 / params[0],
            GroupId::Na | GroupId::FullLorentz => (-params[2]).exp() / params[1],
        }
    }

    /// All quadrature nodes in row-major order (last parameter fastest).
    pub fn nodes(&self) -> Vec<ChartNode> {
        let axes: Vec<AxisNodes> = (0..self.param_dim()).map(|a| self.axis_nodes(a)).collect();
        let total = self.samples.iter().product::<usize>();
        let mut out = Vec::with_capacity(self.node_count());
        let mut idx = vec![0usize; axes.len()];
        for flat in 0..total {
            let mut rem = flat;
            for a in (0..axes.len()).rev() {
                idx[a] = rem % self.samples[a];
                rem /= self.samples[a];
            }
            let params: Vec<f64> = idx.iter().enumerate().map(|(a, &i)| axes[a].values[i]).collect();
            let volume: f64 = idx.iter().enumerate().map(|(a, &i)| axes[a].volumes[i]).product();
            let weight = self.density(&params) * volume;
            if self.full_line {
                let mut neg = params.clone();
                neg[0] = -neg[0];
                out.push(ChartNode { params: neg, weight });
            }
            out.push(ChartNode { params, weight });
        }
        out
    }

    /// Group element as a 3×3 matrix (smaller groups embedded block-diagonally).
    pub fn embedded_matrix(&self, p: &[f64]) -> Matrix3<f64> {
        match self.group_id {
            GroupId::Dilation => Matrix3::new(p[0], 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0),
            GroupId::AxB => Matrix3::new(p[0], p[1], 0.0, 0.0, 1.0, 0.0, 0.0, 0.0, 1.0),
            GroupId::RplusBoost => {
                let (s, c) = (p[1].sinh(), p[1].cosh());
                Matrix3::new(p[0] * c, p[0] * s, 0.0, p[0] * s, p[0] * c, 0.0, 0.0, 0.0, 1.0)
            }
            GroupId::Na => nilpotent3(p[0]) * boost3(p[2]) * p[1],
            GroupId::FullLorentz => nilpotent3(p[0]) * boost3(p[2]) * rotation3(p[3]) * p[1],
        }
    }

    /// Inverse of [`HaarChart::embedded_matrix`]; `None` off the chart's group.
    pub fn params_of_embedded(&self, m: &Matrix3<f64>, out: &mut [f64]) -> bool {
        match self.group_id {
            GroupId::Dilation => {
                out[0] = m[(0, 0)];
                self.full_line || out[0] > 0.0
            }
            GroupId::AxB => {
                out[0] = m[(0, 0)];
                out[1] = m[(0, 1)];
                out[0] > 0.0
            }
            GroupId::RplusBoost => {
                let (c, s) = (m[(0, 0)], m[(0, 1)]);
                if c <= s.abs() {
                    return false;
                }
                out[0] = (c * c - s * s).sqrt();
                out[1] = (s / c).atanh();
                true
            }
            GroupId::Na => {
                let det = m.determinant();
                if det <= 0.0 {
                    return false;
                }
                let lambda = det.cbrt();
                let x = m.column(2) / lambda;
                let gap = x[2] - x[0];
                if gap <= 0.0 {
                    return false;
                }
                out[0] = -x[1] / gap;
                out[1] = lambda;
                out[2] = -gap.ln();
                true
            }
            GroupId::FullLorentz => {
                let det = m.determinant();
                if det <= 0.0 {
                    return false;
                }
                let lambda = det.cbrt();
                let h = DMatrix::from_iterator(3, 3, (m / lambda).iter().copied());
                match lorentz::iwasawa_coordinates(&h) {
                    Some((v, t, theta)) => {
                        out[0] = v;
                        out[1] = lambda;
                        out[2] = t;
                        out[3] = theta;
                        true
                    }
                    None => false,
                }
            }
        }
    }

    /// Group element in its natural matrix size.
    pub fn group_element(&self, p: &[f64]) -> Result<GroupElement> {
        let m = self.embedded_matrix(p);
        let d = match self.group_id {
            GroupId::Dilation => 1,
            GroupId::AxB | GroupId::RplusBoost => 2,
            GroupId::Na | GroupId::FullLorentz => 3,
        };
        GroupElement::new(DMatrix::from_fn(d, d, |i, j| m[(i, j)]))
    }

    /// Parameters of a natural-size group element.
    pub fn params_of(&self, g: &GroupElement) -> Option<Vec<f64>> {
        let d = g.dim();
        if d > 3 {
            return None;
        }
        let mut m = Matrix3::identity();
        for i in 0..d {
            for j in 0..d {
                m[(i, j)] = g.matrix()[(i, j)];
            }
        }
        let mut out = vec![0.0; self.param_dim()];
        self.params_of_embedded(&m, &mut out).then_some(out)
    }

    /// The matrix `π(h)ᵗ` acting on frequencies.
    pub fn frequency_matrix(&self, p: &[f64]) -> Result<DMatrix<f64>> {
        match self.group_id {
            GroupId::Dilation => Ok(DMatrix::identity(self.space_dim, self.space_dim) * p[0]),
            GroupId::AxB => Ok(DMatrix::from_element(1, 1, p[0])),
            _ => Ok(self.group_element(p)?.inverse().matrix().clone()),
        }
    }

    /// `π(h)` acting on R^n.
    pub fn representation(&self, p: &[f64]) -> Result<GroupElement> {
        Ok(GroupElement::new(self.frequency_matrix(p)?)?.transpose())
    }

    /// Parameters `h` with `π(h)ᵗ ω = η`, when such an `h` exists in the group.
    ///
    /// For the full Lorentz chart the NA representative (`θ = 0`) is returned.
    pub fn transporter(&self, omega: &[f64], eta: &[f64]) -> Option<Vec<f64>> {
        if omega.len() != self.space_dim() || eta.len() != self.space_dim() {
            return None;
        }
        match self.group_id {
            GroupId::Dilation => {
                let no: f64 = omega.iter().map(|x| x * x).sum::<f64>().sqrt();
                let ne: f64 = eta.iter().map(|x| x * x).sum::<f64>().sqrt();
                let dot: f64 = omega.iter().zip(eta).map(|(a, b)| a * b).sum();
                if no == 0.0 || ne == 0.0 || (dot < 0.0 && !self.full_line) {
                    return None;
                }
                Some(vec![dot.signum() * ne / no])
            }
            GroupId::AxB => None,
            GroupId::RplusBoost => {
                let tol = 1e-12;
                let (to, te) = (lorentz::classify_fine(omega, tol), lorentz::classify_fine(eta, tol));
                if to != te || matches!(to, LorentzTag::ConeC) {
                    return None;
                }
                let lambda = (beta(omega, omega) / beta(eta, eta)).sqrt();
                Some(vec![lambda, rapidity(omega) - rapidity(eta)])
            }
            GroupId::Na | GroupId::FullLorentz => {
                let (vo, lo, t_o) = lorentz::na_coordinates(omega)?;
                let (ve, le, t_e) = lorentz::na_coordinates(eta)?;
                if (omega[0] < omega[2]) != (eta[0] < eta[2]) {
                    return None;
                }
                let go = nilpotent3(vo[0]) * boost3(t_o) * lo;
                let ge = nilpotent3(ve[0]) * boost3(t_e) * le;
                // π(g)ᵗ = g⁻¹ sends ω to η when g η = ω
                let g = go * ge.try_inverse()?;
                let mut out = vec![0.0; self.param_dim()];
                let na = HaarChart { group_id: GroupId::Na, ..self.clone() };
                if !na.params_of_embedded(&g, &mut out[..3]) {
                    return None;
                }
                Some(out)
            }
        }
    }

    /// Grows every non-compact axis by `ceil(k/4)` cells on each side, keeping
    /// the cell size and centre fixed.
    pub fn expanded(&self) -> Result<HaarChart> {
        let mut next = self.clone();
        for axis in 0..self.param_dim() {
            if self.is_compact_axis(axis) {
                continue;
            }
            let k = self.samples[axis];
            let extra = k.div_ceil(4);
            let [lo, hi] = self.bounds[axis];
            next.samples[axis] = k + 2 * extra;
            next.bounds[axis] = match self.scale[axis] {
                AxisScale::Uniform => {
                    let h = (hi - lo) / k as f64;
                    [lo - extra as f64 * h, hi + extra as f64 * h]
                }
                AxisScale::Log => {
                    let h = (hi.ln() - lo.ln()) / k as f64;
                    [lo * (-(extra as f64) * h).exp(), hi * (extra as f64 * h).exp()]
                }
            };
        }
        next.validated()
    }
}

/// Rapidity of a non-null vector in `R^{1,1}`.
fn rapidity(x: &[f64]) -> f64 {
    if x[0].abs() > x[1].abs() {
        (x[1] / x[0]).atanh()
    } else {
        (x[0] / x[1]).atanh()
    }
}

pub(crate) fn nilpotent3(v: f64) -> Matrix3<f64> {
    let h = 0.5 * v * v;
    Matrix3::new(1.0 + h, v, -h, v, 1.0, -v, h, v, 1.0 - h)
}

pub(crate) fn boost3(t: f64) -> Matrix3<f64> {
    let (s, c) = (t.sinh(), t.cosh());
    Matrix3::new(c, 0.0, s, 0.0, 1.0, 0.0, s, 0.0, c)
}

pub(crate) fn rotation3(theta: f64) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(1.0, 0.0, 0.0, 0.0, c, -s, 0.0, s, c)
}

/// Relative left-invariance defect `|∫ f(g₀g) dμ - ∫ f dμ| / |∫ f dμ|`.
///
/// `g0` is composed with each node by matrix multiplication and mapped back to
/// parameters, so the check does not rely on any closed-form group law.
/// Fails when either integrand is non-negligible on the boundary cells.
pub fn haar_invariance_defect(
    chart: &HaarChart,
    g0: &GroupElement,
    testfn: &(dyn Fn(&[f64]) -> f64 + Sync),
) -> Result<f64> {
    let mut g0m = Matrix3::identity();
    let d = g0.dim();
    if d > 3 {
        return Err(Error::DimensionMismatch { expected: 3, actual: d });
    }
    for i in 0..d {
        for j in 0..d {
            g0m[(i, j)] = g0.matrix()[(i, j)];
        }
    }
    let mut probe = vec![0.0; chart.param_dim()];
    if !chart.params_of_embedded(&g0m, &mut probe) {
        return Err(Error::ChartDomain("g0 is not an element of the chart's group".into()));
    }

    let axes: Vec<AxisNodes> = (0..chart.param_dim()).map(|a| chart.axis_nodes(a)).collect();
    let dims = chart.samples.clone();
    let inner: usize = dims[1..].iter().product();
    let signs: &[f64] = if chart.full_line { &[1.0, -1.0] } else { &[1.0] };

    #[derive(Default, Clone, Copy)]
    struct Acc {
        plain: f64,
        moved: f64,
        peak: f64,
        edge: f64,
        missing: bool,
    }

    let rows: Vec<Acc> = (0..dims[0])
        .into_par_iter()
        .map(|i0| {
            let mut acc = Acc::default();
            let mut idx = [0usize; 4];
            let mut p = [0.0f64; 4];
            let mut q = [0.0f64; 4];
            let np = dims.len();
            idx[0] = i0;
            for rest in 0..inner {
                let mut r = rest;
                for a in (1..np).rev() {
                    idx[a] = r % dims[a];
                    r /= dims[a];
                }
                let mut volume = 1.0;
                for a in 0..np {
                    p[a] = axes[a].values[idx[a]];
                    volume *= axes[a].volumes[idx[a]];
                }
                let on_edge = (0..np).any(|a| !chart.is_compact_axis(a) && (idx[a] == 0 || idx[a] + 1 == dims[a]));
                for &sign in signs {
                    p[0] = sign * axes[0].values[idx[0]];
                    let w = chart.density(&p[..np]) * volume;
                    let f0 = testfn(&p[..np]);
                    let m = g0m * chart.embedded_matrix(&p[..np]);
                    let f1 = if chart.params_of_embedded(&m, &mut q[..np]) {
                        testfn(&q[..np])
                    } else {
                        acc.missing = true;
                        0.0
                    };
                    acc.plain += w * f0;
                    acc.moved += w * f1;
                    let local = f0.abs().max(f1.abs());
                    acc.peak = acc.peak.max(local);
                    if on_edge {
                        acc.edge = acc.edge.max(local);
                    }
                }
            }
            acc
        })
        .collect();

    let mut total = Acc::default();
    for r in &rows {
        total.plain += r.plain;
        total.moved += r.moved;
        total.peak = total.peak.max(r.peak);
        total.edge = total.edge.max(r.edge);
        total.missing |= r.missing;
    }
    if total.peak == 0.0 || total.plain == 0.0 {
        return Err(Error::SupportEscapesChart("test function vanishes on every node".into()));
    }
    if total.edge > 1e-9 * total.peak {
        return Err(Error::SupportEscapesChart(format!(
            "boundary/peak ratio {:.3e} for f or f∘g0",
            total.edge / total.peak
        )));
    }
    Ok(((total.moved - total.plain) / total.plain).abs())
}

/// Smooth compactly supported test bump `(1 - r²)^6` in chart coordinates
/// (log coordinates on log axes), centred at `center` with per-axis radii.
pub fn chart_test_bump(chart: &HaarChart, center: Vec<f64>, radii: Vec<f64>) -> impl Fn(&[f64]) -> f64 + Sync {
    let log: Vec<bool> = chart.scale.iter().map(|s| *s == AxisScale::Log).collect();
    move |p: &[f64]| {
        let mut r2 = 0.0;
        for a in 0..p.len() {
            let x = if log[a] { p[a].abs().ln() } else { p[a] };
            let z = (x - center[a]) / radii[a];
            r2 += z * z;
            if r2 >= 1.0 {
                return 0.0;
            }
        }
        (1.0 - r2).powi(6)
    }
}

/// Evaluates `M(h)ω` for the frequency matrix of a Lorentz-family node without allocation.
pub(crate) fn lorentz_inverse3(chart: &HaarChart, p: &[f64]) -> Matrix3<f64> {
    debug_assert!(chart.group_id.is_lorentz());
    match chart.group_id {
        GroupId::RplusBoost => {
            let (s, c) = (p[1].sinh(), p[1].cosh());
            Matrix3::new(c, -s, 0.0, -s, c, 0.0, 0.0, 0.0, 1.0) / p[0]
        }
        GroupId::Na => boost3(-p[2]) * nilpotent3(-p[0]) / p[1],
        _ => rotation3(-p[3]) * boost3(-p[2]) * nilpotent3(-p[0]) / p[1],
    }
}

pub(crate) fn apply3(m: &Matrix3<f64>, x: &[f64]) -> Vector3<f64> {
    let v = if x.len() == 2 { Vector3::new(x[0], x[1], 0.0) } else { Vector3::new(x[0], x[1], x[2]) };
    m * v
}
