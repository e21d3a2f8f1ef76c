//! The continuous wavelet transform of the ax+b group on the line.
//!
//! `ρ(a,b) f(x) = a^{-1/2} f((x - b)/a)`, so `ρ̂(a,b) f̂(ω) = √a e^{-ibω} f̂(aω)`.
//! The transform runs on a one-dimensional dilation chart; its Haar weights
//! times `Δ_π(a) Δx / 2π` reproduce `da db / (2π a²)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atoms::{WaveletForm, WaveletSpec};
use crate::coefficients::CoefficientField;
use crate::engine::{gcwt_parseval, gcwt_reconstruct, gcwt_transform, quasi_regular_apply, SemidirectElement};
use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier, GridSignal};
use crate::groups::{GroupElement, GroupId, HaarChart, OrbitLabel};
use crate::quadrature::integrate;

/// `f = f₊ + f₋` with `f̂₊` on `ω > 0` and `f̂₋` on `ω < 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct HardyPair {
    pub plus: GridSignal,
    pub minus: GridSignal,
}

/// Hardy-space split.
///
/// The `ω = 0` and Nyquist nodes belong to neither open half-line. They are
/// shared with the complex weights `(1 ± i)/2`, which sum to one and carry
/// half the energy each, so `f₊ + f₋ = f` and `‖f₊‖² + ‖f₋‖² = ‖f‖²` both
/// hold exactly and real signals split into equal halves.
pub fn hardy_project(f: &GridSignal) -> Result<HardyPair> {
    if f.grid().n_dims() != 1 {
        return Err(Error::UnsupportedDimension { dim: f.grid().n_dims(), reason: "Hardy split is one-dimensional" });
    }
    let fhat = fourier(f);
    let half = f.grid().samples()[0] / 2;
    let split = |positive: bool| -> GridSignal {
        let shared = Complex64::new(0.5, if positive { 0.5 } else { -0.5 });
        let mut h = fhat.clone();
        for (j, v) in h.values_mut().iter_mut().enumerate() {
            *v *= if j == half || j == 0 {
                shared
            } else if (j > half) == positive {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
        }
        inverse_fourier(&h)
    };
    Ok(HardyPair { plus: split(true), minus: split(false) })
}

/// A 1-D wavelet with `ψ̂` compactly supported in `(0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxbWavelet {
    pub spec: WaveletSpec,
    pub c_psi_sq: Option<f64>,
}

impl AxbWavelet {
    pub fn new(spec: WaveletSpec) -> Result<Self> {
        if spec.n_dims != 1 || spec.orbit != (OrbitLabel::HalfLine { positive: true }) {
            return Err(Error::InvalidParameter {
                name: "spec",
                reason: "ax+b wavelets are 1-D with support in (0, ∞)".into(),
            });
        }
        Ok(Self { spec, c_psi_sq: None })
    }

    /// Smooth bump centred at `center` with radius `radius`.
    pub fn bump(center: f64, radius: f64) -> Result<Self> {
        Self::new(WaveletSpec::bump(OrbitLabel::HalfLine { positive: true }, vec![center], radius)?)
    }

    /// Computes and caches `C_ψ²`.
    pub fn with_admissibility(mut self) -> Result<Self> {
        self.c_psi_sq = Some(axb_admissibility(&self.spec)?);
        Ok(self)
    }

    pub fn c_psi_sq(&self) -> Result<f64> {
        match self.c_psi_sq {
            Some(c) => Ok(c),
            None => axb_admissibility(&self.spec),
        }
    }
}

/// `C_ψ² = ∫₀^∞ |ψ̂(ω)|² / ω dω` by adaptive Gauss–Kronrod quadrature over the support.
pub fn axb_admissibility(psi: &WaveletSpec) -> Result<f64> {
    if psi.n_dims != 1 {
        return Err(Error::UnsupportedDimension { dim: psi.n_dims, reason: "ax+b admissibility is 1-D" });
    }
    let (lo, hi) = (psi.center[0] - psi.radius, psi.center[0] + psi.radius);
    if lo <= 0.0 {
        return Err(Error::NotAdmissible(format!(
            "support [{lo}, {hi}] reaches ω = 0, where |ψ̂|²/ω is not integrable"
        )));
    }
    let r = integrate(
        |w| {
            let v = psi.value(&[w]);
            v * v / w
        },
        lo,
        hi,
        1e-13,
        0.0,
    )?;
    Ok(r.value)
}

/// A log-uniform scale chart for the ax+b transform.
pub fn axb_chart(a_min: f64, a_max: f64, samples: usize) -> Result<HaarChart> {
    HaarChart::dilation(1, [a_min, a_max], samples)
}

fn check_axb_chart(chart: &HaarChart) -> Result<()> {
    if chart.group_id != GroupId::Dilation || chart.space_dim != 1 {
        return Err(Error::ChartDomain("ax+b transforms use a 1-D dilation chart".into()));
    }
    Ok(())
}

/// `W_ψ f(a, b) = (f | ρ(a,b) ψ)` on the scale chart × the signal's grid.
pub fn axb_transform(f: &GridSignal, psi: &AxbWavelet, scales: &HaarChart) -> Result<CoefficientField> {
    check_axb_chart(scales)?;
    if f.grid().n_dims() != 1 {
        return Err(Error::UnsupportedDimension { dim: f.grid().n_dims(), reason: "ax+b transforms are 1-D" });
    }
    gcwt_transform(f, &psi.spec, scales)
}

pub fn axb_parseval_ratio(coeffs: &CoefficientField, f: &GridSignal, psi: &AxbWavelet) -> Result<f64> {
    gcwt_parseval(coeffs, f, psi.c_psi_sq()?)
}

pub fn axb_reconstruct(coeffs: &CoefficientField, psi: &AxbWavelet, c_psi_sq: f64) -> Result<GridSignal> {
    if !(c_psi_sq > 0.0) {
        return Err(Error::InvalidParameter { name: "c_psi_sq", reason: format!("{c_psi_sq} must be positive") });
    }
    check_axb_chart(coeffs.chart())?;
    gcwt_reconstruct(coeffs, &psi.spec, c_psi_sq)
}

/// `ρ(a, b) f` for a sampled signal (spectral interpolation for `a ≠ 1`).
pub fn axb_apply(a: f64, b: f64, f: &GridSignal) -> Result<GridSignal> {
    let h = GroupElement::from_rows(1, &[a])?;
    quasi_regular_apply(&SemidirectElement::new(h, vec![b])?, f)
}

/// `W_ψ ψ(s, β) = √s ∫ ψ̂(ω) ψ̂(sω) e^{iβω} dω` for a real `ψ̂`.
struct SelfKernel {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl SelfKernel {
    fn new(psi: &WaveletSpec, s: f64, count: usize) -> Option<Self> {
        let (lo, hi) = (psi.center[0] - psi.radius, psi.center[0] + psi.radius);
        let (a, b) = (lo.max(lo / s), hi.min(hi / s));
        if a >= b {
            return None;
        }
        let h = (b - a) / count as f64;
        let nodes: Vec<f64> = (0..count).map(|j| a + (j as f64 + 0.5) * h).collect();
        let weights = nodes.iter().map(|&w| s.sqrt() * psi.value(&[w]) * psi.value(&[s * w]) * h).collect();
        Some(Self { nodes, weights })
    }

    fn eval(&self, beta: f64) -> Complex64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&w, &g)| Complex64::from_polar(g, beta * w))
            .sum()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelSample {
    pub scale: f64,
    pub shift: f64,
    pub direct: [f64; 2],
    pub reproduced: [f64; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KernelDefectReport {
    /// `max_y |f(y) - C⁻² Σ_x w(x) f(x) conj(W_ψψ(y⁻¹x))| / max |f|`.
    pub defect: f64,
    pub samples: Vec<KernelSample>,
}

/// Reproducing-kernel check on `f = W_ψ u`.
///
/// Each sample `y = (a, b)` pairs a scale with a translation index of `u`'s
/// grid. `f(y)` is computed directly and compared with the kernel sum over
/// the whole coefficient grid of `scales`, where `y⁻¹x = (a'/a, (b' - b)/a)`.
pub fn axb_kernel_defect(
    psi: &AxbWavelet,
    u: &GridSignal,
    scales: &HaarChart,
    samples: &[(f64, usize)],
) -> Result<KernelDefectReport> {
    if psi.spec.form != WaveletForm::Bump {
        return Err(Error::InvalidParameter { name: "psi", reason: "kernel check needs a smooth wavelet".into() });
    }
    let c = psi.c_psi_sq()?;
    let field = axb_transform(u, psi, scales)?;
    let slices: Vec<GridSignal> = (0..field.node_count()).map(|i| field.spatial_slice(i)).collect();
    let peak = slices.iter().flat_map(|s| s.values().iter().map(|v| v.norm())).fold(0.0, f64::max);
    if peak == 0.0 {
        return Err(Error::InvalidParameter { name: "u", reason: "transform vanishes identically".into() });
    }
    let grid = u.grid();
    let width = 2.0 * psi.spec.radius;
    let mut out = Vec::with_capacity(samples.len());
    let mut worst: f64 = 0.0;
    for &(a, translation) in samples {
        if !(a > 0.0) || translation >= grid.len() {
            return Err(Error::InvalidParameter { name: "samples", reason: format!("({a}, {translation}) off grid") });
        }
        let b = grid.coordinate(0, translation);
        let mut rhs = Complex64::new(0.0, 0.0);
        for (i, slice) in slices.iter().enumerate() {
            let s = field.params(i)[0] / a;
            let Some(kernel) = SelfKernel::new(&psi.spec, s, 256) else { continue };
            let w = field.measure_weight(i);
            for (k, fx) in slice.values().iter().enumerate() {
                if fx.norm() <= 1e-14 * peak {
                    continue;
                }
                let beta = (grid.coordinate(0, k) - b) / a;
                // resolve the oscillation of e^{iβω} across the overlap
                let needed = (beta.abs() * width / PI * 8.0).ceil() as usize;
                let value = if needed > kernel.nodes.len() {
                    SelfKernel::new(&psi.spec, s, needed).map(|k| k.eval(beta)).unwrap_or_default()
                } else {
                    kernel.eval(beta)
                };
                rhs += w * fx * value.conj();
            }
        }
        rhs /= c;
        let single = axb_chart(a * (-1e-9f64).exp(), a * 1e-9f64.exp(), 1)?;
        let direct = axb_transform(u, psi, &single)?.spatial_slice(0).values()[translation];
        worst = worst.max((direct - rhs).norm() / peak);
        out.push(KernelSample { scale: a, shift: b, direct: [direct.re, direct.im], reproduced: [rhs.re, rhs.im] });
    }
    Ok(KernelDefectReport { defect: worst, samples: out })
}

/// `(ψ | ρ(s, β) ψ)` evaluated by quadrature, exposed for kernel diagnostics.
pub fn axb_self_coefficient(psi: &WaveletSpec, s: f64, beta: f64) -> Complex64 {
    let width = 2.0 * psi.radius;
    let count = ((beta.abs() * width / PI * 8.0).ceil() as usize).max(256);
    SelfKernel::new(psi, s, count).map(|k| k.eval(beta)).unwrap_or_default()
}
