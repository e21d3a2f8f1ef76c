//! Closed-form Fourier-domain functions: wavelet bumps, Gaussians and their
//! images under the quasi-regular representation.

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::engine::SemidirectElement;
use crate::error::{Error, Result};
use crate::fourier::{inverse_fourier, GridSignal, SpatialGrid, SpectralSignal};
use crate::groups::OrbitLabel;

/// A function known in closed form on the frequency side.
pub trait SpectralAtom: Sync {
    fn n_dims(&self) -> usize;

    fn eval(&self, omega: &[f64]) -> Complex64;

    /// Euclidean balls `(center, radius)` whose union contains the support,
    /// or `None` when the support is not compact.
    fn support(&self) -> Option<Vec<(Vec<f64>, f64)>>;

    /// Samples on the dual grid of `grid`.
    fn spectrum(&self, grid: &SpatialGrid) -> SpectralSignal {
        SpectralSignal::from_fn(grid.clone(), |w| self.eval(w))
    }

    /// The band-limited spatial signal with these spectral samples.
    fn sample(&self, grid: &SpatialGrid) -> GridSignal {
        inverse_fourier(&self.spectrum(grid))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WaveletForm {
    /// `A·exp(1 - 1/(1 - |ω-c|²/r²))` on the open ball, zero outside.
    Bump,
    /// `A` on the closed ball, zero outside.
    Indicator,
}

/// A wavelet given by its Fourier transform, supported in one orbit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WaveletSpec {
    pub n_dims: usize,
    pub orbit: OrbitLabel,
    pub form: WaveletForm,
    pub center: Vec<f64>,
    pub radius: f64,
    #[serde(default = "one")]
    pub amplitude: f64,
}

fn one() -> f64 {
    1.0
}

impl WaveletSpec {
    pub fn bump(orbit: OrbitLabel, center: Vec<f64>, radius: f64) -> Result<Self> {
        Self { n_dims: center.len(), orbit, form: WaveletForm::Bump, center, radius, amplitude: 1.0 }.validated()
    }

    pub fn indicator(orbit: OrbitLabel, center: Vec<f64>, radius: f64) -> Result<Self> {
        Self { n_dims: center.len(), orbit, form: WaveletForm::Indicator, center, radius, amplitude: 1.0 }.validated()
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// Checks that the ball of radius `1.05 r` sits inside the orbit.
    pub fn validated(self) -> Result<Self> {
        if self.center.len() != self.n_dims || self.n_dims == 0 {
            return Err(Error::DimensionMismatch { expected: self.n_dims, actual: self.center.len() });
        }
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return Err(Error::InvalidParameter { name: "radius", reason: format!("{} must be positive", self.radius) });
        }
        if !self.amplitude.is_finite() {
            return Err(Error::InvalidParameter { name: "amplitude", reason: "must be finite".into() });
        }
        if !self.orbit.dims_ok(self.n_dims) {
            return Err(Error::InvalidParameter {
                name: "orbit",
                reason: format!("{:?} does not live in dimension {}", self.orbit, self.n_dims),
            });
        }
        let mut probes = vec![self.center.clone()];
        for dir in sphere_directions(self.n_dims) {
            probes.push(self.center.iter().zip(&dir).map(|(c, d)| c + 1.05 * self.radius * d).collect());
        }
        if let Some(bad) = probes.iter().find(|p| !self.orbit.contains(p)) {
            return Err(Error::OutsideOrbit(format!("wavelet ball reaches {bad:?}, outside {:?}", self.orbit)));
        }
        Ok(self)
    }

    pub fn profile(&self, dist_sq: f64) -> f64 {
        let z = dist_sq / (self.radius * self.radius);
        match self.form {
            WaveletForm::Bump if z < 1.0 => self.amplitude * (1.0 - 1.0 / (1.0 - z)).exp(),
            WaveletForm::Indicator if z <= 1.0 => self.amplitude,
            _ => 0.0,
        }
    }

    /// `ψ̂(ω)` as a real number.
    #[inline]
    pub fn value(&self, omega: &[f64]) -> f64 {
        let d2: f64 = omega.iter().zip(&self.center).map(|(w, c)| (w - c) * (w - c)).sum();
        self.profile(d2)
    }
}

impl SpectralAtom for WaveletSpec {
    fn n_dims(&self) -> usize {
        self.n_dims
    }

    fn eval(&self, omega: &[f64]) -> Complex64 {
        Complex64::new(self.value(omega), 0.0)
    }

    fn support(&self) -> Option<Vec<(Vec<f64>, f64)>> {
        Some(vec![(self.center.clone(), self.radius)])
    }
}

/// Unit directions used to probe sphere boundaries: the whole circle in 2-D,
/// a Fibonacci lattice in 3-D, coordinate and diagonal directions otherwise.
pub fn sphere_directions(n: usize) -> Vec<Vec<f64>> {
    match n {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => (0..72).map(|k| {
            let a = 2.0 * PI * k as f64 / 72.0;
            vec![a.cos(), a.sin()]
        }).collect(),
        3 => {
            let m = 400;
            let golden = PI * (3.0 - 5f64.sqrt());
            (0..m)
                .map(|k| {
                    let z = 1.0 - 2.0 * (k as f64 + 0.5) / m as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden * k as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => {
            let mut out = Vec::new();
            for i in 0..n {
                for s in [1.0, -1.0] {
                    let mut v = vec![0.0; n];
                    v[i] = s;
                    out.push(v);
                }
                for j in i + 1..n {
                    for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                        let mut v = vec![0.0; n];
                        v[i] = si / 2f64.sqrt();
                        v[j] = sj / 2f64.sqrt();
                        out.push(v);
                    }
                }
            }
            out
        }
    }
}

/// `A·exp(-|ω-c|²/(2s²))`, whose inverse transform is known in closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct Gaussian {
    pub center: Vec<f64>,
    pub width: f64,
    pub amplitude: f64,
}

impl Gaussian {
    /// `A sⁿ e^{i x·c} e^{-s²|x|²/2}`.
    pub fn spatial(&self, x: &[f64]) -> Complex64 {
        let s = self.width;
        let phase: f64 = x.iter().zip(&self.center).map(|(a, b)| a * b).sum();
        let r2: f64 = x.iter().map(|a| a * a).sum();
        Complex64::from_polar(self.amplitude * s.powi(x.len() as i32) * (-s * s * r2 / 2.0).exp(), phase)
    }
}

impl SpectralAtom for Gaussian {
    fn n_dims(&self) -> usize {
        self.center.len()
    }

    fn eval(&self, omega: &[f64]) -> Complex64 {
        let d2: f64 = omega.iter().zip(&self.center).map(|(w, c)| (w - c) * (w - c)).sum();
        Complex64::new(self.amplitude * (-d2 / (2.0 * self.width * self.width)).exp(), 0.0)
    }

    fn support(&self) -> Option<Vec<(Vec<f64>, f64)>> {
        None
    }
}

/// `ρ̂(h,x) f̂(ω) = Δ_π(h)^{-1/2} e^{-i x·ω} f̂(π(h)ᵗω)` for a closed-form `f̂`.
#[derive(Clone, Debug)]
pub struct TransformedAtom<A> {
    pub base: A,
    pub element: SemidirectElement,
    freq_matrix: DMatrix<f64>,
}

impl<A: SpectralAtom> TransformedAtom<A> {
    pub fn new(base: A, element: SemidirectElement) -> Result<Self> {
        if element.dim() != base.n_dims() {
            return Err(Error::DimensionMismatch { expected: base.n_dims(), actual: element.dim() });
        }
        let freq_matrix = element.h.matrix().transpose();
        Ok(Self { base, element, freq_matrix })
    }
}

impl<A: SpectralAtom> SpectralAtom for TransformedAtom<A> {
    fn n_dims(&self) -> usize {
        self.base.n_dims()
    }

    fn eval(&self, omega: &[f64]) -> Complex64 {
        let w = &self.freq_matrix * DVector::from_column_slice(omega);
        let phase: f64 = self.element.x.iter().zip(omega).map(|(a, b)| a * b).sum();
        let scale = self.element.h.delta_pi().powf(-0.5);
        self.base.eval(w.as_slice()) * Complex64::from_polar(scale, -phase)
    }

    fn support(&self) -> Option<Vec<(Vec<f64>, f64)>> {
        let inv = self.freq_matrix.clone().try_inverse()?;
        let stretch = inv.clone().svd(false, false).singular_values.max();
        self.base.support().map(|balls| {
            balls
                .into_iter()
                .map(|(c, r)| ((&inv * DVector::from_vec(c)).as_slice().to_vec(), r * stretch))
                .collect()
        })
    }
}

/// Pointwise sum of atoms.
pub struct AtomSum {
    pub parts: Vec<Box<dyn SpectralAtom>>,
}

impl AtomSum {
    pub fn new(parts: Vec<Box<dyn SpectralAtom>>) -> Result<Self> {
        let n = parts.first().map(|p| p.n_dims()).ok_or(Error::InvalidParameter {
            name: "parts",
            reason: "need at least one atom".into(),
        })?;
        if let Some(bad) = parts.iter().find(|p| p.n_dims() != n) {
            return Err(Error::DimensionMismatch { expected: n, actual: bad.n_dims() });
        }
        Ok(Self { parts })
    }
}

impl SpectralAtom for AtomSum {
    fn n_dims(&self) -> usize {
        self.parts[0].n_dims()
    }

    fn eval(&self, omega: &[f64]) -> Complex64 {
        self.parts.iter().map(|p| p.eval(omega)).sum()
    }

    fn support(&self) -> Option<Vec<(Vec<f64>, f64)>> {
        let mut all = Vec::new();
        for p in &self.parts {
            all.extend(p.support()?);
        }
        Some(all)
    }
}
