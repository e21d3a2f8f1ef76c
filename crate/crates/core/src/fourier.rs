//! Sampled signals on periodic boxes in R^n and the unitary Fourier transform
//!
//! `f̂(ω) = (2π)^{-n/2} ∫ f(x) e^{-i x·ω} dx`.
//!
//! Space is discretized as the box `origin + [-L, L)^n` with `N` nodes per
//! axis (`x_k = origin - L + k Δx`, `Δx = 2L/N`). The dual frequency grid is
//! `ω_m = π m / L` for `m ∈ [-N/2, N/2)`, stored centered (index `j` holds
//! `m = j - N/2`). Inner products carry the quadrature weights `Δx^n` in space
//! and `(π/L)^n` in frequency, which makes the discrete Plancherel identity
//! exact.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Uniform periodic grid on `origin + [-L, L)` per axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpatialGrid {
    n_dims: usize,
    #[serde(rename = "L")]
    extent: Vec<f64>,
    #[serde(rename = "N")]
    samples: Vec<usize>,
    origin: Vec<f64>,
}

impl SpatialGrid {
    pub fn new(extent: Vec<f64>, samples: Vec<usize>, origin: Vec<f64>) -> Result<Self> {
        let n = extent.len();
        if n == 0 {
            return Err(Error::InvalidGrid("grid needs at least one axis".into()));
        }
        if samples.len() != n || origin.len() != n {
            return Err(Error::InvalidGrid(format!(
                "axis count mismatch: {} extents, {} sample counts, {} origins",
                n,
                samples.len(),
                origin.len()
            )));
        }
        for (axis, (&l, &s)) in extent.iter().zip(&samples).enumerate() {
            if !(l.is_finite() && l > 0.0) {
                return Err(Error::InvalidGrid(format!("axis {axis}: half-width {l} must be positive")));
            }
            if s < 4 || s % 2 != 0 {
                return Err(Error::InvalidGrid(format!(
                    "axis {axis}: sample count {s} must be even and at least 4"
                )));
            }
        }
        if origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(Self { n_dims: n, extent, samples, origin })
    }

    /// Centered hypercube `[-L, L)^n` with `N` nodes per axis.
    pub fn cube(n_dims: usize, half_width: f64, samples: usize) -> Result<Self> {
        Self::new(vec![half_width; n_dims], vec![samples; n_dims], vec![0.0; n_dims])
    }

    /// Re-validates a grid that came in through deserialization.
    pub fn validated(self) -> Result<Self> {
        if self.n_dims != self.extent.len() {
            return Err(Error::InvalidGrid(format!(
                "n_dims = {} but {} extents given",
                self.n_dims,
                self.extent.len()
            )));
        }
        Self::new(self.extent, self.samples, self.origin)
    }

    pub fn n_dims(&self) -> usize {
        self.n_dims
    }

    pub fn extent(&self) -> &[f64] {
        &self.extent
    }

    pub fn samples(&self) -> &[usize] {
        &self.samples
    }

    pub fn origin(&self) -> &[f64] {
        &self.origin
    }

    /// Total node count.
    pub fn len(&self) -> usize {
        self.samples.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.extent[axis] / self.samples[axis] as f64
    }

    pub fn frequency_spacing(&self, axis: usize) -> f64 {
        PI / self.extent[axis]
    }

    /// Lebesgue weight of one spatial node, `Δx^n`.
    pub fn cell_volume(&self) -> f64 {
        (0..self.n_dims).map(|a| self.spacing(a)).product()
    }

    /// Lebesgue weight of one frequency node, `(π/L)^n`.
    pub fn frequency_cell_volume(&self) -> f64 {
        (0..self.n_dims).map(|a| self.frequency_spacing(a)).product()
    }

    /// Row-major strides (last axis fastest).
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.n_dims];
        for a in (0..self.n_dims.saturating_sub(1)).rev() {
            strides[a] = strides[a + 1] * self.samples[a + 1];
        }
        strides
    }

    /// Multi-index of a flat node index.
    pub fn unravel(&self, mut index: usize, out: &mut [usize]) {
        for a in (0..self.n_dims).rev() {
            out[a] = index % self.samples[a];
            index /= self.samples[a];
        }
    }

    pub fn ravel(&self, multi: &[usize]) -> usize {
        multi
            .iter()
            .zip(&self.samples)
            .fold(0, |acc, (&i, &n)| acc * n + i)
    }

    pub fn coordinate(&self, axis: usize, k: usize) -> f64 {
        self.origin[axis] - self.extent[axis] + k as f64 * self.spacing(axis)
    }

    pub fn frequency(&self, axis: usize, j: usize) -> f64 {
        let m = j as f64 - (self.samples[axis] / 2) as f64;
        m * self.frequency_spacing(axis)
    }

    /// Spatial coordinates of a flat node index.
    pub fn node(&self, index: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_dims];
        self.node_into(index, &mut out);
        out
    }

    pub fn node_into(&self, mut index: usize, out: &mut [f64]) {
        for a in (0..self.n_dims).rev() {
            let k = index % self.samples[a];
            index /= self.samples[a];
            out[a] = self.coordinate(a, k);
        }
    }

    /// Frequency coordinates of a flat (centered) frequency index.
    pub fn frequency_node(&self, index: usize) -> Vec<f64> {
        let mut out = vec![0.0; self.n_dims];
        self.frequency_node_into(index, &mut out);
        out
    }

    pub fn frequency_node_into(&self, mut index: usize, out: &mut [f64]) {
        for a in (0..self.n_dims).rev() {
            let j = index % self.samples[a];
            index /= self.samples[a];
            out[a] = self.frequency(a, j);
        }
    }

    fn check_same(&self, other: &SpatialGrid) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

/// Complex samples of `f` on the nodes of a [`SpatialGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct GridSignal {
    grid: SpatialGrid,
    values: Vec<Complex64>,
}

/// Complex samples of `f̂` on the dual frequency grid of a [`SpatialGrid`].
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralSignal {
    grid: SpatialGrid,
    values: Vec<Complex64>,
}

/// Common view over spatial and spectral samples.
pub trait Sampled {
    fn grid(&self) -> &SpatialGrid;
    fn values(&self) -> &[Complex64];
    /// Quadrature weight attached to every node.
    fn node_weight(&self) -> f64;

    fn norm_sq(&self) -> f64 {
        self.values().iter().map(|v| v.norm_sqr()).sum::<f64>() * self.node_weight()
    }

    fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }
}

macro_rules! sampled_common {
    ($ty:ident, $weight:ident, $coords:ident) => {
        impl $ty {
            pub fn new(grid: SpatialGrid, values: Vec<Complex64>) -> Result<Self> {
                if values.len() != grid.len() {
                    return Err(Error::DimensionMismatch { expected: grid.len(), actual: values.len() });
                }
                if values.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
                    return Err(Error::InvalidParameter {
                        name: "values",
                        reason: "samples must be finite".into(),
                    });
                }
                Ok(Self { grid, values })
            }

            pub fn zeros(grid: SpatialGrid) -> Self {
                let values = vec![Complex64::new(0.0, 0.0); grid.len()];
                Self { grid, values }
            }

            /// Samples `f` at every node.
            pub fn from_fn(grid: SpatialGrid, f: impl Fn(&[f64]) -> Complex64) -> Self {
                let mut coords = vec![0.0; grid.n_dims()];
                let values = (0..grid.len())
                    .map(|i| {
                        grid.$coords(i, &mut coords);
                        f(&coords)
                    })
                    .collect();
                Self { grid, values }
            }

            pub fn grid(&self) -> &SpatialGrid {
                &self.grid
            }

            pub fn values(&self) -> &[Complex64] {
                &self.values
            }

            pub fn values_mut(&mut self) -> &mut [Complex64] {
                &mut self.values
            }

            pub fn into_values(self) -> Vec<Complex64> {
                self.values
            }

            pub fn scaled(&self, c: Complex64) -> Self {
                Self { grid: self.grid.clone(), values: self.values.iter().map(|v| v * c).collect() }
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.grid.check_same(&other.grid)?;
                let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
                Ok(Self { grid: self.grid.clone(), values })
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.grid.check_same(&other.grid)?;
                let values = self.values.iter().zip(&other.values).map(|(a, b)| a - b).collect();
                Ok(Self { grid: self.grid.clone(), values })
            }

            /// `‖self - reference‖ / ‖reference‖`.
            pub fn relative_error(&self, reference: &Self) -> Result<f64> {
                let diff = self.sub(reference)?;
                Ok(diff.norm() / reference.norm())
            }

            pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
                self.grid.check_same(&other.grid)?;
                Ok(self
                    .values
                    .iter()
                    .zip(&other.values)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max))
            }
        }

        impl Sampled for $ty {
            fn grid(&self) -> &SpatialGrid {
                &self.grid
            }
            fn values(&self) -> &[Complex64] {
                &self.values
            }
            fn node_weight(&self) -> f64 {
                self.grid.$weight()
            }
        }
    };
}

sampled_common!(GridSignal, cell_volume, node_into);
sampled_common!(SpectralSignal, frequency_cell_volume, frequency_node_into);

/// Discrete `(f | g) = Σ f conj(g) w` with the grid's measure weight.
pub fn inner_product<S: Sampled>(f: &S, g: &S) -> Result<Complex64> {
    f.grid().check_same(g.grid())?;
    let sum: Complex64 = f.values().iter().zip(g.values()).map(|(a, b)| a * b.conj()).sum();
    Ok(sum * f.node_weight())
}

/// Unitary Fourier transform on the periodic grid.
pub fn fourier(f: &GridSignal) -> SpectralSignal {
    let grid = f.grid.clone();
    let mut data = f.values.clone();
    let mut planner = FftPlanner::new();
    for axis in 0..grid.n_dims() {
        let n = grid.samples[axis];
        let fft = planner.plan_fft(n, FftDirection::Forward);
        let phases = axis_phases(&grid, axis, -1.0);
        for_each_line(&mut data, &grid, axis, |line, scratch| {
            fft.process(line);
            // centered reorder: output j holds m = j - N/2, i.e. FFT bin (j + N/2) mod N
            for (j, s) in scratch.iter_mut().enumerate() {
                *s = line[(j + n / 2) % n] * phases[j];
            }
            line.copy_from_slice(scratch);
        });
    }
    let scale = grid.cell_volume() / (2.0 * PI).powf(grid.n_dims() as f64 / 2.0);
    for v in &mut data {
        *v *= scale;
    }
    SpectralSignal { grid, values: data }
}

/// Exact discrete inverse of [`fourier`].
pub fn inverse_fourier(spectrum: &SpectralSignal) -> GridSignal {
    let grid = spectrum.grid.clone();
    let mut data = spectrum.values.clone();
    let mut planner = FftPlanner::new();
    for axis in 0..grid.n_dims() {
        let n = grid.samples[axis];
        let fft = planner.plan_fft(n, FftDirection::Inverse);
        let phases = axis_phases(&grid, axis, 1.0);
        for_each_line(&mut data, &grid, axis, |line, scratch| {
            for (j, v) in line.iter().enumerate() {
                scratch[(j + n / 2) % n] = v * phases[j];
            }
            line.copy_from_slice(scratch);
            fft.process(line);
        });
    }
    let scale = grid.frequency_cell_volume() / (2.0 * PI).powf(grid.n_dims() as f64 / 2.0);
    for v in &mut data {
        *v *= scale;
    }
    GridSignal { grid, values: data }
}

/// Per-axis factor `(-1)^m e^{sign·i·origin·ω_m}` linking the grid offsets to a plain DFT.
fn axis_phases(grid: &SpatialGrid, axis: usize, sign: f64) -> Vec<Complex64> {
    let n = grid.samples[axis];
    (0..n)
        .map(|j| {
            let m = j as i64 - (n / 2) as i64;
            let parity = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let omega = grid.frequency(axis, j);
            Complex64::from_polar(parity, sign * grid.origin[axis] * omega)
        })
        .collect()
}

fn for_each_line(
    data: &mut [Complex64],
    grid: &SpatialGrid,
    axis: usize,
    mut op: impl FnMut(&mut [Complex64], &mut [Complex64]),
) {
    let n = grid.samples[axis];
    let stride = grid.strides()[axis];
    let outer = grid.len() / n;
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    let mut scratch = vec![Complex64::new(0.0, 0.0); n];
    for block in 0..outer {
        // block enumerates all index combinations except `axis`
        let hi = block / stride;
        let lo = block % stride;
        let base = hi * stride * n + lo;
        for (k, slot) in line.iter_mut().enumerate() {
            *slot = data[base + k * stride];
        }
        op(&mut line, &mut scratch);
        for (k, v) in line.iter().enumerate() {
            data[base + k * stride] = *v;
        }
    }
}

/// Multilinear interpolation of spectral samples at an arbitrary frequency; zero outside the grid.
pub fn interpolate_spectrum(spectrum: &SpectralSignal, omega: &[f64]) -> Complex64 {
    let grid = spectrum.grid();
    let n = grid.n_dims();
    let mut base = vec![0usize; n];
    let mut frac = vec![0.0; n];
    for a in 0..n {
        let pos = omega[a] / grid.frequency_spacing(a) + (grid.samples()[a] / 2) as f64;
        let fl = pos.floor();
        let f = pos - fl;
        let i = fl as i64;
        let upper = grid.samples()[a] as i64 - 1;
        if i < 0 || i > upper || (i == upper && f > 1e-12) {
            return Complex64::new(0.0, 0.0);
        }
        base[a] = i as usize;
        frac[a] = if i == upper { 0.0 } else { f };
    }
    let strides = grid.strides();
    let mut acc = Complex64::new(0.0, 0.0);
    for corner in 0..(1usize << n) {
        let mut weight = 1.0;
        let mut index = 0;
        for a in 0..n {
            let up = (corner >> a) & 1 == 1;
            let w = if up { frac[a] } else { 1.0 - frac[a] };
            if w == 0.0 {
                weight = 0.0;
                break;
            }
            weight *= w;
            index += (base[a] + usize::from(up)) * strides[a];
        }
        if weight != 0.0 {
            acc += spectrum.values()[index] * weight;
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn grid_rejects_odd_or_small_sample_counts() {
        assert!(SpatialGrid::cube(1, 1.0, 7).is_err());
        assert!(SpatialGrid::cube(1, 1.0, 2).is_err());
        assert!(SpatialGrid::cube(2, -1.0, 8).is_err());
        assert!(SpatialGrid::new(vec![1.0], vec![8, 8], vec![0.0]).is_err());
    }

    #[test]
    fn signal_rejects_wrong_cardinality() {
        let grid = SpatialGrid::cube(1, 1.0, 8).unwrap();
        assert!(matches!(
            GridSignal::new(grid, vec![c(0.0); 7]),
            Err(Error::DimensionMismatch { expected: 8, actual: 7 })
        ));
    }

    #[test]
    fn constant_one_on_unit_box_has_norm_two() {
        let grid = SpatialGrid::cube(1, 1.0, 8).unwrap();
        let f = GridSignal::from_fn(grid, |_| c(1.0));
        let ip = inner_product(&f, &f).unwrap();
        assert!((ip.re - 2.0).abs() < 1e-15 && ip.im == 0.0);
    }

    #[test]
    fn gaussian_is_a_fixed_point() {
        let grid = SpatialGrid::cube(1, 16.0, 512).unwrap();
        let f = GridSignal::from_fn(grid, |x| c((-x[0] * x[0] / 2.0).exp()));
        let fhat = fourier(&f);
        let expected = SpectralSignal::from_fn(f.grid().clone(), |w| c((-w[0] * w[0] / 2.0).exp()));
        assert!(fhat.max_abs_diff(&expected).unwrap() < 1e-10);
    }

    #[test]
    fn gaussian_fixed_point_in_two_dims_with_offset_origin() {
        let grid = SpatialGrid::new(vec![12.0, 10.0], vec![64, 48], vec![0.5, -0.25]).unwrap();
        let f = GridSignal::from_fn(grid, |x| {
            let (a, b) = (x[0] - 0.5, x[1] + 0.25);
            c((-(a * a + b * b) / 2.0).exp())
        });
        let fhat = fourier(&f);
        let expected = SpectralSignal::from_fn(f.grid().clone(), |w| {
            let r = (-(w[0] * w[0] + w[1] * w[1]) / 2.0).exp();
            // shift by the origin turns into a modulation
            Complex64::from_polar(r, -(0.5 * w[0] - 0.25 * w[1]))
        });
        assert!(fhat.max_abs_diff(&expected).unwrap() < 1e-10);
    }

    #[test]
    fn shift_becomes_modulation() {
        let grid = SpatialGrid::cube(1, 16.0, 512).unwrap();
        let dx = grid.spacing(0);
        let b = 7.0 * dx;
        let f = GridSignal::from_fn(grid.clone(), |x| c((-x[0] * x[0] / 2.0).exp()));
        let shifted = GridSignal::from_fn(grid, |x| c((-(x[0] - b).powi(2) / 2.0).exp()));
        let fhat = fourier(&f);
        let shat = fourier(&shifted);
        let mut coords = [0.0];
        let mut worst: f64 = 0.0;
        for (j, (a, s)) in fhat.values().iter().zip(shat.values()).enumerate() {
            fhat.grid().frequency_node_into(j, &mut coords);
            let expected = a * Complex64::from_polar(1.0, -b * coords[0]);
            worst = worst.max((expected - s).norm());
        }
        assert!(worst < 1e-10, "{worst}");
    }

    #[test]
    fn single_frequency_node_gives_pure_exponential() {
        let grid = SpatialGrid::cube(1, 3.0, 16).unwrap();
        let j0 = 11;
        let mut spec = SpectralSignal::zeros(grid.clone());
        spec.values_mut()[j0] = c(1.0);
        let omega = grid.frequency(0, j0);
        let f = inverse_fourier(&spec);
        let scale = grid.frequency_spacing(0) / (2.0 * PI).sqrt();
        for (k, v) in f.values().iter().enumerate() {
            let x = grid.coordinate(0, k);
            let expected = Complex64::from_polar(scale, x * omega);
            assert!((v - expected).norm() < 1e-14);
        }
    }

    #[test]
    fn interpolation_hits_nodes_exactly() {
        let grid = SpatialGrid::cube(2, 4.0, 8).unwrap();
        let spec = SpectralSignal::from_fn(grid.clone(), |w| Complex64::new(w[0], w[1] * w[1]));
        for j in [0usize, 9, 27, 63] {
            let w = grid.frequency_node(j);
            assert!((interpolate_spectrum(&spec, &w) - spec.values()[j]).norm() < 1e-14);
        }
        // affine in each axis between nodes
        let w = [0.5 * grid.frequency_spacing(0), 0.0];
        assert!((interpolate_spectrum(&spec, &w).re - w[0]).abs() < 1e-14);
        assert_eq!(interpolate_spectrum(&spec, &[100.0, 0.0]), c(0.0));
    }
}
