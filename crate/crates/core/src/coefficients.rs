//! Wavelet coefficients over (chart node) × (translation grid).
//!
//! Each chart node keeps the Fourier transform of its translation slice,
//! restricted to the nodes where the dilated wavelet is nonzero. Spatial values
//! are produced on demand; energies and inner products use the discrete
//! Plancherel identity, so they equal the dense spatial sums exactly.

use std::f64::consts::PI;
use std::fs::File;
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fourier::{fourier, inverse_fourier, GridSignal, SpatialGrid, SpectralSignal};
use crate::groups::HaarChart;

/// Sparse spectrum of one translation slice, indices ascending.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SpectralSlice {
    pub indices: Vec<u32>,
    pub values: Vec<Complex64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientField {
    chart: HaarChart,
    grid: SpatialGrid,
    params: Vec<Vec<f64>>,
    haar_weights: Vec<f64>,
    delta_pi: Vec<f64>,
    slices: Vec<SpectralSlice>,
}

#[derive(Serialize, Deserialize)]
struct Header {
    format: String,
    version: u32,
    chart: HaarChart,
    grid: SpatialGrid,
    node_params: Vec<Vec<f64>>,
    haar_weights: Vec<f64>,
    delta_pi: Vec<f64>,
    layout: String,
}

const FORMAT: &str = "orbitwave-coefficients";
const LAYOUT: &str = "node-major, translations row-major, (re, im) little-endian f64";

impl CoefficientField {
    pub fn new(
        chart: HaarChart,
        grid: SpatialGrid,
        params: Vec<Vec<f64>>,
        haar_weights: Vec<f64>,
        delta_pi: Vec<f64>,
        slices: Vec<SpectralSlice>,
    ) -> Result<Self> {
        let n = params.len();
        for len in [haar_weights.len(), delta_pi.len(), slices.len()] {
            if len != n {
                return Err(Error::DimensionMismatch { expected: n, actual: len });
            }
        }
        if haar_weights.iter().chain(&delta_pi).any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidParameter { name: "weights", reason: "quadrature weights must be positive".into() });
        }
        for s in &slices {
            if s.indices.len() != s.values.len() || s.indices.iter().any(|&i| i as usize >= grid.len()) {
                return Err(Error::Format("slice indices do not match the grid".into()));
            }
        }
        Ok(Self { chart, grid, params, haar_weights, delta_pi, slices })
    }

    pub fn chart(&self) -> &HaarChart {
        &self.chart
    }

    pub fn grid(&self) -> &SpatialGrid {
        &self.grid
    }

    pub fn node_count(&self) -> usize {
        self.params.len()
    }

    pub fn translation_count(&self) -> usize {
        self.grid.len()
    }

    /// Total number of (node, translation) values.
    pub fn len(&self) -> usize {
        self.node_count() * self.translation_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn params(&self, node: usize) -> &[f64] {
        &self.params[node]
    }

    pub fn haar_weight(&self, node: usize) -> f64 {
        self.haar_weights[node]
    }

    pub fn delta_pi(&self, node: usize) -> f64 {
        self.delta_pi[node]
    }

    pub fn slice(&self, node: usize) -> &SpectralSlice {
        &self.slices[node]
    }

    /// Weight of a single value in `L²(G)`: `w_h Δ_π(h) Δxⁿ / (2π)ⁿ`.
    pub fn measure_weight(&self, node: usize) -> f64 {
        let n = self.grid.n_dims() as i32;
        self.haar_weights[node] * self.delta_pi[node] * self.grid.cell_volume() / (2.0 * PI).powi(n)
    }

    /// Spectral weight of a node: `w_h Δ_π(h) (π/L)ⁿ / (2π)ⁿ`.
    fn spectral_weight(&self, node: usize) -> f64 {
        let n = self.grid.n_dims() as i32;
        self.haar_weights[node] * self.delta_pi[node] * self.grid.frequency_cell_volume() / (2.0 * PI).powi(n)
    }

    /// `W(h, ·)` on the translation grid.
    pub fn spatial_slice(&self, node: usize) -> GridSignal {
        let mut dense = SpectralSignal::zeros(self.grid.clone());
        let s = &self.slices[node];
        for (&i, v) in s.indices.iter().zip(&s.values) {
            dense.values_mut()[i as usize] = *v;
        }
        inverse_fourier(&dense)
    }

    /// A single coefficient `W(h_node, x_index)`.
    pub fn value(&self, node: usize, translation: usize) -> Complex64 {
        let n = self.grid.n_dims();
        let x = self.grid.node(translation);
        let mut w = vec![0.0; n];
        let scale = self.grid.frequency_cell_volume() / (2.0 * PI).powf(n as f64 / 2.0);
        let s = &self.slices[node];
        s.indices
            .iter()
            .zip(&s.values)
            .map(|(&i, v)| {
                self.grid.frequency_node_into(i as usize, &mut w);
                let phase: f64 = x.iter().zip(&w).map(|(a, b)| a * b).sum();
                v * Complex64::from_polar(1.0, phase)
            })
            .sum::<Complex64>()
            * scale
    }

    /// `‖W‖²_{L²(G)}`.
    pub fn energy(&self) -> f64 {
        (0..self.node_count())
            .map(|i| self.spectral_weight(i) * self.slices[i].values.iter().map(|v| v.norm_sqr()).sum::<f64>())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.energy().sqrt()
    }

    /// `(W, V)_{L²(G)}` for fields on the same chart and grid.
    pub fn inner(&self, other: &CoefficientField) -> Result<Complex64> {
        if self.grid != other.grid || self.params != other.params {
            return Err(Error::GridMismatch("coefficient fields live on different charts or grids".into()));
        }
        let mut total = Complex64::new(0.0, 0.0);
        for i in 0..self.node_count() {
            let (a, b) = (&self.slices[i], &other.slices[i]);
            let (mut p, mut q) = (0, 0);
            let mut acc = Complex64::new(0.0, 0.0);
            while p < a.indices.len() && q < b.indices.len() {
                match a.indices[p].cmp(&b.indices[q]) {
                    std::cmp::Ordering::Less => p += 1,
                    std::cmp::Ordering::Greater => q += 1,
                    std::cmp::Ordering::Equal => {
                        acc += a.values[p] * b.values[q].conj();
                        p += 1;
                        q += 1;
                    }
                }
            }
            total += acc * self.spectral_weight(i);
        }
        Ok(total)
    }

    /// Node, translation index and value of the largest `|W|`.
    pub fn argmax_abs(&self) -> (usize, usize, Complex64) {
        let mut best = (0, 0, Complex64::new(0.0, 0.0));
        for node in 0..self.node_count() {
            if self.slices[node].indices.is_empty() {
                continue;
            }
            let s = self.spatial_slice(node);
            for (j, v) in s.values().iter().enumerate() {
                if v.norm() > best.2.norm() {
                    best = (node, j, *v);
                }
            }
        }
        best
    }

    /// Writes `<stem>.json` (header) and `<stem>.f64` (dense spatial values).
    pub fn write(&self, stem: &Path) -> Result<(PathBuf, PathBuf)> {
        let (json, bin) = (stem.with_extension("json"), stem.with_extension("f64"));
        let header = Header {
            format: FORMAT.into(),
            version: 1,
            chart: self.chart.clone(),
            grid: self.grid.clone(),
            node_params: self.params.clone(),
            haar_weights: self.haar_weights.clone(),
            delta_pi: self.delta_pi.clone(),
            layout: LAYOUT.into(),
        };
        serde_json::to_writer_pretty(BufWriter::new(File::create(&json)?), &header)
            .map_err(|e| Error::Format(e.to_string()))?;
        let mut out = BufWriter::new(File::create(&bin)?);
        for node in 0..self.node_count() {
            for v in self.spatial_slice(node).values() {
                out.write_all(&v.re.to_le_bytes())?;
                out.write_all(&v.im.to_le_bytes())?;
            }
        }
        out.flush()?;
        Ok((json, bin))
    }

    /// Reads a field written by [`CoefficientField::write`]. Slices come back
    /// with their full spectra.
    pub fn read(stem: &Path) -> Result<Self> {
        let header: Header = serde_json::from_reader(File::open(stem.with_extension("json"))?)
            .map_err(|e| Error::Format(e.to_string()))?;
        if header.format != FORMAT || header.version != 1 {
            return Err(Error::Format(format!("unsupported header {} v{}", header.format, header.version)));
        }
        let grid = header.grid.validated()?;
        let chart = header.chart.validated()?;
        let mut bytes = Vec::new();
        File::open(stem.with_extension("f64"))?.read_to_end(&mut bytes)?;
        let per = grid.len();
        let expected = header.node_params.len() * per * 16;
        if bytes.len() != expected {
            return Err(Error::Format(format!("payload has {} bytes, expected {expected}", bytes.len())));
        }
        let mut slices = Vec::with_capacity(header.node_params.len());
        for chunk in bytes.chunks_exact(per * 16) {
            let values = chunk
                .chunks_exact(16)
                .map(|b| {
                    let re = f64::from_le_bytes(b[..8].try_into().expect("8 bytes"));
                    let im = f64::from_le_bytes(b[8..].try_into().expect("8 bytes"));
                    Complex64::new(re, im)
                })
                .collect();
            let spec = fourier(&GridSignal::new(grid.clone(), values)?);
            slices.push(SpectralSlice {
                indices: (0..per as u32).collect(),
                values: spec.into_values(),
            });
        }
        Self::new(chart, grid, header.node_params, header.haar_weights, header.delta_pi, slices)
    }

    /// CSV rows `p0,..,x0,..,abs` for plotting `|W|`.
    pub fn write_abs_csv<W: Write>(&self, mut out: W) -> Result<()> {
        let d = self.chart.param_dim();
        let n = self.grid.n_dims();
        let cols: Vec<String> = (0..d).map(|i| format!("p{i}")).chain((0..n).map(|i| format!("x{i}"))).collect();
        writeln!(out, "{},abs", cols.join(","))?;
        for node in 0..self.node_count() {
            let s = self.spatial_slice(node);
            for (j, v) in s.values().iter().enumerate() {
                let x = self.grid.node(j);
                let row: Vec<String> = self.params[node].iter().chain(&x).map(|v| format!("{v:.10e}")).collect();
                writeln!(out, "{},{:.10e}", row.join(","), v.norm())?;
            }
        }
        Ok(())
    }
}
