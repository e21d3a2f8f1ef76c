//! Job configuration files passed with `--config`.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use orbitwave_core::{AdmissibilityOptions, HaarChart, PackageOptions, SpatialGrid, WaveletSpec};
use serde::{Deserialize, Serialize};

/// Everything a job can take from a file. Command-line flags win over the file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct JobConfig {
    /// Subcommand the file was written for; checked against the one invoked.
    pub command: Option<String>,
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub grid: Option<SpatialGrid>,
    pub chart: Option<HaarChart>,
    pub wavelet: Option<WaveletSpec>,
    pub admissibility: Option<AdmissibilityOptions>,
    pub package: Option<PackageOptions>,
    pub tolerances: Tolerances,
    pub threads: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Absolute β tolerance for Lorentz classification; `None` means `1e-9·|u|²`.
    pub orbit: Option<f64>,
    /// Eigenvalue tolerance for signatures; `None` scales with the matrix.
    pub signature: Option<f64>,
    /// Relative spectral magnitude below which frequencies do not size the chart.
    pub support: f64,
    /// Relative padding of covering charts.
    pub chart_margin: f64,
    /// Largest Haar invariance defect that `haar-check` accepts.
    pub haar_defect: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { orbit: None, signature: None, support: 1e-14, chart_margin: 0.05, haar_defect: 1e-3 }
    }
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        let config: JobConfig =
            serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))?;
        config.validated()
    }

    /// Checks every embedded object with the same rules the library applies.
    pub fn validated(mut self) -> Result<Self> {
        if let Some(grid) = self.grid.take() {
            self.grid = Some(grid.validated().context("config field `grid`")?);
        }
        if let Some(chart) = self.chart.take() {
            self.chart = Some(chart.validated().context("config field `chart`")?);
        }
        if let Some(psi) = self.wavelet.take() {
            self.wavelet = Some(psi.validated().context("config field `wavelet`")?);
        }
        if self.threads == Some(0) {
            bail!("config field `threads` must be positive");
        }
        let t = &self.tolerances;
        let positive = |x: f64| x.is_finite() && x > 0.0;
        if !(positive(t.support) && positive(t.haar_defect) && t.chart_margin.is_finite() && t.chart_margin >= 0.0) {
            bail!("config field `tolerances` holds a non-positive or non-finite value");
        }
        if t.orbit.is_some_and(|x| !(x.is_finite() && x >= 0.0)) || t.signature.is_some_and(|x| !(x.is_finite() && x >= 0.0)) {
            bail!("config field `tolerances` holds a negative or non-finite value");
        }
        Ok(self)
    }
}
