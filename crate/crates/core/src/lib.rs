//! Continuous wavelet transforms for matrix-group dilations on R^n.
//!
//! The crate covers the classical ax+b transform on the line, the quasi-regular
//! representation of `H ⋉ R^n` for concrete matrix groups `H`, admissibility
//! integrals over Haar charts, Parseval and reconstruction checks, and wavelet
//! packages on the Lorentz orbit `O3` where genuine wavelets do not exist.

pub mod atoms;
pub mod axb;
pub mod coefficients;
pub mod engine;
pub mod error;
pub mod fourier;
pub mod groups;
pub mod packages;
pub mod quadrature;
pub mod signal_io;

pub use atoms::{Gaussian, SpectralAtom, TransformedAtom, WaveletForm, WaveletSpec};
pub use axb::{
    axb_admissibility, axb_apply, axb_kernel_defect, axb_parseval_ratio, axb_reconstruct, axb_transform, hardy_project,
    AxbWavelet, HardyPair, KernelDefectReport,
};
pub use coefficients::CoefficientField;
pub use engine::{
    covering_chart, gcwt_admissibility, gcwt_parseval, gcwt_reconstruct, gcwt_transform, orbit_project,
    quasi_regular_apply, AdmissibilityOptions, AdmissibilityReport, SemidirectElement,
};
pub use error::{Error, Result};
pub use fourier::{fourier, inner_product, inverse_fourier, GridSignal, Sampled, SpatialGrid, SpectralSignal};
pub use groups::{GroupElement, GroupId, HaarChart, LorentzTag, OrbitLabel};
pub use packages::{four_part_split, package_build, package_reconstruct, package_transform, PackageOptions, WaveletPackage};

/// Crate version, recorded in CLI reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
