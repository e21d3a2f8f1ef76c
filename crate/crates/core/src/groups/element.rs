use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Smallest |det| accepted for an invertible matrix.
pub const SINGULAR_TOL: f64 = 1e-12;

/// Invertible real matrix with cached determinant data.
///
/// When the element is used as `π(h)` acting on R^n, `delta_pi` is the
/// modular factor `|det π(h)|^{-1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    matrix: DMatrix<f64>,
    det_abs: f64,
    delta_pi: f64,
}

impl GroupElement {
    pub fn new(matrix: DMatrix<f64>) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::InvalidParameter {
                name: "matrix",
                reason: format!("{}x{} is not square", matrix.nrows(), matrix.ncols()),
            });
        }
        if matrix.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter { name: "matrix", reason: "entries must be finite".into() });
        }
        let det = matrix.determinant();
        if det.abs() <= SINGULAR_TOL {
            return Err(Error::Singular { det: det.abs() });
        }
        Ok(Self { matrix, det_abs: det.abs(), delta_pi: 1.0 / det.abs() })
    }

    pub fn identity(dim: usize) -> Self {
        Self { matrix: DMatrix::identity(dim, dim), det_abs: 1.0, delta_pi: 1.0 }
    }

    /// Builds from row-major entries.
    pub fn from_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim, actual: entries.len() });
        }
        Self::new(DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn det_abs(&self) -> f64 {
        self.det_abs
    }

    pub fn det(&self) -> f64 {
        self.matrix.determinant()
    }

    pub fn delta_pi(&self) -> f64 {
        self.delta_pi
    }

    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement> {
        self.check_dim(other.dim())?;
        Ok(Self {
            matrix: &self.matrix * &other.matrix,
            det_abs: self.det_abs * other.det_abs,
            delta_pi: self.delta_pi * other.delta_pi,
        })
    }

    pub fn inverse(&self) -> GroupElement {
        let inv = self
            .matrix
            .clone()
            .try_inverse()
            .expect("determinant was checked at construction");
        Self { matrix: inv, det_abs: 1.0 / self.det_abs, delta_pi: 1.0 / self.delta_pi }
    }

    pub fn transpose(&self) -> GroupElement {
        Self { matrix: self.matrix.transpose(), det_abs: self.det_abs, delta_pi: self.delta_pi }
    }

    pub fn scaled(&self, factor: f64) -> Result<GroupElement> {
        Self::new(&self.matrix * factor)
    }

    /// Natural action `h y`.
    pub fn act(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(y.len())?;
        Ok((&self.matrix * DVector::from_column_slice(y)).as_slice().to_vec())
    }

    /// Transposed action `hᵗ y`.
    pub fn act_transpose(&self, y: &[f64]) -> Result<Vec<f64>> {
        self.check_dim(y.len())?;
        Ok((self.matrix.tr_mul(&DVector::from_column_slice(y))).as_slice().to_vec())
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_entry_diff(&self, other: &GroupElement) -> f64 {
        (&self.matrix - &other.matrix).amax()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.matrix.row_iter().map(|r| r.iter().copied().collect()).collect()
    }

    fn check_dim(&self, d: usize) -> Result<()> {
        if d != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), actual: d });
        }
        Ok(())
    }
}

/// Contragredient action `(h⁻¹)ᵗ y`.
pub fn contragredient_act(h: &GroupElement, y: &[f64]) -> Result<Vec<f64>> {
    if y.len() != h.dim() {
        return Err(Error::DimensionMismatch { expected: h.dim(), actual: y.len() });
    }
    let lu = h.matrix().transpose().lu();
    lu.solve(&DVector::from_column_slice(y))
        .map(|v| v.as_slice().to_vec())
        .ok_or(Error::Singular { det: h.det_abs() })
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<f64>> = Vec::deserialize(d)?;
        let dim = rows.len();
        if rows.iter().any(|r| r.len() != dim) {
            return Err(serde::de::Error::custom("matrix rows must form a square"));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        GroupElement::from_rows(dim, &flat).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_singular_matrices() {
        let m = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, 4.0]);
        assert!(matches!(GroupElement::new(m), Err(Error::Singular { .. })));
    }

    #[test]
    fn cached_determinants_stay_consistent() {
        let g = GroupElement::from_rows(2, &[2.0, 1.0, 0.0, 3.0]).unwrap();
        let h = GroupElement::from_rows(2, &[1.0, -1.0, 1.0, 1.0]).unwrap();
        let gh = g.compose(&h).unwrap();
        assert!((gh.det_abs() - 12.0).abs() < 1e-12);
        assert!((gh.delta_pi() * gh.det_abs() - 1.0).abs() < 1e-12);
        assert!((g.inverse().delta_pi() - 6.0).abs() < 1e-12);
    }

    #[test]
    fn contragredient_is_an_action() {
        let g = GroupElement::from_rows(2, &[2.0, 1.0, 0.5, 3.0]).unwrap();
        let h = GroupElement::from_rows(2, &[1.0, -1.0, 1.0, 1.0]).unwrap();
        let y = [0.3, -1.7];
        let lhs = contragredient_act(&g.compose(&h).unwrap(), &y).unwrap();
        let rhs = contragredient_act(&g, &contragredient_act(&h, &y).unwrap()).unwrap();
        for (a, b) in lhs.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-12);
        }
        let id = contragredient_act(&GroupElement::identity(2), &y).unwrap();
        assert_eq!(id, y.to_vec());
        let d = GroupElement::new(DMatrix::identity(2, 2) * 4.0).unwrap();
        let scaled = contragredient_act(&d, &y).unwrap();
        assert!((scaled[0] - 0.075).abs() < 1e-15 && (scaled[1] + 0.425).abs() < 1e-15);
    }

    #[test]
    fn json_round_trip_is_row_major() {
        let g = GroupElement::from_rows(2, &[2.0, 1.0, 0.0, 3.0]).unwrap();
        let text = serde_json::to_string(&g).unwrap();
        assert_eq!(text, "[[2.0,1.0],[0.0,3.0]]");
        let back: GroupElement = serde_json::from_str(&text).unwrap();
        assert_eq!(back, g);
    }
}
