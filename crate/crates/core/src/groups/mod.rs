//! Matrix groups, their orbits on frequency space, and Haar charts.

pub mod chart;
pub mod element;
pub mod lorentz;
pub mod symm;

use serde::{Deserialize, Serialize};

pub use chart::{chart_test_bump, haar_invariance_defect, AxisNodes, AxisScale, ChartNode, GroupId, HaarChart};
pub use element::{contragredient_act, GroupElement};
pub use lorentz::{
    beta, boost, classify_fine, classify_lorentz_orbit, classify_parabolic_suborbit, default_orbit_tol, dilation,
    lorentz_defect, na_coordinates, na_element, nilpotent, orbit_point_formula, plane_rotation, rotation_embed,
    weyl_s, LorentzForm, LorentzTag,
};
pub use symm::{ipq, symm_act, symm_signature, tau_pq, tau_pq_scaled, Signature};

/// An open orbit (or one of the null pieces) of a frequency-space action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum OrbitLabel {
    /// `(0, ∞)` or `(-∞, 0)` under 1-D dilations.
    HalfLine { positive: bool },
    Lorentz { tag: LorentzTag },
    Symm { p: usize, q: usize, zeros: usize },
}

impl OrbitLabel {
    pub fn lorentz(tag: LorentzTag) -> Self {
        OrbitLabel::Lorentz { tag }
    }

    /// Whether `omega` lies in this orbit piece, using the default tolerance.
    ///
    /// `Lorentz { O3 }` covers both sub-orbits and the hyperplane between them.
    pub fn contains(&self, omega: &[f64]) -> bool {
        match *self {
            OrbitLabel::HalfLine { positive } => omega.len() == 1 && if positive { omega[0] > 0.0 } else { omega[0] < 0.0 },
            OrbitLabel::Lorentz { tag } => {
                if omega.len() < 2 {
                    return false;
                }
                let fine = classify_fine(omega, default_orbit_tol(omega));
                match tag {
                    LorentzTag::O3 => {
                        matches!(fine, LorentzTag::O31 | LorentzTag::O32 | LorentzTag::SuborbitBoundary)
                    }
                    other => fine == other,
                }
            }
            OrbitLabel::Symm { p, q, zeros } => {
                let n = p + q + zeros;
                if omega.len() != n * (n + 1) / 2 {
                    return false;
                }
                let x = symm_from_packed(n, omega);
                symm_signature(&x, None).map(|s| s == (p, q, zeros)).unwrap_or(false)
            }
        }
    }

    pub fn dims_ok(&self, n_dims: usize) -> bool {
        match *self {
            OrbitLabel::HalfLine { .. } => n_dims == 1,
            OrbitLabel::Lorentz { .. } => n_dims >= 2,
            OrbitLabel::Symm { p, q, zeros } => {
                let n = p + q + zeros;
                n_dims == n * (n + 1) / 2
            }
        }
    }
}

/// Symmetric matrix from its upper triangle listed row by row.
pub fn symm_from_packed(n: usize, packed: &[f64]) -> nalgebra::DMatrix<f64> {
    let mut x = nalgebra::DMatrix::zeros(n, n);
    let mut k = 0;
    for i in 0..n {
        for j in i..n {
            x[(i, j)] = packed[k];
            x[(j, i)] = packed[k];
            k += 1;
        }
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_serialize_with_family_tag() {
        let l = OrbitLabel::lorentz(LorentzTag::O31);
        assert_eq!(serde_json::to_string(&l).unwrap(), r#"{"family":"lorentz","tag":"O31"}"#);
        let s: OrbitLabel = serde_json::from_str(r#"{"family":"symm","p":2,"q":1,"zeros":0}"#).unwrap();
        assert_eq!(s, OrbitLabel::Symm { p: 2, q: 1, zeros: 0 });
    }

    #[test]
    fn membership() {
        assert!(OrbitLabel::lorentz(LorentzTag::O3).contains(&[0.0, 0.0, 1.0]));
        assert!(OrbitLabel::lorentz(LorentzTag::O31).contains(&[0.0, 0.0, 1.0]));
        assert!(!OrbitLabel::lorentz(LorentzTag::O32).contains(&[0.0, 0.0, 1.0]));
        assert!(OrbitLabel::HalfLine { positive: false }.contains(&[-0.1]));
        assert!(OrbitLabel::Symm { p: 1, q: 1, zeros: 0 }.contains(&[1.0, 0.0, -2.0]));
    }
}
