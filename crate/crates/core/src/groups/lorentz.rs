//! The Lorentz family `R⁺SO₀(1,n)` acting on `R^{1+n}`.
//!
//! Vectors are written `u = (a, v, b)` with `a` the time coordinate, `v` the
//! middle `n-1` spatial coordinates and `b` the last one, so that
//! `β(u,u) = a² - ‖v‖² - b²`. The boost `a_t` mixes the first and last
//! coordinates and `e_{n+1}` is the last basis vector.
//!
//! Checked by direct matrix multiplication (see the tests):
//! `n(v) a(λ,t) e_{n+1} = λ (sinh t - e^{-t}‖v‖²/2, -e^{-t} v, cosh t - e^{-t}‖v‖²/2)`,
//! which is the displayed orbit formula with the matrix product taken literally.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use super::element::GroupElement;
use crate::error::{Error, Result};

/// Orbit and sub-orbit tags for the contragredient Lorentz action.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LorentzTag {
    O1,
    O2,
    O3,
    ConeC,
    O31,
    O32,
    /// Points of `O3` on the hyperplane `a = b` separating the two sub-orbits.
    SuborbitBoundary,
}

/// The bilinear form `β(u, w) = uᵗ B w` with `B = diag(1, -I_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LorentzForm {
    pub n: usize,
}

impl LorentzForm {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::UnsupportedDimension { dim: n, reason: "Lorentz family needs n >= 1" });
        }
        Ok(Self { n })
    }

    pub fn matrix(&self) -> DMatrix<f64> {
        let mut b = DMatrix::identity(self.n + 1, self.n + 1) * -1.0;
        b[(0, 0)] = 1.0;
        b
    }

    pub fn beta(&self, u: &[f64], w: &[f64]) -> f64 {
        beta(u, w)
    }
}

pub fn beta(u: &[f64], w: &[f64]) -> f64 {
    u[0] * w[0] - u[1..].iter().zip(&w[1..]).map(|(x, y)| x * y).sum::<f64>()
}

fn check_n(n: usize, min: usize, reason: &'static str) -> Result<()> {
    if n < min {
        return Err(Error::UnsupportedDimension { dim: n, reason });
    }
    Ok(())
}

/// The boost `a_t` on `R^{1+n}`.
pub fn boost(n: usize, t: f64) -> Result<GroupElement> {
    check_n(n, 1, "boosts need n >= 1")?;
    let mut m = DMatrix::identity(n + 1, n + 1);
    let (s, c) = (t.sinh(), t.cosh());
    m[(0, 0)] = c;
    m[(n, n)] = c;
    m[(0, n)] = s;
    m[(n, 0)] = s;
    GroupElement::new(m)
}

/// The unipotent element `n(v)`, `v ∈ R^{n-1}`.
pub fn nilpotent(v: &[f64]) -> Result<GroupElement> {
    let n = v.len() + 1;
    check_n(n, 2, "the nilpotent subgroup needs n >= 2")?;
    GroupElement::new(nilpotent_matrix(v))
}

pub(crate) fn nilpotent_matrix(v: &[f64]) -> DMatrix<f64> {
    let n = v.len() + 1;
    let half = 0.5 * v.iter().map(|x| x * x).sum::<f64>();
    let mut m = DMatrix::identity(n + 1, n + 1);
    m[(0, 0)] = 1.0 + half;
    m[(0, n)] = -half;
    m[(n, 0)] = half;
    m[(n, n)] = 1.0 - half;
    for (i, &vi) in v.iter().enumerate() {
        m[(0, i + 1)] = vi;
        m[(n, i + 1)] = vi;
        m[(i + 1, 0)] = vi;
        m[(i + 1, n)] = -vi;
    }
    m
}

/// `λ I_d`.
pub fn dilation(lambda: f64, d: usize) -> Result<GroupElement> {
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter { name: "lambda", reason: format!("{lambda} must be positive") });
    }
    GroupElement::new(DMatrix::identity(d, d) * lambda)
}

/// Embeds an orthogonal `k` as `diag(1, k)`.
pub fn rotation_embed(k: &DMatrix<f64>) -> Result<GroupElement> {
    if !k.is_square() {
        return Err(Error::NotOrthogonal { defect: f64::INFINITY });
    }
    let n = k.nrows();
    let defect = (k.transpose() * k - DMatrix::identity(n, n)).amax();
    if defect > 1e-10 {
        return Err(Error::NotOrthogonal { defect });
    }
    let mut m = DMatrix::identity(n + 1, n + 1);
    m.view_mut((1, 1), (n, n)).copy_from(k);
    GroupElement::new(m)
}

/// Rotation by `θ` in the plane of spatial axes `i < j` (1-based spatial indices).
pub fn plane_rotation(n: usize, i: usize, j: usize, theta: f64) -> Result<GroupElement> {
    if !(1 <= i && i < j && j <= n) {
        return Err(Error::InvalidParameter { name: "plane", reason: format!("({i}, {j}) not in 1..={n}") });
    }
    let mut k = DMatrix::identity(n, n);
    let (s, c) = theta.sin_cos();
    k[(i - 1, i - 1)] = c;
    k[(j - 1, j - 1)] = c;
    k[(i - 1, j - 1)] = -s;
    k[(j - 1, i - 1)] = s;
    rotation_embed(&k)
}

/// `s = diag(1, -1, I_{n-2}, -1)`; for `n = 1` this is `diag(1, -1)`.
pub fn weyl_s(n: usize) -> Result<GroupElement> {
    check_n(n, 1, "weyl_s needs n >= 1")?;
    let mut m = DMatrix::identity(n + 1, n + 1);
    m[(n, n)] = -1.0;
    if n >= 2 {
        m[(1, 1)] = -1.0;
    }
    GroupElement::new(m)
}

/// `‖gᵗ B g - B‖_max`.
pub fn lorentz_defect(g: &GroupElement) -> f64 {
    let n = g.dim() - 1;
    let b = LorentzForm { n }.matrix();
    let m = g.matrix();
    (m.transpose() * &b * m - b).amax()
}

/// `λ n(v) a_t`.
pub fn na_element(v: &[f64], lambda: f64, t: f64) -> Result<GroupElement> {
    let a = boost(v.len() + 1, t)?;
    let g = nilpotent(v)?.compose(&a)?;
    g.scaled(lambda)
}

/// Closed form of `n(v) a(λ,t) e_{n+1}`.
pub fn orbit_point_formula(v: &[f64], lambda: f64, t: f64) -> Result<Vec<f64>> {
    check_n(v.len() + 1, 2, "the orbit formula needs n >= 2")?;
    let et = (-t).exp();
    let q = 0.5 * et * v.iter().map(|x| x * x).sum::<f64>();
    let mut out = Vec::with_capacity(v.len() + 2);
    out.push(lambda * (t.sinh() - q));
    out.extend(v.iter().map(|x| -lambda * et * x));
    out.push(lambda * (t.cosh() - q));
    Ok(out)
}

/// Inverse of [`orbit_point_formula`] on `O31`, and of `x ↦ n(v)a(λ,t)(-e_{n+1})` on `O32`.
pub fn na_coordinates(x: &[f64]) -> Option<(Vec<f64>, f64, f64)> {
    let n = x.len().checked_sub(1)?;
    if n < 2 {
        return None;
    }
    let sign = if x[0] < x[n] { 1.0 } else if x[0] > x[n] { -1.0 } else { return None };
    let b2 = beta(x, x);
    if b2 >= 0.0 {
        return None;
    }
    let lambda = (-b2).sqrt();
    let gap = sign * (x[n] - x[0]);
    let t = -(gap / lambda).ln();
    let v = x[1..n].iter().map(|&w| -sign * w / gap).collect();
    Some((v, lambda, t))
}

/// Default β tolerance `1e-9·‖u‖²`.
pub fn default_orbit_tol(u: &[f64]) -> f64 {
    1e-9 * u.iter().map(|x| x * x).sum::<f64>()
}

pub fn classify_lorentz_orbit(u: &[f64], tol: f64) -> LorentzTag {
    let b = beta(u, u);
    if b > tol {
        if u[0] > 0.0 {
            LorentzTag::O1
        } else {
            LorentzTag::O2
        }
    } else if b < -tol {
        LorentzTag::O3
    } else {
        LorentzTag::ConeC
    }
}

/// Splits `O3` into the open parabolic sub-orbits `{a < b}` and `{a > b}`.
pub fn classify_parabolic_suborbit(u: &[f64], tol: f64) -> Result<LorentzTag> {
    if u.len() < 2 {
        return Err(Error::UnsupportedDimension { dim: u.len(), reason: "need at least two coordinates" });
    }
    let tag = classify_lorentz_orbit(u, tol);
    if tag != LorentzTag::O3 {
        return Err(Error::OutsideOrbit(format!("{u:?} lies in {tag:?}, not O3")));
    }
    let (a, b) = (u[0], u[u.len() - 1]);
    let norm = u.iter().map(|x| x * x).sum::<f64>().sqrt();
    let gap_tol = if norm > 0.0 { tol / norm } else { 0.0 };
    Ok(if (a - b).abs() <= gap_tol {
        LorentzTag::SuborbitBoundary
    } else if a < b {
        LorentzTag::O31
    } else {
        LorentzTag::O32
    })
}

/// Fine partition label: one of O1, O2, O31, O32, SuborbitBoundary, ConeC.
pub fn classify_fine(u: &[f64], tol: f64) -> LorentzTag {
    match classify_lorentz_orbit(u, tol) {
        LorentzTag::O3 => classify_parabolic_suborbit(u, tol).unwrap_or(LorentzTag::O3),
        other => other,
    }
}

/// Iwasawa coordinates `(v, t, θ)` of `h ∈ SO₀(1,2)` with `h = n(v) a_t k_θ`.
pub fn iwasawa_coordinates(h: &DMatrix<f64>) -> Option<(f64, f64, f64)> {
    if h.nrows() != 3 {
        return None;
    }
    let w = h.column(0);
    let gap = w[0] - w[2];
    if gap <= 0.0 {
        return None;
    }
    let t = -gap.ln();
    let v = w[1] / gap;
    let na = nilpotent_matrix(&[v]) * boost(2, t).ok()?.matrix();
    let k = na.try_inverse()? * h;
    let theta = k[(2, 1)].atan2(k[(1, 1)]).rem_euclid(std::f64::consts::TAU);
    Some((v, t, theta))
}

pub(crate) fn apply(g: &GroupElement, u: &[f64]) -> Vec<f64> {
    (g.matrix() * DVector::from_column_slice(u)).as_slice().to_vec()
}
