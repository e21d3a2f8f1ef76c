//! `GL(n,R)` acting on symmetric matrices by `g·X = g X gᵗ`.

use nalgebra::{DMatrix, SymmetricEigen};

use super::element::GroupElement;
use crate::error::{Error, Result};

/// Inertia `(p, q, zeros)` of a symmetric matrix.
pub type Signature = (usize, usize, usize);

/// `I_{p,q} = diag(I_p, -I_q)`.
pub fn ipq(p: usize, q: usize) -> DMatrix<f64> {
    DMatrix::from_diagonal(&nalgebra::DVector::from_fn(p + q, |i, _| if i < p { 1.0 } else { -1.0 }))
}

fn symmetry_defect(x: &DMatrix<f64>) -> f64 {
    (x - x.transpose()).amax()
}

fn check_symmetric(x: &DMatrix<f64>) -> Result<()> {
    if !x.is_square() {
        return Err(Error::NotSymmetric { defect: f64::INFINITY });
    }
    let defect = symmetry_defect(x);
    if defect > 1e-12 * x.amax().max(1.0) {
        return Err(Error::NotSymmetric { defect });
    }
    Ok(())
}

/// `g X gᵗ`, symmetrized to remove rounding asymmetry.
pub fn symm_act(g: &GroupElement, x: &DMatrix<f64>) -> Result<DMatrix<f64>> {
    check_symmetric(x)?;
    if x.nrows() != g.dim() {
        return Err(Error::DimensionMismatch { expected: g.dim(), actual: x.nrows() });
    }
    let m = g.matrix();
    let y = m * x * m.transpose();
    Ok((&y + y.transpose()) * 0.5)
}

/// Eigenvalue sign counts with threshold `tol`; `None` uses `1e-9·‖X‖_max`.
pub fn symm_signature(x: &DMatrix<f64>, tol: Option<f64>) -> Result<Signature> {
    check_symmetric(x)?;
    let tol = tol.unwrap_or(1e-9 * x.amax());
    let eig = SymmetricEigen::new(x.clone());
    let mut sig = (0, 0, 0);
    for &l in eig.eigenvalues.iter() {
        if l > tol {
            sig.0 += 1;
        } else if l < -tol {
            sig.1 += 1;
        } else {
            sig.2 += 1;
        }
    }
    Ok(sig)
}

/// `τ_{p,q}(λ g) = λ⁻¹ I_{p,q} (gᵗ)⁻¹ I_{p,q}` for `g ∈ SL(n,R)`.
pub fn tau_pq(g: &GroupElement, lambda: f64, p: usize, q: usize) -> Result<GroupElement> {
    let n = g.dim();
    if p + q != n {
        return Err(Error::DimensionMismatch { expected: n, actual: p + q });
    }
    if !(lambda.is_finite() && lambda > 0.0) {
        return Err(Error::InvalidParameter { name: "lambda", reason: format!("{lambda} must be positive") });
    }
    let det = g.det();
    if det <= 0.0 {
        return Err(Error::InvalidParameter { name: "g", reason: format!("det = {det} must be positive") });
    }
    if (det - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidParameter { name: "g", reason: format!("det = {det} is not 1") });
    }
    let i = ipq(p, q);
    let inv_t = g.inverse().matrix().transpose();
    GroupElement::new(&i * inv_t * &i / lambda)
}

/// [`tau_pq`] applied to `m = λ g` with `λ = det(m)^{1/n}`.
pub fn tau_pq_scaled(m: &GroupElement, p: usize, q: usize) -> Result<GroupElement> {
    let n = m.dim();
    let det = m.det();
    if det <= 0.0 {
        return Err(Error::InvalidParameter { name: "m", reason: format!("det = {det} must be positive") });
    }
    let lambda = det.powf(1.0 / n as f64);
    let g = m.scaled(1.0 / lambda)?;
    tau_pq(&g, lambda, p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rot_boost(n: usize, p: usize, i: usize, j: usize, s: f64) -> DMatrix<f64> {
        // same-signature planes rotate, mixed planes boost
        let mut m = DMatrix::identity(n, n);
        if (i < p) == (j < p) {
            let (sn, c) = s.sin_cos();
            m[(i, i)] = c;
            m[(j, j)] = c;
            m[(i, j)] = -sn;
            m[(j, i)] = sn;
        } else {
            let (sh, ch) = (s.sinh(), s.cosh());
            m[(i, i)] = ch;
            m[(j, j)] = ch;
            m[(i, j)] = sh;
            m[(j, i)] = sh;
        }
        m
    }

    #[test]
    fn identity_acts_trivially() {
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 2.0, -3.0]);
        assert_eq!(symm_act(&GroupElement::identity(2), &x).unwrap(), x);
    }

    #[test]
    fn rejects_asymmetric_input() {
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 0.0, 1.0]);
        assert!(matches!(symm_act(&GroupElement::identity(2), &x), Err(Error::NotSymmetric { .. })));
    }

    #[test]
    fn pseudo_orthogonal_elements_fix_ipq() {
        let m = rot_boost(4, 2, 0, 3, 0.9) * rot_boost(4, 2, 0, 1, 0.3) * rot_boost(4, 2, 2, 3, -1.2);
        let g = GroupElement::new(m).unwrap();
        let out = symm_act(&g, &ipq(2, 2)).unwrap();
        assert!((out - ipq(2, 2)).amax() < 1e-10);
        let t = tau_pq(&g, 1.0, 2, 2).unwrap();
        assert!(t.max_entry_diff(&g) < 1e-12);
    }

    #[test]
    fn signatures_of_simple_matrices() {
        assert_eq!(symm_signature(&ipq(3, 1), None).unwrap(), (3, 1, 0));
        assert_eq!(symm_signature(&DMatrix::zeros(3, 3), None).unwrap(), (0, 0, 3));
    }

    #[test]
    fn tau_is_an_involution_and_rejects_bad_determinants() {
        let g = GroupElement::from_rows(2, &[2.0, 1.0, 1.0, 1.0]).unwrap();
        let once = tau_pq(&g, 3.0, 1, 1).unwrap();
        let twice = tau_pq_scaled(&once, 1, 1).unwrap();
        assert!(twice.max_entry_diff(&g.scaled(3.0).unwrap()) < 1e-12);
        let flip = GroupElement::from_rows(2, &[0.0, 1.0, 1.0, 0.0]).unwrap();
        assert!(tau_pq(&flip, 1.0, 1, 1).is_err());
        assert!(tau_pq(&GroupElement::identity(2), 1.0, 1, 1).unwrap().max_entry_diff(&GroupElement::identity(2)) == 0.0);
    }
}
