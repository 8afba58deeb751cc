//! Thin deterministic wrappers over the LAPACK-backed routines used by the
//! crate (eigendecomposition, inverse, QR, SVD), plus canonical eigenvalue
//! ordering so reports are byte-stable.

use crate::error::Result;
use crate::matrix::conj_transpose;
use crate::{Matrix, C64};
use ndarray::{Array1, Array2};
use ndarray_linalg::{Eig, Eigh, Inverse, SVD, UPLO};

/// Canonical complex ordering: lexicographic by (re, im). Total on the
/// non-NaN values produced by the eigen solvers.
pub fn canonical_sort(values: &mut [C64]) {
    values.sort_by(|x, y| {
        x.re.partial_cmp(&y.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(x.im.partial_cmp(&y.im).unwrap_or(std::cmp::Ordering::Equal))
    });
}

/// Greedy multiset distance between two equal-length spectra: each value of
/// `a` is matched to the nearest unused value of `b`, and the largest
/// matched distance is returned. Robust where sorting is not — conjugate
/// pairs with equal real parts can swap order between two sorted lists —
/// and exact whenever perturbations are small against the eigenvalue gaps.
pub fn spectrum_match_distance(a: &[C64], b: &[C64]) -> f64 {
    assert_eq!(a.len(), b.len(), "spectra must have equal length");
    let mut used = vec![false; b.len()];
    let mut worst = 0.0f64;
    for va in a {
        let mut best = f64::INFINITY;
        let mut best_i = usize::MAX;
        for (i, vb) in b.iter().enumerate() {
            if !used[i] {
                let d = (va - vb).norm();
                if d < best {
                    best = d;
                    best_i = i;
                }
            }
        }
        used[best_i] = true;
        worst = worst.max(best);
    }
    worst
}

/// Eigenvalues of a general square matrix, canonically sorted.
pub fn eigvals(m: &Matrix) -> Result<Vec<C64>> {
    let (vals, _) = m.eig()?;
    let mut v: Vec<C64> = vals.to_vec();
    canonical_sort(&mut v);
    Ok(v)
}

/// Full eigendecomposition of a general square matrix, in solver order
/// (callers that need determinism sort or match explicitly).
pub fn eig(m: &Matrix) -> Result<(Vec<C64>, Matrix)> {
    let (vals, vecs) = m.eig()?;
    Ok((vals.to_vec(), vecs))
}

/// Eigendecomposition of a hermitian matrix: ascending real eigenvalues and
/// a matrix whose columns are the eigenvectors, M = V·diag(λ)·V†. The
/// backend hands back the conjugate of that matrix for row-major complex
/// input, so the wrapper conjugates once here (frozen by the complex
/// reconstruction test below).
pub fn eigh(m: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let (vals, vecs): (Array1<f64>, Array2<C64>) = m.eigh(UPLO::Lower)?;
    Ok((vals.to_vec(), vecs.mapv(|z| z.conj())))
}

pub fn inverse(m: &Matrix) -> Result<Matrix> {
    Ok(m.inv()?)
}

pub fn qr(m: &Matrix) -> Result<(Matrix, Matrix)> {
    use ndarray_linalg::QR;
    Ok(m.qr()?)
}

/// Singular values, descending (LAPACK order).
pub fn singular_values(m: &Matrix) -> Result<Vec<f64>> {
    let (_, s, _) = m.svd(false, false)?;
    Ok(s.to_vec())
}

/// 2-norm condition number σ_max/σ_min; +∞ when σ_min underflows to zero.
pub fn cond_2(m: &Matrix) -> Result<f64> {
    let s = singular_values(m)?;
    let (max, min) = (
        s.iter().cloned().fold(0.0, f64::max),
        s.iter().cloned().fold(f64::INFINITY, f64::min),
    );
    if min == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(max / min)
}

/// Largest singular value.
pub fn operator_norm(m: &Matrix) -> Result<f64> {
    let s = singular_values(m)?;
    Ok(s.iter().cloned().fold(0.0, f64::max))
}

/// exp(scale·M) for hermitian M, via the spectral decomposition
/// V·diag(exp(scale·λ))·V†.
pub fn expm_hermitian(m: &Matrix, scale: C64) -> Result<Matrix> {
    let (vals, vecs) = eigh(m)?;
    let n = m.nrows();
    let mut d = Array2::from_elem((n, n), C64::new(0.0, 0.0));
    for (j, lam) in vals.iter().enumerate() {
        d[[j, j]] = (scale * lam).exp();
    }
    Ok(vecs.dot(&d).dot(&conj_transpose(&vecs)))
}
