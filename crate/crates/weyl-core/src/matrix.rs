use crate::element::AlgebraElement;
use crate::error::{Result, WeylError};
use crate::params::AlgebraParams;
use crate::{Matrix, C64};
use ndarray::Array2;

/// Faithful representation. The basis element e_b^a maps to the matrix with
/// entries M[j, (j+a) mod n] = ω^{b·((j+a) mod n)}; in particular the clock
/// e_1^0 becomes diag(ω^j) and the shift e_0^1 the cyclic matrix that sends
/// basis ket j to j−1 (ones on the superdiagonal and in the lower-left
/// corner). This is the unique convention in which the twist relation, the
/// diagonal idempotent picture, and label-advancing position translations
/// hold simultaneously.
pub fn to_matrix(e: &AlgebraElement) -> Matrix {
    let n = e.n();
    let params = e.params();
    let tab = params.omega_table();
    let mut m = Array2::from_elem((n, n), C64::new(0.0, 0.0));
    for a in 0..n {
        for b in 0..n {
            let z = e.coeff(a, b);
            if z.re == 0.0 && z.im == 0.0 {
                continue;
            }
            for j in 0..n {
                let col = (j + a) % n;
                m[[j, col]] += z * tab[(b * col) % n];
            }
        }
    }
    m
}

/// Exact inverse of `to_matrix` via the trace pairing
/// A_{ab} = (1/n) Σ_j M[j, (j+a) mod n] · ω^{−b·((j+a) mod n)},
/// i.e. (1/n)·trace(M · to_matrix(e_b^a)⁻¹) with the basis inverse
/// (e_b^a)⁻¹ = ω^{−ab} e_{−b}^{−a} (basis elements are unitary).
pub fn from_matrix(params: AlgebraParams, m: &Matrix) -> Result<AlgebraElement> {
    let n = params.n();
    check_dims(params, m)?;
    let tab = params.omega_table();
    let mut coeffs = vec![C64::new(0.0, 0.0); n * n];
    let inv_n = 1.0 / n as f64;
    for a in 0..n {
        for b in 0..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..n {
                let col = (j + a) % n;
                acc += m[[j, col]] * tab[(n - (b * col) % n) % n];
            }
            coeffs[a * n + b] = acc * inv_n;
        }
    }
    AlgebraElement::from_coeffs(params, coeffs)
}

pub fn check_dims(params: AlgebraParams, m: &Matrix) -> Result<()> {
    let n = params.n();
    if m.nrows() != n || m.ncols() != n {
        return Err(WeylError::DimensionMismatch {
            expected: n,
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    Ok(())
}

/// Unitary DFT matrix F[r, c] = ω^{rc}/√n. It diagonalizes the shift:
/// F·diag(ω^j)·F† equals the canonical shift matrix.
pub fn dft_matrix(params: AlgebraParams) -> Matrix {
    let n = params.n();
    let tab = params.omega_table();
    let s = 1.0 / (n as f64).sqrt();
    Array2::from_shape_fn((n, n), |(r, c)| tab[(r * c) % n] * s)
}

pub fn identity_matrix(n: usize) -> Matrix {
    Array2::from_shape_fn((n, n), |(r, c)| {
        if r == c {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

pub fn conj_transpose(m: &Matrix) -> Matrix {
    m.t().mapv(|z| z.conj())
}

/// Largest entry-wise absolute difference.
pub fn max_abs_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

pub fn max_abs(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest deviation of C†C from the identity.
pub fn unitarity_deviation(c: &Matrix) -> f64 {
    let prod = conj_transpose(c).dot(c);
    max_abs_diff(&prod, &identity_matrix(c.nrows()))
}
