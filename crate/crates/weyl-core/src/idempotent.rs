//! Primitive idempotents ε_ii (the "generalized points"), matrix units
//! ε_ij, minimal left/right ideal bases, and transport of idempotent systems
//! under inner automorphisms, with a quantitative "explosion" metric.

use crate::element::AlgebraElement;
use crate::error::{Result, WeylError};
use crate::linalg;
use crate::matrix::{from_matrix, to_matrix};
use crate::params::AlgebraParams;
use crate::C64;
use ndarray::Array2;

/// ε_ii = (1/n) Σ_k ω^{−ik} e_k^0: idempotent, hermitian, trace 1; its
/// matrix image is the rank-1 projector onto basis ket i.
pub fn primitive_idempotent(params: AlgebraParams, i: i64) -> Result<AlgebraElement> {
    let i = params.check_index(i)?;
    let n = params.n();
    let mut e = AlgebraElement::zero(params);
    let inv_n = 1.0 / n as f64;
    for k in 0..n {
        e.set_coeff(0, k, params.omega_pow(-((i * k) as i64)) * inv_n);
    }
    Ok(e)
}

/// Matrix unit ε_ij = (1/n) Σ_r ω^{−jr} e_r^{j−i}; satisfies
/// ε_ik ε_jm = δ_kj ε_im, and ε_ij† = ε_ji under the crate's involution.
pub fn matrix_unit(params: AlgebraParams, i: i64, j: i64) -> Result<AlgebraElement> {
    let i = params.check_index(i)?;
    let j = params.check_index(j)?;
    let n = params.n();
    let a = params.reduce(j as i64 - i as i64);
    let mut e = AlgebraElement::zero(params);
    let inv_n = 1.0 / n as f64;
    for r in 0..n {
        e.set_coeff(a, r, params.omega_pow(-((j * r) as i64)) * inv_n);
    }
    Ok(e)
}

/// Basis ket of the minimal left ideal generated by ε_00:
/// I_L(i) = (1/n) Σ_k e_k^{−i} = ε_{i0}.
pub fn left_ideal_basis(params: AlgebraParams, i: i64) -> Result<AlgebraElement> {
    matrix_unit(params, i, 0)
}

/// Basis bra of the minimal right ideal: I_R(j) = ε_{0j}; satisfies
/// I_R(i)·I_L(j) = δ_ij ε_00 and I_L(i)·I_R(j) = ε_ij.
pub fn right_ideal_basis(params: AlgebraParams, j: i64) -> Result<AlgebraElement> {
    matrix_unit(params, 0, j)
}

/// Inverse through the matrix image (solve against the identity). Errors on
/// condition number above 1e12 so near-singular elements are reported rather
/// than silently amplified.
pub fn inverse(s: &AlgebraElement) -> Result<AlgebraElement> {
    let m = to_matrix(s);
    let cond = linalg::cond_2(&m)?;
    if !cond.is_finite() || cond > 1e12 {
        return Err(WeylError::IllConditioned { cond });
    }
    let inv = linalg::inverse(&m)?;
    from_matrix(s.params(), &inv)
}

/// Deviations of a candidate idempotent family from the defining relations;
/// all four are maxima of coefficient-wise absolute errors.
#[derive(Clone, Copy, Debug)]
pub struct IdempotentSetCheck {
    /// max_i ‖ε_i² − ε_i‖
    pub idempotency: f64,
    /// max_{i≠j} ‖ε_i ε_j‖
    pub orthogonality: f64,
    /// ‖Σ ε_i − 1‖
    pub resolution: f64,
    /// max_i |trace(ε_i) − 1|
    pub trace: f64,
}

impl IdempotentSetCheck {
    pub fn max_dev(&self) -> f64 {
        self.idempotency
            .max(self.orthogonality)
            .max(self.resolution)
            .max(self.trace)
    }
}

/// Ordered family {ε_00, …, ε_{n−1,n−1}} resolving the identity.
#[derive(Clone, Debug)]
pub struct IdempotentSet {
    params: AlgebraParams,
    elements: Vec<AlgebraElement>,
}

impl IdempotentSet {
    /// The canonical position system {ε_ii}.
    pub fn canonical(params: AlgebraParams) -> Self {
        let elements = (0..params.n() as i64)
            .map(|i| primitive_idempotent(params, i).expect("index in range"))
            .collect();
        Self { params, elements }
    }

    pub fn from_elements(params: AlgebraParams, elements: Vec<AlgebraElement>) -> Self {
        Self { params, elements }
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn elements(&self) -> &[AlgebraElement] {
        &self.elements
    }

    pub fn get(&self, i: usize) -> &AlgebraElement {
        &self.elements[i]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Measure all defining relations.
    pub fn validate(&self) -> Result<IdempotentSetCheck> {
        let n = self.params.n();
        let id = AlgebraElement::identity(self.params);
        let mut idem = 0.0f64;
        let mut orth = 0.0f64;
        let mut tracedev = 0.0f64;
        for (i, e) in self.elements.iter().enumerate() {
            let sq = e.multiply(e)?;
            idem = idem.max(sq.max_dev(e));
            tracedev = tracedev.max((e.trace() - C64::new(1.0, 0.0)).norm());
            for (j, f) in self.elements.iter().enumerate() {
                if i != j {
                    orth = orth.max(e.multiply(f)?.max_abs());
                }
            }
        }
        let sum = AlgebraElement::linear_combine(
            &self
                .elements
                .iter()
                .map(|e| (C64::new(1.0, 0.0), e))
                .collect::<Vec<_>>(),
        )?;
        let resolution = sum.max_dev(&id);
        let _ = n;
        Ok(IdempotentSetCheck {
            idempotency: idem,
            orthogonality: orth,
            resolution,
            trace: tracedev,
        })
    }
}

/// Transport a system along the inner automorphism A ↦ S A S⁻¹. The output
/// satisfies the same idempotent-family relations (automorphisms preserve
/// them); what changes is locality, measured by [`overlap_matrix`] /
/// [`explosion_index`].
pub fn conjugate_set(set: &IdempotentSet, s: &AlgebraElement) -> Result<IdempotentSet> {
    set.params().check_same(&s.params())?;
    let s_inv = inverse(s)?;
    let elements = set
        .elements()
        .iter()
        .map(|e| s.multiply(e)?.multiply(&s_inv))
        .collect::<Result<Vec<_>>>()?;
    Ok(IdempotentSet::from_elements(set.params(), elements))
}

/// Overlap matrix O_jk = trace(new_j · old_k). Rows always sum to 1 (trace
/// identity); entries are exactly real when the conjugating element is
/// unitary (then O_jk = |U_kj|²), complex in general.
pub fn overlap_matrix(new_set: &IdempotentSet, old_set: &IdempotentSet) -> Result<Array2<C64>> {
    let n = new_set.len();
    let mut o = Array2::from_elem((n, old_set.len()), C64::new(0.0, 0.0));
    for (j, nj) in new_set.elements().iter().enumerate() {
        for (k, ok) in old_set.elements().iter().enumerate() {
            o[[j, k]] = nj.multiply(ok)?.trace();
        }
    }
    Ok(o)
}

/// Mean over rows of (1 − max_k Re O_jk): 0 for a pure relabeling, → 1−1/n
/// for maximal spreading of every point over all old points.
pub fn explosion_index(overlap: &Array2<C64>) -> f64 {
    let rows = overlap.nrows();
    if rows == 0 {
        return 0.0;
    }
    let mut acc = 0.0;
    for j in 0..rows {
        let row_max = (0..overlap.ncols())
            .map(|k| overlap[[j, k]].re)
            .fold(f64::NEG_INFINITY, f64::max);
        acc += 1.0 - row_max;
    }
    acc / rows as f64
}
