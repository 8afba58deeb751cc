//! Nearest-neighbour operators on the cyclic lattice, the discrete wave
//! equation they generate, transport of fields and operators under unitary
//! conjugation, and locality/delocalization diagnostics.

use crate::element::AlgebraElement;
use crate::error::{Result, WeylError};
use crate::limits::{expectation, gaussian_state, GaussianSpec, WidthRule};
use crate::linalg;
use crate::matrix::{conj_transpose, dft_matrix, to_matrix, unitarity_deviation};
use crate::operators::momentum_operator;
use crate::params::AlgebraParams;
use crate::{C64, Matrix};
use std::f64::consts::PI;

/// Documents the identification of the neighbour operators with algebra
/// generators under the crate's representation convention.
pub const NEIGHBOUR_CONVENTION: &str =
    "N+ = e_0^{+1} (the shift generator) acting by (N+ psi)_j = psi_{j+1}; \
     N- = e_0^{-1} acting by (N- psi)_j = psi_{j-1}";

/// Complex field over the n cyclic lattice sites.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField {
    params: AlgebraParams,
    values: Vec<C64>,
}

impl LatticeField {
    pub fn new(params: AlgebraParams, values: Vec<C64>) -> Result<Self> {
        if values.len() != params.n() {
            return Err(WeylError::BadAmplitudeCount {
                expected: params.n(),
                got: values.len(),
            });
        }
        Ok(Self { params, values })
    }

    pub fn zeros(params: AlgebraParams) -> Self {
        Self {
            params,
            values: vec![C64::new(0.0, 0.0); params.n()],
        }
    }

    pub fn constant(params: AlgebraParams, value: C64) -> Self {
        Self {
            params,
            values: vec![value; params.n()],
        }
    }

    /// 1 at `site` (mod n), 0 elsewhere.
    pub fn delta(params: AlgebraParams, site: i64) -> Self {
        let mut f = Self::zeros(params);
        f.values[params.reduce(site)] = C64::new(1.0, 0.0);
        f
    }

    /// ψ_j = ω^{kj} (unnormalized plane wave).
    pub fn fourier_mode(params: AlgebraParams, k: i64) -> Self {
        let tab = params.omega_table();
        let n = params.n();
        let k = params.reduce(k);
        Self {
            params,
            values: (0..n).map(|j| tab[(k * j) % n]).collect(),
        }
    }

    pub fn from_fn(params: AlgebraParams, f: impl Fn(usize) -> C64) -> Self {
        Self {
            params,
            values: (0..params.n()).map(f).collect(),
        }
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// ⟨self, other⟩ with the left argument conjugated.
    pub fn inner(&self, other: &Self) -> C64 {
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }
}

/// N⁺, the forward neighbour operator: (N⁺ψ)_j = ψ_{j+1} with periodic
/// wrap. It is exactly the shift generator e_0^{+1}; consequently a field
/// concentrated at site s is carried to site s−1 (the new field's value at
/// s−1 reads the old value at s).
pub fn neighbour_plus(params: AlgebraParams) -> AlgebraElement {
    AlgebraElement::basis_element(params, 1, 0)
}

/// N⁻, the backward neighbour operator: (N⁻ψ)_j = ψ_{j−1}; equals e_0^{−1}
/// and is both the inverse and the adjoint of N⁺.
pub fn neighbour_minus(params: AlgebraParams) -> AlgebraElement {
    AlgebraElement::basis_element(params, -1, 0)
}

/// Apply an algebra element to a field through its matrix image.
pub fn apply_element(e: &AlgebraElement, f: &LatticeField) -> Result<LatticeField> {
    e.params().check_same(&f.params())?;
    let m = to_matrix(e);
    let n = f.n();
    let values = (0..n)
        .map(|r| (0..n).map(|c| m[[r, c]] * f.values[c]).sum())
        .collect();
    LatticeField::new(f.params(), values)
}

/// (N⁺ − N⁻)f: the two-sided difference ψ_{j+1} − ψ_{j−1}, the lattice
/// image of 2·(lattice spacing)·∂/∂x. Annihilates constants and, on even
/// lattices, the alternating field.
pub fn central_difference(f: &LatticeField) -> LatticeField {
    let n = f.n();
    let v = &f.values;
    LatticeField::from_fn(f.params, |j| v[(j + 1) % n] - v[(j + n - 1) % n])
}

/// (N⁺ − 2 + N⁻)f: the second difference ψ_{j+1} − 2ψ_j + ψ_{j−1}, negative
/// semi-definite as a quadratic form, with Fourier-mode eigenvalues
/// −4sin²(πk/n).
pub fn laplacian(f: &LatticeField) -> LatticeField {
    let n = f.n();
    let v = &f.values;
    LatticeField::from_fn(f.params, |j| {
        v[(j + 1) % n] - v[j] - v[j] + v[(j + n - 1) % n]
    })
}

/// Parameters of a second-order wave integration ∂²ψ/∂t² = α·Δψ.
#[derive(Clone, Copy, Debug)]
pub struct WaveConfig {
    /// Stiffness constant of the wave equation (1/time²), > 0.
    pub alpha: f64,
    /// Time step, > 0, constrained by √α·dt ≤ 0.5.
    pub dt: f64,
    /// Number of leapfrog steps, ≥ 1.
    pub steps: usize,
    /// Record the field every this many steps (step 0 and the final step
    /// are always recorded), ≥ 1.
    pub sample_every: usize,
}

impl WaveConfig {
    pub fn new(alpha: f64, dt: f64, steps: usize) -> Self {
        Self {
            alpha,
            dt,
            steps,
            sample_every: 1,
        }
    }

    pub fn with_sample_every(mut self, sample_every: usize) -> Self {
        self.sample_every = sample_every;
        self
    }

    /// √α·dt, which must not exceed 0.5 (half the CFL limit of the scheme,
    /// enforced so that the energy-conservation diagnostics stay meaningful
    /// far from the stability edge).
    pub fn stability_number(&self) -> f64 {
        self.alpha.sqrt() * self.dt
    }

    fn validate(&self) -> Result<()> {
        // NaN-safe: NaN or infinite parameters must be rejected too
        let bad_real = |x: f64| x <= 0.0 || !x.is_finite();
        if bad_real(self.alpha) || bad_real(self.dt) || self.steps == 0 || self.sample_every == 0 {
            return Err(WeylError::UnstableTimeStep(self.stability_number()));
        }
        if self.stability_number() > 0.5 {
            return Err(WeylError::UnstableTimeStep(self.stability_number()));
        }
        Ok(())
    }
}

/// Integration record of a wave run.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub params: AlgebraParams,
    pub config: WaveConfig,
    /// Step indices at which `fields` were recorded.
    pub recorded_steps: Vec<usize>,
    /// Field snapshots, one per entry of `recorded_steps`.
    pub fields: Vec<Vec<C64>>,
    /// Time-synchronized energy ½Σ|v_j|² + (α/2)Σ|ψ_{j+1}−ψ_j|² at every
    /// step 0..=steps. It oscillates at O(dt²) around the conserved value.
    pub sync_energy: Vec<f64>,
    /// The leapfrog invariant ½Σ|v_{m+½,j}|² + (α/2)Re⟨δψ_m, δψ_{m+1}⟩ for
    /// each step window m = 0..steps; conserved to rounding, so the drift
    /// bound is measured on this series.
    pub invariant_energy: Vec<f64>,
    /// (max − min)/|first| over `invariant_energy`.
    pub energy_drift: f64,
}

fn forward_difference(v: &[C64]) -> Vec<C64> {
    let n = v.len();
    (0..n).map(|j| v[(j + 1) % n] - v[j]).collect()
}

fn norm_sqr_sum(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum()
}

/// Leapfrog (velocity-Verlet) integration of ∂²ψ/∂t² = α(ψ_{j+1} − 2ψ_j +
/// ψ_{j−1}) from initial field `f0` and initial velocity `v0`.
pub fn wave_evolve(f0: &LatticeField, v0: &LatticeField, cfg: &WaveConfig) -> Result<Trajectory> {
    f0.params().check_same(&v0.params())?;
    cfg.validate()?;
    let params = f0.params();
    let n = params.n();
    let a = cfg.alpha;
    let dt = cfg.dt;

    let mut psi: Vec<C64> = f0.values.clone();
    // half-step kick initializes the staggered velocity
    let lap0 = laplacian(f0);
    let mut v_half: Vec<C64> = (0..n)
        .map(|j| v0.values[j] + 0.5 * dt * a * lap0.values[j])
        .collect();

    let mut recorded_steps = vec![0usize];
    let mut fields = vec![psi.clone()];
    let grad0 = forward_difference(&psi);
    let mut sync_energy =
        vec![0.5 * norm_sqr_sum(&v0.values) + 0.5 * a * norm_sqr_sum(&grad0)];
    let mut invariant_energy = Vec::with_capacity(cfg.steps);

    let mut grad_prev = grad0;
    for m in 0..cfg.steps {
        let psi_next: Vec<C64> = (0..n).map(|j| psi[j] + dt * v_half[j]).collect();
        let grad_next = forward_difference(&psi_next);
        let cross: f64 = grad_prev
            .iter()
            .zip(&grad_next)
            .map(|(g0, g1)| (g0.conj() * g1).re)
            .sum();
        invariant_energy.push(0.5 * norm_sqr_sum(&v_half) + 0.5 * a * cross);

        let lap_next = laplacian(&LatticeField {
            params,
            values: psi_next.clone(),
        });
        let v_half_next: Vec<C64> = (0..n)
            .map(|j| v_half[j] + dt * a * lap_next.values[j])
            .collect();
        let v_full: Vec<C64> = (0..n)
            .map(|j| 0.5 * (v_half[j] + v_half_next[j]))
            .collect();
        sync_energy.push(0.5 * norm_sqr_sum(&v_full) + 0.5 * a * norm_sqr_sum(&grad_next));

        psi = psi_next;
        v_half = v_half_next;
        grad_prev = grad_next;

        let step = m + 1;
        if step % cfg.sample_every == 0 || step == cfg.steps {
            recorded_steps.push(step);
            fields.push(psi.clone());
        }
    }

    let first = invariant_energy[0];
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for &e in &invariant_energy {
        lo = lo.min(e);
        hi = hi.max(e);
    }
    let energy_drift = if first.abs() > 0.0 {
        (hi - lo) / first.abs()
    } else {
        hi - lo
    };

    Ok(Trajectory {
        params,
        config: *cfg,
        recorded_steps,
        fields,
        sync_energy,
        invariant_energy,
        energy_drift,
    })
}

#[derive(Clone, Copy, Debug)]
pub struct DispersionRow {
    pub k: usize,
    pub omega_expected: f64,
    pub omega_measured: f64,
    pub rel_error: f64,
}

#[derive(Clone, Debug)]
pub struct DispersionReport {
    pub rows: Vec<DispersionRow>,
    pub worst_rel_error: f64,
}

/// Evolve each Fourier mode k = 1..n−1 from rest and compare its measured
/// oscillation frequency against the lattice dispersion relation
/// Ω(k) = 2√α·|sin(πk/n)|. The frequency is read off the mode-coefficient
/// series c_m through the exact three-term identity
/// c_{m+1} + c_{m−1} = 2cos(Ω̂·dt)·c_m, so the residual error is the
/// integrator's own O((Ω·dt)²) frequency warp; it shrinks quadratically as
/// dt → 0.
pub fn dispersion_check(params: AlgebraParams, cfg: &WaveConfig) -> Result<DispersionReport> {
    cfg.validate()?;
    let n = params.n();
    let zero = LatticeField::zeros(params);
    let mut rows = Vec::with_capacity(n.saturating_sub(1));
    let mut worst = 0.0f64;
    let mode_cfg = WaveConfig {
        sample_every: 1,
        ..*cfg
    };
    for k in 1..n {
        let mode = LatticeField::fourier_mode(params, k as i64);
        let traj = wave_evolve(&mode, &zero, &mode_cfg)?;
        let c: Vec<f64> = traj
            .fields
            .iter()
            .map(|f| (mode.inner(&LatticeField::new(params, f.clone()).unwrap()).re) / n as f64)
            .collect();
        let m_max = c.len() - 1;
        let mut num = 0.0;
        let mut den = 0.0;
        for m in 1..m_max {
            num += c[m] * (c[m + 1] + c[m - 1]);
            den += 2.0 * c[m] * c[m];
        }
        let cos_theta = (num / den).clamp(-1.0, 1.0);
        let omega_measured = cos_theta.acos() / cfg.dt;
        let omega_expected = 2.0 * cfg.alpha.sqrt() * (PI * k as f64 / n as f64).sin().abs();
        let rel_error = (omega_measured - omega_expected).abs() / omega_expected;
        worst = worst.max(rel_error);
        rows.push(DispersionRow {
            k,
            omega_expected,
            omega_measured,
            rel_error,
        });
    }
    Ok(DispersionReport {
        rows,
        worst_rel_error: worst,
    })
}

fn check_unitary(params: AlgebraParams, c: &Matrix) -> Result<()> {
    crate::matrix::check_dims(params, c)?;
    let dev = unitarity_deviation(c);
    if dev > params.tol() {
        return Err(WeylError::NotUnitary { dev });
    }
    Ok(())
}

/// Transport a field under the automorphism induced by the unitary C:
/// ψ′_j = Σ_k C̄_{jk} ψ_k. Norm-preserving.
pub fn apply_automorphism_field(f: &LatticeField, c: &Matrix) -> Result<LatticeField> {
    check_unitary(f.params(), c)?;
    let n = f.n();
    let values = (0..n)
        .map(|j| (0..n).map(|k| c[[j, k]].conj() * f.values[k]).sum())
        .collect();
    LatticeField::new(f.params(), values)
}

/// Transport an operator under the automorphism induced by the unitary C:
/// M′ = C†MC, whose entries are M′_{kl} = Σ_{j,m} C̄_{jk} M_{jm} C_{ml}.
/// The spectrum is preserved exactly; locality generally is not.
pub fn apply_automorphism_operator(m: &Matrix, c: &Matrix) -> Result<Matrix> {
    if m.nrows() != m.ncols() || m.nrows() != c.nrows() {
        return Err(WeylError::DimensionMismatch {
            expected: c.nrows(),
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let params = AlgebraParams::new(c.nrows())?;
    check_unitary(params, c)?;
    Ok(conj_transpose(c).dot(&m.dot(c)))
}

/// Fraction of the squared matrix mass lying within the cyclic band
/// |i − j| ≤ radius. Defined as 1 for the zero matrix.
pub fn band_energy(m: &Matrix, radius: usize) -> f64 {
    let n = m.nrows();
    let mut band = 0.0;
    let mut total = 0.0;
    for i in 0..n {
        for j in 0..n {
            let w = m[[i, j]].norm_sqr();
            total += w;
            let d = (i as i64 - j as i64).rem_euclid(n as i64) as usize;
            if d.min(n - d) <= radius {
                band += w;
            }
        }
    }
    if total > 0.0 {
        band / total
    } else {
        1.0
    }
}

/// Locality diagnostics of a square matrix: tridiagonal (radius 1, cyclic)
/// band energy, its complement, and the spectrum in the canonical order.
#[derive(Clone, Debug)]
pub struct LocalityReport {
    pub band_energy: f64,
    pub delocalization_index: f64,
    pub spectrum: Vec<C64>,
}

impl LocalityReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "band_energy": self.band_energy,
            "delocalization_index": self.delocalization_index,
            "spectrum": self.spectrum.iter().map(|z| vec![z.re, z.im]).collect::<Vec<_>>(),
        })
    }
}

pub fn locality_report(m: &Matrix) -> Result<LocalityReport> {
    if m.nrows() != m.ncols() {
        return Err(WeylError::DimensionMismatch {
            expected: m.nrows(),
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let be = band_energy(m, 1);
    Ok(LocalityReport {
        band_energy: be,
        delocalization_index: 1.0 - be,
        spectrum: linalg::eigvals(m)?,
    })
}

/// Band energies of V†MV for each member of a family under one shared
/// unitary V — a diagnostic for whether the family is simultaneously
/// band-reducible.
pub fn band_energies_under(v: &Matrix, family: &[Matrix]) -> Result<Vec<f64>> {
    family
        .iter()
        .map(|m| Ok(band_energy(&apply_automorphism_operator(m, v)?, 1)))
        .collect()
}

/// Given a unitary matrix whose spectrum is exactly the simple n-th roots
/// of unity (an "exploded" neighbour operator), return a unitary V with
/// V†·Np·V equal to the canonical cyclic shift. The gauge is fixed
/// deterministically: eigenvectors are matched to the roots ω^j, each is
/// phased so its largest-magnitude component (first index on ties) is real
/// positive, and V = W·F† where W collects the phased eigenvectors in root
/// order and F is the DFT.
pub fn recover_canonical_basis(np: &Matrix) -> Result<Matrix> {
    if np.nrows() != np.ncols() {
        return Err(WeylError::DimensionMismatch {
            expected: np.nrows(),
            rows: np.nrows(),
            cols: np.ncols(),
        });
    }
    let params = AlgebraParams::new(np.nrows())?;
    let n = params.n();
    let dev = unitarity_deviation(np);
    if dev > 1e-6 {
        return Err(WeylError::NotUnitary { dev });
    }
    let (vals, vecs) = linalg::eig(np)?;
    const MATCH_TOL: f64 = 1e-6;
    let mut used = vec![false; n];
    let mut w = Matrix::zeros((n, n));
    for j in 0..n {
        let target = params.omega_pow(j as i64);
        let mut found: Option<usize> = None;
        for (i, &v) in vals.iter().enumerate() {
            if (v - target).norm() < MATCH_TOL {
                if used[i] {
                    continue;
                }
                if found.is_some() {
                    return Err(WeylError::NotShiftSpectrum {
                        detail: format!("eigenvalue near omega^{j} is not simple"),
                    });
                }
                found = Some(i);
            }
        }
        let i = found.ok_or_else(|| WeylError::NotShiftSpectrum {
            detail: format!("no eigenvalue within {MATCH_TOL:.0e} of omega^{j}"),
        })?;
        used[i] = true;
        // normalize and phase-fix the eigenvector
        let mut col: Vec<C64> = (0..n).map(|r| vecs[[r, i]]).collect();
        let norm = norm_sqr_sum(&col).sqrt();
        if norm == 0.0 {
            return Err(WeylError::NotShiftSpectrum {
                detail: format!("zero eigenvector returned for omega^{j}"),
            });
        }
        for z in &mut col {
            *z /= norm;
        }
        let max_mag = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let anchor = col
            .iter()
            .position(|z| z.norm() >= max_mag * (1.0 - 1e-9))
            .expect("non-zero vector has a maximal component");
        let phase = col[anchor] / col[anchor].norm();
        for z in &mut col {
            *z /= phase;
        }
        for r in 0..n {
            w[[r, j]] = col[r];
        }
    }
    Ok(w.dot(&conj_transpose(&dft_matrix(params))))
}

#[derive(Clone, Copy, Debug)]
pub struct MomentumLinkRow {
    pub n: usize,
    /// ⟨(n/4πi)(N⁺ − N⁻)⟩ on the test state.
    pub derivative_term: f64,
    /// ⟨P⟩ − (n−1)/2 on the test state.
    pub momentum_term: f64,
    /// |derivative_term + momentum_term − ½|; → 0 as n → ∞.
    pub link_error: f64,
}

/// Quantifies "momentum is displacement to the nearest neighbour": on a
/// mid-lattice Gaussian carrying three units of momentum above the spectral
/// midpoint, the hermitian difference quotient (n/4πi)(N⁺ − N⁻) reproduces
/// the centered momentum expectation up to a wrap-induced sign and the ½
/// offset between the spectral midpoint n/2 and the operator center
/// (n−1)/2. The three-unit displacement keeps the comparison away from the
/// trivial zero at the midpoint itself.
pub fn momentum_neighbour_link(params: AlgebraParams) -> Result<MomentumLinkRow> {
    let n = params.n();
    let nf = n as f64;
    let psi = gaussian_state(
        params,
        &GaussianSpec {
            center: nf / 2.0,
            width: WidthRule::default().width(n),
            momentum_shift: nf / 2.0 + 3.0,
        },
    )?;
    let coeff = C64::new(0.0, -nf / (4.0 * PI)); // n/(4πi)
    let diff = AlgebraElement::linear_combine(&[
        (coeff, &neighbour_plus(params)),
        (-coeff, &neighbour_minus(params)),
    ])?;
    let derivative_term = expectation(&diff, &psi)?.re;
    let momentum_term = expectation(&momentum_operator(params), &psi)?.re - (nf - 1.0) / 2.0;
    Ok(MomentumLinkRow {
        n,
        derivative_term,
        momentum_term,
        link_error: (derivative_term + momentum_term - 0.5).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{identity_matrix, max_abs_diff};
    use crate::rng;

    fn p(n: usize) -> AlgebraParams {
        AlgebraParams::new(n).unwrap()
    }

    fn shift_matrix(n: usize) -> Matrix {
        let mut s = Matrix::zeros((n, n));
        for r in 0..n {
            s[[r, (r + 1) % n]] = C64::new(1.0, 0.0);
        }
        s
    }

    #[test]
    fn neighbour_operators_are_the_shift_generators() {
        let params = p(4);
        assert_eq!(
            neighbour_plus(params),
            AlgebraElement::generator_shift(params)
        );
        assert!(max_abs_diff(&to_matrix(&neighbour_plus(params)), &shift_matrix(4)) < 1e-15);
        let prod = neighbour_plus(params)
            .multiply(&neighbour_minus(params))
            .unwrap();
        assert!(prod.approx_eq(&AlgebraElement::identity(params), 1e-15));
        let pow = neighbour_plus(p(7)).pow(7).unwrap();
        assert!(pow.approx_eq(&AlgebraElement::identity(p(7)), 1e-12));
    }

    #[test]
    fn forward_neighbour_reads_the_next_site() {
        // (N⁺ψ)_j = ψ_{j+1}: a delta bump at site 2 is seen from site 1
        let params = p(5);
        let f = LatticeField::delta(params, 2);
        let g = apply_element(&neighbour_plus(params), &f).unwrap();
        assert!(g.max_abs_diff(&LatticeField::delta(params, 1)) < 1e-15);
        let h = apply_element(&neighbour_minus(params), &f).unwrap();
        assert!(h.max_abs_diff(&LatticeField::delta(params, 3)) < 1e-15);
        // wrap at the boundary
        let edge = apply_element(&neighbour_plus(params), &LatticeField::delta(params, 0)).unwrap();
        assert!(edge.max_abs_diff(&LatticeField::delta(params, 4)) < 1e-15);
    }

    #[test]
    fn stencils_agree_with_the_element_action() {
        let params = p(9);
        let mut rng = rng::seeded(12);
        let f = LatticeField::new(params, (0..9).map(|_| rng::complex_normal(&mut rng)).collect())
            .unwrap();
        let diff_el = neighbour_plus(params).sub(&neighbour_minus(params)).unwrap();
        let lap_el = AlgebraElement::linear_combine(&[
            (C64::new(1.0, 0.0), &neighbour_plus(params)),
            (C64::new(-2.0, 0.0), &AlgebraElement::identity(params)),
            (C64::new(1.0, 0.0), &neighbour_minus(params)),
        ])
        .unwrap();
        assert!(
            central_difference(&f).max_abs_diff(&apply_element(&diff_el, &f).unwrap()) < 1e-13
        );
        assert!(laplacian(&f).max_abs_diff(&apply_element(&lap_el, &f).unwrap()) < 1e-13);
    }

    #[test]
    fn difference_annihilates_constant_and_alternating_fields() {
        let params = p(8);
        let c = LatticeField::constant(params, C64::new(2.5, -1.0));
        assert!(central_difference(&c).max_abs() < 1e-15);
        assert!(laplacian(&c).max_abs() < 1e-15);
        let alt = LatticeField::from_fn(params, |j| {
            C64::new(if j % 2 == 0 { 1.0 } else { -1.0 }, 0.0)
        });
        assert!(central_difference(&alt).max_abs() < 1e-15);
    }

    #[test]
    fn central_difference_converges_at_second_order() {
        let err = |n: usize| -> f64 {
            let params = p(n);
            let nf = n as f64;
            let f = LatticeField::from_fn(params, |j| {
                C64::new((std::f64::consts::TAU * j as f64 / nf).sin(), 0.0)
            });
            let d = central_difference(&f);
            let h = std::f64::consts::TAU / nf;
            (0..n)
                .map(|j| {
                    let exact = 2.0 * h * (std::f64::consts::TAU * j as f64 / nf).cos();
                    (d.values()[j].re - exact).abs() / (2.0 * h)
                })
                .fold(0.0, f64::max)
        };
        let (e32, e64, e128) = (err(32), err(64), err(128));
        // relative error ≈ h²/6
        assert!(e64 < 2e-3, "n=64 relative error {e64:.3e}");
        let r1 = e32 / e64;
        let r2 = e64 / e128;
        assert!((r1 - 4.0).abs() < 0.2, "order-2 ratio was {r1}");
        assert!((r2 - 4.0).abs() < 0.2, "order-2 ratio was {r2}");
    }

    #[test]
    fn laplacian_stencil_and_mode_eigenvalue() {
        let params = p(5);
        let d = laplacian(&LatticeField::delta(params, 0));
        let expected: Vec<f64> = vec![-2.0, 1.0, 0.0, 0.0, 1.0];
        for (j, e) in expected.iter().enumerate() {
            assert!((d.values()[j] - C64::new(*e, 0.0)).norm() < 1e-15);
        }
        // mode k=2 at n=8: eigenvalue −4sin²(π/4) = −2
        let params = p(8);
        let mode = LatticeField::fourier_mode(params, 2);
        let lm = laplacian(&mode);
        for j in 0..8 {
            assert!((lm.values()[j] - C64::new(-2.0, 0.0) * mode.values()[j]).norm() < 1e-12);
        }
    }

    #[test]
    fn laplacian_quadratic_form_is_negative() {
        let params = p(16);
        let mut rng = rng::seeded(9);
        for _ in 0..20 {
            let f = LatticeField::new(
                params,
                (0..16).map(|_| rng::complex_normal(&mut rng)).collect(),
            )
            .unwrap();
            let q = f.inner(&laplacian(&f)).re;
            assert!(q <= 1e-12, "quadratic form {q} must be ≤ 0");
        }
    }

    #[test]
    fn zero_initial_data_stays_zero() {
        let params = p(6);
        let z = LatticeField::zeros(params);
        let traj = wave_evolve(&z, &z, &WaveConfig::new(1.0, 0.1, 50)).unwrap();
        for f in &traj.fields {
            assert!(f.iter().all(|v| v.norm() == 0.0));
        }
        assert_eq!(traj.recorded_steps.len(), 51);
    }

    #[test]
    fn unstable_time_step_is_rejected_by_name() {
        let params = p(6);
        let z = LatticeField::zeros(params);
        let err = wave_evolve(&z, &z, &WaveConfig::new(4.0, 0.3, 10)).unwrap_err();
        match err {
            WeylError::UnstableTimeStep(s) => assert!((s - 0.6).abs() < 1e-12),
            other => panic!("expected stability error, got {other:?}"),
        }
        // boundary case exactly at the limit is allowed
        assert!(wave_evolve(&z, &z, &WaveConfig::new(4.0, 0.25, 10)).is_ok());
    }

    #[test]
    fn sampling_stride_records_first_and_last_steps() {
        let params = p(4);
        let f = LatticeField::delta(params, 0);
        let z = LatticeField::zeros(params);
        let traj =
            wave_evolve(&f, &z, &WaveConfig::new(1.0, 0.1, 10).with_sample_every(4)).unwrap();
        assert_eq!(traj.recorded_steps, vec![0, 4, 8, 10]);
        assert_eq!(traj.fields.len(), 4);
    }

    #[test]
    fn leapfrog_invariant_is_conserved_to_rounding() {
        let params = p(64);
        let mut rng = rng::seeded(4);
        let f0 = LatticeField::new(params, rng::random_smooth_field(params, &mut rng, 3)).unwrap();
        let v0 = LatticeField::zeros(params);
        let traj = wave_evolve(
            &f0,
            &v0,
            &WaveConfig::new(1.0, 0.05, 10_000).with_sample_every(1000),
        )
        .unwrap();
        assert!(
            traj.energy_drift < 1e-9,
            "invariant drift {:.3e}",
            traj.energy_drift
        );
        // the synchronized energy oscillates at O(dt²) but must not drift
        // beyond that band
        let e0 = traj.sync_energy[0];
        let (lo, hi) = traj
            .sync_energy
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &e| {
                (l.min(e), h.max(e))
            });
        assert!((hi - lo) / e0.abs() < 1e-2, "sync spread {:.3e}", (hi - lo) / e0);
        // and it tracks the invariant closely
        let gap = traj
            .sync_energy
            .iter()
            .zip(&traj.invariant_energy)
            .map(|(s, i)| (s - i).abs())
            .fold(0.0, f64::max);
        assert!(gap / e0.abs() < 1e-2);
    }

    #[test]
    fn real_initial_data_stays_real() {
        let params = p(12);
        let f0 = LatticeField::from_fn(params, |j| C64::new((j as f64).cos(), 0.0));
        let v0 = LatticeField::zeros(params);
        let traj = wave_evolve(&f0, &v0, &WaveConfig::new(1.0, 0.1, 200)).unwrap();
        for f in &traj.fields {
            for v in f {
                assert_eq!(v.im, 0.0);
            }
        }
    }

    #[test]
    fn dispersion_matches_the_lattice_relation() {
        let params = p(32);
        // frozen integrator frequency warp: worst relative error is
        // asin(√α·dt)/(√α·dt) − 1 at the band edge
        let report = dispersion_check(params, &WaveConfig::new(1.0, 0.05, 1000)).unwrap();
        assert!(
            report.worst_rel_error > 4.0e-4 && report.worst_rel_error < 4.5e-4,
            "worst {:.4e}",
            report.worst_rel_error
        );
        let report = dispersion_check(params, &WaveConfig::new(1.0, 0.02, 1000)).unwrap();
        assert!(
            report.worst_rel_error < 1e-4,
            "worst {:.4e}",
            report.worst_rel_error
        );
        assert!(report.worst_rel_error > 5e-5, "estimator suspiciously exact");
        assert_eq!(report.rows.len(), 31);
        for row in &report.rows {
            assert!(row.omega_expected > 0.0);
        }
    }

    #[test]
    fn field_transport_follows_the_conjugate_rule() {
        let params = p(8);
        let f = LatticeField::delta(params, 3);
        let id = identity_matrix(8);
        assert!(apply_automorphism_field(&f, &id).unwrap().max_abs_diff(&f) < 1e-15);
        // DFT explodes a position delta into a flat-magnitude field
        let dft = dft_matrix(params);
        let g = apply_automorphism_field(&f, &dft).unwrap();
        let expect = 1.0 / 8.0f64.sqrt();
        for v in g.values() {
            assert!((v.norm() - expect).abs() < 1e-12);
        }
        assert!((g.norm() - 1.0).abs() < 1e-12);
        // norm preservation under a seeded random unitary
        let params = p(16);
        let mut rng = rng::seeded(16);
        let u = rng::haar_unitary(16, &mut rng);
        let f = LatticeField::new(
            params,
            (0..16).map(|_| rng::complex_normal(&mut rng)).collect(),
        )
        .unwrap();
        let g = apply_automorphism_field(&f, &u).unwrap();
        assert!((g.norm() - f.norm()).abs() < 1e-10);
    }

    #[test]
    fn transport_pair_is_compatible_exactly_for_symmetric_unitaries() {
        // Fields move by C̄ and operators by C†MC; the quadratic form
        // ⟨ψ′, M′ψ′⟩ = ⟨ψ, Mψ⟩ survives iff Cᵀ = C, which covers the DFT.
        fn form(m: &Matrix, f: &LatticeField) -> C64 {
            let n = f.n();
            (0..n)
                .map(|j| {
                    let row: C64 = (0..n).map(|k| m[[j, k]] * f.values()[k]).sum();
                    f.values()[j].conj() * row
                })
                .sum()
        }
        let n = 8;
        let params = p(n);
        let mut rng = rng::seeded(21);
        let f = LatticeField::new(
            params,
            (0..n).map(|_| rng::complex_normal(&mut rng)).collect(),
        )
        .unwrap();
        let m = shift_matrix(n);
        let before = form(&m, &f);

        let dft = dft_matrix(params);
        let f2 = apply_automorphism_field(&f, &dft).unwrap();
        let m2 = apply_automorphism_operator(&m, &dft).unwrap();
        assert!((form(&m2, &f2) - before).norm() < 1e-10);

        // a generic (non-symmetric) unitary breaks the joint identity even
        // though each transport preserves its own invariants separately
        let u = rng::haar_unitary(n, &mut rng);
        let asym = max_abs_diff(&u, &u.t().to_owned());
        assert!(asym > 1e-3, "haar draw unexpectedly symmetric: {asym:.2e}");
        let f3 = apply_automorphism_field(&f, &u).unwrap();
        let m3 = apply_automorphism_operator(&m, &u).unwrap();
        assert!((f3.norm() - f.norm()).abs() < 1e-10);
        assert!((form(&m3, &f3) - before).norm() > 1e-2);
    }

    #[test]
    fn non_unitary_transport_is_rejected() {
        let params = p(4);
        let f = LatticeField::delta(params, 0);
        let mut bad = identity_matrix(4);
        bad[[0, 0]] = C64::new(2.0, 0.0);
        assert!(matches!(
            apply_automorphism_field(&f, &bad),
            Err(WeylError::NotUnitary { .. })
        ));
        assert!(matches!(
            apply_automorphism_operator(&shift_matrix(4), &bad),
            Err(WeylError::NotUnitary { .. })
        ));
    }

    #[test]
    fn operator_transport_preserves_the_spectrum() {
        let n = 12;
        let mut rng = rng::seeded(5);
        let u = rng::haar_unitary(n, &mut rng);
        let s = shift_matrix(n);
        let moved = apply_automorphism_operator(&s, &u).unwrap();
        let got = linalg::eigvals(&moved).unwrap();
        let params = p(n);
        let want: Vec<C64> = (0..n as i64).map(|j| params.omega_pow(j)).collect();
        assert!(linalg::spectrum_match_distance(&got, &want) < 1e-9);
        // identity transport is the identity map
        let same = apply_automorphism_operator(&s, &identity_matrix(n)).unwrap();
        assert!(max_abs_diff(&same, &s) < 1e-15);
    }

    #[test]
    fn random_transport_delocalizes_while_canonical_is_banded() {
        let n = 16;
        let s = shift_matrix(n);
        assert!((band_energy(&s, 1) - 1.0).abs() < 1e-15);
        let mut rng = rng::seeded(7);
        let u = rng::haar_unitary(n, &mut rng);
        let moved = apply_automorphism_operator(&s, &u).unwrap();
        assert!(
            band_energy(&moved, 1) < 0.5,
            "band energy {:.3}",
            band_energy(&moved, 1)
        );
    }

    #[test]
    fn locality_report_on_canonical_and_exploded_shift() {
        let params = p(4);
        let s = shift_matrix(4);
        let rep = locality_report(&s).unwrap();
        assert!((rep.band_energy - 1.0).abs() < 1e-15);
        assert!(rep.delocalization_index.abs() < 1e-15);
        // DFT conjugation diagonalizes the shift: local again in the dual
        // description
        let dft = dft_matrix(params);
        let diag = apply_automorphism_operator(&s, &dft).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert!(diag[[i, j]].norm() < 1e-12);
                }
            }
        }
        let rep2 = locality_report(&diag).unwrap();
        assert!((rep2.band_energy - 1.0).abs() < 1e-12);
        // spectra agree
        assert!(linalg::spectrum_match_distance(&rep.spectrum, &rep2.spectrum) < 1e-9);
    }

    #[test]
    fn delocalization_with_spectrum_invariance_at_n32() {
        let n = 32;
        let s = shift_matrix(n);
        let mut rng = rng::seeded(7);
        let u = rng::haar_unitary(n, &mut rng);
        let moved = apply_automorphism_operator(&s, &u).unwrap();
        let rep = locality_report(&moved).unwrap();
        assert!(rep.delocalization_index > 0.3, "{}", rep.delocalization_index);
        let base = locality_report(&s).unwrap();
        assert!(linalg::spectrum_match_distance(&rep.spectrum, &base.spectrum) < 1e-9);
    }

    #[test]
    fn band_energy_of_zero_matrix_and_json_shape() {
        assert_eq!(band_energy(&Matrix::zeros((5, 5)), 1), 1.0);
        let rep = locality_report(&shift_matrix(3)).unwrap();
        let json = rep.to_json();
        assert!(json["band_energy"].as_f64().is_some());
        assert_eq!(json["spectrum"].as_array().unwrap().len(), 3);
        assert_eq!(json["spectrum"][0].as_array().unwrap().len(), 2);
    }

    #[test]
    fn family_band_reducibility_diagnostic() {
        let n = 8;
        let params = p(n);
        let s = shift_matrix(n);
        let st = conj_transpose(&s);
        let family = vec![s.clone(), st];
        let under_id = band_energies_under(&identity_matrix(n), &family).unwrap();
        assert!(under_id.iter().all(|&e| (e - 1.0).abs() < 1e-15));
        let mut rng = rng::seeded(2);
        let u = rng::haar_unitary(n, &mut rng);
        let under_u = band_energies_under(&u, &family).unwrap();
        assert!(under_u.iter().any(|&e| e < 0.9));
        let _ = params;
    }

    #[test]
    fn recovery_from_the_canonical_shift_is_the_identity() {
        let n = 8;
        let s = shift_matrix(n);
        let v = recover_canonical_basis(&s).unwrap();
        assert!(max_abs_diff(&v, &identity_matrix(n)) < 1e-9);
    }

    #[test]
    fn recovery_from_the_diagonal_explosion_is_the_inverse_dft() {
        let params = p(8);
        let d = apply_automorphism_operator(&shift_matrix(8), &dft_matrix(params)).unwrap();
        let v = recover_canonical_basis(&d).unwrap();
        let f_inv = conj_transpose(&dft_matrix(params));
        assert!(max_abs_diff(&v, &f_inv) < 1e-9);
        let back = apply_automorphism_operator(&d, &v).unwrap();
        assert!(max_abs_diff(&back, &shift_matrix(8)) < 1e-9);
    }

    #[test]
    fn recovery_round_trip_from_a_seeded_explosion() {
        let n = 16;
        let mut rng = rng::seeded(31);
        let u = rng::haar_unitary(n, &mut rng);
        let exploded = apply_automorphism_operator(&shift_matrix(n), &u).unwrap();
        let v = recover_canonical_basis(&exploded).unwrap();
        assert!(unitarity_deviation(&v) < 1e-9);
        let back = apply_automorphism_operator(&exploded, &v).unwrap();
        assert!(max_abs_diff(&back, &shift_matrix(n)) < 1e-9);
    }

    #[test]
    fn recovery_rejects_wrong_inputs() {
        // degenerate spectrum: identity has eigenvalue 1 with multiplicity n
        assert!(matches!(
            recover_canonical_basis(&identity_matrix(4)),
            Err(WeylError::NotShiftSpectrum { .. })
        ));
        // wrong spectrum: a diagonal unitary off the root lattice
        let mut d = identity_matrix(4);
        d[[1, 1]] = C64::from_polar(1.0, 0.3);
        d[[2, 2]] = C64::from_polar(1.0, 1.1);
        d[[3, 3]] = C64::from_polar(1.0, 2.0);
        assert!(matches!(
            recover_canonical_basis(&d),
            Err(WeylError::NotShiftSpectrum { .. })
        ));
        // non-unitary input
        let mut bad = identity_matrix(4);
        bad[[0, 0]] = C64::new(3.0, 0.0);
        assert!(matches!(
            recover_canonical_basis(&bad),
            Err(WeylError::NotUnitary { .. })
        ));
    }

    #[test]
    fn momentum_link_tightens_with_n() {
        let ceilings = [(32usize, 0.31f64), (64, 0.12), (128, 0.05)];
        let mut prev = f64::INFINITY;
        for (n, ceiling) in ceilings {
            let row = momentum_neighbour_link(p(n)).unwrap();
            assert!(
                row.link_error < ceiling,
                "n={n} link error {:.4} ceiling {ceiling}",
                row.link_error
            );
            assert!(row.link_error < prev);
            assert!(row.link_error > 1e-4, "residual should be non-trivial");
            // the two sides individually sit near ∓3 (momentum term carries
            // the extra ½ from the centering mismatch)
            assert!(row.derivative_term < -2.5 && row.derivative_term > -3.1);
            assert!((row.momentum_term - 3.5).abs() < 1e-6);
            prev = row.link_error;
        }
    }
}
