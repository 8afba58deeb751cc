//! Commutator of position and momentum, the Robertson uncertainty bound on
//! the discrete space, and the scaled continuum-limit study in which
//! ⟨[X̃, P̃]⟩ → i on smooth states as n grows.

use crate::element::AlgebraElement;
use crate::error::{Result, WeylError};
use crate::matrix::to_matrix;
use crate::operators::{momentum_operator, position_operator};
use crate::params::AlgebraParams;
use crate::rng;
use crate::state::{BasisTag, StateVector};
use crate::C64;
use rand::Rng;
use std::f64::consts::TAU;

/// [X, P]: anti-hermitian, traceless, nonzero for every n ≥ 2.
pub fn commutator_xp(params: AlgebraParams) -> AlgebraElement {
    position_operator(params)
        .commutator(&momentum_operator(params))
        .expect("same params on both operators")
}

/// Continuum-scaled pair X̃ = s(X − c·1), P̃ = s(P − c·1) with s = √(2π/n)
/// and c = (n−1)/2: a symmetric conjugate pair under the DFT whose
/// commutator is (2π/n)·[X, P]. The scaling is the standard finite
/// phase-space choice that makes the n → ∞ commutator limit checkable at
/// finite n; it is an operationalization, not part of the algebra itself.
pub fn scaled_observables(params: AlgebraParams) -> (AlgebraElement, AlgebraElement) {
    let n = params.n();
    let s = C64::new((TAU / n as f64).sqrt(), 0.0); // √(2π/n)
    let c = C64::new((n as f64 - 1.0) / 2.0, 0.0);
    let id = AlgebraElement::identity(params);
    let x = position_operator(params);
    let p = momentum_operator(params);
    let xt = AlgebraElement::linear_combine(&[(s, &x), (-s * c, &id)])
        .expect("non-empty combination");
    let pt = AlgebraElement::linear_combine(&[(s, &p), (-s * c, &id)])
        .expect("non-empty combination");
    (xt, pt)
}

/// ⟨ψ|M|ψ⟩ with M the matrix image of `op`. The state must be unit-norm
/// within tolerance; momentum-tagged states are converted to the position
/// basis first.
pub fn expectation(op: &AlgebraElement, psi: &StateVector) -> Result<C64> {
    op.params().check_same(&psi.params())?;
    psi.check_unit_norm()?;
    let pos = psi.to_position_basis();
    let m = to_matrix(op);
    let n = op.n();
    let mut acc = C64::new(0.0, 0.0);
    for r in 0..n {
        let mut row = C64::new(0.0, 0.0);
        for c in 0..n {
            row += m[[r, c]] * pos.amps()[c];
        }
        acc += pos.amps()[r].conj() * row;
    }
    Ok(acc)
}

fn apply_matrix(m: &crate::Matrix, amps: &[C64]) -> Vec<C64> {
    let n = amps.len();
    (0..n)
        .map(|r| (0..n).map(|c| m[[r, c]] * amps[c]).sum())
        .collect()
}

/// Result of a Robertson-inequality evaluation ΔA·ΔB ≥ ½|⟨[A,B]⟩|.
#[derive(Clone, Copy, Debug)]
pub struct RobertsonReport {
    pub delta_a: f64,
    pub delta_b: f64,
    pub product: f64,
    /// ½|⟨[A,B]⟩|.
    pub bound: f64,
    pub expect_commutator: C64,
    pub holds: bool,
}

/// Evaluate the uncertainty inequality for hermitian A, B on a unit state.
/// It is a theorem, so `holds == false` indicates an implementation bug, not
/// physics; the check still reports rather than panics.
pub fn robertson_check(
    psi: &StateVector,
    a: &AlgebraElement,
    b: &AlgebraElement,
) -> Result<RobertsonReport> {
    let params = a.params();
    params.check_same(&b.params())?;
    params.check_same(&psi.params())?;
    psi.check_unit_norm()?;
    for (name, op) in [("a", a), ("b", b)] {
        let dev = op.adjoint().max_dev(op);
        if dev > params.tol() {
            let _ = name;
            return Err(WeylError::NotHermitian { dev });
        }
    }
    let pos = psi.to_position_basis();
    let ma = to_matrix(a);
    let mb = to_matrix(b);
    let a_psi = apply_matrix(&ma, pos.amps());
    let b_psi = apply_matrix(&mb, pos.amps());
    let dot = |x: &[C64], y: &[C64]| -> C64 {
        x.iter().zip(y).map(|(u, v)| u.conj() * v).sum()
    };
    let mean_a = dot(pos.amps(), &a_psi);
    let mean_b = dot(pos.amps(), &b_psi);
    // hermiticity makes ⟨A²⟩ = ‖Aψ‖²; variances are clamped at 0 against
    // rounding on eigenstates
    let var_a = (dot(&a_psi, &a_psi).re - mean_a.norm_sqr()).max(0.0);
    let var_b = (dot(&b_psi, &b_psi).re - mean_b.norm_sqr()).max(0.0);
    let expect_commutator = dot(&a_psi, &b_psi) - dot(&b_psi, &a_psi);
    let delta_a = var_a.sqrt();
    let delta_b = var_b.sqrt();
    let bound = 0.5 * expect_commutator.norm();
    let product = delta_a * delta_b;
    Ok(RobertsonReport {
        delta_a,
        delta_b,
        product,
        bound,
        expect_commutator,
        holds: product >= bound - params.tol(),
    })
}

/// Outcome of the seeded search for a state with a nontrivial uncertainty
/// bound ½|⟨[X,P]⟩|.
#[derive(Clone, Debug)]
pub struct UncertaintyWitnessReport {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Largest bound found and the state achieving it.
    pub best_bound: f64,
    pub best_state: StateVector,
    pub best_product: f64,
    /// Robertson violations across all trials (must be 0; it is a theorem).
    pub violations: usize,
    /// True iff a state with bound > 0.01 was found.
    pub witness_found: bool,
}

/// Monte Carlo search over Haar-random states for a witness that X and P
/// obey a nontrivial uncertainty relation on the discrete space. A witness
/// exists for every n ≥ 2 since [X, P] ≠ 0.
pub fn uncertainty_exists(
    params: AlgebraParams,
    trials: usize,
    seed: u64,
) -> Result<UncertaintyWitnessReport> {
    let x = position_operator(params);
    let p = momentum_operator(params);
    let mut rng = rng::seeded(seed);
    let mut best_bound = f64::NEG_INFINITY;
    let mut best_state = StateVector::basis_state(params, 0, BasisTag::Position)?;
    let mut best_product = 0.0;
    let mut violations = 0usize;
    for _ in 0..trials.max(1) {
        let psi = rng::random_state(params, &mut rng);
        let report = robertson_check(&psi, &x, &p)?;
        if !report.holds {
            violations += 1;
        }
        if report.bound > best_bound {
            best_bound = report.bound;
            best_product = report.product;
            best_state = psi;
        }
    }
    Ok(UncertaintyWitnessReport {
        n: params.n(),
        trials: trials.max(1),
        seed,
        best_bound,
        best_state,
        best_product,
        violations,
        witness_found: best_bound > 0.01,
    })
}

/// Specification of a wrapped-Gaussian test state:
/// ψ_j ∝ exp(−d(j, center)²/(4·width²))·exp(2πi·momentum_shift·j/n) with d
/// the cyclic distance, normalized to unit norm.
#[derive(Clone, Copy, Debug)]
pub struct GaussianSpec {
    pub center: f64,
    pub width: f64,
    /// Phase-ramp frequency in cycles across the lattice; it translates the
    /// state's mean momentum, which matters because the momentum spectrum
    /// wraps at the lattice edge.
    pub momentum_shift: f64,
}

/// Unit-norm wrapped Gaussian over the position basis.
pub fn gaussian_state(params: AlgebraParams, spec: &GaussianSpec) -> Result<StateVector> {
    // NaN-safe: a NaN width must be rejected, not slip past a `>` test
    if spec.width <= 0.0 || !spec.width.is_finite() {
        return Err(WeylError::NonPositiveWidth(spec.width));
    }
    let n = params.n();
    let nf = n as f64;
    let amps: Vec<C64> = (0..n)
        .map(|j| {
            let t = (j as f64 - spec.center).rem_euclid(nf);
            let d = t.min(nf - t);
            let mag = (-d * d / (4.0 * spec.width * spec.width)).exp();
            let phase = TAU * spec.momentum_shift * j as f64 / nf;
            C64::from_polar(mag, phase)
        })
        .collect();
    StateVector::new(params, amps, BasisTag::Position)?.normalized()
}

/// Width rule for the convergence study: width = scale·√(n/4π). The default
/// scale 1 equalizes position and momentum spreads under the DFT.
#[derive(Clone, Copy, Debug)]
pub struct WidthRule {
    pub scale: f64,
}

impl Default for WidthRule {
    fn default() -> Self {
        Self { scale: 1.0 }
    }
}

impl WidthRule {
    pub fn width(&self, n: usize) -> f64 {
        self.scale * (n as f64 / (4.0 * std::f64::consts::PI)).sqrt()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ConvergenceRow {
    pub n: usize,
    pub expectation: C64,
    /// |expectation − i|.
    pub error: f64,
}

#[derive(Clone, Debug)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
    /// Errors non-increasing, up to the per-n rounding floor: a step up is
    /// tolerated only below tol(n) = 1e−12·n, where values sit in noise.
    pub monotone_flag: bool,
}

/// The smooth test state of the study: a mid-lattice wrapped Gaussian with
/// equal position/momentum spreads and mean momentum centered mid-spectrum
/// (momentum_shift = n/2). Without the momentum centering the state's
/// momentum distribution straddles the spectral wrap at k ≈ 0 and the
/// commutator expectation diverges from i instead of converging.
pub fn study_state(params: AlgebraParams, rule: &WidthRule) -> Result<StateVector> {
    let n = params.n();
    gaussian_state(
        params,
        &GaussianSpec {
            center: n as f64 / 2.0,
            width: rule.width(n),
            momentum_shift: n as f64 / 2.0,
        },
    )
}

/// For each n, evaluate ⟨ψ_n|[X̃, P̃]|ψ_n⟩ on the study state and record the
/// distance to i. Orders must be ascending and ≥ 8 (below that the wrap
/// corrupts smoothness).
pub fn continuum_limit_study(n_list: &[usize], rule: &WidthRule) -> Result<ConvergenceReport> {
    let ascending = n_list.windows(2).all(|w| w[0] < w[1]);
    if n_list.is_empty() || !ascending || n_list.iter().any(|&n| n < 8) {
        return Err(WeylError::BadOrderList {
            min: 8,
            got: n_list.to_vec(),
        });
    }
    let target = C64::new(0.0, 1.0);
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let params = AlgebraParams::new(n)?;
        let (xt, pt) = scaled_observables(params);
        let comm = xt.commutator(&pt)?;
        let psi = study_state(params, rule)?;
        let value = expectation(&comm, &psi)?;
        rows.push(ConvergenceRow {
            n,
            expectation: value,
            error: (value - target).norm(),
        });
    }
    let monotone_flag = rows.windows(2).all(|w| {
        let floor = AlgebraParams::new(w[1].n).map(|p| p.tol()).unwrap_or(0.0);
        w[1].error <= w[0].error.max(floor)
    });
    Ok(ConvergenceReport {
        rows,
        monotone_flag,
    })
}

/// Haar-random unit state drawn with the crate RNG (re-exported here for
/// callers of the uncertainty machinery).
pub fn haar_state<R: Rng + ?Sized>(params: AlgebraParams, rng: &mut R) -> StateVector {
    rng::random_state(params, rng)
}
