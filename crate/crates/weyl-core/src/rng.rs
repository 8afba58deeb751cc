//! Seeded randomness. Every stochastic routine in the crate takes a
//! `ChaCha8Rng` created by [`seeded`], so a (seed, code-version) pair fully
//! determines all outputs. Gaussian samples come from `rand_distr`'s
//! `StandardNormal` (ziggurat over the generator's 64-bit output); Haar
//! unitaries are QR factors of complex Ginibre matrices with the R-diagonal
//! phase normalization.

use crate::element::AlgebraElement;
use crate::linalg;
use crate::params::AlgebraParams;
use crate::state::{BasisTag, StateVector};
use crate::{Matrix, C64};
use ndarray::Array2;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// The crate-wide RNG: ChaCha8 seeded via `seed_from_u64`.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard complex Gaussian: independent N(0,1) real and imaginary parts.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Dense random element with i.i.d. complex-Gaussian coefficients scaled by
/// `scale`. Callers use scale ~ 1/n to keep triple products well inside the
/// rounding budget of the identity checks.
pub fn random_element<R: Rng + ?Sized>(
    params: AlgebraParams,
    rng: &mut R,
    scale: f64,
) -> AlgebraElement {
    let n = params.n();
    let coeffs = (0..n * n).map(|_| complex_normal(rng) * scale).collect();
    AlgebraElement::from_coeffs(params, coeffs).expect("coefficient count matches n*n")
}

/// Random invertible element: redraws (at most a handful of times in
/// practice) until the matrix image has 2-norm condition below 1e6.
pub fn random_invertible_element<R: Rng + ?Sized>(
    params: AlgebraParams,
    rng: &mut R,
) -> AlgebraElement {
    loop {
        let e = random_element(params, rng, 1.0 / params.n() as f64);
        let m = crate::matrix::to_matrix(&e);
        if let Ok(cond) = linalg::cond_2(&m) {
            if cond < 1e6 {
                return e;
            }
        }
    }
}

/// Haar-random state: normalized vector of i.i.d. standard complex Gaussians.
pub fn random_state<R: Rng + ?Sized>(params: AlgebraParams, rng: &mut R) -> StateVector {
    let n = params.n();
    loop {
        let amps: Vec<C64> = (0..n).map(|_| complex_normal(rng)).collect();
        let norm: f64 = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > 1e-6 {
            let amps = amps.into_iter().map(|z| z / norm).collect();
            return StateVector::new(params, amps, BasisTag::Position)
                .expect("amplitude count matches n");
        }
    }
}

/// Haar-random unitary: QR of a complex Ginibre matrix, with each column of Q
/// rephased by the unit phase of the corresponding R diagonal entry so the
/// distribution is exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    let g = Array2::from_shape_fn((n, n), |_| complex_normal(rng));
    let (q, r) = linalg::qr(&g).expect("QR of a Ginibre matrix");
    let mut u = q;
    for j in 0..n {
        let d = r[[j, j]];
        let phase = if d.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            d / d.norm()
        };
        for i in 0..n {
            u[[i, j]] *= phase;
        }
    }
    u
}

/// Smooth random field: a seeded superposition of the lowest Fourier modes
/// |k| ≤ max_mode with complex-Gaussian coefficients.
pub fn random_smooth_field<R: Rng + ?Sized>(
    params: AlgebraParams,
    rng: &mut R,
    max_mode: usize,
) -> Vec<C64> {
    let n = params.n();
    let tab = params.omega_table();
    let kmax = max_mode.min(n / 2);
    let modes: Vec<(usize, C64)> = (0..=kmax)
        .flat_map(|k| {
            if k == 0 {
                vec![(0usize, complex_normal(rng))]
            } else {
                vec![
                    (k, complex_normal(rng)),
                    (n - k, complex_normal(rng)),
                ]
            }
        })
        .collect();
    (0..n)
        .map(|j| {
            modes
                .iter()
                .map(|&(k, c)| c * tab[(k * j) % n])
                .sum::<C64>()
        })
        .collect()
}
