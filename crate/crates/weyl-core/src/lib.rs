//! Computational kernel for the finite Weyl algebra C²ₙ: the n²-dimensional
//! complex algebra generated by a clock and a shift of order n with
//! ω-twisted commutation, ω = exp(2πi/n).
//!
//! The crate provides the twisted product and adjoint on coefficient tables,
//! a faithful n×n matrix representation with exact round-tripping, the
//! primitive-idempotent / matrix-unit / minimal-ideal machinery, position and
//! momentum operators with their DFT duality, commutator and uncertainty
//! analysis, a scaled continuum-limit convergence study, and neighbourhood
//! (unit-shift) operators with locality diagnostics under inner
//! automorphisms, including a discrete wave equation.
//!
//! Conventions frozen across the crate (see README for the full table):
//! - clock `e_1^0` ↦ diag(ω^j); shift `e_0^1` ↦ the matrix with ones on the
//!   superdiagonal and in the lower-left corner, so it maps basis ket j to
//!   j−1 and acts on sampled fields as (Sf)_j = f_{j+1}.
//! - adjoint on the basis: (e_b^a)† = ω^{−ab} e_{−b}^{−a}.
//! - `translation_position(a) = e_0^{−a}` advances position labels by +a.
//! - exponential forms: `e_0^1 = exp(+2πiP/n)` and `e_1^0 = exp(+2πiX/n)`.

pub mod element;
pub mod error;
pub mod idempotent;
pub mod limits;
pub mod linalg;
pub mod locality;
pub mod matrix;
pub mod operators;
pub mod params;
pub mod rng;
pub mod state;

pub use element::AlgebraElement;
pub use error::{Result, WeylError};
pub use idempotent::IdempotentSet;
pub use params::AlgebraParams;
pub use state::{BasisTag, StateVector};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;

/// Dense complex matrix used for representation images and diagnostics.
pub type Matrix = ndarray::Array2<C64>;
