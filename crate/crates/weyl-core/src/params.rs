use crate::error::{Result, WeylError};
use crate::C64;
use std::f64::consts::TAU;

/// Order parameter of the algebra: n ≥ 2 together with the primitive n-th
/// root of unity ω = exp(2πi/n). All basis-index arithmetic is mod n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    n: usize,
}

impl AlgebraParams {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(WeylError::OrderTooSmall(n));
        }
        Ok(Self { n })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Primitive root ω = exp(2πi/n).
    pub fn omega(&self) -> C64 {
        self.omega_pow(1)
    }

    /// ω^k for any integer k, reduced mod n before evaluation so that powers
    /// are exactly periodic. Quarter-turn values are returned exactly, which
    /// keeps small-n arithmetic crisp (ω = −1 at n = 2, ω = i at n = 4).
    pub fn omega_pow(&self, k: i64) -> C64 {
        let r = k.rem_euclid(self.n as i64) as usize;
        let n = self.n;
        if r == 0 {
            return C64::new(1.0, 0.0);
        }
        if 2 * r == n {
            return C64::new(-1.0, 0.0);
        }
        if 4 * r == n {
            return C64::new(0.0, 1.0);
        }
        if 4 * r == 3 * n {
            return C64::new(0.0, -1.0);
        }
        C64::from_polar(1.0, TAU * r as f64 / n as f64)
    }

    /// Table of all powers ω^0 … ω^{n−1}; hot loops index it by reduced
    /// exponent instead of recomputing trigonometry.
    pub fn omega_table(&self) -> Vec<C64> {
        (0..self.n as i64).map(|r| self.omega_pow(r)).collect()
    }

    /// Reduce an arbitrary integer index to the canonical range 0..n.
    #[inline]
    pub fn reduce(&self, k: i64) -> usize {
        k.rem_euclid(self.n as i64) as usize
    }

    /// Per-coefficient absolute tolerance: 1e−12·n. All identity checks in
    /// the crate are exact algebra, so deviations are pure rounding and grow
    /// at most linearly with the number of accumulated terms.
    #[inline]
    pub fn tol(&self) -> f64 {
        1e-12 * self.n as f64
    }

    /// Bounds-check a user-supplied index in 0..n.
    pub fn check_index(&self, idx: i64) -> Result<usize> {
        if idx < 0 || idx >= self.n as i64 {
            return Err(WeylError::IndexOutOfRange {
                index: idx,
                n: self.n,
            });
        }
        Ok(idx as usize)
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(WeylError::ParamMismatch(self.n, other.n));
        }
        Ok(())
    }
}
