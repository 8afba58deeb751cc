use crate::error::{Result, WeylError};
use crate::matrix::dft_matrix;
use crate::params::AlgebraParams;
use crate::C64;
use serde::{Deserialize, Serialize};

/// Which basis the stored amplitudes refer to. A `Position`-tagged vector
/// lists components over the position kets |x_j⟩; a `Momentum`-tagged vector
/// over the momentum kets |P_j⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BasisTag {
    Position,
    Momentum,
}

/// n complex amplitudes tagged with their basis; the coefficient vector of a
/// minimal-left-ideal element.
#[derive(Clone, Debug)]
pub struct StateVector {
    params: AlgebraParams,
    amps: Vec<C64>,
    basis: BasisTag,
}

impl StateVector {
    pub fn new(params: AlgebraParams, amps: Vec<C64>, basis: BasisTag) -> Result<Self> {
        if amps.len() != params.n() {
            return Err(WeylError::BadAmplitudeCount {
                expected: params.n(),
                got: amps.len(),
            });
        }
        Ok(Self {
            params,
            amps,
            basis,
        })
    }

    /// Basis ket: amplitude 1 at site j, 0 elsewhere.
    pub fn basis_state(params: AlgebraParams, j: i64, basis: BasisTag) -> Result<Self> {
        let j = params.check_index(j)?;
        let mut amps = vec![C64::new(0.0, 0.0); params.n()];
        amps[j] = C64::new(1.0, 0.0);
        Self::new(params, amps, basis)
    }

    #[inline]
    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn amps(&self) -> &[C64] {
        &self.amps
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Error if the norm deviates from 1 by more than the algebra tolerance.
    pub fn check_unit_norm(&self) -> Result<()> {
        let dev = (self.norm() - 1.0).abs();
        let tol = self.params.tol();
        if dev > tol {
            return Err(WeylError::NotNormalized { dev, tol });
        }
        Ok(())
    }

    pub fn normalized(&self) -> Result<Self> {
        let norm = self.norm();
        if norm == 0.0 {
            return Err(WeylError::NotNormalized {
                dev: 1.0,
                tol: self.params.tol(),
            });
        }
        Ok(Self {
            params: self.params,
            amps: self.amps.iter().map(|z| z / norm).collect(),
            basis: self.basis,
        })
    }

    /// ⟨self|other⟩, antilinear in self.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        self.params.check_same(&other.params)?;
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| x.conj() * y)
            .sum())
    }

    /// Re-express in the position basis. Momentum amplitudes c_j denote the
    /// state Σ_j c_j |P_j⟩ with |P_j⟩ the DFT columns, so the position
    /// amplitudes are F·c.
    pub fn to_position_basis(&self) -> Self {
        match self.basis {
            BasisTag::Position => self.clone(),
            BasisTag::Momentum => {
                let f = dft_matrix(self.params);
                let n = self.n();
                let amps = (0..n)
                    .map(|i| (0..n).map(|j| f[[i, j]] * self.amps[j]).sum())
                    .collect();
                Self {
                    params: self.params,
                    amps,
                    basis: BasisTag::Position,
                }
            }
        }
    }

    pub fn max_dev(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateJson::from(self)).expect("state serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: StateJson = serde_json::from_str(s)?;
        raw.into_state()
    }
}

/// Wire format: {"n": …, "basis": "position"|"momentum", "amps": [[re, im], …]}.
#[derive(Serialize, Deserialize)]
struct StateJson {
    n: usize,
    basis: BasisTag,
    amps: Vec<[f64; 2]>,
}

impl From<&StateVector> for StateJson {
    fn from(s: &StateVector) -> Self {
        Self {
            n: s.n(),
            basis: s.basis,
            amps: s.amps.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl StateJson {
    fn into_state(self) -> Result<StateVector> {
        let params = AlgebraParams::new(self.n)?;
        StateVector::new(
            params,
            self.amps.iter().map(|p| C64::new(p[0], p[1])).collect(),
            self.basis,
        )
    }
}
