use crate::error::{Result, WeylError};
use crate::params::AlgebraParams;
use crate::C64;
use serde::{Deserialize, Serialize};

/// Element of the algebra as a dense n×n coefficient table over the basis
/// e_b^a: A = Σ_{a,b} A_{ab} e_b^a, stored row-major with index a·n + b.
/// The superscript a is the shift power, the subscript b the clock power.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    params: AlgebraParams,
    coeffs: Vec<C64>,
}

impl AlgebraElement {
    pub fn zero(params: AlgebraParams) -> Self {
        let n = params.n();
        Self {
            params,
            coeffs: vec![C64::new(0.0, 0.0); n * n],
        }
    }

    /// The multiplicative unit e_0^0.
    pub fn identity(params: AlgebraParams) -> Self {
        let mut e = Self::zero(params);
        e.coeffs[0] = C64::new(1.0, 0.0);
        e
    }

    /// Basis element e_b^a; a and b are reduced mod n, so e.g. (a = n+1,
    /// b = −1) names the same element as (a = 1, b = n−1).
    pub fn basis_element(params: AlgebraParams, a: i64, b: i64) -> Self {
        let n = params.n();
        let (a, b) = (params.reduce(a), params.reduce(b));
        let mut e = Self::zero(params);
        e.coeffs[a * n + b] = C64::new(1.0, 0.0);
        e
    }

    /// The shift generator e_0^1.
    pub fn generator_shift(params: AlgebraParams) -> Self {
        Self::basis_element(params, 1, 0)
    }

    /// The clock generator e_1^0.
    pub fn generator_clock(params: AlgebraParams) -> Self {
        Self::basis_element(params, 0, 1)
    }

    pub fn from_coeffs(params: AlgebraParams, coeffs: Vec<C64>) -> Result<Self> {
        let n = params.n();
        if coeffs.len() != n * n {
            return Err(WeylError::BadCoefficientCount {
                expected: n * n,
                got: coeffs.len(),
            });
        }
        Ok(Self { params, coeffs })
    }

    #[inline]
    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.params.n()
    }

    #[inline]
    pub fn coeff(&self, a: usize, b: usize) -> C64 {
        self.coeffs[a * self.params.n() + b]
    }

    pub fn set_coeff(&mut self, a: usize, b: usize, value: C64) {
        let n = self.params.n();
        self.coeffs[a * n + b] = value;
    }

    pub fn coeffs(&self) -> &[C64] {
        &self.coeffs
    }

    /// Twisted product: bilinear extension of
    /// e_b^a · e_d^c = ω^{−bc} e_{b+d}^{a+c} (indices mod n).
    ///
    /// Exactly-zero coefficient rows are skipped, so products with the
    /// structured elements used throughout (operators, idempotents, kets)
    /// cost far less than the dense O(n⁴) worst case.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.params.check_same(&other.params)?;
        let n = self.params.n();
        let tab = self.params.omega_table();
        let mut out = vec![C64::new(0.0, 0.0); n * n];

        // Rows of `other` that contain any nonzero coefficient.
        let c_live: Vec<bool> = other
            .coeffs
            .chunks_exact(n)
            .map(|row| row.iter().any(|z| z.re != 0.0 || z.im != 0.0))
            .collect();

        for a in 0..n {
            for b in 0..n {
                let lhs = self.coeffs[a * n + b];
                if lhs.re == 0.0 && lhs.im == 0.0 {
                    continue;
                }
                for c in 0..n {
                    if !c_live[c] {
                        continue;
                    }
                    // ω^{−bc}, exponent reduced mod n.
                    let w = tab[(n - (b * c) % n) % n];
                    let x = lhs * w;
                    let row = (a + c) % n;
                    let (orow, brow) = (
                        &mut out[row * n..(row + 1) * n],
                        &other.coeffs[c * n..(c + 1) * n],
                    );
                    // Output column (b+d) mod n splits into two contiguous runs.
                    let split = n - b;
                    for d in 0..split {
                        orow[b + d] += x * brow[d];
                    }
                    for d in split..n {
                        orow[b + d - n] += x * brow[d];
                    }
                }
            }
        }
        Ok(Self {
            params: self.params,
            coeffs: out,
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        Self {
            params: self.params,
            coeffs: self.coeffs.iter().map(|z| z * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.params.check_same(&other.params)?;
        Ok(Self {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x + y)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.params.check_same(&other.params)?;
        Ok(Self {
            params: self.params,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(x, y)| x - y)
                .collect(),
        })
    }

    /// Coefficient-wise weighted sum Σ cᵢ·Aᵢ.
    pub fn linear_combine(terms: &[(C64, &AlgebraElement)]) -> Result<Self> {
        let (first, rest) = terms.split_first().ok_or(WeylError::EmptyCombination)?;
        let mut acc = first.1.scale(first.0);
        for (c, el) in rest {
            acc.params.check_same(&el.params)?;
            for (dst, src) in acc.coeffs.iter_mut().zip(&el.coeffs) {
                *dst += c * src;
            }
        }
        Ok(acc)
    }

    /// Adjoint (involution): antilinear extension of
    /// (e_b^a)† = ω^{−ab} e_{−b}^{−a}.
    ///
    /// This is the pullback of matrix conjugate-transpose through the
    /// representation, so (AB)† = B†A† and A†† = A; basis elements are
    /// unitary, with inverse equal to adjoint.
    pub fn adjoint(&self) -> Self {
        let n = self.params.n();
        let mut out = vec![C64::new(0.0, 0.0); n * n];
        for a in 0..n {
            for b in 0..n {
                let z = self.coeffs[a * n + b];
                if z.re == 0.0 && z.im == 0.0 {
                    continue;
                }
                let w = self.params.omega_pow(-((a * b) as i64));
                let (ra, rb) = ((n - a) % n, (n - b) % n);
                out[ra * n + rb] = z.conj() * w;
            }
        }
        Self {
            params: self.params,
            coeffs: out,
        }
    }

    /// AB − BA.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        let ab = self.multiply(other)?;
        let ba = other.multiply(self)?;
        ab.sub(&ba)
    }

    /// Trace of the matrix image; equals n·A_{00} because every other basis
    /// element is traceless.
    pub fn trace(&self) -> C64 {
        self.coeffs[0] * self.params.n() as f64
    }

    /// Largest coefficient-wise absolute deviation from `other`.
    pub fn max_dev(&self, other: &Self) -> f64 {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(x, y)| (x - y).norm())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.params == other.params && self.max_dev(other) <= tol
    }

    /// Repeated product A^k (k ≥ 0); A^0 is the identity.
    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = Self::identity(self.params);
        for _ in 0..k {
            acc = acc.multiply(self)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&ElementJson::from(self)).expect("element serialization")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let raw: ElementJson = serde_json::from_str(s)?;
        raw.into_element()
    }
}

/// Wire format: {"n": …, "coeffs": [[re, im], …]} with coefficients row-major
/// in (a, b).
#[derive(Serialize, Deserialize)]
struct ElementJson {
    n: usize,
    coeffs: Vec<[f64; 2]>,
}

impl From<&AlgebraElement> for ElementJson {
    fn from(e: &AlgebraElement) -> Self {
        Self {
            n: e.n(),
            coeffs: e.coeffs.iter().map(|z| [z.re, z.im]).collect(),
        }
    }
}

impl ElementJson {
    fn into_element(self) -> Result<AlgebraElement> {
        let params = AlgebraParams::new(self.n)?;
        AlgebraElement::from_coeffs(
            params,
            self.coeffs.iter().map(|p| C64::new(p[0], p[1])).collect(),
        )
    }
}
