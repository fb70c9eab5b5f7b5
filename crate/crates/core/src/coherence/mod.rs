//! Skew-information-based coherence.
//!
//! For a state ρ and a reference basis {|k⟩},
//!
//! ```text
//! C_I(ρ) = Σₖ I(ρ, |k⟩⟨k|) = 1 − Σₖ ⟨k|√ρ|k⟩²,
//! I(ρ, K) = −½ tr([√ρ, K]²).
//! ```
//!
//! [`coherence_numeric`] evaluates the right-hand form and is the ground
//! truth for the closed-form expressions in [`closed_form`].
//! [`coherence_skew_sum`] evaluates the left-hand form independently.

pub mod closed_form;

pub use closed_form::{
    cf_bd, cf_bd_factors, cf_bd_sum, cf_isotropic, cf_werner, cf_xz_a1, cf_xz_a1_printed,
    cf_xz_sum, cf_xz_sum_printed,
};

use std::fmt;

use num_complex::Complex64;

use crate::bases::{represent_in_basis, OrthonormalBasis};
use crate::error::{Error, Result};
use crate::linalg::{commutator, multiply, trace, ComplexMatrix, HERMITIAN_TOL};
use crate::states::DensityMatrix;

/// Slack on the `[0, 1 − 1/d]` range of a coherence value.
pub const BOUND_TOL: f64 = 1e-12;

/// A skew-information coherence value for a `dim`-dimensional system.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct CoherenceValue(f64);

impl CoherenceValue {
    /// Checks `0 ≤ value ≤ 1 − 1/dim` up to [`BOUND_TOL`]; tiny negative
    /// values are clamped to zero.
    pub fn new(value: f64, dim: usize) -> Result<Self> {
        let upper = 1.0 - 1.0 / dim as f64 + BOUND_TOL;
        if !value.is_finite() || value < -BOUND_TOL || value > upper {
            return Err(Error::Internal(format!(
                "coherence {value} outside [0, {upper}] for dimension {dim}"
            )));
        }
        Ok(Self(value.max(0.0)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for CoherenceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<CoherenceValue> for f64 {
    fn from(c: CoherenceValue) -> f64 {
        c.0
    }
}

fn check_dims(rho: &DensityMatrix, dim: usize) -> Result<()> {
    if rho.dim() != dim {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: dim,
        });
    }
    Ok(())
}

/// Wigner–Yanase skew information −½ tr([√ρ, K]²), clamped at zero.
pub fn skew_information(rho: &DensityMatrix, k: &ComplexMatrix) -> Result<f64> {
    check_dims(rho, k.dim())?;
    let asymmetry = k.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }
    let c = commutator(&rho.sqrt(), k)?;
    let value = -0.5 * trace(&multiply(&c, &c)?).re;
    Ok(value.max(0.0))
}

/// 1 − Σₖ ⟨k|√ρ|k⟩² given √ρ.
pub fn coherence_from_sqrt(sqrt_rho: &ComplexMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    if sqrt_rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: sqrt_rho.dim(),
            found: basis.dim(),
        });
    }
    let mut sum = 0.0;
    for v in basis.vectors() {
        let d = sqrt_rho.sandwich(v, v)?.re;
        sum += d * d;
    }
    Ok(1.0 - sum)
}

/// C_I(ρ) in `basis`, computed as 1 − Σₖ ⟨k|√ρ|k⟩².
pub fn coherence_numeric(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<CoherenceValue> {
    check_dims(rho, basis.dim())?;
    let value = coherence_from_sqrt(&rho.sqrt(), basis)?;
    CoherenceValue::new(value, rho.dim())
}

/// C_I(ρ) in each of `bases`, sharing one square root.
pub fn coherence_numeric_many(
    rho: &DensityMatrix,
    bases: &[&OrthonormalBasis],
) -> Result<Vec<CoherenceValue>> {
    let sqrt = rho.sqrt();
    bases
        .iter()
        .map(|b| {
            check_dims(rho, b.dim())?;
            CoherenceValue::new(coherence_from_sqrt(&sqrt, b)?, rho.dim())
        })
        .collect()
}

/// C_I(ρ) as Σₖ I(ρ, |k⟩⟨k|).
pub fn coherence_skew_sum(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    check_dims(rho, basis.dim())?;
    basis
        .vectors()
        .iter()
        .map(|v| skew_information(rho, &ComplexMatrix::projector(v)))
        .sum()
}

/// l₁ norm of coherence: Σ_{i≠j} |ρᵢⱼ| in `basis`.
pub fn l1_coherence(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    let m = represent_in_basis(rho, basis)?;
    let d = m.dim();
    let mut sum = 0.0;
    for r in 0..d {
        for c in 0..d {
            if r != c {
                sum += m.get(r, c).norm();
            }
        }
    }
    Ok(sum)
}

fn entropy_bits(eigenvalues: impl IntoIterator<Item = f64>) -> f64 {
    eigenvalues
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum()
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_bits(rho.eigenvalues().iter().copied())
}

/// Relative entropy of coherence S(Δ(ρ)) − S(ρ), in bits, where Δ removes
/// the off-diagonal part in `basis`.
pub fn relative_entropy_coherence(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<f64> {
    let m = represent_in_basis(rho, basis)?;
    let diag = m.diagonal().into_iter().map(|z: Complex64| z.re);
    Ok((entropy_bits(diag) - von_neumann_entropy(rho)).max(0.0))
}
