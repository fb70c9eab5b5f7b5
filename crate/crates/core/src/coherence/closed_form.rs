//! Closed-form coherence of Bell-diagonal and X states in the AMUBs.
//!
//! Bell-diagonal states are parametrized by the correlations (c₁, c₂, c₃);
//! the radicands below are four times their eigenvalues. For the X state
//! with local terms r, s along σ₃ write
//!
//! ```text
//! R  = √((c₁+c₂)² + (r−s)²),   R' = √((c₁−c₂)² + (r+s)²),
//! u± = 1 − c₃ ± R,             v± = 1 + c₃ ± R'.
//! ```
//!
//! `u±/4` and `v±/4` are the eigenvalues of the inner and outer 2×2 blocks.
//! The `*_printed` functions evaluate the long-form expressions exactly as
//! usually written; they disagree with the numeric definition away from a few
//! special points and are kept for reporting.

use crate::bases::AmubLabel;
use crate::error::{Error, Result};
use crate::states::{
    bell_diagonal, x_state_z, BellDiagonalParams, IsotropicParam, WernerParam, XStateZParams,
};

use super::{coherence_numeric, CoherenceValue};

/// Below this, R or R' is treated as zero and [`cf_xz_a1`] falls back to
/// the numeric route.
pub const SINGULAR_TOL: f64 = 1e-12;

fn root(x: f64) -> f64 {
    x.max(0.0).sqrt()
}

/// Coherence of a Bell-diagonal state in one of the AMUBs.
pub fn cf_bd(params: &BellDiagonalParams, basis: AmubLabel) -> CoherenceValue {
    let value = cf_bd_factors(params.eigenvalue_factors(), basis);
    CoherenceValue::new(value, 4).expect("products of nonnegative radicals")
}

/// [`cf_bd`] from the four radicands in
/// [`BellDiagonalParams::eigenvalue_factors`] order. Negative radicands
/// are clamped to zero.
pub fn cf_bd_factors(factors: [f64; 4], basis: AmubLabel) -> f64 {
    let [f0, f1, f2, f3] = factors.map(root);
    let sum = match basis {
        AmubLabel::A1 => 2.0 - f0 * f1 - f2 * f3,
        AmubLabel::A2 => 2.0 - f1 * f2 - f0 * f3,
        AmubLabel::A3 => 2.0 - f0 * f2 - f1 * f3,
    };
    sum / 4.0
}

/// Sum of [`cf_bd`] over a₁, a₂, a₃.
pub fn cf_bd_sum(params: &BellDiagonalParams) -> f64 {
    AmubLabel::ALL
        .iter()
        .map(|&b| cf_bd(params, b).value())
        .sum()
}

/// Werner state coherence, the same in all three AMUBs.
pub fn cf_werner(p: WernerParam) -> CoherenceValue {
    let p = p.p();
    let value = (8.0 - (p * (48.0 - 27.0 * p)).sqrt() - 3.0 * p) / 16.0;
    CoherenceValue::new(value, 4).expect("Werner value in range")
}

/// Isotropic state coherence, the same in all three AMUBs.
pub fn cf_isotropic(f: IsotropicParam) -> CoherenceValue {
    let f = f.f();
    let value = (1.0 + 2.0 * f - 2.0 * (3.0 * f * (1.0 - f)).sqrt()) / 6.0;
    CoherenceValue::new(value, 4).expect("isotropic value in range")
}

struct XzBlocks {
    m: f64,
    h: f64,
    big_r: f64,
    m2: f64,
    h2: f64,
    big_r2: f64,
}

impl XzBlocks {
    fn new(p: &XStateZParams) -> Self {
        let [c1, c2, c3] = p.c;
        let h = p.r - p.s;
        let h2 = p.r + p.s;
        Self {
            m: 1.0 - c3,
            h,
            big_r: (c1 + c2).hypot(h),
            m2: 1.0 + c3,
            h2,
            big_r2: (c1 - c2).hypot(h2),
        }
    }

    fn singular(&self) -> bool {
        self.big_r < SINGULAR_TOL || self.big_r2 < SINGULAR_TOL
    }

    /// `[√u₋, √u₊, √v₋, √v₊]`
    fn roots(&self) -> [f64; 4] {
        [
            root(self.m - self.big_r),
            root(self.m + self.big_r),
            root(self.m2 - self.big_r2),
            root(self.m2 + self.big_r2),
        ]
    }
}

fn check_xz(params: &XStateZParams) -> Result<()> {
    x_state_z(params).map(|_| ())
}

fn numeric_xz(params: &XStateZParams, basis: AmubLabel) -> Result<CoherenceValue> {
    coherence_numeric(&x_state_z(params)?, basis.basis())
}

/// X-state coherence in a₁. Falls back to the numeric route when R or R'
/// vanishes.
pub fn cf_xz_a1(params: &XStateZParams) -> Result<CoherenceValue> {
    check_xz(params)?;
    let b = XzBlocks::new(params);
    if b.singular() {
        return numeric_xz(params, AmubLabel::A1);
    }
    let [um, up, vm, vp] = b.roots();
    let (r, h) = (b.big_r, b.h);
    let x1 = up * (r + h) + um * (r - h);
    let x2 = um * (r + h) + up * (r - h);
    let (r2, h2) = (b.big_r2, b.h2);
    let y1 = vp * (r2 - h2) + vm * (r2 + h2);
    let y2 = vm * (h2 - r2) - vp * (h2 + r2);
    let value = 1.0 - (x1 * x1 + x2 * x2) / (16.0 * r * r) - (y1 * y1 + y2 * y2) / (16.0 * r2 * r2);
    CoherenceValue::new(value, 4)
}

/// The long-form a₁ expression taken literally, with its repeated
/// `√(1+c₃+R')` factor. `None` when R or R' vanishes.
pub fn cf_xz_a1_printed(params: &XStateZParams) -> Option<f64> {
    let b = XzBlocks::new(params);
    if b.singular() {
        return None;
    }
    let [um, up, vm, vp] = b.roots();
    let (r, h) = (b.big_r, b.h);
    let x1 = up * (h + r) + um * (-h + r);
    let x2 = um * (h + r) + up * (-h + r);
    let (r2, h2) = (b.big_r2, b.h2);
    let y1 = vp * (-h2 + r2) + vp * (h2 + r2);
    let y2 = vm * (h2 - r2) - vp * (h2 + r2);
    Some(1.0 - (x1 * x1 + x2 * x2) / (16.0 * r * r) - (y1 * y1 + y2 * y2) / (16.0 * r2 * r2))
}

/// X-state coherence summed over a₁, a₂, a₃:
/// `(6 − Σ over all six pairs of √u₋, √u₊, √v₋, √v₊)/4`.
pub fn cf_xz_sum(params: &XStateZParams) -> Result<f64> {
    check_xz(params)?;
    let roots = XzBlocks::new(params).roots();
    let mut pairs = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            pairs += roots[i] * roots[j];
        }
    }
    let value = (6.0 - pairs) / 4.0;
    if !(-3.0 * super::BOUND_TOL..=2.25 + 3.0 * super::BOUND_TOL).contains(&value) {
        return Err(Error::Internal(format!(
            "summed coherence {value} out of range"
        )));
    }
    Ok(value.max(0.0))
}

/// The long-form summed expression taken literally, reading its unsigned
/// third line as subtracted. That line repeats `√v₋√u₊` and `√u₊√v₊`
/// never appears.
pub fn cf_xz_sum_printed(params: &XStateZParams) -> f64 {
    let [um, up, vm, vp] = XzBlocks::new(params).roots();
    (6.0 - um * up - vm * up - vm * up - um * vm - um * vp - vm * vp) / 4.0
}

/// `cf_bd` evaluated through the numeric route, for cross-checks.
pub fn numeric_bd(params: &BellDiagonalParams, basis: AmubLabel) -> CoherenceValue {
    coherence_numeric(&bell_diagonal(params), basis.basis()).expect("4x4 state and basis")
}
