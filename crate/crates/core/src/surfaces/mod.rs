//! Coherence level sets over the correlation cube [−1, 1]³.
//!
//! Fields are sampled on an `n`-point lattice per axis. Grid coordinates
//! are `k/N` with `N = n − 1` and integer `k = 2i − N`, and the
//! tetrahedron factors and X-state matrix entries are formed from the
//! integer numerators so that boundary eigenvalues come out exactly zero.

mod export;
mod mesh;
mod tables;

pub use export::{curve_csv, field_csv, mesh_obj, mesh_ply};
pub use mesh::{extract_isosurface, IsoSurfaceMesh};

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::bases::AmubLabel;
use crate::channels::{ChannelKind, CoefficientMap};
use crate::coherence::{cf_bd_factors, cf_isotropic, cf_werner, coherence_from_sqrt};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{
    check_unit_interval, BellDiagonalParams, DensityMatrix, IsotropicParam, WernerParam,
};

pub const DEFAULT_RESOLUTION: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldMeasure {
    Basis(AmubLabel),
    Sum,
}

impl FieldMeasure {
    pub const ALL: [FieldMeasure; 4] = [
        FieldMeasure::Basis(AmubLabel::A1),
        FieldMeasure::Basis(AmubLabel::A2),
        FieldMeasure::Basis(AmubLabel::A3),
        FieldMeasure::Sum,
    ];
}

impl fmt::Display for FieldMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Basis(b) => b.fmt(f),
            Self::Sum => f.write_str("sum"),
        }
    }
}

impl FromStr for FieldMeasure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.eq_ignore_ascii_case("sum") {
            return Ok(Self::Sum);
        }
        s.parse().map(Self::Basis)
    }
}

/// Values on an `n × n × n` lattice over [−1, 1]³, `None` where the
/// parameters do not describe a state. Index order is c₁ fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField3D {
    resolution: usize,
    values: Vec<Option<f64>>,
}

impl ScalarField3D {
    /// Evaluates `f` at every lattice point in parallel. `f` receives the
    /// integer numerators `[k₁, k₂, k₃]` and `N`.
    pub fn from_lattice<F>(resolution: usize, f: F) -> Result<Self>
    where
        F: Fn([i64; 3], i64) -> Option<f64> + Sync,
    {
        if resolution < 2 {
            return Err(Error::InvalidParameter(format!(
                "resolution must be at least 2, got {resolution}"
            )));
        }
        let n = resolution;
        let big_n = (n - 1) as i64;
        let values = (0..n * n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j, k) = (idx % n, (idx / n) % n, idx / (n * n));
                let num = [i, j, k].map(|t| 2 * t as i64 - big_n);
                f(num, big_n)
            })
            .collect();
        Ok(Self { resolution, values })
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> Option<f64> {
        let n = self.resolution;
        self.values[i + n * (j + n * k)]
    }

    pub fn coordinate(&self, i: usize) -> f64 {
        let big_n = (self.resolution - 1) as i64;
        (2 * i as i64 - big_n) as f64 / big_n as f64
    }

    pub fn point(&self, i: usize, j: usize, k: usize) -> [f64; 3] {
        [self.coordinate(i), self.coordinate(j), self.coordinate(k)]
    }

    pub fn spacing(&self) -> f64 {
        2.0 / (self.resolution - 1) as f64
    }

    pub fn physical_count(&self) -> usize {
        self.values.iter().flatten().count()
    }

    pub fn max_value(&self) -> Option<f64> {
        self.values.iter().flatten().copied().reduce(f64::max)
    }
}

fn lattice_factors([k1, k2, k3]: [i64; 3], n: i64) -> [i64; 4] {
    [
        n - k1 - k2 - k3,
        n + k1 + k2 - k3,
        n + k1 - k2 + k3,
        n - k1 + k2 + k3,
    ]
}

fn bd_value(factors: [f64; 4], measure: FieldMeasure) -> f64 {
    match measure {
        FieldMeasure::Basis(b) => cf_bd_factors(factors, b),
        FieldMeasure::Sum => AmubLabel::ALL
            .iter()
            .map(|&b| cf_bd_factors(factors, b))
            .sum(),
    }
}

/// Closed-form Bell-diagonal coherence at a point of the cube, `None`
/// outside the tetrahedron.
pub fn bd_point_value(c: [f64; 3], measure: FieldMeasure) -> Option<f64> {
    let params = BellDiagonalParams::from_array(c).ok()?;
    Some(bd_value(params.eigenvalue_factors(), measure))
}

pub fn sample_bd_field(measure: FieldMeasure, resolution: usize) -> Result<ScalarField3D> {
    ScalarField3D::from_lattice(resolution, |k, n| {
        let f = lattice_factors(k, n);
        if f.iter().any(|&x| x < 0) {
            return None;
        }
        Some(bd_value(f.map(|x| x as f64 / n as f64), measure))
    })
}

fn xz_lattice_matrix(r: f64, s: f64, [k1, k2, k3]: [i64; 3], n: i64) -> ComplexMatrix {
    let (nf, d) = (n as f64, 4.0 * n as f64);
    let (k1, k2, k3) = (k1 as f64, k2 as f64, k3 as f64);
    #[rustfmt::skip]
    let entries = [
        (nf * (1.0 + r + s) + k3) / d, 0.0, 0.0, (k1 - k2) / d,
        0.0, (nf * (1.0 + r - s) - k3) / d, (k1 + k2) / d, 0.0,
        0.0, (k1 + k2) / d, (nf * (1.0 - r + s) - k3) / d, 0.0,
        (k1 - k2) / d, 0.0, 0.0, (nf * (1.0 - r - s) + k3) / d,
    ];
    ComplexMatrix::from_real(4, &entries).expect("4x4")
}

/// Numeric-route coherence of the X state with fixed local terms `r`, `s`.
pub fn sample_xz_field(
    r: f64,
    s: f64,
    measure: FieldMeasure,
    resolution: usize,
) -> Result<ScalarField3D> {
    for (name, v) in [("r", r), ("s", s)] {
        if !v.is_finite() || v.abs() > 1.0 {
            return Err(Error::InvalidParameter(format!(
                "{name} must lie in [-1, 1], got {v}"
            )));
        }
    }
    ScalarField3D::from_lattice(resolution, |k, n| {
        let rho = DensityMatrix::new(xz_lattice_matrix(r, s, k, n)).ok()?;
        let sqrt = rho.sqrt();
        let eval = |b: AmubLabel| coherence_from_sqrt(&sqrt, b.basis()).expect("4x4");
        Some(match measure {
            FieldMeasure::Basis(b) => eval(b),
            FieldMeasure::Sum => AmubLabel::ALL.iter().map(|&b| eval(b)).sum(),
        })
    })
}

/// a₁ coherence of the channel output over input correlations, using the
/// one-parameter form of the channel.
pub fn sample_channel_field(kind: ChannelKind, p: f64, resolution: usize) -> Result<ScalarField3D> {
    check_unit_interval("p", p)?;
    let weights = CoefficientMap::for_kind(kind).apply([1.0; 3], p);
    ScalarField3D::from_lattice(resolution, |k, n| {
        if lattice_factors(k, n).iter().any(|&x| x < 0) {
            return None;
        }
        let c = [0, 1, 2].map(|i| k[i] as f64 * weights[i]);
        Some(channel_value(c, n as f64))
    })
}

/// a₁ coherence for correlations `c / scale`.
fn channel_value([c1, c2, c3]: [f64; 3], scale: f64) -> f64 {
    let factors = [
        scale - c1 - c2 - c3,
        scale + c1 + c2 - c3,
        scale + c1 - c2 + c3,
        scale - c1 + c2 + c3,
    ];
    cf_bd_factors(factors.map(|f| f / scale), AmubLabel::A1)
}

/// a₁ coherence of the channel output for input correlations `c`.
pub fn channel_point_value(kind: ChannelKind, p: f64, c: [f64; 3]) -> Option<f64> {
    BellDiagonalParams::from_array(c).ok()?;
    Some(channel_value(
        CoefficientMap::for_kind(kind).apply(c, p),
        1.0,
    ))
}

pub fn channel_surface(
    kind: ChannelKind,
    p: f64,
    level: f64,
    resolution: usize,
) -> Result<IsoSurfaceMesh> {
    extract_isosurface(&sample_channel_field(kind, p, resolution)?, level)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Curve1D {
    parameter: String,
    samples: Vec<(f64, f64)>,
}

impl Curve1D {
    pub fn new(parameter: impl Into<String>, samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.windows(2).any(|w| w[1].0 <= w[0].0) {
            return Err(Error::InvalidParameter(
                "curve abscissae must be strictly increasing".into(),
            ));
        }
        Ok(Self {
            parameter: parameter.into(),
            samples,
        })
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }
}

pub fn werner_curve(p_grid: &[f64]) -> Result<Curve1D> {
    let samples = p_grid
        .iter()
        .map(|&p| Ok((p, cf_werner(WernerParam::new(p)?).value())))
        .collect::<Result<_>>()?;
    Curve1D::new("p", samples)
}

pub fn isotropic_curve(f_grid: &[f64]) -> Result<Curve1D> {
    let samples = f_grid
        .iter()
        .map(|&f| Ok((f, cf_isotropic(IsotropicParam::new(f)?).value())))
        .collect::<Result<_>>()?;
    Curve1D::new("F", samples)
}
