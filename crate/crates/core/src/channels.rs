//! Single-qubit Kraus channels applied locally to both qubits.
//!
//! ```text
//! Φ(ρ) = Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†
//! ```
//!
//! Bit, phase and bit-phase flip keep Bell-diagonal states Bell-diagonal
//! for any p, and so does generalized amplitude damping at p = 1/2. On such
//! inputs the correlations transform as `cᵢ' = cᵢ (1−p)^kᵢ` with the
//! exponents in [`COEFFICIENT_MAPS`]. For GAD the swept parameter is γ.

use std::fmt;
use std::str::FromStr;

use crate::bases::AmubLabel;
use crate::coherence::{coherence_numeric, CoherenceValue};
use crate::error::{Error, Result};
use crate::linalg::pauli::sigma;
use crate::linalg::{kron, multiply, ComplexMatrix};
use crate::numfmt::sig;
use crate::states::{bell_diagonal, check_unit_interval, BellDiagonalParams, DensityMatrix};

pub const COMPLETENESS_TOL: f64 = 1e-12;

/// Largest entrywise gap allowed between the correlation-map prediction and
/// the Kraus sum in [`dynamics_curve`].
pub const CROSS_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    Bf,
    Pf,
    Bpf,
    Gad,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 4] = [Self::Bf, Self::Pf, Self::Bpf, Self::Gad];

    pub fn label(self) -> &'static str {
        match self {
            Self::Bf => "BF",
            Self::Pf => "PF",
            Self::Bpf => "BPF",
            Self::Gad => "GAD",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ChannelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown channel '{s}'")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    p: f64,
    gamma: Option<f64>,
    operators: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn gamma(&self) -> Option<f64> {
        self.gamma
    }

    pub fn operators(&self) -> &[ComplexMatrix] {
        &self.operators
    }

    /// max |Σ Eₖ†Eₖ − I|
    pub fn completeness_error(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(2);
        for e in &self.operators {
            sum = sum
                .add(&multiply(&e.adjoint(), e).expect("2x2"))
                .expect("2x2");
        }
        sum.max_abs_diff(&ComplexMatrix::identity(2)).expect("2x2")
    }

    /// The parameter the correlation map is written in: p for the flips, γ for
    /// GAD.
    pub fn table_parameter(&self) -> f64 {
        self.gamma.unwrap_or(self.p)
    }
}

/// Single-qubit Kraus operators. `gamma` is required for GAD and rejected
/// otherwise.
pub fn make_channel(kind: ChannelKind, p: f64, gamma: Option<f64>) -> Result<KrausChannel> {
    check_unit_interval("p", p)?;
    let operators = match (kind, gamma) {
        (ChannelKind::Gad, Some(g)) => {
            check_unit_interval("gamma", g)?;
            let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
            let (sg, sg1) = (g.sqrt(), (1.0 - g).sqrt());
            vec![
                ComplexMatrix::from_real(2, &[a, 0.0, 0.0, a * sg1])?,
                ComplexMatrix::from_real(2, &[0.0, a * sg, 0.0, 0.0])?,
                ComplexMatrix::from_real(2, &[b * sg1, 0.0, 0.0, b])?,
                ComplexMatrix::from_real(2, &[0.0, 0.0, b * sg, 0.0])?,
            ]
        }
        (ChannelKind::Gad, None) => {
            return Err(Error::InvalidParameter("GAD requires gamma".into()));
        }
        (_, Some(_)) => {
            return Err(Error::InvalidParameter(format!("{kind} takes no gamma")));
        }
        (_, None) => {
            let axis = match kind {
                ChannelKind::Bf => 1,
                ChannelKind::Bpf => 2,
                _ => 3,
            };
            vec![
                ComplexMatrix::identity(2).scale_real((1.0 - p / 2.0).sqrt()),
                sigma(axis).scale_real((p / 2.0).sqrt()),
            ]
        }
    };
    Ok(KrausChannel {
        kind,
        p,
        gamma,
        operators,
    })
}

/// One-parameter form: the flips at p, GAD at p = 1/2 with γ = `param`.
pub fn reduced_channel(kind: ChannelKind, param: f64) -> Result<KrausChannel> {
    match kind {
        ChannelKind::Gad => make_channel(kind, 0.5, Some(param)),
        _ => make_channel(kind, param, None),
    }
}

/// Σᵢⱼ (Eᵢ⊗Eⱼ) ρ (Eᵢ⊗Eⱼ)†
pub fn apply_product_channel(channel: &KrausChannel, rho: &DensityMatrix) -> Result<DensityMatrix> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let mut out = ComplexMatrix::zeros(4);
    for a in &channel.operators {
        for b in &channel.operators {
            let k = kron(a, b);
            let term = multiply(&multiply(&k, rho.matrix())?, &k.adjoint())?;
            out = out.add(&term)?;
        }
    }
    DensityMatrix::new(out).map_err(|e| Error::Internal(format!("channel output invalid: {e}")))
}

/// `cᵢ' = cᵢ (1−p)^exponents[i]`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoefficientMap {
    pub kind: ChannelKind,
    pub exponents: [i32; 3],
}

pub const COEFFICIENT_MAPS: [CoefficientMap; 4] = [
    CoefficientMap {
        kind: ChannelKind::Bf,
        exponents: [0, 2, 2],
    },
    CoefficientMap {
        kind: ChannelKind::Pf,
        exponents: [2, 2, 0],
    },
    CoefficientMap {
        kind: ChannelKind::Bpf,
        exponents: [2, 0, 2],
    },
    CoefficientMap {
        kind: ChannelKind::Gad,
        exponents: [1, 1, 2],
    },
];

impl CoefficientMap {
    pub fn for_kind(kind: ChannelKind) -> &'static CoefficientMap {
        COEFFICIENT_MAPS
            .iter()
            .find(|m| m.kind == kind)
            .expect("every kind has a map")
    }

    pub fn apply(&self, c: [f64; 3], p: f64) -> [f64; 3] {
        let q = 1.0 - p;
        [0, 1, 2].map(|i| c[i] * q.powi(self.exponents[i]))
    }
}

pub fn predicted_coefficients(
    map: &CoefficientMap,
    c: &BellDiagonalParams,
    p: f64,
) -> Result<BellDiagonalParams> {
    check_unit_interval("p", p)?;
    BellDiagonalParams::from_array(map.apply(c.as_array(), p))
}

/// Coherence of the channel output along `p_grid`, through the coefficient
/// map and the numeric route. Each point is checked against the Kraus sum
/// of [`reduced_channel`].
pub fn dynamics_curve(
    kind: ChannelKind,
    c: &BellDiagonalParams,
    basis: AmubLabel,
    p_grid: &[f64],
) -> Result<Vec<(f64, CoherenceValue)>> {
    let map = CoefficientMap::for_kind(kind);
    let input = bell_diagonal(c);
    p_grid
        .iter()
        .map(|&p| {
            let predicted = bell_diagonal(&predicted_coefficients(map, c, p)?);
            let direct = apply_product_channel(&reduced_channel(kind, p)?, &input)?;
            let gap = predicted.matrix().max_abs_diff(direct.matrix())?;
            if gap > CROSS_CHECK_TOL {
                return Err(Error::Internal(format!(
                    "{kind} at p={p}: coefficient map and Kraus sum differ by {gap:e}"
                )));
            }
            Ok((p, coherence_numeric(&predicted, basis.basis())?))
        })
        .collect()
}

/// `n` evenly spaced points from 0 to 1 inclusive.
pub fn unit_grid(n: usize) -> Vec<f64> {
    assert!(n >= 2);
    (0..n).map(|i| i as f64 / (n - 1) as f64).collect()
}

/// CSV with header `p,C`, 12 significant digits.
pub fn dynamics_csv(points: &[(f64, CoherenceValue)]) -> String {
    let mut out = String::from("p,C\n");
    for (p, c) in points {
        out.push_str(&format!("{},{}\n", sig(*p, 12), sig(c.value(), 12)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli::sigma;
    use crate::sampling::{random_bell_diagonal, random_density, rng};
    use crate::states::{bell_diagonal_deviation, correlation_coefficients};
    use rand::Rng;

    #[test]
    fn operators_as_tabulated() {
        let bf = make_channel(ChannelKind::Bf, 0.0, None).unwrap();
        assert_eq!(bf.operators()[0], ComplexMatrix::identity(2));
        assert_eq!(bf.operators()[1], ComplexMatrix::zeros(2));

        let p = 0.3;
        let pf = make_channel(ChannelKind::Pf, p, None).unwrap();
        let e0 = ComplexMatrix::identity(2).scale_real((1.0 - p / 2.0).sqrt());
        let e1 = sigma(3).scale_real((p / 2.0).sqrt());
        assert_eq!(pf.operators(), &[e0, e1]);

        let gad = make_channel(ChannelKind::Gad, 0.3, Some(0.6)).unwrap();
        assert_eq!(gad.operators().len(), 4);
        assert!(gad.completeness_error() <= COMPLETENESS_TOL);
    }

    #[test]
    fn completeness() {
        let mut g = rng(41);
        for _ in 0..200 {
            for kind in ChannelKind::ALL {
                let p = g.gen_range(0.0..=1.0);
                let ch = match kind {
                    ChannelKind::Gad => make_channel(kind, p, Some(g.gen_range(0.0..=1.0))),
                    _ => make_channel(kind, p, None),
                }
                .unwrap();
                assert!(ch.completeness_error() <= COMPLETENESS_TOL);
            }
        }
    }

    #[test]
    fn parameter_errors() {
        assert!(make_channel(ChannelKind::Gad, 0.5, None).is_err());
        assert!(make_channel(ChannelKind::Bf, 0.5, Some(0.1)).is_err());
        assert!(make_channel(ChannelKind::Pf, 1.5, None).is_err());
        assert!(make_channel(ChannelKind::Gad, 0.5, Some(-0.1)).is_err());
        assert!("XX".parse::<ChannelKind>().is_err());
        assert_eq!("bpf".parse::<ChannelKind>().unwrap(), ChannelKind::Bpf);
    }

    #[test]
    fn cptp_on_random_states() {
        let mut g = rng(42);
        for i in 0..500 {
            let rho = random_density(&mut g, 4);
            let kind = ChannelKind::ALL[i % 4];
            let ch = reduced_channel(kind, g.gen_range(0.0..=1.0)).unwrap();
            let out = apply_product_channel(&ch, &rho).unwrap();
            let tr: f64 = out.matrix().diagonal().iter().map(|z| z.re).sum();
            assert!((tr - 1.0).abs() <= 1e-12);
            assert!(out.eigenvalues()[0] >= -1e-10);
        }
    }

    #[test]
    fn identity_channel() {
        let mut g = rng(43);
        let rho = random_density(&mut g, 4);
        let ch = make_channel(ChannelKind::Bpf, 0.0, None).unwrap();
        let out = apply_product_channel(&ch, &rho).unwrap();
        assert!(out.matrix().max_abs_diff(rho.matrix()).unwrap() <= 1e-15);
    }

    #[test]
    fn table_matches_kraus_sum() {
        let mut g = rng(44);
        for _ in 0..200 {
            let c = random_bell_diagonal(&mut g);
            let p = g.gen_range(0.0..=1.0);
            for kind in ChannelKind::ALL {
                let out =
                    apply_product_channel(&reduced_channel(kind, p).unwrap(), &bell_diagonal(&c))
                        .unwrap();
                let got = correlation_coefficients(&out).unwrap();
                let want = predicted_coefficients(CoefficientMap::for_kind(kind), &c, p)
                    .unwrap()
                    .as_array();
                for i in 0..3 {
                    assert!((got[i] - want[i]).abs() <= 1e-12, "{kind} {c:?} {p}");
                }
                assert!(bell_diagonal_deviation(&out).unwrap() <= 1e-12);
            }
        }
    }

    #[test]
    fn gad_away_from_half_leaves_the_family() {
        let c = BellDiagonalParams::new(0.3, -0.2, 0.4).unwrap();
        let ch = make_channel(ChannelKind::Gad, 0.9, Some(0.5)).unwrap();
        let out = apply_product_channel(&ch, &bell_diagonal(&c)).unwrap();
        assert!(bell_diagonal_deviation(&out).unwrap() > 1e-3);
    }

    #[test]
    fn predicted_examples() {
        let c = BellDiagonalParams::new(0.3, -0.2, 0.4).unwrap();
        let pf =
            predicted_coefficients(CoefficientMap::for_kind(ChannelKind::Pf), &c, 0.5).unwrap();
        assert_eq!(pf.as_array(), [0.075, -0.05, 0.4]);
        let bpf =
            predicted_coefficients(CoefficientMap::for_kind(ChannelKind::Bpf), &c, 1.0).unwrap();
        assert_eq!(bpf.as_array(), [0.0, -0.2, 0.0]);
        for kind in ChannelKind::ALL {
            let id = predicted_coefficients(CoefficientMap::for_kind(kind), &c, 0.0).unwrap();
            assert_eq!(id, c);
        }
    }

    #[test]
    fn dynamics_decrease_to_zero() {
        let grid = unit_grid(101);
        for c in [[-0.2, 0.6, 0.6], [-0.6, 0.2, 0.2]] {
            let c = BellDiagonalParams::from_array(c).unwrap();
            for kind in ChannelKind::ALL {
                let curve = dynamics_curve(kind, &c, AmubLabel::A1, &grid).unwrap();
                let start = coherence_numeric(&bell_diagonal(&c), AmubLabel::A1.basis()).unwrap();
                assert_eq!(curve[0].1, start);
                for w in curve.windows(2) {
                    assert!(w[1].1.value() <= w[0].1.value() + 1e-10, "{kind}");
                }
                if matches!(kind, ChannelKind::Pf | ChannelKind::Gad) {
                    assert!(curve[100].1.value() <= 1e-12, "{kind}");
                }
            }
        }
    }

    #[test]
    fn csv_layout() {
        let c = BellDiagonalParams::new(-0.2, 0.6, 0.6).unwrap();
        let curve = dynamics_curve(ChannelKind::Pf, &c, AmubLabel::A1, &[0.0, 1.0]).unwrap();
        let csv = dynamics_csv(&curve);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "p,C");
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[2], "1,0");
    }
}
