//! Reference bases: orthonormal bases, qubit mutually unbiased bases (MUBs),
//! and their autotensor products (AMUBs) on two qubits.

pub mod io;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{inner, kron_vec, multiply, ComplexMatrix, ONE, ZERO};
use crate::states::DensityMatrix;

/// Orthonormality tolerance for basis construction.
pub const ORTHONORMAL_TOL: f64 = 1e-12;
/// Unbiasedness tolerance for MUB/AMUB construction.
pub const UNBIASED_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct OrthonormalBasis {
    vectors: Vec<Vec<Complex64>>,
}

impl OrthonormalBasis {
    pub fn new(vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        let dim = vectors.len();
        if dim == 0 {
            return Err(Error::InvalidBasis("basis has no vectors".into()));
        }
        if let Some(bad) = vectors.iter().position(|v| v.len() != dim) {
            return Err(Error::InvalidBasis(format!(
                "vector {bad} has {} components, expected {dim}",
                vectors[bad].len()
            )));
        }
        for i in 0..dim {
            for j in i..dim {
                let ip = inner(&vectors[i], &vectors[j]);
                let want = if i == j { ONE } else { ZERO };
                let dev = (ip - want).norm();
                if dev > ORTHONORMAL_TOL {
                    return Err(Error::InvalidBasis(format!(
                        "⟨b{i}|b{j}⟩ = {ip:.3e} deviates from {} by {dev:.3e}",
                        want.re
                    )));
                }
            }
        }
        Ok(Self { vectors })
    }

    pub fn computational(dim: usize) -> Self {
        let vectors = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { ONE } else { ZERO }).collect())
            .collect();
        Self { vectors }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }

    pub fn vector(&self, i: usize) -> &[Complex64] {
        &self.vectors[i]
    }

    /// Unitary whose columns are the basis vectors.
    pub fn unitary(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut entries = vec![ZERO; d * d];
        for (col, v) in self.vectors.iter().enumerate() {
            for (row, z) in v.iter().enumerate() {
                entries[row * d + col] = *z;
            }
        }
        ComplexMatrix::new(d, entries).expect("square")
    }

    /// Basis of tensor products `u ⊗ v`, ordered with the left factor slowest.
    pub fn tensor(&self, other: &Self) -> Self {
        let vectors = self
            .vectors
            .iter()
            .flat_map(|u| other.vectors.iter().map(move |v| kron_vec(u, v)))
            .collect();
        Self { vectors }
    }
}

/// Largest deviation of cross-basis overlaps from the unbiased value.
#[derive(Debug, Clone, PartialEq)]
pub struct PairDeviation {
    pub first: usize,
    pub second: usize,
    pub max_deviation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UnbiasednessReport {
    /// The overlap magnitude every cross-basis pair should have.
    pub target: f64,
    pub pairs: Vec<PairDeviation>,
}

impl UnbiasednessReport {
    pub fn max_deviation(&self) -> f64 {
        self.pairs
            .iter()
            .map(|p| p.max_deviation)
            .fold(0.0, f64::max)
    }

    pub fn passed(&self, tol: f64) -> bool {
        self.max_deviation() <= tol
    }
}

impl fmt::Display for UnbiasednessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "target overlap {:.12}", self.target)?;
        for p in &self.pairs {
            writeln!(
                f,
                "  bases ({}, {}): max deviation {:.3e}",
                p.first, p.second, p.max_deviation
            )?;
        }
        Ok(())
    }
}

/// Checks `| |⟨i|j⟩| − target |` for every pair of distinct bases.
pub fn unbiasedness(bases: &[OrthonormalBasis], target: f64) -> Result<UnbiasednessReport> {
    if let Some(first) = bases.first() {
        if let Some(bad) = bases.iter().find(|b| b.dim() != first.dim()) {
            return Err(Error::DimensionMismatch {
                expected: first.dim(),
                found: bad.dim(),
            });
        }
    }
    let mut pairs = Vec::new();
    for k in 0..bases.len() {
        for l in (k + 1)..bases.len() {
            let mut worst: f64 = 0.0;
            for u in bases[k].vectors() {
                for v in bases[l].vectors() {
                    worst = worst.max((inner(u, v).norm() - target).abs());
                }
            }
            pairs.push(PairDeviation {
                first: k,
                second: l,
                max_deviation: worst,
            });
        }
    }
    Ok(UnbiasednessReport { target, pairs })
}

/// A set of mutually unbiased bases of ℂ^d.
#[derive(Debug, Clone, PartialEq)]
pub struct MubSet {
    bases: Vec<OrthonormalBasis>,
}

impl MubSet {
    pub fn new(bases: Vec<OrthonormalBasis>) -> Result<Self> {
        let report = check_mub(&bases)?;
        if !report.passed(UNBIASED_TOL) {
            return Err(Error::InvalidBasis(format!(
                "bases are not mutually unbiased (max deviation {:.3e})",
                report.max_deviation()
            )));
        }
        Ok(Self { bases })
    }

    pub fn bases(&self) -> &[OrthonormalBasis] {
        &self.bases
    }

    pub fn dim(&self) -> usize {
        self.bases.first().map_or(0, OrthonormalBasis::dim)
    }
}

/// Autotensor of MUBs: bases `{e_ki ⊗ e_kj}` of ℂ^{d²}.
#[derive(Debug, Clone, PartialEq)]
pub struct AmubSet {
    bases: Vec<OrthonormalBasis>,
}

impl AmubSet {
    pub fn new(bases: Vec<OrthonormalBasis>) -> Result<Self> {
        let report = check_amub(&bases)?;
        if !report.passed(UNBIASED_TOL) {
            return Err(Error::InvalidBasis(format!(
                "bases are not autotensor-unbiased (max deviation {:.3e})",
                report.max_deviation()
            )));
        }
        Ok(Self { bases })
    }

    pub fn bases(&self) -> &[OrthonormalBasis] {
        &self.bases
    }

    pub fn basis(&self, label: AmubLabel) -> &OrthonormalBasis {
        &self.bases[label.index()]
    }
}

/// Unbiasedness report for candidate MUBs (target 1/√d).
pub fn check_mub(bases: &[OrthonormalBasis]) -> Result<UnbiasednessReport> {
    let d = bases.first().map_or(1, OrthonormalBasis::dim);
    unbiasedness(bases, 1.0 / (d as f64).sqrt())
}

/// Unbiasedness report for candidate AMUBs on ℂ^{d²} (target 1/d).
pub fn check_amub(bases: &[OrthonormalBasis]) -> Result<UnbiasednessReport> {
    let n = bases.first().map_or(1, OrthonormalBasis::dim);
    let d = (n as f64).sqrt().round() as usize;
    if d * d != n {
        return Err(Error::InvalidBasis(format!(
            "AMUB dimension {n} is not a perfect square"
        )));
    }
    unbiasedness(bases, 1.0 / d as f64)
}

pub fn verify_mub(mubs: &MubSet) -> UnbiasednessReport {
    check_mub(&mubs.bases).expect("validated at construction")
}

pub fn verify_amub(amubs: &AmubSet) -> UnbiasednessReport {
    check_amub(&amubs.bases).expect("validated at construction")
}

/// The three qubit MUBs e₁ (computational), e₂ ((|0⟩±|1⟩)/√2) and
/// e₃ ((|0⟩±i|1⟩)/√2).
pub fn qubit_mubs() -> MubSet {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let re = |x: f64| Complex64::new(x, 0.0);
    let im = |x: f64| Complex64::new(0.0, x);
    let e1 = OrthonormalBasis::computational(2);
    let e2 = vec![vec![re(h), re(h)], vec![re(h), re(-h)]];
    let e3 = vec![vec![re(h), im(h)], vec![re(h), im(-h)]];
    let bases = vec![
        e1,
        OrthonormalBasis::new(e2).expect("orthonormal"),
        OrthonormalBasis::new(e3).expect("orthonormal"),
    ];
    MubSet::new(bases).expect("qubit MUBs are unbiased")
}

/// Basis k of the result is `{e_ki ⊗ e_kj}` with (i, j) in row-major order.
pub fn amub_from_mubs(mubs: &MubSet) -> Result<AmubSet> {
    AmubSet::new(mubs.bases().iter().map(|e| e.tensor(e)).collect())
}

/// The two-qubit AMUBs {a₁, a₂, a₃} built from [`qubit_mubs`].
pub fn standard_amubs() -> &'static AmubSet {
    static AMUBS: OnceLock<AmubSet> = OnceLock::new();
    AMUBS.get_or_init(|| amub_from_mubs(&qubit_mubs()).expect("qubit AMUBs are valid"))
}

/// Selects one of the standard two-qubit AMUB bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmubLabel {
    A1,
    A2,
    A3,
}

impl AmubLabel {
    pub const ALL: [AmubLabel; 3] = [AmubLabel::A1, AmubLabel::A2, AmubLabel::A3];

    pub fn index(self) -> usize {
        match self {
            AmubLabel::A1 => 0,
            AmubLabel::A2 => 1,
            AmubLabel::A3 => 2,
        }
    }

    pub fn basis(self) -> &'static OrthonormalBasis {
        standard_amubs().basis(self)
    }
}

impl fmt::Display for AmubLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.index() + 1)
    }
}

impl FromStr for AmubLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a1" => Ok(AmubLabel::A1),
            "a2" => Ok(AmubLabel::A2),
            "a3" => Ok(AmubLabel::A3),
            other => Err(Error::InvalidParameter(format!(
                "unknown basis '{other}' (expected a1, a2 or a3)"
            ))),
        }
    }
}

/// Matrix of an operator in `basis`: entry (i, j) = ⟨bᵢ|A|bⱼ⟩.
pub fn represent_matrix(a: &ComplexMatrix, basis: &OrthonormalBasis) -> Result<ComplexMatrix> {
    if a.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: basis.dim(),
        });
    }
    let u = basis.unitary();
    multiply(&multiply(&u.adjoint(), a)?, &u)
}

/// The density matrix of `rho` written in `basis`.
pub fn represent_in_basis(rho: &DensityMatrix, basis: &OrthonormalBasis) -> Result<ComplexMatrix> {
    represent_matrix(rho.matrix(), basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_eig;
    use crate::sampling::{random_bell_diagonal, random_density, rng};
    use crate::states::{bell_diagonal, x_state_z, BellDiagonalParams, XStateZParams};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn qubit_mub_vectors() {
        let mubs = qubit_mubs();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert_eq!(mubs.bases()[1].vector(1), &[c(h), c(-h)]);
        assert_eq!(mubs.bases()[2].vector(0), &[c(h), Complex64::new(0.0, h)]);
        for u in mubs.bases()[0].vectors() {
            for v in mubs.bases()[1].vectors() {
                assert!((inner(u, v).norm() - h).abs() < 1e-15);
            }
        }
        let report = verify_mub(&mubs);
        assert_eq!(report.pairs.len(), 3);
        assert!(report.max_deviation() < 1e-15);
    }

    #[test]
    fn repeated_basis_is_not_unbiased() {
        let e1 = OrthonormalBasis::computational(2);
        let report = check_mub(&[e1.clone(), e1.clone()]).unwrap();
        assert!(!report.passed(1e-12));
        // overlaps are 0 and 1; the zero overlap sits 1/√2 away from the target
        assert!((report.max_deviation() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
        assert!(MubSet::new(vec![e1.clone(), e1]).is_err());
    }

    #[test]
    fn amub_structure() {
        let amubs = amub_from_mubs(&qubit_mubs()).unwrap();
        assert_eq!(
            amubs.basis(AmubLabel::A1),
            &OrthonormalBasis::computational(4)
        );
        for u in amubs.basis(AmubLabel::A1).vectors() {
            for v in amubs.basis(AmubLabel::A2).vectors() {
                assert!((inner(u, v).norm() - 0.5).abs() < 1e-15);
            }
        }
        let report = verify_amub(&amubs);
        assert!(report.max_deviation() < 1e-14);
        // Ordering: a_{k2} = e_{k1} ⊗ e_{k2}
        let mubs = qubit_mubs();
        let e = &mubs.bases()[1];
        assert_eq!(
            amubs.basis(AmubLabel::A2).vector(1),
            kron_vec(e.vector(0), e.vector(1))
        );
    }

    #[test]
    fn amub_exhaustive_overlaps() {
        // 16 overlaps per basis pair, each of magnitude exactly 1/2.
        let amubs = standard_amubs();
        let mut count = 0;
        for k in 0..3 {
            for l in 0..3 {
                if k == l {
                    continue;
                }
                for u in amubs.bases()[k].vectors() {
                    for v in amubs.bases()[l].vectors() {
                        assert!((inner(u, v).norm() - 0.5).abs() < 1e-15);
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(count, 6 * 16);
    }

    #[test]
    fn rejects_non_orthonormal() {
        assert!(OrthonormalBasis::new(vec![vec![c(1.0), c(0.0)], vec![c(1.0), c(0.0)]]).is_err());
        assert!(OrthonormalBasis::new(vec![vec![c(1.0)], vec![c(0.0), c(1.0)]]).is_err());
        assert!(check_amub(&[OrthonormalBasis::computational(3)]).is_err());
    }

    fn quarter(rows: [[f64; 4]; 4]) -> ComplexMatrix {
        let flat: Vec<f64> = rows.iter().flatten().map(|x| x / 4.0).collect();
        ComplexMatrix::from_real(4, &flat).unwrap()
    }

    #[test]
    fn bell_diagonal_in_each_amub() {
        let (c1, c2, c3) = (0.3, -0.2, 0.1);
        let rho = bell_diagonal(&BellDiagonalParams::new(c1, c2, c3).unwrap());
        let a1 = quarter([
            [1.0 + c3, 0.0, 0.0, c1 - c2],
            [0.0, 1.0 - c3, c1 + c2, 0.0],
            [0.0, c1 + c2, 1.0 - c3, 0.0],
            [c1 - c2, 0.0, 0.0, 1.0 + c3],
        ]);
        let a2 = quarter([
            [1.0 + c1, 0.0, 0.0, c3 - c2],
            [0.0, 1.0 - c1, c3 + c2, 0.0],
            [0.0, c3 + c2, 1.0 - c1, 0.0],
            [c3 - c2, 0.0, 0.0, 1.0 + c1],
        ]);
        let a3 = quarter([
            [1.0 + c2, 0.0, 0.0, c3 - c1],
            [0.0, 1.0 - c2, c3 + c1, 0.0],
            [0.0, c3 + c1, 1.0 - c2, 0.0],
            [c3 - c1, 0.0, 0.0, 1.0 + c2],
        ]);
        for (label, want) in AmubLabel::ALL.into_iter().zip([a1, a2, a3]) {
            let got = represent_in_basis(&rho, label.basis()).unwrap();
            assert!(got.max_abs_diff(&want).unwrap() < 1e-15, "{label}: {got:?}");
        }
    }

    #[test]
    fn x_state_in_a2() {
        let (r, s, c1, c2, c3) = (0.1, 0.2, 0.3, -0.1, 0.05);
        let rho = x_state_z(&XStateZParams::new(r, s, c1, c2, c3).unwrap()).unwrap();
        let want = quarter([
            [1.0 + c1, s, r, c3 - c2],
            [s, 1.0 - c1, c2 + c3, r],
            [r, c2 + c3, 1.0 - c1, s],
            [c3 - c2, r, s, 1.0 + c1],
        ]);
        let got = represent_in_basis(&rho, AmubLabel::A2.basis()).unwrap();
        assert!(got.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn computational_basis_is_identity_map() {
        let mut g = rng(9);
        let rho = random_density(&mut g, 4);
        let got = represent_in_basis(&rho, &OrthonormalBasis::computational(4)).unwrap();
        assert_eq!(&got, rho.matrix());
        let err = represent_in_basis(&rho, &OrthonormalBasis::computational(2)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn basis_change_preserves_spectrum_and_trace() {
        let mut g = rng(10);
        for i in 0..100 {
            let rho = if i % 2 == 0 {
                random_density(&mut g, 4)
            } else {
                bell_diagonal(&random_bell_diagonal(&mut g))
            };
            for label in AmubLabel::ALL {
                let m = represent_in_basis(&rho, label.basis()).unwrap();
                let tr = crate::linalg::trace(&m);
                assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
                let ev = hermitian_eig(&m).unwrap().eigenvalues;
                for (a, b) in ev.iter().zip(rho.eigenvalues()) {
                    assert!((a - b).abs() <= 1e-10);
                }
            }
        }
    }

    #[test]
    fn label_parsing() {
        assert_eq!("A2".parse::<AmubLabel>().unwrap(), AmubLabel::A2);
        assert!("a4".parse::<AmubLabel>().is_err());
        assert_eq!(AmubLabel::A3.to_string(), "a3");
    }
}
