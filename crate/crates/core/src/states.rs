//! Density matrices and the two-qubit state families used throughout the
//! crate: Bell-diagonal states, z-aligned X states, Werner and isotropic
//! states.

use crate::error::{Error, Result};
use crate::linalg::pauli::{correlation_operators, sigma};
use crate::linalg::{
    hermitian_eig, kron, multiply, trace, ComplexMatrix, HermitianEigenDecomposition,
};

/// Tolerance for Hermiticity, unit trace and non-negativity checks.
pub const STATE_TOL: f64 = 1e-10;
/// Slack allowed on the tetrahedron inequalities.
pub const TETRAHEDRON_TOL: f64 = 1e-12;

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
///
/// The spectral decomposition computed during validation is kept so that
/// functions of the state (notably √ρ) do not diagonalize twice.
#[derive(Debug, Clone)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    spectrum: HermitianEigenDecomposition,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let asymmetry = matrix.hermitian_asymmetry();
        if asymmetry > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (asymmetry {asymmetry:.3e})"
            )));
        }
        let tr = trace(&matrix);
        if (tr.re - 1.0).abs() > STATE_TOL || tr.im.abs() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace is {tr}, expected 1")));
        }
        let spectrum = hermitian_eig(&matrix)?;
        let min = spectrum.eigenvalues[0];
        if min < -STATE_TOL {
            return Err(Error::InvalidState(format!(
                "negative eigenvalue {min:.6e}"
            )));
        }
        Ok(Self { matrix, spectrum })
    }

    /// Maximally mixed state I/d.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self::new(ComplexMatrix::identity(dim).scale_real(1.0 / dim as f64)).expect("valid state")
    }

    /// Pure state |ψ⟩⟨ψ| (ψ is normalized here).
    pub fn pure(psi: &[num_complex::Complex64]) -> Result<Self> {
        let norm = crate::linalg::inner(psi, psi).re.sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v: Vec<_> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::projector(&v))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.spectrum.eigenvalues
    }

    pub fn spectrum(&self) -> &HermitianEigenDecomposition {
        &self.spectrum
    }

    /// √ρ, with rounding-level negative eigenvalues clamped to zero.
    pub fn sqrt(&self) -> ComplexMatrix {
        self.spectrum.map_spectrum(|l| l.max(0.0).sqrt())
    }
}

/// Correlation coefficients (c₁, c₂, c₃) of a Bell-diagonal state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BellDiagonalParams {
    c: [f64; 3],
}

impl BellDiagonalParams {
    pub fn new(c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let c = [c1, c2, c3];
        if c.iter()
            .any(|x| !x.is_finite() || x.abs() > 1.0 + TETRAHEDRON_TOL)
        {
            return Err(Error::InvalidParameter(format!(
                "correlation coefficients must lie in [-1, 1], got {c:?}"
            )));
        }
        let params = Self { c };
        if let Some(worst) = params
            .eigenvalue_factors()
            .into_iter()
            .find(|&f| f < -TETRAHEDRON_TOL)
        {
            return Err(Error::InvalidParameter(format!(
                "({c1}, {c2}, {c3}) lies outside the physical tetrahedron (4λ = {worst})"
            )));
        }
        Ok(params)
    }

    pub fn from_array(c: [f64; 3]) -> Result<Self> {
        Self::new(c[0], c[1], c[2])
    }

    /// True when (c₁, c₂, c₃) satisfies the four tetrahedron inequalities.
    pub fn is_physical(c1: f64, c2: f64, c3: f64) -> bool {
        tetrahedron_factors(c1, c2, c3)
            .iter()
            .all(|&f| f >= -TETRAHEDRON_TOL)
    }

    pub fn c1(&self) -> f64 {
        self.c[0]
    }

    pub fn c2(&self) -> f64 {
        self.c[1]
    }

    pub fn c3(&self) -> f64 {
        self.c[2]
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.c
    }

    /// Four times the eigenvalues of the state:
    /// `[1−c₁−c₂−c₃, 1+c₁+c₂−c₃, 1+c₁−c₂+c₃, 1−c₁+c₂+c₃]`.
    pub fn eigenvalue_factors(&self) -> [f64; 4] {
        tetrahedron_factors(self.c[0], self.c[1], self.c[2])
    }
}

fn tetrahedron_factors(c1: f64, c2: f64, c3: f64) -> [f64; 4] {
    [
        1.0 - c1 - c2 - c3,
        1.0 + c1 + c2 - c3,
        1.0 + c1 - c2 + c3,
        1.0 - c1 + c2 + c3,
    ]
}

/// Parameters of ρ^X_z = (I⊗I + r σ₃⊗I + s I⊗σ₃ + Σ cᵢ σᵢ⊗σᵢ)/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XStateZParams {
    pub r: f64,
    pub s: f64,
    pub c: [f64; 3],
}

impl XStateZParams {
    /// Validates by diagonalizing the resulting matrix.
    pub fn new(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> Result<Self> {
        let params = Self::unchecked(r, s, c1, c2, c3)?;
        DensityMatrix::new(params.matrix())?;
        Ok(params)
    }

    fn unchecked(r: f64, s: f64, c1: f64, c2: f64, c3: f64) -> Result<Self> {
        for (name, v) in [("r", r), ("s", s), ("c1", c1), ("c2", c2), ("c3", c3)] {
            if !v.is_finite() || v.abs() > 1.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [-1, 1], got {v}"
                )));
            }
        }
        Ok(Self {
            r,
            s,
            c: [c1, c2, c3],
        })
    }

    pub fn bell_diagonal(&self) -> Result<BellDiagonalParams> {
        BellDiagonalParams::from_array(self.c)
    }

    /// The matrix in the computational basis, entry by entry.
    pub fn matrix(&self) -> ComplexMatrix {
        x_state_z_matrix(self.r, self.s, self.c)
    }
}

fn x_state_z_matrix(r: f64, s: f64, [c1, c2, c3]: [f64; 3]) -> ComplexMatrix {
    let q = 0.25;
    #[rustfmt::skip]
    let entries = [
        q * (1.0 + r + s + c3), 0.0, 0.0, q * (c1 - c2),
        0.0, q * (1.0 + r - s - c3), q * (c1 + c2), 0.0,
        0.0, q * (c1 + c2), q * (1.0 - r + s - c3), 0.0,
        q * (c1 - c2), 0.0, 0.0, q * (1.0 - r - s + c3),
    ];
    ComplexMatrix::from_real(4, &entries).expect("4x4")
}

/// Werner parameter p ∈ [0, 1]; the state has cᵢ = 3p/4 − 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WernerParam(f64);

impl WernerParam {
    pub fn new(p: f64) -> Result<Self> {
        check_unit_interval("p", p)?;
        Ok(Self(p))
    }

    pub fn p(&self) -> f64 {
        self.0
    }

    pub fn bell_diagonal(&self) -> BellDiagonalParams {
        let c = 0.75 * self.0 - 1.0;
        BellDiagonalParams::new(c, c, c).expect("Werner states are physical")
    }
}

/// Isotropic fidelity F ∈ [0, 1]; the state has c₁ = c₃ = −c₂ = (4F−1)/3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicParam(f64);

impl IsotropicParam {
    pub fn new(f: f64) -> Result<Self> {
        check_unit_interval("F", f)?;
        Ok(Self(f))
    }

    pub fn f(&self) -> f64 {
        self.0
    }

    pub fn bell_diagonal(&self) -> BellDiagonalParams {
        let c = (4.0 * self.0 - 1.0) / 3.0;
        BellDiagonalParams::new(c, -c, c).expect("isotropic states are physical")
    }
}

pub(crate) fn check_unit_interval(name: &str, v: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&v) {
        return Err(Error::InvalidParameter(format!(
            "{name} must lie in [0, 1], got {v}"
        )));
    }
    Ok(())
}

/// ρ^BD = (I⊗I + Σ cᵢ σᵢ⊗σᵢ)/4 in the computational basis.
pub fn bell_diagonal(params: &BellDiagonalParams) -> DensityMatrix {
    let m = x_state_z_matrix(0.0, 0.0, params.as_array());
    DensityMatrix::new(m).expect("tetrahedron points are valid states")
}

pub fn x_state_z(params: &XStateZParams) -> Result<DensityMatrix> {
    DensityMatrix::new(params.matrix())
}

pub fn werner(p: WernerParam) -> DensityMatrix {
    bell_diagonal(&p.bell_diagonal())
}

/// F|Φ⁺⟩⟨Φ⁺| + (1−F)(I − |Φ⁺⟩⟨Φ⁺|)/3, built from F directly.
pub fn isotropic(f: IsotropicParam) -> DensityMatrix {
    let f = f.f();
    let (a, b, q) = (
        (1.0 + 2.0 * f) / 6.0,
        (1.0 - f) / 3.0,
        (4.0 * f - 1.0) / 6.0,
    );
    #[rustfmt::skip]
    let entries = [
        a, 0.0, 0.0, q,
        0.0, b, 0.0, 0.0,
        0.0, 0.0, b, 0.0,
        q, 0.0, 0.0, a,
    ];
    let m = ComplexMatrix::from_real(4, &entries).expect("4x4");
    DensityMatrix::new(m).expect("isotropic states are physical")
}

/// Two-qubit Pauli expansion coefficients `T[i][j] = tr(ρ σᵢ⊗σⱼ)` with σ₀ = I.
pub fn pauli_components(rho: &DensityMatrix) -> Result<[[f64; 4]; 4]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let paulis = [ComplexMatrix::identity(2), sigma(1), sigma(2), sigma(3)];
    let mut t = [[0.0; 4]; 4];
    for (i, a) in paulis.iter().enumerate() {
        for (j, b) in paulis.iter().enumerate() {
            t[i][j] = trace(&multiply(rho.matrix(), &kron(a, b))?).re;
        }
    }
    Ok(t)
}

/// Largest Pauli component outside the Bell-diagonal pattern {I⊗I, σᵢ⊗σᵢ}.
///
/// Zero exactly when the state is Bell-diagonal.
pub fn bell_diagonal_deviation(rho: &DensityMatrix) -> Result<f64> {
    let t = pauli_components(rho)?;
    let mut worst: f64 = 0.0;
    for (i, row) in t.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i != j {
                worst = worst.max(v.abs());
            }
        }
    }
    Ok(worst)
}

/// Reads cᵢ = tr(ρ σᵢ⊗σᵢ) back from a two-qubit state.
pub fn correlation_coefficients(rho: &DensityMatrix) -> Result<[f64; 3]> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.dim(),
        });
    }
    let mut c = [0.0; 3];
    for (ci, op) in c.iter_mut().zip(correlation_operators()) {
        let z = trace(&multiply(rho.matrix(), &op)?);
        if z.im.abs() > STATE_TOL {
            return Err(Error::Internal(format!(
                "correlation coefficient has imaginary part {:.3e}",
                z.im
            )));
        }
        *ci = z.re;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::linalg::pauli::correlation_operators;
    use crate::sampling::random_bell_diagonal;

    fn entry(rho: &DensityMatrix, r: usize, c: usize) -> f64 {
        let z = rho.matrix().get(r, c);
        assert!(z.im.abs() < 1e-15);
        z.re
    }

    #[test]
    fn origin_is_maximally_mixed() {
        let rho = bell_diagonal(&BellDiagonalParams::new(0.0, 0.0, 0.0).unwrap());
        let mm = ComplexMatrix::identity(4).scale_real(0.25);
        assert!(rho.matrix().max_abs_diff(&mm).unwrap() < 1e-16);
    }

    #[test]
    fn bell_diagonal_matches_displayed_matrix() {
        let (c1, c2, c3) = (0.3, -0.2, 0.1);
        let rho = bell_diagonal(&BellDiagonalParams::new(c1, c2, c3).unwrap());
        let diag = [1.0 + c3, 1.0 - c3, 1.0 - c3, 1.0 + c3];
        for (i, d) in diag.iter().enumerate() {
            assert!((entry(&rho, i, i) - d / 4.0).abs() < 1e-15);
        }
        let anti = [c1 - c2, c1 + c2, c1 + c2, c1 - c2];
        for (i, a) in anti.iter().enumerate() {
            assert!((entry(&rho, i, 3 - i) - a / 4.0).abs() < 1e-15);
        }
    }

    #[test]
    fn bell_diagonal_agrees_with_pauli_expansion() {
        let p = BellDiagonalParams::new(0.4, -0.3, 0.2).unwrap();
        let mut m = ComplexMatrix::identity(4);
        for (ci, op) in p.as_array().iter().zip(correlation_operators()) {
            m = m.add(&op.scale_real(*ci)).unwrap();
        }
        let m = m.scale_real(0.25);
        assert!(bell_diagonal(&p).matrix().max_abs_diff(&m).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_outside_tetrahedron() {
        assert!(BellDiagonalParams::new(1.0, 1.0, 1.0).is_err());
        assert!(BellDiagonalParams::new(1.5, 0.0, 0.0).is_err());
        assert!(BellDiagonalParams::new(1.0, 1.0, -1.0).is_ok());
        assert!(BellDiagonalParams::is_physical(-1.0, -1.0, -1.0));
        assert!(!BellDiagonalParams::is_physical(0.9, 0.9, 0.0));
    }

    #[test]
    fn x_state_reduces_to_bell_diagonal() {
        let c = [0.2, 0.1, 0.3];
        let x = x_state_z(&XStateZParams::new(0.0, 0.0, c[0], c[1], c[2]).unwrap()).unwrap();
        let bd = bell_diagonal(&BellDiagonalParams::from_array(c).unwrap());
        assert_eq!(x.matrix(), bd.matrix());
    }

    #[test]
    fn x_state_diagonal_example() {
        let x = x_state_z(&XStateZParams::new(0.1, 0.1, 0.0, 0.0, 0.0).unwrap()).unwrap();
        let want = ComplexMatrix::diag(&[1.2 / 4.0, 0.25, 0.25, 0.8 / 4.0]);
        assert!(x.matrix().max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn x_state_matches_pauli_expansion() {
        use crate::linalg::pauli::sigma_z;
        let (r, s, c) = (0.1, -0.2, [0.3, 0.1, -0.2]);
        let id = ComplexMatrix::identity(2);
        let mut m = ComplexMatrix::identity(4)
            .add(&kron(&sigma_z(), &id).scale_real(r))
            .unwrap()
            .add(&kron(&id, &sigma_z()).scale_real(s))
            .unwrap();
        for (ci, op) in c.iter().zip(correlation_operators()) {
            m = m.add(&op.scale_real(*ci)).unwrap();
        }
        let p = XStateZParams::new(r, s, c[0], c[1], c[2]).unwrap();
        assert!(p.matrix().max_abs_diff(&m.scale_real(0.25)).unwrap() < 1e-15);
    }

    #[test]
    fn x_state_rejects_non_positive() {
        // diagonal entry (1−r−s+c3)/4 = −2/4 at r=s=1, c3=−1
        let m = XStateZParams {
            r: 1.0,
            s: 1.0,
            c: [0.0, 0.0, -1.0],
        }
        .matrix();
        let eig = hermitian_eig(&m).unwrap();
        assert!(eig.eigenvalues[0] < -0.4);
        assert!(XStateZParams::new(1.0, 1.0, 0.0, 0.0, -1.0).is_err());
    }

    #[test]
    fn werner_examples() {
        let rho = werner(WernerParam::new(0.0).unwrap());
        let ev = rho.eigenvalues();
        for (got, want) in ev.iter().zip([0.0, 0.0, 0.0, 1.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        let p1 = WernerParam::new(1.0).unwrap().bell_diagonal();
        assert_eq!(p1.as_array(), [-0.25; 3]);

        // With cᵢ = 3p/4 − 1 the corner entries are (1+cᵢ)/4 = 3p/16. The
        // familiar Werner layout (q/3 corners, (3−2q)/6 and (4q−3)/6 in the
        // central block) holds with q = 9p/16.
        let p = 0.5;
        let q = 9.0 * p / 16.0;
        let rho = werner(WernerParam::new(p).unwrap());
        assert!((entry(&rho, 0, 0) - 3.0 / 32.0).abs() < 1e-15);
        assert!((entry(&rho, 3, 3) - q / 3.0).abs() < 1e-15);
        assert!((entry(&rho, 1, 1) - (3.0 - 2.0 * q) / 6.0).abs() < 1e-15);
        assert!((entry(&rho, 1, 2) - (4.0 * q - 3.0) / 6.0).abs() < 1e-15);
        assert_eq!(entry(&rho, 0, 3), 0.0);
        assert!(WernerParam::new(1.1).is_err());
    }

    #[test]
    fn isotropic_examples() {
        let rho = isotropic(IsotropicParam::new(0.25).unwrap());
        assert!(
            rho.matrix()
                .max_abs_diff(&ComplexMatrix::identity(4).scale_real(0.25))
                .unwrap()
                < 1e-15
        );

        let p = IsotropicParam::new(1.0).unwrap();
        assert_eq!(p.bell_diagonal().as_array(), [1.0, -1.0, 1.0]);
        let rho = isotropic(p);
        assert!((entry(&rho, 0, 0) - 0.5).abs() < 1e-15);
        assert!((entry(&rho, 0, 3) - 0.5).abs() < 1e-15);

        let rho = isotropic(IsotropicParam::new(0.0).unwrap());
        let diag = [1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0];
        for (i, d) in diag.iter().enumerate() {
            assert!((entry(&rho, i, i) - d).abs() < 1e-15);
        }
        assert!((entry(&rho, 0, 3) + 1.0 / 6.0).abs() < 1e-15);
        assert!(IsotropicParam::new(-0.1).is_err());
    }

    #[test]
    fn correlation_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let p = random_bell_diagonal(&mut rng);
            let c = correlation_coefficients(&bell_diagonal(&p)).unwrap();
            for (got, want) in c.iter().zip(p.as_array()) {
                assert!((got - want).abs() <= 1e-12);
            }
        }
        let c = correlation_coefficients(&DensityMatrix::maximally_mixed(4)).unwrap();
        assert_eq!(c, [0.0; 3]);
        let c = correlation_coefficients(&isotropic(IsotropicParam::new(1.0).unwrap())).unwrap();
        assert!(
            (c[0] - 1.0).abs() < 1e-15 && (c[1] + 1.0).abs() < 1e-15 && (c[2] - 1.0).abs() < 1e-15
        );
    }

    #[test]
    fn correlation_rejects_wrong_dimension() {
        let err = correlation_coefficients(&DensityMatrix::maximally_mixed(2)).unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch { .. }));
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::identity(2)).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[1.5, -0.5])).is_err());
        let skew = ComplexMatrix::from_real(2, &[0.5, 0.1, 0.0, 0.5]).unwrap();
        assert!(DensityMatrix::new(skew).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::diag(&[1.0, 0.0])).is_ok());
    }

    #[test]
    fn bell_diagonal_states_have_no_local_components() {
        let rho = bell_diagonal(&BellDiagonalParams::new(0.1, 0.5, -0.3).unwrap());
        assert!(bell_diagonal_deviation(&rho).unwrap() < 1e-15);
        let x = x_state_z(&XStateZParams::new(0.2, 0.0, 0.1, 0.1, 0.1).unwrap()).unwrap();
        assert!((bell_diagonal_deviation(&x).unwrap() - 0.2).abs() < 1e-15);
    }
}
