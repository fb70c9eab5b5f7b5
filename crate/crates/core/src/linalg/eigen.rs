use num_complex::Complex64;

use super::{ComplexMatrix, HERMITIAN_TOL, ZERO};
use crate::error::{Error, Result};

/// Sweep budget for the cyclic Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;
/// Off-diagonal Frobenius norm at which the iteration stops (relative to
/// `max(1, ‖A‖_F)`).
pub const OFF_DIAGONAL_TOL: f64 = 1e-13;
/// Eigenvalues down to this value are treated as rounding noise by
/// [`sqrt_psd`] and clamped to zero.
pub const PSD_CLAMP: f64 = -1e-10;

/// Spectral decomposition `A = V·diag(λ)·V†` of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `i` is the unit eigenvector for `eigenvalues[i]`.
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, i: usize) -> Vec<Complex64> {
        self.eigenvectors.column(i)
    }

    /// `V·diag(f(λ))·V†`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.dim();
        let v = &self.eigenvectors;
        let weights: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        let mut entries = vec![ZERO; d * d];
        for r in 0..d {
            for c in r..d {
                let z: Complex64 = (0..d)
                    .map(|k| v.get(r, k) * v.get(c, k).conj() * weights[k])
                    .sum();
                entries[r * d + c] = z;
                entries[c * d + r] = z.conj();
            }
            entries[r * d + r].im = 0.0;
        }
        ComplexMatrix::new(d, entries).expect("square")
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.map_spectrum(|l| l)
    }

    /// Largest entrywise deviation of `V†V` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let vv = super::multiply(&self.eigenvectors.adjoint(), &self.eigenvectors).expect("square");
        vv.max_abs_diff(&ComplexMatrix::identity(self.dim()))
            .expect("same dim")
    }
}

/// Cyclic Jacobi eigendecomposition of a complex Hermitian matrix.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation that zeroes it.
pub fn hermitian_eig(a: &ComplexMatrix) -> Result<HermitianEigenDecomposition> {
    let asymmetry = a.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { asymmetry });
    }
    let n = a.dim();
    // Work on the exactly Hermitian part.
    let mut m: Vec<Complex64> = vec![ZERO; n * n];
    for r in 0..n {
        for c in 0..n {
            m[r * n + c] = (a.get(r, c) + a.get(c, r).conj()) * 0.5;
        }
        m[r * n + r].im = 0.0;
    }
    let mut v = ComplexMatrix::identity(n).entries().to_vec();

    let scale = a.frobenius_norm().max(1.0);
    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m, n);
        if off < OFF_DIAGONAL_TOL * scale {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, n, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[i * n + i].re.total_cmp(&m[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| m[i * n + i].re).collect();
    let mut vecs = vec![ZERO; n * n];
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vecs[r * n + new_col] = v[r * n + old_col];
        }
    }
    Ok(HermitianEigenDecomposition {
        eigenvalues,
        eigenvectors: ComplexMatrix::new(n, vecs)?,
    })
}

fn off_diagonal_norm(m: &[Complex64], n: usize) -> f64 {
    let mut sum = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                sum += m[r * n + c].norm_sqr();
            }
        }
    }
    sum.sqrt()
}

fn rotate(m: &mut [Complex64], v: &mut [Complex64], n: usize, p: usize, q: usize) {
    let g = m[p * n + q];
    let g_abs = g.norm();
    if g_abs == 0.0 {
        return;
    }
    let app = m[p * n + p].re;
    let aqq = m[q * n + q].re;
    let theta = (aqq - app) / (2.0 * g_abs);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let phase = (g / g_abs).conj();

    // U restricted to the (p, q) plane.
    let u_pp = Complex64::new(c, 0.0);
    let u_pq = Complex64::new(s, 0.0);
    let u_qp = phase * -s;
    let u_qq = phase * c;

    // Off-pivot entries: M ← U†·M·U restricted to rows/columns p and q.
    for k in 0..n {
        if k == p || k == q {
            continue;
        }
        let mkp = m[k * n + p];
        let mkq = m[k * n + q];
        let new_kp = mkp * u_pp + mkq * u_qp;
        let new_kq = mkp * u_pq + mkq * u_qq;
        m[k * n + p] = new_kp;
        m[k * n + q] = new_kq;
        m[p * n + k] = new_kp.conj();
        m[q * n + k] = new_kq.conj();
    }
    // Pivot block in closed form, so exactly cancelling diagonals stay exact.
    m[p * n + p] = Complex64::new(app - t * g_abs, 0.0);
    m[q * n + q] = Complex64::new(aqq + t * g_abs, 0.0);
    m[p * n + q] = ZERO;
    m[q * n + p] = ZERO;

    // V ← V·U
    for k in 0..n {
        let vkp = v[k * n + p];
        let vkq = v[k * n + q];
        v[k * n + p] = vkp * u_pp + vkq * u_qp;
        v[k * n + q] = vkp * u_pq + vkq * u_qq;
    }
}

/// Principal square root of a positive semidefinite Hermitian matrix.
///
/// Eigenvalues in `[-1e-10, 0)` are clamped to zero; anything lower is
/// rejected.
pub fn sqrt_psd(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eig(a)?;
    let min = eig.eigenvalues.first().copied().unwrap_or(0.0);
    if min < PSD_CLAMP {
        return Err(Error::NotPositive {
            min_eigenvalue: min,
        });
    }
    Ok(eig.map_spectrum(|l| l.max(0.0).sqrt()))
}
