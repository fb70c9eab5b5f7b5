//! Seeded random sampling of test inputs.
//!
//! All randomness in the crate flows through [`rng`], which is ChaCha8 seeded
//! with a `u64`. ChaCha8's output stream is fixed by its specification, so a
//! given seed yields the same samples on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{multiply, ComplexMatrix};
use crate::states::{BellDiagonalParams, XStateZParams};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform point of the physical tetrahedron (rejection from the cube).
pub fn random_bell_diagonal<R: Rng>(rng: &mut R) -> BellDiagonalParams {
    loop {
        let c: [f64; 3] = [
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
            rng.gen_range(-1.0..=1.0),
        ];
        if let Ok(p) = BellDiagonalParams::from_array(c) {
            return p;
        }
    }
}

/// Valid ρ^X_z parameters with r, s ∈ [−1, 1] (rejection sampling).
pub fn random_x_state_z<R: Rng>(rng: &mut R) -> XStateZParams {
    loop {
        let v: [f64; 5] = std::array::from_fn(|_| rng.gen_range(-1.0..=1.0));
        if let Ok(p) = XStateZParams::new(v[0], v[1], v[2], v[3], v[4]) {
            return p;
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let entries = (0..dim * dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    ComplexMatrix::new(dim, entries).expect("dim > 0")
}

pub fn random_hermitian<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let b = random_matrix(rng, dim);
    b.add(&b.adjoint()).expect("same dim").scale_real(0.5)
}

/// B†B for a random B.
pub fn random_psd<R: Rng>(rng: &mut R, dim: usize) -> ComplexMatrix {
    let b = random_matrix(rng, dim);
    multiply(&b.adjoint(), &b).expect("same dim")
}

/// Random full-rank density matrix B†B / tr(B†B).
pub fn random_density<R: Rng>(rng: &mut R, dim: usize) -> crate::states::DensityMatrix {
    let a = random_psd(rng, dim);
    let tr = crate::linalg::trace(&a).re;
    crate::states::DensityMatrix::new(a.scale_real(1.0 / tr)).expect("normalized PSD")
}
