//! Single-qubit Pauli matrices.

use super::{ComplexMatrix, I, ONE, ZERO};

pub fn sigma_x() -> ComplexMatrix {
    ComplexMatrix::new(2, vec![ZERO, ONE, ONE, ZERO]).expect("2x2")
}

pub fn sigma_y() -> ComplexMatrix {
    ComplexMatrix::new(2, vec![ZERO, -I, I, ZERO]).expect("2x2")
}

pub fn sigma_z() -> ComplexMatrix {
    ComplexMatrix::new(2, vec![ONE, ZERO, ZERO, -ONE]).expect("2x2")
}

/// σ₁, σ₂, σ₃ by 1-based index.
pub fn sigma(index: usize) -> ComplexMatrix {
    match index {
        1 => sigma_x(),
        2 => sigma_y(),
        3 => sigma_z(),
        _ => panic!("Pauli index must be 1, 2 or 3, got {index}"),
    }
}

/// The two-qubit correlation operators σᵢ⊗σᵢ for i = 1, 2, 3.
pub fn correlation_operators() -> [ComplexMatrix; 3] {
    [1, 2, 3].map(|i| super::kron(&sigma(i), &sigma(i)))
}
