use num_complex::Complex64;

use super::gate::qubits_for_dim;
use super::matrix::{inner, kron, CMatrix};
use crate::error::{Error, Result};

/// Maximum tolerated entry of `|M − M†|` for a matrix to count as Hermitian.
pub const HERMITIAN_TOLERANCE: f64 = 1e-10;

/// Hermitian measurement operator on a register of `num_qubits` qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    num_qubits: usize,
    matrix: CMatrix,
}

impl Observable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let num_qubits = qubits_for_dim(matrix.rows())?;
        if !matrix.is_finite() {
            return Err(Error::NonFinite);
        }
        let deviation = matrix
            .max_abs_diff(&matrix.adjoint())
            .expect("square matrix");
        if deviation > HERMITIAN_TOLERANCE {
            return Err(Error::NonHermitian { deviation });
        }
        Ok(Observable { num_qubits, matrix })
    }

    pub fn identity(num_qubits: usize) -> Self {
        Observable::new(CMatrix::identity(1 << num_qubits)).expect("identity is Hermitian")
    }

    /// Real diagonal observable; eigenvalues are the given entries.
    pub fn diagonal(entries: &[f64]) -> Result<Self> {
        Observable::new(CMatrix::diagonal(entries))
    }

    /// Pauli Z on one qubit.
    pub fn z() -> Self {
        Observable::diagonal(&[1.0, -1.0]).expect("Z is Hermitian")
    }

    /// Projector `|1⟩⟨1|` on `qubit` of a `num_qubits` register (qubit 0 most significant).
    pub fn projector_one(qubit: usize, num_qubits: usize) -> Result<Self> {
        if qubit >= num_qubits {
            return Err(Error::QubitOutOfRange { qubit, num_qubits });
        }
        let dim = 1usize << num_qubits;
        let shift = num_qubits - 1 - qubit;
        let diag: Vec<f64> = (0..dim)
            .map(|i| if (i >> shift) & 1 == 1 { 1.0 } else { 0.0 })
            .collect();
        Observable::diagonal(&diag)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Diagonal entries when the matrix is exactly diagonal.
    pub fn diagonal_entries(&self) -> Option<Vec<f64>> {
        let dim = self.matrix.rows();
        for r in 0..dim {
            for c in 0..dim {
                if r != c && self.matrix[(r, c)] != Complex64::new(0.0, 0.0) {
                    return None;
                }
            }
        }
        Some((0..dim).map(|i| self.matrix[(i, i)].re).collect())
    }

    /// `⟨v|M|v⟩` as a complex number; the imaginary part is rounding residue.
    pub fn sandwich(&self, v: &[Complex64]) -> Result<Complex64> {
        let mv = self.matrix.mul_vec(v)?;
        Ok(inner(v, &mv))
    }

    /// `I_{2^outer} ⊗ M` as a dense matrix.
    pub fn lifted(&self, outer_qubits: usize) -> CMatrix {
        kron(&CMatrix::identity(1 << outer_qubits), &self.matrix)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2);
        m[(0, 1)] = Complex64::new(1.0, 0.0);
        assert!(matches!(
            Observable::new(m),
            Err(Error::NonHermitian { deviation }) if (deviation - 1.0).abs() < 1e-15
        ));
    }

    #[test]
    fn projector_layout() {
        let p = Observable::projector_one(0, 2).unwrap();
        assert_eq!(p.diagonal_entries().unwrap(), vec![0.0, 0.0, 1.0, 1.0]);
        let q = Observable::projector_one(1, 2).unwrap();
        assert_eq!(q.diagonal_entries().unwrap(), vec![0.0, 1.0, 0.0, 1.0]);
        assert!(Observable::projector_one(2, 2).is_err());
    }

    #[test]
    fn non_diagonal_has_no_diagonal_entries() {
        let x = CMatrix::from_rows(&[
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        ])
        .unwrap();
        assert!(Observable::new(x).unwrap().diagonal_entries().is_none());
    }
}
