use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::Serialize;

use super::matrix::{kron, CMatrix, ONE, ZERO};
use crate::error::{Error, Result};

/// Maximum tolerated entry of `|U†U − I|` for a matrix to count as unitary.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

/// Proof that a matrix passed the unitarity check, with the measured deviation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UnitaryCertificate {
    pub num_qubits: usize,
    pub deviation: f64,
}

pub(crate) fn qubits_for_dim(dim: usize) -> Result<usize> {
    if dim == 0 || !dim.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(dim));
    }
    Ok(dim.trailing_zeros() as usize)
}

/// Accepts iff the matrix is square, power-of-two sized, finite, and
/// `max |U†U − I| ≤ 1e-10`.
pub fn validate_unitary(matrix: &CMatrix) -> Result<UnitaryCertificate> {
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
    let gram = matrix.adjoint().matmul(matrix)?;
    let deviation = gram
        .max_abs_diff(&CMatrix::identity(matrix.rows()))
        .expect("gram matrix is square");
    if deviation > UNITARY_TOLERANCE {
        return Err(Error::NonUnitary { deviation });
    }
    Ok(UnitaryCertificate {
        num_qubits,
        deviation,
    })
}

/// A validated unitary acting on `num_qubits` qubits.
///
/// Local basis index convention matches the register: the first target qubit
/// handed to [`StateVector::apply_unitary`](super::StateVector::apply_unitary)
/// is the most significant bit of the gate's row/column index.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitaryGate {
    matrix: CMatrix,
    certificate: UnitaryCertificate,
}

impl UnitaryGate {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let certificate = validate_unitary(&matrix)?;
        Ok(UnitaryGate {
            matrix,
            certificate,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.certificate.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn certificate(&self) -> UnitaryCertificate {
        self.certificate
    }

    pub fn identity(num_qubits: usize) -> Self {
        UnitaryGate::new(CMatrix::identity(1 << num_qubits)).expect("identity is unitary")
    }

    pub fn x() -> Self {
        from_2x2([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn y() -> Self {
        let i = Complex64::new(0.0, 1.0);
        from_2x2([[ZERO, -i], [i, ZERO]])
    }

    pub fn z() -> Self {
        from_2x2([[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn h() -> Self {
        let s = Complex64::new(FRAC_1_SQRT_2, 0.0);
        from_2x2([[s, s], [s, -s]])
    }

    /// `exp(-i θ Y / 2)`.
    pub fn ry(theta: f64) -> Self {
        let (s, c) = (theta / 2.0).sin_cos();
        from_2x2([
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ])
    }

    /// `exp(-i θ Z / 2)`.
    pub fn rz(theta: f64) -> Self {
        let half = theta / 2.0;
        from_2x2([
            [Complex64::from_polar(1.0, -half), ZERO],
            [ZERO, Complex64::from_polar(1.0, half)],
        ])
    }

    /// Controlled-X on two qubits, control is the first (most significant) qubit.
    pub fn cx() -> Self {
        let mut m = CMatrix::identity(4);
        m[(2, 2)] = ZERO;
        m[(3, 3)] = ZERO;
        m[(2, 3)] = ONE;
        m[(3, 2)] = ONE;
        UnitaryGate::new(m).expect("cx is unitary")
    }

    /// `self` followed by `next`, i.e. the matrix `next · self`.
    pub fn then(&self, next: &UnitaryGate) -> Result<UnitaryGate> {
        if self.dim() != next.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: next.dim(),
            });
        }
        UnitaryGate::new(next.matrix.matmul(&self.matrix)?)
    }

    /// Tensor product `self ⊗ other`; `self` acts on the more significant qubits.
    pub fn tensor(&self, other: &UnitaryGate) -> Result<UnitaryGate> {
        UnitaryGate::new(kron(&self.matrix, &other.matrix))
    }

    pub fn adjoint(&self) -> UnitaryGate {
        UnitaryGate::new(self.matrix.adjoint()).expect("adjoint of a unitary is unitary")
    }

    pub fn apply_to_vector(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        self.matrix.mul_vec(v)
    }
}

fn from_2x2(rows: [[Complex64; 2]; 2]) -> UnitaryGate {
    let m = CMatrix::from_row_major(2, 2, rows.iter().flatten().copied().collect())
        .expect("2x2 literal");
    UnitaryGate::new(m).expect("preset gate is unitary")
}
