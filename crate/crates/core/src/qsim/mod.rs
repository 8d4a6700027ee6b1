//! Dense statevector simulation: complex matrices, validated gates and
//! observables, and targeted/controlled gate application.

mod gate;
mod matrix;
mod observable;
pub mod random;
mod state;

pub use gate::{validate_unitary, UnitaryCertificate, UnitaryGate, UNITARY_TOLERANCE};
pub use matrix::{inner, kron, kron_all, max_abs_diff, norm, CMatrix};
pub use observable::{Observable, HERMITIAN_TOLERANCE};
pub use state::{StateVector, IMAG_TOLERANCE, MAX_QUBITS, NORM_TOLERANCE};
