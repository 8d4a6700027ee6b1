//! Seeded generators for random gates, states and observables.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::gate::UnitaryGate;
use super::matrix::{inner, norm, CMatrix};
use super::observable::Observable;
use super::state::StateVector;

pub type SimRng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let data = (0..rows * cols).map(|_| complex_gaussian(rng)).collect();
    CMatrix::from_row_major(rows, cols, data).expect("sized buffer")
}

/// Random unit vector of the given length.
pub fn random_unit_vector<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<Complex64> {
    loop {
        let v: Vec<Complex64> = (0..len).map(|_| complex_gaussian(rng)).collect();
        let n = norm(&v);
        if n > 1e-8 {
            return v.into_iter().map(|z| z / n).collect();
        }
    }
}

/// Random unitary on `num_qubits` qubits from a Gram–Schmidt orthonormalized
/// complex Gaussian matrix (columns re-orthogonalized twice).
pub fn random_unitary<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> UnitaryGate {
    let dim = 1usize << num_qubits;
    loop {
        let g = random_matrix(dim, dim, rng);
        let mut cols: Vec<Vec<Complex64>> = (0..dim)
            .map(|c| (0..dim).map(|r| g[(r, c)]).collect())
            .collect();
        let mut degenerate = false;
        for j in 0..dim {
            for _ in 0..2 {
                for k in 0..j {
                    let proj = inner(&cols[k], &cols[j]);
                    let (done, rest) = cols.split_at_mut(j);
                    for (x, q) in rest[0].iter_mut().zip(&done[k]) {
                        *x -= proj * q;
                    }
                }
            }
            let n = norm(&cols[j]);
            if n < 1e-8 {
                degenerate = true;
                break;
            }
            for x in &mut cols[j] {
                *x /= n;
            }
        }
        if degenerate {
            continue;
        }
        let data = (0..dim)
            .flat_map(|r| cols.iter().map(move |col| col[r]))
            .collect();
        let m = CMatrix::from_row_major(dim, dim, data).expect("sized buffer");
        if let Ok(u) = UnitaryGate::new(m) {
            return u;
        }
    }
}

pub fn random_state<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> StateVector {
    StateVector::normalized(random_unit_vector(1 << num_qubits, rng)).expect("unit vector")
}

/// Random Hermitian `(G + G†)/2` from a complex Gaussian `G`.
pub fn random_hermitian<R: Rng + ?Sized>(num_qubits: usize, rng: &mut R) -> Observable {
    let dim = 1usize << num_qubits;
    let g = random_matrix(dim, dim, rng);
    let ga = g.adjoint();
    let mut h = CMatrix::zeros(dim, dim);
    for r in 0..dim {
        for c in 0..dim {
            h[(r, c)] = (g[(r, c)] + ga[(r, c)]) * 0.5;
        }
    }
    // Force exact Hermiticity on the diagonal.
    for i in 0..dim {
        h[(i, i)].im = 0.0;
    }
    Observable::new(h).expect("symmetrized matrix is Hermitian")
}
