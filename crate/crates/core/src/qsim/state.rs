use num_complex::Complex64;

use super::gate::UnitaryGate;
use super::matrix::{inner, norm, ONE, ZERO};
use super::observable::Observable;
use crate::error::{Error, Result};

/// Largest register the dense simulator will allocate.
pub const MAX_QUBITS: usize = 20;

/// Allowed deviation of a state's 2-norm from one.
pub const NORM_TOLERANCE: f64 = 1e-12;

/// Allowed imaginary residue of an expectation value.
pub const IMAG_TOLERANCE: f64 = 1e-12;

/// Pure state of a qubit register.
///
/// Qubit 0 is the most significant bit of the basis index. For the joint
/// control⊗data register this puts `c_1 … c_d` in qubits `0..d` and the data
/// register in qubits `d..d+n`, so basis index = `h · 2^n + data_index`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_register(num_qubits: usize) -> Result<()> {
    if num_qubits > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// `|0…0⟩` on `num_qubits` qubits.
    pub fn zero(num_qubits: usize) -> Result<Self> {
        check_register(num_qubits)?;
        let mut amps = vec![ZERO; 1 << num_qubits];
        amps[0] = ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// Wraps amplitudes that are already normalized within [`NORM_TOLERANCE`].
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let num_qubits = super::gate::qubits_for_dim(amps.len())?;
        check_register(num_qubits)?;
        if amps.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let deviation = (norm(&amps) - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(StateVector { num_qubits, amps })
    }

    /// L2-normalizes `amps` and wraps them. Rejects the zero vector.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let n = norm(&amps);
        if !n.is_finite() {
            return Err(Error::NonFinite);
        }
        if n == 0.0 {
            return Err(Error::ZeroVector);
        }
        for a in &mut amps {
            *a /= n;
        }
        StateVector::from_amplitudes(amps)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amps)
    }

    pub fn norm_deviation(&self) -> f64 {
        (self.norm() - 1.0).abs()
    }

    /// Contiguous amplitudes of control block `h` when the lowest `n_data`
    /// qubits form the data register.
    pub fn block(&self, h: usize, n_data: usize) -> &[Complex64] {
        let len = 1 << n_data;
        &self.amps[h * len..(h + 1) * len]
    }

    fn bit_shift(&self, qubit: usize) -> usize {
        self.num_qubits - 1 - qubit
    }

    fn check_targets(&self, u: &UnitaryGate, targets: &[usize]) -> Result<()> {
        if u.num_qubits() != targets.len() {
            return Err(Error::DimensionMismatch {
                expected: u.num_qubits(),
                found: targets.len(),
            });
        }
        for (i, &t) in targets.iter().enumerate() {
            if t >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: t,
                    num_qubits: self.num_qubits,
                });
            }
            if targets[..i].contains(&t) {
                return Err(Error::DuplicateTarget(t));
            }
        }
        Ok(())
    }

    /// Offsets of the `2^k` amplitudes a `k`-target gate mixes, relative to a base
    /// index whose target bits are all zero. `targets[0]` is the local MSB.
    fn local_offsets(&self, targets: &[usize]) -> (Vec<usize>, usize) {
        let k = targets.len();
        let mut mask = 0usize;
        let offsets = (0..1usize << k)
            .map(|local| {
                targets.iter().enumerate().fold(0, |acc, (j, &t)| {
                    let bit = (local >> (k - 1 - j)) & 1;
                    acc | (bit << self.bit_shift(t))
                })
            })
            .collect();
        for &t in targets {
            mask |= 1 << self.bit_shift(t);
        }
        (offsets, mask)
    }

    fn apply_masked(
        &self,
        u: &UnitaryGate,
        targets: &[usize],
        select: impl Fn(usize) -> bool,
    ) -> StateVector {
        let (offsets, mask) = self.local_offsets(targets);
        let m = u.matrix();
        let mut out = self.amps.clone();
        let mut gathered = vec![ZERO; offsets.len()];
        for base in (0..self.amps.len()).filter(|b| b & mask == 0 && select(*b)) {
            for (g, off) in gathered.iter_mut().zip(&offsets) {
                *g = self.amps[base | off];
            }
            for (r, off) in offsets.iter().enumerate() {
                out[base | off] = m
                    .row(r)
                    .iter()
                    .zip(&gathered)
                    .fold(ZERO, |acc, (a, b)| acc + a * b);
            }
        }
        StateVector {
            num_qubits: self.num_qubits,
            amps: out,
        }
    }

    /// Applies `u` to the ordered `targets`, identity elsewhere.
    pub fn apply_unitary(&self, u: &UnitaryGate, targets: &[usize]) -> Result<StateVector> {
        self.check_targets(u, targets)?;
        Ok(self.apply_masked(u, targets, |_| true))
    }

    /// Applies `u` to `targets` on the branch where `control` reads `control_value`.
    pub fn apply_controlled(
        &self,
        control: usize,
        control_value: u8,
        u: &UnitaryGate,
        targets: &[usize],
    ) -> Result<StateVector> {
        if control_value > 1 {
            return Err(Error::InvalidControlValue(control_value));
        }
        if control >= self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: control,
                num_qubits: self.num_qubits,
            });
        }
        if targets.contains(&control) {
            return Err(Error::ControlInTargets(control));
        }
        self.check_targets(u, targets)?;
        let shift = self.bit_shift(control);
        let want = control_value as usize;
        Ok(self.apply_masked(u, targets, |b| (b >> shift) & 1 == want))
    }

    /// `Re ⟨ψ| I ⊗ M |ψ⟩` with `M` on the lowest `n_data` qubits.
    ///
    /// Control blocks are reduced in ascending order; fails if the imaginary
    /// residue exceeds [`IMAG_TOLERANCE`].
    pub fn expectation_on_data(&self, m: &Observable, n_data: usize) -> Result<f64> {
        let value = self.expectation_on_data_complex(m, n_data)?;
        if value.im.abs() > IMAG_TOLERANCE {
            return Err(Error::ImaginaryResidue(value.im));
        }
        Ok(value.re)
    }

    /// Complex `⟨ψ| I ⊗ M |ψ⟩`, imaginary part kept for residue checks.
    pub fn expectation_on_data_complex(&self, m: &Observable, n_data: usize) -> Result<Complex64> {
        if m.num_qubits() != n_data {
            return Err(Error::DimensionMismatch {
                expected: n_data,
                found: m.num_qubits(),
            });
        }
        if n_data > self.num_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.num_qubits,
                found: n_data,
            });
        }
        let blocks = 1usize << (self.num_qubits - n_data);
        let mut acc = ZERO;
        for h in 0..blocks {
            let block = self.block(h, n_data);
            let mv = m.matrix().mul_vec(block)?;
            acc += inner(block, &mv);
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use std::f64::consts::FRAC_1_SQRT_2;

    use super::*;
    use crate::qsim::matrix::{kron_all, max_abs_diff, CMatrix};
    use crate::qsim::random::{random_hermitian, random_state, random_unitary, seeded_rng};

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    /// Dense oracle: expand `u` on `targets` to the full register by permuting basis
    /// indices and multiply.
    fn dense_expand(u: &UnitaryGate, targets: &[usize], n: usize) -> CMatrix {
        let dim = 1 << n;
        let k = targets.len();
        let mut full = CMatrix::zeros(dim, dim);
        let local = |idx: usize| {
            targets.iter().enumerate().fold(0, |acc, (j, &t)| {
                acc | (((idx >> (n - 1 - t)) & 1) << (k - 1 - j))
            })
        };
        let mask: usize = targets.iter().map(|&t| 1 << (n - 1 - t)).sum();
        for r in 0..dim {
            for col in 0..dim {
                if r & !mask == col & !mask {
                    full[(r, col)] = u.matrix()[(local(r), local(col))];
                }
            }
        }
        full
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::zero(1)
            .unwrap()
            .apply_unitary(&UnitaryGate::h(), &[0])
            .unwrap();
        let expected = [c(FRAC_1_SQRT_2), c(FRAC_1_SQRT_2)];
        assert!(max_abs_diff(s.amplitudes(), &expected) < 1e-15);
    }

    #[test]
    fn identity_is_bitwise_noop() {
        let mut rng = seeded_rng(3);
        let s = random_state(4, &mut rng);
        let out = s.apply_unitary(&UnitaryGate::identity(2), &[3, 1]).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn kron_on_msb_matches_targeted_application() {
        let mut rng = seeded_rng(11);
        let a = random_unitary(1, &mut rng);
        let s = random_state(2, &mut rng);
        let full = a.matrix().kron(&CMatrix::identity(2));
        let dense = full.mul_vec(s.amplitudes()).unwrap();
        let targeted = s.apply_unitary(&a, &[0]).unwrap();
        assert!(max_abs_diff(targeted.amplitudes(), &dense) < 1e-12);
    }

    #[test]
    fn two_qubit_gate_on_non_adjacent_targets_matches_dense() {
        let mut rng = seeded_rng(12);
        let u = random_unitary(2, &mut rng);
        let s = random_state(4, &mut rng);
        let dense = dense_expand(&u, &[0, 2], 4)
            .mul_vec(s.amplitudes())
            .unwrap();
        let targeted = s.apply_unitary(&u, &[0, 2]).unwrap();
        assert!(max_abs_diff(targeted.amplitudes(), &dense) <= 1e-12);
    }

    #[test]
    fn dense_expand_agrees_with_kron_for_contiguous_targets() {
        let mut rng = seeded_rng(13);
        let u = random_unitary(2, &mut rng);
        let via_kron = kron_all([&CMatrix::identity(2), u.matrix(), &CMatrix::identity(2)]);
        assert_eq!(
            dense_expand(&u, &[1, 2], 4).max_abs_diff(&via_kron),
            Some(0.0)
        );
    }

    #[test]
    fn controlled_on_zero_control_with_value_one_is_noop() {
        let mut rng = seeded_rng(5);
        let u = random_unitary(1, &mut rng);
        let s = StateVector::zero(2).unwrap();
        assert_eq!(s.apply_controlled(0, 1, &u, &[1]).unwrap(), s);
    }

    #[test]
    fn cx_makes_bell_state() {
        let s = StateVector::zero(2)
            .unwrap()
            .apply_unitary(&UnitaryGate::h(), &[0])
            .unwrap()
            .apply_controlled(0, 1, &UnitaryGate::x(), &[1])
            .unwrap();
        let expected = [c(FRAC_1_SQRT_2), c(0.0), c(0.0), c(FRAC_1_SQRT_2)];
        assert!(max_abs_diff(s.amplitudes(), &expected) < 1e-15);
    }

    #[test]
    fn zero_control_equals_x_conjugated_one_control() {
        let mut rng = seeded_rng(6);
        for _ in 0..50 {
            let u = random_unitary(2, &mut rng);
            let s = random_state(4, &mut rng);
            let direct = s.apply_controlled(1, 0, &u, &[3, 0]).unwrap();
            let conj = s
                .apply_unitary(&UnitaryGate::x(), &[1])
                .unwrap()
                .apply_controlled(1, 1, &u, &[3, 0])
                .unwrap()
                .apply_unitary(&UnitaryGate::x(), &[1])
                .unwrap();
            assert!(max_abs_diff(direct.amplitudes(), conj.amplitudes()) <= 1e-12);
        }
    }

    #[test]
    fn application_errors() {
        let s = StateVector::zero(3).unwrap();
        let u2 = UnitaryGate::identity(2);
        assert!(matches!(
            s.apply_unitary(&u2, &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            s.apply_unitary(&u2, &[0, 3]),
            Err(Error::QubitOutOfRange { qubit: 3, .. })
        ));
        assert!(matches!(
            s.apply_unitary(&u2, &[1, 1]),
            Err(Error::DuplicateTarget(1))
        ));
        assert!(matches!(
            s.apply_controlled(1, 1, &u2, &[1, 2]),
            Err(Error::ControlInTargets(1))
        ));
        assert!(matches!(
            s.apply_controlled(0, 2, &UnitaryGate::x(), &[1]),
            Err(Error::InvalidControlValue(2))
        ));
    }

    #[test]
    fn register_cap_enforced() {
        assert!(matches!(
            StateVector::zero(21),
            Err(Error::TooManyQubits {
                requested: 21,
                max: 20
            })
        ));
    }

    #[test]
    fn from_amplitudes_requires_normalization() {
        assert!(matches!(
            StateVector::from_amplitudes(vec![c(1.0), c(1.0)]),
            Err(Error::NotNormalized { .. })
        ));
        assert!(matches!(
            StateVector::normalized(vec![c(0.0), c(0.0)]),
            Err(Error::ZeroVector)
        ));
        let s = StateVector::normalized(vec![c(3.0), c(4.0)]).unwrap();
        assert!(max_abs_diff(s.amplitudes(), &[c(0.6), c(0.8)]) < 1e-15);
    }

    #[test]
    fn identity_observable_gives_one() {
        let mut rng = seeded_rng(8);
        let s = random_state(5, &mut rng);
        let v = s.expectation_on_data(&Observable::identity(2), 2).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projector_on_zero_data_qubit() {
        let s = StateVector::zero(1).unwrap();
        let p = Observable::projector_one(0, 1).unwrap();
        assert_eq!(s.expectation_on_data(&p, 1).unwrap(), 0.0);
    }

    #[test]
    fn expectation_matches_dense_lifted_path() {
        let mut rng = seeded_rng(9);
        for (total, n_data) in [(3, 1), (5, 2), (6, 3), (4, 4)] {
            let s = random_state(total, &mut rng);
            let m = random_hermitian(n_data, &mut rng);
            let lifted = m.lifted(total - n_data);
            let dense = inner(s.amplitudes(), &lifted.mul_vec(s.amplitudes()).unwrap());
            let got = s.expectation_on_data_complex(&m, n_data).unwrap();
            assert!((got.re - dense.re).abs() <= 1e-12);
            assert!(got.im.abs() <= 1e-12);
        }
    }

    #[test]
    fn expectation_dimension_errors() {
        let s = StateVector::zero(2).unwrap();
        assert!(s.expectation_on_data(&Observable::identity(1), 2).is_err());
        assert!(s.expectation_on_data(&Observable::identity(3), 3).is_err());
    }
}
