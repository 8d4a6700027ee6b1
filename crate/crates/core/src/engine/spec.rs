use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::qsim::random::{random_hermitian, random_unit_vector, random_unitary, seeded_rng};
use crate::qsim::{norm, Observable, UnitaryGate, MAX_QUBITS, NORM_TOLERANCE};

/// The two data-register unitaries of one entangling step.
///
/// `excited` is applied on the branch where the step's control qubit is `|1⟩`,
/// `ground` where it is `|0⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct GatePair {
    pub excited: UnitaryGate,
    pub ground: UnitaryGate,
}

impl GatePair {
    pub fn new(excited: UnitaryGate, ground: UnitaryGate) -> Self {
        GatePair { excited, ground }
    }

    pub fn identity(n: usize) -> Self {
        GatePair::new(UnitaryGate::identity(n), UnitaryGate::identity(n))
    }

    pub fn select(&self, bit: bool) -> &UnitaryGate {
        if bit {
            &self.excited
        } else {
            &self.ground
        }
    }

    /// Swaps which branch gets which gate.
    pub fn swapped(&self) -> GatePair {
        GatePair::new(self.ground.clone(), self.excited.clone())
    }
}

/// Complete description of one aggregation circuit.
#[derive(Debug, Clone, PartialEq)]
pub struct MaqaSpec {
    pub d: usize,
    pub n: usize,
    /// Unit-norm amplitudes of the control register, indexed by trajectory `h`.
    pub beta_amps: Vec<Complex64>,
    /// Input before zero-padding and normalization.
    pub x_raw: Vec<Complex64>,
    /// `gate_pairs[i - 1]` holds the gates of step `i`.
    pub gate_pairs: Vec<GatePair>,
    pub f_gate: UnitaryGate,
    pub observable: Observable,
    pub seed: u64,
}

impl MaqaSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("data register needs n >= 1".into()));
        }
        if self.d + self.n > MAX_QUBITS {
            return Err(Error::TooManyQubits {
                requested: self.d + self.n,
                max: MAX_QUBITS,
            });
        }
        let h_count = 1usize << self.d;
        if self.beta_amps.len() != h_count {
            return Err(Error::InvalidSpec(format!(
                "beta_amps has {} entries, expected 2^d = {h_count}",
                self.beta_amps.len()
            )));
        }
        let deviation = (norm(&self.beta_amps) - 1.0).abs();
        if deviation > NORM_TOLERANCE {
            return Err(Error::NotNormalized { deviation });
        }
        if self.gate_pairs.len() != self.d {
            return Err(Error::InvalidSpec(format!(
                "{} gate pairs for d = {}",
                self.gate_pairs.len(),
                self.d
            )));
        }
        for (i, pair) in self.gate_pairs.iter().enumerate() {
            for g in [&pair.excited, &pair.ground] {
                if g.num_qubits() != self.n {
                    return Err(Error::InvalidSpec(format!(
                        "step {} gate acts on {} qubits, data register has {}",
                        i + 1,
                        g.num_qubits(),
                        self.n
                    )));
                }
            }
        }
        if self.f_gate.num_qubits() != self.n {
            return Err(Error::InvalidSpec(format!(
                "F acts on {} qubits, data register has {}",
                self.f_gate.num_qubits(),
                self.n
            )));
        }
        if self.observable.num_qubits() != self.n {
            return Err(Error::InvalidSpec(format!(
                "observable acts on {} qubits, data register has {}",
                self.observable.num_qubits(),
                self.n
            )));
        }
        encode_amplitudes(&self.x_raw, self.n).map(|_| ())
    }

    pub fn trajectory_count(&self) -> usize {
        1 << self.d
    }

    pub fn total_qubits(&self) -> usize {
        self.d + self.n
    }

    /// Amplitude-encoded input `x̂`.
    pub fn encoded_input(&self) -> Result<Vec<Complex64>> {
        encode_amplitudes(&self.x_raw, self.n)
    }

    /// Aggregation weights `|α_h|²`.
    pub fn weights(&self) -> Vec<f64> {
        self.beta_amps.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Every gate set to the identity, uniform control amplitudes, `M = I`,
    /// input `|0⟩`.
    pub fn identity(d: usize, n: usize) -> MaqaSpec {
        MaqaSpec {
            d,
            n,
            beta_amps: uniform_amplitudes(d),
            x_raw: vec![Complex64::new(1.0, 0.0)],
            gate_pairs: (0..d).map(|_| GatePair::identity(n)).collect(),
            f_gate: UnitaryGate::identity(n),
            observable: Observable::identity(n),
            seed: 0,
        }
    }

    /// Seeded random spec: Haar-style random gates and F, random unit control
    /// amplitudes and input, random Hermitian observable.
    pub fn random(d: usize, n: usize, seed: u64) -> MaqaSpec {
        let mut rng = seeded_rng(seed);
        let beta_amps = random_unit_vector(1 << d, &mut rng);
        let x_len = rng.random_range(1..=(1usize << n));
        let x_raw = random_unit_vector(x_len, &mut rng)
            .into_iter()
            .map(|z| z * 3.0)
            .collect();
        let gate_pairs = (0..d)
            .map(|_| GatePair::new(random_unitary(n, &mut rng), random_unitary(n, &mut rng)))
            .collect();
        let f_gate = random_unitary(n, &mut rng);
        let observable = random_hermitian(n, &mut rng);
        MaqaSpec {
            d,
            n,
            beta_amps,
            x_raw,
            gate_pairs,
            f_gate,
            observable,
            seed,
        }
    }
}

/// `1/√(2^d)` on every control basis state.
pub fn uniform_amplitudes(d: usize) -> Vec<Complex64> {
    let h = 1usize << d;
    vec![Complex64::new(1.0 / (h as f64).sqrt(), 0.0); h]
}

/// Zero-pads `x` to length `2^n` and L2-normalizes it.
pub fn encode_amplitudes(x: &[Complex64], n: usize) -> Result<Vec<Complex64>> {
    let dim = 1usize << n;
    if x.len() > dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: x.len(),
        });
    }
    if x.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    let nrm = norm(x);
    if nrm == 0.0 {
        return Err(Error::ZeroVector);
    }
    let mut out: Vec<Complex64> = x.iter().map(|z| z / nrm).collect();
    out.resize(dim, Complex64::new(0.0, 0.0));
    Ok(out)
}

/// Control basis state `|h⟩` with `h = b_1 b_2 … b_d` in binary, `b_1` most
/// significant (control qubit `c_1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TrajectoryIndex {
    h: usize,
    d: usize,
}

impl TrajectoryIndex {
    pub fn new(h: usize, d: usize) -> Result<Self> {
        if h >= 1usize << d {
            return Err(Error::TrajectoryOutOfRange { h, d });
        }
        Ok(TrajectoryIndex { h, d })
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let h = bits.iter().fold(0, |acc, &b| (acc << 1) | b as usize);
        TrajectoryIndex { h, d: bits.len() }
    }

    pub fn value(self) -> usize {
        self.h
    }

    pub fn d(self) -> usize {
        self.d
    }

    /// `(b_1, …, b_d)`.
    pub fn bits(self) -> Vec<bool> {
        (1..=self.d).map(|j| self.bit(j)).collect()
    }

    /// Bit `b_j` (1-based), the state of control qubit `c_j`.
    pub fn bit(self, j: usize) -> bool {
        (self.h >> (self.d - j)) & 1 == 1
    }

    /// Whether step `i` applies its excited gate. Step `i` is controlled by
    /// `c_{d+1-i}`, so step 1 reads the least significant bit.
    pub fn selects_excited(self, step: usize) -> bool {
        self.bit(self.d + 1 - step)
    }

    /// Binary label such as `"011"`.
    pub fn label(self) -> String {
        self.bits()
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bits_round_trip() {
        for d in 0..=6 {
            for h in 0..1usize << d {
                let t = TrajectoryIndex::new(h, d).unwrap();
                assert_eq!(TrajectoryIndex::from_bits(&t.bits()), t);
            }
        }
        assert!(TrajectoryIndex::new(8, 3).is_err());
    }

    #[test]
    fn bit_positions() {
        let t = TrajectoryIndex::new(0b011, 3).unwrap();
        assert_eq!(t.bits(), vec![false, true, true]);
        assert_eq!(t.label(), "011");
        assert!(t.selects_excited(1));
        assert!(t.selects_excited(2));
        assert!(!t.selects_excited(3));
    }

    #[test]
    fn encoding_pads_and_normalizes() {
        let x = [Complex64::new(3.0, 0.0), Complex64::new(0.0, 4.0)];
        let e = encode_amplitudes(&x, 2).unwrap();
        assert_eq!(e.len(), 4);
        assert!((e[0].re - 0.6).abs() < 1e-15);
        assert!((e[1].im - 0.8).abs() < 1e-15);
        assert_eq!(e[3], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn encoding_errors() {
        let zero = [Complex64::new(0.0, 0.0)];
        assert_eq!(encode_amplitudes(&zero, 1), Err(Error::ZeroVector));
        let long = vec![Complex64::new(1.0, 0.0); 3];
        assert!(matches!(
            encode_amplitudes(&long, 1),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn random_spec_is_valid() {
        for d in 0..=4 {
            for n in 1..=3 {
                MaqaSpec::random(d, n, 17 + d as u64).validate().unwrap();
            }
        }
    }

    #[test]
    fn validation_catches_bad_specs() {
        let mut s = MaqaSpec::identity(2, 1);
        s.gate_pairs.pop();
        assert!(matches!(s.validate(), Err(Error::InvalidSpec(_))));

        let mut s = MaqaSpec::identity(2, 1);
        s.beta_amps[0] *= 2.0;
        assert!(matches!(s.validate(), Err(Error::NotNormalized { .. })));

        let mut s = MaqaSpec::identity(1, 1);
        s.x_raw = vec![Complex64::new(0.0, 0.0)];
        assert_eq!(s.validate(), Err(Error::ZeroVector));

        let s = MaqaSpec::identity(17, 4);
        assert!(matches!(s.validate(), Err(Error::TooManyQubits { .. })));
    }
}
