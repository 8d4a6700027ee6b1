//! Golden check of the three-control-qubit circuit against its hand expansion.
//!
//! The control register is prepared with a product `B_1 ⊗ B_2 ⊗ B_3`, each
//! `B_i|0⟩ = a_i|0⟩ + b_i|1⟩`, so every trajectory amplitude is a product of
//! one `a_i` or `b_i` per control qubit. Each basis block `|c_1 c_2 c_3⟩` of
//! the state after the three entangling steps must equal that coefficient
//! times the gate word in [`EXPANSION`] applied to `|x̂⟩`.

use num_complex::Complex64;
use serde::Serialize;

use super::pipeline::{build_trajectories, data_targets, prepare_state, trajectory_unitary};
use super::spec::{GatePair, MaqaSpec, TrajectoryIndex};
use crate::error::Result;
use crate::qsim::random::{random_unitary, seeded_rng};
use crate::qsim::{max_abs_diff, Observable, StateVector, UnitaryGate};

pub const APPENDIX_TOLERANCE: f64 = 1e-12;

const D: usize = 3;
const N: usize = 1;

/// Branch chosen at steps 3, 2, 1 (in that left-to-right product order) for
/// each control basis state `|000⟩ … |111⟩`. `1` is the excited gate `G_{i,1}`,
/// `2` the ground gate `G_{i,2}`.
pub const EXPANSION: [[u8; 3]; 8] = [
    [2, 2, 2],
    [2, 2, 1],
    [2, 1, 2],
    [2, 1, 1],
    [1, 2, 2],
    [1, 2, 1],
    [1, 1, 2],
    [1, 1, 1],
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixBlock {
    pub h: usize,
    pub label: String,
    /// E.g. `"G_{3,2}G_{2,1}G_{1,1}"`.
    pub gate_word: String,
    /// E.g. `"a1*b2*b3"`.
    pub coefficient_word: String,
    pub coefficient: [f64; 2],
    /// Block of the simulated state vs. coefficient·word·|x̂⟩.
    pub max_diff: f64,
    /// Word product vs. `trajectory_unitary`.
    pub unitary_diff: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AppendixReport {
    pub seed: u64,
    pub tolerance: f64,
    /// Gate-prepared `S_β ⊗ S_x` state vs. amplitude-loaded preparation.
    pub preparation_diff: f64,
    pub blocks: Vec<AppendixBlock>,
    pub passed: bool,
}

fn gate_word(word: &[u8; 3]) -> String {
    word.iter()
        .zip([3, 2, 1])
        .map(|(j, i)| format!("G_{{{i},{j}}}"))
        .collect()
}

/// Builds the seeded three-control circuit and checks every block against the
/// expansion table. Uses random single-qubit `B_i`, `S_x` and gate pairs.
pub fn verify_appendix(seed: u64) -> Result<AppendixReport> {
    let mut rng = seeded_rng(seed);
    let b_gates: Vec<UnitaryGate> = (0..D).map(|_| random_unitary(1, &mut rng)).collect();
    let s_x = random_unitary(N, &mut rng);
    let pairs: Vec<GatePair> = (0..D)
        .map(|_| GatePair::new(random_unitary(N, &mut rng), random_unitary(N, &mut rng)))
        .collect();
    verify_appendix_with(seed, &b_gates, &s_x, pairs)
}

/// [`verify_appendix`] on explicit `B_i`, `S_x`, and gate pairs.
pub fn verify_appendix_with(
    seed: u64,
    b_gates: &[UnitaryGate],
    s_x: &UnitaryGate,
    pairs: Vec<GatePair>,
) -> Result<AppendixReport> {
    assert_eq!(b_gates.len(), D, "three control preparations");
    // a_i, b_i: first column of B_i.
    let coeffs: Vec<(Complex64, Complex64)> = b_gates
        .iter()
        .map(|b| (b.matrix()[(0, 0)], b.matrix()[(1, 0)]))
        .collect();
    let x_hat: Vec<Complex64> = (0..1 << N).map(|r| s_x.matrix()[(r, 0)]).collect();

    // Circuit path: gates on |0000⟩.
    let mut state = StateVector::zero(D + N)?;
    for (q, b) in b_gates.iter().enumerate() {
        state = state.apply_unitary(b, &[q])?;
    }
    state = state.apply_unitary(s_x, &data_targets(D, N))?;

    let product_amps: Vec<Complex64> = (0..1usize << D)
        .map(|h| {
            let t = TrajectoryIndex::new(h, D).expect("h < 8");
            (1..=D).fold(Complex64::new(1.0, 0.0), |acc, j| {
                let (a, b) = coeffs[j - 1];
                acc * if t.bit(j) { b } else { a }
            })
        })
        .collect();
    let spec = MaqaSpec {
        d: D,
        n: N,
        beta_amps: product_amps.clone(),
        x_raw: x_hat.clone(),
        gate_pairs: pairs,
        f_gate: UnitaryGate::identity(N),
        observable: Observable::identity(N),
        seed,
    };
    let preparation_diff = max_abs_diff(state.amplitudes(), prepare_state(&spec)?.amplitudes());
    let entangled = build_trajectories(&state, &spec)?;

    let mut blocks = Vec::with_capacity(1 << D);
    for (h, word) in EXPANSION.iter().enumerate() {
        let t = TrajectoryIndex::new(h, D)?;
        // word[0] is the leftmost factor (step 3); apply right to left.
        let mut v = x_hat.clone();
        let mut product = UnitaryGate::identity(N);
        for (pos, &j) in word.iter().enumerate().rev() {
            let pair = &spec.gate_pairs[D - 1 - pos];
            let g = if j == 1 { &pair.excited } else { &pair.ground };
            v = g.apply_to_vector(&v)?;
            product = product.then(g)?;
        }
        let coefficient = product_amps[h];
        let expected: Vec<Complex64> = v.iter().map(|z| coefficient * z).collect();
        let max_diff = max_abs_diff(entangled.block(h, N), &expected);
        let unitary_diff = trajectory_unitary(t, &spec)?
            .matrix()
            .max_abs_diff(product.matrix())
            .expect("same shape");
        let coefficient_word = t
            .bits()
            .iter()
            .enumerate()
            .map(|(i, &bit)| format!("{}{}", if bit { 'b' } else { 'a' }, i + 1))
            .collect::<Vec<_>>()
            .join("*");
        blocks.push(AppendixBlock {
            h,
            label: t.label(),
            gate_word: gate_word(word),
            coefficient_word,
            coefficient: [coefficient.re, coefficient.im],
            max_diff,
            unitary_diff,
            passed: max_diff <= APPENDIX_TOLERANCE && unitary_diff <= APPENDIX_TOLERANCE,
        });
    }
    let passed = preparation_diff <= APPENDIX_TOLERANCE && blocks.iter().all(|b| b.passed);
    Ok(AppendixReport {
        seed,
        tolerance: APPENDIX_TOLERANCE,
        preparation_diff,
        blocks,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hadamard_controls_give_uniform_coefficients() {
        let h = UnitaryGate::h();
        let mut rng = seeded_rng(5);
        let pairs = (0..3)
            .map(|_| GatePair::new(random_unitary(1, &mut rng), random_unitary(1, &mut rng)))
            .collect();
        let report = verify_appendix_with(
            5,
            &[h.clone(), h.clone(), h],
            &random_unitary(1, &mut rng),
            pairs,
        )
        .unwrap();
        assert!(report.passed);
        let expected = 1.0 / 8f64.sqrt();
        for b in &report.blocks {
            assert!((b.coefficient[0] - expected).abs() < 1e-15);
            assert!(b.coefficient[1].abs() < 1e-15);
        }
    }

    #[test]
    fn block_011_word_and_coefficient() {
        let report = verify_appendix(42).unwrap();
        let b = &report.blocks[0b011];
        assert_eq!(b.label, "011");
        assert_eq!(b.gate_word, "G_{3,2}G_{2,1}G_{1,1}");
        assert_eq!(b.coefficient_word, "a1*b2*b3");
        assert!(b.passed);
    }

    #[test]
    fn words_for_001_and_111() {
        let report = verify_appendix(1).unwrap();
        assert_eq!(report.blocks[0b001].gate_word, "G_{3,2}G_{2,2}G_{1,1}");
        assert_eq!(report.blocks[0b111].gate_word, "G_{3,1}G_{2,1}G_{1,1}");
        assert_eq!(report.blocks[0b000].gate_word, "G_{3,2}G_{2,2}G_{1,2}");
    }

    #[test]
    fn hundred_seeds_pass() {
        for seed in 0..100 {
            assert!(verify_appendix(seed).unwrap().passed, "seed {seed}");
        }
    }
}
