//! Ensemble reading of the aggregation circuit: uniform control weights and a
//! `|0⟩`-controlled gate realized as `X · C^(1)U · X`.

use num_complex::Complex64;
use serde::Serialize;

use crate::engine::{
    data_targets, encode_amplitudes, oracle_aggregate, step_control_qubit, uniform_amplitudes,
    GatePair, MaqaSpec, TrajectoryIndex,
};
use crate::error::{Error, Result};
use crate::exec::ordered_sum;
use crate::qsim::{kron, CMatrix, Observable, StateVector, UnitaryGate};

/// Largest mismatch tolerated when realizing learner angles additively.
pub const REALIZATION_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub d: usize,
    pub n: usize,
    pub gate_pairs: Vec<GatePair>,
    pub f_gate: UnitaryGate,
    pub observable: Observable,
    /// One Y-rotation angle per weak learner (trajectory), on data qubit 0.
    pub weak_learner_angles: Option<Vec<f64>>,
}

impl EnsembleSpec {
    /// Bagging-demo spec whose gate pairs realize `angles` (one per trajectory).
    pub fn from_learner_angles(
        angles: Vec<f64>,
        n: usize,
        f_gate: UnitaryGate,
        observable: Observable,
    ) -> Result<Self> {
        let d = learner_register_size(angles.len())?;
        let steps = realize_learner_angles(&angles)?;
        let gate_pairs = steps
            .iter()
            .map(|&(e, g)| {
                Ok(GatePair::new(
                    rotation_on_first(e, n)?,
                    rotation_on_first(g, n)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(EnsembleSpec {
            d,
            n,
            gate_pairs,
            f_gate,
            observable,
            weak_learner_angles: Some(angles),
        })
    }

    /// Aggregation spec with fixed uniform control amplitudes.
    pub fn to_maqa_spec(&self, x: &[f64]) -> Result<MaqaSpec> {
        let spec = MaqaSpec {
            d: self.d,
            n: self.n,
            beta_amps: uniform_amplitudes(self.d),
            x_raw: x.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            gate_pairs: self.gate_pairs.clone(),
            f_gate: self.f_gate.clone(),
            observable: self.observable.clone(),
            seed: 0,
        };
        spec.validate()?;
        Ok(spec)
    }
}

fn learner_register_size(count: usize) -> Result<usize> {
    if count == 0 || !count.is_power_of_two() {
        let expected = count.max(1).next_power_of_two();
        return Err(Error::LearnerCount {
            expected,
            found: count,
        });
    }
    Ok(count.trailing_zeros() as usize)
}

/// `Ry(angle)` on data qubit 0, identity on the rest.
pub fn rotation_on_first(angle: f64, n: usize) -> Result<UnitaryGate> {
    if n == 0 {
        return Err(Error::InvalidSpec("data register needs n >= 1".into()));
    }
    UnitaryGate::new(kron(
        UnitaryGate::ry(angle).matrix(),
        &CMatrix::identity(1 << (n - 1)),
    ))
}

/// Step `i` via X-flips: `X(c)`, `C^(1) ground`, `X(c)`, then `C^(1) excited`,
/// with `c = c_{d+1-i}`. Equal to [`trajectory_step`](crate::engine::trajectory_step).
pub fn ensemble_step_xflip(
    state: &StateVector,
    step: usize,
    excited: &UnitaryGate,
    ground: &UnitaryGate,
    d: usize,
    n: usize,
) -> Result<StateVector> {
    if state.num_qubits() != d + n {
        return Err(Error::DimensionMismatch {
            expected: d + n,
            found: state.num_qubits(),
        });
    }
    let c = step_control_qubit(step, d)?;
    let targets = data_targets(d, n);
    let x = UnitaryGate::x();
    state
        .apply_unitary(&x, &[c])?
        .apply_controlled(c, 1, ground, &targets)?
        .apply_unitary(&x, &[c])?
        .apply_controlled(c, 1, excited, &targets)
}

/// Hadamards on the control register of `|0…0⟩ ⊗ |x̂⟩`.
pub fn prepare_uniform(d: usize, n: usize, x: &[f64]) -> Result<StateVector> {
    let raw: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let x_hat = encode_amplitudes(&raw, n)?;
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << (d + n)];
    amps[..x_hat.len()].copy_from_slice(&x_hat);
    let mut state = StateVector::from_amplitudes(amps)?;
    let h = UnitaryGate::h();
    for q in 0..d {
        state = state.apply_unitary(&h, &[q])?;
    }
    Ok(state)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleRun {
    pub quantum_value: f64,
    pub oracle_value: f64,
    pub weights: Vec<f64>,
    pub abs_diff: f64,
}

/// Runs the X-flip circuit with uniform weights and checks it against the oracle.
pub fn run_ensemble(spec: &EnsembleSpec, x: &[f64]) -> Result<EnsembleRun> {
    let maqa = spec.to_maqa_spec(x)?;
    let quantum_value = ensemble_circuit_value(spec, x)?;
    let oracle = oracle_aggregate(&maqa)?;
    Ok(EnsembleRun {
        quantum_value,
        oracle_value: oracle.value,
        weights: oracle.per_trajectory.iter().map(|t| t.weight).collect(),
        abs_diff: (quantum_value - oracle.value).abs(),
    })
}

fn ensemble_circuit_value(spec: &EnsembleSpec, x: &[f64]) -> Result<f64> {
    let mut state = prepare_uniform(spec.d, spec.n, x)?;
    for (i, pair) in spec.gate_pairs.iter().enumerate() {
        state = ensemble_step_xflip(&state, i + 1, &pair.excited, &pair.ground, spec.d, spec.n)?;
    }
    state = state.apply_unitary(&spec.f_gate, &data_targets(spec.d, spec.n))?;
    state.expectation_on_data(&spec.observable, spec.n)
}

/// Per-step `(excited, ground)` rotation angles whose sums along each
/// trajectory reproduce `angles[h]`.
///
/// Additive composition only spans `d + 1` degrees of freedom, so tables that
/// are not of the form `φ_h = φ_0 + Σ_{bits set} δ_i` are rejected.
pub fn realize_learner_angles(angles: &[f64]) -> Result<Vec<(f64, f64)>> {
    let d = learner_register_size(angles.len())?;
    if angles.iter().any(|a| !a.is_finite()) {
        return Err(Error::NonFinite);
    }
    if d == 0 {
        return Ok(Vec::new());
    }
    let base = angles[0];
    let steps: Vec<(f64, f64)> = (1..=d)
        .map(|i| {
            let single = angles[1 << (i - 1)];
            if i == 1 {
                (single, base)
            } else {
                (single - base, 0.0)
            }
        })
        .collect();
    for (h, &target) in angles.iter().enumerate() {
        let got = learner_angle(&steps, h);
        let residual = (got - target).abs();
        if residual > REALIZATION_TOLERANCE {
            return Err(Error::UnrealizableLearners { h, residual });
        }
    }
    Ok(steps)
}

/// Total rotation of trajectory `h` given per-step `(excited, ground)` angles.
pub fn learner_angle(steps: &[(f64, f64)], h: usize) -> f64 {
    let t = TrajectoryIndex::new(h, steps.len()).expect("h in range");
    ordered_sum(
        steps
            .iter()
            .enumerate()
            .map(|(i, &(e, g))| if t.selects_excited(i + 1) { e } else { g }),
    )
}

/// Learner table for arbitrary per-step angles.
pub fn learner_angles_from_steps(steps: &[(f64, f64)]) -> Vec<f64> {
    (0..1usize << steps.len())
        .map(|h| learner_angle(steps, h))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearnerAssignment {
    pub h: usize,
    pub label: String,
    pub angle: f64,
    /// Rotation contributed by steps `1..=d` on this trajectory.
    pub step_angles: Vec<f64>,
    pub expectation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaggingReport {
    pub quantum_avg: f64,
    pub classical_avg: f64,
    pub abs_diff: f64,
    pub assignments: Vec<LearnerAssignment>,
}

/// Single learner expectation `⟨x̂| R(φ)† F† M F R(φ) |x̂⟩` without a register.
pub fn learner_expectation(
    angle: f64,
    x_hat: &[Complex64],
    f_gate: &UnitaryGate,
    observable: &Observable,
    n: usize,
) -> Result<f64> {
    let r = rotation_on_first(angle, n)?;
    let v = f_gate.matrix().mul_vec(&r.matrix().mul_vec(x_hat)?)?;
    Ok(observable.sandwich(&v)?.re)
}

/// Quantum uniform-weight average vs. the classical `1/H` average of learners.
pub fn run_bagging_demo(spec: &EnsembleSpec, x: &[f64]) -> Result<BaggingReport> {
    let angles = spec
        .weak_learner_angles
        .as_ref()
        .ok_or_else(|| Error::InvalidSpec("bagging demo needs weak_learner_angles".into()))?;
    let expected = 1usize << spec.d;
    if angles.len() != expected {
        return Err(Error::LearnerCount {
            expected,
            found: angles.len(),
        });
    }
    let steps = realize_learner_angles(angles)?;
    let mut circuit = spec.clone();
    circuit.gate_pairs = steps
        .iter()
        .map(|&(e, g)| {
            Ok(GatePair::new(
                rotation_on_first(e, spec.n)?,
                rotation_on_first(g, spec.n)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    let quantum_avg = ensemble_circuit_value(&circuit, x)?;

    let raw: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
    let x_hat = encode_amplitudes(&raw, spec.n)?;
    let mut assignments = Vec::with_capacity(expected);
    for (h, &angle) in angles.iter().enumerate() {
        let t = TrajectoryIndex::new(h, spec.d)?;
        let step_angles = steps
            .iter()
            .enumerate()
            .map(|(i, &(e, g))| if t.selects_excited(i + 1) { e } else { g })
            .collect();
        assignments.push(LearnerAssignment {
            h,
            label: t.label(),
            angle,
            step_angles,
            expectation: learner_expectation(
                angle,
                &x_hat,
                &spec.f_gate,
                &spec.observable,
                spec.n,
            )?,
        });
    }
    let classical_avg = ordered_sum(assignments.iter().map(|a| a.expectation)) / expected as f64;
    Ok(BaggingReport {
        quantum_avg,
        classical_avg,
        abs_diff: (quantum_avg - classical_avg).abs(),
        assignments,
    })
}
