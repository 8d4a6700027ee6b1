//! The four circuit stages: state preparation, trajectory generation,
//! interference, and data-register measurement.

use num_complex::Complex64;
use serde::Serialize;

use super::spec::{MaqaSpec, TrajectoryIndex};
use crate::error::{Error, Result};
use crate::qsim::{Observable, StateVector, UnitaryGate, MAX_QUBITS};

/// Counts of gate applications made while executing a circuit.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct GateTally {
    pub controlled_g: usize,
    pub f: usize,
}

/// Data-register qubit indices `d..d+n`.
pub fn data_targets(d: usize, n: usize) -> Vec<usize> {
    (d..d + n).collect()
}

/// Register qubit that controls step `i` (1-based): `c_{d+1-i}`, i.e. qubit `d - i`.
pub fn step_control_qubit(step: usize, d: usize) -> Result<usize> {
    if step == 0 || step > d {
        return Err(Error::StepOutOfRange { step, d });
    }
    Ok(d - step)
}

/// Step 1: `Σ_h α_h |h⟩ ⊗ |x̂⟩`.
pub fn prepare_state(spec: &MaqaSpec) -> Result<StateVector> {
    if spec.d + spec.n > MAX_QUBITS {
        return Err(Error::TooManyQubits {
            requested: spec.d + spec.n,
            max: MAX_QUBITS,
        });
    }
    spec.validate()?;
    let x_hat = spec.encoded_input()?;
    let amps: Vec<Complex64> = spec
        .beta_amps
        .iter()
        .flat_map(|a| x_hat.iter().map(move |x| a * x))
        .collect();
    StateVector::from_amplitudes(amps)
}

fn check_register(state: &StateVector, d: usize, n: usize) -> Result<()> {
    if state.num_qubits() != d + n {
        return Err(Error::DimensionMismatch {
            expected: d + n,
            found: state.num_qubits(),
        });
    }
    Ok(())
}

pub(crate) fn trajectory_step_tallied(
    state: &StateVector,
    step: usize,
    excited: &UnitaryGate,
    ground: &UnitaryGate,
    d: usize,
    n: usize,
    tally: &mut GateTally,
) -> Result<StateVector> {
    check_register(state, d, n)?;
    let control = step_control_qubit(step, d)?;
    let targets = data_targets(d, n);
    let s = state.apply_controlled(control, 1, excited, &targets)?;
    tally.controlled_g += 1;
    let s = s.apply_controlled(control, 0, ground, &targets)?;
    tally.controlled_g += 1;
    Ok(s)
}

/// Step `i` of trajectory generation: `C^(1) excited` then `C^(0) ground` on the
/// data register, controlled by `c_{d+1-i}`.
pub fn trajectory_step(
    state: &StateVector,
    step: usize,
    excited: &UnitaryGate,
    ground: &UnitaryGate,
    d: usize,
    n: usize,
) -> Result<StateVector> {
    trajectory_step_tallied(
        state,
        step,
        excited,
        ground,
        d,
        n,
        &mut GateTally::default(),
    )
}

pub(crate) fn build_trajectories_tallied(
    state: &StateVector,
    spec: &MaqaSpec,
    tally: &mut GateTally,
) -> Result<StateVector> {
    let mut s = state.clone();
    for (i, pair) in spec.gate_pairs.iter().enumerate() {
        s = trajectory_step_tallied(
            &s,
            i + 1,
            &pair.excited,
            &pair.ground,
            spec.d,
            spec.n,
            tally,
        )?;
    }
    Ok(s)
}

/// Step 2: all `d` entangling steps, producing `Σ_h α_h |h⟩ G(Θ_h)|x̂⟩`.
pub fn build_trajectories(state: &StateVector, spec: &MaqaSpec) -> Result<StateVector> {
    build_trajectories_tallied(state, spec, &mut GateTally::default())
}

/// `G(Θ_h) = G_{d,·} ⋯ G_{2,·} G_{1,·}` where step `i` picks its excited gate iff
/// bit `b_{d+1-i}` of `h` is set.
pub fn trajectory_unitary(h: TrajectoryIndex, spec: &MaqaSpec) -> Result<UnitaryGate> {
    if h.d() != spec.d {
        return Err(Error::TrajectoryOutOfRange {
            h: h.value(),
            d: spec.d,
        });
    }
    spec.gate_pairs
        .iter()
        .enumerate()
        .try_fold(UnitaryGate::identity(spec.n), |acc, (i, pair)| {
            acc.then(pair.select(h.selects_excited(i + 1)))
        })
}

pub(crate) fn apply_interference_tallied(
    state: &StateVector,
    f: &UnitaryGate,
    tally: &mut GateTally,
) -> Result<StateVector> {
    let n = f.num_qubits();
    if n > state.num_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.num_qubits(),
            found: n,
        });
    }
    let d = state.num_qubits() - n;
    let out = state.apply_unitary(f, &data_targets(d, n))?;
    tally.f += 1;
    Ok(out)
}

/// Step 3: `(I^{⊗d} ⊗ F)` with `F` on the lowest `f.num_qubits()` qubits.
pub fn apply_interference(state: &StateVector, f: &UnitaryGate) -> Result<StateVector> {
    apply_interference_tallied(state, f, &mut GateTally::default())
}

/// Step 4: the expectation of `I^{⊗d} ⊗ M`, which equals `Σ_h |α_h|² g_h`.
pub fn measure_aggregate(state: &StateVector, m: &Observable, d: usize, n: usize) -> Result<f64> {
    check_register(state, d, n)?;
    state.expectation_on_data(m, n)
}

/// Full quantum path. Returns the final state, the measured value and gate tallies.
pub fn run_circuit(spec: &MaqaSpec) -> Result<(StateVector, f64, GateTally)> {
    let mut tally = GateTally::default();
    let s0 = prepare_state(spec)?;
    let s1 = build_trajectories_tallied(&s0, spec, &mut tally)?;
    let sf = apply_interference_tallied(&s1, &spec.f_gate, &mut tally)?;
    let value = measure_aggregate(&sf, &spec.observable, spec.d, spec.n)?;
    Ok((sf, value, tally))
}
