//! Classical ground truth: enumerate all `2^d` trajectories and average their
//! components with the control-register weights.

use serde::Serialize;

use super::pipeline::trajectory_unitary;
use super::spec::{MaqaSpec, TrajectoryIndex};
use crate::error::{Error, Result};
use crate::exec::{ordered_sum, try_map_indexed, ExecutionMode};
use crate::qsim::IMAG_TOLERANCE;

/// One row of the per-trajectory table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrajectoryComponent {
    pub h: usize,
    pub weight: f64,
    pub component: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleAggregate {
    pub value: f64,
    pub weight_sum: f64,
    pub per_trajectory: Vec<TrajectoryComponent>,
}

/// `g(x; Θ_h) = ⟨x̂| G(Θ_h)† F† M F G(Θ_h) |x̂⟩` computed with dense matrix-vector products.
pub fn trajectory_component(h: TrajectoryIndex, spec: &MaqaSpec) -> Result<f64> {
    let x_hat = spec.encoded_input()?;
    let g = trajectory_unitary(h, spec)?;
    let v = spec.f_gate.apply_to_vector(&g.apply_to_vector(&x_hat)?)?;
    let value = spec.observable.sandwich(&v)?;
    if value.im.abs() > IMAG_TOLERANCE {
        return Err(Error::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}

/// [`oracle_aggregate_with`] on the default execution mode.
pub fn oracle_aggregate(spec: &MaqaSpec) -> Result<OracleAggregate> {
    oracle_aggregate_with(spec, ExecutionMode::default())
}

/// Weighted average `Σ_h |α_h|² g_h`, reduced in ascending `h` regardless of `mode`.
pub fn oracle_aggregate_with(spec: &MaqaSpec, mode: ExecutionMode) -> Result<OracleAggregate> {
    spec.validate()?;
    let d = spec.d;
    let per_trajectory = try_map_indexed(spec.trajectory_count(), mode, |h| {
        let idx = TrajectoryIndex::new(h, d)?;
        Ok::<_, Error>(TrajectoryComponent {
            h,
            weight: spec.beta_amps[h].norm_sqr(),
            component: trajectory_component(idx, spec)?,
        })
    })?;
    let value = ordered_sum(per_trajectory.iter().map(|t| t.weight * t.component));
    let weight_sum = ordered_sum(per_trajectory.iter().map(|t| t.weight));
    Ok(OracleAggregate {
        value,
        weight_sum,
        per_trajectory,
    })
}
