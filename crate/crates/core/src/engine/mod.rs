//! The aggregation circuit end to end, its classical trajectory oracle, the
//! three-qubit golden expansion check, and resource accounting.

mod appendix;
mod oracle;
mod pipeline;
mod run;
mod spec;

pub use appendix::{
    verify_appendix, verify_appendix_with, AppendixBlock, AppendixReport, APPENDIX_TOLERANCE,
    EXPANSION,
};
pub use oracle::{
    oracle_aggregate, oracle_aggregate_with, trajectory_component, OracleAggregate,
    TrajectoryComponent,
};
pub use pipeline::{
    apply_interference, build_trajectories, data_targets, measure_aggregate, prepare_state,
    run_circuit, step_control_qubit, trajectory_step, trajectory_unitary, GateTally,
};
pub use run::{
    count_resources, run_maqa, run_maqa_with_oracle, AggregateResult, ClassicalCostModel,
    ClassicalParams, MaqaRun, ResourceReport,
};
pub use spec::{encode_amplitudes, uniform_amplitudes, GatePair, MaqaSpec, TrajectoryIndex};
