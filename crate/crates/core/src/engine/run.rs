use serde::{Deserialize, Serialize};

use super::oracle::{oracle_aggregate, OracleAggregate, TrajectoryComponent};
use super::pipeline::{run_circuit, GateTally};
use super::spec::MaqaSpec;
use crate::error::{Error, Result};

/// Parameters of the classical cost model `H · N^α · p^β`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalParams {
    /// Training-set size `N`.
    pub dataset_size: u64,
    /// Feature count `p`.
    pub features: u64,
    pub alpha: f64,
    pub beta: f64,
}

impl Default for ClassicalParams {
    fn default() -> Self {
        ClassicalParams {
            dataset_size: 100,
            features: 2,
            alpha: 1.0,
            beta: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassicalCostModel {
    pub hidden: u64,
    pub dataset_size: u64,
    pub features: u64,
    pub alpha: f64,
    pub beta: f64,
    pub cost: f64,
}

impl ClassicalCostModel {
    pub fn new(d: usize, params: ClassicalParams) -> Result<Self> {
        if !(params.alpha >= 1.0 && params.beta >= 1.0) {
            return Err(Error::InvalidExponent {
                alpha: params.alpha,
                beta: params.beta,
            });
        }
        let hidden = 1u64 << d;
        let cost = hidden as f64
            * (params.dataset_size as f64).powf(params.alpha)
            * (params.features as f64).powf(params.beta);
        Ok(ClassicalCostModel {
            hidden,
            dataset_size: params.dataset_size,
            features: params.features,
            alpha: params.alpha,
            beta: params.beta,
            cost,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResourceReport {
    pub d: usize,
    pub controlled_g_applications: usize,
    pub f_applications: usize,
    pub trajectory_count: usize,
    pub classical_cost_model: Option<ClassicalCostModel>,
}

impl ResourceReport {
    fn from_tally(d: usize, tally: GateTally, trajectory_count: usize) -> Self {
        ResourceReport {
            d,
            controlled_g_applications: tally.controlled_g,
            f_applications: tally.f,
            trajectory_count,
            classical_cost_model: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AggregateResult {
    pub quantum_value: f64,
    pub oracle_value: f64,
    pub weight_sum: f64,
    pub per_trajectory: Vec<TrajectoryComponent>,
    pub abs_diff: f64,
    /// `|‖Φ_f‖ − 1|` of the final circuit state.
    pub norm_deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MaqaRun {
    pub aggregate: AggregateResult,
    pub resources: ResourceReport,
}

/// Runs the circuit and the classical oracle and compares them.
pub fn run_maqa(spec: &MaqaSpec) -> Result<MaqaRun> {
    run_maqa_with_oracle(spec, oracle_aggregate)
}

/// [`run_maqa`] with a substitute oracle, used to exercise tolerance handling.
pub fn run_maqa_with_oracle<O>(spec: &MaqaSpec, oracle: O) -> Result<MaqaRun>
where
    O: FnOnce(&MaqaSpec) -> Result<OracleAggregate>,
{
    let (state, quantum_value, tally) = run_circuit(spec)?;
    let oracle = oracle(spec)?;
    let resources = ResourceReport::from_tally(spec.d, tally, oracle.per_trajectory.len());
    Ok(MaqaRun {
        aggregate: AggregateResult {
            quantum_value,
            oracle_value: oracle.value,
            weight_sum: oracle.weight_sum,
            abs_diff: (quantum_value - oracle.value).abs(),
            per_trajectory: oracle.per_trajectory,
            norm_deviation: state.norm_deviation(),
        },
        resources,
    })
}

/// Executes the circuit with instrumentation and attaches the classical cost model.
pub fn count_resources(spec: &MaqaSpec, params: ClassicalParams) -> Result<ResourceReport> {
    let model = ClassicalCostModel::new(spec.d, params)?;
    let (_, _, tally) = run_circuit(spec)?;
    let mut report = ResourceReport::from_tally(spec.d, tally, spec.trajectory_count());
    report.classical_cost_model = Some(model);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::pipeline::measure_aggregate;
    use crate::qsim::random::random_unit_vector;
    use crate::qsim::random::seeded_rng;

    #[test]
    fn identity_spec_measures_input() {
        let mut spec = MaqaSpec::random(3, 2, 4);
        let obs = spec.observable.clone();
        let x_raw = spec.x_raw.clone();
        spec = MaqaSpec::identity(3, 2);
        spec.observable = obs;
        spec.x_raw = x_raw;
        let x = spec.encoded_input().unwrap();
        let expected = spec.observable.sandwich(&x).unwrap().re;
        let run = run_maqa(&spec).unwrap();
        assert!((run.aggregate.quantum_value - expected).abs() < 1e-12);
        assert!((run.aggregate.oracle_value - expected).abs() < 1e-12);
    }

    #[test]
    fn identity_gates_ignore_weights() {
        let mut spec = MaqaSpec::random(3, 2, 12);
        let n = spec.n;
        spec.gate_pairs = (0..3)
            .map(|_| super::super::GatePair::identity(n))
            .collect();
        let x = spec.encoded_input().unwrap();
        let fx = spec.f_gate.apply_to_vector(&x).unwrap();
        let expected = spec.observable.sandwich(&fx).unwrap().re;
        for seed in 0..5 {
            spec.beta_amps = random_unit_vector(8, &mut seeded_rng(seed));
            let (state, _, _) = run_circuit(&spec).unwrap();
            let v = measure_aggregate(&state, &spec.observable, 3, 2).unwrap();
            assert!((v - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn seeded_d3_n2_matches_oracle() {
        for seed in 0..10 {
            let run = run_maqa(&MaqaSpec::random(3, 2, seed)).unwrap();
            assert!(
                run.aggregate.abs_diff <= 1e-12,
                "seed {seed}: {}",
                run.aggregate.abs_diff
            );
        }
    }

    #[test]
    fn seeded_d8_n3_matches_oracle() {
        let run = run_maqa(&MaqaSpec::random(8, 3, 2024)).unwrap();
        assert!(run.aggregate.abs_diff <= 1e-9);
        assert_eq!(run.resources.controlled_g_applications, 16);
        assert_eq!(run.resources.trajectory_count, 256);
    }

    #[test]
    fn resource_counts() {
        let r = count_resources(&MaqaSpec::identity(3, 1), ClassicalParams::default()).unwrap();
        assert_eq!(r.controlled_g_applications, 6);
        assert_eq!(r.f_applications, 1);
        assert_eq!(r.trajectory_count, 8);
        assert_eq!(r.classical_cost_model.unwrap().cost, 1600.0);

        let r = count_resources(&MaqaSpec::identity(8, 1), ClassicalParams::default()).unwrap();
        assert_eq!(r.controlled_g_applications, 16);
        assert_eq!(r.trajectory_count, 256);
    }

    #[test]
    fn exponents_below_one_rejected() {
        let params = ClassicalParams {
            alpha: 0.5,
            ..ClassicalParams::default()
        };
        assert!(matches!(
            count_resources(&MaqaSpec::identity(1, 1), params),
            Err(Error::InvalidExponent { .. })
        ));
        let params = ClassicalParams {
            beta: f64::NAN,
            ..ClassicalParams::default()
        };
        assert!(ClassicalCostModel::new(1, params).is_err());
    }

    #[test]
    fn substitute_oracle_is_used() {
        let spec = MaqaSpec::random(2, 1, 3);
        let run = run_maqa_with_oracle(&spec, |s| {
            let mut o = oracle_aggregate(s)?;
            o.value += 1.0;
            Ok(o)
        })
        .unwrap();
        assert!((run.aggregate.abs_diff - 1.0).abs() < 1e-9);
    }
}
