//! Acceptance gate. Runs every criterion at its pinned tolerance, prints one
//! PASS/FAIL line each, and exits non-zero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use rand::Rng;

use maqa_core::engine::{
    measure_aggregate, oracle_aggregate, prepare_state, run_circuit, run_maqa, trajectory_step,
    verify_appendix, MaqaSpec,
};
use maqa_core::ensemble::{
    ensemble_step_xflip, learner_angles_from_steps, run_bagging_demo, EnsembleSpec,
};
use maqa_core::exec::{map_indexed, ExecutionMode};
use maqa_core::qsim::random::{random_hermitian, random_state, random_unitary, seeded_rng};
use maqa_core::qsim::{max_abs_diff, Observable, UnitaryGate};
use maqa_core::qslp::{
    central_difference_gradient, qslp_gradient_fd, qslp_predict, qslp_train, QslpSpec, ToyDataset,
    TrainOptions,
};

const AGGREGATION_TOL: f64 = 1e-9;
const APPENDIX_TOL: f64 = 1e-12;
const XFLIP_TOL: f64 = 1e-12;
const BAGGING_TOL: f64 = 1e-10;
const LOSS_RATIO: f64 = 0.5;
const ANALYTIC_GRAD_TOL: f64 = 1e-6;
const HALVING_TOL: f64 = 1e-5;
const HYGIENE_TOL: f64 = 1e-12;

/// Seed shared by the toy dataset and the perceptron initialization.
const QSLP_SEED: u64 = 7;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

fn aggregation_theorem() -> Outcome {
    let cases = map_indexed(200, ExecutionMode::Parallel, |i| {
        let d = i % 9;
        let n = 1 + (i / 9) % 4;
        let run = run_maqa(&MaqaSpec::random(d, n, 10_000 + i as u64)).expect("valid spec");
        (d, n, run.aggregate.abs_diff)
    });
    let worst = cases.iter().map(|c| c.2).fold(0.0, f64::max);
    let all_d = (0..=8).all(|d| cases.iter().any(|c| c.0 == d));
    let all_n = (1..=4).all(|n| cases.iter().any(|c| c.1 == n));
    outcome(
        worst <= AGGREGATION_TOL && all_d && all_n,
        format!("200 specs, d 0..=8, n 1..=4, max |quantum - oracle| = {worst:.3e}"),
    )
}

fn appendix_golden() -> Outcome {
    let reports = map_indexed(100, ExecutionMode::Parallel, |seed| {
        verify_appendix(seed as u64).expect("appendix circuit builds")
    });
    let worst = reports
        .iter()
        .flat_map(|r| r.blocks.iter().map(|b| b.max_diff.max(b.unitary_diff)))
        .fold(0.0, f64::max);
    let words_ok = reports.iter().all(|r| {
        r.blocks[0b001].gate_word == "G_{3,2}G_{2,2}G_{1,1}"
            && r.blocks[0b111].gate_word == "G_{3,1}G_{2,1}G_{1,1}"
    });
    let all = reports.iter().all(|r| r.passed);
    outcome(
        all && words_ok && worst <= APPENDIX_TOL,
        format!("100 seeds x 8 blocks, max block diff = {worst:.3e}"),
    )
}

fn linear_depth() -> Outcome {
    let mut ok = true;
    let mut rows = Vec::new();
    for d in 0..=8 {
        let spec = MaqaSpec::random(d, 1, 500 + d as u64);
        let run = run_maqa(&spec).expect("valid spec");
        let r = &run.resources;
        ok &= r.controlled_g_applications == 2 * d
            && r.f_applications == 1
            && r.trajectory_count == 1 << d
            && run.aggregate.per_trajectory.len() == 1 << d;
        rows.push(format!(
            "{d}:{}/{}",
            r.controlled_g_applications, r.trajectory_count
        ));
    }
    outcome(ok, format!("d:controlled/trajectories {}", rows.join(" ")))
}

fn xflip_equivalence() -> Outcome {
    let diffs = map_indexed(1000, ExecutionMode::Parallel, |case| {
        let mut rng = seeded_rng(20_000 + case as u64);
        let d = rng.random_range(1..=4);
        let n = rng.random_range(1..=3);
        let step = rng.random_range(1..=d);
        let g1 = random_unitary(n, &mut rng);
        let g2 = random_unitary(n, &mut rng);
        let s = random_state(d + n, &mut rng);
        let a = ensemble_step_xflip(&s, step, &g1, &g2, d, n).unwrap();
        let b = trajectory_step(&s, step, &g1, &g2, d, n).unwrap();
        max_abs_diff(a.amplitudes(), b.amplitudes())
    });
    let worst = diffs.iter().copied().fold(0.0, f64::max);
    outcome(
        worst <= XFLIP_TOL,
        format!("1000 cases, max diff = {worst:.3e}"),
    )
}

fn bagging_demo() -> Outcome {
    let mut worst = 0.0f64;
    let mut ok = true;
    for (d, h) in [(1usize, 2usize), (2, 4), (3, 8)] {
        let mut rng = seeded_rng(30_000 + h as u64);
        let steps: Vec<(f64, f64)> = (0..d)
            .map(|_| (rng.random_range(-PI..PI), rng.random_range(-PI..PI)))
            .collect();
        let angles = learner_angles_from_steps(&steps);
        let spec = EnsembleSpec::from_learner_angles(
            angles,
            1,
            UnitaryGate::identity(1),
            Observable::projector_one(0, 1).unwrap(),
        )
        .unwrap();
        let x = [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)];
        let r = run_bagging_demo(&spec, &x).unwrap();
        ok &= r.assignments.len() == h;
        worst = worst.max(r.abs_diff);
    }
    outcome(
        ok && worst <= BAGGING_TOL,
        format!("H in {{2,4,8}}, max |quantum - classical| = {worst:.3e}"),
    )
}

fn qslp_training() -> Outcome {
    let start = Instant::now();
    let data = ToyDataset::separable(QSLP_SEED);
    let spec = QslpSpec::seeded(2, 1, QSLP_SEED);
    let opts = TrainOptions {
        epochs: 100,
        learning_rate: 0.5,
        fd_step: 1e-4,
        seed: QSLP_SEED,
    };
    let a = qslp_train(&data, &spec, &opts).unwrap();
    let b = qslp_train(&data, &spec, &opts).unwrap();
    let bits = |r: &maqa_core::qslp::TrainReport| {
        r.loss_trace.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
    };
    let reproducible = bits(&a) == bits(&b);
    let ratio = a.final_loss() / a.initial_loss();
    outcome(
        ratio <= LOSS_RATIO && reproducible && a.loss_trace.len() == 101,
        format!(
            "MSE {:.4} -> {:.4} (ratio {ratio:.3}), reproducible = {reproducible}, {:.2?}",
            a.initial_loss(),
            a.final_loss(),
            start.elapsed()
        ),
    )
}

fn gradient_sanity() -> Outcome {
    let theta = 0.7;
    let mut spec = QslpSpec::zeros(1, 1);
    spec.theta = vec![theta, 0.0];
    spec.beta_params = vec![PI];
    let g = central_difference_gradient(
        |p| {
            let mut s = spec.clone();
            s.theta[0] = p[0];
            qslp_predict(&[1.0], &s)
        },
        &[theta],
        1e-4,
    )
    .unwrap();
    let analytic_err = (g[0] - theta.sin() / 2.0).abs();

    let data = ToyDataset::separable(QSLP_SEED);
    let mut halving_err = 0.0f64;
    for seed in 0..5 {
        let s = QslpSpec::seeded(2, 1, 40_000 + seed);
        let coarse = qslp_gradient_fd(&data, &s, 1e-3).unwrap();
        let fine = qslp_gradient_fd(&data, &s, 1e-4).unwrap();
        for (a, b) in coarse.iter().zip(&fine) {
            halving_err = halving_err.max((a - b).abs());
        }
    }
    outcome(
        analytic_err <= ANALYTIC_GRAD_TOL && halving_err <= HALVING_TOL,
        format!("analytic err = {analytic_err:.3e}, step-halving err = {halving_err:.3e}"),
    )
}

fn numerical_hygiene() -> Outcome {
    let stats = map_indexed(100, ExecutionMode::Parallel, |i| {
        let d = i % 9;
        let n = 1 + (i / 9) % 4;
        let spec = MaqaSpec::random(d, n, 50_000 + i as u64);
        let s0 = prepare_state(&spec).unwrap();
        let (sf, _, _) = run_circuit(&spec).unwrap();
        let mut rng = seeded_rng(60_000 + i as u64);
        let m = random_hermitian(n, &mut rng);
        let residue = sf.expectation_on_data_complex(&m, n).unwrap().im.abs();
        let _ = measure_aggregate(&sf, &m, d, n).unwrap();
        let weights = oracle_aggregate(&spec).unwrap().weight_sum;
        (
            s0.norm_deviation().max(sf.norm_deviation()),
            residue,
            (weights - 1.0).abs(),
        )
    });
    let norm = stats.iter().map(|s| s.0).fold(0.0, f64::max);
    let residue = stats.iter().map(|s| s.1).fold(0.0, f64::max);
    let weights = stats.iter().map(|s| s.2).fold(0.0, f64::max);

    // Pipelines outside the engine: perceptron and ensemble states.
    let mut other = 0.0f64;
    let q = QslpSpec::seeded(3, 2, 9)
        .to_maqa_spec(&[0.3, 0.1, -0.5])
        .unwrap();
    other = other.max(run_circuit(&q).unwrap().0.norm_deviation());
    let mut rng = seeded_rng(61);
    let mut s = random_state(5, &mut rng);
    for step in 1..=3 {
        let g1 = random_unitary(2, &mut rng);
        let g2 = random_unitary(2, &mut rng);
        s = ensemble_step_xflip(&s, step, &g1, &g2, 3, 2).unwrap();
        other = other.max(s.norm_deviation());
    }
    let norm = norm.max(other);
    outcome(
        norm <= HYGIENE_TOL && residue <= HYGIENE_TOL && weights <= HYGIENE_TOL,
        format!("norm dev = {norm:.3e}, Im residue = {residue:.3e}, |sum w - 1| = {weights:.3e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("1 aggregation theorem", aggregation_theorem),
        ("2 three-qubit golden expansion", appendix_golden),
        ("3 linear depth, exponential breadth", linear_depth),
        ("4 X-flip equivalence", xflip_equivalence),
        ("5 bagging average", bagging_demo),
        ("6 qSLP training", qslp_training),
        ("7 gradient sanity", gradient_sanity),
        ("8 numerical hygiene", numerical_hygiene),
    ];
    let mut failures = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let o = check();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("[{tag}] {name}: {} ({:.2?})", o.detail, start.elapsed());
        if !o.passed {
            failures += 1;
        }
    }
    println!("acceptance: {} of 8 criteria passed", 8 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
