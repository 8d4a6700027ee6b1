//! Quantum single-layer perceptron: the aggregation circuit with `2^d`
//! trajectories acting as hidden neurons, trained by finite-difference
//! gradient descent on a mean squared error.
//!
//! Each step gate is a layer of Y rotations, one angle per data qubit,
//! followed by a nearest-neighbor CNOT ladder when `n ≥ 2`. The control
//! register is prepared by one Y rotation per control qubit, so the
//! trajectory weights are products of `cos²(β_i/2)` and `sin²(β_i/2)`.
//! The prediction is the probability of reading `|1⟩` on the first data qubit.

use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::engine::{run_circuit, GatePair, MaqaSpec};
use crate::error::{Error, Result};
use crate::exec::{ordered_sum, try_map_indexed, ExecutionMode};
use crate::qsim::random::seeded_rng;
use crate::qsim::{CMatrix, Observable, UnitaryGate};

pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, PartialEq)]
pub struct QslpSpec {
    pub d: usize,
    pub n: usize,
    /// Rotation angles, `2·d·n` of them. Entry `((i-1)·2 + (j-1))·n + k` is the
    /// angle on data qubit `k` of gate `G_{i,j}` (`j = 1` excited, `j = 2` ground).
    pub theta: Vec<f64>,
    /// One Y-rotation angle per control qubit `c_1 … c_d`.
    pub beta_params: Vec<f64>,
    pub f_gate: UnitaryGate,
}

impl QslpSpec {
    /// All angles zero and `F = I`.
    pub fn zeros(d: usize, n: usize) -> Self {
        QslpSpec {
            d,
            n,
            theta: vec![0.0; 2 * d * n],
            beta_params: vec![0.0; d],
            f_gate: UnitaryGate::identity(n),
        }
    }

    /// Seeded initialization: gate angles uniform in `[-π/4, π/4]`, control
    /// angles uniform in `[π/4, 3π/4]`.
    pub fn seeded(d: usize, n: usize, seed: u64) -> Self {
        use std::f64::consts::FRAC_PI_4;
        let mut rng = seeded_rng(seed);
        let theta = (0..2 * d * n)
            .map(|_| rng.random_range(-FRAC_PI_4..=FRAC_PI_4))
            .collect();
        let beta_params = (0..d)
            .map(|_| rng.random_range(FRAC_PI_4..=3.0 * FRAC_PI_4))
            .collect();
        QslpSpec {
            d,
            n,
            theta,
            beta_params,
            f_gate: UnitaryGate::identity(n),
        }
    }

    pub fn params_per_gate(&self) -> usize {
        self.n
    }

    pub fn num_parameters(&self) -> usize {
        self.theta.len() + self.beta_params.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidSpec("data register needs n >= 1".into()));
        }
        let expected = 2 * self.d * self.n;
        if self.theta.len() != expected {
            return Err(Error::InvalidSpec(format!(
                "theta has {} entries, template needs {expected}",
                self.theta.len()
            )));
        }
        if self.beta_params.len() != self.d {
            return Err(Error::InvalidSpec(format!(
                "beta_params has {} entries, expected d = {}",
                self.beta_params.len(),
                self.d
            )));
        }
        if self
            .theta
            .iter()
            .chain(&self.beta_params)
            .any(|a| !a.is_finite())
        {
            return Err(Error::NonFinite);
        }
        if self.f_gate.num_qubits() != self.n {
            return Err(Error::InvalidSpec(
                "F does not match the data register".into(),
            ));
        }
        Ok(())
    }

    /// `theta` followed by `beta_params`.
    pub fn parameters(&self) -> Vec<f64> {
        self.theta
            .iter()
            .chain(&self.beta_params)
            .copied()
            .collect()
    }

    pub fn with_parameters(&self, params: &[f64]) -> Result<QslpSpec> {
        if params.len() != self.num_parameters() {
            return Err(Error::DimensionMismatch {
                expected: self.num_parameters(),
                found: params.len(),
            });
        }
        let (theta, beta) = params.split_at(self.theta.len());
        Ok(QslpSpec {
            theta: theta.to_vec(),
            beta_params: beta.to_vec(),
            ..self.clone()
        })
    }

    fn gate_angles(&self, step: usize, branch: usize) -> &[f64] {
        let start = ((step - 1) * 2 + (branch - 1)) * self.n;
        &self.theta[start..start + self.n]
    }

    /// `G(θ_{step,branch})` built from the template.
    pub fn gate(&self, step: usize, branch: usize) -> Result<UnitaryGate> {
        if step == 0 || step > self.d {
            return Err(Error::StepOutOfRange { step, d: self.d });
        }
        template_gate(self.gate_angles(step, branch))
    }

    /// Control amplitudes `⊗_i (cos(β_i/2)|0⟩ + sin(β_i/2)|1⟩)`, `c_1` most significant.
    pub fn control_amplitudes(&self) -> Vec<Complex64> {
        self.beta_params
            .iter()
            .fold(vec![Complex64::new(1.0, 0.0)], |acc, &b| {
                let (s, c) = (b / 2.0).sin_cos();
                acc.iter().flat_map(|a| [a * c, a * s]).collect()
            })
    }

    /// The aggregation circuit this perceptron evaluates on input `x`.
    pub fn to_maqa_spec(&self, x: &[f64]) -> Result<MaqaSpec> {
        self.validate()?;
        let gate_pairs = (1..=self.d)
            .map(|i| Ok(GatePair::new(self.gate(i, 1)?, self.gate(i, 2)?)))
            .collect::<Result<Vec<_>>>()?;
        let spec = MaqaSpec {
            d: self.d,
            n: self.n,
            beta_amps: self.control_amplitudes(),
            x_raw: x.iter().map(|&v| Complex64::new(v, 0.0)).collect(),
            gate_pairs,
            f_gate: self.f_gate.clone(),
            observable: Observable::projector_one(0, self.n)?,
            seed: 0,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Y rotations on every qubit (qubit 0 most significant), then CNOTs
/// `0→1, 1→2, …` when there are at least two qubits.
pub fn template_gate(angles: &[f64]) -> Result<UnitaryGate> {
    let mut rotations = UnitaryGate::ry(angles[0]);
    for &a in &angles[1..] {
        rotations = rotations.tensor(&UnitaryGate::ry(a))?;
    }
    if angles.len() < 2 {
        return Ok(rotations);
    }
    rotations.then(&cnot_ladder(angles.len()))
}

/// Permutation matrix of the CNOT chain `0→1, 1→2, …, (n-2)→(n-1)`.
pub fn cnot_ladder(n: usize) -> UnitaryGate {
    let dim = 1usize << n;
    let mut m = CMatrix::zeros(dim, dim);
    for col in 0..dim {
        let mut bits = col;
        for k in 0..n - 1 {
            let ctrl = n - 1 - k;
            if (bits >> ctrl) & 1 == 1 {
                bits ^= 1 << (ctrl - 1);
            }
        }
        m[(bits, col)] = Complex64::new(1.0, 0.0);
    }
    UnitaryGate::new(m).expect("permutation matrix is unitary")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DataPoint {
    pub x: Vec<f64>,
    pub label: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToyDataset {
    points: Vec<DataPoint>,
}

impl ToyDataset {
    /// Rejects zero vectors, non-finite coordinates and non-binary labels.
    pub fn new(points: Vec<DataPoint>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if p.x.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite);
            }
            if p.x.iter().all(|&v| v == 0.0) {
                return Err(Error::ZeroVector);
            }
            if p.label != 0.0 && p.label != 1.0 {
                return Err(Error::InvalidSpec(format!(
                    "point {i} has label {}, expected 0 or 1",
                    p.label
                )));
            }
        }
        Ok(ToyDataset { points })
    }

    /// Ten seeded 2D points, five per class, separable by direction.
    ///
    /// Label 1 points lie within π/8 of the `x0` axis, label 0 points within
    /// π/8 of the `x1` axis; radii are uniform in `[0.5, 2]`.
    pub fn separable(seed: u64) -> Self {
        use std::f64::consts::{FRAC_PI_2, FRAC_PI_8};
        let mut rng = seeded_rng(seed);
        let points = (0..10)
            .map(|i| {
                let label = if i % 2 == 0 { 1.0 } else { 0.0 };
                let offset: f64 = rng.random_range(0.0..FRAC_PI_8);
                let phi = if label == 1.0 {
                    offset
                } else {
                    FRAC_PI_2 - offset
                };
                let r: f64 = rng.random_range(0.5..2.0);
                DataPoint {
                    x: vec![r * phi.cos(), r * phi.sin()],
                    label,
                }
            })
            .collect();
        ToyDataset::new(points).expect("generated points are valid")
    }

    pub fn points(&self) -> &[DataPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Probability of `|1⟩` on the first data qubit after the full circuit.
pub fn qslp_predict(x: &[f64], spec: &QslpSpec) -> Result<f64> {
    let (_, value, _) = run_circuit(&spec.to_maqa_spec(x)?)?;
    Ok(value)
}

pub fn qslp_loss(data: &ToyDataset, spec: &QslpSpec) -> Result<f64> {
    qslp_loss_with(data, spec, ExecutionMode::default())
}

/// Mean squared error; per-point predictions may run in parallel, the sum is
/// always taken in point order.
pub fn qslp_loss_with(data: &ToyDataset, spec: &QslpSpec, mode: ExecutionMode) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    let residuals = try_map_indexed(data.len(), mode, |i| {
        let p = &data.points[i];
        qslp_predict(&p.x, spec).map(|y| (y - p.label).powi(2))
    })?;
    Ok(ordered_sum(residuals) / data.len() as f64)
}

/// Central differences `(f(p + h e_k) − f(p − h e_k)) / 2h` for every coordinate.
pub fn central_difference_gradient<F>(f: F, params: &[f64], step: f64) -> Result<Vec<f64>>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidSpec(format!(
            "finite-difference step {step} must be > 0"
        )));
    }
    let mut probe = params.to_vec();
    (0..params.len())
        .map(|k| {
            probe[k] = params[k] + step;
            let up = f(&probe)?;
            probe[k] = params[k] - step;
            let down = f(&probe)?;
            probe[k] = params[k];
            Ok((up - down) / (2.0 * step))
        })
        .collect()
}

/// Gradient of [`qslp_loss`] over `theta` then `beta_params`.
pub fn qslp_gradient_fd(data: &ToyDataset, spec: &QslpSpec, step: f64) -> Result<Vec<f64>> {
    central_difference_gradient(
        |p| qslp_loss(data, &spec.with_parameters(p)?),
        &spec.parameters(),
        step,
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrainOptions {
    pub epochs: usize,
    pub learning_rate: f64,
    pub fd_step: f64,
    /// Recorded in the report; the optimizer itself is deterministic.
    pub seed: u64,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            epochs: 100,
            learning_rate: 0.5,
            fd_step: DEFAULT_FD_STEP,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrainReport {
    /// Loss before training followed by the loss after each epoch.
    pub loss_trace: Vec<f64>,
    pub final_theta: Vec<f64>,
    pub final_beta: Vec<f64>,
    pub epochs: usize,
    pub learning_rate: f64,
    pub fd_step: f64,
    pub seed: u64,
}

impl TrainReport {
    pub fn initial_loss(&self) -> f64 {
        self.loss_trace[0]
    }

    pub fn final_loss(&self) -> f64 {
        *self.loss_trace.last().expect("trace has the initial loss")
    }
}

/// Full-batch gradient descent with a fixed learning rate.
pub fn qslp_train(data: &ToyDataset, spec: &QslpSpec, opts: &TrainOptions) -> Result<TrainReport> {
    if opts.epochs == 0 {
        return Err(Error::InvalidSpec("epochs must be >= 1".into()));
    }
    if !(opts.learning_rate >= 0.0 && opts.learning_rate.is_finite()) {
        return Err(Error::InvalidSpec(format!(
            "learning rate {} must be finite and non-negative",
            opts.learning_rate
        )));
    }
    spec.validate()?;
    let mut current = spec.clone();
    let mut loss_trace = Vec::with_capacity(opts.epochs + 1);
    loss_trace.push(qslp_loss(data, &current)?);
    for epoch in 1..=opts.epochs {
        let grad = qslp_gradient_fd(data, &current, opts.fd_step)?;
        let params: Vec<f64> = current
            .parameters()
            .iter()
            .zip(&grad)
            .map(|(p, g)| p - opts.learning_rate * g)
            .collect();
        current = current.with_parameters(&params)?;
        let loss = qslp_loss(data, &current)?;
        if !loss.is_finite() {
            return Err(Error::Diverged { epoch, loss });
        }
        loss_trace.push(loss);
    }
    Ok(TrainReport {
        loss_trace,
        final_theta: current.theta,
        final_beta: current.beta_params,
        epochs: opts.epochs,
        learning_rate: opts.learning_rate,
        fd_step: opts.fd_step,
        seed: opts.seed,
    })
}
