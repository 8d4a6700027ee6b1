//! Experiment config files: JSON, unknown fields rejected, every error tagged
//! with the offending field path or syntax position.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use maqa_core::engine::{ClassicalParams, GatePair, MaqaSpec};
use maqa_core::qsim::{CMatrix, Observable, UnitaryGate};
use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::report::to_json_bytes;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Aggregate,
    QslpTrain,
    Ensemble,
    VerifyAppendix,
    Resources,
}

impl Mode {
    pub const ALL: [Mode; 5] = [
        Mode::Aggregate,
        Mode::QslpTrain,
        Mode::Ensemble,
        Mode::VerifyAppendix,
        Mode::Resources,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Aggregate => "aggregate",
            Mode::QslpTrain => "qslp-train",
            Mode::Ensemble => "ensemble",
            Mode::VerifyAppendix => "verify-appendix",
            Mode::Resources => "resources",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mode::ALL
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Mode::ALL.iter().map(|m| m.as_str()).collect();
                format!("unknown mode `{s}`, expected one of {}", names.join(", "))
            })
    }
}

/// Row-major complex matrix, one `[re, im]` pair per entry.
pub type MatrixConfig = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixGate {
    pub matrix: MatrixConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KronGate {
    pub kron: Vec<GateConfig>,
}

/// A gate: preset name (`"I"`, `"X"`, `"Y"`, `"Z"`, `"H"`, `"CX"`,
/// `"Ry(0.5)"`, `"Rz(-1)"`), explicit matrix, or tensor product of gates
/// (first factor on the most significant qubit).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GateConfig {
    Preset(String),
    Matrix(MatrixGate),
    Kron(KronGate),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GatePairConfig {
    pub excited: GateConfig,
    pub ground: GateConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagonalObservable {
    pub diagonal: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectorObservable {
    pub projector_one: usize,
}

/// An observable on the data register: `"I"`, `"Z"` (on data qubit 0),
/// `"P1"` (`|1⟩⟨1|` on data qubit 0), a real diagonal, a projector on a chosen
/// data qubit, or an explicit Hermitian matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObservableConfig {
    Preset(String),
    Diagonal(DiagonalObservable),
    Projector(ProjectorObservable),
    Matrix(MatrixGate),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AggregateSpec {
    pub d: usize,
    pub n: usize,
    /// Start from a seeded random spec; explicit fields still override it.
    #[serde(default, skip_serializing_if = "is_false")]
    pub random: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_amps: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x_raw: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_pairs: Option<Vec<GatePairConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_gate: Option<GateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<ObservableConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QslpTrainSpec {
    pub d: usize,
    pub n: usize,
    /// `"toy"` for the built-in separable set, otherwise a CSV path.
    #[serde(default = "toy_dataset")]
    pub dataset: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta_params: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_gate: Option<GateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epochs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fd_step: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnsembleConfigSpec {
    /// Needed only when no learners or gates are listed (random learners).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default = "one")]
    pub n: usize,
    pub x: Vec<f64>,
    /// One angle per trajectory; must be additively realizable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learner_angles: Option<Vec<f64>>,
    /// `[excited, ground]` Y-rotation angles for each step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step_angles: Option<Vec<[f64; 2]>>,
    /// General gate pairs; runs the X-flip circuit against the oracle.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_pairs: Option<Vec<GatePairConfig>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_gate: Option<GateConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub observable: Option<ObservableConfig>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyAppendixSpec {
    /// Number of consecutive seeds to check, starting at the run seed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResourcesSpec {
    /// Inclusive range such as `"1..8"` (or `"1..=8"`), or a single depth.
    #[serde(default = "default_range")]
    pub d: DepthRange,
    #[serde(default = "one")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dataset_size: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub features: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
}

impl Default for ResourcesSpec {
    fn default() -> Self {
        ResourcesSpec {
            d: default_range(),
            n: 1,
            dataset_size: None,
            features: None,
            alpha: None,
            beta: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum DepthRange {
    Single(usize),
    Text(String),
}

impl DepthRange {
    pub fn bounds(&self) -> Result<(usize, usize), String> {
        let (lo, hi) = match self {
            DepthRange::Single(d) => (*d, *d),
            DepthRange::Text(s) => parse_range(s)?,
        };
        if lo > hi {
            return Err(format!("empty depth range {lo}..{hi}"));
        }
        Ok((lo, hi))
    }
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let bad = || format!("bad depth range `{s}`, expected e.g. `1..8`");
    let s = s.trim();
    match s.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            let lo = a.trim().parse().map_err(|_| bad())?;
            let hi = b.trim().parse().map_err(|_| bad())?;
            Ok((lo, hi))
        }
        None => s.parse().map(|d| (d, d)).map_err(|_| bad()),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ModeSpec {
    Aggregate(AggregateSpec),
    QslpTrain(QslpTrainSpec),
    Ensemble(EnsembleConfigSpec),
    VerifyAppendix(VerifyAppendixSpec),
    Resources(ResourcesSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    pub spec: ModeSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    mode: Mode,
    #[serde(default)]
    seed: Option<u64>,
    #[serde(default)]
    output_path: Option<PathBuf>,
    #[serde(default)]
    spec: Option<serde_json::Value>,
}

fn is_false(b: &bool) -> bool {
    !*b
}

fn one() -> usize {
    1
}

fn toy_dataset() -> String {
    "toy".into()
}

fn default_range() -> DepthRange {
    DepthRange::Text("1..8".into())
}

impl ExperimentConfig {
    /// Config with the mode's default spec, for modes that need no file.
    pub fn for_mode(mode: Mode) -> Result<Self, CliError> {
        let spec = match mode {
            Mode::VerifyAppendix => ModeSpec::VerifyAppendix(VerifyAppendixSpec::default()),
            Mode::Resources => ModeSpec::Resources(ResourcesSpec::default()),
            _ => return Err(CliError::Usage(format!("mode {mode} needs --config"))),
        };
        Ok(ExperimentConfig {
            mode,
            seed: None,
            output_path: None,
            spec,
        })
    }

    /// Canonical JSON form; parsing it yields an equal config.
    pub fn to_canonical_json(&self) -> Vec<u8> {
        to_json_bytes(self)
    }
}

pub fn parse_config(path: &Path) -> Result<ExperimentConfig, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_config_str(&text)
}

pub fn parse_config_str(text: &str) -> Result<ExperimentConfig, CliError> {
    let raw: RawConfig = deserialize_at(&mut serde_json::Deserializer::from_str(text), "")?;
    let value = raw
        .spec
        .unwrap_or_else(|| serde_json::Value::Object(Default::default()));
    let spec = match raw.mode {
        Mode::Aggregate => ModeSpec::Aggregate(deserialize_at(value, "spec")?),
        Mode::QslpTrain => ModeSpec::QslpTrain(deserialize_at(value, "spec")?),
        Mode::Ensemble => ModeSpec::Ensemble(deserialize_at(value, "spec")?),
        Mode::VerifyAppendix => ModeSpec::VerifyAppendix(deserialize_at(value, "spec")?),
        Mode::Resources => ModeSpec::Resources(deserialize_at(value, "spec")?),
    };
    let config = ExperimentConfig {
        mode: raw.mode,
        seed: raw.seed,
        output_path: raw.output_path,
        spec,
    };
    config.check()?;
    Ok(config)
}

fn deserialize_at<'de, D, T>(de: D, prefix: &str) -> Result<T, CliError>
where
    D: serde::Deserializer<'de, Error = serde_json::Error>,
    T: DeserializeOwned,
{
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if inner.is_syntax() || inner.is_eof() {
            return CliError::Syntax {
                line: inner.line(),
                column: inner.column(),
                message: inner.to_string(),
            };
        }
        let field = match (prefix, path.as_str()) {
            (p, ".") => p.to_string(),
            ("", rest) => rest.to_string(),
            (p, rest) => format!("{p}.{rest}"),
        };
        CliError::Schema {
            field: if field.is_empty() {
                "<root>".into()
            } else {
                field
            },
            message: inner.to_string(),
        }
    })
}

impl ExperimentConfig {
    /// Builds every gate and observable once so that invalid matrices are
    /// reported at parse time. The seed only affects random fill-ins.
    fn check(&self) -> Result<(), CliError> {
        let seed = self.seed.unwrap_or(0);
        match &self.spec {
            ModeSpec::Aggregate(s) => build_maqa_spec(s, seed).map(drop),
            ModeSpec::QslpTrain(s) => build_qslp_spec(s, seed).map(drop),
            ModeSpec::Ensemble(s) => build_ensemble(s, seed).map(drop),
            ModeSpec::VerifyAppendix(_) => Ok(()),
            ModeSpec::Resources(s) => resources_plan(s).map(drop),
        }
    }
}

fn invalid(field: impl Into<String>, source: maqa_core::Error) -> CliError {
    CliError::Invalid {
        field: field.into(),
        source,
    }
}

fn complex(entries: &[[f64; 2]]) -> Vec<Complex64> {
    entries
        .iter()
        .map(|&[re, im]| Complex64::new(re, im))
        .collect()
}

fn build_matrix(rows: &MatrixConfig, field: &str) -> Result<CMatrix, CliError> {
    let rows: Vec<Vec<Complex64>> = rows.iter().map(|r| complex(r)).collect();
    CMatrix::from_rows(&rows).map_err(|e| invalid(field, e))
}

fn parse_angle(s: &str, name: &str) -> Option<f64> {
    s.strip_prefix(name)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()
}

fn preset_gate(name: &str, num_qubits: usize) -> Option<UnitaryGate> {
    let name = name.trim();
    let gate = match name {
        "I" => UnitaryGate::identity(num_qubits),
        "X" => UnitaryGate::x(),
        "Y" => UnitaryGate::y(),
        "Z" => UnitaryGate::z(),
        "H" => UnitaryGate::h(),
        "CX" | "CNOT" => UnitaryGate::cx(),
        _ => match parse_angle(name, "Ry") {
            Some(t) => UnitaryGate::ry(t),
            None => UnitaryGate::rz(parse_angle(name, "Rz")?),
        },
    };
    Some(gate)
}

/// Builds `cfg` and checks that it acts on `num_qubits` qubits.
pub fn build_gate(
    cfg: &GateConfig,
    num_qubits: usize,
    field: &str,
) -> Result<UnitaryGate, CliError> {
    let gate = build_gate_any(cfg, num_qubits, field)?;
    if gate.num_qubits() != num_qubits {
        return Err(CliError::Schema {
            field: field.into(),
            message: format!(
                "gate acts on {} qubit(s), expected {num_qubits}",
                gate.num_qubits()
            ),
        });
    }
    Ok(gate)
}

fn build_gate_any(
    cfg: &GateConfig,
    num_qubits: usize,
    field: &str,
) -> Result<UnitaryGate, CliError> {
    match cfg {
        GateConfig::Preset(name) => preset_gate(name, num_qubits).ok_or_else(|| CliError::Schema {
            field: field.into(),
            message: format!("unknown gate preset `{name}`"),
        }),
        GateConfig::Matrix(m) => {
            let matrix = build_matrix(&m.matrix, field)?;
            UnitaryGate::new(matrix).map_err(|e| invalid(field, e))
        }
        GateConfig::Kron(k) => {
            if k.kron.is_empty() {
                return Err(CliError::Schema {
                    field: field.into(),
                    message: "kron needs at least one factor".into(),
                });
            }
            let mut acc: Option<UnitaryGate> = None;
            for (i, f) in k.kron.iter().enumerate() {
                // `"I"` inside a product is a single-qubit identity.
                let g = build_gate_any(f, 1, &format!("{field}.kron[{i}]"))?;
                acc = Some(match acc {
                    None => g,
                    Some(a) => a.tensor(&g).map_err(|e| invalid(field, e))?,
                });
            }
            Ok(acc.expect("non-empty"))
        }
    }
}

pub fn build_observable(
    cfg: &ObservableConfig,
    n: usize,
    field: &str,
) -> Result<Observable, CliError> {
    let obs = match cfg {
        ObservableConfig::Preset(name) => match name.trim() {
            "I" => Observable::identity(n),
            "Z" => {
                let half = 1usize << (n - 1);
                let diag: Vec<f64> = (0..1usize << n)
                    .map(|i| if i < half { 1.0 } else { -1.0 })
                    .collect();
                Observable::diagonal(&diag).map_err(|e| invalid(field, e))?
            }
            "P1" => Observable::projector_one(0, n).map_err(|e| invalid(field, e))?,
            other => {
                return Err(CliError::Schema {
                    field: field.into(),
                    message: format!("unknown observable preset `{other}`"),
                })
            }
        },
        ObservableConfig::Diagonal(d) => {
            Observable::diagonal(&d.diagonal).map_err(|e| invalid(field, e))?
        }
        ObservableConfig::Projector(p) => {
            Observable::projector_one(p.projector_one, n).map_err(|e| invalid(field, e))?
        }
        ObservableConfig::Matrix(m) => {
            Observable::new(build_matrix(&m.matrix, field)?).map_err(|e| invalid(field, e))?
        }
    };
    if obs.num_qubits() != n {
        return Err(CliError::Schema {
            field: field.into(),
            message: format!(
                "observable acts on {} qubit(s), expected {n}",
                obs.num_qubits()
            ),
        });
    }
    Ok(obs)
}

fn build_pairs(
    pairs: &[GatePairConfig],
    d: usize,
    n: usize,
    field: &str,
) -> Result<Vec<GatePair>, CliError> {
    if pairs.len() != d {
        return Err(CliError::Schema {
            field: field.into(),
            message: format!("expected {d} gate pairs, found {}", pairs.len()),
        });
    }
    pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Ok(GatePair::new(
                build_gate(&p.excited, n, &format!("{field}[{i}].excited"))?,
                build_gate(&p.ground, n, &format!("{field}[{i}].ground"))?,
            ))
        })
        .collect()
}

fn require_data_qubits(n: usize) -> Result<(), CliError> {
    if n == 0 {
        return Err(CliError::Schema {
            field: "spec.n".into(),
            message: "data register needs n >= 1".into(),
        });
    }
    Ok(())
}

pub fn build_maqa_spec(s: &AggregateSpec, seed: u64) -> Result<MaqaSpec, CliError> {
    require_data_qubits(s.n)?;
    if s.d + s.n > maqa_core::qsim::MAX_QUBITS {
        return Err(invalid(
            "spec",
            maqa_core::Error::TooManyQubits {
                requested: s.d + s.n,
                max: maqa_core::qsim::MAX_QUBITS,
            },
        ));
    }
    let mut spec = if s.random {
        MaqaSpec::random(s.d, s.n, seed)
    } else {
        let mut base = MaqaSpec::identity(s.d, s.n);
        base.seed = seed;
        base
    };
    if let Some(b) = &s.beta_amps {
        spec.beta_amps = complex(b);
    }
    if let Some(x) = &s.x_raw {
        spec.x_raw = complex(x);
    }
    if let Some(p) = &s.gate_pairs {
        spec.gate_pairs = build_pairs(p, s.d, s.n, "spec.gate_pairs")?;
    }
    if let Some(f) = &s.f_gate {
        spec.f_gate = build_gate(f, s.n, "spec.f_gate")?;
    }
    if let Some(m) = &s.observable {
        spec.observable = build_observable(m, s.n, "spec.observable")?;
    }
    spec.validate().map_err(|e| invalid("spec", e))?;
    Ok(spec)
}

pub fn build_qslp_spec(
    s: &QslpTrainSpec,
    seed: u64,
) -> Result<maqa_core::qslp::QslpSpec, CliError> {
    require_data_qubits(s.n)?;
    let mut spec = maqa_core::qslp::QslpSpec::seeded(s.d, s.n, seed);
    if let Some(t) = &s.theta {
        spec.theta = t.clone();
    }
    if let Some(b) = &s.beta_params {
        spec.beta_params = b.clone();
    }
    if let Some(f) = &s.f_gate {
        spec.f_gate = build_gate(f, s.n, "spec.f_gate")?;
    }
    spec.validate().map_err(|e| invalid("spec", e))?;
    Ok(spec)
}

/// How an ensemble config is executed.
#[derive(Debug, Clone)]
pub enum EnsemblePlan {
    /// Uniform average of additive weak learners vs. their classical mean.
    Bagging(maqa_core::ensemble::EnsembleSpec),
    /// Arbitrary gate pairs on the X-flip circuit vs. the oracle.
    Circuit(maqa_core::ensemble::EnsembleSpec),
}

pub fn build_ensemble(s: &EnsembleConfigSpec, seed: u64) -> Result<EnsemblePlan, CliError> {
    use maqa_core::ensemble::{learner_angles_from_steps, EnsembleSpec};
    require_data_qubits(s.n)?;
    let given = [
        s.learner_angles.is_some(),
        s.step_angles.is_some(),
        s.gate_pairs.is_some(),
    ];
    if given.iter().filter(|&&g| g).count() > 1 {
        return Err(CliError::Schema {
            field: "spec".into(),
            message: "give at most one of learner_angles, step_angles, gate_pairs".into(),
        });
    }
    let f_gate = match &s.f_gate {
        Some(f) => build_gate(f, s.n, "spec.f_gate")?,
        None => UnitaryGate::identity(s.n),
    };
    let observable = match &s.observable {
        Some(m) => build_observable(m, s.n, "spec.observable")?,
        None => Observable::projector_one(0, s.n).map_err(|e| invalid("spec.observable", e))?,
    };
    let check_d = |d: usize, field: &str| match s.d {
        Some(want) if want != d => Err(CliError::Schema {
            field: field.into(),
            message: format!("implies d = {d} but spec.d = {want}"),
        }),
        _ => Ok(()),
    };

    if let Some(pairs) = &s.gate_pairs {
        check_d(pairs.len(), "spec.gate_pairs")?;
        let gate_pairs = build_pairs(pairs, pairs.len(), s.n, "spec.gate_pairs")?;
        return Ok(EnsemblePlan::Circuit(EnsembleSpec {
            d: pairs.len(),
            n: s.n,
            gate_pairs,
            f_gate,
            observable,
            weak_learner_angles: None,
        }));
    }

    let angles = if let Some(a) = &s.learner_angles {
        a.clone()
    } else {
        let steps: Vec<(f64, f64)> = match &s.step_angles {
            Some(st) => st.iter().map(|&[e, g]| (e, g)).collect(),
            None => {
                let d = s.d.ok_or_else(|| CliError::Schema {
                    field: "spec.d".into(),
                    message: "needed when no learners or gate pairs are given".into(),
                })?;
                random_steps(d, seed)
            }
        };
        learner_angles_from_steps(&steps)
    };
    let field = if s.learner_angles.is_some() {
        "spec.learner_angles"
    } else {
        "spec.step_angles"
    };
    if !angles.len().is_power_of_two() {
        return Err(invalid(
            field,
            maqa_core::Error::LearnerCount {
                expected: angles.len().next_power_of_two(),
                found: angles.len(),
            },
        ));
    }
    check_d(angles.len().trailing_zeros() as usize, field)?;
    EnsembleSpec::from_learner_angles(angles, s.n, f_gate, observable)
        .map(EnsemblePlan::Bagging)
        .map_err(|e| invalid(field, e))
}

fn random_steps(d: usize, seed: u64) -> Vec<(f64, f64)> {
    use rand::Rng;
    use std::f64::consts::PI;
    let mut rng = maqa_core::qsim::random::seeded_rng(seed);
    (0..d)
        .map(|_| (rng.random_range(-PI..PI), rng.random_range(-PI..PI)))
        .collect()
}

/// Depth range and cost parameters of a resources run.
pub fn resources_plan(
    s: &ResourcesSpec,
) -> Result<(usize, usize, usize, ClassicalParams), CliError> {
    require_data_qubits(s.n)?;
    let (lo, hi) = s.d.bounds().map_err(|message| CliError::Schema {
        field: "spec.d".into(),
        message,
    })?;
    if hi + s.n > maqa_core::qsim::MAX_QUBITS {
        return Err(invalid(
            "spec.d",
            maqa_core::Error::TooManyQubits {
                requested: hi + s.n,
                max: maqa_core::qsim::MAX_QUBITS,
            },
        ));
    }
    let defaults = ClassicalParams::default();
    let params = ClassicalParams {
        dataset_size: s.dataset_size.unwrap_or(defaults.dataset_size),
        features: s.features.unwrap_or(defaults.features),
        alpha: s.alpha.unwrap_or(defaults.alpha),
        beta: s.beta.unwrap_or(defaults.beta),
    };
    maqa_core::engine::ClassicalCostModel::new(lo, params).map_err(|e| invalid("spec", e))?;
    Ok((lo, hi, s.n, params))
}
