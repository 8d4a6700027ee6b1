//! Statevector simulation of multiple-aggregator quantum circuits.
//!
//! A control register of `d` qubits selects one of two data-register
//! unitaries at each of `d` entangling steps, producing `2^d` trajectories in
//! superposition from only `2d` controlled gates. A single interference gate
//! and one data-register measurement then yield the weighted average of all
//! `2^d` component functions. The [`engine`] module builds that circuit and
//! checks it against a brute-force trajectory enumeration; [`qslp`] trains it
//! as a single-layer perceptron and [`ensemble`] runs it as a bagging ensemble.

pub mod engine;
pub mod ensemble;
mod error;
pub mod exec;
pub mod qsim;
pub mod qslp;

pub use error::{Error, Result};
pub use exec::ExecutionMode;
