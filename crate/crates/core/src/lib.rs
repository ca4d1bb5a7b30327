//! State-preparation circuit compiler and logical resource estimator.
//!
//! Real-amplitude target states are turned into circuits by two families of
//! methods:
//!
//! - rotation based ([`rotation::synthesize_dense`], [`rotation::synthesize_sparse`]),
//!   built from uniformly and multi-controlled `Ry` rotations;
//! - sampling based ([`alias::prepare_alias_state`]), which loads a quantized
//!   alias table through a QROM or SelectSwap lookup and applies a coherent
//!   compare-and-swap.
//!
//! Logical circuits are lowered to Clifford+T by [`cliffordt::compile_circuit`],
//! which routes exact angles to exact synthesis and approximates the rest with
//! a grid-based `Rz` synthesizer. [`sim`] provides the statevector simulator and
//! the two fidelity metrics, [`states`] the benchmark generators and
//! [`bench`] the sweep harness behind the `qsprep` binary.

pub mod alias;
pub mod bench;
pub mod circuit;
pub mod cliffordt;
pub mod error;
pub mod rotation;
pub mod sim;
pub mod states;
pub mod verify;

pub use circuit::{Angle, Circuit, Gate, GateKind, Register, RegisterRole, ResourceReport};
pub use error::{Error, Result};
pub use rotation::TargetState;

