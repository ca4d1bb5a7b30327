//! Clifford+T lowering: exact ring arithmetic, exact and approximate
//! single-qubit synthesis, and the circuit compiler.

mod compile;
mod diophantine;
mod exact;
mod exactness;
mod factor;
mod grid;
mod gridsynth;
pub mod ring;

pub use compile::{
    compile_circuit, compile_with_stats, lower_mcx, lower_toffoli, rewrite_ry, synthesize_rz, word_rz_distance,
    CompileStats, CompiledCircuit, RzSynthesis, SynthesisConfig, ToffoliMode,
};
pub use diophantine::solve_norm_equation;
pub use exact::{synthesize_exact, t_power_word, ExactUnitary};
pub use exactness::{exactly_preparable, exactly_preparable_ring, ExactWitness, K_MAX};
pub use grid::solve_1d;
pub use gridsynth::{approximate_rz, RzApproximation};
pub use ring::RingElement;
