//! Rotation-based state preparation.

mod dense;
mod sparse;
mod target;

pub use dense::{
    build_angle_table, choose_pivot, demux_ucry, synthesize_dense, synthesize_dense_tables, AngleTable,
};
pub(crate) use dense::emit_demux;
pub use sparse::synthesize_sparse;
pub use target::TargetState;
