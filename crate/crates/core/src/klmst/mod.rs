//! Marked witness graph sequences and the decomposition loop.

mod dec;
mod export;
mod graph;
mod membership;
mod solve;
mod system;
mod witness;

pub use dec::{
    dec, refine_bounded_component, refine_bounded_edge, refine_bounded_mark, DEFAULT_CHILD_LIMIT,
};
pub use export::{sequence_from_json, sequence_to_dot, sequence_to_json};
pub use graph::{
    initial_sequence, rank_sequence, scc, validate_graph, validate_sequence, Edge,
    MarkedWitnessGraph, MwgSequence, WitnessGraph,
};
pub use membership::{run_in_sequence, sequence_ideal};
pub use solve::{klmst_solve, Limits, Outcome, Solution, Trace, TraceStep};
pub use system::{build_L, is_perfect, Defect, PerfectData, Perfectness, SequenceSystem};
pub use witness::{extract_witness, sort_label, MAX_WITNESS_LEN};
