//! Exact and heuristic coloring of conflict graphs.

mod capped;
mod cnf;
mod coloring;
mod dsatur;
mod enumerate;

pub use capped::{capped_coloring, CapConstraint};
pub use cnf::{
    decode_model, export_cnf, export_cnf_seeded, parse_solver_output, run_external_sat, var as cnf_var,
    SatOutcome,
};
pub use coloring::{greedy_degeneracy_coloring, verify_coloring, Coloring, ColoringCheck, ColoringFile};
pub use dsatur::{chromatic_number, k_colorable, k_colorable_par, k_colorable_with_stats, Verdict};
pub use enumerate::{enumerate_proper_colorings, ProperColorings, DEFAULT_ENUMERATION_CAP};
