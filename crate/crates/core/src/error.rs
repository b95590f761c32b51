use thiserror::Error;

use crate::limits::SearchStats;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("boxes `{0}` and `{1}` have intersecting interiors")]
    OverlappingBoxes(String, String),

    #[error("box `{id}` has an empty extent on axis {axis}")]
    EmptyInterval { id: String, axis: usize },

    #[error("arrangement is invalid: {0}")]
    InvalidArrangement(String),

    #[error("no box qualifies for region `{0}`")]
    EmptyRegion(String),

    #[error("coordinate {coord} on axis {axis} cannot be remapped: {reason}")]
    Domain {
        axis: usize,
        coord: i64,
        reason: String,
    },

    #[error("vertex `{0}` is not colored")]
    MissingVertex(String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("search exceeded its budget after {} nodes", .0.nodes)]
    Timeout(SearchStats),

    #[error("graph has {size} vertices, above the enumeration cap of {cap}")]
    SizeLimit { size: usize, cap: usize },

    #[error("external solver failed: {0}")]
    SolverCrash(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("internal invariant broken: {0}")]
    Internal(String),

    #[error("structure premise ({premise}) failed: {detail}")]
    Structure { premise: char, detail: String },

    #[error("realization check failed: {0}")]
    Realization(String),

    #[error("infeasible generator parameters: {0}")]
    Infeasible(String),

    #[error("certification failed at stage `{stage}`: {detail}")]
    Certification { stage: String, detail: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
