//! Box arrangements, their contact graphs, exact coloring, and a
//! machine-checked certificate that some two-floor arrangement of one-floor
//! boxes needs eight colors.

pub mod bounds;
pub mod certify;
pub mod conflict;
pub mod constructions;
pub mod error;
pub mod geometry;
mod hash;
pub mod limits;
pub mod solver;

pub use conflict::{build_graph, ConflictGraph};
pub use error::{Error, Result};
pub use geometry::{Arrangement, BoxId, Cuboid, Interval};
pub use limits::{SearchLimits, SearchStats};
pub use solver::Coloring;
