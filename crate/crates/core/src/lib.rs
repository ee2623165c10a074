//! Popular matchings with critical vertices.
//!
//! An edge of a marriage instance belongs to some popular feasible matching
//! exactly when it belongs to a minimum-size one or to a dominant one. This
//! crate computes both through the G′/G″ reductions, decides edge
//! membership through stable pairs of the reduced instances, certifies
//! matchings with level assignments, and cross-checks everything against an
//! exhaustive oracle.

pub mod cli;
pub mod error;
pub mod gale_shapley;
pub mod leveling;
pub mod model;
pub mod oracle;
pub mod partition;
pub mod popular_edge;
pub mod reductions;
pub mod stable_pairs;
pub mod verify;
pub mod voting;

pub use error::{Error, Result};
pub use model::{Edge, Instance, Matching, Vertex};
