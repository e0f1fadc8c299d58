//! Exact coloring counts, extremal graph constructions, and the quadratically
//! constrained programs that govern which `n`-vertex, `m`-edge graphs carry the
//! most proper `q`-colorings.
//!
//! The crate is split along the lines of the problem:
//!
//! * [`graph`]: the [`Graph`] type, the named extremal families and graph I/O
//!   (edge lists and graph6).
//! * [`color`]: exact coloring counts, chromatic polynomials, clique counts and
//!   the closed-form counting identities for Turán and near-complete bipartite
//!   graphs.
//! * [`opt`]: the two continuous programs over subset-indexed vectors, their
//!   closed-form optima and numeric solvers.
//! * [`search`]: exhaustive enumeration of small graphs and extremal searches.
//! * [`verify`]: numeric checks of the auxiliary inequalities.

pub mod color;
mod count;
mod error;
pub mod graph;
pub mod opt;
pub mod search;
mod subset;
pub mod verify;

pub use count::BigCount;
pub use error::{Error, Result};
pub use graph::Graph;
pub use subset::SubsetVector;
