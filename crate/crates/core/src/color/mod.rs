//! Exact counting: proper colorings, chromatic polynomials, cliques, and
//! closed-form counts for Turán and near-complete bipartite graphs.

mod cliques;
mod colorings;
mod formulas;
mod poly;

pub use cliques::count_cliques;
pub use colorings::count_colorings;
pub(crate) use colorings::count_colorings_u128;
pub use formulas::{bipartite_star_count_q3, footprint_count_q3, turan_coloring_count};
pub use poly::{acyclic_orientations, chromatic_polynomial, ChromaticPolynomial, POLY_VERTEX_CAP};
