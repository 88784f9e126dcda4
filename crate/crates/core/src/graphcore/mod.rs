//! Multigraphs, coloring weights, automorphism counts, and enumeration.

mod aut;
mod enumerate;
mod graph;
mod weight;

pub use aut::{aut_order, aut_order_halfedge, vertex_symmetry_count};
pub use enumerate::{canonical_form, enumerate_multigraphs, profiles_with_halfedges};
pub use graph::Multigraph;
pub use weight::{coloring_weight, full_w, w_poly, w_table, Mode};

#[derive(Debug, thiserror::Error)]
pub enum GraphError {
    #[error("parse error: {0}")]
    Parse(String),
}
