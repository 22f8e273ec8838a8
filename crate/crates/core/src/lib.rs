//! Exhaustive search toolkit for triangle-free Ramsey graphs whose complement
//! avoids a near-complete pattern such as `J_k = K_k - e`.

pub mod bits;
pub mod budget;
pub mod canon;
pub mod circulant;
pub mod consistency;
pub mod census;
pub mod enumerate;
pub mod error;
pub mod etable;
pub mod feasibility;
pub mod graph;
pub mod glue;
pub mod graph6;
pub mod pattern;

pub use canon::{canonical_form, CanonicalForm};
pub use error::{Error, Result};
pub use graph::Graph;
pub use pattern::{contains_pattern_in_complement, is_ramsey_graph, max_edge_bound, Pattern, Shape};
