//! Hoffman graphs and slim `{H2, H3, H5}`-line graphs: recognition by cover
//! search, minimal forbidden subgraphs, and exact smallest-eigenvalue
//! certification.

pub mod bits;
pub mod canon;
pub mod embed;
pub mod enumeration;
pub mod figures;
pub mod graph;
pub mod recognition;
pub mod spectral;
pub mod sums;
pub mod verify;

pub use canon::{canonical_form, CanonicalForm};
pub use embed::{contains_induced, find_embedding, Embedding};
pub use graph::{GraphError, HoffmanGraph};
pub use sums::{build_sum, decompose, validate_sum, SumDecomposition};
pub use recognition::{enumerate_strict_covers, is_h_line, is_h_line_graph, StrictCover};
