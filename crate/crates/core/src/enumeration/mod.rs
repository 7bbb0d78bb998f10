//! Graph generation, graph6 I/O, constrained fat-graph generation and sum
//! enumeration.

pub mod fat;
pub mod generate;
pub mod graph6;
pub mod sums;

pub use fat::{fat_hoffman_graphs, FatConstraints};
pub use generate::{all_slim_graphs, connected_slim_graphs, for_each_connected, GraphStream, MAX_GENERATED_ORDER};
pub use graph6::{parse_graph6, parse_graph6_lines, write_graph6, Graph6Error};
pub use sums::{enumerate_sums, KPart};
