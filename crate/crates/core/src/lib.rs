//! Bipartite graphs whose squares are not chromatic-choosable.
//!
//! The crate builds the graphs `G_n^t` from the linear family of
//! orthogonal Latin squares, checks their structure with re-checkable
//! witnesses, and provides exact list-coloring tools for small graphs.
//!
//! ```
//! use sqcolor::construction::build_g;
//!
//! let g = build_g(3).unwrap();
//! assert_eq!(g.graph().vertex_count(), 42);
//! assert!(g.graph().bipartition().is_some());
//! ```

pub mod choosability;
pub mod construction;
pub mod error;
pub mod graph;
pub mod latin;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{Graph, PartitionCertificate, VertexSet};
