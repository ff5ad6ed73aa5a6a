//! Vertex connectivity, k₁-connectivity and super connectivity of simple
//! graphs and of lexicographic products `G₁ ∘ G₂`.
//!
//! The closed forms for products live in [`lexprod`]; every one of them is
//! cross-checked against the exhaustive oracles in [`cuts`], and the
//! [`harness`] module runs those checks over whole families of small graphs.

pub mod cuts;
pub mod error;
pub mod extended;
pub mod flow;
pub mod graph;
pub mod harness;
pub mod invariants;
pub mod io;
pub mod lexprod;

pub use error::{Error, Result};
pub use extended::ExtendedNat;
pub use graph::{Graph, VertexSet};
