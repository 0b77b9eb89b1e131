//! Broadcast independence of caterpillars.
//!
//! The crate evaluates the pattern-counting formula for the broadcast
//! independence number of caterpillars without adjacent trunks, builds
//! matching witness broadcasts, and checks both against an exact search on
//! small trees.

pub mod broadcast;
pub mod construct;
pub mod error;
pub mod formula;
pub mod harness;
pub mod oracle;
pub mod pattern;
pub mod tree;

pub use broadcast::Broadcast;
pub use error::{Error, Result, Unsupported};
pub use pattern::{Pattern, Variant};
pub use tree::{Caterpillar, Tree, TreeMetrics, VertexRole};
