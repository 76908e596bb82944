//! Built-in example inputs: metric graphs, hyperelliptic and nodal curves.

pub mod curves;
pub mod graphs;
pub mod nodal;

pub use curves::*;
pub use graphs::*;
pub use nodal::*;
