//! Exact computation of KP tau functions and soliton data.
//!
//! Inputs come in three flavours: lattice configurations attached to metric
//! graphs, hyperelliptic curves over `Q(eps)`, and nodal rational curves. All
//! arithmetic is exact over the rationals and their rational-function fields.

pub mod algebra;
pub mod curves;
pub mod error;
pub mod fixtures;
pub mod hirota;
pub mod nodal;
pub mod sato;
pub mod tropical;

pub use error::{Error, Result};
