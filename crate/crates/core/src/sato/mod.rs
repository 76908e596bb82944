//! Partitions, frames of the Sato Grassmannian, Schur expansions and the
//! `(k, n)`-solitons.

mod frame;
mod partition;
mod schur;
mod soliton;
mod tau;

pub use frame::{plucker, plucker_vector, plucker_with_size, tau_truncated, Frame, Tail};
pub use partition::{maya, MayaDiagram, Partition};
pub use schur::{elementary_schur, schur_sigma};
pub use soliton::{
    delta_lambda, evaluate_relations, frame_from_soliton, frame_relations,
    grassmann_plucker_relations, kp_solution, sample_relations, schur_coeffs, soliton_residual,
    soliton_tau, PluckerRelation, SolitonData,
};
pub use tau::{hirota_apply, TrivariatePoly};

/// `gauge_by_unit` as a free function.
pub fn gauge_by_unit(
    frame: &Frame,
    h: &crate::algebra::LaurentSeries,
    columns: usize,
) -> crate::Result<Frame> {
    frame.gauge_by_unit(h, columns)
}
