pub mod curve;
pub mod hirota;
pub mod nodal;
pub mod sato;
pub mod tropical;
