//! Metric graphs, tropical Riemann matrices, Voronoi cells and Delaunay
//! polytopes.

pub mod graph;
pub mod polytope;
pub mod voronoi;

pub use graph::{riemann_matrix, Edge, MetricGraph, RiemannMatrix};
pub use polytope::{classify_delaunay, delaunay_polytope_from_orientation, LatticePolytope};
pub(crate) use voronoi::combinations;
pub use voronoi::{
    delaunay_set, in_voronoi, relevant_vectors, theta_limit, voronoi_vertex_orbits,
    voronoi_vertices, DelaunaySet, ThetaLimitData,
};
