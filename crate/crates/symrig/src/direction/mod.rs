//! Direction networks: edges constrained to prescribed directions.
//!
//! Purpose: assemble the cone and crystallographic direction-network
//! systems, compute certified generic ranks and exact nullspaces, detect
//! collapsed edges and faithful solutions, construct the space of fully
//! collapsed solutions, and provide the floating-point projection gadgets
//! used by the genericity arguments.
//!
//! Notes: all verdicts come from exact arithmetic over F_p(√3) with
//! p = 2⁶¹ − 1; floating point appears only in the geometry gadgets and
//! when extracting drawable coordinates.

mod collapse;
mod geom;
mod system;

pub use collapse::{collapsed_space_dim, construct_collapsed_basis};
pub use geom::{
    cone11_collapsing_directions, half_angle_rotation, projection_chain,
    projection_scale_factor, rotation_line_witness, star_vector,
};
pub use system::{
    build_cone_system, build_crystal_system, collapse_functionals, edge_vectors, generic_rank,
    perp, random_directions, rep_width, solve_realizations, system_from_normals,
    DirectionAssignment, GenericRank, LinearSystem, RealizationResult,
};
