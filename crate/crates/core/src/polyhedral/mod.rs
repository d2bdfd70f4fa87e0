//! Cones, polytopes, duality and faces.

mod cone;
mod dd;
mod equivalence;
mod polytope;

pub use cone::{dual_cone, Cone, Face, LatticeContext};
pub use equivalence::{normal_form, unimodular_equivalent, AffineMap};
pub use polytope::{cone_over_polytope, polar_polytope, FacetData, LatticePolytope};

pub(crate) use polytope::format_rat_vector;
