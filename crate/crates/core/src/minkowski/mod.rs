//! Minkowski summands: the space of summands modulo translation and
//! scaling, the summand cone, lattice decompositions of polygons, and the
//! divisor attached to a summand.

mod decompose;
mod divisor;
mod summands;

pub use decompose::{is_minimal_zero_sum, kodaira_spencer_span, lattice_decompositions, Decomposition, KsSpan};
pub use divisor::{divisor_from_summand, DivisorData};
pub use summands::{
    class_of_summand, rho_class, summand_cone, summand_from_parameters, summand_parameters, tilde_t1, SummandClass,
    SummandCone, TildeT1,
};

pub(crate) use summands::summand_vertices;
