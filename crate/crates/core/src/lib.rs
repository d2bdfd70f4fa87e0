pub mod catalog;
pub mod deformation;
pub mod error;
pub mod linalg;
pub mod minkowski;
pub mod polyhedral;
pub mod semigroup;
pub mod t1;

pub use error::{Error, Result};
