//! Generalized triangulation quivers, their weighted algebras and transformations.

pub mod cli;
pub mod enumeration;
pub mod error;
pub mod quiver;
pub mod relations;
pub mod star;
pub mod surface;
pub mod transforms;
pub mod weights;
