//! Exact computations for exceptional collections on del Pezzo surfaces, their
//! rolled-up helix quivers with potential, and the AS-regularity checks that go
//! with them.

pub mod cli;
pub mod collections;
pub mod formats;
pub mod graded;
pub mod kernel;
pub mod lattice;
pub mod points;
pub mod quiver;
pub mod sklyanin;
