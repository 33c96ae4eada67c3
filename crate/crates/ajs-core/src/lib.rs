//! Exact alcove combinatorics, structure algebras, graded characters and the
//! Andersen–Jantzen–Soergel combinatorial category for root systems of rank
//! at most two.

pub mod ajs_category;
pub mod alcove_geom;
pub mod char_calculus;
pub mod error;
pub mod order_topology;
pub mod par;
pub mod poly_lattice;
pub mod root_system;
pub mod structure_algebra;

pub use alcove_geom::{Alcove, Geometry};
pub use error::{AjsError, Result};
pub use root_system::{gkm_check, AffineWeylElement, RootSystem, TypeTag};
