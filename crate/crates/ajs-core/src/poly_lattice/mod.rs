//! Exact polynomial arithmetic over `S = Sym(X∨ ⊗ Q)`, its coroot
//! localizations, Laurent polynomials in `v`, and lattices of vectors over
//! `S^α` with a PID backend (rank one) and a module Gröbner backend.

pub mod groebner;
pub mod lattice;
pub mod laurent;
pub mod linalg;
pub mod localized;
pub mod pid;
pub mod poly;

pub use lattice::{Lattice, LatticeBackend};
pub use laurent::LaurentV;
pub use localized::{CorootRing, Localization, LocalizedElem};
pub use poly::{coef, Coef, Poly};
