//! The combinatorial category `K`: objects, morphisms, the wall-crossing
//! functor `ϑ_s^c`, special objects `Q_μ`, splitting into indecomposables
//! and the objects `Q(A)`.

pub mod object;
pub mod theta;
pub mod tlattice;

pub use object::{make_q_mu, KObject};
pub use theta::{theta_c, theta_word};
pub use tlattice::TLattice;
pub mod hom;
pub use hom::{find_isomorphism, hom_const, hom_space, ConstMorphism, KMorphism};
pub mod split;
pub use split::{decompose, decompose_word, split_summand};
pub mod build;
pub use build::{build_qa, modular_multiplicity, propagate_ranks, recipe};
