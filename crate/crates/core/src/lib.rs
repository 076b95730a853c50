//! Quantum propositional calculus on the lattice of subspaces of a
//! finite-dimensional inner-product space, with Bi-logic operators
//! (generalization, symmetry, condensation, displacement) built on it.
//!
//! In finite dimension every subspace is closed, so the lattice of closed
//! subspaces is just the lattice of subspaces:
//!
//! * conjunction is intersection ([`Subspace::meet`]),
//! * disjunction is linear closure ([`Subspace::join`]),
//! * negation is orthogonal complement ([`Subspace::complement`]).

pub mod bilogic;
pub mod formula;
pub mod laws;
pub mod policy;
pub mod sampling;
pub mod subspace;

pub use formula::{Assignment, EvalError, Formula, ParseError};
pub use policy::NumericPolicy;
pub use sampling::Field;
pub use subspace::{inner_product, norm, Subspace, SubspaceError, Vector, C64};
