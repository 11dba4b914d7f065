//! Analysis of finite semigroups given by Cayley tables.
//!
//! The crate computes the `<<` relation and its partial-order closure, the
//! Moebius function of that order, the transported product `*` that makes
//! `Z(s) = sum_{s' <<< s} s'` an algebra isomorphism, and the factorization
//! of (contracted) semigroup determinants into idempotent blocks. An
//! enumeration harness checks these properties over all small semigroups.

pub mod cli;
pub mod determinant;
pub mod enumeration;
pub mod mobius;
pub mod order;
pub mod polynomial;
pub mod semigroup;

pub use determinant::{DeterminantError, Factorization, SymbolicMatrix};
pub use enumeration::{ConjectureReport, EnumerationFilter};
pub use mobius::{FormalSum, MobiusTable, StarAlgebra, StructureConstants};
pub use order::{BasisMode, LlRelation, OrderError, OrderStructure, Poset, SmoothnessReport};
pub use polynomial::{Monomial, Polynomial};
pub use semigroup::{CayleyTable, ElementId, GreenKind, GreenPartition, SemigroupError, StarPlus};
