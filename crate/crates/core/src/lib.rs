//! Finite category engine for base structured categories.
//!
//! The crate builds categories from explicit presentations, constructs the
//! graph, action and Grothendieck categories of a functor, and checks
//! (op)fibration properties by exhaustive search.

pub mod constructions;
pub mod fibration;
pub mod fincat;
pub mod finset;
pub mod functor;
pub mod iso;
pub mod label;
pub mod random;
pub mod samples;

pub use constructions::{ConstructedCategory, ConstructionError, IndexedFamily, Provenance};
pub use fibration::{Cleavage, FibrationError, FunctorOver, LiftKind};
pub use fincat::{ArrowDecl, CatBuilder, CategoryError, CategoryPresentation, ComposeEntry, FinCat, MorId, ObjId};
pub use finset::{
    pullback, verify_pullback_universal, ConcreteError, ConcretePresentation, ConcreteStructure, FinFn, FinSetObj,
    PullbackSquare, PullbackVerdict,
};
pub use functor::{enumerate_functors, FinFunctor, FunctorError, FunctorPresentation};
pub use iso::{find_isomorphism, find_isomorphism_with, IsoConstraints, IsoOutcome, IsoWitness, DEFAULT_BUDGET};
