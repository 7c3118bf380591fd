//! Root systems, Chevalley bases, invariant forms, involutions and subspaces of h.

mod involution;
mod lie;
mod rootsys;
mod subspace;

pub use involution::{torus_character, LetterMap, MapKind};
pub use lie::{AxiomViolation, Letter, LieAlgebra, LinComb};
pub use rootsys::{add, height, neg, sub, to_rat, unit, Root, RootSystem, TypeLetter};
pub use subspace::Subspace;
