//! Sequential decomposition of input/output relations.
//!
//! Given a relation `R ⊆ I × O` and an intermediate domain `B`, the question
//! is whether `R` factors as `R1 ∘ R2` with `R1 ⊆ I × B` and `R2 ⊆ B × O`.
//! Two flavours are supported everywhere:
//!
//! * **total** decomposition (`Mode::Td`): `Img(R1) ⊆ Dom(R2)` and `R1 ∘ R2 = R`;
//! * **partial** decomposition (`Mode::Pd`): `Img(R1) ⊆ Dom(R2)`,
//!   `Dom(R1 ∘ R2) = Dom(R)` and `R1 ∘ R2 ⊆ R`.
//!
//! The crate covers four representations of `R`:
//!
//! * [`relation`] and [`explicit`]: finite tables, solved exactly through a CNF
//!   encoding and an in-crate CDCL core, plus hint-based polynomial procedures
//!   and the biclique-cover / set-cover instance generators.
//! * [`circuit`]: Boolean circuits over bit-vector domains, with quantified
//!   hint verification.
//! * [`automata`] and [`automatic`]: length-preserving automatic relations
//!   given by DFAs over product alphabets.
//! * [`strategic`]: decompositions realised by Moore transducers, synthesised
//!   through safety games.
//!
//! JSON wire formats for every artifact live in [`format`].

pub mod automata;
pub mod automatic;
mod bitset;
pub mod circuit;
mod error;
pub mod explicit;
pub mod format;
pub mod relation;
pub mod strategic;

pub use bitset::BitSet;
pub use error::{Error, Result};
pub use relation::{
    Domain, ExplicitInstance, ExplicitRelation, ExplicitWitness, Mode, Side, Solution, Verdict,
};
