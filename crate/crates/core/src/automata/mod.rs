//! Finite automata over multi-track alphabets.

mod alphabet;
mod dfa;
mod nfa;
mod ops;

pub use alphabet::{Letter, TrackAlphabet, MAX_LETTERS};
pub use dfa::Dfa;
pub use nfa::{Nfa, StateId};
pub use ops::{
    contains, contains_capped, determinize, determinize_capped, dom, enumerate_bounded, equivalent, img, is_empty,
    product, project, Acceptance, DEFAULT_STATE_CAP,
};
