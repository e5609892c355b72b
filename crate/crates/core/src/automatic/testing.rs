//! Fixtures shared by unit tests.

use crate::automata::{Dfa, TrackAlphabet};
use crate::relation::Domain;

pub fn ab(name: &str) -> Domain {
    Domain::new(name, ["a", "b"]).unwrap()
}

pub fn rel_alphabet(d: &Domain) -> TrackAlphabet {
    TrackAlphabet::pair(("in", d.clone()), ("out", d.clone())).unwrap()
}

/// `{(w, w)}` over `d`.
pub fn identity(d: &Domain) -> Dfa {
    let al = rel_alphabet(d);
    let t: Vec<_> = (0..d.len()).map(|c| (0, al.encode(&[c, c]), 0)).collect();
    Dfa::new(al, 1, 0, [0], t).unwrap()
}
