use crate::automata::{Dfa, Letter, TrackAlphabet};
use crate::error::{Error, Result};
use crate::relation::{Domain, Mode, Side};

pub const IN: &str = "in";
pub const MID: &str = "mid";
pub const OUT: &str = "out";

/// A length-preserving relation given by a complete DFA over `in × out`,
/// plus the intermediate alphabet.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomaticInstance {
    sigma_i: Domain,
    sigma_b: Domain,
    sigma_o: Domain,
    relation: Dfa,
    mode: Mode,
}

impl AutomaticInstance {
    /// The relation's two tracks are taken positionally and renamed to
    /// `in` and `out`.
    pub fn new(sigma_b: Domain, relation: Dfa, mode: Mode) -> Result<Self> {
        if sigma_b.is_empty() {
            return Err(Error::InvalidInstance("intermediate alphabet is empty".into()));
        }
        let relation = normalize(relation, [IN, OUT])?;
        let al = relation.alphabet();
        Ok(AutomaticInstance {
            sigma_i: al.domain(0).clone(),
            sigma_o: al.domain(1).clone(),
            sigma_b,
            relation,
            mode,
        })
    }

    pub fn sigma_i(&self) -> &Domain {
        &self.sigma_i
    }

    pub fn sigma_b(&self) -> &Domain {
        &self.sigma_b
    }

    pub fn sigma_o(&self) -> &Domain {
        &self.sigma_o
    }

    pub fn relation(&self) -> &Dfa {
        &self.relation
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        AutomaticInstance { mode, ..self.clone() }
    }

    pub fn relation_alphabet(&self) -> TrackAlphabet {
        self.relation.alphabet().clone()
    }

    /// `in × mid` for an `R1` hint, `mid × out` for an `R2` hint.
    pub fn hint_alphabet(&self, side: Side) -> TrackAlphabet {
        match side {
            Side::R1Given => TrackAlphabet::pair((IN, self.sigma_i.clone()), (MID, self.sigma_b.clone())),
            Side::R2Given => TrackAlphabet::pair((MID, self.sigma_b.clone()), (OUT, self.sigma_o.clone())),
        }
        .expect("distinct track names")
    }

    pub fn joint_alphabet(&self) -> TrackAlphabet {
        TrackAlphabet::new(vec![
            (IN.into(), self.sigma_i.clone()),
            (MID.into(), self.sigma_b.clone()),
            (OUT.into(), self.sigma_o.clone()),
        ])
        .expect("distinct track names")
    }

    /// Checks the hint's track domains and renames its tracks to the
    /// expected ones.
    pub fn normalize_hint(&self, hint: &Dfa, side: Side) -> Result<Dfa> {
        let names = match side {
            Side::R1Given => [IN, MID],
            Side::R2Given => [MID, OUT],
        };
        let h = normalize(hint.clone(), names)?;
        let want = self.hint_alphabet(side);
        for t in 0..2 {
            if h.alphabet().domain(t).symbols() != want.domain(t).symbols() {
                return Err(Error::DomainMismatch {
                    expected: want.domain(t).to_string(),
                    found: h.alphabet().domain(t).to_string(),
                });
            }
        }
        Ok(h.with_alphabet(want))
    }
}

fn normalize(d: Dfa, names: [&str; 2]) -> Result<Dfa> {
    let al = d.alphabet();
    if al.track_count() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: al.track_count() });
    }
    let current: Vec<String> = al.track_names().map(str::to_string).collect();
    if current[0] == names[0] && current[1] == names[1] {
        return Ok(d);
    }
    // two-step rename so that swapped names do not collide
    let tmp = d.rename_tracks(&[(&current[0], "\u{1}0"), (&current[1], "\u{1}1")])?;
    tmp.rename_tracks(&[("\u{1}0", names[0]), ("\u{1}1", names[1])])
}

/// A word shown track by track.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackWord {
    pub tracks: Vec<(String, Vec<String>)>,
}

impl TrackWord {
    pub fn new(alphabet: &TrackAlphabet, word: &[Letter]) -> Self {
        let tracks = alphabet
            .tracks()
            .iter()
            .enumerate()
            .map(|(t, (name, d))| {
                (name.clone(), alphabet.track_word(word, t).into_iter().map(|c| d.symbol(c).to_string()).collect())
            })
            .collect();
        TrackWord { tracks }
    }

    pub fn len(&self) -> usize {
        self.tracks.first().map_or(0, |(_, w)| w.len())
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn track(&self, name: &str) -> Option<&[String]> {
        self.tracks.iter().find(|(n, _)| n == name).map(|(_, w)| w.as_slice())
    }
}

impl std::fmt::Display for TrackWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .tracks
            .iter()
            .map(|(n, w)| format!("{n}={}", if w.is_empty() { "ε".to_string() } else { w.join(" ") }))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}
