use std::fmt;

use crate::error::{Error, Result};
use crate::relation::Domain;

/// Letters are dense ids over the cartesian product of the track domains,
/// first track most significant, so id order is lexicographic order.
pub type Letter = u32;

pub const MAX_LETTERS: usize = 1 << 16;

#[derive(Clone, PartialEq, Eq)]
pub struct TrackAlphabet {
    tracks: Vec<(String, Domain)>,
    size: usize,
}

impl TrackAlphabet {
    pub fn new(tracks: Vec<(String, Domain)>) -> Result<Self> {
        if tracks.is_empty() {
            return Err(Error::Track("an alphabet needs at least one track".into()));
        }
        for (k, (name, d)) in tracks.iter().enumerate() {
            if tracks[..k].iter().any(|(n, _)| n == name) {
                return Err(Error::Track(format!("duplicate track `{name}`")));
            }
            if d.is_empty() {
                return Err(Error::Track(format!("track `{name}` has an empty domain")));
            }
        }
        let size = tracks.iter().try_fold(1usize, |acc, (_, d)| acc.checked_mul(d.len()));
        match size {
            Some(s) if s <= MAX_LETTERS => Ok(TrackAlphabet { tracks, size: s }),
            _ => Err(Error::CapExceeded { cap: "alphabet-size", limit: MAX_LETTERS, requested: size.unwrap_or(usize::MAX) }),
        }
    }

    pub fn single(name: &str, domain: Domain) -> Self {
        Self::new(vec![(name.to_string(), domain)]).expect("single non-empty track")
    }

    pub fn pair(a: (&str, Domain), b: (&str, Domain)) -> Result<Self> {
        Self::new(vec![(a.0.to_string(), a.1), (b.0.to_string(), b.1)])
    }

    pub fn tracks(&self) -> &[(String, Domain)] {
        &self.tracks
    }

    pub fn track_count(&self) -> usize {
        self.tracks.len()
    }

    pub fn track_names(&self) -> impl Iterator<Item = &str> {
        self.tracks.iter().map(|(n, _)| n.as_str())
    }

    pub fn track_index(&self, name: &str) -> Result<usize> {
        self.tracks
            .iter()
            .position(|(n, _)| n == name)
            .ok_or_else(|| Error::Track(format!("no track named `{name}`")))
    }

    pub fn domain(&self, track: usize) -> &Domain {
        &self.tracks[track].1
    }

    pub fn track_domain(&self, name: &str) -> Result<&Domain> {
        Ok(self.domain(self.track_index(name)?))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        0..self.size as Letter
    }

    pub fn decode(&self, letter: Letter) -> Vec<usize> {
        let mut rest = letter as usize;
        let mut out = vec![0; self.tracks.len()];
        for (k, (_, d)) in self.tracks.iter().enumerate().rev() {
            out[k] = rest % d.len();
            rest /= d.len();
        }
        out
    }

    pub fn encode(&self, components: &[usize]) -> Letter {
        debug_assert_eq!(components.len(), self.tracks.len());
        components
            .iter()
            .zip(&self.tracks)
            .fold(0usize, |acc, (&c, (_, d))| acc * d.len() + c) as Letter
    }

    pub fn component(&self, letter: Letter, track: usize) -> usize {
        let below: usize = self.tracks[track + 1..].iter().map(|(_, d)| d.len()).product();
        (letter as usize / below) % self.tracks[track].1.len()
    }

    pub fn parse_letter<S: AsRef<str>>(&self, labels: &[S]) -> Result<Letter> {
        if labels.len() != self.tracks.len() {
            return Err(Error::ArityMismatch { expected: self.tracks.len(), found: labels.len() });
        }
        let comps = labels
            .iter()
            .zip(&self.tracks)
            .map(|(s, (_, d))| d.index(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.encode(&comps))
    }

    pub fn letter_labels(&self, letter: Letter) -> Vec<String> {
        self.decode(letter)
            .into_iter()
            .zip(&self.tracks)
            .map(|(c, (_, d))| d.symbol(c).to_string())
            .collect()
    }

    /// `(a,b)(b,b)`, or `ab` style for a single track.
    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".into();
        }
        if self.tracks.len() == 1 {
            return word.iter().map(|&l| self.domain(0).symbol(l as usize)).collect::<Vec<_>>().join(" ");
        }
        word.iter().map(|&l| format!("({})", self.letter_labels(l).join(","))).collect()
    }

    /// The word read on a single track.
    pub fn track_word(&self, word: &[Letter], track: usize) -> Vec<usize> {
        word.iter().map(|&l| self.component(l, track)).collect()
    }

    pub fn renamed(&self, renames: &[(&str, &str)]) -> Result<Self> {
        for (from, _) in renames {
            self.track_index(from)?;
        }
        let tracks = self
            .tracks
            .iter()
            .map(|(n, d)| {
                let name = renames.iter().find(|(f, _)| f == n).map_or(n.as_str(), |(_, t)| t);
                (name.to_string(), d.clone())
            })
            .collect();
        Self::new(tracks)
    }
}

impl fmt::Debug for TrackAlphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tracks.iter().map(|(n, d)| format!("{n}:{d}")).collect();
        write!(f, "[{}]", parts.join(" × "))
    }
}
