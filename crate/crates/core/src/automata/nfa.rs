use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::alphabet::{Letter, TrackAlphabet};

pub type StateId = usize;

/// Nondeterministic automaton with a single initial state. Per-state edge
/// lists are kept sorted by `(letter, target)` and free of duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: TrackAlphabet,
    initial: StateId,
    accepting: Vec<bool>,
    edges: Vec<Vec<(Letter, StateId)>>,
}

impl Nfa {
    pub fn new(
        alphabet: TrackAlphabet,
        states: usize,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, Letter, StateId)>,
    ) -> Result<Self> {
        if initial >= states {
            return Err(Error::InvalidInstance(format!("initial state {initial} out of range")));
        }
        let mut acc = vec![false; states];
        for q in accepting {
            *acc.get_mut(q).ok_or_else(|| Error::InvalidInstance(format!("accepting state {q} out of range")))? = true;
        }
        let mut edges = vec![Vec::new(); states];
        for (p, l, q) in transitions {
            if p >= states || q >= states {
                return Err(Error::InvalidInstance(format!("transition {p} -> {q} out of range")));
            }
            if l as usize >= alphabet.size() {
                return Err(Error::InvalidInstance(format!("letter {l} out of range")));
            }
            edges[p].push((l, q));
        }
        Ok(Self::from_parts(alphabet, initial, acc, edges))
    }

    pub(crate) fn from_parts(
        alphabet: TrackAlphabet,
        initial: StateId,
        accepting: Vec<bool>,
        mut edges: Vec<Vec<(Letter, StateId)>>,
    ) -> Self {
        for e in &mut edges {
            e.sort_unstable();
            e.dedup();
        }
        Nfa { alphabet, initial, accepting, edges }
    }

    /// Accepts nothing.
    pub fn empty(alphabet: TrackAlphabet) -> Self {
        Nfa { alphabet, initial: 0, accepting: vec![false], edges: vec![Vec::new()] }
    }

    /// Accepts every word.
    pub fn universal(alphabet: TrackAlphabet) -> Self {
        let edges = vec![alphabet.letters().map(|l| (l, 0)).collect()];
        Nfa { alphabet, initial: 0, accepting: vec![true], edges }
    }

    pub fn alphabet(&self) -> &TrackAlphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting[q]
    }

    pub fn accepting_states(&self) -> impl Iterator<Item = StateId> + '_ {
        (0..self.accepting.len()).filter(|&q| self.accepting[q])
    }

    pub fn edges(&self, q: StateId) -> &[(Letter, StateId)] {
        &self.edges[q]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (StateId, Letter, StateId)> + '_ {
        self.edges.iter().enumerate().flat_map(|(p, es)| es.iter().map(move |&(l, q)| (p, l, q)))
    }

    pub fn transition_count(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub(crate) fn initial_set(&self) -> BitSet {
        BitSet::from_iter(self.state_count(), [self.initial])
    }

    pub(crate) fn accepting_set(&self) -> BitSet {
        BitSet::from_iter(self.state_count(), self.accepting_states())
    }

    /// Successors of `set` under `letter`.
    pub(crate) fn post(&self, set: &BitSet, letter: Letter) -> BitSet {
        let mut next = BitSet::new(self.state_count());
        for p in set.iter() {
            let es = &self.edges[p];
            let start = es.partition_point(|&(l, _)| l < letter);
            for &(l, q) in &es[start..] {
                if l != letter {
                    break;
                }
                next.insert(q);
            }
        }
        next
    }

    /// Successors of `set`, one set per letter.
    pub(crate) fn post_all(&self, set: &BitSet) -> Vec<BitSet> {
        let mut out = vec![BitSet::new(self.state_count()); self.alphabet.size()];
        for p in set.iter() {
            for &(l, q) in &self.edges[p] {
                out[l as usize].insert(q);
            }
        }
        out
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        let mut cur = self.initial_set();
        for &l in word {
            cur = self.post(&cur, l);
            if cur.is_empty() {
                return false;
            }
        }
        let hit = cur.iter().any(|q| self.accepting[q]);
        hit
    }

    /// Same automaton over an alphabet with renamed tracks.
    pub fn rename_tracks(&self, renames: &[(&str, &str)]) -> Result<Nfa> {
        Ok(Nfa { alphabet: self.alphabet.renamed(renames)?, ..self.clone() })
    }

    /// Rewrites every edge letter through `f` into `alphabet`; edges mapped to
    /// `None` are dropped.
    pub fn map_letters(&self, alphabet: TrackAlphabet, f: impl Fn(Letter) -> Option<Letter>) -> Nfa {
        let edges = self
            .edges
            .iter()
            .map(|es| es.iter().filter_map(|&(l, q)| f(l).map(|m| (m, q))).collect())
            .collect();
        Self::from_parts(alphabet, self.initial, self.accepting.clone(), edges)
    }

    /// Same language, accepting set replaced.
    pub fn with_accepting(&self, accepting: Vec<bool>) -> Nfa {
        assert_eq!(accepting.len(), self.state_count());
        Nfa { accepting, ..self.clone() }
    }

    /// Drops states that are unreachable or cannot reach an accepting state.
    pub fn trim(&self) -> Nfa {
        let n = self.state_count();
        let mut fwd = vec![false; n];
        let mut stack = vec![self.initial];
        fwd[self.initial] = true;
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.edges[p] {
                if !fwd[q] {
                    fwd[q] = true;
                    stack.push(q);
                }
            }
        }
        let mut rev = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut bwd = self.accepting.clone();
        let mut stack: Vec<_> = self.accepting_states().collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        if !bwd[self.initial] {
            return Nfa::empty(self.alphabet.clone());
        }
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for q in 0..n {
            if fwd[q] && bwd[q] {
                id[q] = next;
                next += 1;
            }
        }
        let mut edges = vec![Vec::new(); next];
        let mut accepting = vec![false; next];
        for q in (0..n).filter(|&q| id[q] != usize::MAX) {
            accepting[id[q]] = self.accepting[q];
            edges[id[q]] = self.edges[q].iter().filter(|&&(_, t)| id[t] != usize::MAX).map(|&(l, t)| (l, id[t])).collect();
        }
        Self::from_parts(self.alphabet.clone(), id[self.initial], accepting, edges)
    }
}
