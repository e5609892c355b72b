use std::collections::HashMap;

use crate::error::{Error, Result};

use super::alphabet::{Letter, TrackAlphabet};
use super::nfa::{Nfa, StateId};

/// Complete deterministic automaton with a dense transition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: TrackAlphabet,
    initial: StateId,
    accepting: Vec<bool>,
    delta: Vec<StateId>,
}

impl Dfa {
    /// Builds from a partial transition list; missing transitions go to an
    /// added rejecting sink.
    pub fn new(
        alphabet: TrackAlphabet,
        states: usize,
        initial: StateId,
        accepting: impl IntoIterator<Item = StateId>,
        transitions: impl IntoIterator<Item = (StateId, Letter, StateId)>,
    ) -> Result<Self> {
        let nfa = Nfa::new(alphabet, states, initial, accepting, transitions)?;
        Self::from_deterministic(&nfa)
    }

    /// Reads an NFA that has at most one edge per state and letter.
    pub fn from_deterministic(nfa: &Nfa) -> Result<Self> {
        let n = nfa.state_count();
        let k = nfa.alphabet().size();
        let mut delta = vec![usize::MAX; n * k];
        for (p, l, q) in nfa.transitions() {
            let slot = &mut delta[p * k + l as usize];
            if *slot != usize::MAX {
                return Err(Error::InvalidInstance(format!(
                    "state {p} has two successors on {}",
                    nfa.alphabet().format_word(&[l])
                )));
            }
            *slot = q;
        }
        let mut accepting: Vec<bool> = (0..n).map(|q| nfa.is_accepting(q)).collect();
        if delta.contains(&usize::MAX) {
            accepting.push(false);
            for s in delta.iter_mut().filter(|s| **s == usize::MAX) {
                *s = n;
            }
            delta.extend(std::iter::repeat_n(n, k));
        }
        Ok(Dfa { alphabet: nfa.alphabet().clone(), initial: nfa.initial(), accepting, delta })
    }

    pub(crate) fn from_table(alphabet: TrackAlphabet, initial: StateId, accepting: Vec<bool>, delta: Vec<StateId>) -> Self {
        debug_assert_eq!(delta.len(), accepting.len() * alphabet.size());
        Dfa { alphabet, initial, accepting, delta }
    }

    pub fn universal(alphabet: TrackAlphabet) -> Self {
        let k = alphabet.size();
        Dfa { alphabet, initial: 0, accepting: vec![true], delta: vec![0; k] }
    }

    pub fn empty(alphabet: TrackAlphabet) -> Self {
        let k = alphabet.size();
        Dfa { alphabet, initial: 0, accepting: vec![false], delta: vec![0; k] }
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

    pub fn step(&self, q: StateId, letter: Letter) -> StateId {
        self.delta[q * self.alphabet.size() + letter as usize]
    }

    pub fn run(&self, word: &[Letter]) -> StateId {
        word.iter().fold(self.initial, |q, &l| self.step(q, l))
    }

    pub fn accepts(&self, word: &[Letter]) -> bool {
        self.accepting[self.run(word)]
    }

    pub fn to_nfa(&self) -> Nfa {
        let k = self.alphabet.size();
        let edges = (0..self.state_count())
            .map(|p| (0..k).map(|l| (l as Letter, self.delta[p * k + l])).collect())
            .collect();
        Nfa::from_parts(self.alphabet.clone(), self.initial, self.accepting.clone(), edges)
    }

    pub fn complement(&self) -> Dfa {
        Dfa { accepting: self.accepting.iter().map(|a| !a).collect(), ..self.clone() }
    }

    /// Same table over an alphabet with the same track sizes.
    pub(crate) fn with_alphabet(&self, alphabet: TrackAlphabet) -> Dfa {
        assert_eq!(alphabet.size(), self.alphabet.size());
        Dfa { alphabet, ..self.clone() }
    }

    pub fn rename_tracks(&self, renames: &[(&str, &str)]) -> Result<Dfa> {
        Ok(Dfa { alphabet: self.alphabet.renamed(renames)?, ..self.clone() })
    }

    /// Language-equivalent DFA with the fewest states, numbered in BFS order.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet.size();
        let reach = self.reachable_order();
        let mut index = vec![usize::MAX; self.state_count()];
        for (n, &q) in reach.iter().enumerate() {
            index[q] = n;
        }
        // Moore refinement over reachable states
        let mut class: Vec<usize> = reach.iter().map(|&q| self.accepting[q] as usize).collect();
        loop {
            let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let next: Vec<usize> = reach
                .iter()
                .enumerate()
                .map(|(n, &q)| {
                    let sig = (0..k).map(|l| class[index[self.delta[q * k + l]]]).collect();
                    let len = ids.len();
                    *ids.entry((class[n], sig)).or_insert(len)
                })
                .collect();
            let stable = ids.len() == count_distinct(&class);
            class = next;
            if stable {
                break;
            }
        }
        // renumber classes in BFS order of first appearance
        let classes = count_distinct(&class);
        let mut order = vec![usize::MAX; classes];
        let mut rep = Vec::with_capacity(classes);
        for (n, &c) in class.iter().enumerate() {
            if order[c] == usize::MAX {
                order[c] = rep.len();
                rep.push(reach[n]);
            }
        }
        let accepting = rep.iter().map(|&q| self.accepting[q]).collect();
        let delta = rep
            .iter()
            .flat_map(|&q| (0..k).map(move |l| (q, l)))
            .map(|(q, l)| order[class[index[self.delta[q * k + l]]]])
            .collect();
        Dfa { alphabet: self.alphabet.clone(), initial: 0, accepting, delta }
    }

    fn reachable_order(&self) -> Vec<StateId> {
        let k = self.alphabet.size();
        let mut seen = vec![false; self.state_count()];
        let mut order = vec![self.initial];
        seen[self.initial] = true;
        let mut head = 0;
        while head < order.len() {
            let p = order[head];
            head += 1;
            for l in 0..k {
                let q = self.delta[p * k + l];
                if !seen[q] {
                    seen[q] = true;
                    order.push(q);
                }
            }
        }
        order
    }
}

fn count_distinct(v: &[usize]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

impl From<&Dfa> for Nfa {
    fn from(d: &Dfa) -> Nfa {
        d.to_nfa()
    }
}
