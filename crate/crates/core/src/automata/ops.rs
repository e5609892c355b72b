use std::collections::{HashMap, VecDeque};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

use super::alphabet::{Letter, TrackAlphabet};
use super::dfa::Dfa;
use super::nfa::{Nfa, StateId};

pub const DEFAULT_STATE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// A subset accepts iff it meets the accepting set.
    Existential,
    /// A subset accepts iff all its members accept; the empty subset accepts.
    Universal,
}

/// Synchronized product. The result's tracks are `a`'s tracks followed by
/// `b`'s unsynced tracks; a state `(p, q)` accepts iff
/// `accept(p accepting, q accepting)`. Only reachable pairs are built.
///
/// With an accept map other than conjunction the result only means something
/// when both operands are complete DFAs.
pub fn product(a: &Nfa, b: &Nfa, sync: &[(&str, &str)], accept: impl Fn(bool, bool) -> bool) -> Result<Nfa> {
    let (aa, ba) = (a.alphabet(), b.alphabet());
    let mut pairs = Vec::with_capacity(sync.len());
    for &(ta, tb) in sync {
        let (ia, ib) = (aa.track_index(ta)?, ba.track_index(tb)?);
        if aa.domain(ia).symbols() != ba.domain(ib).symbols() {
            return Err(Error::DomainMismatch { expected: aa.domain(ia).to_string(), found: ba.domain(ib).to_string() });
        }
        pairs.push((ia, ib));
    }
    let kept_b: Vec<usize> = (0..ba.track_count()).filter(|t| !pairs.iter().any(|&(_, ib)| ib == *t)).collect();
    let mut tracks = aa.tracks().to_vec();
    tracks.extend(kept_b.iter().map(|&t| ba.tracks()[t].clone()));
    let alphabet = TrackAlphabet::new(tracks)?;

    // letter pairs that agree on the synced tracks, with the merged letter
    let mut merged: HashMap<(Letter, Letter), Letter> = HashMap::new();
    let mut by_key: HashMap<Vec<usize>, Vec<Letter>> = HashMap::new();
    for y in ba.letters() {
        let key = pairs.iter().map(|&(_, ib)| ba.component(y, ib)).collect();
        by_key.entry(key).or_default().push(y);
    }
    for x in aa.letters() {
        let key: Vec<usize> = pairs.iter().map(|&(ia, _)| aa.component(x, ia)).collect();
        let mut comps = aa.decode(x);
        comps.extend(kept_b.iter().map(|_| 0));
        for &y in by_key.get(&key).into_iter().flatten() {
            for (n, &t) in kept_b.iter().enumerate() {
                comps[aa.track_count() + n] = ba.component(y, t);
            }
            merged.insert((x, y), alphabet.encode(&comps));
        }
    }

    let mut ids: HashMap<(StateId, StateId), StateId> = HashMap::new();
    let mut order = vec![(a.initial(), b.initial())];
    ids.insert(order[0], 0);
    let mut edges: Vec<Vec<(Letter, StateId)>> = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let (p, q) = order[head];
        head += 1;
        let mut out = Vec::new();
        for &(x, p2) in a.edges(p) {
            for &(y, q2) in b.edges(q) {
                if let Some(&m) = merged.get(&(x, y)) {
                    let next = order.len();
                    let id = *ids.entry((p2, q2)).or_insert_with(|| {
                        order.push((p2, q2));
                        next
                    });
                    out.push((m, id));
                }
            }
        }
        edges.push(out);
    }
    let accepting = order.iter().map(|&(p, q)| accept(a.is_accepting(p), b.is_accepting(q))).collect();
    Ok(Nfa::from_parts(alphabet, 0, accepting, edges))
}

/// Keeps the named tracks, in the given order, erasing the rest letter-wise.
pub fn project(a: &Nfa, keep: &[&str]) -> Result<Nfa> {
    let al = a.alphabet();
    let idx = keep.iter().map(|t| al.track_index(t)).collect::<Result<Vec<_>>>()?;
    let target = TrackAlphabet::new(idx.iter().map(|&t| al.tracks()[t].clone()).collect())?;
    let map: Vec<Letter> = al
        .letters()
        .map(|l| target.encode(&idx.iter().map(|&t| al.component(l, t)).collect::<Vec<_>>()))
        .collect();
    Ok(a.map_letters(target, |l| Some(map[l as usize])))
}

/// `Dom` of a relation automaton: projection on the `in` track.
pub fn dom(a: &Nfa) -> Result<Nfa> {
    project(a, &["in"])
}

/// `Img` of a relation automaton: projection on the `out` track.
pub fn img(a: &Nfa) -> Result<Nfa> {
    project(a, &["out"])
}

/// Reachable subset construction.
pub fn determinize(a: &Nfa, acceptance: Acceptance) -> Result<Dfa> {
    determinize_capped(a, acceptance, DEFAULT_STATE_CAP)
}

pub fn determinize_capped(a: &Nfa, acceptance: Acceptance, cap: usize) -> Result<Dfa> {
    let k = a.alphabet().size();
    let acc = a.accepting_set();
    let mut ids: HashMap<BitSet, StateId> = HashMap::new();
    let mut order = vec![a.initial_set()];
    ids.insert(order[0].clone(), 0);
    let mut delta = Vec::new();
    let mut head = 0;
    while head < order.len() {
        let succ = a.post_all(&order[head]);
        head += 1;
        for s in succ {
            let id = match ids.get(&s) {
                Some(&id) => id,
                None => {
                    if order.len() >= cap {
                        return Err(Error::CapExceeded { cap: "determinize-states", limit: cap, requested: order.len() + 1 });
                    }
                    ids.insert(s.clone(), order.len());
                    order.push(s);
                    order.len() - 1
                }
            };
            delta.push(id);
        }
    }
    debug_assert_eq!(delta.len(), order.len() * k);
    let accepting = order
        .iter()
        .map(|s| match acceptance {
            Acceptance::Existential => s.intersects(&acc),
            Acceptance::Universal => s.is_subset(&acc),
        })
        .collect();
    Ok(Dfa::from_table(a.alphabet().clone(), 0, accepting, delta))
}

/// `None` if the language is empty, else its shortest word, least in
/// letter order among the shortest.
pub fn is_empty(a: &Nfa) -> Option<Vec<Letter>> {
    let n = a.state_count();
    let mut parent: Vec<Option<(StateId, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([a.initial()]);
    seen[a.initial()] = true;
    while let Some(p) = queue.pop_front() {
        if a.is_accepting(p) {
            let mut word = Vec::new();
            let mut cur = p;
            while let Some((prev, l)) = parent[cur] {
                word.push(l);
                cur = prev;
            }
            word.reverse();
            return Some(word);
        }
        for &(l, q) in a.edges(p) {
            if !seen[q] {
                seen[q] = true;
                parent[q] = Some((p, l));
                queue.push_back(q);
            }
        }
    }
    None
}

/// Decides `L(a) ⊆ L(b)` over pairs `(a-state, b-subset)` built on demand.
/// Returns the shortest, least counterexample in `L(a) \ L(b)`.
pub fn contains(a: &Nfa, b: &Nfa) -> Result<Option<Vec<Letter>>> {
    contains_capped(a, b, DEFAULT_STATE_CAP)
}

pub fn contains_capped(a: &Nfa, b: &Nfa, cap: usize) -> Result<Option<Vec<Letter>>> {
    if a.alphabet() != b.alphabet() {
        return Err(Error::Track(format!("alphabets differ: {:?} vs {:?}", a.alphabet(), b.alphabet())));
    }
    let b_acc = b.accepting_set();
    let start = (a.initial(), b.initial_set());
    let mut ids: HashMap<(StateId, BitSet), usize> = HashMap::new();
    let mut nodes = vec![start.clone()];
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None];
    ids.insert(start, 0);
    let mut head = 0;
    while head < nodes.len() {
        let (p, s) = nodes[head].clone();
        let cur = head;
        head += 1;
        if a.is_accepting(p) && !s.intersects(&b_acc) {
            let mut word = Vec::new();
            let mut at = cur;
            while let Some((prev, l)) = parent[at] {
                word.push(l);
                at = prev;
            }
            word.reverse();
            return Ok(Some(word));
        }
        let mut cache: Option<(Letter, BitSet)> = None;
        for &(l, p2) in a.edges(p) {
            let s2 = match &cache {
                Some((cl, cs)) if *cl == l => cs.clone(),
                _ => {
                    let t = b.post(&s, l);
                    cache = Some((l, t.clone()));
                    t
                }
            };
            let key = (p2, s2);
            if !ids.contains_key(&key) {
                if nodes.len() >= cap {
                    return Err(Error::CapExceeded { cap: "containment-states", limit: cap, requested: nodes.len() + 1 });
                }
                ids.insert(key.clone(), nodes.len());
                nodes.push(key);
                parent.push(Some((cur, l)));
            }
        }
    }
    Ok(None)
}

/// Language equality, with a word in the symmetric difference otherwise.
pub fn equivalent(a: &Nfa, b: &Nfa) -> Result<Option<Vec<Letter>>> {
    Ok(match contains(a, b)? {
        Some(w) => Some(w),
        None => contains(b, a)?,
    })
}

/// Every accepted word of length `0..=n`, grouped by length, each group in
/// letter order.
pub fn enumerate_bounded(a: &Nfa, n: usize) -> Vec<Vec<Vec<Letter>>> {
    let mut out = vec![Vec::new(); n + 1];
    let acc = a.accepting_set();
    let mut word = Vec::with_capacity(n);
    fn go(a: &Nfa, acc: &BitSet, cur: BitSet, n: usize, word: &mut Vec<Letter>, out: &mut [Vec<Vec<Letter>>]) {
        if cur.intersects(acc) {
            out[word.len()].push(word.clone());
        }
        if word.len() == n {
            return;
        }
        for (l, next) in a.post_all(&cur).into_iter().enumerate() {
            if !next.is_empty() {
                word.push(l as Letter);
                go(a, acc, next, n, word, out);
                word.pop();
            }
        }
    }
    go(a, &acc, a.initial_set(), n, &mut word, &mut out);
    for group in &mut out {
        group.sort();
    }
    out
}
