//! Safety games behind strategic synthesis.
//!
//! Phase 1 builds the channel-side transducer `T2`. A configuration is a
//! node of the channel tree: the output letter the parent chose for it and
//! the set of copies `(A_R state, T1 state)` routed to it. A move labels
//! every child direction `b` with an output letter `o_b` and sends each
//! `(copy, input letter)` to some direction whose letter keeps `A_R` in an
//! accepting state. The adversary then picks a direction. A configuration
//! without a legal move is losing, and the empty configuration is winning.
//!
//! Phase 2 builds the input-side transducer `T1` against a fixed `T2`:
//! positions are `(A_R state, T2 state)` and, for every input letter, the
//! synthesizer picks a channel letter.

use std::collections::HashMap;

use crate::automata::Dfa;
use crate::error::{Error, Result};

use super::transducer::MooreTransducer;

pub const DEFAULT_CONFIG_CAP: usize = 100_000;
pub const DEFAULT_MOVE_CAP: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GameLimits {
    /// Most configurations (phase 1) or positions (phase 2) explored.
    pub configs: usize,
    /// Most distinct moves enumerated from one configuration.
    pub moves: usize,
}

impl Default for GameLimits {
    fn default() -> Self {
        GameLimits { configs: DEFAULT_CONFIG_CAP, moves: DEFAULT_MOVE_CAP }
    }
}

/// Copy at a node: `A_R` state and, when `T1` is given, its state.
type Copy = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Config {
    pending: usize,
    copies: Vec<Copy>,
}

pub(crate) struct Arena<'a> {
    r: &'a Dfa,
    n_i: usize,
    n_b: usize,
    n_o: usize,
    t1: Option<&'a MooreTransducer>,
    limits: GameLimits,
}

pub(crate) struct Phase1 {
    pub t2: Option<MooreTransducer>,
    pub configs: usize,
}

impl<'a> Arena<'a> {
    pub fn new(r: &'a Dfa, n_i: usize, n_b: usize, n_o: usize, t1: Option<&'a MooreTransducer>, limits: GameLimits) -> Self {
        Arena { r, n_i, n_b, n_o, t1, limits }
    }

    fn letter(&self, i: usize, o: usize) -> u32 {
        (i * self.n_o + o) as u32
    }

    /// Distinct successor tuples (one config per direction), least move first.
    fn moves(&self, c: &Config) -> Result<Vec<Vec<Config>>> {
        let sends: Vec<(Copy, usize)> = c.copies.iter().flat_map(|&cp| (0..self.n_i).map(move |i| (cp, i))).collect();
        let mut out: Vec<Vec<Config>> = Vec::new();
        let mut seen: HashMap<Vec<Config>, ()> = HashMap::new();
        let vectors = (self.n_o as u64).checked_pow(self.n_b as u32).filter(|&v| v <= self.limits.moves as u64);
        let vectors = vectors.ok_or(Error::CapExceeded {
            cap: "game-moves",
            limit: self.limits.moves,
            requested: usize::MAX,
        })?;
        let mut enumerated = 0usize;
        for v in 0..vectors {
            let ov: Vec<usize> = {
                let mut rest = v as usize;
                let mut ov = vec![0; self.n_b];
                for slot in ov.iter_mut().rev() {
                    *slot = rest % self.n_o;
                    rest /= self.n_o;
                }
                ov
            };
            // legal (direction, next copy) options per send
            let mut options: Vec<Vec<(usize, Copy)>> = Vec::with_capacity(sends.len());
            for &((q, s), i) in &sends {
                let (dirs, s2): (Vec<usize>, usize) = match self.t1 {
                    Some(t1) => {
                        let s2 = t1.step(s, i);
                        (vec![t1.out(s2)], s2)
                    }
                    None => ((0..self.n_b).collect(), 0),
                };
                let opts: Vec<(usize, Copy)> = dirs
                    .into_iter()
                    .map(|b| (b, (self.r.step(q, self.letter(i, ov[b])), s2)))
                    .filter(|&(_, (q2, _))| self.r.is_accepting(q2))
                    .collect();
                if opts.is_empty() {
                    break;
                }
                options.push(opts);
            }
            if options.len() < sends.len() {
                continue;
            }
            // odometer over the option lists, least assignment first
            let mut pick = vec![0usize; options.len()];
            loop {
                enumerated += 1;
                if enumerated > self.limits.moves {
                    return Err(Error::CapExceeded { cap: "game-moves", limit: self.limits.moves, requested: enumerated });
                }
                let mut succ: Vec<Config> = ov.iter().map(|&o| Config { pending: o, copies: Vec::new() }).collect();
                for (opts, &k) in options.iter().zip(&pick) {
                    let (b, cp) = opts[k];
                    succ[b].copies.push(cp);
                }
                for s in &mut succ {
                    s.copies.sort_unstable();
                    s.copies.dedup();
                }
                if seen.insert(succ.clone(), ()).is_none() {
                    out.push(succ);
                }
                let mut k = pick.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    pick[k] += 1;
                    if pick[k] < options[k].len() {
                        break;
                    }
                    pick[k] = 0;
                }
                if pick.iter().all(|&p| p == 0) {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// Solves the channel-tree game and extracts `T2` when the root wins.
    pub fn phase1(&self, b_dom: &crate::relation::Domain, o_dom: &crate::relation::Domain) -> Result<Phase1> {
        let s0 = self.t1.map_or(0, |t| t.initial());
        let root = Config { pending: 0, copies: vec![(self.r.initial(), s0)] };
        let mut ids: HashMap<Config, usize> = HashMap::from([(root.clone(), 0)]);
        let mut configs = vec![root];
        let mut moves: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut head = 0;
        while head < configs.len() {
            let c = configs[head].clone();
            head += 1;
            let mut ms = Vec::new();
            for succ in self.moves(&c)? {
                let mut tuple = Vec::with_capacity(succ.len());
                for s in succ {
                    let id = match ids.get(&s) {
                        Some(&id) => id,
                        None => {
                            if configs.len() >= self.limits.configs {
                                return Err(Error::CapExceeded {
                                    cap: "game-configs",
                                    limit: self.limits.configs,
                                    requested: configs.len() + 1,
                                });
                            }
                            ids.insert(s.clone(), configs.len());
                            configs.push(s);
                            configs.len() - 1
                        }
                    };
                    tuple.push(id);
                }
                ms.push(tuple);
            }
            moves.push(ms);
        }

        let win = greatest_fixpoint(configs.len(), |c, win| moves[c].iter().any(|m| m.iter().all(|&s| win[s])));
        if !win[0] {
            return Ok(Phase1 { t2: None, configs: configs.len() });
        }
        let choice = |c: usize| moves[c].iter().find(|m| m.iter().all(|&s| win[s])).expect("winning config has a move");
        // renumber the configurations the strategy reaches
        let mut state_of = HashMap::from([(0usize, 0usize)]);
        let mut order = vec![0usize];
        let mut delta = Vec::new();
        let mut k = 0;
        while k < order.len() {
            let c = order[k];
            for (b, &s) in choice(c).iter().enumerate() {
                let next = order.len();
                let id = *state_of.entry(s).or_insert_with(|| {
                    order.push(s);
                    next
                });
                delta.push((k, b, id));
            }
            k += 1;
        }
        let outputs = order.iter().map(|&c| configs[c].pending).collect();
        let t2 = MooreTransducer::new(b_dom.clone(), o_dom.clone(), 0, delta, outputs)?;
        Ok(Phase1 { t2: Some(t2), configs: configs.len() })
    }
}

pub(crate) struct Phase2 {
    pub t1: Option<MooreTransducer>,
    pub positions: usize,
}

/// Game against a fixed `T2` over positions `(A_R state, T2 state)`.
pub(crate) fn phase2(
    r: &Dfa,
    t2: &MooreTransducer,
    i_dom: &crate::relation::Domain,
    limits: GameLimits,
) -> Result<Phase2> {
    let (n_i, n_b) = (i_dom.len(), t2.input().len());
    let n_o = t2.output().len();
    let start = (r.initial(), t2.initial());
    let mut ids = HashMap::from([(start, 0usize)]);
    let mut pos = vec![start];
    // per position, per input letter: legal (b, successor) in increasing b
    let mut opts: Vec<Vec<Vec<(usize, usize)>>> = Vec::new();
    let mut head = 0;
    while head < pos.len() {
        let (q, p) = pos[head];
        head += 1;
        let mut per_i = Vec::with_capacity(n_i);
        for i in 0..n_i {
            let mut legal = Vec::new();
            for b in 0..n_b {
                let p2 = t2.step(p, b);
                let q2 = r.step(q, (i * n_o + t2.out(p2)) as u32);
                if !r.is_accepting(q2) {
                    continue;
                }
                let next = pos.len();
                let id = *ids.entry((q2, p2)).or_insert_with(|| {
                    pos.push((q2, p2));
                    next
                });
                legal.push((b, id));
            }
            per_i.push(legal);
        }
        if pos.len() > limits.configs {
            return Err(Error::CapExceeded { cap: "game-positions", limit: limits.configs, requested: pos.len() });
        }
        opts.push(per_i);
    }
    let win = greatest_fixpoint(pos.len(), |x, win| opts[x].iter().all(|legal| legal.iter().any(|&(_, s)| win[s])));
    if !win[0] {
        return Ok(Phase2 { t1: None, positions: pos.len() });
    }
    // T1 states: (position, last channel letter)
    let mut state_of: HashMap<(usize, usize), usize> = HashMap::from([((0, 0), 0)]);
    let mut order = vec![(0usize, 0usize)];
    let mut delta = Vec::new();
    let mut k = 0;
    while k < order.len() {
        let (x, _) = order[k];
        for (i, legal) in opts[x].iter().enumerate() {
            let &(b, s) = legal.iter().find(|&&(_, s)| win[s]).expect("winning position has a move");
            let next = order.len();
            let id = *state_of.entry((s, b)).or_insert_with(|| {
                order.push((s, b));
                next
            });
            delta.push((k, i, id));
        }
        k += 1;
    }
    let outputs = order.iter().map(|&(_, b)| b).collect();
    let t1 = MooreTransducer::new(i_dom.clone(), t2.input().clone(), 0, delta, outputs)?;
    Ok(Phase2 { t1: Some(t1), positions: pos.len() })
}

/// Largest set `W` with `keep(x, W)` for every `x ∈ W`.
fn greatest_fixpoint(n: usize, keep: impl Fn(usize, &[bool]) -> bool) -> Vec<bool> {
    let mut win = vec![true; n];
    loop {
        let mut changed = false;
        for x in 0..n {
            if win[x] && !keep(x, &win) {
                win[x] = false;
                changed = true;
            }
        }
        if !changed {
            return win;
        }
    }
}
