//! Random generators and independent oracles for integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use seqdec::automata::{Dfa, Letter, Nfa, TrackAlphabet};
use seqdec::{Domain, ExplicitInstance, ExplicitRelation, Mode};

pub use rand::SeedableRng;
pub type Rand = ChaCha8Rng;

pub fn rng(seed: u64) -> Rand {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn domain(name: &str, prefix: &str, n: usize) -> Domain {
    Domain::numbered(name, prefix, n)
}

pub type Pairs = BTreeSet<(usize, usize)>;

pub fn random_pairs(r: &mut Rand, a: usize, b: usize, density: f64) -> Pairs {
    let mut s = Pairs::new();
    for x in 0..a {
        for y in 0..b {
            if r.gen_bool(density) {
                s.insert((x, y));
            }
        }
    }
    s
}

pub fn relation(from: &Domain, to: &Domain, pairs: &Pairs) -> ExplicitRelation {
    ExplicitRelation::from_pairs(from.clone(), to.clone(), pairs.iter().copied()).unwrap()
}

pub fn as_pairs(r: &ExplicitRelation) -> Pairs {
    r.pairs().into_iter().collect()
}

pub fn instance(ni: usize, nb: usize, no: usize, pairs: &Pairs, mode: Mode) -> ExplicitInstance {
    let (i, o) = (domain("I", "i", ni), domain("O", "o", no));
    ExplicitInstance::new(domain("B", "b", nb), relation(&i, &o, pairs), mode).unwrap()
}

pub fn random_instance(r: &mut Rand, max_i: usize, max_b: usize, max_o: usize, mode: Mode) -> ExplicitInstance {
    let (ni, nb, no) = (r.gen_range(1..=max_i), r.gen_range(1..=max_b), r.gen_range(1..=max_o));
    let d = r.gen_range(0.1..0.9);
    let p = random_pairs(r, ni, no, d);
    instance(ni, nb, no, &p, mode)
}

/// `{(a,c) | ∃b (a,b) ∈ x ∧ (b,c) ∈ y}` by definition.
pub fn compose_naive(x: &Pairs, y: &Pairs) -> Pairs {
    let mut out = Pairs::new();
    for &(a, b) in x {
        for &(b2, c) in y {
            if b == b2 {
                out.insert((a, c));
            }
        }
    }
    out
}

pub fn dom_naive(x: &Pairs) -> BTreeSet<usize> {
    x.iter().map(|p| p.0).collect()
}

pub fn img_naive(x: &Pairs) -> BTreeSet<usize> {
    x.iter().map(|p| p.1).collect()
}

/// TD or PD condition by set arithmetic.
pub fn conditions_naive(r: &Pairs, mode: Mode, r1: &Pairs, r2: &Pairs) -> bool {
    if !img_naive(r1).is_subset(&dom_naive(r2)) {
        return false;
    }
    let c = compose_naive(r1, r2);
    match mode {
        Mode::Td => c == *r,
        Mode::Pd => dom_naive(&c) == dom_naive(r) && c.is_subset(r),
    }
}

/// Every subset of `a × b`, as pair sets (at most 2^16 of them).
pub fn all_relations(a: usize, b: usize) -> impl Iterator<Item = Pairs> {
    let cells: Vec<(usize, usize)> = (0..a).flat_map(|x| (0..b).map(move |y| (x, y))).collect();
    assert!(cells.len() <= 16);
    (0u32..1 << cells.len()).map(move |mask| {
        cells.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &c)| c).collect()
    })
}

/// Whether some relation completes `hint`, by trying every candidate.
pub fn exists_complement(inst: &ExplicitInstance, hint: &Pairs, r1_given: bool) -> bool {
    let (ni, nb, no) = (inst.input().len(), inst.intermediate().len(), inst.output().len());
    let r = as_pairs(inst.relation());
    if r1_given {
        all_relations(nb, no).any(|c| conditions_naive(&r, inst.mode(), hint, &c))
    } else {
        all_relations(ni, nb).any(|c| conditions_naive(&r, inst.mode(), &c, hint))
    }
}

pub fn letters_domain(n: usize) -> Domain {
    Domain::new("S", ["a", "b", "c", "d"].iter().take(n).copied()).unwrap()
}

pub fn random_nfa(r: &mut Rand, al: &TrackAlphabet, max_states: usize, density: f64) -> Nfa {
    let n = r.gen_range(1..=max_states);
    let mut t = Vec::new();
    for p in 0..n {
        for l in al.letters() {
            for q in 0..n {
                if r.gen_bool(density) {
                    t.push((p, l, q));
                }
            }
        }
    }
    let acc: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
    Nfa::new(al.clone(), n, 0, acc, t).unwrap()
}

pub fn random_dfa(r: &mut Rand, al: &TrackAlphabet, max_states: usize, accept_p: f64) -> Dfa {
    let n = r.gen_range(1..=max_states);
    let mut t = Vec::new();
    for p in 0..n {
        for l in al.letters() {
            t.push((p, l, r.gen_range(0..n)));
        }
    }
    let acc: Vec<usize> = (0..n).filter(|_| r.gen_bool(accept_p)).collect();
    Dfa::new(al.clone(), n, 0, acc, t).unwrap()
}

/// Acceptance by explicit run enumeration.
pub fn accepts_by_runs(a: &Nfa, w: &[Letter]) -> bool {
    fn go(a: &Nfa, q: usize, w: &[Letter]) -> bool {
        match w.split_first() {
            None => a.is_accepting(q),
            Some((&l, rest)) => a.edges(q).iter().any(|&(x, q2)| x == l && go(a, q2, rest)),
        }
    }
    go(a, a.initial(), w)
}

/// Whether every run on `w` ends accepting (true when there is no run).
pub fn all_runs_accept(a: &Nfa, w: &[Letter]) -> bool {
    fn go(a: &Nfa, q: usize, w: &[Letter]) -> bool {
        match w.split_first() {
            None => a.is_accepting(q),
            Some((&l, rest)) => a.edges(q).iter().filter(|&&(x, _)| x == l).all(|&(_, q2)| go(a, q2, rest)),
        }
    }
    go(a, a.initial(), w)
}

/// All words of length `len` over `k` letters.
pub fn words(k: usize, len: usize) -> Vec<Vec<Letter>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w| {
                (0..k as Letter).map(move |l| {
                    let mut w2 = w.clone();
                    w2.push(l);
                    w2
                })
            })
            .collect();
    }
    out
}

pub fn words_up_to(k: usize, n: usize) -> Vec<Vec<Letter>> {
    (0..=n).flat_map(|len| words(k, len)).collect()
}

use seqdec::circuit::{BoolCircuit, Gate};

/// A random gate list over `inputs` bits; every input is available as a gate.
pub fn random_circuit(r: &mut Rand, inputs: usize, extra: usize) -> BoolCircuit {
    let mut gates: Vec<Gate> = (0..inputs).map(Gate::Input).collect();
    for _ in 0..extra {
        let n = gates.len();
        let (a, b) = (r.gen_range(0..n), r.gen_range(0..n));
        let g = match r.gen_range(0..5) {
            0 => Gate::Not(a),
            1 => Gate::And(vec![a, b]),
            2 => Gate::Or(vec![a, b]),
            3 => Gate::Xor(vec![a, b]),
            _ => Gate::Const(r.gen_bool(0.5)),
        };
        gates.push(g);
    }
    let out = gates.len() - 1;
    BoolCircuit::new(inputs, gates, out).unwrap()
}

/// Disjunction of minterms; minterm `v` reads bit `k` of the input as bit
/// `inputs - 1 - k` of `v`.
pub fn dnf_circuit(inputs: usize, minterms: impl IntoIterator<Item = u64>) -> BoolCircuit {
    let mut gates: Vec<Gate> = (0..inputs).map(Gate::Input).collect();
    let negs: Vec<usize> = (0..inputs)
        .map(|k| {
            gates.push(Gate::Not(k));
            gates.len() - 1
        })
        .collect();
    let mut terms = Vec::new();
    for v in minterms {
        let lits = (0..inputs).map(|k| if (v >> (inputs - 1 - k)) & 1 == 1 { k } else { negs[k] }).collect();
        gates.push(Gate::And(lits));
        terms.push(gates.len() - 1);
    }
    gates.push(Gate::Or(terms));
    let out = gates.len() - 1;
    BoolCircuit::new(inputs, gates, out).unwrap()
}

use proptest::prelude::*;

/// A subset of `a × b`, shrinking towards the empty relation.
pub fn pairs_in(a: usize, b: usize) -> impl Strategy<Value = Pairs> {
    proptest::collection::vec(any::<bool>(), a * b)
        .prop_map(move |cells| cells.iter().enumerate().filter(|c| *c.1).map(|(k, _)| (k / b, k % b)).collect())
}

pub fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Td), Just(Mode::Pd)]
}

/// Sizes `(|I|, |B|, |O|)` and a relation over `I × O`.
pub fn sized_relation(max_i: usize, max_b: usize, max_o: usize) -> impl Strategy<Value = (usize, usize, usize, Pairs)> {
    (1..=max_i, 1..=max_b, 1..=max_o).prop_flat_map(|(ni, nb, no)| (Just(ni), Just(nb), Just(no), pairs_in(ni, no)))
}
