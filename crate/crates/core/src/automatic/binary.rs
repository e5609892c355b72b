use crate::automata::{determinize, Acceptance, Dfa, Letter, Nfa};
use crate::error::{Error, Result};
use crate::relation::{Domain, Side};

use super::instance::AutomaticInstance;

/// `m` with `|Σ_B| = 2^m`, `m ≥ 1`. Other sizes are refused: whether a
/// binary reduction exists for them is an open question.
pub fn binary_width(n: usize) -> Result<usize> {
    if n < 2 || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    Ok(n.trailing_zeros() as usize)
}

/// Replaces every edge of `A_R` by a path of `m` edges carrying the same
/// letter, over the intermediate alphabet `{0,1}`.
pub fn reduce_to_binary(inst: &AutomaticInstance) -> Result<AutomaticInstance> {
    let m = binary_width(inst.sigma_b().len())?;
    let d = inst.relation();
    let k = d.alphabet().size();
    let n = d.state_count();
    let mut transitions = Vec::with_capacity(n * k * m);
    let mut next = n;
    for p in 0..n {
        for l in 0..k as Letter {
            let q = d.step(p, l);
            let mut at = p;
            for _ in 1..m {
                transitions.push((at, l, next));
                at = next;
                next += 1;
            }
            transitions.push((at, l, q));
        }
    }
    let accepting = (0..n).filter(|&q| d.is_accepting(q));
    let split = Dfa::new(d.alphabet().clone(), next, d.initial(), accepting, transitions)?;
    let bits = Domain::new(inst.sigma_b().name(), ["0", "1"])?;
    AutomaticInstance::new(bits, split, inst.mode())
}

/// Image of a hint under `h((i,b,o)) = (i^m, bin(b), o^m)`, with `bin`
/// MSB-first over the intermediate symbol's index.
pub fn translate_hint(inst: &AutomaticInstance, hint: &Dfa, side: Side) -> Result<Dfa> {
    let m = binary_width(inst.sigma_b().len())?;
    let hint = inst.normalize_hint(hint, side)?;
    let reduced = reduce_to_binary(inst)?;
    let target = reduced.hint_alphabet(side);
    let (mid_src, other) = match side {
        Side::R1Given => (1, 0),
        Side::R2Given => (0, 1),
    };
    let al = hint.alphabet();
    let n = hint.state_count();
    let mut transitions = Vec::new();
    let mut next = n;
    for p in 0..n {
        for l in al.letters() {
            let q = hint.step(p, l);
            let b = al.component(l, mid_src);
            let x = al.component(l, other);
            let mut at = p;
            for bit in 0..m {
                let mut comps = [0usize; 2];
                comps[other] = x;
                comps[mid_src] = (b >> (m - 1 - bit)) & 1;
                let to = if bit + 1 == m {
                    q
                } else {
                    next += 1;
                    next - 1
                };
                transitions.push((at, target.encode(&comps), to));
                at = to;
            }
        }
    }
    let accepting = (0..n).filter(|&q| hint.is_accepting(q));
    let nfa = Nfa::new(target, next, hint.initial(), accepting, transitions)?;
    Ok(determinize(&nfa, Acceptance::Existential)?.minimize())
}
