use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::automata::Dfa;

/// `c_n = |L ∩ Σ^n|` for `n = 0..=max_n`, by iterating a state vector
/// through the letter-count matrix.
pub fn count_words(d: &Dfa, max_n: usize) -> Vec<BigUint> {
    let states = d.state_count();
    let letters = d.alphabet().size() as u32;
    let mut weights: Vec<Vec<(usize, u32)>> = vec![Vec::new(); states];
    for (p, row) in weights.iter_mut().enumerate() {
        let mut targets: Vec<usize> = (0..letters).map(|l| d.step(p, l)).collect();
        targets.sort_unstable();
        for q in targets {
            match row.last_mut() {
                Some((t, c)) if *t == q => *c += 1,
                _ => row.push((q, 1)),
            }
        }
    }
    let mut v = vec![BigUint::zero(); states];
    v[d.initial()] = BigUint::one();
    let mut out = Vec::with_capacity(max_n + 1);
    for n in 0..=max_n {
        out.push((0..states).filter(|&q| d.is_accepting(q)).map(|q| &v[q]).sum());
        if n == max_n {
            break;
        }
        let mut next = vec![BigUint::zero(); states];
        for (p, row) in weights.iter().enumerate() {
            if v[p].is_zero() {
                continue;
            }
            for &(q, c) in row {
                next[q] += &v[p] * c;
            }
        }
        v = next;
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EbpOutcome {
    /// `c_n ≤ 2^n` for every `n ≤ N`. Says nothing about longer words.
    OkUpTo(usize),
    /// The least `n` with `c_n > 2^n`.
    Violation { n: usize, count: BigUint },
}

/// Bounded check of `|L_n| ≤ 2^n`.
pub fn ebp_check(d: &Dfa, max_n: usize) -> EbpOutcome {
    for (n, c) in count_words(d, max_n).into_iter().enumerate() {
        if c > BigUint::one() << n {
            return EbpOutcome::Violation { n, count: c };
        }
    }
    EbpOutcome::OkUpTo(max_n)
}
