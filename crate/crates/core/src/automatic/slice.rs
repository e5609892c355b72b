use crate::automata::{Dfa, Letter};
use crate::error::{Error, Result};
use crate::relation::{Domain, ExplicitInstance, ExplicitRelation};

use super::instance::AutomaticInstance;

/// Largest word domain a slice may have.
pub const SLICE_DOMAIN_CAP: usize = 4096;

/// Label of a word: symbols concatenated when all are single characters,
/// dot-separated otherwise, `ε` for the empty word.
pub fn word_label(d: &Domain, word: &[usize]) -> String {
    if word.is_empty() {
        return "ε".into();
    }
    let single = d.symbols().iter().all(|s| s.chars().count() == 1);
    let parts: Vec<&str> = word.iter().map(|&c| d.symbol(c)).collect();
    parts.join(if single { "" } else { "." })
}

/// The `k`-th word of length `len` in lexicographic order.
pub fn nth_word(base: usize, len: usize, mut k: usize) -> Vec<usize> {
    let mut w = vec![0; len];
    for slot in w.iter_mut().rev() {
        *slot = k % base;
        k /= base;
    }
    w
}

pub fn word_count(base: usize, len: usize) -> Result<usize> {
    match base.checked_pow(len as u32) {
        Some(n) if n <= SLICE_DOMAIN_CAP => Ok(n),
        _ => Err(Error::CapExceeded { cap: "slice-size", limit: SLICE_DOMAIN_CAP, requested: base.saturating_pow(len as u32) }),
    }
}

/// All words of length `len` over `d`, in lexicographic order.
pub fn word_domain(name: &str, d: &Domain, len: usize) -> Result<Domain> {
    let n = word_count(d.len(), len)?;
    Domain::new(name, (0..n).map(|k| word_label(d, &nth_word(d.len(), len, k))))
}

/// The length-`len` pairs accepted by a two-track DFA, as an explicit
/// relation between word domains.
pub fn slice_relation(d: &Dfa, len: usize) -> Result<ExplicitRelation> {
    let al = d.alphabet();
    if al.track_count() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: al.track_count() });
    }
    let (x, y) = (al.domain(0), al.domain(1));
    let from = word_domain(x.name(), x, len)?;
    let to = word_domain(y.name(), y, len)?;
    let mut r = ExplicitRelation::empty(from.clone(), to.clone());
    let mut word: Vec<Letter> = vec![0; len];
    for a in 0..from.len() {
        let xa = nth_word(x.len(), len, a);
        for b in 0..to.len() {
            let yb = nth_word(y.len(), len, b);
            for t in 0..len {
                word[t] = al.encode(&[xa[t], yb[t]]);
            }
            if d.accepts(&word) {
                r.insert(a, b);
            }
        }
    }
    Ok(r)
}

/// The explicit instance on words of length `len`, with intermediate domain
/// `Σ_B^len`.
pub fn slice_instance(inst: &AutomaticInstance, len: usize) -> Result<ExplicitInstance> {
    let r = slice_relation(inst.relation(), len)?;
    let b = word_domain(inst.sigma_b().name(), inst.sigma_b(), len)?;
    ExplicitInstance::new(b, r, inst.mode())
}
