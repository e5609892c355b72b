use crate::automata::{contains, determinize, product, project, Acceptance, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::relation::Mode;

use super::hint::AutoWitness;
use super::instance::{AutomaticInstance, TrackWord, IN, MID, OUT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointViolation {
    /// 1: every pair of `R` is covered (TD), 2: every input of `Dom(R)` is
    /// covered (PD), 3: triples sharing a channel word cross into `R`.
    pub condition: u8,
    pub word: TrackWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum JointVerdict {
    Holds(AutoWitness),
    Violated(JointViolation),
}

impl JointVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, JointVerdict::Holds(_))
    }
}

/// Checks a joint witness `S` over `in × mid × out`. When the conditions
/// hold, the decomposition is read off by projecting and determinizing.
pub fn verify_joint_witness(inst: &AutomaticInstance, s: &Dfa) -> Result<JointVerdict> {
    let s = normalize_joint(inst, s)?;
    let r = inst.relation().to_nfa();
    let fail = |condition, a: &Nfa, w: Vec<_>| {
        Ok(JointVerdict::Violated(JointViolation { condition, word: TrackWord::new(a.alphabet(), &w) }))
    };
    match inst.mode() {
        Mode::Td => {
            if let Some(w) = contains(&r, &project(&s, &[IN, OUT])?)? {
                return fail(1, &r, w);
            }
        }
        Mode::Pd => {
            let dom = project(&r, &[IN])?;
            if let Some(w) = contains(&dom, &project(&s, &[IN])?)? {
                return fail(2, &dom, w);
            }
        }
    }
    let s2 = s.rename_tracks(&[(IN, "in2"), (OUT, "out2")])?;
    let pair = product(&s, &s2, &[(MID, MID)], |x, y| x && y)?;
    let cross_a = project(&pair, &[IN, "out2"])?.rename_tracks(&[("out2", OUT)])?;
    let cross_b = project(&pair, &["in2", OUT])?.rename_tracks(&[("in2", IN)])?;
    for cross in [cross_a, cross_b] {
        if let Some(w) = contains(&cross, &r)? {
            return fail(3, &cross, w);
        }
    }
    let r1 = determinize(&project(&s, &[IN, MID])?, Acceptance::Existential)?.minimize();
    let r2 = determinize(&project(&s, &[MID, OUT])?, Acceptance::Existential)?.minimize();
    Ok(JointVerdict::Holds(AutoWitness { r1, r2 }))
}

fn normalize_joint(inst: &AutomaticInstance, s: &Dfa) -> Result<Nfa> {
    let want = inst.joint_alphabet();
    let al = s.alphabet();
    if al.track_count() != 3 {
        return Err(Error::ArityMismatch { expected: 3, found: al.track_count() });
    }
    for t in 0..3 {
        if al.domain(t).symbols() != want.domain(t).symbols() {
            return Err(Error::DomainMismatch { expected: want.domain(t).to_string(), found: al.domain(t).to_string() });
        }
    }
    Ok(s.with_alphabet(want).to_nfa())
}
