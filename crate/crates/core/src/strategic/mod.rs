//! Strategic decomposition: both relations realized by Moore transducers.
//!
//! Every input prefix must be resolved, so an instance whose domain misses
//! some non-empty input word is infeasible.

mod game;
mod transducer;

pub use game::{GameLimits, DEFAULT_CONFIG_CAP, DEFAULT_MOVE_CAP};
pub use transducer::MooreTransducer;

use crate::automatic::AutomaticInstance;
use crate::error::{Error, Result};
use crate::relation::Side;

use game::{phase2, Arena};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategicWitness {
    pub t1: MooreTransducer,
    pub t2: MooreTransducer,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StrategicStats {
    /// Channel-tree configurations explored in phase 1.
    pub configs: usize,
    /// `(A_R state, T2 state)` positions explored in phase 2.
    pub positions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrategicOutcome {
    Feasible(StrategicWitness),
    Infeasible,
}

impl StrategicOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, StrategicOutcome::Feasible(_))
    }

    pub fn witness(&self) -> Option<&StrategicWitness> {
        match self {
            StrategicOutcome::Feasible(w) => Some(w),
            StrategicOutcome::Infeasible => None,
        }
    }
}

pub fn solve_strategic(inst: &AutomaticInstance) -> Result<(StrategicOutcome, StrategicStats)> {
    solve_strategic_with(inst, None, GameLimits::default())
}

/// Synthesis with one transducer fixed: `Side::R1Given` fixes `T1`,
/// `Side::R2Given` fixes `T2`.
pub fn solve_strategic_hint(
    inst: &AutomaticInstance,
    hint: &MooreTransducer,
    side: Side,
) -> Result<(StrategicOutcome, StrategicStats)> {
    solve_strategic_with(inst, Some((hint, side)), GameLimits::default())
}

pub fn solve_strategic_with(
    inst: &AutomaticInstance,
    hint: Option<(&MooreTransducer, Side)>,
    limits: GameLimits,
) -> Result<(StrategicOutcome, StrategicStats)> {
    if let Some((h, side)) = hint {
        check_hint_alphabets(inst, h, side)?;
    }
    let r = inst.relation();
    let (si, sb, so) = (inst.sigma_i(), inst.sigma_b(), inst.sigma_o());
    let mut stats = StrategicStats::default();
    let (t1_hint, t2) = match hint {
        Some((t2, Side::R2Given)) => (None, t2.clone()),
        Some((t1, Side::R1Given)) => {
            let arena = Arena::new(r, si.len(), sb.len(), so.len(), Some(t1), limits);
            let p1 = arena.phase1(sb, so)?;
            stats.configs = p1.configs;
            match p1.t2 {
                Some(t2) => (Some(t1), t2),
                None => return Ok((StrategicOutcome::Infeasible, stats)),
            }
        }
        None => {
            let arena = Arena::new(r, si.len(), sb.len(), so.len(), None, limits);
            let p1 = arena.phase1(sb, so)?;
            stats.configs = p1.configs;
            match p1.t2 {
                Some(t2) => (None, t2),
                None => return Ok((StrategicOutcome::Infeasible, stats)),
            }
        }
    };
    if let Some(t1) = t1_hint {
        return Ok((StrategicOutcome::Feasible(StrategicWitness { t1: t1.clone(), t2 }), stats));
    }
    let p2 = phase2(r, &t2, si, limits)?;
    stats.positions = p2.positions;
    Ok(match p2.t1 {
        Some(t1) => (StrategicOutcome::Feasible(StrategicWitness { t1, t2 }), stats),
        None => (StrategicOutcome::Infeasible, stats),
    })
}

fn check_hint_alphabets(inst: &AutomaticInstance, h: &MooreTransducer, side: Side) -> Result<()> {
    let (want_in, want_out) = match side {
        Side::R1Given => (inst.sigma_i(), inst.sigma_b()),
        Side::R2Given => (inst.sigma_b(), inst.sigma_o()),
    };
    for (want, got) in [(want_in, h.input()), (want_out, h.output())] {
        if want.symbols() != got.symbols() {
            return Err(Error::DomainMismatch { expected: want.to_string(), found: got.to_string() });
        }
    }
    Ok(())
}

/// A non-empty input word whose transduced output falls outside `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrategicViolation {
    pub input: Vec<String>,
    pub channel: Vec<String>,
    pub output: Vec<String>,
}

/// Checks `(i, T2(T1(i))) ∈ R` for every input word with `1 ≤ |i| ≤ n`,
/// length by length; reports the shortest, least violating input.
pub fn verify_witness_bounded(
    inst: &AutomaticInstance,
    w: &StrategicWitness,
    n: usize,
) -> Result<Option<StrategicViolation>> {
    check_hint_alphabets(inst, &w.t1, Side::R1Given)?;
    check_hint_alphabets(inst, &w.t2, Side::R2Given)?;
    let r = inst.relation();
    let (n_i, n_o) = (inst.sigma_i().len(), inst.sigma_o().len());
    // (input word, T1 state, T2 state, A_R state)
    let mut level = vec![(Vec::new(), w.t1.initial(), w.t2.initial(), r.initial())];
    for _ in 1..=n {
        let mut next = Vec::with_capacity(level.len() * n_i);
        for (word, s1, s2, q) in &level {
            for i in 0..n_i {
                let s1b = w.t1.step(*s1, i);
                let s2b = w.t2.step(*s2, w.t1.out(s1b));
                let q2 = r.step(*q, (i * n_o + w.t2.out(s2b)) as u32);
                let mut wi = word.clone();
                wi.push(i);
                if !r.is_accepting(q2) {
                    let channel = w.t1.apply(&wi);
                    let output = w.t2.apply(&channel);
                    let label = |d: &crate::relation::Domain, v: &[usize]| v.iter().map(|&x| d.symbol(x).to_string()).collect();
                    return Ok(Some(StrategicViolation {
                        input: label(inst.sigma_i(), &wi),
                        channel: label(inst.sigma_b(), &channel),
                        output: label(inst.sigma_o(), &output),
                    }));
                }
                next.push((wi, s1b, s2b, q2));
            }
        }
        level = next;
    }
    Ok(None)
}
