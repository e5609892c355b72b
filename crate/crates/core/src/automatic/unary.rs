use crate::automata::{is_empty, product, project, Dfa};
use crate::error::{Error, Result};
use crate::relation::{Mode, Side, ViolationKind};

use super::hint::{check_hint_automatic, relabel, AutoCounterexample, AutoVerdict, AutoWitness};
use super::instance::{AutomaticInstance, TrackWord, IN, OUT};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoSolution {
    Feasible(AutoWitness),
    Infeasible(AutoCounterexample),
}

impl AutoSolution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, AutoSolution::Feasible(_))
    }
}

/// Decides an instance whose intermediate alphabet has a single letter `b`.
///
/// With one intermediate letter the only channel word of length `n` is
/// `b^n`, so `R1 ∘ R2` always relates every input of a length to every
/// output of that length. TD holds iff the length-matched `Dom(R) × Img(R)`
/// lies in `R`, checked by emptiness of the refutation automaton
/// `Dom × Img × ¬R`. PD forces `R1 = {(i, b^|i|) | i ∈ Dom(R)}`, which is
/// then checked as a hint.
pub fn solve_unary(inst: &AutomaticInstance) -> Result<AutoSolution> {
    if inst.sigma_b().len() != 1 {
        return Err(Error::InvalidInstance(format!(
            "unary procedure needs a one-letter intermediate alphabet, got {}",
            inst.sigma_b()
        )));
    }
    let r = inst.relation().to_nfa();
    let r1 = lift(inst, Side::R1Given)?;
    match inst.mode() {
        Mode::Td => {
            let dom = project(&r, &[IN])?;
            let img = project(&r, &[OUT])?;
            let di = product(&dom, &img, &[], |x, y| x && y)?;
            let refute = product(&di, &r, &[(IN, IN), (OUT, OUT)], |d, rq| d && !rq)?;
            if let Some(w) = is_empty(&refute) {
                return Ok(AutoSolution::Infeasible(AutoCounterexample {
                    kind: ViolationKind::CompositionExceeds,
                    word: TrackWord::new(refute.alphabet(), &w),
                }));
            }
            let r2 = lift(inst, Side::R2Given)?;
            Ok(AutoSolution::Feasible(AutoWitness { r1, r2 }))
        }
        Mode::Pd => {
            let rep = check_hint_automatic(inst, &r1, Side::R1Given)?;
            Ok(match rep.verdict {
                AutoVerdict::Holds => AutoSolution::Feasible(rep.witness().expect("feasible report")),
                AutoVerdict::Violated(cx) => AutoSolution::Infeasible(cx),
            })
        }
    }
}

/// `R` with its output (for `R1`) or input (for `R2`) letters replaced by
/// the single intermediate letter.
fn lift(inst: &AutomaticInstance, side: Side) -> Result<Dfa> {
    let rel = inst.relation_alphabet();
    let target = inst.hint_alphabet(side);
    let keep = match side {
        Side::R1Given => 0,
        Side::R2Given => 1,
    };
    relabel(&inst.relation().to_nfa(), target.clone(), |l| {
        let mut comps = [0usize; 2];
        comps[keep] = rel.component(l, keep);
        target.encode(&comps)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automatic::testing::*;
    use crate::automatic::{check_pair_automatic, slice_relation};
    use crate::automata::TrackAlphabet;
    use crate::relation::Domain;

    fn unary() -> Domain {
        Domain::new("B", ["0"]).unwrap()
    }

    #[test]
    fn identity_is_infeasible_at_length_one() {
        let inst = AutomaticInstance::new(unary(), identity(&ab("S")), Mode::Td).unwrap();
        let AutoSolution::Infeasible(cx) = solve_unary(&inst).unwrap() else { panic!("expected infeasible") };
        assert_eq!(cx.word.len(), 1);
        assert_eq!(cx.word.track("in").unwrap(), ["a"]);
        assert_eq!(cx.word.track("out").unwrap(), ["b"]);
    }

    #[test]
    fn a_to_c_is_feasible() {
        // {(a^n, c^n) | n ≥ 1} over in={a,b}, out={c,d}
        let cd = Domain::new("T", ["c", "d"]).unwrap();
        let al = TrackAlphabet::pair(("in", ab("S")), ("out", cd)).unwrap();
        let ac = al.parse_letter(&["a", "c"]).unwrap();
        let d = Dfa::new(al, 2, 0, [1], [(0, ac, 1), (1, ac, 1)]).unwrap();
        let inst = AutomaticInstance::new(unary(), d, Mode::Td).unwrap();
        let AutoSolution::Feasible(w) = solve_unary(&inst).unwrap() else { panic!("expected feasible") };
        assert!(check_pair_automatic(&inst, &w.r1, &w.r2).unwrap().holds());
        for k in 0..=6 {
            let n = if k == 0 { 0 } else { 1 };
            assert_eq!(slice_relation(&w.r1, k).unwrap().len(), n);
        }
    }

    #[test]
    fn empty_relation_is_feasible() {
        let inst = AutomaticInstance::new(unary(), Dfa::empty(rel_alphabet(&ab("S"))), Mode::Td).unwrap();
        let AutoSolution::Feasible(w) = solve_unary(&inst).unwrap() else { panic!("expected feasible") };
        assert!(crate::automata::is_empty(&w.r1.to_nfa()).is_none());
        assert!(crate::automata::is_empty(&w.r2.to_nfa()).is_none());
    }

    #[test]
    fn partial_mode_uses_forced_hint() {
        // {(a,x),(a,y),(b,x)} on length 1: PD holds with R2 = {(0,x)}, TD does not
        let xy = Domain::new("T", ["x", "y"]).unwrap();
        let al = TrackAlphabet::pair(("in", ab("S")), ("out", xy)).unwrap();
        let t: Vec<_> = [["a", "x"], ["a", "y"], ["b", "x"]].iter().map(|p| (0, al.parse_letter(p).unwrap(), 1)).collect();
        let d = Dfa::new(al, 2, 0, [1], t).unwrap();
        let pd = AutomaticInstance::new(unary(), d, Mode::Pd).unwrap();
        assert!(solve_unary(&pd).unwrap().is_feasible());
        assert!(!solve_unary(&pd.with_mode(Mode::Td)).unwrap().is_feasible());
    }

    #[test]
    fn rejects_wider_channel() {
        let inst = AutomaticInstance::new(ab("B"), identity(&ab("S")), Mode::Td).unwrap();
        assert!(solve_unary(&inst).is_err());
    }
}
