use crate::automata::{contains, determinize, project, product, Acceptance, Dfa, Letter, Nfa, TrackAlphabet};
use crate::error::Result;
use crate::relation::{Mode, Side, ViolationKind};

use super::instance::{AutomaticInstance, TrackWord, IN, MID, OUT};

/// DFA for the largest relation completing `hint`.
///
/// For an `R1` hint the product with `R` (synced on `in`) accepts where
/// `hint → R`; projecting to `mid × out` and determinizing universally gives
/// `R2'`. For an `R2` hint the same is done synced on `out`, and the result
/// is intersected with `Dom(hint)` on `mid` for the existential conjunct.
pub fn max_complement_dfa(inst: &AutomaticInstance, hint: &Dfa, side: Side) -> Result<Dfa> {
    let hint = inst.normalize_hint(hint, side)?;
    let r = inst.relation().to_nfa();
    let h = hint.to_nfa();
    match side {
        Side::R1Given => {
            let p = product(&h, &r, &[(IN, IN)], |hq, rq| !hq || rq)?;
            let p = project(&p, &[MID, OUT])?;
            Ok(determinize(&p, Acceptance::Universal)?.minimize())
        }
        Side::R2Given => {
            let p = product(&r, &h, &[(OUT, OUT)], |rq, hq| !hq || rq)?;
            let p = project(&p, &[IN, MID])?;
            let all = determinize(&p, Acceptance::Universal)?;
            let dom_h = determinize(&project(&h, &[MID])?, Acceptance::Existential)?;
            let both = product(&all.to_nfa(), &dom_h.to_nfa(), &[(MID, MID)], |x, y| x && y)?;
            Ok(Dfa::from_deterministic(&both)?.minimize())
        }
    }
}

/// A violated condition with its shortest, least offending word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoCounterexample {
    pub kind: ViolationKind,
    pub word: TrackWord,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoWitness {
    pub r1: Dfa,
    pub r2: Dfa,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutoVerdict {
    Holds,
    Violated(AutoCounterexample),
}

impl AutoVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, AutoVerdict::Holds)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoHintReport {
    pub side: Side,
    pub hint: Dfa,
    pub complement: Dfa,
    pub verdict: AutoVerdict,
}

impl AutoHintReport {
    pub fn is_feasible(&self) -> bool {
        self.verdict.holds()
    }

    pub fn witness(&self) -> Option<AutoWitness> {
        self.is_feasible().then(|| match self.side {
            Side::R1Given => AutoWitness { r1: self.hint.clone(), r2: self.complement.clone() },
            Side::R2Given => AutoWitness { r1: self.complement.clone(), r2: self.hint.clone() },
        })
    }
}

/// Builds the maximal complement and checks the instance's condition on the
/// pair `(hint, complement)`.
pub fn check_hint_automatic(inst: &AutomaticInstance, hint: &Dfa, side: Side) -> Result<AutoHintReport> {
    let hint = inst.normalize_hint(hint, side)?;
    let complement = max_complement_dfa(inst, &hint, side)?;
    let (r1, r2) = match side {
        Side::R1Given => (&hint, &complement),
        Side::R2Given => (&complement, &hint),
    };
    let verdict = check_pair_automatic(inst, r1, r2)?;
    Ok(AutoHintReport { side, hint, complement, verdict })
}

fn shorter(a: Option<Vec<Letter>>, b: Option<Vec<Letter>>) -> Option<(Vec<Letter>, bool)> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if (y.len(), &y) < (x.len(), &x) { (y, false) } else { (x, true) }),
        (Some(x), None) => Some((x, true)),
        (None, Some(y)) => Some((y, false)),
        (None, None) => None,
    }
}

/// TD or PD condition for DFAs `r1` over `in × mid` and `r2` over `mid × out`.
pub fn check_pair_automatic(inst: &AutomaticInstance, r1: &Dfa, r2: &Dfa) -> Result<AutoVerdict> {
    let r1 = inst.normalize_hint(r1, Side::R1Given)?.to_nfa();
    let r2 = inst.normalize_hint(r2, Side::R2Given)?.to_nfa();
    let fail = |kind, al: &TrackAlphabet, w: Vec<Letter>| {
        Ok(AutoVerdict::Violated(AutoCounterexample { kind, word: TrackWord::new(al, &w) }))
    };

    let img1 = project(&r1, &[MID])?;
    if let Some(w) = contains(&img1, &project(&r2, &[MID])?)? {
        return fail(ViolationKind::ImageNotInDomain, img1.alphabet(), w);
    }
    let comp = project(&product(&r1, &r2, &[(MID, MID)], |x, y| x && y)?, &[IN, OUT])?;
    let r = inst.relation().to_nfa();
    match inst.mode() {
        Mode::Td => match shorter(contains(&comp, &r)?, contains(&r, &comp)?) {
            Some((w, true)) => fail(ViolationKind::CompositionExceeds, comp.alphabet(), w),
            Some((w, false)) => fail(ViolationKind::CompositionMissing, comp.alphabet(), w),
            None => Ok(AutoVerdict::Holds),
        },
        Mode::Pd => {
            let (dc, dr) = (project(&comp, &[IN])?, project(&r, &[IN])?);
            if let Some((w, _)) = shorter(contains(&dc, &dr)?, contains(&dr, &dc)?) {
                return fail(ViolationKind::DomainMismatch, dc.alphabet(), w);
            }
            match contains(&comp, &r)? {
                Some(w) => fail(ViolationKind::CompositionExceeds, comp.alphabet(), w),
                None => Ok(AutoVerdict::Holds),
            }
        }
    }
}

/// `{(w, b^|w|) | w ∈ L(a)}`-style relabeling helper: rewrites a two-track
/// automaton's letters through `f` into `alphabet` and determinizes.
pub(crate) fn relabel(a: &Nfa, alphabet: TrackAlphabet, f: impl Fn(Letter) -> Letter) -> Result<Dfa> {
    let mapped = a.map_letters(alphabet, |l| Some(f(l)));
    Ok(determinize(&mapped, Acceptance::Existential)?.minimize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automatic::testing::*;
    use crate::automatic::slice_relation;
    use crate::explicit::max_complement;
    use crate::relation::{Domain, ExplicitInstance};

    #[test]
    fn copy_hint_gives_identity_complement() {
        let inst = AutomaticInstance::new(ab("B"), identity(&ab("S")), Mode::Td).unwrap();
        let hint = identity(&ab("S"));
        let c = max_complement_dfa(&inst, &hint, Side::R1Given).unwrap();
        for k in 0..=4 {
            assert_eq!(slice_relation(&c, k).unwrap().pairs(), slice_relation(&hint, k).unwrap().pairs());
        }
        let rep = check_hint_automatic(&inst, &hint, Side::R1Given).unwrap();
        assert!(rep.is_feasible());
    }

    #[test]
    fn empty_hint_is_vacuous() {
        let inst = AutomaticInstance::new(ab("B"), identity(&ab("S")), Mode::Td).unwrap();
        let empty = Dfa::empty(inst.hint_alphabet(Side::R1Given));
        let c = max_complement_dfa(&inst, &empty, Side::R1Given).unwrap();
        assert_eq!(c, Dfa::universal(inst.hint_alphabet(Side::R2Given)));
        let empty2 = Dfa::empty(inst.hint_alphabet(Side::R2Given));
        let c2 = max_complement_dfa(&inst, &empty2, Side::R2Given).unwrap();
        assert_eq!(c2, Dfa::empty(inst.hint_alphabet(Side::R1Given)));
    }

    #[test]
    fn unary_hint_fails_at_length_one() {
        let b = Domain::new("B", ["0"]).unwrap();
        let inst = AutomaticInstance::new(b, identity(&ab("S")), Mode::Td).unwrap();
        let al = inst.hint_alphabet(Side::R1Given);
        let hint = Dfa::universal(al);
        let rep = check_hint_automatic(&inst, &hint, Side::R1Given).unwrap();
        let AutoVerdict::Violated(cx) = rep.verdict else { panic!("expected a violation") };
        assert_eq!(cx.word.len(), 1);
    }

    #[test]
    fn empty_relation_both_modes() {
        for mode in [Mode::Td, Mode::Pd] {
            let inst = AutomaticInstance::new(ab("B"), Dfa::empty(rel_alphabet(&ab("S"))), mode).unwrap();
            for side in [Side::R1Given, Side::R2Given] {
                let hint = Dfa::empty(inst.hint_alphabet(side));
                assert!(check_hint_automatic(&inst, &hint, side).unwrap().is_feasible());
            }
        }
    }

    #[test]
    fn r2_side_matches_explicit_slices() {
        let inst = AutomaticInstance::new(ab("B"), identity(&ab("S")), Mode::Pd).unwrap();
        let hint = identity(&ab("S"));
        let c = max_complement_dfa(&inst, &hint, Side::R2Given).unwrap();
        for k in 0..=3 {
            let e = ExplicitInstance::new(
                crate::automatic::word_domain("B", inst.sigma_b(), k).unwrap(),
                slice_relation(inst.relation(), k).unwrap(),
                Mode::Pd,
            )
            .unwrap();
            let h = slice_relation(&hint, k).unwrap();
            let h = crate::relation::ExplicitRelation::from_pairs(e.intermediate().clone(), e.output().clone(), h.pairs()).unwrap();
            let want = max_complement(&e, &h, Side::R2Given).unwrap();
            assert_eq!(slice_relation(&c, k).unwrap().pairs(), want.pairs());
        }
    }
}
