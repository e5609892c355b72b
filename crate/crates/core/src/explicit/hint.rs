use crate::bitset::BitSet;
use crate::error::Result;
use crate::relation::{check_pair, ExplicitInstance, ExplicitRelation, ExplicitWitness, Side, Verdict};

/// The largest relation completing `hint`.
///
/// * `R1` given: `R2' = {(b,o) | ∀i ((i,b) ∈ R1 → (i,o) ∈ R)}`
/// * `R2` given: `R1' = {(i,b) | (∃o (b,o) ∈ R2) ∧ ∀o ((b,o) ∈ R2 → (i,o) ∈ R)}`
pub fn max_complement(inst: &ExplicitInstance, hint: &ExplicitRelation, side: Side) -> Result<ExplicitRelation> {
    inst.check_hint_domains(hint, side)?;
    let r = inst.relation();
    let (ni, nb, no) = (inst.input().len(), inst.intermediate().len(), inst.output().len());
    Ok(match side {
        Side::R1Given => {
            let rows = (0..nb)
                .map(|b| {
                    let mut row = BitSet::full(no);
                    for i in 0..ni {
                        if hint.contains(i, b) {
                            row.intersect_with(r.row(i));
                        }
                    }
                    row
                })
                .collect();
            ExplicitRelation::from_rows(inst.intermediate().clone(), inst.output().clone(), rows)
        }
        Side::R2Given => {
            let rows = (0..ni)
                .map(|i| {
                    BitSet::from_iter(
                        nb,
                        (0..nb).filter(|&b| !hint.row(b).is_empty() && hint.row(b).is_subset(r.row(i))),
                    )
                })
                .collect();
            ExplicitRelation::from_rows(inst.input().clone(), inst.intermediate().clone(), rows)
        }
    })
}

/// Outcome of a hint query: the maximal complement and whether the pair
/// `(hint, complement)` meets the instance's condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HintReport {
    pub side: Side,
    pub hint: ExplicitRelation,
    pub complement: ExplicitRelation,
    pub verdict: Verdict,
}

impl HintReport {
    pub fn is_feasible(&self) -> bool {
        self.verdict.holds()
    }

    /// The decomposition `(R1, R2)` when feasible.
    pub fn witness(&self) -> Option<ExplicitWitness> {
        if !self.is_feasible() {
            return None;
        }
        Some(match self.side {
            Side::R1Given => ExplicitWitness { r1: self.hint.clone(), r2: self.complement.clone() },
            Side::R2Given => ExplicitWitness { r1: self.complement.clone(), r2: self.hint.clone() },
        })
    }
}

/// Some complement of `hint` exists iff the maximal one works, so a single
/// condition check decides the query.
pub fn solve_with_hint(inst: &ExplicitInstance, hint: &ExplicitRelation, side: Side) -> Result<HintReport> {
    let complement = max_complement(inst, hint, side)?;
    let verdict = match side {
        Side::R1Given => check_pair(inst.relation(), inst.mode(), hint, &complement),
        Side::R2Given => check_pair(inst.relation(), inst.mode(), &complement, hint),
    };
    Ok(HintReport { side, hint: hint.clone(), complement, verdict })
}
