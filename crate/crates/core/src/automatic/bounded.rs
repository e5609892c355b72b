use crate::error::Result;
use crate::explicit::solve_explicit;
use crate::relation::{brute_force_solve, trivial_decompose, ExplicitWitness, Solution, DEFAULT_BRUTE_FORCE_CAP};

use super::instance::AutomaticInstance;
use super::slice::slice_instance;

/// How a slice was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SliceMethod {
    BruteForce,
    Trivial,
    Sat,
}

impl SliceMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SliceMethod::BruteForce => "brute-force",
            SliceMethod::Trivial => "trivial",
            SliceMethod::Sat => "sat",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceResult {
    pub length: usize,
    pub method: SliceMethod,
    pub witness: Option<ExplicitWitness>,
}

/// Per-slice feasibility is necessary for a regular decomposition but not
/// sufficient, so a positive outcome only speaks about the lengths checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedOutcome {
    FeasibleUpTo { n: usize, slices: Vec<SliceResult> },
    InfeasibleAt { length: usize, method: SliceMethod },
}

impl BoundedOutcome {
    pub fn label(&self) -> &'static str {
        match self {
            BoundedOutcome::FeasibleUpTo { .. } => "feasible-up-to",
            BoundedOutcome::InfeasibleAt { .. } => "infeasible-at",
        }
    }
}

/// Decides each length slice `0..=n` as an explicit instance.
pub fn bounded_decomposition_check(inst: &AutomaticInstance, n: usize) -> Result<BoundedOutcome> {
    let mut slices = Vec::with_capacity(n + 1);
    for length in 0..=n {
        let e = slice_instance(inst, length)?;
        let (method, sol) = if e.input().len() * e.intermediate().len() <= DEFAULT_BRUTE_FORCE_CAP {
            (SliceMethod::BruteForce, brute_force_solve(&e)?)
        } else if let Ok(w) = trivial_decompose(&e) {
            (SliceMethod::Trivial, Solution::Feasible(w))
        } else {
            (SliceMethod::Sat, solve_explicit(&e)?)
        };
        match sol {
            Solution::Feasible(w) => slices.push(SliceResult { length, method, witness: Some(w) }),
            Solution::Infeasible => return Ok(BoundedOutcome::InfeasibleAt { length, method }),
        }
    }
    Ok(BoundedOutcome::FeasibleUpTo { n, slices })
}
