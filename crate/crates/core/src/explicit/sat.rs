//! A small conflict-driven clause-learning SAT core.
//!
//! Two watched literals, first-UIP learning, non-chronological backjumping.
//! Decisions always pick the lowest-index unassigned variable and try `false`
//! first, without restarts, so runs are fully reproducible.

use crate::error::{Error, Result};

type Lit = u32;

#[inline]
fn lit_of(dimacs: i32) -> Lit {
    let v = dimacs.unsigned_abs() - 1;
    2 * v + u32::from(dimacs < 0)
}

#[inline]
fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

#[inline]
fn neg(l: Lit) -> Lit {
    l ^ 1
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SatStats {
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
    pub learnt: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatOutcome {
    /// Model indexed by 0-based variable (DIMACS variable `v` is entry `v-1`).
    Sat(Vec<bool>),
    Unsat,
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<i8>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    seen: Vec<bool>,
    stats: SatStats,
}

impl Solver {
    fn new(var_count: usize) -> Self {
        Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * var_count],
            assign: vec![-1; var_count],
            level: vec![0; var_count],
            reason: vec![None; var_count],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            seen: vec![false; var_count],
            stats: SatStats::default(),
        }
    }

    #[inline]
    fn value(&self, l: Lit) -> i8 {
        match self.assign[var(l)] {
            -1 => -1,
            a => a ^ (l & 1) as i8,
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = var(l);
        self.assign[v] = 1 ^ (l & 1) as i8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Adds an input clause at level 0. Returns false on immediate conflict.
    fn add_clause(&mut self, mut lits: Vec<Lit>) -> bool {
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == neg(w[1])) {
            return true;
        }
        lits.retain(|&l| self.value(l) != 0);
        if lits.iter().any(|&l| self.value(l) == 1) {
            return true;
        }
        match lits.len() {
            0 => false,
            1 => {
                self.enqueue(lits[0], None);
                self.propagate().is_none()
            }
            _ => {
                self.attach(lits);
                true
            }
        }
    }

    fn attach(&mut self, lits: Vec<Lit>) -> usize {
        let idx = self.clauses.len();
        self.watches[lits[0] as usize].push(idx);
        self.watches[lits[1] as usize].push(idx);
        self.clauses.push(lits);
        idx
    }

    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            let false_lit = neg(p);
            let ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let mut kept = Vec::with_capacity(ws.len());
            let mut conflict = None;
            let mut it = ws.into_iter();
            while let Some(ci) = it.next() {
                let clause = &mut self.clauses[ci];
                if clause[0] == false_lit {
                    clause.swap(0, 1);
                }
                let first = clause[0];
                let first_val = match self.assign[var(first)] {
                    -1 => -1,
                    a => a ^ (first & 1) as i8,
                };
                if first_val == 1 {
                    kept.push(ci);
                    continue;
                }
                let mut moved = false;
                for k in 2..clause.len() {
                    let l = clause[k];
                    let val = match self.assign[var(l)] {
                        -1 => -1,
                        a => a ^ (l & 1) as i8,
                    };
                    if val != 0 {
                        clause.swap(1, k);
                        let w = clause[1] as usize;
                        self.watches[w].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                kept.push(ci);
                if first_val == 0 {
                    conflict = Some(ci);
                    kept.extend(it.by_ref());
                    break;
                }
                self.enqueue(first, Some(ci));
            }
            self.watches[false_lit as usize].extend(kept);
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn analyze(&mut self, conflict: usize) -> (Vec<Lit>, usize) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let mut clause = conflict;
        let current = self.decision_level();
        loop {
            let start = usize::from(p.is_some());
            for j in start..self.clauses[clause].len() {
                let q = self.clauses[clause][j];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] == current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[var(self.trail[idx])] {
                    break;
                }
            }
            let lit = self.trail[idx];
            self.seen[var(lit)] = false;
            p = Some(lit);
            path -= 1;
            if path == 0 {
                break;
            }
            clause = self.reason[var(lit)].expect("implied literal has a reason");
        }
        learnt[0] = neg(p.expect("conflict at positive level"));
        for &l in &learnt[1..] {
            self.seen[var(l)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[var(learnt[1])];
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level];
        for &l in &self.trail[lim..] {
            let v = var(l);
            self.assign[v] = -1;
            self.reason[v] = None;
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level);
        self.qhead = lim;
    }

    fn run(&mut self, conflict_limit: u64) -> Result<SatOutcome> {
        if self.propagate().is_some() {
            return Ok(SatOutcome::Unsat);
        }
        loop {
            if let Some(conflict) = self.propagate() {
                self.stats.conflicts += 1;
                if self.decision_level() == 0 {
                    return Ok(SatOutcome::Unsat);
                }
                if self.stats.conflicts > conflict_limit {
                    return Err(Error::ResourceExhausted {
                        conflicts: self.stats.conflicts,
                        decisions: self.stats.decisions,
                    });
                }
                let (learnt, back) = self.analyze(conflict);
                self.backtrack(back);
                self.stats.learnt += 1;
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let asserting = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(asserting, Some(ci));
                }
            } else {
                let Some(v) = self.assign.iter().position(|&a| a == -1) else {
                    return Ok(SatOutcome::Sat(self.assign.iter().map(|&a| a == 1).collect()));
                };
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(2 * v as u32 + 1, None);
            }
        }
    }
}

/// Solves a CNF given as DIMACS-style signed literals over variables
/// `1..=var_count`.
pub fn solve(var_count: usize, clauses: &[Vec<i32>], conflict_limit: u64) -> Result<(SatOutcome, SatStats)> {
    let mut s = Solver::new(var_count);
    for c in clauses {
        if c.iter().any(|&l| l == 0 || l.unsigned_abs() as usize > var_count) {
            return Err(Error::Format(format!("literal out of range in clause {c:?}")));
        }
        if !s.add_clause(c.iter().map(|&l| lit_of(l)).collect()) {
            return Ok((SatOutcome::Unsat, s.stats));
        }
    }
    let out = s.run(conflict_limit)?;
    Ok((out, s.stats))
}
