//! Explicit finite relations and the total/partial decomposition conditions.

use std::collections::HashMap;
use std::fmt;

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// A named, ordered, finite set of symbol labels.
///
/// Symbol order is fixed at construction; it drives tie-breaking,
/// counterexample selection and serialization.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Domain {
    name: String,
    symbols: Vec<String>,
}

impl Domain {
    pub fn new<S: Into<String>>(
        name: impl Into<String>,
        symbols: impl IntoIterator<Item = S>,
    ) -> Result<Self> {
        let name = name.into();
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        let mut seen = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if let Some(j) = seen.insert(s.as_str(), i) {
                return Err(Error::InvalidInstance(format!(
                    "domain `{name}` repeats symbol `{s}` at positions {j} and {i}"
                )));
            }
        }
        Ok(Domain { name, symbols })
    }

    /// Domain with symbols `{prefix}1 .. {prefix}n`.
    pub fn numbered(name: impl Into<String>, prefix: &str, n: usize) -> Self {
        Domain {
            name: name.into(),
            symbols: (1..=n).map(|k| format!("{prefix}{k}")).collect(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbol(&self, i: usize) -> &str {
        &self.symbols[i]
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s == symbol)
    }

    pub fn index(&self, symbol: &str) -> Result<usize> {
        self.index_of(symbol).ok_or_else(|| Error::UnknownSymbol {
            domain: self.name.clone(),
            symbol: symbol.to_string(),
        })
    }

    /// Same symbols under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Domain { name: name.into(), symbols: self.symbols.clone() }
    }

    pub(crate) fn expect_same(&self, other: &Domain) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch { expected: self.to_string(), found: other.to_string() })
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.symbols.join(","))
    }
}

impl fmt::Debug for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which decomposition condition is requested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// `Img(R1) ⊆ Dom(R2)` and `R1 ∘ R2 = R`.
    Td,
    /// `Img(R1) ⊆ Dom(R2)`, `Dom(R1 ∘ R2) = Dom(R)` and `R1 ∘ R2 ⊆ R`.
    Pd,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Td => "td",
            Mode::Pd => "pd",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "td" => Ok(Mode::Td),
            "pd" => Ok(Mode::Pd),
            other => Err(Error::Format(format!("unknown mode `{other}`, expected td or pd"))),
        }
    }
}

/// Which half of the decomposition a hint provides.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    R1Given,
    R2Given,
}

impl Side {
    pub fn as_str(self) -> &'static str {
        match self {
            Side::R1Given => "r1",
            Side::R2Given => "r2",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "r1" | "t1" => Ok(Side::R1Given),
            "r2" | "t2" => Ok(Side::R2Given),
            other => Err(Error::Format(format!("unknown side `{other}`, expected r1 or r2"))),
        }
    }
}

/// A finite binary relation between two domains, stored as one bit-row per
/// source symbol.
#[derive(Clone, PartialEq, Eq)]
pub struct ExplicitRelation {
    from: Domain,
    to: Domain,
    rows: Vec<BitSet>,
}

impl ExplicitRelation {
    pub fn empty(from: Domain, to: Domain) -> Self {
        let rows = vec![BitSet::new(to.len()); from.len()];
        ExplicitRelation { from, to, rows }
    }

    pub fn full(from: Domain, to: Domain) -> Self {
        let rows = vec![BitSet::full(to.len()); from.len()];
        ExplicitRelation { from, to, rows }
    }

    pub fn from_pairs(
        from: Domain,
        to: Domain,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut r = ExplicitRelation::empty(from, to);
        for (a, b) in pairs {
            if a >= r.from.len() || b >= r.to.len() {
                return Err(Error::InvalidInstance(format!(
                    "pair ({a},{b}) out of range for {} × {}",
                    r.from, r.to
                )));
            }
            r.insert(a, b);
        }
        Ok(r)
    }

    pub fn from_labels<A: AsRef<str>, B: AsRef<str>>(
        from: Domain,
        to: Domain,
        pairs: impl IntoIterator<Item = (A, B)>,
    ) -> Result<Self> {
        let mut r = ExplicitRelation::empty(from, to);
        for (a, b) in pairs {
            let a = r.from.index(a.as_ref())?;
            let b = r.to.index(b.as_ref())?;
            r.insert(a, b);
        }
        Ok(r)
    }

    /// Identity-like relation pairing the k-th symbols of both domains.
    pub fn diagonal(from: Domain, to: Domain) -> Self {
        let n = from.len().min(to.len());
        let mut r = ExplicitRelation::empty(from, to);
        for k in 0..n {
            r.insert(k, k);
        }
        r
    }

    pub(crate) fn from_rows(from: Domain, to: Domain, rows: Vec<BitSet>) -> Self {
        debug_assert_eq!(rows.len(), from.len());
        ExplicitRelation { from, to, rows }
    }

    pub fn from_domain(&self) -> &Domain {
        &self.from
    }

    pub fn to_domain(&self) -> &Domain {
        &self.to
    }

    pub fn insert(&mut self, a: usize, b: usize) {
        self.rows[a].insert(b);
    }

    pub fn remove(&mut self, a: usize, b: usize) {
        self.rows[a].remove(b);
    }

    pub fn contains(&self, a: usize, b: usize) -> bool {
        self.rows[a].contains(b)
    }

    /// `Img_a(R)`.
    pub fn row(&self, a: usize) -> &BitSet {
        &self.rows[a]
    }

    /// All pairs in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().map(move |b| (a, b)))
            .collect()
    }

    pub fn labeled_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(a, b)| (self.from.symbol(a).to_string(), self.to.symbol(b).to_string()))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(BitSet::is_empty)
    }

    pub fn dom(&self) -> BitSet {
        BitSet::from_iter(
            self.from.len(),
            self.rows.iter().enumerate().filter(|(_, r)| !r.is_empty()).map(|(a, _)| a),
        )
    }

    pub fn img(&self) -> BitSet {
        let mut img = BitSet::new(self.to.len());
        for r in &self.rows {
            img.union_with(r);
        }
        img
    }

    pub fn is_subset(&self, other: &ExplicitRelation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    pub fn inverse(&self) -> ExplicitRelation {
        let mut inv = ExplicitRelation::empty(self.to.clone(), self.from.clone());
        for (a, b) in self.pairs() {
            inv.insert(b, a);
        }
        inv
    }

    /// Smallest pair of `self \ other`, assuming equal domains.
    fn first_not_in(&self, other: &ExplicitRelation) -> Option<(usize, usize)> {
        self.rows
            .iter()
            .zip(&other.rows)
            .enumerate()
            .find_map(|(a, (x, y))| x.first_not_in(y).map(|b| (a, b)))
    }

    fn label(&self, (a, b): (usize, usize)) -> Offender {
        Offender::Pair(self.from.symbol(a).to_string(), self.to.symbol(b).to_string())
    }
}

impl fmt::Debug for ExplicitRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labeled_pairs()).finish()
    }
}

/// `{(a,c) | ∃b: (a,b) ∈ r1 ∧ (b,c) ∈ r2}`.
pub fn compose(r1: &ExplicitRelation, r2: &ExplicitRelation) -> Result<ExplicitRelation> {
    r1.to.expect_same(&r2.from)?;
    let rows = r1
        .rows
        .iter()
        .map(|mids| {
            let mut out = BitSet::new(r2.to.len());
            for b in mids.iter() {
                out.union_with(&r2.rows[b]);
            }
            out
        })
        .collect();
    Ok(ExplicitRelation::from_rows(r1.from.clone(), r2.to.clone(), rows))
}

/// A decomposition problem over explicit domains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitInstance {
    input: Domain,
    output: Domain,
    intermediate: Domain,
    relation: ExplicitRelation,
    mode: Mode,
}

impl ExplicitInstance {
    pub fn new(intermediate: Domain, relation: ExplicitRelation, mode: Mode) -> Result<Self> {
        let input = relation.from.clone();
        let output = relation.to.clone();
        if input.is_empty() || output.is_empty() {
            return Err(Error::InvalidInstance("input and output domains must be non-empty".into()));
        }
        if intermediate.is_empty() {
            return Err(Error::InvalidInstance("intermediate domain must have at least one symbol".into()));
        }
        Ok(ExplicitInstance { input, output, intermediate, relation, mode })
    }

    pub fn input(&self) -> &Domain {
        &self.input
    }

    pub fn output(&self) -> &Domain {
        &self.output
    }

    pub fn intermediate(&self) -> &Domain {
        &self.intermediate
    }

    pub fn relation(&self) -> &ExplicitRelation {
        &self.relation
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn with_mode(&self, mode: Mode) -> Self {
        ExplicitInstance { mode, ..self.clone() }
    }

    pub(crate) fn check_hint_domains(&self, hint: &ExplicitRelation, side: Side) -> Result<()> {
        let (from, to) = match side {
            Side::R1Given => (&self.input, &self.intermediate),
            Side::R2Given => (&self.intermediate, &self.output),
        };
        from.expect_same(&hint.from)?;
        to.expect_same(&hint.to)
    }
}

/// A candidate pair `(R1, R2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExplicitWitness {
    pub r1: ExplicitRelation,
    pub r2: ExplicitRelation,
}

/// What a failed condition check points at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Offender {
    Symbol(String),
    Pair(String, String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// A symbol of `Img(R1)` is missing from `Dom(R2)`.
    ImageNotInDomain,
    /// `Dom(R1 ∘ R2)` differs from `Dom(R)` at the reported input.
    DomainMismatch,
    /// The reported pair is in `R1 ∘ R2` but not in `R`.
    CompositionExceeds,
    /// The reported pair is in `R` but not in `R1 ∘ R2`.
    CompositionMissing,
}

impl ViolationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationKind::ImageNotInDomain => "image-not-in-domain",
            ViolationKind::DomainMismatch => "domain-mismatch",
            ViolationKind::CompositionExceeds => "composition-exceeds",
            ViolationKind::CompositionMissing => "composition-missing",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub offender: Offender,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Violated(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    fn violated(kind: ViolationKind, offender: Offender) -> Self {
        Verdict::Violated(Violation { kind, offender })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Feasible(ExplicitWitness),
    Infeasible,
}

impl Solution {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Solution::Feasible(_))
    }

    pub fn witness(&self) -> Option<&ExplicitWitness> {
        match self {
            Solution::Feasible(w) => Some(w),
            Solution::Infeasible => None,
        }
    }
}

/// Checks the TD or PD condition (per the instance's mode) for `w`.
pub fn check_conditions(inst: &ExplicitInstance, w: &ExplicitWitness) -> Result<Verdict> {
    inst.check_hint_domains(&w.r1, Side::R1Given)?;
    inst.check_hint_domains(&w.r2, Side::R2Given)?;
    Ok(check_pair(&inst.relation, inst.mode, &w.r1, &w.r2))
}

/// Condition check with domains already validated.
pub(crate) fn check_pair(
    r: &ExplicitRelation,
    mode: Mode,
    r1: &ExplicitRelation,
    r2: &ExplicitRelation,
) -> Verdict {
    if let Some(b) = r1.img().first_not_in(&r2.dom()) {
        return Verdict::violated(
            ViolationKind::ImageNotInDomain,
            Offender::Symbol(r1.to.symbol(b).to_string()),
        );
    }
    let comp = compose(r1, r2).expect("domains validated by caller");
    match mode {
        Mode::Td => {
            let extra = comp.first_not_in(r);
            let missing = r.first_not_in(&comp);
            match (extra, missing) {
                (None, None) => Verdict::Holds,
                (Some(e), Some(m)) if m < e => {
                    Verdict::violated(ViolationKind::CompositionMissing, r.label(m))
                }
                (Some(e), _) => Verdict::violated(ViolationKind::CompositionExceeds, r.label(e)),
                (None, Some(m)) => Verdict::violated(ViolationKind::CompositionMissing, r.label(m)),
            }
        }
        Mode::Pd => {
            let (dc, dr) = (comp.dom(), r.dom());
            let bad = match (dc.first_not_in(&dr), dr.first_not_in(&dc)) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
            if let Some(i) = bad {
                return Verdict::violated(
                    ViolationKind::DomainMismatch,
                    Offender::Symbol(r.from.symbol(i).to_string()),
                );
            }
            match comp.first_not_in(r) {
                Some(e) => Verdict::violated(ViolationKind::CompositionExceeds, r.label(e)),
                None => Verdict::Holds,
            }
        }
    }
}

/// The injection-based decomposition available whenever the intermediate
/// domain is at least as large as the input or the output domain.
pub fn trivial_decompose(inst: &ExplicitInstance) -> Result<ExplicitWitness> {
    let (ni, nb, no) = (inst.input.len(), inst.intermediate.len(), inst.output.len());
    let r = &inst.relation;
    let mut r1 = ExplicitRelation::empty(inst.input.clone(), inst.intermediate.clone());
    let mut r2 = ExplicitRelation::empty(inst.intermediate.clone(), inst.output.clone());
    if nb >= no {
        // g(o) = o-th intermediate symbol
        for o in 0..no {
            r2.insert(o, o);
        }
        for (i, o) in r.pairs() {
            r1.insert(i, o);
        }
    } else if nb >= ni {
        // g(i) = i-th intermediate symbol, restricted to Dom(R)
        for i in r.dom().iter() {
            r1.insert(i, i);
        }
        for (i, o) in r.pairs() {
            r2.insert(i, o);
        }
    } else {
        return Err(Error::NoTrivialDecomposition { intermediate: nb, input: ni, output: no });
    }
    Ok(ExplicitWitness { r1, r2 })
}

pub const DEFAULT_BRUTE_FORCE_CAP: usize = 20;

/// Exhaustive search over every `R1 ⊆ I × B`, pairing each with its maximal
/// complement. Candidates are visited in increasing bitmask order (bit
/// `i·|B| + b` stands for `(i, b)`), and the first feasible one is returned.
pub fn brute_force_solve(inst: &ExplicitInstance) -> Result<Solution> {
    brute_force_solve_capped(inst, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_solve_capped(inst: &ExplicitInstance, cap: usize) -> Result<Solution> {
    let (ni, nb) = (inst.input.len(), inst.intermediate.len());
    let cells = ni * nb;
    if cells > cap || cells >= 64 {
        return Err(Error::CapExceeded { cap: "brute_force_cells", limit: cap.min(63), requested: cells });
    }
    let r = &inst.relation;
    let no = inst.output.len();
    let full = BitSet::full(no);
    let mut r1_rows = vec![BitSet::new(nb); ni];
    let mut col_inputs: Vec<Vec<usize>> = vec![Vec::new(); nb];
    for mask in 0u64..(1u64 << cells) {
        for row in r1_rows.iter_mut() {
            *row = BitSet::new(nb);
        }
        for c in col_inputs.iter_mut() {
            c.clear();
        }
        for k in 0..cells {
            if mask >> k & 1 == 1 {
                let (i, b) = (k / nb, k % nb);
                r1_rows[i].insert(b);
                col_inputs[b].push(i);
            }
        }
        // maximal R2 for this R1
        let r2_rows: Vec<BitSet> = col_inputs
            .iter()
            .map(|is| {
                let mut row = full.clone();
                for &i in is {
                    row.intersect_with(r.row(i));
                }
                row
            })
            .collect();
        let ok = (0..nb).all(|b| col_inputs[b].is_empty() || !r2_rows[b].is_empty())
            && (0..ni).all(|i| {
                let mut comp = BitSet::new(no);
                for b in r1_rows[i].iter() {
                    comp.union_with(&r2_rows[b]);
                }
                match inst.mode {
                    Mode::Td => comp == *r.row(i),
                    Mode::Pd => comp.is_empty() == r.row(i).is_empty(),
                }
            });
        if ok {
            let w = ExplicitWitness {
                r1: ExplicitRelation::from_rows(inst.input.clone(), inst.intermediate.clone(), r1_rows),
                r2: ExplicitRelation::from_rows(inst.intermediate.clone(), inst.output.clone(), r2_rows),
            };
            debug_assert!(check_conditions(inst, &w)?.holds());
            return Ok(Solution::Feasible(w));
        }
    }
    Ok(Solution::Infeasible)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn dom(name: &str, syms: &[&str]) -> Domain {
        Domain::new(name, syms.iter().copied()).unwrap()
    }

    /// The 2×1×2 identity instance.
    pub fn example_instance(mode: Mode) -> ExplicitInstance {
        let i = dom("I", &["i1", "i2"]);
        let o = dom("O", &["o1", "o2"]);
        let r = ExplicitRelation::from_labels(i, o, [("i1", "o1"), ("i2", "o2")]).unwrap();
        ExplicitInstance::new(dom("B", &["b"]), r, mode).unwrap()
    }

    #[test]
    fn compose_examples() {
        let i = dom("I", &["i1", "i2"]);
        let b = dom("B", &["b1"]);
        let o = dom("O", &["o1"]);
        let empty = ExplicitRelation::empty(i.clone(), b.clone());
        let r2 = ExplicitRelation::from_labels(b.clone(), o.clone(), [("b1", "o1")]).unwrap();
        assert!(compose(&empty, &r2).unwrap().is_empty());

        let r1 = ExplicitRelation::from_labels(i.clone(), b.clone(), [("i1", "b1"), ("i2", "b1")]).unwrap();
        let c = compose(&r1, &r2).unwrap();
        assert_eq!(c.labeled_pairs(), vec![("i1".into(), "o1".into()), ("i2".into(), "o1".into())]);

        let two = dom("T", &["x", "y"]);
        let id = ExplicitRelation::diagonal(two.clone(), two.clone());
        assert_eq!(compose(&id, &id).unwrap(), id);
    }

    #[test]
    fn compose_rejects_mismatch() {
        let a = dom("A", &["a"]);
        let b = dom("B", &["b"]);
        let r1 = ExplicitRelation::empty(a.clone(), a.clone());
        let r2 = ExplicitRelation::empty(b.clone(), b.clone());
        let err = compose(&r1, &r2).unwrap_err();
        match err {
            Error::DomainMismatch { expected, found } => {
                assert!(expected.starts_with('A') && found.starts_with('B'));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn example_violation_reports_smallest_pair() {
        let inst = example_instance(Mode::Td);
        let r1 = ExplicitRelation::from_labels(inst.input().clone(), inst.intermediate().clone(), [("i1", "b"), ("i2", "b")]).unwrap();
        let r2 = ExplicitRelation::from_labels(inst.intermediate().clone(), inst.output().clone(), [("b", "o1")]).unwrap();
        let v = check_conditions(&inst, &ExplicitWitness { r1, r2 }).unwrap();
        assert_eq!(
            v,
            Verdict::Violated(Violation {
                kind: ViolationKind::CompositionExceeds,
                offender: Offender::Pair("i2".into(), "o1".into()),
            })
        );
    }

    #[test]
    fn empty_relation_holds_in_both_modes() {
        for mode in [Mode::Td, Mode::Pd] {
            let i = dom("I", &["i1"]);
            let o = dom("O", &["o1"]);
            let b = dom("B", &["b"]);
            let inst = ExplicitInstance::new(b.clone(), ExplicitRelation::empty(i.clone(), o.clone()), mode).unwrap();
            let w = ExplicitWitness {
                r1: ExplicitRelation::empty(i, b.clone()),
                r2: ExplicitRelation::empty(b, o),
            };
            assert!(check_conditions(&inst, &w).unwrap().holds());
        }
    }

    #[test]
    fn full_relations_hold() {
        let i = dom("I", &["i1", "i2", "i3"]);
        let o = dom("O", &["o1", "o2"]);
        let b = dom("B", &["b1", "b2"]);
        let inst = ExplicitInstance::new(b.clone(), ExplicitRelation::full(i.clone(), o.clone()), Mode::Td).unwrap();
        let w = ExplicitWitness {
            r1: ExplicitRelation::full(i, b.clone()),
            r2: ExplicitRelation::full(b, o),
        };
        assert!(check_conditions(&inst, &w).unwrap().holds());
    }

    #[test]
    fn image_outside_domain_is_reported() {
        let inst = example_instance(Mode::Pd);
        let r1 = ExplicitRelation::from_labels(inst.input().clone(), inst.intermediate().clone(), [("i1", "b")]).unwrap();
        let r2 = ExplicitRelation::empty(inst.intermediate().clone(), inst.output().clone());
        let v = check_conditions(&inst, &ExplicitWitness { r1, r2 }).unwrap();
        assert!(matches!(v, Verdict::Violated(Violation { kind: ViolationKind::ImageNotInDomain, .. })));
    }

    #[test]
    fn trivial_decomposition_cases() {
        // |B| = |O| = 2, identity
        let two = dom("I", &["i1", "i2"]);
        let o = dom("O", &["o1", "o2"]);
        let inst = ExplicitInstance::new(dom("B", &["b1", "b2"]), ExplicitRelation::diagonal(two.clone(), o.clone()), Mode::Td).unwrap();
        let w = trivial_decompose(&inst).unwrap();
        assert_eq!(w.r2.labeled_pairs(), vec![("b1".into(), "o1".into()), ("b2".into(), "o2".into())]);
        assert!(check_conditions(&inst, &w).unwrap().holds());

        // empty relation
        let inst = ExplicitInstance::new(dom("B", &["b1", "b2"]), ExplicitRelation::empty(two.clone(), o.clone()), Mode::Td).unwrap();
        let w = trivial_decompose(&inst).unwrap();
        assert!(w.r1.is_empty());
        assert_eq!(w.r2.len(), 2);

        // mirrored: |B| = 3 > |I| = 2, |O| = 4
        let o4 = dom("O", &["o1", "o2", "o3", "o4"]);
        let r = ExplicitRelation::from_labels(two.clone(), o4.clone(), [("i1", "o1"), ("i1", "o3"), ("i2", "o4")]).unwrap();
        let inst = ExplicitInstance::new(dom("B", &["b1", "b2", "b3"]), r, Mode::Td).unwrap();
        assert!(check_conditions(&inst, &trivial_decompose(&inst).unwrap()).unwrap().holds());

        // mirrored with partial domain
        let i3 = dom("I", &["i1", "i2", "i3"]);
        let r = ExplicitRelation::from_labels(i3.clone(), o4, [("i3", "o2")]).unwrap();
        let inst = ExplicitInstance::new(dom("B", &["b1", "b2", "b3"]), r, Mode::Td).unwrap();
        assert!(check_conditions(&inst, &trivial_decompose(&inst).unwrap()).unwrap().holds());
    }

    #[test]
    fn trivial_decomposition_refuses_small_channel() {
        let inst = example_instance(Mode::Td);
        assert!(matches!(trivial_decompose(&inst), Err(Error::NoTrivialDecomposition { .. })));
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_solve(&example_instance(Mode::Td)).unwrap(), Solution::Infeasible);
        assert_eq!(brute_force_solve(&example_instance(Mode::Pd)).unwrap(), Solution::Infeasible);

        let i = dom("I", &["i1", "i2"]);
        let o = dom("O", &["o1", "o2"]);
        let b = dom("B", &["b"]);
        let inst = ExplicitInstance::new(b.clone(), ExplicitRelation::full(i.clone(), o.clone()), Mode::Td).unwrap();
        let w = brute_force_solve(&inst).unwrap().witness().cloned().unwrap();
        assert_eq!(w.r1, ExplicitRelation::full(i, b.clone()));
        assert_eq!(w.r2, ExplicitRelation::full(b, o));
    }

    #[test]
    fn brute_force_cap() {
        let i = Domain::numbered("I", "i", 7);
        let o = Domain::numbered("O", "o", 7);
        let inst = ExplicitInstance::new(Domain::numbered("B", "b", 3), ExplicitRelation::empty(i, o), Mode::Td).unwrap();
        assert!(matches!(brute_force_solve(&inst), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn instance_validation() {
        let i = dom("I", &["i1"]);
        let o = dom("O", &["o1"]);
        let empty_b = Domain::new("B", Vec::<String>::new()).unwrap();
        assert!(ExplicitInstance::new(empty_b, ExplicitRelation::empty(i, o), Mode::Td).is_err());
        assert!(Domain::new("X", ["a", "a"]).is_err());
    }
}
