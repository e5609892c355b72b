//! Relations over bit vectors given by Boolean circuits.
//!
//! A relation circuit reads the input word's bits first and the output
//! word's bits second. Bit vectors are written MSB-first, so the symbol
//! `"01"` for a 2-bit domain is the value 1 and lexicographic order agrees
//! with numeric order.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::relation::{Domain, ExplicitInstance, ExplicitRelation, Mode, Side, ViolationKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gate {
    Const(bool),
    Input(usize),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Xor(Vec<usize>),
}

impl Gate {
    pub fn op(&self) -> &'static str {
        match self {
            Gate::Const(_) => "const",
            Gate::Input(_) => "input",
            Gate::Not(_) => "not",
            Gate::And(_) => "and",
            Gate::Or(_) => "or",
            Gate::Xor(_) => "xor",
        }
    }

    fn operands(&self) -> &[usize] {
        match self {
            Gate::Const(_) | Gate::Input(_) => &[],
            Gate::Not(a) => std::slice::from_ref(a),
            Gate::And(a) | Gate::Or(a) | Gate::Xor(a) => a,
        }
    }
}

/// A gate list in topological order with a designated output gate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolCircuit {
    inputs: usize,
    gates: Vec<Gate>,
    output: usize,
}

impl BoolCircuit {
    pub fn new(inputs: usize, gates: Vec<Gate>, output: usize) -> Result<Self> {
        for (k, g) in gates.iter().enumerate() {
            if let Gate::Input(i) = g {
                if *i >= inputs {
                    return Err(Error::InvalidInstance(format!("gate {k} reads input {i} of {inputs}")));
                }
            }
            if let Some(&a) = g.operands().iter().find(|&&a| a >= k) {
                return Err(Error::InvalidInstance(format!("gate {k} uses gate {a}, which does not precede it")));
            }
        }
        if output >= gates.len() {
            return Err(Error::InvalidInstance(format!("output gate {output} out of range")));
        }
        Ok(BoolCircuit { inputs, gates, output })
    }

    pub fn constant(inputs: usize, value: bool) -> Self {
        BoolCircuit { inputs, gates: vec![Gate::Const(value)], output: 0 }
    }

    /// Bitwise equality of the first and second halves of a `2n`-bit input.
    pub fn equality(n: usize) -> Self {
        let mut gates: Vec<Gate> = (0..2 * n).map(Gate::Input).collect();
        let mut eqs = Vec::with_capacity(n);
        for k in 0..n {
            gates.push(Gate::Xor(vec![k, n + k]));
            gates.push(Gate::Not(gates.len() - 1));
            eqs.push(gates.len() - 1);
        }
        gates.push(Gate::And(eqs));
        let output = gates.len() - 1;
        BoolCircuit { inputs: 2 * n, gates, output }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn output(&self) -> usize {
        self.output
    }

    pub fn eval(&self, bits: &[bool]) -> Result<bool> {
        if bits.len() != self.inputs {
            return Err(Error::ArityMismatch { expected: self.inputs, found: bits.len() });
        }
        Ok(self.eval_with(|i| bits[i], &mut Vec::new()))
    }

    fn eval_with(&self, bit: impl Fn(usize) -> bool, vals: &mut Vec<bool>) -> bool {
        vals.clear();
        for g in &self.gates {
            let v = match g {
                Gate::Const(c) => *c,
                Gate::Input(i) => bit(*i),
                Gate::Not(a) => !vals[*a],
                Gate::And(a) => a.iter().all(|&k| vals[k]),
                Gate::Or(a) => a.iter().any(|&k| vals[k]),
                Gate::Xor(a) => a.iter().fold(false, |acc, &k| acc ^ vals[k]),
            };
            vals.push(v);
        }
        vals[self.output]
    }

    /// Evaluates on the concatenation of `x` (`nx` bits) and `y` (`ny` bits).
    fn eval_pair(&self, x: u64, nx: usize, y: u64, ny: usize, vals: &mut Vec<bool>) -> bool {
        self.eval_with(
            |k| {
                if k < nx {
                    (x >> (nx - 1 - k)) & 1 == 1
                } else {
                    (y >> (ny - 1 - (k - nx))) & 1 == 1
                }
            },
            vals,
        )
    }

    /// Truth table indexed by `x·2^ny + y`.
    fn table(&self, nx: usize, ny: usize) -> BitSet {
        let mut vals = Vec::new();
        let mut t = BitSet::new(1 << (nx + ny));
        for x in 0..1u64 << nx {
            for y in 0..1u64 << ny {
                if self.eval_pair(x, nx, y, ny, &mut vals) {
                    t.insert(((x << ny) | y) as usize);
                }
            }
        }
        t
    }
}

/// Symbolic instance: `C_R` over `n_i + n_o` bits and an intermediate domain of `n_b` bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicInstance {
    pub n_i: usize,
    pub n_o: usize,
    pub n_b: usize,
    pub relation: BoolCircuit,
    pub mode: Mode,
}

pub const EXPAND_IO_CAP: usize = 20;
pub const EXPAND_B_CAP: usize = 6;
pub const QUANTIFIED_BITS_CAP: usize = 24;

impl SymbolicInstance {
    pub fn new(n_i: usize, n_o: usize, n_b: usize, relation: BoolCircuit, mode: Mode) -> Result<Self> {
        if n_i == 0 || n_o == 0 || n_b == 0 {
            return Err(Error::InvalidInstance("bit widths must be positive".into()));
        }
        if relation.inputs != n_i + n_o {
            return Err(Error::ArityMismatch { expected: n_i + n_o, found: relation.inputs });
        }
        Ok(SymbolicInstance { n_i, n_o, n_b, relation, mode })
    }

    fn hint_widths(&self, side: Side) -> (usize, usize) {
        match side {
            Side::R1Given => (self.n_i, self.n_b),
            Side::R2Given => (self.n_b, self.n_o),
        }
    }
}

/// All `n`-bit strings, MSB-first, in lexicographic order.
pub fn bit_domain(name: &str, n: usize) -> Domain {
    let symbols = (0..1u64 << n).map(|v| bits_of(v, n));
    Domain::new(name, symbols).expect("bit strings are distinct")
}

pub fn bits_of(v: u64, n: usize) -> String {
    (0..n).map(|k| if (v >> (n - 1 - k)) & 1 == 1 { '1' } else { '0' }).collect()
}

fn expand_circuit(c: &BoolCircuit, from: Domain, nx: usize, to: Domain, ny: usize) -> ExplicitRelation {
    let t = c.table(nx, ny);
    let pairs = t.iter().map(|k| (k >> ny, k & ((1 << ny) - 1)));
    ExplicitRelation::from_pairs(from, to, pairs).expect("indices in range")
}

pub fn expand_to_explicit(inst: &SymbolicInstance) -> Result<ExplicitInstance> {
    if inst.n_i + inst.n_o > EXPAND_IO_CAP {
        return Err(Error::CapExceeded { cap: "expand-io-bits", limit: EXPAND_IO_CAP, requested: inst.n_i + inst.n_o });
    }
    if inst.n_b > EXPAND_B_CAP {
        return Err(Error::CapExceeded { cap: "expand-b-bits", limit: EXPAND_B_CAP, requested: inst.n_b });
    }
    let r = expand_circuit(&inst.relation, bit_domain("I", inst.n_i), inst.n_i, bit_domain("O", inst.n_o), inst.n_o);
    ExplicitInstance::new(bit_domain("B", inst.n_b), r, inst.mode)
}

/// Expands a hint circuit over the domains of `expand_to_explicit(inst)`.
pub fn expand_hint(inst: &SymbolicInstance, hint: &BoolCircuit, side: Side) -> Result<ExplicitRelation> {
    let (nx, ny) = inst.hint_widths(side);
    if hint.inputs != nx + ny {
        return Err(Error::ArityMismatch { expected: nx + ny, found: hint.inputs });
    }
    if nx + ny > EXPAND_IO_CAP {
        return Err(Error::CapExceeded { cap: "expand-io-bits", limit: EXPAND_IO_CAP, requested: nx + ny });
    }
    Ok(match side {
        Side::R1Given => expand_circuit(hint, bit_domain("I", nx), nx, bit_domain("B", ny), ny),
        Side::R2Given => expand_circuit(hint, bit_domain("B", nx), nx, bit_domain("O", ny), ny),
    })
}

/// A falsifying assignment for one of the hint formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicCounterexample {
    /// 1: image in domain, 2: composition equality, 3: domain equality, 4: containment.
    pub formula: u8,
    pub kind: ViolationKind,
    /// Universally quantified variables and their values, as bit strings.
    pub assignment: Vec<(&'static str, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymbolicVerdict {
    Holds,
    Violated(SymbolicCounterexample),
}

impl SymbolicVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, SymbolicVerdict::Holds)
    }
}

struct Ctx {
    ni: usize,
    nb: usize,
    no: usize,
    r: BitSet,
    h: BitSet,
    side: Side,
}

impl Ctx {
    fn r(&self, i: u64, o: u64) -> bool {
        self.r.contains(((i << self.no) | o) as usize)
    }

    fn r1_hint(&self, i: u64, b: u64) -> bool {
        self.h.contains(((i << self.nb) | b) as usize)
    }

    fn r2_hint(&self, b: u64, o: u64) -> bool {
        self.h.contains(((b << self.no) | o) as usize)
    }

    /// `C_R2'(b,o) = ∀i' (C_R1(i',b) → C_R(i',o))`
    fn r2_max(&self, b: u64, o: u64) -> bool {
        (0..1u64 << self.ni).all(|i| !self.r1_hint(i, b) || self.r(i, o))
    }

    /// `C_R1'(i,b) = ∃o C_R2(b,o) ∧ ∀o' (C_R2(b,o') → C_R(i,o'))`
    fn r1_max(&self, i: u64, b: u64) -> bool {
        let outs = 0..1u64 << self.no;
        outs.clone().any(|o| self.r2_hint(b, o)) && outs.into_iter().all(|o| !self.r2_hint(b, o) || self.r(i, o))
    }

    fn r1(&self, i: u64, b: u64) -> bool {
        match self.side {
            Side::R1Given => self.r1_hint(i, b),
            Side::R2Given => self.r1_max(i, b),
        }
    }

    fn r2(&self, b: u64, o: u64) -> bool {
        match self.side {
            Side::R1Given => self.r2_max(b, o),
            Side::R2Given => self.r2_hint(b, o),
        }
    }

    fn comp(&self, i: u64, o: u64) -> bool {
        (0..1u64 << self.nb).any(|b| self.r1(i, b) && self.r2(b, o))
    }

    fn fail(&self, formula: u8, kind: ViolationKind, vars: &[(&'static str, u64)]) -> SymbolicVerdict {
        let width = |v: &str| match v {
            "i" => self.ni,
            "b" => self.nb,
            _ => self.no,
        };
        SymbolicVerdict::Violated(SymbolicCounterexample {
            formula,
            kind,
            assignment: vars.iter().map(|&(v, x)| (v, bits_of(x, width(v)))).collect(),
        })
    }
}

/// Decides whether `hint` extends to a decomposition by evaluating the
/// quantified hint formulas by enumeration. The complement is expressed
/// through `C_R` and the hint and never built as a circuit.
///
/// TD checks formulas 1 and 2, PD checks 1, 3 and 4, in that order, and the
/// first falsifying assignment in enumeration order is reported.
pub fn verify_hint_symbolic(inst: &SymbolicInstance, hint: &BoolCircuit, side: Side) -> Result<SymbolicVerdict> {
    let (nx, ny) = inst.hint_widths(side);
    if hint.inputs != nx + ny {
        return Err(Error::ArityMismatch { expected: nx + ny, found: hint.inputs });
    }
    let (ni, nb, no) = (inst.n_i, inst.n_b, inst.n_o);
    let nesting = match side {
        Side::R1Given => 2 * ni + nb + no,
        Side::R2Given => ni + nb + 2 * no,
    };
    if nesting > QUANTIFIED_BITS_CAP {
        return Err(Error::CapExceeded { cap: "quantified-bits", limit: QUANTIFIED_BITS_CAP, requested: nesting });
    }
    let cx = Ctx { ni, nb, no, r: inst.relation.table(ni, no), h: hint.table(nx, ny), side };
    let (is, bs, os) = (0..1u64 << ni, 0..1u64 << nb, 0..1u64 << no);

    // (1) ∀i,b ∃o (R1(i,b) → R2(b,o))
    for i in is.clone() {
        for b in bs.clone() {
            if cx.r1(i, b) && !os.clone().any(|o| cx.r2(b, o)) {
                return Ok(cx.fail(1, ViolationKind::ImageNotInDomain, &[("i", i), ("b", b)]));
            }
        }
    }
    match inst.mode {
        Mode::Td => {
            // (2) ∀i,o (R(i,o) ↔ ∃b (R1(i,b) ∧ R2(b,o)))
            for i in is.clone() {
                for o in os.clone() {
                    match (cx.r(i, o), cx.comp(i, o)) {
                        (true, false) => return Ok(cx.fail(2, ViolationKind::CompositionMissing, &[("i", i), ("o", o)])),
                        (false, true) => return Ok(cx.fail(2, ViolationKind::CompositionExceeds, &[("i", i), ("o", o)])),
                        _ => {}
                    }
                }
            }
        }
        Mode::Pd => {
            // (3) ∀i ((∃o R(i,o)) ↔ ∃b,o (R1(i,b) ∧ R2(b,o)))
            for i in is.clone() {
                if os.clone().any(|o| cx.r(i, o)) != os.clone().any(|o| cx.comp(i, o)) {
                    return Ok(cx.fail(3, ViolationKind::DomainMismatch, &[("i", i)]));
                }
            }
            // (4) ∀i,b,o (R1(i,b) ∧ R2(b,o) → R(i,o))
            for i in is {
                for b in bs.clone() {
                    if !cx.r1(i, b) {
                        continue;
                    }
                    for o in os.clone() {
                        if cx.r2(b, o) && !cx.r(i, o) {
                            return Ok(cx.fail(4, ViolationKind::CompositionExceeds, &[("i", i), ("b", b), ("o", o)]));
                        }
                    }
                }
            }
        }
    }
    Ok(SymbolicVerdict::Holds)
}
