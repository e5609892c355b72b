//! JSON file formats.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::automata::{Dfa, TrackAlphabet};
use crate::automatic::{AutoCounterexample, AutomaticInstance, TrackWord};
use crate::circuit::{BoolCircuit, Gate, SymbolicCounterexample, SymbolicInstance};
use crate::error::{Error, Result};
use crate::explicit::VarMap;
use crate::relation::{
    Domain, ExplicitInstance, ExplicitRelation, ExplicitWitness, Mode, Offender, Side, Verdict, Violation,
};
use crate::strategic::MooreTransducer;

fn mode_of(m: Option<&str>) -> Result<Mode> {
    m.map_or(Ok(Mode::Td), Mode::parse)
}

#[derive(Serialize, Deserialize)]
struct ExplicitInstanceDoc {
    input: Vec<String>,
    output: Vec<String>,
    intermediate: Vec<String>,
    pairs: Vec<(String, String)>,
    #[serde(default)]
    mode: Option<String>,
}

pub fn parse_explicit_instance(v: &Value) -> Result<ExplicitInstance> {
    let doc: ExplicitInstanceDoc = serde_json::from_value(v.clone())?;
    let input = Domain::new("I", doc.input)?;
    let output = Domain::new("O", doc.output)?;
    let b = Domain::new("B", doc.intermediate)?;
    let r = ExplicitRelation::from_labels(input, output, doc.pairs)?;
    ExplicitInstance::new(b, r, mode_of(doc.mode.as_deref())?)
}

pub fn explicit_instance_to_json(inst: &ExplicitInstance) -> Value {
    json!({
        "input": inst.input().symbols(),
        "output": inst.output().symbols(),
        "intermediate": inst.intermediate().symbols(),
        "pairs": pairs_json(inst.relation()),
        "mode": inst.mode().as_str(),
    })
}

pub fn pairs_json(r: &ExplicitRelation) -> Value {
    Value::from(r.labeled_pairs().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>())
}

/// Pairs of a hint file: `{"pairs": ...}`, `{"r1": ...}` or `{"r2": ...}`,
/// or a bare array.
pub fn parse_hint(v: &Value, inst: &ExplicitInstance, side: Side) -> Result<ExplicitRelation> {
    let pairs = match v {
        Value::Array(_) => v,
        Value::Object(o) => {
            let key = match side {
                Side::R1Given => "r1",
                Side::R2Given => "r2",
            };
            o.get("pairs").or_else(|| o.get(key)).ok_or_else(|| Error::Format("hint needs a `pairs` array".into()))?
        }
        _ => return Err(Error::Format("hint must be an object or an array of pairs".into())),
    };
    let pairs: Vec<(String, String)> = serde_json::from_value(pairs.clone())?;
    let (from, to) = match side {
        Side::R1Given => (inst.input(), inst.intermediate()),
        Side::R2Given => (inst.intermediate(), inst.output()),
    };
    ExplicitRelation::from_labels(from.clone(), to.clone(), pairs)
}

pub fn witness_to_json(inst: &ExplicitInstance, w: &ExplicitWitness) -> Value {
    let mut v = explicit_instance_to_json(inst);
    v["r1"] = pairs_json(&w.r1);
    v["r2"] = pairs_json(&w.r2);
    v
}

pub fn parse_witness(v: &Value, inst: &ExplicitInstance) -> Result<ExplicitWitness> {
    let get = |k: &str| v.get(k).cloned().ok_or_else(|| Error::Format(format!("witness needs `{k}`")));
    let r1: Vec<(String, String)> = serde_json::from_value(get("r1")?)?;
    let r2: Vec<(String, String)> = serde_json::from_value(get("r2")?)?;
    Ok(ExplicitWitness {
        r1: ExplicitRelation::from_labels(inst.input().clone(), inst.intermediate().clone(), r1)?,
        r2: ExplicitRelation::from_labels(inst.intermediate().clone(), inst.output().clone(), r2)?,
    })
}

pub fn offender_json(o: &Offender) -> Value {
    match o {
        Offender::Symbol(s) => json!(s),
        Offender::Pair(a, b) => json!([a, b]),
    }
}

pub fn violation_json(v: &Violation) -> Value {
    json!({ "kind": v.kind.as_str(), "offender": offender_json(&v.offender) })
}

pub fn verdict_counterexample(v: &Verdict) -> Value {
    match v {
        Verdict::Holds => Value::Null,
        Verdict::Violated(x) => violation_json(x),
    }
}

pub fn var_map_json(m: &VarMap) -> Value {
    m.to_json()
}

#[derive(Serialize, Deserialize)]
struct GateDoc {
    op: String,
    #[serde(default)]
    args: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CircuitDoc {
    inputs: usize,
    gates: Vec<GateDoc>,
    output: usize,
}

pub fn parse_circuit(v: &Value) -> Result<BoolCircuit> {
    let doc: CircuitDoc = serde_json::from_value(v.clone())?;
    let gates = doc
        .gates
        .into_iter()
        .enumerate()
        .map(|(k, g)| {
            let a: Vec<usize> = g.args.iter().map(|&x| x as usize).collect();
            let one = |name: &str| match a.as_slice() {
                [x] => Ok(*x),
                _ => Err(Error::Format(format!("gate {k}: `{name}` takes one argument"))),
            };
            Ok(match g.op.as_str() {
                "const" => Gate::Const(one("const")? != 0),
                "input" => Gate::Input(one("input")?),
                "not" => Gate::Not(one("not")?),
                "and" => Gate::And(a),
                "or" => Gate::Or(a),
                "xor" => Gate::Xor(a),
                other => return Err(Error::Format(format!("gate {k}: unknown op `{other}`"))),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    BoolCircuit::new(doc.inputs, gates, doc.output)
}

pub fn circuit_to_json(c: &BoolCircuit) -> Value {
    let gates: Vec<Value> = c
        .gates()
        .iter()
        .map(|g| {
            let args: Vec<usize> = match g {
                Gate::Const(b) => vec![*b as usize],
                Gate::Input(i) | Gate::Not(i) => vec![*i],
                Gate::And(a) | Gate::Or(a) | Gate::Xor(a) => a.clone(),
            };
            json!({ "op": g.op(), "args": args })
        })
        .collect();
    json!({ "inputs": c.inputs(), "gates": gates, "output": c.output() })
}

pub fn parse_symbolic_instance(v: &Value) -> Result<SymbolicInstance> {
    let num = |k: &str| {
        v.get(k).and_then(Value::as_u64).map(|x| x as usize).ok_or_else(|| Error::Format(format!("missing `{k}`")))
    };
    let relation = parse_circuit(v.get("relation").ok_or_else(|| Error::Format("missing `relation`".into()))?)?;
    SymbolicInstance::new(num("n_i")?, num("n_o")?, num("n_b")?, relation, mode_of(v.get("mode").and_then(Value::as_str))?)
}

pub fn symbolic_counterexample_json(cx: &SymbolicCounterexample) -> Value {
    let assignment: serde_json::Map<String, Value> = cx.assignment.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
    json!({ "formula": cx.formula, "kind": cx.kind.as_str(), "assignment": assignment })
}

#[derive(Serialize, Deserialize)]
struct AutomatonDoc {
    tracks: Vec<(String, Vec<String>)>,
    states: usize,
    initial: usize,
    #[serde(default)]
    accepting: Vec<usize>,
    #[serde(default)]
    transitions: Vec<(usize, Vec<String>, usize)>,
}

/// Reads a DFA; missing transitions go to a rejecting sink.
pub fn parse_dfa(v: &Value) -> Result<Dfa> {
    let doc: AutomatonDoc = serde_json::from_value(v.clone())?;
    let tracks = doc
        .tracks
        .into_iter()
        .map(|(name, syms)| Ok((name.clone(), Domain::new(name, syms)?)))
        .collect::<Result<Vec<_>>>()?;
    let al = TrackAlphabet::new(tracks)?;
    let transitions = doc
        .transitions
        .iter()
        .map(|(p, labels, q)| Ok((*p, al.parse_letter(labels)?, *q)))
        .collect::<Result<Vec<_>>>()?;
    Dfa::new(al, doc.states, doc.initial, doc.accepting, transitions)
}

/// Writes a complete DFA.
pub fn dfa_to_json(d: &Dfa) -> Value {
    let al = d.alphabet();
    let tracks: Vec<Value> = al.tracks().iter().map(|(n, dom)| json!([n, dom.symbols()])).collect();
    let transitions: Vec<Value> = (0..d.state_count())
        .flat_map(|p| al.letters().map(move |l| (p, l)))
        .map(|(p, l)| json!([p, al.letter_labels(l), d.step(p, l)]))
        .collect();
    let accepting: Vec<usize> = (0..d.state_count()).filter(|&q| d.is_accepting(q)).collect();
    json!({
        "tracks": tracks,
        "states": d.state_count(),
        "initial": d.initial(),
        "accepting": accepting,
        "transitions": transitions,
    })
}

pub fn parse_automatic_instance(v: &Value) -> Result<AutomaticInstance> {
    let syms = |k: &str| -> Result<Option<Vec<String>>> {
        v.get(k).map(|x| serde_json::from_value(x.clone()).map_err(Error::from)).transpose()
    };
    let sigma_b = syms("sigma_b")?.ok_or_else(|| Error::Format("missing `sigma_b`".into()))?;
    let relation = parse_dfa(v.get("relation").ok_or_else(|| Error::Format("missing `relation`".into()))?)?;
    let inst = AutomaticInstance::new(Domain::new("B", sigma_b)?, relation, mode_of(v.get("mode").and_then(Value::as_str))?)?;
    for (key, dom) in [("sigma_i", inst.sigma_i()), ("sigma_o", inst.sigma_o())] {
        if let Some(s) = syms(key)? {
            if s != dom.symbols() {
                return Err(Error::DomainMismatch { expected: format!("{key} {s:?}"), found: dom.to_string() });
            }
        }
    }
    Ok(inst)
}

pub fn automatic_instance_to_json(inst: &AutomaticInstance) -> Value {
    json!({
        "sigma_i": inst.sigma_i().symbols(),
        "sigma_b": inst.sigma_b().symbols(),
        "sigma_o": inst.sigma_o().symbols(),
        "relation": dfa_to_json(inst.relation()),
        "mode": inst.mode().as_str(),
    })
}

pub fn track_word_json(w: &TrackWord) -> Value {
    let m: serde_json::Map<String, Value> = w.tracks.iter().map(|(n, s)| (n.clone(), json!(s))).collect();
    Value::Object(m)
}

pub fn auto_counterexample_json(cx: &AutoCounterexample) -> Value {
    json!({ "kind": cx.kind.as_str(), "word": track_word_json(&cx.word) })
}

#[derive(Serialize, Deserialize)]
struct TransducerDoc {
    #[serde(rename = "in")]
    input: Vec<String>,
    out: Vec<String>,
    states: usize,
    initial: usize,
    delta: Vec<(usize, String, usize)>,
    outputs: Vec<String>,
}

pub fn parse_transducer(v: &Value) -> Result<MooreTransducer> {
    let doc: TransducerDoc = serde_json::from_value(v.clone())?;
    let input = Domain::new("in", doc.input)?;
    let output = Domain::new("out", doc.out)?;
    if doc.outputs.len() != doc.states {
        return Err(Error::Format(format!("{} states but {} outputs", doc.states, doc.outputs.len())));
    }
    let delta = doc.delta.iter().map(|(p, a, q)| Ok((*p, input.index(a)?, *q))).collect::<Result<Vec<_>>>()?;
    let outputs = doc.outputs.iter().map(|o| output.index(o)).collect::<Result<Vec<_>>>()?;
    MooreTransducer::new(input, output, doc.initial, delta, outputs)
}

pub fn transducer_to_json(t: &MooreTransducer) -> Value {
    let delta: Vec<Value> = t.transitions().map(|(p, a, q)| json!([p, t.input().symbol(a), q])).collect();
    let outputs: Vec<&str> = (0..t.state_count()).map(|q| t.output().symbol(t.out(q))).collect();
    json!({
        "in": t.input().symbols(),
        "out": t.output().symbols(),
        "states": t.state_count(),
        "initial": t.initial(),
        "delta": delta,
        "outputs": outputs,
    })
}
