use serde_json::{json, Value};

use seqdec::automatic::{check_hint_automatic, count_words, solve_unary, AutoSolution, AutoVerdict};
use seqdec::explicit::{solve_explicit_with, solve_with_hint, SolveOptions};
use seqdec::format::{
    auto_counterexample_json, dfa_to_json, pairs_json, parse_automatic_instance, parse_dfa, parse_explicit_instance,
    parse_hint, parse_transducer, transducer_to_json, verdict_counterexample, witness_to_json,
};
use seqdec::strategic::{solve_strategic_with, verify_witness_bounded, GameLimits};
use seqdec::{Error, Mode, Side};

use crate::sessions::SessionStore;

pub const MAX_BODY_BYTES: usize = 1 << 20;
/// Largest word length accepted by `/api/ebp`.
pub const EBP_MAX_N: usize = 4096;
pub const DEFAULT_VERIFY_N: usize = 6;
/// Largest bounded-verification depth for strategic witnesses.
pub const VERIFY_N_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub status: u16,
    pub body: Value,
}

impl Response {
    pub fn ok(body: Value) -> Self {
        Response { status: 200, body }
    }

    pub fn error(status: u16, message: impl Into<String>) -> Self {
        Response { status, body: json!({ "error": message.into() }) }
    }
}

#[derive(Debug)]
pub(crate) enum Failure {
    Syntax(String),
    Semantic(Error),
    NotFound(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Semantic(e)
    }
}

impl From<Failure> for Response {
    fn from(f: Failure) -> Self {
        match f {
            Failure::Syntax(m) => Response::error(400, m),
            Failure::NotFound(m) => Response::error(404, m),
            Failure::Semantic(e) => {
                let mut r = Response::error(422, e.to_string());
                if let Some(cap) = e.cap_name() {
                    r.body["cap"] = json!(cap);
                }
                r
            }
        }
    }
}

type Outcome = Result<Value, Failure>;

fn field<'a>(body: &'a Value, key: &str) -> Result<&'a Value, Failure> {
    body.get(key).ok_or_else(|| Failure::Semantic(Error::Format(format!("request needs `{key}`"))))
}

/// `body["instance"]` when present, else the body itself.
fn instance_of(body: &Value) -> &Value {
    body.get("instance").unwrap_or(body)
}

fn side_of(body: &Value) -> Result<Side, Failure> {
    let s = field(body, "side")?.as_str().ok_or_else(|| Error::Format("`side` must be a string".into()))?;
    Ok(Side::parse(s)?)
}

fn mode_override(body: &Value) -> Result<Option<Mode>, Failure> {
    match body.get("mode").filter(|_| body.get("instance").is_some()) {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(Mode::parse(s)?)),
        Some(_) => Err(Error::Format("`mode` must be a string".into()).into()),
    }
}

fn usize_field(body: &Value, key: &str, default: Option<usize>) -> Result<usize, Failure> {
    match (body.get(key), default) {
        (None | Some(Value::Null), Some(d)) => Ok(d),
        (Some(v), _) => v
            .as_u64()
            .map(|x| x as usize)
            .ok_or_else(|| Error::Format(format!("`{key}` must be a non-negative integer")).into()),
        (None, None) => Err(Error::Format(format!("request needs `{key}`")).into()),
    }
}

fn cap(name: &'static str, limit: usize, requested: usize) -> Result<(), Failure> {
    if requested > limit {
        return Err(Error::CapExceeded { cap: name, limit, requested }.into());
    }
    Ok(())
}

fn verdict(feasible: bool) -> &'static str {
    if feasible {
        "feasible"
    } else {
        "infeasible"
    }
}

pub(crate) fn explicit_solve(body: &Value) -> Outcome {
    let mut inst = parse_explicit_instance(instance_of(body))?;
    if let Some(m) = mode_override(body)? {
        inst = inst.with_mode(m);
    }
    let (sol, stats) = solve_explicit_with(&inst, SolveOptions::default())?;
    Ok(json!({
        "verdict": verdict(sol.is_feasible()),
        "mode": inst.mode().as_str(),
        "witness": sol.witness().map(|w| witness_to_json(&inst, w)),
        "counterexample": null,
        "stats": {
            "vars": stats.vars,
            "clauses": stats.clauses,
            "conflicts": stats.sat.conflicts,
            "decisions": stats.sat.decisions,
            "propagations": stats.sat.propagations,
        },
    }))
}

pub(crate) fn explicit_hint(body: &Value) -> Outcome {
    let mut inst = parse_explicit_instance(field(body, "instance")?)?;
    if let Some(m) = mode_override(body)? {
        inst = inst.with_mode(m);
    }
    let side = side_of(body)?;
    let hint = parse_hint(field(body, "hint")?, &inst, side)?;
    let rep = solve_with_hint(&inst, &hint, side)?;
    Ok(json!({
        "verdict": verdict(rep.is_feasible()),
        "mode": inst.mode().as_str(),
        "side": side.as_str(),
        "complement": pairs_json(&rep.complement),
        "witness": rep.witness().map(|w| witness_to_json(&inst, &w)),
        "counterexample": verdict_counterexample(&rep.verdict),
        "stats": { "hint_pairs": rep.hint.len(), "complement_pairs": rep.complement.len() },
    }))
}

fn auto_pair_json(r1: &seqdec::automata::Dfa, r2: &seqdec::automata::Dfa) -> Value {
    json!({ "r1": dfa_to_json(r1), "r2": dfa_to_json(r2) })
}

pub(crate) fn automatic_hint(body: &Value) -> Outcome {
    let inst = parse_automatic_instance(field(body, "instance")?)?;
    let side = side_of(body)?;
    let hint = parse_dfa(field(body, "hint")?)?;
    let rep = check_hint_automatic(&inst, &hint, side)?;
    let cx = match &rep.verdict {
        AutoVerdict::Holds => Value::Null,
        AutoVerdict::Violated(cx) => auto_counterexample_json(cx),
    };
    Ok(json!({
        "verdict": verdict(rep.is_feasible()),
        "mode": inst.mode().as_str(),
        "side": side.as_str(),
        "complement": dfa_to_json(&rep.complement),
        "witness": rep.witness().map(|w| auto_pair_json(&w.r1, &w.r2)),
        "counterexample": cx,
        "stats": { "hint_states": rep.hint.state_count(), "complement_states": rep.complement.state_count() },
    }))
}

pub(crate) fn automatic_unary(body: &Value) -> Outcome {
    let inst = parse_automatic_instance(instance_of(body))?;
    let (witness, cx) = match solve_unary(&inst)? {
        AutoSolution::Feasible(w) => (auto_pair_json(&w.r1, &w.r2), Value::Null),
        AutoSolution::Infeasible(cx) => (Value::Null, auto_counterexample_json(&cx)),
    };
    Ok(json!({
        "verdict": verdict(witness.is_object()),
        "mode": inst.mode().as_str(),
        "witness": witness,
        "counterexample": cx,
        "stats": { "relation_states": inst.relation().state_count() },
    }))
}

pub(crate) fn ebp(body: &Value) -> Outcome {
    let d = parse_dfa(body.get("dfa").unwrap_or(body))?;
    let max_n = usize_field(body, "max_n", None)?;
    cap("ebp-max-n", EBP_MAX_N, max_n)?;
    let counts = count_words(&d, max_n);
    let first = counts.iter().enumerate().find(|(n, c)| **c > num_bigint::BigUint::from(1u8) << *n);
    let (v, cx) = match first {
        None => ("ok", Value::Null),
        Some((n, c)) => ("violation", json!({ "n": n, "count": c.to_string() })),
    };
    Ok(json!({
        "verdict": v,
        "max_n": max_n,
        "witness": null,
        "counterexample": cx,
        "stats": { "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>() },
    }))
}

pub(crate) fn strategic_solve(body: &Value) -> Outcome {
    let inst = parse_automatic_instance(field(body, "instance")?)?;
    let hint = match (body.get("hint_t1"), body.get("hint_t2")) {
        (Some(_), Some(_)) => return Err(Error::Format("give at most one of `hint_t1` and `hint_t2`".into()).into()),
        (Some(t), None) => Some((parse_transducer(t)?, Side::R1Given)),
        (None, Some(t)) => Some((parse_transducer(t)?, Side::R2Given)),
        (None, None) => None,
    };
    let verify_n = usize_field(body, "verify_n", Some(DEFAULT_VERIFY_N))?;
    cap("verify-depth", VERIFY_N_CAP, verify_n)?;
    let (out, stats) = solve_strategic_with(&inst, hint.as_ref().map(|(t, s)| (t, *s)), GameLimits::default())?;
    let (witness, cx) = match out.witness() {
        Some(w) => {
            let violation = verify_witness_bounded(&inst, w, verify_n)?;
            let cx = violation.map_or(Value::Null, |v| {
                json!({ "input": v.input, "channel": v.channel, "output": v.output })
            });
            (json!({ "t1": transducer_to_json(&w.t1), "t2": transducer_to_json(&w.t2) }), cx)
        }
        None => (Value::Null, Value::Null),
    };
    Ok(json!({
        "verdict": verdict(out.is_feasible()),
        "witness": witness,
        "counterexample": cx,
        "stats": { "configs": stats.configs, "positions": stats.positions, "verified_up_to": verify_n },
    }))
}

pub(crate) fn session_create(store: &SessionStore, body: &Value) -> Outcome {
    let kind = field(body, "kind")?.as_str().unwrap_or_default();
    let inst = field(body, "instance")?;
    match kind {
        "explicit" => drop(parse_explicit_instance(inst)?),
        "automatic" => drop(parse_automatic_instance(inst)?),
        other => return Err(Error::Format(format!("unknown session kind `{other}`, expected explicit or automatic")).into()),
    }
    Ok(json!({ "session": store.create(kind, inst.clone()) }))
}
