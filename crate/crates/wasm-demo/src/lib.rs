//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Each export takes and returns JSON text. The `*_json` functions hold the
//! logic and are ordinary Rust, so they are tested without a browser.

use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

use seqdec::automatic::count_words;
use seqdec::explicit::{solve_explicit, solve_with_hint};
use seqdec::format::{pairs_json, parse_dfa, parse_explicit_instance, parse_hint, verdict_counterexample, witness_to_json};
use seqdec::Side;

/// Longest word length the page may ask counts for.
pub const MAX_COUNT_LENGTH: usize = 256;

fn parse(text: &str) -> Result<Value, String> {
    serde_json::from_str(text).map_err(|e| format!("malformed JSON: {e}"))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "feasible"
    } else {
        "infeasible"
    }
}

/// Maximal complement of a hint and the resulting verdict.
pub fn explicit_hint_json(instance: &str, hint: &str, side: &str) -> Result<Value, String> {
    let inst = parse_explicit_instance(&parse(instance)?).map_err(|e| e.to_string())?;
    let side = Side::parse(side).map_err(|e| e.to_string())?;
    let hint = parse_hint(&parse(hint)?, &inst, side).map_err(|e| e.to_string())?;
    let rep = solve_with_hint(&inst, &hint, side).map_err(|e| e.to_string())?;
    Ok(json!({
        "verdict": verdict(rep.is_feasible()),
        "complement": pairs_json(&rep.complement),
        "counterexample": verdict_counterexample(&rep.verdict),
    }))
}

pub fn solve_explicit_json(instance: &str) -> Result<Value, String> {
    let inst = parse_explicit_instance(&parse(instance)?).map_err(|e| e.to_string())?;
    let sol = solve_explicit(&inst).map_err(|e| e.to_string())?;
    Ok(json!({
        "verdict": verdict(sol.is_feasible()),
        "witness": sol.witness().map(|w| witness_to_json(&inst, w)),
    }))
}

/// Words of each length `0..=max_n` accepted by a DFA, as decimal strings.
pub fn word_counts_json(dfa: &str, max_n: usize) -> Result<Value, String> {
    if max_n > MAX_COUNT_LENGTH {
        return Err(format!("length {max_n} is above the page limit of {MAX_COUNT_LENGTH}"));
    }
    let d = parse_dfa(&parse(dfa)?).map_err(|e| e.to_string())?;
    let counts: Vec<String> = count_words(&d, max_n).iter().map(|c| c.to_string()).collect();
    Ok(json!({ "counts": counts }))
}

fn render(r: Result<Value, String>) -> String {
    r.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

#[wasm_bindgen]
pub fn explicit_hint(instance: &str, hint: &str, side: &str) -> String {
    render(explicit_hint_json(instance, hint, side))
}

#[wasm_bindgen]
pub fn solve(instance: &str) -> String {
    render(solve_explicit_json(instance))
}

#[wasm_bindgen]
pub fn word_counts(dfa: &str, max_n: usize) -> String {
    render(word_counts_json(dfa, max_n))
}
