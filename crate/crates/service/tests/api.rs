use std::sync::Arc;
use std::time::Duration;

use serde_json::{json, Value};
use seqdec::automata::{Dfa, TrackAlphabet};
use seqdec::automatic::{check_hint_automatic, solve_unary, AutomaticInstance};
use seqdec::explicit::{solve_explicit, solve_with_hint};
use seqdec::format::{
    automatic_instance_to_json, dfa_to_json, explicit_instance_to_json, pairs_json, parse_automatic_instance,
    parse_explicit_instance, parse_hint, transducer_to_json,
};
use seqdec::strategic::{solve_strategic, MooreTransducer};
use seqdec::{Domain, ExplicitInstance, ExplicitRelation, Mode, Side};
use seqdec_service::{router, Config, Service};
use tokio::io::{AsyncReadExt, AsyncWriteExt};

fn post(s: &Service, path: &str, body: &Value) -> (u16, Value) {
    let r = s.handle("POST", path, body.to_string().as_bytes());
    (r.status, r.body)
}

fn example() -> Value {
    json!({
        "input": ["i1", "i2"], "output": ["o1", "o2"], "intermediate": ["b"],
        "pairs": [["i1", "o1"], ["i2", "o2"]], "mode": "td"
    })
}

#[test]
fn health() {
    let r = Service::default().handle("GET", "/api/health", b"");
    assert_eq!((r.status, r.body), (200, json!({"ok": true})));
}

#[test]
fn worked_example_hint_is_infeasible_with_empty_complement() {
    let s = Service::default();
    let body = json!({"instance": example(), "hint": {"pairs": [["i1", "b"], ["i2", "b"]]}, "side": "r1"});
    let (status, v) = post(&s, "/api/explicit/hint", &body);
    assert_eq!(status, 200);
    assert_eq!(v["verdict"], "infeasible");
    assert_eq!(v["complement"], json!([]));
    assert_eq!(v["witness"], Value::Null);
    assert!(v["counterexample"].is_object());
    let inst = parse_explicit_instance(&example()).unwrap();
    let hint = parse_hint(&body["hint"], &inst, Side::R1Given).unwrap();
    let lib = solve_with_hint(&inst, &hint, Side::R1Given).unwrap();
    assert_eq!(v["complement"], pairs_json(&lib.complement));
    assert!(!lib.is_feasible());
}

#[test]
fn error_statuses() {
    let s = Service::default();
    assert_eq!(s.handle("POST", "/api/explicit/solve", b"{not json").status, 400);
    let (st, v) = post(&s, "/api/explicit/solve", &json!({"input": ["i"], "output": ["o"], "intermediate": [], "pairs": []}));
    assert_eq!(st, 422, "{v}");
    let (st, _) = post(&s, "/api/explicit/hint", &json!({"instance": example(), "hint": [["i9", "b"]], "side": "r1"}));
    assert_eq!(st, 422);
    let (st, _) = post(&s, "/api/explicit/hint", &json!({"instance": example(), "hint": [], "side": "r3"}));
    assert_eq!(st, 422);
    let big = vec![b' '; (1 << 20) + 1];
    assert_eq!(s.handle("POST", "/api/explicit/solve", &big).status, 413);
    assert_eq!(s.handle("GET", "/api/nowhere", b"").status, 404);
    let sigma = TrackAlphabet::single("x", Domain::numbered("S", "s", 2));
    let (st, v) = post(&s, "/api/ebp", &json!({"dfa": dfa_to_json(&Dfa::universal(sigma)), "max_n": 1_000_000}));
    assert_eq!(st, 422);
    assert_eq!(v["cap"], "ebp-max-n");
}

#[test]
fn solve_reports_witness_and_stats() {
    let s = Service::default();
    let mut inst = example();
    inst["intermediate"] = json!(["b1", "b2"]);
    let (st, v) = post(&s, "/api/explicit/solve", &inst);
    assert_eq!(st, 200);
    assert_eq!(v["verdict"], "feasible");
    assert!(v["witness"]["r1"].is_array() && v["stats"]["vars"].as_u64().unwrap() > 0);
    let (_, v2) = post(&s, "/api/explicit/solve", &json!({"instance": example(), "mode": "pd"}));
    assert_eq!((v2["verdict"].as_str(), v2["mode"].as_str()), (Some("infeasible"), Some("pd")));
}

fn corpus() -> Vec<(ExplicitInstance, ExplicitRelation, Side)> {
    let mut out = Vec::new();
    let mut seed = 7u64;
    let mut next = move || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 33) as usize
    };
    for k in 0..10 {
        let (ni, nb, no) = (1 + next() % 3, 1 + next() % 2, 1 + next() % 3);
        let (i, b, o) = (Domain::numbered("I", "i", ni), Domain::numbered("B", "b", nb), Domain::numbered("O", "o", no));
        let pairs: Vec<_> = (0..ni).flat_map(|x| (0..no).map(move |y| (x, y))).filter(|_| next() % 3 != 0).collect();
        let r = ExplicitRelation::from_pairs(i.clone(), o.clone(), pairs).unwrap();
        let mode = if k % 2 == 0 { Mode::Td } else { Mode::Pd };
        let inst = ExplicitInstance::new(b.clone(), r, mode).unwrap();
        let side = if k % 3 == 0 { Side::R2Given } else { Side::R1Given };
        let (from, to) = if side == Side::R1Given { (i, b) } else { (b, o) };
        let hp: Vec<_> = (0..from.len()).flat_map(|x| (0..to.len()).map(move |y| (x, y))).filter(|_| next() % 2 == 0).collect();
        out.push((inst, ExplicitRelation::from_pairs(from, to, hp).unwrap(), side));
    }
    out
}

#[test]
fn explicit_parity_corpus() {
    let s = Service::default();
    for (inst, hint, side) in corpus() {
        let body = json!({"instance": explicit_instance_to_json(&inst), "hint": pairs_json(&hint), "side": side.as_str()});
        let (st, v) = post(&s, "/api/explicit/hint", &body);
        assert_eq!(st, 200);
        let lib = solve_with_hint(&inst, &hint, side).unwrap();
        assert_eq!(v["verdict"] == "feasible", lib.is_feasible());
        assert_eq!(v["complement"], pairs_json(&lib.complement));
        let (_, v) = post(&s, "/api/explicit/solve", &explicit_instance_to_json(&inst));
        assert_eq!(v["verdict"] == "feasible", solve_explicit(&inst).unwrap().is_feasible());
    }
}

fn bits() -> Domain {
    Domain::new("S", ["0", "1"]).unwrap()
}

fn identity(channel: &[&str], mode: Mode) -> AutomaticInstance {
    let al = TrackAlphabet::pair(("in", bits()), ("out", bits())).unwrap();
    let t: Vec<_> = (0..2).map(|c| (0, al.encode(&[c, c]), 0)).collect();
    AutomaticInstance::new(Domain::new("B", channel.iter().copied()).unwrap(), Dfa::new(al, 1, 0, [0], t).unwrap(), mode)
        .unwrap()
}

#[test]
fn automatic_parity() {
    let s = Service::default();
    let inst = identity(&["0", "1"], Mode::Td);
    let id_hint = {
        let al = inst.hint_alphabet(Side::R1Given);
        let t: Vec<_> = (0..2).map(|c| (0, al.encode(&[c, c]), 0)).collect();
        Dfa::new(al, 1, 0, [0], t).unwrap()
    };
    for (hint, side) in [(id_hint.clone(), Side::R1Given), (Dfa::universal(inst.hint_alphabet(Side::R2Given)), Side::R2Given)] {
        let body = json!({"instance": automatic_instance_to_json(&inst), "hint": dfa_to_json(&hint), "side": side.as_str()});
        let (st, v) = post(&s, "/api/automatic/hint", &body);
        assert_eq!(st, 200, "{v}");
        let lib = check_hint_automatic(&inst, &hint, side).unwrap();
        assert_eq!(v["verdict"] == "feasible", lib.is_feasible());
        assert_eq!(v["complement"], dfa_to_json(&lib.complement));
        assert_eq!(v["counterexample"].is_null(), lib.is_feasible());
    }
    let unary = identity(&["u"], Mode::Td);
    let (st, v) = post(&s, "/api/automatic/unary", &json!({"instance": automatic_instance_to_json(&unary)}));
    assert_eq!(st, 200);
    assert_eq!(v["verdict"] == "feasible", solve_unary(&unary).unwrap().is_feasible());
    assert_eq!(v["verdict"], "infeasible");
    assert!(v["counterexample"]["word"].is_object());
    let (st, _) = post(&s, "/api/automatic/unary", &json!({"instance": automatic_instance_to_json(&inst)}));
    assert_eq!(st, 422);
    let round = parse_automatic_instance(&automatic_instance_to_json(&inst)).unwrap();
    assert_eq!(dfa_to_json(round.relation()), dfa_to_json(inst.relation()));
}

#[test]
fn ebp_and_strategic_parity() {
    let s = Service::default();
    let three = Dfa::universal(TrackAlphabet::single("x", Domain::numbered("S", "s", 3)));
    let (_, v) = post(&s, "/api/ebp", &json!({"dfa": dfa_to_json(&three), "max_n": 8}));
    assert_eq!(v["verdict"], "violation");
    assert_eq!(v["counterexample"], json!({"n": 1, "count": "3"}));
    assert_eq!(v["stats"]["counts"][8], "6561");
    let two = Dfa::universal(TrackAlphabet::single("x", Domain::numbered("S", "s", 2)));
    let (_, v) = post(&s, "/api/ebp", &json!({"dfa": dfa_to_json(&two), "max_n": 64}));
    assert_eq!(v["verdict"], "ok");

    for channel in [&["0", "1"][..], &["0"][..]] {
        let inst = identity(channel, Mode::Pd);
        let (st, v) = post(&s, "/api/strategic/solve", &json!({"instance": automatic_instance_to_json(&inst)}));
        assert_eq!(st, 200);
        let lib = solve_strategic(&inst).unwrap().0;
        assert_eq!(v["verdict"] == "feasible", lib.is_feasible());
        if let Some(w) = lib.witness() {
            assert_eq!(v["witness"]["t1"], transducer_to_json(&w.t1));
            assert_eq!(v["counterexample"], Value::Null);
        }
    }
    let inst = identity(&["0", "1"], Mode::Pd);
    let t1 = MooreTransducer::identity(bits(), Domain::new("B", ["0", "1"]).unwrap()).unwrap();
    let body = json!({"instance": automatic_instance_to_json(&inst), "hint_t1": transducer_to_json(&t1), "verify_n": 4});
    let (_, v) = post(&s, "/api/strategic/solve", &body);
    assert_eq!(v["verdict"], "feasible");
    assert_eq!(v["witness"]["t1"], transducer_to_json(&t1));
    let c = MooreTransducer::constant(bits(), Domain::new("B", ["0", "1"]).unwrap(), 0).unwrap();
    let body = json!({"instance": automatic_instance_to_json(&inst), "hint_t1": transducer_to_json(&c)});
    assert_eq!(post(&s, "/api/strategic/solve", &body).1["verdict"], "infeasible");
}

#[test]
fn responses_are_reproducible() {
    let (a, b) = (Service::default(), Service::default());
    for (inst, hint, side) in corpus() {
        let body = json!({"instance": explicit_instance_to_json(&inst), "hint": pairs_json(&hint), "side": side.as_str()});
        let x = serde_json::to_vec(&post(&a, "/api/explicit/hint", &body).1).unwrap();
        let y = serde_json::to_vec(&post(&b, "/api/explicit/hint", &body).1).unwrap();
        assert_eq!(x, y);
    }
}

#[test]
fn sessions_store_instances_and_verdicts() {
    let s = Service::new(2);
    let (st, v) = post(&s, "/api/session", &json!({"kind": "explicit", "instance": example()}));
    assert_eq!(st, 200);
    let id = v["session"].as_str().unwrap().to_string();
    let body = json!({"instance": example(), "hint": [["i1", "b"]], "side": "r1", "session": id});
    assert_eq!(post(&s, "/api/explicit/hint", &body).0, 200);
    let got = s.handle("GET", &format!("/api/session/{id}"), b"");
    assert_eq!(got.status, 200);
    assert_eq!(got.body["instance"], example());
    assert_eq!(got.body["last"]["verdict"], "infeasible");
    assert_eq!(post(&s, "/api/session", &json!({"kind": "other", "instance": {}})).0, 422);
    for _ in 0..2 {
        post(&s, "/api/session", &json!({"kind": "explicit", "instance": example()}));
    }
    assert_eq!(s.handle("GET", &format!("/api/session/{id}"), b"").status, 404);
    let stale = json!({"instance": example(), "hint": [], "side": "r1", "session": id});
    assert_eq!(post(&s, "/api/explicit/hint", &stale).0, 404);
}

async fn raw_request(addr: std::net::SocketAddr, req: String) -> String {
    let mut sock = tokio::net::TcpStream::connect(addr).await.unwrap();
    sock.write_all(req.as_bytes()).await.unwrap();
    let mut out = String::new();
    sock.read_to_string(&mut out).await.unwrap();
    out
}

async fn spawn(config: Config) -> std::net::SocketAddr {
    let app = router(Arc::new(Service::default()), &config);
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    tokio::spawn(async move { axum::serve(listener, app).await.unwrap() });
    addr
}

#[tokio::test(flavor = "multi_thread")]
async fn http_round_trip_with_cors() {
    let addr = spawn(Config { cors_origin: "http://localhost:5173".into(), ..Config::default() }).await;
    let body = json!({"instance": example(), "hint": [["i1", "b"], ["i2", "b"]], "side": "r1"}).to_string();
    let req = format!(
        "POST /api/explicit/hint HTTP/1.1\r\nHost: x\r\nContent-Type: application/json\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}",
        body.len()
    );
    let resp = raw_request(addr, req).await;
    assert!(resp.starts_with("HTTP/1.1 200"), "{resp}");
    assert!(resp.to_ascii_lowercase().contains("access-control-allow-origin: http://localhost:5173"));
    assert!(resp.contains("\"verdict\":\"infeasible\""));
    let pre = raw_request(addr, "OPTIONS /api/explicit/hint HTTP/1.1\r\nHost: x\r\nConnection: close\r\n\r\n".into()).await;
    assert!(pre.starts_with("HTTP/1.1 204"), "{pre}");
    let bad = raw_request(addr, "POST /api/explicit/solve HTTP/1.1\r\nHost: x\r\nContent-Length: 3\r\nConnection: close\r\n\r\n{{{".into()).await;
    assert!(bad.starts_with("HTTP/1.1 400"), "{bad}");
}

#[tokio::test(flavor = "multi_thread")]
async fn budget_exceeded_is_422() {
    let addr = spawn(Config { budget: Duration::from_nanos(1), ..Config::default() }).await;
    let d = Dfa::universal(TrackAlphabet::single("x", Domain::numbered("S", "s", 3)));
    let body = json!({"dfa": dfa_to_json(&d), "max_n": 4096}).to_string();
    let req = format!("POST /api/ebp HTTP/1.1\r\nHost: x\r\nContent-Length: {}\r\nConnection: close\r\n\r\n{body}", body.len());
    let resp = raw_request(addr, req).await;
    assert!(resp.starts_with("HTTP/1.1 422"), "{resp}");
    assert!(resp.contains("budget exceeded"));
}
