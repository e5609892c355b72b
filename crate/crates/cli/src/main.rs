use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use seqdec::automatic::{reduce_to_binary, verify_joint_witness, JointVerdict};
use seqdec::circuit::{verify_hint_symbolic, SymbolicVerdict};
use seqdec::explicit::encode_cnf;
use seqdec::format::{
    automatic_instance_to_json, dfa_to_json, parse_automatic_instance, parse_circuit, parse_dfa,
    parse_explicit_instance, parse_symbolic_instance, symbolic_counterexample_json, track_word_json,
};
use seqdec::Side;
use seqdec_service::{Config, Service, DEFAULT_BUDGET, DEFAULT_CAPACITY, DEFAULT_PORT};

/// Exit status: 0 for a positive verdict, 1 for a negative one, 2 on error.
#[derive(Parser)]
#[command(name = "seqdec", version, about = "Sequential decomposition of input/output relations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Td,
    Pd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    R1,
    R2,
}

impl SideArg {
    fn side(self) -> Side {
        match self {
            SideArg::R1 => Side::R1Given,
            SideArg::R2 => Side::R2Given,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decide an explicit instance, or check a hint against it.
    SolveExplicit {
        instance: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Side and file of a hint, e.g. `--hint r1 hint.json`.
        #[arg(long, num_args = 2, value_names = ["SIDE", "FILE"])]
        hint: Option<Vec<String>>,
        /// Write the DIMACS encoding here and its variable map next to it.
        #[arg(long)]
        emit_cnf: Option<PathBuf>,
    },
    /// Check a circuit hint against a circuit-given instance.
    VerifySymbolic {
        instance: PathBuf,
        #[arg(long)]
        hint: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Check a DFA hint against an automatic instance.
    AutoHint {
        instance: PathBuf,
        #[arg(long)]
        hint: PathBuf,
        #[arg(long, value_enum)]
        side: SideArg,
    },
    /// Decide an automatic instance with a one-letter intermediate alphabet.
    Unary { instance: PathBuf },
    /// Print the equivalent instance over a binary intermediate alphabet.
    ReduceBinary { instance: PathBuf },
    /// Check that a language has at most 2^n words of each length n.
    Ebp {
        dfa: PathBuf,
        #[arg(long)]
        max_n: usize,
    },
    /// Check a joint witness over the in, mid and out tracks.
    JointVerify {
        instance: PathBuf,
        #[arg(long)]
        witness: PathBuf,
    },
    /// Synthesize a pair of Moore transducers.
    Strategic {
        instance: PathBuf,
        #[arg(long, conflicts_with = "hint_t2")]
        hint_t1: Option<PathBuf>,
        #[arg(long)]
        hint_t2: Option<PathBuf>,
        #[arg(long, default_value_t = seqdec_service::DEFAULT_VERIFY_N)]
        verify_n: usize,
    },
    /// Run the HTTP service.
    Serve {
        #[arg(long, env = "SEQDEC_PORT", default_value_t = DEFAULT_PORT)]
        port: u16,
        #[arg(long, default_value = "*")]
        cors_origin: String,
        /// Per-request wall-clock budget in milliseconds.
        #[arg(long, default_value_t = DEFAULT_BUDGET.as_millis() as u64)]
        budget_ms: u64,
        #[arg(long, default_value_t = DEFAULT_CAPACITY)]
        sessions: usize,
    },
}

type Res<T> = Result<T, String>;

fn read_json(path: &Path) -> Res<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn lib<T>(r: seqdec::Result<T>) -> Res<T> {
    r.map_err(|e| e.to_string())
}

/// Runs a request through the service handler so that both front ends
/// print the same documents.
fn call(path: &str, body: Value) -> Res<Value> {
    let r = Service::new(1).handle("POST", path, body.to_string().as_bytes());
    match r.status {
        200 => Ok(r.body),
        _ => Err(r.body["error"].as_str().unwrap_or("request failed").to_string()),
    }
}

fn positive(v: &Value) -> bool {
    matches!(v["verdict"].as_str(), Some("feasible" | "holds" | "ok"))
}

fn run(cmd: Command) -> Res<Value> {
    match cmd {
        Command::SolveExplicit { instance, mode, hint, emit_cnf } => {
            let mut inst = read_json(&instance)?;
            if let Some(m) = mode {
                inst["mode"] = json!(match m {
                    ModeArg::Td => "td",
                    ModeArg::Pd => "pd",
                });
            }
            if let Some(path) = emit_cnf {
                let cnf = encode_cnf(&lib(parse_explicit_instance(&inst))?);
                std::fs::write(&path, cnf.to_dimacs()).map_err(|e| format!("{}: {e}", path.display()))?;
                let map = path.with_extension("map.json");
                std::fs::write(&map, cnf.var_map.to_json().to_string()).map_err(|e| format!("{}: {e}", map.display()))?;
            }
            match hint {
                Some(h) => {
                    let side = lib(Side::parse(&h[0]))?;
                    let hint = read_json(Path::new(&h[1]))?;
                    call("/api/explicit/hint", json!({ "instance": inst, "hint": hint, "side": side.as_str() }))
                }
                None => call("/api/explicit/solve", inst),
            }
        }
        Command::VerifySymbolic { instance, hint, side } => {
            let inst = lib(parse_symbolic_instance(&read_json(&instance)?))?;
            let c = lib(parse_circuit(&read_json(&hint)?))?;
            Ok(match lib(verify_hint_symbolic(&inst, &c, side.side()))? {
                SymbolicVerdict::Holds => json!({ "verdict": "feasible", "counterexample": null }),
                SymbolicVerdict::Violated(cx) => {
                    json!({ "verdict": "infeasible", "counterexample": symbolic_counterexample_json(&cx) })
                }
            })
        }
        Command::AutoHint { instance, hint, side } => call(
            "/api/automatic/hint",
            json!({ "instance": read_json(&instance)?, "hint": read_json(&hint)?, "side": side.side().as_str() }),
        ),
        Command::Unary { instance } => call("/api/automatic/unary", json!({ "instance": read_json(&instance)? })),
        Command::ReduceBinary { instance } => {
            let inst = lib(parse_automatic_instance(&read_json(&instance)?))?;
            let reduced = lib(reduce_to_binary(&inst))?;
            Ok(json!({ "verdict": "ok", "instance": automatic_instance_to_json(&reduced) }))
        }
        Command::Ebp { dfa, max_n } => call("/api/ebp", json!({ "dfa": read_json(&dfa)?, "max_n": max_n })),
        Command::JointVerify { instance, witness } => {
            let inst = lib(parse_automatic_instance(&read_json(&instance)?))?;
            let s = lib(parse_dfa(&read_json(&witness)?))?;
            Ok(match lib(verify_joint_witness(&inst, &s))? {
                JointVerdict::Holds(w) => json!({
                    "verdict": "holds",
                    "witness": { "r1": dfa_to_json(&w.r1), "r2": dfa_to_json(&w.r2) },
                    "counterexample": null,
                }),
                JointVerdict::Violated(v) => json!({
                    "verdict": "violated",
                    "witness": null,
                    "counterexample": { "condition": v.condition, "word": track_word_json(&v.word) },
                }),
            })
        }
        Command::Strategic { instance, hint_t1, hint_t2, verify_n } => {
            let mut body = json!({ "instance": read_json(&instance)?, "verify_n": verify_n });
            if let Some(p) = hint_t1 {
                body["hint_t1"] = read_json(&p)?;
            }
            if let Some(p) = hint_t2 {
                body["hint_t2"] = read_json(&p)?;
            }
            call("/api/strategic/solve", body)
        }
        Command::Serve { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Serve { port, cors_origin, budget_ms, sessions } = cli.command {
        let config = Config { port, cors_origin, budget: Duration::from_millis(budget_ms), session_capacity: sessions };
        let rt = tokio::runtime::Runtime::new().expect("tokio runtime");
        eprintln!("seqdec: listening on port {port}");
        return match rt.block_on(seqdec_service::serve(config)) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("seqdec: {e}");
                ExitCode::from(2)
            }
        };
    }
    match run(cli.command) {
        Ok(v) => {
            println!("{}", serde_json::to_string_pretty(&v).unwrap());
            if positive(&v) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("seqdec: {e}");
            ExitCode::from(2)
        }
    }
}
