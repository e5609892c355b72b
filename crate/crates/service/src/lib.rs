//! HTTP/JSON front end for `seqdec`.
//!
//! [`Service::handle`] maps a method, path and body to a status and JSON
//! document without touching the network; [`router`] and [`serve`] put it
//! behind axum with CORS headers, a body-size limit and a per-request
//! wall-clock budget.

mod api;
mod sessions;

use std::net::SocketAddr;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Duration;

use axum::body::{to_bytes, Body};
use axum::extract::{Request, State};
use axum::http::{header, HeaderValue, Method, StatusCode};
use axum::response::{IntoResponse, Response as HttpResponse};
use axum::Router;
use serde_json::{json, Value};

pub use api::{Response, DEFAULT_VERIFY_N, EBP_MAX_N, MAX_BODY_BYTES, VERIFY_N_CAP};
pub use sessions::{SessionStore, DEFAULT_CAPACITY};

use api::Failure;

pub const DEFAULT_PORT: u16 = 8787;
pub const DEFAULT_BUDGET: Duration = Duration::from_secs(10);

pub struct Service {
    sessions: SessionStore,
}

impl Default for Service {
    fn default() -> Self {
        Service::new(DEFAULT_CAPACITY)
    }
}

impl Service {
    pub fn new(session_capacity: usize) -> Self {
        Service { sessions: SessionStore::new(session_capacity) }
    }

    pub fn sessions(&self) -> &SessionStore {
        &self.sessions
    }

    pub fn handle(&self, method: &str, path: &str, body: &[u8]) -> Response {
        if body.len() > MAX_BODY_BYTES {
            return Response::error(413, format!("body of {} bytes exceeds {MAX_BODY_BYTES}", body.len()));
        }
        match catch_unwind(AssertUnwindSafe(|| self.route(method, path, body))) {
            Ok(Ok(v)) => Response::ok(v),
            Ok(Err(f)) => f.into(),
            Err(_) => Response::error(500, "internal error"),
        }
    }

    fn route(&self, method: &str, path: &str, body: &[u8]) -> Result<Value, Failure> {
        let path = path.split('?').next().unwrap_or_default().trim_end_matches('/');
        if let Some(id) = path.strip_prefix("/api/session/") {
            return match method {
                "GET" => self.sessions.get(id).ok_or_else(|| Failure::NotFound(format!("no session `{id}`"))),
                _ => Err(Failure::NotFound(format!("{method} {path}"))),
            };
        }
        let handler: fn(&Value) -> Result<Value, Failure> = match (method, path) {
            ("GET", "/api/health") => return Ok(json!({ "ok": true })),
            ("POST", "/api/session") => return api::session_create(&self.sessions, &parse_body(body)?),
            ("POST", "/api/explicit/solve") => api::explicit_solve,
            ("POST", "/api/explicit/hint") => api::explicit_hint,
            ("POST", "/api/automatic/hint") => api::automatic_hint,
            ("POST", "/api/automatic/unary") => api::automatic_unary,
            ("POST", "/api/ebp") => api::ebp,
            ("POST", "/api/strategic/solve") => api::strategic_solve,
            _ => return Err(Failure::NotFound(format!("{method} {path}"))),
        };
        let body = parse_body(body)?;
        let out = handler(&body)?;
        if let Some(id) = body.get("session").and_then(Value::as_str) {
            if !self.sessions.record(id, &out) {
                return Err(Failure::NotFound(format!("no session `{id}`")));
            }
        }
        Ok(out)
    }
}

fn parse_body(body: &[u8]) -> Result<Value, Failure> {
    serde_json::from_slice(body).map_err(|e| Failure::Syntax(format!("malformed JSON: {e}")))
}

#[derive(Clone, Debug)]
pub struct Config {
    pub port: u16,
    /// Value of `Access-Control-Allow-Origin`.
    pub cors_origin: String,
    pub budget: Duration,
    pub session_capacity: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            port: DEFAULT_PORT,
            cors_origin: "*".into(),
            budget: DEFAULT_BUDGET,
            session_capacity: DEFAULT_CAPACITY,
        }
    }
}

#[derive(Clone)]
struct AppState {
    service: Arc<Service>,
    cors_origin: HeaderValue,
    budget: Duration,
}

pub fn router(service: Arc<Service>, config: &Config) -> Router {
    let cors_origin = HeaderValue::from_str(&config.cors_origin).unwrap_or(HeaderValue::from_static("*"));
    Router::new().fallback(dispatch).with_state(AppState { service, cors_origin, budget: config.budget })
}

async fn dispatch(State(st): State<AppState>, req: Request) -> HttpResponse {
    let method = req.method().clone();
    let path = req.uri().path().to_string();
    let resp = if method == Method::OPTIONS {
        StatusCode::NO_CONTENT.into_response()
    } else {
        match to_bytes(req.into_body(), MAX_BODY_BYTES).await {
            Err(_) => json_response(Response::error(413, format!("body exceeds {MAX_BODY_BYTES} bytes"))),
            Ok(bytes) => {
                let svc = st.service.clone();
                let work = tokio::task::spawn_blocking(move || svc.handle(method.as_str(), &path, &bytes));
                match tokio::time::timeout(st.budget, work).await {
                    Ok(Ok(r)) => json_response(r),
                    Ok(Err(_)) => json_response(Response::error(500, "internal error")),
                    Err(_) => json_response(Response::error(422, "budget exceeded")),
                }
            }
        }
    };
    with_cors(resp, &st.cors_origin)
}

fn json_response(r: Response) -> HttpResponse {
    let status = StatusCode::from_u16(r.status).unwrap_or(StatusCode::INTERNAL_SERVER_ERROR);
    let body = serde_json::to_vec(&r.body).unwrap_or_default();
    (status, [(header::CONTENT_TYPE, HeaderValue::from_static("application/json"))], Body::from(body)).into_response()
}

fn with_cors(mut resp: HttpResponse, origin: &HeaderValue) -> HttpResponse {
    let h = resp.headers_mut();
    h.insert(header::ACCESS_CONTROL_ALLOW_ORIGIN, origin.clone());
    h.insert(header::ACCESS_CONTROL_ALLOW_METHODS, HeaderValue::from_static("GET, POST, OPTIONS"));
    h.insert(header::ACCESS_CONTROL_ALLOW_HEADERS, HeaderValue::from_static("content-type"));
    resp
}

/// Binds `0.0.0.0:port` and serves until the process ends.
pub async fn serve(config: Config) -> std::io::Result<()> {
    let app = router(Arc::new(Service::new(config.session_capacity)), &config);
    let addr = SocketAddr::from(([0, 0, 0, 0], config.port));
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app).await
}
