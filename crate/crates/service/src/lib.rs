//! HTTP/JSON front end for cluster category sessions.
//!
//! Sessions live in memory. Each has its own lock: reads share it, mutations
//! take it exclusively. Categories are cached by normalised quiver text and
//! shared between sessions. All heavy lifting runs on the blocking pool.

mod error;

use std::collections::{BTreeMap, HashMap};
use std::future::Future;
use std::net::SocketAddr;
use std::path::{Path as FsPath, PathBuf};
use std::sync::{Arc, Mutex, RwLock};

use axum::body::Bytes;
use axum::extract::{FromRequest, Path, Query, Request, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use cluster_tilt_core::api::{
    self, ArMode, CreateSession, DynkinInfo, EndoView, HomView, MutateRequest, MutationView, ObjectRef, Session,
    SessionInfo, SessionSnapshot, SessionTilting, TiltingList, VerifyKind, VerifyReport, VerifyRequest,
};
use cluster_tilt_core::cluster::ClusterCategory;
use cluster_tilt_core::quiver::QuiverSpec;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use tokio::net::TcpListener;
use tokio::sync::oneshot;
use tokio::task::JoinHandle;
use tower_http::services::ServeDir;

pub use error::{ApiError, ErrorBody, ErrorEnvelope};

type ApiResult<T> = Result<Json<T>, ApiError>;

#[derive(Debug, Clone, Default)]
pub struct Config {
    /// Sessions are loaded from here on start and written back on shutdown.
    pub snapshot: Option<PathBuf>,
    /// Served at `/` for anything outside `/api`.
    pub static_dir: Option<PathBuf>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
struct SnapshotFile {
    sessions: BTreeMap<String, SessionSnapshot>,
}

#[derive(Clone, Default)]
pub struct AppState {
    inner: Arc<Inner>,
}

#[derive(Default)]
struct Inner {
    config: Config,
    sessions: RwLock<HashMap<String, Arc<RwLock<Session>>>>,
    categories: Mutex<HashMap<String, Arc<ClusterCategory>>>,
}

impl AppState {
    pub fn new(config: Config) -> Self {
        Self { inner: Arc::new(Inner { config, ..Default::default() }) }
    }

    pub fn config(&self) -> &Config {
        &self.inner.config
    }

    pub fn session_count(&self) -> usize {
        self.inner.sessions.read().unwrap().len()
    }

    fn category(&self, q: &QuiverSpec) -> cluster_tilt_core::Result<Arc<ClusterCategory>> {
        let key = q.to_string();
        if let Some(c) = self.inner.categories.lock().unwrap().get(&key) {
            return Ok(c.clone());
        }
        let built = Arc::new(ClusterCategory::new(q)?);
        Ok(self.inner.categories.lock().unwrap().entry(key).or_insert(built).clone())
    }

    fn session(&self, id: &str) -> Result<Arc<RwLock<Session>>, ApiError> {
        self.inner.sessions.read().unwrap().get(id).cloned().ok_or_else(|| ApiError::unknown_session(id))
    }

    fn insert(&self, session: Session) -> String {
        let id = uuid::Uuid::new_v4().to_string();
        self.inner.sessions.write().unwrap().insert(id.clone(), Arc::new(RwLock::new(session)));
        id
    }

    /// Rebuilds the sessions stored at `path`; returns how many were loaded.
    pub fn load_snapshot(&self, path: &FsPath) -> std::io::Result<usize> {
        let text = std::fs::read_to_string(path)?;
        let file: SnapshotFile =
            serde_json::from_str(&text).map_err(|e| std::io::Error::new(std::io::ErrorKind::InvalidData, e))?;
        let mut loaded = 0;
        for (id, snap) in file.sessions {
            let restored = QuiverSpec::parse(&snap.quiver)
                .and_then(|q| self.category(&q))
                .and_then(|c| Session::restore(c, &snap));
            match restored {
                Ok(s) => {
                    self.inner.sessions.write().unwrap().insert(id, Arc::new(RwLock::new(s)));
                    loaded += 1;
                }
                Err(e) => tracing::warn!(session = %id, "dropping snapshot entry: {e}"),
            }
        }
        Ok(loaded)
    }

    pub fn write_snapshot(&self, path: &FsPath) -> std::io::Result<()> {
        let sessions = self
            .inner
            .sessions
            .read()
            .unwrap()
            .iter()
            .map(|(id, s)| (id.clone(), s.read().unwrap().snapshot()))
            .collect();
        let text = serde_json::to_string_pretty(&SnapshotFile { sessions })?;
        std::fs::write(path, text)
    }
}

/// JSON body whose rejection uses the service's error envelope.
struct Body<T>(T);

impl<S: Send + Sync, T: DeserializeOwned> FromRequest<S> for Body<T> {
    type Rejection = ApiError;

    async fn from_request(req: Request, state: &S) -> Result<Self, Self::Rejection> {
        let bytes = Bytes::from_request(req, state).await.map_err(ApiError::bad_body)?;
        serde_json::from_slice(&bytes).map(Body).map_err(ApiError::bad_body)
    }
}

async fn blocking<T, F>(f: F) -> Result<T, ApiError>
where
    F: FnOnce() -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "internal_error", e.to_string()))?
}

async fn read_session<T, F>(state: AppState, id: String, f: F) -> ApiResult<T>
where
    F: FnOnce(&Session) -> Result<T, ApiError> + Send + 'static,
    T: Send + 'static,
{
    let session = state.session(&id)?;
    blocking(move || f(&session.read().unwrap())).await.map(Json)
}

pub fn router(state: AppState) -> Router {
    let api = Router::new()
        .route("/health", get(|| async { Json(serde_json::json!({ "status": "ok" })) }))
        .route("/check-dynkin", post(check_dynkin))
        .route("/session", post(create_session))
        .route("/session/{id}", get(session_info))
        .route("/session/{id}/ar", get(ar))
        .route("/session/{id}/tilting", get(tilting))
        .route("/session/{id}/tilting/all", get(all_tilting))
        .route("/session/{id}/mutate", post(mutate))
        .route("/session/{id}/endo", get(endo))
        .route("/session/{id}/hom", get(hom))
        .route("/verify/{kind}", post(verify))
        .fallback(|| async { ApiError::new(StatusCode::NOT_FOUND, "not_found", "no such endpoint") });
    let app = Router::new().nest("/api", api);
    let app = match &state.config().static_dir {
        Some(dir) => app.fallback_service(ServeDir::new(dir)),
        None => app,
    };
    app.with_state(state)
}

#[derive(Deserialize)]
struct QuiverBody {
    quiver: serde_json::Value,
}

async fn check_dynkin(Body(body): Body<QuiverBody>) -> ApiResult<DynkinInfo> {
    let q = api::parse_quiver_value(&body.quiver)?;
    Ok(Json(api::dynkin_info(&q)?))
}

async fn create_session(State(state): State<AppState>, Body(req): Body<CreateSession>) -> ApiResult<SessionInfo> {
    blocking(move || {
        let q = api::parse_quiver_value(&req.quiver)?;
        let session = Session::new(state.category(&q)?, req.tilting.as_deref())?;
        let id = state.insert(session.clone());
        Ok(session.info(&id))
    })
    .await
    .map(Json)
}

async fn session_info(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionInfo> {
    let key = id.clone();
    read_session(state, id, move |s| Ok(s.info(&key))).await
}

async fn ar(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> ApiResult<api::ArView> {
    let mode: ArMode = q.get("mode").map(|m| m.parse()).transpose()?.unwrap_or(ArMode::Cluster);
    read_session(state, id, move |s| Ok(s.ar(mode)?)).await
}

async fn tilting(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<SessionTilting> {
    read_session(state, id, |s| Ok(s.session_tilting())).await
}

async fn all_tilting(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<TiltingList> {
    read_session(state, id, |s| Ok(s.all_tilting()?)).await
}

async fn endo(State(state): State<AppState>, Path(id): Path<String>) -> ApiResult<EndoView> {
    read_session(state, id, |s| Ok(s.endo()?)).await
}

async fn hom(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<HashMap<String, String>>,
) -> ApiResult<HomView> {
    let arg = |k: &str| {
        q.get(k)
            .map(|v| match v.parse::<usize>() {
                Ok(i) => ObjectRef::Id(i),
                Err(_) => ObjectRef::Name(v.clone()),
            })
            .ok_or_else(|| ApiError::new(StatusCode::BAD_REQUEST, "missing_parameter", format!("query parameter `{k}` is required")))
    };
    let (x, y) = (arg("x")?, arg("y")?);
    read_session(state, id, move |s| Ok(s.hom(&x, &y)?)).await
}

async fn mutate(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Body(req): Body<MutateRequest>,
) -> ApiResult<MutationView> {
    let session = state.session(&id)?;
    blocking(move || {
        let mut s = session.write().unwrap();
        if let Some(expected) = &req.expected {
            let mut expected = expected.clone();
            expected.sort();
            if expected != s.tilting().summands() {
                return Err(ApiError::new(
                    StatusCode::CONFLICT,
                    "stale_tilting",
                    format!("session is at {}, request expected another tilting object", s.tilting_view().names.join(", ")),
                ));
            }
        }
        Ok(s.mutate(&req.at)?)
    })
    .await
    .map(Json)
}

async fn verify(
    State(state): State<AppState>,
    Path(kind): Path<String>,
    Body(req): Body<VerifyRequest>,
) -> ApiResult<VerifyReport> {
    let kind: VerifyKind = kind
        .parse()
        .map_err(|e: cluster_tilt_core::Error| ApiError::new(StatusCode::NOT_FOUND, "unknown_check", e.to_string()))?;
    blocking(move || {
        let q = api::parse_quiver_value(&req.quiver)?;
        let cat = state.category(&q)?;
        Ok(api::verify(&cat, kind, &req)?)
    })
    .await
    .map(Json)
}

/// Serves until `shutdown` resolves, then writes the snapshot if configured.
pub async fn serve(listener: TcpListener, state: AppState, shutdown: impl Future<Output = ()> + Send + 'static) -> std::io::Result<()> {
    if let Some(path) = &state.config().snapshot {
        match state.load_snapshot(path) {
            Ok(n) => tracing::info!("restored {n} sessions from {}", path.display()),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => {}
            Err(e) => tracing::warn!("ignoring snapshot {}: {e}", path.display()),
        }
    }
    axum::serve(listener, router(state.clone())).with_graceful_shutdown(shutdown).await?;
    if let Some(path) = &state.config().snapshot {
        state.write_snapshot(path)?;
        tracing::info!("wrote {} sessions to {}", state.session_count(), path.display());
    }
    Ok(())
}

/// A service on a loopback port chosen by the OS.
pub struct Running {
    pub addr: SocketAddr,
    stop: Option<oneshot::Sender<()>>,
    handle: JoinHandle<std::io::Result<()>>,
}

impl Running {
    pub fn url(&self) -> String {
        format!("http://{}", self.addr)
    }

    pub async fn shutdown(mut self) -> std::io::Result<()> {
        if let Some(stop) = self.stop.take() {
            let _ = stop.send(());
        }
        self.handle.await.map_err(std::io::Error::other)?
    }
}

pub async fn spawn_ephemeral(config: Config) -> std::io::Result<Running> {
    let listener = TcpListener::bind("127.0.0.1:0").await?;
    let addr = listener.local_addr()?;
    let (tx, rx) = oneshot::channel();
    let handle = tokio::spawn(serve(listener, AppState::new(config), async {
        let _ = rx.await;
    }));
    Ok(Running { addr, stop: Some(tx), handle })
}
