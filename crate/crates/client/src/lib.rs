//! Typed calls against a running cluster-tilt service.

use cluster_tilt_core::api::{
    ArMode, ArView, CreateSession, DynkinInfo, EndoView, HomView, MutateRequest, MutationView, ObjectId, ObjectRef,
    SessionInfo, SessionTilting, TiltingList, VerifyKind, VerifyReport, VerifyRequest,
};
use reqwest::{Method, StatusCode};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum ClientError {
    /// The service answered with its error envelope.
    #[error("{message} ({code}, HTTP {status})")]
    Api { status: u16, code: String, message: String },
    #[error("request failed: {0}")]
    Transport(#[from] reqwest::Error),
    #[error("unexpected response (HTTP {status}): {body}")]
    Decode { status: u16, body: String },
}

impl ClientError {
    pub fn code(&self) -> &str {
        match self {
            ClientError::Api { code, .. } => code,
            ClientError::Transport(_) => "transport_error",
            ClientError::Decode { .. } => "decode_error",
        }
    }
}

pub type Result<T> = std::result::Result<T, ClientError>;

#[derive(Deserialize)]
struct Envelope {
    error: ErrorBody,
}

#[derive(Deserialize)]
struct ErrorBody {
    code: String,
    message: String,
}

#[derive(Debug, Clone)]
pub struct Client {
    base: String,
    http: reqwest::Client,
}

impl Client {
    pub fn new(base: impl Into<String>) -> Self {
        Self { base: base.into().trim_end_matches('/').to_string(), http: reqwest::Client::new() }
    }

    pub fn base_url(&self) -> &str {
        &self.base
    }

    async fn send<B: Serialize, T: DeserializeOwned>(
        &self,
        method: Method,
        path: &str,
        query: &[(&str, String)],
        body: Option<&B>,
    ) -> Result<T> {
        let mut req = self.http.request(method, format!("{}/api{path}", self.base)).query(query);
        if let Some(b) = body {
            req = req.json(b);
        }
        let resp = req.send().await?;
        let status = resp.status();
        let bytes = resp.bytes().await?;
        if status == StatusCode::OK {
            return serde_json::from_slice(&bytes).map_err(|_| ClientError::Decode {
                status: status.as_u16(),
                body: String::from_utf8_lossy(&bytes).into_owned(),
            });
        }
        match serde_json::from_slice::<Envelope>(&bytes) {
            Ok(e) => Err(ClientError::Api { status: status.as_u16(), code: e.error.code, message: e.error.message }),
            Err(_) => Err(ClientError::Decode { status: status.as_u16(), body: String::from_utf8_lossy(&bytes).into_owned() }),
        }
    }

    async fn get<T: DeserializeOwned>(&self, path: &str, query: &[(&str, String)]) -> Result<T> {
        self.send::<(), T>(Method::GET, path, query, None).await
    }

    async fn post<B: Serialize, T: DeserializeOwned>(&self, path: &str, body: &B) -> Result<T> {
        self.send(Method::POST, path, &[], Some(body)).await
    }

    pub async fn health(&self) -> Result<Value> {
        self.get("/health", &[]).await
    }

    pub async fn check_dynkin(&self, quiver: &str) -> Result<DynkinInfo> {
        self.post("/check-dynkin", &json!({ "quiver": quiver })).await
    }

    pub async fn create_session(&self, quiver: &str, tilting: Option<Vec<ObjectRef>>) -> Result<SessionInfo> {
        self.post("/session", &CreateSession { quiver: Value::from(quiver), tilting }).await
    }

    pub async fn session(&self, id: &str) -> Result<SessionInfo> {
        self.get(&format!("/session/{id}"), &[]).await
    }

    pub async fn ar(&self, id: &str, mode: ArMode) -> Result<ArView> {
        self.get(&format!("/session/{id}/ar"), &[("mode", mode.to_string())]).await
    }

    pub async fn tilting(&self, id: &str) -> Result<SessionTilting> {
        self.get(&format!("/session/{id}/tilting"), &[]).await
    }

    pub async fn all_tilting(&self, id: &str) -> Result<TiltingList> {
        self.get(&format!("/session/{id}/tilting/all"), &[]).await
    }

    pub async fn endo(&self, id: &str) -> Result<EndoView> {
        self.get(&format!("/session/{id}/endo"), &[]).await
    }

    pub async fn hom(&self, id: &str, x: &ObjectRef, y: &ObjectRef) -> Result<HomView> {
        self.get(&format!("/session/{id}/hom"), &[("x", x.to_string()), ("y", y.to_string())]).await
    }

    /// `expected` makes the call fail with `stale_tilting` if another
    /// client has moved the session on.
    pub async fn mutate(&self, id: &str, at: ObjectRef, expected: Option<Vec<ObjectId>>) -> Result<MutationView> {
        self.post(&format!("/session/{id}/mutate"), &MutateRequest { at, expected }).await
    }

    pub async fn verify(&self, kind: VerifyKind, req: &VerifyRequest) -> Result<VerifyReport> {
        self.post(&format!("/verify/{kind}"), req).await
    }
}
