use axum::body::Body;
use axum::http::{Request, StatusCode};
use axum::Router;
use cluster_tilt_service::{router, AppState, Config};
use serde_json::{json, Value};
use tower::ServiceExt;

async fn call(app: &Router, method: &str, uri: &str, body: Option<Value>) -> (StatusCode, Value) {
    let req = Request::builder().method(method).uri(uri).header("content-type", "application/json");
    let req = match body {
        Some(b) => req.body(Body::from(b.to_string())).unwrap(),
        None => req.body(Body::empty()).unwrap(),
    };
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

fn app() -> Router {
    router(AppState::new(Config::default()))
}

async fn a3_session(app: &Router) -> String {
    let (status, info) = call(app, "POST", "/api/session", Some(json!({"quiver": "1->2 2->3"}))).await;
    assert_eq!(status, StatusCode::OK);
    info["session"].as_str().unwrap().to_string()
}

#[tokio::test]
async fn session_counts() {
    let app = app();
    let (_, info) = call(&app, "POST", "/api/session", Some(json!({"quiver": "1->2 2->3"}))).await;
    assert_eq!((info["n"].clone(), info["h"].clone(), info["objects"].clone()), (json!(3), json!(6), json!(9)));
    assert_eq!(info["tilting"]["names"].as_array().unwrap().len(), 3);
    let id = info["session"].as_str().unwrap();
    let (status, again) = call(&app, "GET", &format!("/api/session/{id}"), None).await;
    assert_eq!(status, StatusCode::OK);
    assert_eq!(again, info);
}

#[tokio::test]
async fn mutate_example_and_involution() {
    let app = app();
    let id = a3_session(&app).await;
    let (_, before) = call(&app, "GET", &format!("/api/session/{id}/tilting"), None).await;
    let (status, m) = call(&app, "POST", &format!("/api/session/{id}/mutate"), Some(json!({"at": "P2"}))).await;
    assert_eq!(status, StatusCode::OK, "{m}");
    let c = cluster_tilt_core::cluster::ClusterCategory::parse("1->2 2->3").unwrap();
    let want: Vec<usize> = {
        let mut v = c.resolve_list("S3,P1,S1").unwrap();
        v.sort();
        v.into_iter().map(|x| x.0).collect()
    };
    assert_eq!(m["tilting"]["summands"], json!(want));
    assert_eq!(m["exchange"]["M"], json!(c.resolve("P2").unwrap().0));
    assert_eq!(m["completions"].as_array().unwrap().len(), 2);
    assert_eq!(m["current"], m["exchange"]["Mstar"]);
    assert_eq!(m["presentation"]["relations"].as_array().unwrap().len(), 3);
    assert_eq!(m["ar"]["mode"], "gamma");

    let at = m["current"].clone();
    let (_, back) = call(&app, "POST", &format!("/api/session/{id}/mutate"), Some(json!({"at": at}))).await;
    assert_eq!(back["tilting"], before["tilting"]);
    assert_eq!(back["history"].as_array().unwrap().len(), 2);
}

#[tokio::test]
async fn stale_mutation_conflicts() {
    let app = app();
    let id = a3_session(&app).await;
    let (_, t) = call(&app, "GET", &format!("/api/session/{id}/tilting"), None).await;
    let expected = t["tilting"]["summands"].clone();
    let uri = format!("/api/session/{id}/mutate");
    let (status, _) = call(&app, "POST", &uri, Some(json!({"at": "P2", "expected": expected}))).await;
    assert_eq!(status, StatusCode::OK);
    let (status, err) = call(&app, "POST", &uri, Some(json!({"at": "P2", "expected": expected}))).await;
    assert_eq!(status, StatusCode::CONFLICT);
    assert_eq!(err["error"]["code"], "stale_tilting");
}

#[tokio::test]
async fn error_statuses() {
    let app = app();
    let (s, e) = call(&app, "POST", "/api/session", Some(json!({"quiver": "1->2 2->3 3->1"}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(e["error"]["code"], "not_acyclic");
    let (s, e) = call(&app, "POST", "/api/session", Some(json!({"quiver": "1->2 2->3", "tilting": ["P1", "P2"]}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(e["error"]["code"], "not_tilting");
    let (s, e) = call(&app, "GET", "/api/session/nope/tilting", None).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
    assert_eq!(e["error"]["code"], "unknown_session");
    let id = a3_session(&app).await;
    let (s, e) = call(&app, "POST", &format!("/api/session/{id}/mutate"), Some(json!({"at": "X9"}))).await;
    assert_eq!(s, StatusCode::NOT_FOUND, "{e}");
    let (s, e) = call(&app, "POST", &format!("/api/session/{id}/mutate"), Some(json!({"where": 1}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(e["error"]["code"], "invalid_body");
    let (s, _) = call(&app, "GET", &format!("/api/session/{id}/ar?mode=Q"), None).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    let (s, _) = call(&app, "POST", "/api/verify/lemma", Some(json!({"quiver": "1"}))).await;
    assert_eq!(s, StatusCode::NOT_FOUND);
}

#[tokio::test]
async fn views() {
    let app = app();
    let id = a3_session(&app).await;
    for (mode, n) in [("H", 6), ("C", 9), ("gamma", 9)] {
        let (s, v) = call(&app, "GET", &format!("/api/session/{id}/ar?mode={mode}"), None).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(v["vertices"].as_array().unwrap().len(), n, "{mode}");
        assert!(v["dot"].as_str().unwrap().starts_with("digraph"));
    }
    let (_, e) = call(&app, "GET", &format!("/api/session/{id}/endo"), None).await;
    assert_eq!(e["presentation"]["isHereditary"], true);
    let (_, all) = call(&app, "GET", &format!("/api/session/{id}/tilting/all"), None).await;
    assert_eq!(all["count"], 14);
    let (_, h) = call(&app, "GET", &format!("/api/session/{id}/hom?x=P3&y=P1"), None).await;
    assert!(h["total"].as_u64().unwrap() > 0);
}

#[tokio::test]
async fn rank_one_hom() {
    let app = app();
    let (_, info) = call(&app, "POST", "/api/session", Some(json!({"quiver": "1"}))).await;
    let id = info["session"].as_str().unwrap();
    let (_, h) = call(&app, "GET", &format!("/api/session/{id}/hom?x=0&y=1"), None).await;
    assert_eq!(h, json!({"dims": {}, "total": 0}));
}

#[tokio::test]
async fn verify_endpoints() {
    let app = app();
    let body = json!({"quiver": "1->2 2->3"});
    let (s, r) = call(&app, "POST", "/api/verify/corollary-count", Some(body.clone())).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(r["summary"], "14 tilting objects, all with 6 indecomposables; PASS");
    for kind in ["theorem-a", "theorem-b", "apr"] {
        let (s, r) = call(&app, "POST", &format!("/api/verify/{kind}"), Some(body.clone())).await;
        assert_eq!(s, StatusCode::OK);
        assert_eq!(r["pass"], true, "{kind}: {r}");
    }
    let (_, r) = call(&app, "POST", "/api/verify/theorem-b", Some(json!({"quiver": "1->2 2->3", "tbar": ["S3", "P1"]}))).await;
    assert_eq!(r["checked"], 1);
    assert!(r["details"][0]["homMatrix"].is_array());
}

#[tokio::test]
async fn check_dynkin() {
    let (s, r) = call(&app(), "POST", "/api/check-dynkin", Some(json!({"quiver": "1->2 3->2 4->2"}))).await;
    assert_eq!(s, StatusCode::OK);
    assert_eq!(r["dynkin"], "D4");
    assert_eq!(r["coxeter"], 6);
    let (s, r) = call(&app(), "POST", "/api/check-dynkin", Some(json!({"quiver": "1->2 1->3 1->4 1->5"}))).await;
    assert_eq!(s, StatusCode::BAD_REQUEST);
    assert_eq!(r["error"]["code"], "not_dynkin");
}

#[tokio::test]
async fn snapshot_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sessions.json");
    let state = AppState::new(Config { snapshot: Some(path.clone()), static_dir: None });
    let app = router(state.clone());
    let id = a3_session(&app).await;
    call(&app, "POST", &format!("/api/session/{id}/mutate"), Some(json!({"at": "P2"}))).await;
    let (_, before) = call(&app, "GET", &format!("/api/session/{id}/tilting"), None).await;
    state.write_snapshot(&path).unwrap();

    let fresh = AppState::new(Config::default());
    assert_eq!(fresh.load_snapshot(&path).unwrap(), 1);
    let (_, after) = call(&router(fresh), "GET", &format!("/api/session/{id}/tilting"), None).await;
    assert_eq!(after, before);
}

#[tokio::test]
async fn static_assets_and_live_server() {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.html"), "<html>explorer</html>").unwrap();
    let running = cluster_tilt_service::spawn_ephemeral(Config { snapshot: None, static_dir: Some(dir.path().into()) })
        .await
        .unwrap();
    let stream = tokio::net::TcpStream::connect(running.addr).await;
    assert!(stream.is_ok());
    running.shutdown().await.unwrap();

    let app = router(AppState::new(Config { snapshot: None, static_dir: Some(dir.path().into()) }));
    let resp = app
        .oneshot(Request::builder().uri("/index.html").body(Body::empty()).unwrap())
        .await
        .unwrap();
    assert_eq!(resp.status(), StatusCode::OK);
    let bytes = axum::body::to_bytes(resp.into_body(), usize::MAX).await.unwrap();
    assert_eq!(&bytes[..], b"<html>explorer</html>");
}
