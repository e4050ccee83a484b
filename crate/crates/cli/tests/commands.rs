use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cluster-tilt")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

#[test]
fn corollary_count_report() {
    let o = run(&["verify", "corollary-count", "--quiver", "1->2 2->3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"], "14 tilting objects, all with 6 indecomposables; PASS");
}

#[test]
fn endo_dot_has_three_cycle_and_relations() {
    let o = run(&["endo", "--quiver", "1->2 2->3", "--tilting", "S3,P1,S1", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph gamma {"));
    assert_eq!(dot.matches("label=\"a").count(), 3);
    assert_eq!(dot.matches("color=red").count(), 3);
}

#[test]
fn rank_one_hom() {
    let o = run(&["hom", "--quiver", "1", "--x", "0", "--y", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), r#"{"dims":{},"total":0}"#);
}

#[test]
fn output_is_deterministic() {
    let args = ["ar", "--quiver", "1->2 3->2 3->4", "--mode", "gamma", "--tilting", "P1,P2,P3,P4"];
    let a = run(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&run(&args)));
    let dot = run(&["ar", "--quiver", "1->2", "--mode", "H", "--format", "dot"]);
    assert_eq!(stdout(&dot), stdout(&run(&["ar", "--quiver", "1->2", "--mode", "H", "--format", "dot"])));
}

#[test]
fn mutate_sequence_round_trips() {
    let o = run(&["mutate", "--quiver", "1->2 2->3", "--at", "P2,1.0.0"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["history"].as_array().unwrap().len(), 2);
    let first = json(&run(&["mutate", "--quiver", "1->2 2->3", "--at", "P2"]));
    assert_eq!(v["tilting"], first["previous"]);
    assert_eq!(first["current"], v["history"][0]["Mstar"]);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["ar", "--quiver", "1->2 2->1"]).status.code(), Some(1));
    assert_eq!(run(&["endo", "--quiver", "1->2", "--tilting", "P1"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["hom", "--quiver", "1"]).status.code(), Some(2));
    assert_eq!(run(&["tilting", "--quiver", "1->2", "--format", "dot"]).status.code(), Some(2));
    assert_eq!(run(&["ar", "--quiver-file", "/nonexistent/q.txt"]).status.code(), Some(2));
}

#[test]
fn quiver_file_and_listing() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d4.json");
    std::fs::write(&path, r#"{"vertices":[1,2,3,4],"arrows":[{"src":1,"tgt":2},{"src":3,"tgt":2},{"src":4,"tgt":2}]}"#).unwrap();
    let p = path.to_str().unwrap();
    let info = json(&run(&["check-dynkin", "--quiver-file", p]));
    assert_eq!(info["dynkin"], "D4");
    assert_eq!(json(&run(&["tilting", "--quiver-file", p]))["count"], 50);
}

#[test]
fn hidden_oracle_command() {
    let o = run(&["oracle", "--quiver", "1->2 3->2 3->4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["pass"], true);
    assert!(!stdout(&run(&["--help"])).contains("oracle"));
}

#[test]
fn against_external_server() {
    let rt = tokio::runtime::Runtime::new().unwrap();
    let running = rt.block_on(cluster_tilt_service::spawn_ephemeral(Default::default())).unwrap();
    let url = running.url();
    let o = run(&["verify", "apr", "--quiver", "1->2 2->3", "--vertex", "3", "--server", &url]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(json(&o)["checked"], 1);
    rt.block_on(running.shutdown()).unwrap();
}
