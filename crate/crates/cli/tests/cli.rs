use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bookbind(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bookbind")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &TempDir, name: &str, text: &[u8]) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn edge_set(v: &Value) -> Vec<(u64, u64)> {
    let mut edges: Vec<(u64, u64)> =
        v["edges"].as_array().unwrap().iter().map(|e| (e[0].as_u64().unwrap(), e[1].as_u64().unwrap())).collect();
    edges.sort_unstable();
    edges
}

#[test]
fn build_bundles_and_circulants() {
    let out = bookbind(&["build", "s=5,t=7,phi=shift:3"]);
    assert_eq!(code(&out), 0);
    let g = json(&out);
    assert_eq!(g["n"], 35);
    assert_eq!(edge_set(&g).len(), 70);
    assert_eq!(edge_set(&g), {
        let mut e = edge_set(&g);
        e.dedup();
        e
    });

    let out = bookbind(&["build", "circulant:n=35,S=1,10"]);
    assert_eq!(code(&out), 0);
    let c = json(&out);
    assert_eq!(c["n"], 35);

    // the reduction's relabel carries the bundle onto the circulant
    let red = json(&bookbind(&["embed", "s=5,t=7,phi=shift:3"]));
    let label: std::collections::HashMap<(u64, u64), u64> = red["relabel"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| ((r[0].as_u64().unwrap(), r[1].as_u64().unwrap()), r[2].as_u64().unwrap()))
        .collect();
    let flat = |v: u64| label[&(v / 7, v % 7)];
    let mut mapped: Vec<(u64, u64)> = edge_set(&g)
        .into_iter()
        .map(|(u, v)| {
            let (a, b) = (flat(u), flat(v));
            (a.min(b), a.max(b))
        })
        .collect();
    mapped.sort_unstable();
    assert_eq!(mapped, edge_set(&c));

    let dot = bookbind(&["build", "s=3,t=3,phi=shift:1", "--format", "dot"]);
    assert_eq!(code(&dot), 0);
    assert_eq!(String::from_utf8_lossy(&dot.stdout).matches(" -- ").count(), 18);
}

#[test]
fn build_errors() {
    assert_eq!(code(&bookbind(&["build", "s=2,t=7,phi=shift:3"])), 65);
    assert_eq!(code(&bookbind(&["build", "s=5,t=7,phi=twist:3"])), 64);
    assert_eq!(code(&bookbind(&["build", "circulant:n=8,S=1,5"])), 65);
    assert_eq!(code(&bookbind(&["build"])), 64);
    assert_eq!(code(&bookbind(&["frobnicate"])), 64);
}

#[test]
fn embed_reports() {
    let out = bookbind(&["embed", "s=6,t=10,phi=shift:4"]);
    assert_eq!(code(&out), 0);
    let e = json(&out);
    assert_eq!(e["claimed_pages"], 4);
    assert_eq!(e["provenance"]["construction"], "shift-even-gcd");

    let out = bookbind(&["embed", "s=8,t=10,phi=refl:none"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["claimed_pages"], 5);

    let out = bookbind(&["embed", "s=5,t=7,phi=shift:3"]);
    assert_eq!(code(&out), 3);
    let r = json(&out);
    assert_eq!((r["n"].as_u64(), r["jump"].as_u64()), (Some(35), Some(10)));

    assert_eq!(code(&bookbind(&["embed", "s=6,t=6,phi=shift:0"])), 3);
}

#[test]
fn verify_round_trip_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "s=6,t=8,phi=refl:two";
    let graph = write(&dir, "g.json", &bookbind(&["build", spec]).stdout);
    let emb_out = bookbind(&["embed", spec]);
    let emb = write(&dir, "e.json", &emb_out.stdout);
    let out = bookbind(&["verify", s(&graph), s(&emb)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["valid"], true);

    // put two edges at a common vertex on one page
    let mut doc = json(&emb_out);
    let pages = doc["pages"].as_array_mut().unwrap();
    let (a, b) = (pages[0].clone(), pages[0][0].clone());
    let j = (1..pages.len()).find(|&j| pages[j][0] == b || pages[j][1] == b).unwrap();
    pages[j][2] = a[2].clone();
    let bad = write(&dir, "bad.json", doc.to_string().as_bytes());
    let out = bookbind(&["verify", s(&graph), s(&bad)]);
    assert_eq!(code(&out), 2);
    let report = json(&out);
    assert_eq!(report["valid"], false);
    assert_eq!(report["is_proper"], false);
    assert!(!report["violations"].as_array().unwrap().is_empty());

    let text = String::from_utf8(emb_out.stdout).unwrap();
    let truncated = write(&dir, "cut.json", &text.as_bytes()[..text.len() / 2]);
    assert_eq!(code(&bookbind(&["verify", s(&graph), s(&truncated)])), 66);
    assert_eq!(code(&bookbind(&["verify", s(&graph), "/nonexistent/e.json"])), 66);

    // an embedding that misses edges of the graph
    let other = write(&dir, "other.json", &bookbind(&["build", "s=6,t=8,phi=shift:2"]).stdout);
    assert_eq!(code(&bookbind(&["verify", s(&other), s(&emb)])), 2);
}

#[test]
fn mbt_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let circ = write(&dir, "c.json", &bookbind(&["build", "circulant:n=9,S=1,3"]).stdout);
    let out = bookbind(&["mbt", s(&circ)]);
    assert_eq!(code(&out), 0);
    let r = json(&out);
    assert_eq!(r["value"], serde_json::json!({"kind": "exact", "m": 5}));
    assert!(r["witness"]["order"].is_array());

    let c6 = write(&dir, "c6.json", br#"{"n": 6, "edges": [[0,1],[1,2],[2,3],[3,4],[4,5],[0,5]]}"#);
    let out = bookbind(&["--sequential", "mbt", s(&c6)]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["value"]["m"], 2);

    let big = write(&dir, "b.json", &bookbind(&["build", "s=5,t=12,phi=shift:4"]).stdout);
    let out = bookbind(&["mbt", s(&big), "--max-nodes", "50"]);
    assert_eq!(code(&out), 4);
    assert_ne!(json(&out)["value"]["kind"], "exact");

    let out = bookbind(&["mbt", s(&circ), "--pages", "4"]);
    assert_eq!(code(&out), 4);
    assert_eq!(json(&out)["value"]["kind"], "lower_bound_only");

    let garbage = write(&dir, "x.json", b"{\"n\": 3, \"edges\": [[0,1]");
    assert_eq!(code(&bookbind(&["mbt", s(&garbage)])), 66);
    assert_eq!(code(&bookbind(&["mbt", s(&circ), "--max-nodes", "0"])), 65);
}

#[test]
fn render_outputs_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let spec = "s=5,t=13,phi=refl:one";
    let graph = write(&dir, "g.json", &bookbind(&["build", spec]).stdout);
    let emb = write(&dir, "e.json", &bookbind(&["embed", spec]).stdout);
    let a = bookbind(&["render", s(&graph), s(&emb), "--spec", spec]);
    let b = bookbind(&["render", s(&graph), s(&emb), "--spec", spec]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    let svg = String::from_utf8(a.stdout).unwrap();
    assert!(svg.starts_with("<svg"));
    assert!(svg.contains(">(5,13)</text>"));

    assert_eq!(code(&bookbind(&["render", s(&graph), s(&emb), "--palette", "red,blue"])), 65);

    let empty = write(&dir, "empty.json", br#"{"n": 0, "edges": []}"#);
    let none = write(&dir, "none.json", br#"{"order": [], "pages": [], "m": 1}"#);
    assert_eq!(code(&bookbind(&["render", s(&empty), s(&none)])), 65);

    let c4 = write(&dir, "c4.json", br#"{"n": 4, "edges": [[0,1],[1,2],[2,3],[0,3]]}"#);
    let flat = write(&dir, "flat.json", br#"{"order": [0,1,2,3], "pages": [[0,1,0],[1,2,0],[2,3,0],[0,3,0]], "m": 1}"#);
    assert_eq!(code(&bookbind(&["render", s(&c4), s(&flat)])), 2);
}

#[test]
fn sweep_tables() {
    let out = bookbind(&["sweep", "--s", "3-4", "--t", "4-6", "--family", "shift", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let rows = json(&out);
    let rows = rows.as_array().unwrap();
    assert_eq!(rows.len(), 6);
    assert!(rows.iter().all(|r| r["valid"] == true && r["certification"].is_object()));

    let out = bookbind(&["sweep", "--s", "3", "--t", "3-5", "--family", "reflection"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8_lossy(&out.stdout).contains("0 failed"));

    assert_eq!(code(&bookbind(&["sweep", "--s", "5-3", "--t", "4-6"])), 65);
    assert_eq!(code(&bookbind(&["sweep", "--s", "3-4", "--t", "x"])), 64);
    assert_eq!(code(&bookbind(&["sweep", "--s", "3", "--t", "4", "--family", "odd"])), 64);
}

#[test]
fn out_flag_and_thread_override() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.json");
    let out = bookbind(&["--out", s(&path), "build", "s=3,t=4,phi=refl:two"]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), bookbind(&["build", "s=3,t=4,phi=refl:two"]).stdout);

    let threaded = Command::new(env!("CARGO_BIN_EXE_bookbind"))
        .args(["sweep", "--s", "3", "--t", "4"])
        .env("BOOKBIND_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&threaded), 0);
    let bad = Command::new(env!("CARGO_BIN_EXE_bookbind"))
        .args(["sweep", "--s", "3", "--t", "4"])
        .env("BOOKBIND_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(code(&bad), 65);
}
