//! JSON and DOT file formats. Vertices are 0-based flat indices throughout.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::ConstructionResult;
use crate::decomp::Decomposition;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::layout::{BookEmbedding, CircularLayout, ValidationReport};
use crate::oracle::{MbtResult, MbtValue};
use crate::reduction::CirculantReduction;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphFile {
    n: usize,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize, Deserialize)]
struct EmbeddingFile {
    order: Vec<usize>,
    pages: Vec<[usize; 3]>,
    m: usize,
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

pub fn graph_json(g: &Graph) -> Value {
    let edges: Vec<[usize; 2]> = g.edges().iter().map(|e| [e.u(), e.v()]).collect();
    json!({ "n": g.vertex_count(), "edges": edges })
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let file: GraphFile = parse(text, "graph")?;
    Graph::new(file.n, file.edges.iter().map(|&[u, v]| (u, v)))
}

pub fn graph_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.vertex_count() {
        let _ = writeln!(out, "  {v};");
    }
    for e in g.edges() {
        let _ = writeln!(out, "  {} -- {};", e.u(), e.v());
    }
    out.push_str("}\n");
    out
}

pub fn embedding_json(emb: &BookEmbedding) -> Value {
    let pages: Vec<[usize; 3]> = emb.pages.iter().map(|(e, &p)| [e.u(), e.v(), p]).collect();
    json!({ "order": emb.layout.order(), "pages": pages, "m": emb.m })
}

/// Parses an embedding; extra keys (such as a provenance header) are ignored.
pub fn parse_embedding(text: &str) -> Result<BookEmbedding> {
    let file: EmbeddingFile = parse(text, "embedding")?;
    let layout = CircularLayout::new(file.order)?;
    let mut pages = BTreeMap::new();
    for [u, v, p] in file.pages {
        if u == v {
            return Err(Error::InvalidEdge(u, v));
        }
        if pages.insert(Edge::new(u, v), p).is_some() {
            return Err(Error::Parse(format!("edge ({u}, {v}) listed twice")));
        }
    }
    BookEmbedding::new(layout, pages, file.m)
}

pub fn report_json(report: &ValidationReport) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "first": [v.first.u(), v.first.v()],
                "second": [v.second.u(), v.second.v()],
                "page": v.page,
                "reason": v.reason,
            })
        })
        .collect();
    json!({
        "valid": report.is_valid(),
        "is_proper": report.is_proper,
        "is_noncrossing": report.is_noncrossing,
        "pages_used": report.pages_used,
        "violations": violations,
    })
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    let cycles: Vec<Vec<[usize; 2]>> =
        d.cycles.iter().map(|c| c.iter().map(|v| [v.p, v.q]).collect()).collect();
    json!({ "kind": d.kind, "degenerate": d.degenerate, "cycles": cycles })
}

pub fn reduction_json(r: &CirculantReduction) -> Value {
    let t = r.spec.t();
    let relabel: Vec<[usize; 3]> = r.relabel.iter().enumerate().map(|(v, &label)| [v / t, v % t, label]).collect();
    json!({
        "spec": r.spec.to_string(),
        "n": r.n,
        "jump": r.jump,
        "raw_jump": r.raw_jump,
        "x0": r.solution.x0,
        "relabel": relabel,
    })
}

pub fn mbt_value_json(value: MbtValue) -> Value {
    match value {
        MbtValue::Exact(m) => json!({ "kind": "exact", "m": m }),
        MbtValue::LowerBoundOnly(m) => json!({ "kind": "lower_bound_only", "m": m }),
        MbtValue::Inconclusive => json!({ "kind": "inconclusive" }),
    }
}

pub fn mbt_json(r: &MbtResult) -> Value {
    json!({
        "value": mbt_value_json(r.value),
        "witness": r.witness.as_ref().map(embedding_json),
        "explored": r.explored,
    })
}

/// Embedding fields plus the spec, claimed page count and provenance.
pub fn construction_json(r: &ConstructionResult) -> Value {
    let mut out = embedding_json(&r.embedding);
    let obj = out.as_object_mut().expect("embedding JSON is an object");
    obj.insert("spec".into(), json!(r.spec.to_string()));
    obj.insert("claimed_pages".into(), json!(r.claimed_pages));
    obj.insert("provenance".into(), json!(r.provenance));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::BundleSpec;
    use crate::constructions::{embed, Embedded};

    #[test]
    fn graph_round_trip() {
        let g = BundleSpec::shift(5, 7, 3).unwrap().graph();
        let text = graph_json(&g).to_string();
        assert_eq!(parse_graph(&text).unwrap(), g);
    }

    #[test]
    fn graph_parse_errors() {
        assert!(matches!(parse_graph("{\"n\": 3, \"edges\": [[0, 1]"), Err(Error::Parse(_))));
        assert!(matches!(parse_graph("{\"n\": 3}"), Err(Error::Parse(_))));
        assert!(parse_graph("{\"n\": 3, \"edges\": [[0, 3]]}").is_err());
    }

    #[test]
    fn construction_round_trip() {
        let Embedded::Built(r) = embed(&"s=6,t=8,phi=refl:two".parse().unwrap()).unwrap() else { panic!() };
        let text = construction_json(&r).to_string();
        assert_eq!(parse_embedding(&text).unwrap(), r.embedding);
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["provenance"]["construction"], "reflection-s-even");
    }

    #[test]
    fn embedding_duplicates_rejected() {
        let text = r#"{"order": [0, 1, 2], "pages": [[0, 1, 0], [1, 0, 1]], "m": 2}"#;
        assert!(matches!(parse_embedding(text), Err(Error::Parse(_))));
    }

    #[test]
    fn mbt_value_shapes() {
        assert_eq!(mbt_value_json(MbtValue::Exact(5)), json!({"kind": "exact", "m": 5}));
        assert_eq!(mbt_value_json(MbtValue::Inconclusive), json!({"kind": "inconclusive"}));
    }
}
