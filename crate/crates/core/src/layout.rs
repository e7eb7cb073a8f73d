//! Circular layouts, chord crossings, and the matching book embedding
//! validator.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Edge, Graph};

/// A spine order: `order[i]` is the vertex at clockwise position `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircularLayout {
    order: Vec<usize>,
    pos: Vec<usize>,
}

impl CircularLayout {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidLayout(format!("vertex {v} out of range for {n} positions")));
            }
            if pos[v] != usize::MAX {
                return Err(Error::InvalidLayout(format!("vertex {v} placed twice")));
            }
            pos[v] = i;
        }
        Ok(CircularLayout { order, pos })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    /// Same layout under the vertex relabeling `map` (`map[old] = new`).
    pub fn relabeled(&self, map: &[usize]) -> Result<Self> {
        CircularLayout::new(self.order.iter().map(|&v| map[v]).collect())
    }
}

/// Whether two chords cross on the circle. Chords sharing an endpoint never
/// cross.
pub fn chords_cross(layout: &CircularLayout, e1: Edge, e2: Edge) -> bool {
    if e1.shares_endpoint(e2) {
        return false;
    }
    let (a, b) = ordered(layout.position(e1.u()), layout.position(e1.v()));
    let inside = |w: usize| {
        let p = layout.position(w);
        a < p && p < b
    };
    inside(e2.u()) != inside(e2.v())
}

fn ordered(x: usize, y: usize) -> (usize, usize) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

/// A layout with a total page assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BookEmbedding {
    pub layout: CircularLayout,
    pub pages: BTreeMap<Edge, usize>,
    pub m: usize,
}

impl BookEmbedding {
    pub fn new(layout: CircularLayout, pages: BTreeMap<Edge, usize>, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidEmbedding("page count must be positive".into()));
        }
        if let Some(&page) = pages.values().find(|&&p| p >= m) {
            return Err(Error::PageOutOfRange { page, m });
        }
        Ok(BookEmbedding { layout, pages, m })
    }

    pub fn page(&self, e: Edge) -> Option<usize> {
        self.pages.get(&e).copied()
    }

    pub fn pages_used(&self) -> usize {
        let mut used: Vec<usize> = self.pages.values().copied().collect();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// Same embedding under the vertex relabeling `map` (`map[old] = new`).
    pub fn relabeled(&self, map: &[usize]) -> Result<Self> {
        let pages = self
            .pages
            .iter()
            .map(|(e, &p)| (Edge::new(map[e.u()], map[e.v()]), p))
            .collect();
        BookEmbedding::new(self.layout.relabeled(map)?, pages, self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationReason {
    SharedEndpoint,
    Crossing,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub first: Edge,
    pub second: Edge,
    pub page: usize,
    pub reason: ViolationReason,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = match self.reason {
            ViolationReason::SharedEndpoint => "share an endpoint",
            ViolationReason::Crossing => "cross",
        };
        write!(f, "{} and {} {} on page {}", self.first, self.second, why, self.page)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub is_proper: bool,
    pub is_noncrossing: bool,
    pub pages_used: usize,
    /// Sorted by `(first, second)`.
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.is_proper && self.is_noncrossing
    }
}

/// Checks that `emb` is a matching book embedding of `g`: each page is a
/// matching and no two same-page chords cross.
pub fn validate(g: &Graph, emb: &BookEmbedding) -> Result<ValidationReport> {
    validate_with(g, emb, Execution::default())
}

pub fn validate_with(g: &Graph, emb: &BookEmbedding, exec: Execution) -> Result<ValidationReport> {
    if emb.layout.len() != g.vertex_count() {
        return Err(Error::InvalidLayout(format!(
            "layout has {} vertices, graph has {}",
            emb.layout.len(),
            g.vertex_count()
        )));
    }
    let mut extra = emb.pages.keys().filter(|e| g.edge_index(**e).is_none());
    if let Some(&e) = extra.next() {
        return Err(Error::ExtraEdge(e));
    }
    if let Some(&e) = g.edges().iter().find(|e| !emb.pages.contains_key(e)) {
        return Err(Error::MissingEdge(e));
    }

    let mut by_page: Vec<Vec<Edge>> = vec![Vec::new(); emb.m];
    for (&e, &p) in &emb.pages {
        by_page[p].push(e);
    }
    // one task per (page, edge) so large pages split across workers
    let tasks: Vec<(usize, usize)> = by_page
        .iter()
        .enumerate()
        .flat_map(|(p, edges)| (0..edges.len()).map(move |i| (p, i)))
        .collect();
    let found = exec.map(&tasks, |&(p, i)| {
        let edges = &by_page[p];
        let e = edges[i];
        edges[i + 1..]
            .iter()
            .filter_map(|&f| {
                let reason = if e.shares_endpoint(f) {
                    ViolationReason::SharedEndpoint
                } else if chords_cross(&emb.layout, e, f) {
                    ViolationReason::Crossing
                } else {
                    return None;
                };
                Some(Violation { first: e, second: f, page: p, reason })
            })
            .collect::<Vec<_>>()
    });
    let mut violations: Vec<Violation> = found.into_iter().flatten().collect();
    violations.sort_unstable();
    let report = ValidationReport {
        is_proper: !violations.iter().any(|v| v.reason == ViolationReason::SharedEndpoint),
        is_noncrossing: !violations.iter().any(|v| v.reason == ViolationReason::Crossing),
        pages_used: emb.pages_used(),
        violations,
    };
    debug_assert!(!report.is_valid() || report.pages_used >= g.max_degree());
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dispersability {
    Dispersable,
    NearlyDispersable,
    Neither,
}

/// Classifies a valid embedding by its page count relative to `Δ(g)`.
pub fn classify(g: &Graph, emb: &BookEmbedding) -> Result<Dispersability> {
    let report = validate(g, emb)?;
    if !report.is_valid() {
        return Err(Error::InvalidEmbedding(format!("{} violations", report.violations.len())));
    }
    let delta = g.max_degree();
    Ok(match report.pages_used {
        p if p == delta => Dispersability::Dispersable,
        p if p == delta + 1 => Dispersability::NearlyDispersable,
        _ => Dispersability::Neither,
    })
}
