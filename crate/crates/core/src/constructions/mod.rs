//! Explicit optimal matching book embeddings of `C_s □^φ C_t`.
//!
//! Each construction fixes a spine order, assigns the explicitly listed
//! edge sets verbatim, and leaves the rest to a completion search that may
//! only use the palette named for that step. The outcome is validated
//! before it is returned; a failure carries the construction's tag.
//!
//! Page indices: yellow 0, green 1, purple 2, red 3, blue 4.

mod catalog;
mod reflection;
mod shift;

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

pub use catalog::SequenceCatalog;
pub use reflection::{embed_reflection_s_even, embed_reflection_s_odd};
pub use shift::{embed_shift_even_gcd, embed_shift_odd_gcd};

use crate::bundle::{Automorphism, BundleSpec, ReflectionKind};
use crate::complete::{complete, palette, CompletionError, Palette, Slot};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::layout::{validate, BookEmbedding, CircularLayout};

pub const YELLOW: usize = 0;
pub const GREEN: usize = 1;
pub const PURPLE: usize = 2;
pub const RED: usize = 3;
pub const BLUE: usize = 4;

pub const COLOR_NAMES: [&str; 5] = ["yellow", "green", "purple", "red", "blue"];

/// Node cap for a single completion search.
const COMPLETION_BUDGET: u64 = 20_000_000;

/// Which construction produced an embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub construction: &'static str,
    pub case: &'static str,
    /// The listed colors clashed and every edge was recolored over the
    /// claimed pages on the construction's own spine.
    pub relaxed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionResult {
    pub spec: BundleSpec,
    pub embedding: BookEmbedding,
    pub claimed_pages: usize,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unsupported {
    /// `d = 0`: the plain Cartesian product.
    TrivialShift,
    /// `gcd(t, d) = 1`: isomorphic to a two-jump circulant.
    CoprimeShift,
}

impl std::fmt::Display for Unsupported {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Unsupported::TrivialShift => write!(f, "trivial shift (Cartesian product of two cycles)"),
            Unsupported::CoprimeShift => {
                write!(f, "gcd(t, d) = 1: the bundle is a circulant C(Z_st, {{1, k}}); use the circulant reduction")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Embedded {
    Built(ConstructionResult),
    Unsupported(Unsupported),
}

/// Dispatches to the construction for the spec's case.
///
/// Shifts are normalized to `d ≤ t/2` first; the embedding is mapped back
/// through the fiber reversal so that it always embeds `bundle(spec)`.
pub fn embed(spec: &BundleSpec) -> Result<Embedded> {
    let result = match spec.phi() {
        Automorphism::Shift(_) => {
            let norm = spec.normalize_shift();
            let Automorphism::Shift(d) = norm.phi() else { unreachable!() };
            let (s, t) = (spec.s(), spec.t());
            if d == 0 {
                return Ok(Embedded::Unsupported(Unsupported::TrivialShift));
            }
            let g = t.gcd(&d);
            let built = if g == 1 {
                return Ok(Embedded::Unsupported(Unsupported::CoprimeShift));
            } else if g % 2 == 0 {
                embed_shift_even_gcd(s, t, d)?
            } else {
                embed_shift_odd_gcd(s, t, d)?
            };
            if norm == *spec {
                built
            } else {
                let map = spec.fiber_reversal();
                ConstructionResult {
                    spec: *spec,
                    embedding: built.embedding.relabeled(&map)?,
                    ..built
                }
            }
        }
        Automorphism::Reflection(kind) if spec.s() % 2 == 1 => embed_reflection_s_odd(spec.s(), spec.t(), kind)?,
        Automorphism::Reflection(kind) => embed_reflection_s_even(spec.s(), spec.t(), kind)?,
    };
    Ok(Embedded::Built(result))
}

/// Accumulates a spine order, fixed pages and step palettes for one
/// construction, then completes and validates.
struct Builder {
    spec: BundleSpec,
    tag: Provenance,
    graph: Graph,
    cat: SequenceCatalog,
    order: Vec<usize>,
    fixed: BTreeMap<Edge, usize>,
    free: BTreeMap<Edge, Palette>,
    relaxable: bool,
}

impl Builder {
    fn new(spec: BundleSpec, tag: Provenance) -> Self {
        Builder {
            graph: spec.graph(),
            cat: SequenceCatalog::new(&spec),
            spec,
            tag,
            order: Vec::with_capacity(spec.vertex_count()),
            fixed: BTreeMap::new(),
            free: BTreeMap::new(),
            relaxable: false,
        }
    }

    /// Small parameters where listed sets collide: if the listed coloring
    /// cannot be completed, keep the spine and search all pages instead.
    fn relax_on_failure(&mut self) {
        self.relaxable = true;
    }

    fn fail(&self, reason: String) -> Error {
        Error::Construction { construction: self.tag.construction, reason: format!("{}: {reason}", self.spec) }
    }

    fn pair_str(&self, v: usize) -> String {
        let (i, j) = self.cat.pair(v);
        format!("({i},{j})")
    }

    fn edge(&self, u: usize, v: usize) -> Result<Edge> {
        if self.graph.has_edge(u, v) {
            Ok(Edge::new(u, v))
        } else {
            Err(self.fail(format!("{}–{} is not an edge", self.pair_str(u), self.pair_str(v))))
        }
    }

    fn append(&mut self, seq: impl IntoIterator<Item = usize>) {
        self.order.extend(seq);
    }

    /// Assigns a page to an explicitly listed edge.
    fn fix(&mut self, u: usize, v: usize, page: usize) -> Result<()> {
        let e = self.edge(u, v)?;
        match self.fixed.insert(e, page) {
            Some(prev) if prev != page => Err(self.fail(format!(
                "edge {}–{} listed as both {} and {}",
                self.pair_str(u),
                self.pair_str(v),
                COLOR_NAMES[prev],
                COLOR_NAMES[page]
            ))),
            _ => Ok(()),
        }
    }

    /// Allows `pages` for each listed edge that is not explicitly fixed.
    fn allow(&mut self, edges: impl IntoIterator<Item = (usize, usize)>, pages: &[usize]) -> Result<()> {
        let pal = palette(pages);
        for (u, v) in edges {
            let e = self.edge(u, v)?;
            if self.fixed.contains_key(&e) {
                continue;
            }
            if let Some(prev) = self.free.insert(e, pal) {
                if prev != pal {
                    return Err(self.fail(format!(
                        "edge {}–{} placed in two completion steps",
                        self.pair_str(u),
                        self.pair_str(v)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Like [`Builder::allow`], skipping edges an earlier step already
    /// placed.
    fn allow_rest(&mut self, edges: impl IntoIterator<Item = (usize, usize)>, pages: &[usize]) -> Result<()> {
        let pal = palette(pages);
        for (u, v) in edges {
            let e = self.edge(u, v)?;
            if !self.fixed.contains_key(&e) {
                self.free.entry(e).or_insert(pal);
            }
        }
        Ok(())
    }

    fn finish(self, claimed_pages: usize) -> Result<ConstructionResult> {
        let n = self.spec.vertex_count();
        if self.order.len() != n {
            return Err(self.fail(format!("spine has {} of {n} vertices", self.order.len())));
        }
        let layout = CircularLayout::new(self.order.clone()).map_err(|e| self.fail(e.to_string()))?;
        let mut slots = Vec::with_capacity(self.graph.edge_count());
        for &e in self.graph.edges() {
            let slot = match (self.fixed.get(&e), self.free.get(&e)) {
                (Some(&p), _) => Slot::Fixed(p),
                (None, Some(&pal)) => Slot::Free(pal),
                (None, None) => {
                    return Err(self.fail(format!(
                        "edge {}–{} is never colored",
                        self.pair_str(e.u()),
                        self.pair_str(e.v())
                    )))
                }
            };
            slots.push(slot);
        }
        let mut tag = self.tag;
        let listed = complete(&self.graph, &layout, &slots, COMPLETION_BUDGET);
        let listed = match listed {
            Err(_) if self.relaxable => {
                tag.relaxed = true;
                let all = palette(&(0..claimed_pages).collect::<Vec<_>>());
                complete(&self.graph, &layout, &vec![Slot::Free(all); slots.len()], COMPLETION_BUDGET)
            }
            other => other,
        };
        let pages = listed.map_err(|err| match err {
            CompletionError::FixedConflict { first, second, page } => self.fail(format!(
                "listed edges {}–{} and {}–{} conflict on {}",
                self.pair_str(first.u()),
                self.pair_str(first.v()),
                self.pair_str(second.u()),
                self.pair_str(second.v()),
                COLOR_NAMES[page]
            )),
            CompletionError::Unconstrained(e) => self.fail(format!("edge {e} has an empty palette")),
            CompletionError::Infeasible => self.fail("no completion within the step palettes".into()),
            CompletionError::BudgetExhausted => self.fail("completion search budget exhausted".into()),
        })?;
        // fixed color indices may leave a gap (e.g. blue without purple)
        let m = pages.iter().max().map_or(1, |&p| p + 1);
        let assignment = self.graph.edges().iter().copied().zip(pages).collect();
        let embedding = BookEmbedding::new(layout, assignment, m).map_err(|e| self.fail(e.to_string()))?;
        let report = validate(&self.graph, &embedding)?;
        if !report.is_valid() || report.pages_used != claimed_pages {
            return Err(self.fail(format!(
                "validation: {} violations, {} pages used of {claimed_pages}",
                report.violations.len(),
                report.pages_used
            )));
        }
        Ok(ConstructionResult { spec: self.spec, embedding, claimed_pages, provenance: tag })
    }
}

fn require(cond: bool, construction: &'static str, spec: &BundleSpec, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Construction { construction, reason: format!("{spec}: precondition violated: {what}") })
    }
}

pub(crate) fn reflection_kind_name(kind: ReflectionKind) -> &'static str {
    match kind {
        ReflectionKind::NoFixed => "no-fixed-point",
        ReflectionKind::OneFixed => "one-fixed-point",
        ReflectionKind::TwoFixed => "two-fixed-points",
    }
}
