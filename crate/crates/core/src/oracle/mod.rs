//! Independent verification: lower bounds, certificate checks and an
//! exhaustive matching-book-thickness search for small graphs.

mod search;

use serde::Serialize;

pub use search::{brute_force_mbt, probe_pages, search_pages, Explored, MbtResult, MbtValue, PageSearch, SearchBudget};

use crate::bundle::BundleSpec;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{validate, BookEmbedding};

/// `Δ(g)`, raised to `Δ(g)+1` for regular non-bipartite graphs.
pub fn lower_bound(g: &Graph) -> usize {
    let delta = g.max_degree();
    if g.is_regular(delta) && !g.is_bipartite() {
        delta + 1
    } else {
        delta
    }
}

/// Checks that `map` is an isomorphism from `g` onto `h`.
///
/// A map that is not a bijection between equal vertex sets is an invalid
/// certificate, not a negative answer.
pub fn check_isomorphism(g: &Graph, h: &Graph, map: &[usize]) -> Result<bool> {
    let n = g.vertex_count();
    if h.vertex_count() != n || map.len() != n {
        return Err(Error::InvalidCertificate(format!(
            "map of length {} between graphs on {n} and {} vertices",
            map.len(),
            h.vertex_count()
        )));
    }
    let mut hit = vec![false; n];
    for (v, &image) in map.iter().enumerate() {
        if image >= n || std::mem::replace(&mut hit[image], true) {
            return Err(Error::InvalidCertificate(format!("map is not a bijection at vertex {v}")));
        }
    }
    if g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(g.edges().iter().all(|e| h.has_edge(map[e.u()], map[e.v()])))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Certification {
    /// The embedding meets the lower bound, so this is the exact value.
    Certified(usize),
    UpperBoundOnly,
}

/// Pins `mbt(bundle(spec))` when `emb` meets [`lower_bound`].
pub fn certify(spec: &BundleSpec, emb: &BookEmbedding) -> Result<Certification> {
    let g = spec.graph();
    let report = validate(&g, emb)?;
    if !report.is_valid() {
        return Err(Error::InvalidEmbedding(format!("{} violations", report.violations.len())));
    }
    if report.pages_used == lower_bound(&g) {
        Ok(Certification::Certified(report.pages_used))
    } else {
        Ok(Certification::UpperBoundOnly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{embed, Embedded};
    use crate::graph::cycle_graph;
    use crate::graph::Edge;

    #[test]
    fn lower_bounds() {
        assert_eq!(lower_bound(&BundleSpec::shift(5, 15, 5).unwrap().graph()), 5);
        assert_eq!(lower_bound(&BundleSpec::shift(5, 20, 5).unwrap().graph()), 4);
        assert_eq!(lower_bound(&cycle_graph(5).unwrap()), 3);
        assert_eq!(lower_bound(&cycle_graph(6).unwrap()), 2);
        assert_eq!(lower_bound(&Graph::new(3, []).unwrap()), 0);
    }

    #[test]
    fn isomorphism_certificates() {
        let c4 = cycle_graph(4).unwrap();
        let path = Graph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let id: Vec<usize> = (0..4).collect();
        assert!(check_isomorphism(&c4, &c4, &id).unwrap());
        assert!(!check_isomorphism(&c4, &path, &id).unwrap());
        assert!(check_isomorphism(&c4, &c4, &[1, 2, 3, 0]).unwrap());
        assert!(check_isomorphism(&c4, &c4, &[0, 2, 1, 3]).is_ok_and(|ok| !ok));
        assert!(matches!(check_isomorphism(&c4, &c4, &[0, 0, 1, 2]), Err(Error::InvalidCertificate(_))));
        assert!(check_isomorphism(&c4, &c4, &[0, 1, 2]).is_err());
    }

    fn built(spec: BundleSpec) -> BookEmbedding {
        match embed(&spec).unwrap() {
            Embedded::Built(r) => r.embedding,
            Embedded::Unsupported(u) => panic!("{u}"),
        }
    }

    #[test]
    fn certify_constructions() {
        let s = BundleSpec::shift(6, 10, 4).unwrap();
        assert_eq!(certify(&s, &built(s)).unwrap(), Certification::Certified(4));
        let s = BundleSpec::shift(5, 12, 4).unwrap();
        assert_eq!(certify(&s, &built(s)).unwrap(), Certification::Certified(5));
    }

    #[test]
    fn certify_loose_embedding() {
        let spec = BundleSpec::reflection(6, 8, crate::bundle::ReflectionKind::TwoFixed).unwrap();
        let emb = built(spec);
        assert!(certify(&BundleSpec::shift(6, 8, 0).unwrap(), &emb).is_err());

        // two edges alone on fresh pages keep the embedding valid
        let mut pages = emb.pages.clone();
        let edges: Vec<Edge> = pages.keys().copied().collect();
        pages.insert(edges[0], 5);
        pages.insert(edges[1], 6);
        let loose = BookEmbedding::new(emb.layout.clone(), pages, 7).unwrap();
        let report = validate(&spec.graph(), &loose).unwrap();
        assert!(report.is_valid());
        assert_eq!(report.pages_used, 6);
        assert_eq!(certify(&spec, &loose).unwrap(), Certification::UpperBoundOnly);
    }
}
