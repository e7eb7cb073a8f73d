//! Cycle decompositions of bundles and the shrink operation.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::bundle::{Automorphism, BundleSpec, BundleVertex, ReflectionKind};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    /// The fiber cycles `F_i`.
    Fiber,
    /// Rung/seam cycles `H_k` of a shift bundle.
    ShiftResidual,
    /// Rung/seam cycles `D_j` of a reflection bundle.
    ReflectionResidual,
}

/// Edge-disjoint cycles, each an ordered vertex sequence (closing edge
/// implied).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub kind: DecompositionKind,
    pub cycles: Vec<Vec<BundleVertex>>,
    /// Set for the trivial shift, whose residual is `t` separate `s`-cycles.
    pub degenerate: bool,
}

impl Decomposition {
    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles.iter().map(Vec::len).collect()
    }

    /// All cycle edges as flat-index edges, in traversal order.
    pub fn edges(&self, t: usize) -> Vec<Edge> {
        self.cycles
            .iter()
            .flat_map(|c| {
                (0..c.len()).map(move |i| Edge::new(c[i].flat(t), c[(i + 1) % c.len()].flat(t)))
            })
            .collect()
    }
}

/// The fiber cycles `A_i = ((i,0), (i,1), …, (i,t−1))`.
pub fn fiber_cycles(spec: &BundleSpec) -> Decomposition {
    let t = spec.t();
    Decomposition {
        kind: DecompositionKind::Fiber,
        cycles: (0..spec.s())
            .map(|p| (0..t).map(|q| BundleVertex::new(p, q)).collect())
            .collect(),
        degenerate: false,
    }
}

/// Orbits of `+d` on `Z_t`: `gcd(t, d)` cycles, cycle `k` being
/// `k, k+d, k+2d, …`.
pub fn single_jump_cycles(t: usize, d: usize) -> Result<Vec<Vec<usize>>> {
    if d == 0 || d >= t {
        return Err(Error::InvalidJump { n: t, jump: d });
    }
    if 2 * d == t {
        return Err(Error::HalfJump { t, jump: d });
    }
    let g = t.gcd(&d);
    Ok((0..g)
        .map(|k| (0..t / g).map(|l| (k + l * d) % t).collect())
        .collect())
}

/// Contracts each part to a single vertex, dropping edges inside a part and
/// collapsing parallel edges.
///
/// Vertices outside every part stay as singleton classes. Classes are
/// numbered by their smallest original vertex.
pub fn shrink(g: &Graph, parts: &[Vec<usize>]) -> Result<Graph> {
    let n = g.vertex_count();
    let mut class = vec![usize::MAX; n];
    for (i, part) in parts.iter().enumerate() {
        for &v in part {
            if v >= n {
                return Err(Error::InvalidEdge(v, v));
            }
            if class[v] != usize::MAX {
                return Err(Error::InvalidPartition(v));
            }
            class[v] = i;
        }
    }
    let mut next_singleton = parts.len();
    for c in class.iter_mut().filter(|c| **c == usize::MAX) {
        *c = next_singleton;
        next_singleton += 1;
    }
    // renumber classes by their least member
    let mut first_seen = vec![usize::MAX; next_singleton];
    let mut count = 0;
    for v in 0..n {
        if first_seen[class[v]] == usize::MAX {
            first_seen[class[v]] = count;
            count += 1;
        }
    }
    let label = |v: usize| first_seen[class[v]];
    let edges = g
        .edges()
        .iter()
        .map(|e| (label(e.u()), label(e.v())))
        .filter(|(a, b)| a != b);
    Graph::new_collapsing(count, edges)
}

/// The column vertex sets `B′_j = {(0,j), …, (s−1,j)}` as flat indices.
pub fn column_parts(spec: &BundleSpec) -> Vec<Vec<usize>> {
    (0..spec.t())
        .map(|q| (0..spec.s()).map(|p| spec.flat(p, q)).collect())
        .collect()
}

/// The spanning subgraph left after deleting all fiber edges.
pub fn residual_graph(spec: &BundleSpec) -> Graph {
    Graph::new(spec.vertex_count(), spec.cross_edges()).expect("cross edges form a simple graph")
}

/// Residual cycles `H_k` of the `d`-shift bundle, `0 ≤ d ≤ t/2`.
///
/// Cycle `k` starts `(0,k), (1,k), …, (s−1,k)` and continues through the
/// seam into column `k+d`. For `d = 0` the `t` column cycles are returned
/// with `degenerate` set.
pub fn shift_residual_cycles(s: usize, t: usize, d: usize) -> Result<Decomposition> {
    BundleSpec::shift(s, t, d)?;
    if d > t / 2 {
        return Err(Error::InvalidJump { n: t, jump: d });
    }
    let g = if d == 0 { t } else { t.gcd(&d) };
    let cycles = (0..g)
        .map(|k| {
            (0..t / g)
                .flat_map(|l| {
                    let q = (k + l * d) % t;
                    (0..s).map(move |p| BundleVertex::new(p, q))
                })
                .collect()
        })
        .collect();
    Ok(Decomposition {
        kind: DecompositionKind::ShiftResidual,
        cycles,
        degenerate: d == 0,
    })
}

/// Residual cycles `D_j` of a reflection bundle: column `q` is paired with
/// its mirror column, fixed columns close on themselves.
pub fn reflection_residual_cycles(s: usize, t: usize, kind: ReflectionKind) -> Result<Decomposition> {
    let spec = BundleSpec::reflection(s, t, kind)?;
    debug_assert!(matches!(spec.phi(), Automorphism::Reflection(_)));
    let column = |q: usize| (0..s).map(move |p| BundleVertex::new(p, q));
    let cycles = (0..t)
        .filter_map(|q| {
            let mirror = spec.seam_image(q);
            match q.cmp(&mirror) {
                std::cmp::Ordering::Less => Some(column(q).chain(column(mirror)).collect()),
                std::cmp::Ordering::Equal => Some(column(q).collect()),
                std::cmp::Ordering::Greater => None,
            }
        })
        .collect();
    Ok(Decomposition {
        kind: DecompositionKind::ReflectionResidual,
        cycles,
        degenerate: false,
    })
}

/// The residual decomposition of `spec`'s own edge set. Shifts past `t/2`
/// are decomposed as `t−d` and mapped back by reversing every fiber.
pub fn residual_cycles(spec: &BundleSpec) -> Result<Decomposition> {
    let t = spec.t();
    match spec.phi() {
        Automorphism::Shift(d) if d > t / 2 => {
            let mut dec = shift_residual_cycles(spec.s(), t, t - d)?;
            for v in dec.cycles.iter_mut().flatten() {
                v.q = (t - v.q) % t;
            }
            Ok(dec)
        }
        Automorphism::Shift(d) => shift_residual_cycles(spec.s(), t, d),
        Automorphism::Reflection(kind) => reflection_residual_cycles(spec.s(), spec.t(), kind),
    }
}
