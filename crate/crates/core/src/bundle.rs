//! Cartesian graph bundles `C_s □^φ C_t` of two cycles.
//!
//! Vertex `(p, q)` sits over base vertex `p ∈ Z_s` at fiber position
//! `q ∈ Z_t`, both 0-based, and flattens to `p·t + q`. Fibers are joined
//! by rungs `(p, q)–(p+1, q)` for `p < s−1`; the automorphism is applied
//! once, on the seam `(s−1, q)–(0, φ(q))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct BundleVertex {
    pub p: usize,
    pub q: usize,
}

impl BundleVertex {
    pub fn new(p: usize, q: usize) -> Self {
        BundleVertex { p, q }
    }

    pub fn flat(self, t: usize) -> usize {
        self.p * t + self.q
    }

    pub fn from_flat(v: usize, t: usize) -> Self {
        BundleVertex { p: v / t, q: v % t }
    }
}

impl fmt::Display for BundleVertex {
    /// Prints the 1-based pair used in figures.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.p + 1, self.q + 1)
    }
}

/// Number of fixed points of a fiber reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ReflectionKind {
    NoFixed,
    OneFixed,
    TwoFixed,
}

impl ReflectionKind {
    pub fn valid_for(self, t: usize) -> bool {
        match self {
            ReflectionKind::NoFixed | ReflectionKind::TwoFixed => t % 2 == 0,
            ReflectionKind::OneFixed => t % 2 == 1,
        }
    }

    /// The kinds available on a fiber of length `t`.
    pub fn for_length(t: usize) -> &'static [ReflectionKind] {
        if t % 2 == 0 {
            &[ReflectionKind::NoFixed, ReflectionKind::TwoFixed]
        } else {
            &[ReflectionKind::OneFixed]
        }
    }

    fn keyword(self) -> &'static str {
        match self {
            ReflectionKind::NoFixed => "none",
            ReflectionKind::OneFixed => "one",
            ReflectionKind::TwoFixed => "two",
        }
    }
}

/// Automorphism of the fiber cycle carried by the seam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Automorphism {
    Shift(usize),
    Reflection(ReflectionKind),
}

impl Automorphism {
    /// Image of fiber position `q` on a cycle of length `t`.
    ///
    /// Reflection axes are fixed: `NoFixed` and `OneFixed` map `q ↦ t−1−q`,
    /// `TwoFixed` maps `q ↦ −q` (fixed points 0 and t/2).
    pub fn apply(self, q: usize, t: usize) -> usize {
        match self {
            Automorphism::Shift(d) => (q + d) % t,
            Automorphism::Reflection(ReflectionKind::TwoFixed) => (t - q) % t,
            Automorphism::Reflection(_) => t - 1 - q,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BundleSpec {
    s: usize,
    t: usize,
    phi: Automorphism,
}

impl BundleSpec {
    pub fn new(s: usize, t: usize, phi: Automorphism) -> Result<Self> {
        if s < 3 || t < 3 {
            return Err(Error::InvalidSize(format!("bundle needs s, t >= 3 (got s={s}, t={t})")));
        }
        match phi {
            Automorphism::Shift(d) if d >= t => {
                return Err(Error::InvalidAutomorphism(format!("shift {d} not in Z_{t}")));
            }
            Automorphism::Reflection(kind) if !kind.valid_for(t) => {
                return Err(Error::InvalidAutomorphism(format!(
                    "reflection {:?} needs {} t (got t={t})",
                    kind,
                    if t % 2 == 0 { "odd" } else { "even" }
                )));
            }
            _ => {}
        }
        Ok(BundleSpec { s, t, phi })
    }

    pub fn shift(s: usize, t: usize, d: usize) -> Result<Self> {
        Self::new(s, t, Automorphism::Shift(d))
    }

    pub fn reflection(s: usize, t: usize, kind: ReflectionKind) -> Result<Self> {
        Self::new(s, t, Automorphism::Reflection(kind))
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn phi(&self) -> Automorphism {
        self.phi
    }

    pub fn vertex_count(&self) -> usize {
        self.s * self.t
    }

    pub fn flat(&self, p: usize, q: usize) -> usize {
        p * self.t + q
    }

    pub fn vertex(&self, v: usize) -> BundleVertex {
        BundleVertex::from_flat(v, self.t)
    }

    /// Seam partner in fiber 0 of `(s−1, q)`.
    pub fn seam_image(&self, q: usize) -> usize {
        self.phi.apply(q, self.t)
    }

    /// Bipartiteness as predicted from the parameters alone.
    pub fn predict_bipartite(&self) -> bool {
        match self.phi {
            Automorphism::Shift(d) => self.t % 2 == 0 && self.s % 2 == d % 2,
            Automorphism::Reflection(ReflectionKind::NoFixed) => self.s % 2 == 1,
            Automorphism::Reflection(ReflectionKind::TwoFixed) => self.s % 2 == 0,
            Automorphism::Reflection(ReflectionKind::OneFixed) => false,
        }
    }

    /// Replaces a `d`-shift by the isomorphic `min(d, t−d)`-shift.
    pub fn normalize_shift(&self) -> BundleSpec {
        match self.phi {
            Automorphism::Shift(d) if d > self.t - d && d != 0 => BundleSpec {
                phi: Automorphism::Shift(self.t - d),
                ..*self
            },
            _ => *self,
        }
    }

    /// The fiber reversal `(p, q) ↦ (p, −q)`, as a flat-index map. It sends
    /// the `d`-shift bundle onto the `(t−d)`-shift bundle.
    pub fn fiber_reversal(&self) -> Vec<usize> {
        (0..self.vertex_count())
            .map(|v| {
                let BundleVertex { p, q } = self.vertex(v);
                self.flat(p, (self.t - q) % self.t)
            })
            .collect()
    }

    pub fn fiber_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let t = self.t;
        (0..self.s).flat_map(move |p| (0..t).map(move |q| (p * t + q, p * t + (q + 1) % t)))
    }

    /// Rung and seam edges, i.e. everything outside the fibers.
    pub fn cross_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (s, t) = (self.s, self.t);
        let rungs = (0..s - 1).flat_map(move |p| (0..t).map(move |q| (p * t + q, (p + 1) * t + q)));
        let seams = (0..t).map(move |q| ((s - 1) * t + q, self.seam_image(q)));
        rungs.chain(seams)
    }

    pub fn graph(&self) -> Graph {
        Graph::new(self.vertex_count(), self.fiber_edges().chain(self.cross_edges()))
            .expect("bundle of two cycles with s, t >= 3 is simple")
    }
}

/// Builds `C_s □^φ C_t`.
pub fn bundle(spec: &BundleSpec) -> Graph {
    spec.graph()
}

impl fmt::Display for BundleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.phi {
            Automorphism::Shift(d) => write!(f, "s={},t={},phi=shift:{}", self.s, self.t, d),
            Automorphism::Reflection(k) => {
                write!(f, "s={},t={},phi=refl:{}", self.s, self.t, k.keyword())
            }
        }
    }
}

/// Parses `s=S,t=T,phi=shift:D` or `s=S,t=T,phi=refl:none|one|two`.
///
/// Syntax problems yield [`Error::Parse`]; well-formed but invalid
/// parameters yield the constructor's error.
impl FromStr for BundleSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut s = None;
        let mut t = None;
        let mut phi = None;
        for field in text.trim().split(',') {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {field:?}")))?;
            let slot_taken = match key.trim() {
                "s" => s.replace(parse_count(value)?).is_some(),
                "t" => t.replace(parse_count(value)?).is_some(),
                "phi" => phi.replace(parse_phi(value)?).is_some(),
                other => return Err(Error::Parse(format!("unknown key {other:?}"))),
            };
            if slot_taken {
                return Err(Error::Parse(format!(
                    "key {:?} given twice; one automorphism per bundle",
                    key.trim()
                )));
            }
        }
        match (s, t, phi) {
            (Some(s), Some(t), Some(phi)) => BundleSpec::new(s, t, phi),
            _ => Err(Error::Parse(format!("missing s, t or phi in {text:?}"))),
        }
    }
}

fn parse_count(value: &str) -> Result<usize> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not a count: {value:?}")))
}

fn parse_phi(value: &str) -> Result<Automorphism> {
    match value.trim().split_once(':') {
        Some(("shift", d)) => Ok(Automorphism::Shift(parse_count(d)?)),
        Some(("refl", "none")) => Ok(Automorphism::Reflection(ReflectionKind::NoFixed)),
        Some(("refl", "one")) => Ok(Automorphism::Reflection(ReflectionKind::OneFixed)),
        Some(("refl", "two")) => Ok(Automorphism::Reflection(ReflectionKind::TwoFixed)),
        _ => Err(Error::Parse(format!("unknown automorphism {value:?}"))),
    }
}

/// Every valid spec with `s` and `t` in the given inclusive ranges.
pub fn all_specs(s_range: std::ops::RangeInclusive<usize>, t_range: std::ops::RangeInclusive<usize>) -> Vec<BundleSpec> {
    let mut out = Vec::new();
    for s in s_range {
        for t in t_range.clone() {
            for d in 0..t {
                out.extend(BundleSpec::shift(s, t, d));
            }
            for &kind in ReflectionKind::for_length(t) {
                out.extend(BundleSpec::reflection(s, t, kind));
            }
        }
    }
    out
}
