//! Shift bundles with `gcd(t, d) = 1` are two-jump circulants.
//!
//! The rung/seam subgraph is then a Hamilton cycle. Numbering the vertices
//! along it from `(0,0)` towards `(1,0)` turns every fiber edge into a jump
//! of constant length, which is computed independently from the
//! Diophantine equation `(t−d)·x ≡ 1 (mod t)`.

use num_integer::Integer;

use crate::bundle::{BundleSpec, BundleVertex};
use crate::decomp::shift_residual_cycles;
use crate::diophantine::{solve_position, DiophantineSolution};
use crate::error::{Error, Result};
use crate::graph::{circulant, Graph};
use crate::oracle::check_isomorphism;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantReduction {
    pub spec: BundleSpec,
    pub n: usize,
    /// Second jump, normalized into `2..=n/2`.
    pub jump: usize,
    /// `s·x0` before normalization.
    pub raw_jump: usize,
    pub solution: DiophantineSolution,
    /// `relabel[flat]` is the circulant vertex of bundle vertex `flat`.
    pub relabel: Vec<usize>,
}

impl CirculantReduction {
    pub fn label(&self, v: BundleVertex) -> usize {
        self.relabel[v.flat(self.spec.t())]
    }

    pub fn circulant(&self) -> Graph {
        circulant(self.n, &[1, self.jump]).expect("normalized jumps are in range")
    }
}

pub fn to_circulant(s: usize, t: usize, d: usize) -> Result<CirculantReduction> {
    let spec = BundleSpec::shift(s, t, d)?;
    if d == 0 || d > t / 2 {
        return Err(Error::InvalidJump { n: t, jump: d });
    }
    let g = t.gcd(&d);
    if g != 1 {
        return Err(Error::NotReducible(g));
    }
    let n = s * t;
    let hamilton = shift_residual_cycles(s, t, d)?;
    debug_assert_eq!(hamilton.cycles.len(), 1);
    let mut relabel = vec![usize::MAX; n];
    for (label, v) in hamilton.cycles[0].iter().enumerate() {
        relabel[v.flat(t)] = label;
    }

    let solution = solve_position((t - d) as u64, t as u64, 1)?;
    let raw_jump = s * solution.x0 as usize;
    let jump = raw_jump.min(n - raw_jump);

    let reduction = CirculantReduction { spec, n, jump, raw_jump, solution, relabel };
    if !check_isomorphism(&spec.graph(), &reduction.circulant(), &reduction.relabel)? {
        return Err(Error::InvalidCertificate(format!(
            "relabel of {spec} does not map onto C(Z_{n}, {{1, {jump}}})"
        )));
    }
    Ok(reduction)
}
