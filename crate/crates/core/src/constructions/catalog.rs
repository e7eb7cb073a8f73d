//! Named vertex sequences used by the spine orders.
//!
//! All indices here are 1-based with the fiber coordinate taken mod `t`, so
//! that expressions like `(s, 2−d)` can be written as they are read. Each
//! accessor returns flat vertex indices.

use crate::bundle::BundleSpec;
use crate::decomp::shift_residual_cycles;

#[derive(Debug, Clone)]
pub struct SequenceCatalog {
    pub s: usize,
    pub t: usize,
    /// Residual cycles `V_1, V_2, …` of a shift bundle (empty otherwise).
    residual: Vec<Vec<usize>>,
}

impl SequenceCatalog {
    pub fn new(spec: &BundleSpec) -> Self {
        let (s, t) = (spec.s(), spec.t());
        let residual = match spec.phi() {
            crate::bundle::Automorphism::Shift(d) if d >= 1 && d <= t / 2 => {
                shift_residual_cycles(s, t, d)
                    .expect("validated shift")
                    .cycles
                    .iter()
                    .map(|c| c.iter().map(|v| v.flat(t)).collect())
                    .collect()
            }
            _ => Vec::new(),
        };
        SequenceCatalog { s, t, residual }
    }

    /// Flat index of the 1-based pair `(i, j)`; `j` wraps mod `t`.
    pub fn v(&self, i: usize, j: i64) -> usize {
        debug_assert!((1..=self.s).contains(&i), "row {i} outside 1..={}", self.s);
        let q = (j - 1).rem_euclid(self.t as i64) as usize;
        (i - 1) * self.t + q
    }

    /// 1-based `(i, j)` of a flat index.
    pub fn pair(&self, v: usize) -> (usize, usize) {
        (v / self.t + 1, v % self.t + 1)
    }

    /// `A_i = (i,1), (i,2), …, (i,t)`.
    pub fn a(&self, i: usize) -> Vec<usize> {
        (1..=self.t as i64).map(|j| self.v(i, j)).collect()
    }

    /// `B_j = (1,j), (2,j), …, (s,j)` in natural order.
    pub fn b(&self, j: usize) -> Vec<usize> {
        (1..=self.s).map(|i| self.v(i, j as i64)).collect()
    }

    /// `V_k`, the clockwise residual cycle through `(1,k), (2,k), …`.
    pub fn residual(&self, k: usize) -> &[usize] {
        &self.residual[k - 1]
    }

    pub fn residual_count(&self) -> usize {
        self.residual.len()
    }

    /// Consecutive pairs of the closed residual cycle `H_k`.
    pub fn residual_edges(&self, k: usize) -> Vec<(usize, usize)> {
        closed_pairs(self.residual(k))
    }

    /// Fiber successor edge `((i,j), (i,j+1))` of a flat vertex.
    pub fn fiber_next(&self, v: usize) -> (usize, usize) {
        let (i, j) = self.pair(v);
        (v, self.v(i, j as i64 + 1))
    }
}

pub fn reversed(mut seq: Vec<usize>) -> Vec<usize> {
    seq.reverse();
    seq
}

pub fn closed_pairs(cycle: &[usize]) -> Vec<(usize, usize)> {
    (0..cycle.len()).map(|i| (cycle[i], cycle[(i + 1) % cycle.len()])).collect()
}
