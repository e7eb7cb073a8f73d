//! Completes a partial page assignment on a fixed spine order.
//!
//! Pre-assigned edges are kept verbatim. Every remaining edge carries its
//! own allowed palette, and the search assigns pages so that the result is
//! a matching book embedding: conflicting edges (shared endpoint or
//! crossing chords) never share a page. Search is DSATUR-ordered
//! backtracking with forward checking.

use crate::graph::{Edge, Graph};
use crate::layout::{chords_cross, CircularLayout};

/// Bitmask of allowed pages (bit `i` = page `i`).
pub type Palette = u32;

pub fn palette(pages: &[usize]) -> Palette {
    pages.iter().fold(0, |acc, &p| acc | (1 << p))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CompletionError {
    /// Two pre-assigned edges already conflict.
    FixedConflict { first: Edge, second: Edge, page: usize },
    /// Some edge has neither a fixed page nor a non-empty palette.
    Unconstrained(Edge),
    /// Exhaustive search proved no completion exists.
    Infeasible,
    /// Node budget ran out first.
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    Fixed(usize),
    Free(Palette),
}

/// Completes `slots` (indexed like `g.edges()`). Returns one page per edge.
pub fn complete(
    g: &Graph,
    layout: &CircularLayout,
    slots: &[Slot],
    max_nodes: u64,
) -> Result<Vec<usize>, CompletionError> {
    let edges = g.edges();
    let e_count = edges.len();
    assert_eq!(slots.len(), e_count);

    let mut conflicts: Vec<Vec<usize>> = vec![Vec::new(); e_count];
    for i in 0..e_count {
        for j in i + 1..e_count {
            if edges[i].shares_endpoint(edges[j]) || chords_cross(layout, edges[i], edges[j]) {
                conflicts[i].push(j);
                conflicts[j].push(i);
            }
        }
    }

    let mut page = vec![usize::MAX; e_count];
    let mut domain = vec![0 as Palette; e_count];
    for (i, slot) in slots.iter().enumerate() {
        match *slot {
            Slot::Fixed(p) => page[i] = p,
            Slot::Free(pal) if pal != 0 => domain[i] = pal,
            Slot::Free(_) => return Err(CompletionError::Unconstrained(edges[i])),
        }
    }
    for i in 0..e_count {
        if page[i] == usize::MAX {
            continue;
        }
        for &j in &conflicts[i] {
            if page[j] == page[i] && i < j {
                return Err(CompletionError::FixedConflict { first: edges[i], second: edges[j], page: page[i] });
            }
            if page[j] == usize::MAX {
                domain[j] &= !(1 << page[i]);
            }
        }
    }

    let free: Vec<usize> = (0..e_count).filter(|&i| page[i] == usize::MAX).collect();
    if free.iter().any(|&i| domain[i] == 0) {
        return Err(CompletionError::Infeasible);
    }
    let mut search = Search { conflicts: &conflicts, page, domain, nodes: 0, max_nodes, trail: Vec::new() };
    match search.run(free.len()) {
        Some(true) => Ok(search.page),
        Some(false) => Err(CompletionError::Infeasible),
        None => Err(CompletionError::BudgetExhausted),
    }
}

struct Search<'a> {
    conflicts: &'a [Vec<usize>],
    page: Vec<usize>,
    domain: Vec<Palette>,
    nodes: u64,
    max_nodes: u64,
    /// (edge, removed bit) pairs for undo
    trail: Vec<(usize, Palette)>,
}

impl Search<'_> {
    /// `Some(found)` when decided, `None` on budget exhaustion.
    fn run(&mut self, remaining: usize) -> Option<bool> {
        if remaining == 0 {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        let e = self.pick();
        let mut options = self.domain[e];
        while options != 0 {
            let p = options.trailing_zeros() as usize;
            options &= options - 1;
            let mark = self.trail.len();
            self.page[e] = p;
            let mut dead = false;
            for &f in &self.conflicts[e] {
                if self.page[f] == usize::MAX && self.domain[f] & (1 << p) != 0 {
                    self.domain[f] &= !(1 << p);
                    self.trail.push((f, 1 << p));
                    if self.domain[f] == 0 {
                        dead = true;
                        break;
                    }
                }
            }
            if !dead {
                match self.run(remaining - 1) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
            for (f, bit) in self.trail.drain(mark..) {
                self.domain[f] |= bit;
            }
            self.page[e] = usize::MAX;
        }
        Some(false)
    }

    /// Smallest domain first, then most unassigned conflicts, then index.
    fn pick(&self) -> usize {
        let mut best = usize::MAX;
        let mut key = (u32::MAX, 0usize);
        for (e, &dom) in self.domain.iter().enumerate() {
            if self.page[e] != usize::MAX {
                continue;
            }
            let size = dom.count_ones();
            if size > key.0 {
                continue;
            }
            let open = self.conflicts[e].iter().filter(|&&f| self.page[f] == usize::MAX).count();
            if size < key.0 || open > key.1 {
                key = (size, open);
                best = e;
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle_graph;

    #[test]
    fn completes_even_cycle() {
        let g = cycle_graph(6).unwrap();
        let l = CircularLayout::new((0..6).collect()).unwrap();
        let mut slots: Vec<Slot> = (0..6).map(|_| Slot::Free(palette(&[0, 1]))).collect();
        slots[0] = Slot::Fixed(1);
        let pages = complete(&g, &l, &slots, 1000).unwrap();
        assert_eq!(pages[0], 1);
        for (i, e) in g.edges().iter().enumerate() {
            for (j, f) in g.edges().iter().enumerate() {
                if i != j && e.shares_endpoint(*f) {
                    assert_ne!(pages[i], pages[j]);
                }
            }
        }
    }

    #[test]
    fn odd_cycle_two_pages_infeasible() {
        let g = cycle_graph(5).unwrap();
        let l = CircularLayout::new((0..5).collect()).unwrap();
        let slots: Vec<Slot> = (0..5).map(|_| Slot::Free(palette(&[0, 1]))).collect();
        assert_eq!(complete(&g, &l, &slots, 1000), Err(CompletionError::Infeasible));
    }

    #[test]
    fn fixed_conflict_reported() {
        let g = cycle_graph(4).unwrap();
        let l = CircularLayout::new((0..4).collect()).unwrap();
        let slots = vec![Slot::Fixed(0), Slot::Fixed(0), Slot::Fixed(1), Slot::Fixed(1)];
        // edges sorted: (0,1) (0,3) (1,2) (2,3)
        assert_eq!(
            complete(&g, &l, &slots, 10),
            Err(CompletionError::FixedConflict { first: Edge::new(0, 1), second: Edge::new(0, 3), page: 0 })
        );
    }
}
