//! Exhaustive matching-book-embedding search.
//!
//! Spine orders and page assignments are explored jointly: vertices are
//! appended to the spine one at a time and each new vertex immediately
//! colors its edges back to already placed neighbours. A new chord `(u, v)`
//! with `v` last crosses a placed chord `(a, b)` iff `a < u < b` in spine
//! position, so every placed vertex keeps a mask of pages blocked for its
//! future chords. Vertex 0 is pinned at position 0 and mirror images are
//! skipped by requiring `order[1] < order[n−1]`.
//!
//! Work is split into tasks by the vertices at positions 1 and 2. Each task
//! gets an equal share of the node caps, and tasks are reduced in index
//! order, so the answer does not depend on the execution mode.

use std::ops::AddAssign;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use serde::Serialize;

use super::lower_bound;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Edge, Graph};
use crate::layout::{BookEmbedding, CircularLayout};

/// Largest page count the bitmask search supports.
const MAX_PAGES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    /// Spine placements (partial orders) explored, summed over tasks.
    pub max_orders: u64,
    /// Page-assignment nodes, summed over tasks.
    pub max_nodes: u64,
    pub time_limit: Duration,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_orders: 1_000_000_000, max_nodes: 4_000_000_000, time_limit: Duration::from_secs(600) }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Explored {
    pub orders: u64,
    pub nodes: u64,
}

impl AddAssign for Explored {
    fn add_assign(&mut self, rhs: Self) {
        self.orders += rhs.orders;
        self.nodes += rhs.nodes;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PageSearch {
    Found(BookEmbedding),
    /// Every spine order and page assignment was refuted.
    Infeasible,
    /// A cap ran out before the search was decided.
    Exhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MbtValue {
    Exact(usize),
    LowerBoundOnly(usize),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MbtResult {
    pub value: MbtValue,
    pub witness: Option<BookEmbedding>,
    pub explored: Explored,
}

/// Matching book thickness by increasing `m` from [`lower_bound`].
///
/// The first `m` with an embedding is exact because every smaller value was
/// either refuted or ruled out by the bound. Budget exhaustion stops the
/// climb; the result then records only what was refuted.
pub fn brute_force_mbt(g: &Graph, budget: SearchBudget, exec: Execution) -> MbtResult {
    let mut explored = Explored::default();
    if g.edge_count() == 0 {
        return MbtResult { value: MbtValue::Exact(0), witness: None, explored };
    }
    let deadline = Instant::now() + budget.time_limit;
    let lb = lower_bound(g).max(1);
    for m in lb..=MAX_PAGES {
        let (outcome, ex) = run(g, m, budget, deadline, exec);
        explored += ex;
        match outcome {
            PageSearch::Found(emb) => {
                return MbtResult { value: MbtValue::Exact(m), witness: Some(emb), explored };
            }
            PageSearch::Infeasible => {}
            PageSearch::Exhausted => {
                let value = if m > lb { MbtValue::LowerBoundOnly(m) } else { MbtValue::Inconclusive };
                return MbtResult { value, witness: None, explored };
            }
        }
    }
    MbtResult { value: MbtValue::LowerBoundOnly(MAX_PAGES + 1), witness: None, explored }
}

/// Decides whether `g` has a matching book embedding on `m` pages.
pub fn search_pages(g: &Graph, m: usize, budget: SearchBudget, exec: Execution) -> Result<(PageSearch, Explored)> {
    if m == 0 || m > MAX_PAGES {
        return Err(Error::InvalidSize(format!("page count {m} outside 1..={MAX_PAGES}")));
    }
    Ok(run(g, m, budget, Instant::now() + budget.time_limit, exec))
}

/// Tries a single page count and reports what it proves about `mbt(g)`.
///
/// An embedding at the lower bound is exact; one above it is only a witness
/// next to the bound. A refutation raises the bound to `m+1`.
pub fn probe_pages(g: &Graph, m: usize, budget: SearchBudget, exec: Execution) -> Result<MbtResult> {
    let lb = lower_bound(g);
    if g.edge_count() == 0 {
        return Ok(MbtResult { value: MbtValue::Exact(0), witness: None, explored: Explored::default() });
    }
    let (outcome, explored) = search_pages(g, m, budget, exec)?;
    let (value, witness) = match outcome {
        PageSearch::Found(emb) if m == lb => (MbtValue::Exact(m), Some(emb)),
        PageSearch::Found(emb) => (MbtValue::LowerBoundOnly(lb), Some(emb)),
        PageSearch::Infeasible => (MbtValue::LowerBoundOnly(lb.max(m + 1)), None),
        PageSearch::Exhausted => (MbtValue::Inconclusive, None),
    };
    Ok(MbtResult { value, witness, explored })
}

fn run(g: &Graph, m: usize, budget: SearchBudget, deadline: Instant, exec: Execution) -> (PageSearch, Explored) {
    let n = g.vertex_count();
    let prefixes: Vec<Vec<usize>> = if n >= 3 {
        (1..n).flat_map(|a| (1..n).filter(move |&b| b != a).map(move |b| vec![0, a, b])).collect()
    } else {
        vec![(0..n).collect()]
    };
    let share = |cap: u64| (cap / prefixes.len() as u64).max(1);
    let caps = (share(budget.max_orders), share(budget.max_nodes));
    let decided = AtomicUsize::new(usize::MAX);

    let outcomes = exec.map_range(prefixes.len(), |index| {
        if decided.load(Ordering::Relaxed) < index {
            return (Flow::Halt(Halt::Aborted), Explored::default(), None);
        }
        let mut task = Task::new(g, m, &prefixes[index], caps, deadline, &decided, index);
        let flow = task.place(0);
        let witness = task.found.take();
        if matches!(flow, Flow::Found | Flow::Halt(Halt::Exhausted)) {
            decided.fetch_min(index, Ordering::Relaxed);
        }
        (flow, task.explored, witness)
    });

    let mut explored = Explored::default();
    for (flow, ex, witness) in outcomes {
        explored += ex;
        match flow {
            Flow::Found => return (PageSearch::Found(witness.expect("found tasks carry a witness")), explored),
            Flow::Halt(Halt::Exhausted) => return (PageSearch::Exhausted, explored),
            Flow::Halt(Halt::Aborted) => unreachable!("tasks after the deciding one are never reached"),
            Flow::Continue => {}
        }
    }
    (PageSearch::Infeasible, explored)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Halt {
    Exhausted,
    /// An earlier task already decided the answer.
    Aborted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    Halt(Halt),
}

const UNPLACED: usize = usize::MAX;

struct Task<'a> {
    g: &'a Graph,
    n: usize,
    m: usize,
    full: u64,
    prefix: &'a [usize],
    order: Vec<usize>,
    pos: Vec<usize>,
    /// Pages on edges at each vertex.
    used: Vec<u64>,
    /// Pages a future chord from each placed vertex would cross.
    blocked: Vec<u64>,
    /// Unplaced neighbours per vertex.
    remaining: Vec<usize>,
    chords: Vec<(usize, usize, usize)>,
    found: Option<BookEmbedding>,
    /// Pages `0..colors` are in use; a new page is always the next one.
    colors: usize,
    explored: Explored,
    caps: (u64, u64),
    deadline: Instant,
    decided: &'a AtomicUsize,
    index: usize,
}

impl<'a> Task<'a> {
    fn new(
        g: &'a Graph,
        m: usize,
        prefix: &'a [usize],
        caps: (u64, u64),
        deadline: Instant,
        decided: &'a AtomicUsize,
        index: usize,
    ) -> Self {
        let n = g.vertex_count();
        Task {
            g,
            n,
            m,
            full: if m == 64 { u64::MAX } else { (1u64 << m) - 1 },
            prefix,
            order: Vec::with_capacity(n),
            pos: vec![UNPLACED; n],
            used: vec![0; n],
            blocked: vec![0; n],
            remaining: (0..n).map(|v| g.degree(v)).collect(),
            chords: Vec::with_capacity(g.edge_count()),
            found: None,
            colors: 0,
            explored: Explored::default(),
            caps,
            deadline,
            decided,
            index,
        }
    }

    fn witness(&self) -> BookEmbedding {
        let layout = CircularLayout::new(self.order.clone()).expect("complete spine");
        let pages = self.chords.iter().map(|&(u, v, p)| (Edge::new(u, v), p)).collect();
        BookEmbedding::new(layout, pages, self.m).expect("pages below m")
    }

    fn check_limits(&self) -> Option<Halt> {
        if self.explored.orders > self.caps.0 || self.explored.nodes > self.caps.1 {
            return Some(Halt::Exhausted);
        }
        if (self.explored.orders + self.explored.nodes) % 1024 == 0 {
            if self.decided.load(Ordering::Relaxed) < self.index {
                return Some(Halt::Aborted);
            }
            if Instant::now() >= self.deadline {
                return Some(Halt::Exhausted);
            }
        }
        None
    }

    /// Fills spine position `k`.
    fn place(&mut self, k: usize) -> Flow {
        if k == self.n {
            self.found = Some(self.witness());
            return Flow::Found;
        }
        self.explored.orders += 1;
        if let Some(h) = self.check_limits() {
            return Flow::Halt(h);
        }
        // mirror pruning: some vertex after order[1] must exceed it
        if self.n >= 3 && k >= 2 && !(0..self.n).any(|v| self.pos[v] == UNPLACED && v > self.order[1]) {
            return Flow::Continue;
        }
        let candidates: Vec<usize> = match self.prefix.get(k) {
            Some(&v) => vec![v],
            None => (0..self.n).filter(|&v| self.pos[v] == UNPLACED).collect(),
        };
        for v in candidates {
            self.pos[v] = k;
            self.order.push(v);
            let mut back: Vec<usize> = self.g.neighbors(v).iter().copied().filter(|&u| self.pos[u] < k).collect();
            back.sort_by_key(|&u| self.pos[u]);
            let flow = self.assign(k, v, &back, 0);
            self.order.pop();
            self.pos[v] = UNPLACED;
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// Colors the chord from `back[i]` to the new vertex `v`.
    fn assign(&mut self, k: usize, v: usize, back: &[usize], i: usize) -> Flow {
        if i == back.len() {
            return self.commit(k, v, back);
        }
        self.explored.nodes += 1;
        if let Some(h) = self.check_limits() {
            return Flow::Halt(h);
        }
        let u = back[i];
        let limit = (self.colors + 1).min(self.m);
        let avail = self.full & !self.used[u] & !self.used[v] & !self.blocked[u];
        for c in 0..limit {
            let bit = 1u64 << c;
            if avail & bit == 0 {
                continue;
            }
            let colors = self.colors;
            self.colors = self.colors.max(c + 1);
            self.used[u] |= bit;
            self.used[v] |= bit;
            self.chords.push((u, v, c));
            let flow = self.assign(k, v, back, i + 1);
            self.chords.pop();
            self.used[u] &= !bit;
            self.used[v] &= !bit;
            self.colors = colors;
            if flow != Flow::Continue {
                return flow;
            }
        }
        Flow::Continue
    }

    /// All chords to `v` are colored: update blocking, forward-check, recurse.
    fn commit(&mut self, k: usize, v: usize, back: &[usize]) -> Flow {
        let saved = self.blocked.clone();
        let new_chords = self.chords.len() - back.len();
        for idx in new_chords..self.chords.len() {
            let (u, _, c) = self.chords[idx];
            for p in self.pos[u] + 1..k {
                self.blocked[self.order[p]] |= 1 << c;
            }
        }
        for &w in self.g.neighbors(v) {
            self.remaining[w] -= 1;
        }
        let feasible = self.order.iter().all(|&w| {
            let free = self.full & !self.used[w] & !self.blocked[w];
            free.count_ones() as usize >= self.remaining[w]
        });
        let flow = if feasible { self.place(k + 1) } else { Flow::Continue };
        for &w in self.g.neighbors(v) {
            self.remaining[w] += 1;
        }
        self.blocked = saved;
        flow
    }
}
