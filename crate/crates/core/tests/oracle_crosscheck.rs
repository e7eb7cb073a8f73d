use std::time::Duration;

use bookbind::{brute_force_mbt, lower_bound, validate, Edge, Execution, Graph, MbtValue, SearchBudget};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Smallest m for which some spine order (vertex 0 first) admits a proper,
/// crossing-free page assignment. Plain enumeration, no pruning.
fn naive_mbt(g: &Graph) -> usize {
    if g.edge_count() == 0 {
        return 0;
    }
    (1..=g.edge_count()).find(|&m| some_order_works(g, m)).unwrap()
}

fn some_order_works(g: &Graph, m: usize) -> bool {
    let n = g.vertex_count();
    let mut rest: Vec<usize> = (1..n).collect();
    permute(&mut rest, 0, &mut |perm| {
        let mut pos = vec![0; n];
        for (i, &v) in perm.iter().enumerate() {
            pos[v] = i + 1;
        }
        let clash = |a: Edge, b: Edge| {
            if a.shares_endpoint(b) {
                return true;
            }
            let (lo, hi) = (pos[a.u()].min(pos[a.v()]), pos[a.u()].max(pos[a.v()]));
            let inside = |v: usize| lo < pos[v] && pos[v] < hi;
            inside(b.u()) != inside(b.v())
        };
        let mut pages = vec![0; g.edge_count()];
        assign(g.edges(), &clash, m, 0, &mut pages)
    })
}

fn permute(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        let hit = permute(items, k + 1, visit);
        items.swap(k, i);
        if hit {
            return true;
        }
    }
    false
}

fn assign(edges: &[Edge], clash: &dyn Fn(Edge, Edge) -> bool, m: usize, i: usize, pages: &mut [usize]) -> bool {
    if i == edges.len() {
        return true;
    }
    (0..m).any(|p| {
        if (0..i).any(|j| pages[j] == p && clash(edges[i], edges[j])) {
            return false;
        }
        pages[i] = p;
        assign(edges, clash, m, i + 1, pages)
    })
}

fn random_graph(rng: &mut StdRng) -> Graph {
    let n = rng.gen_range(2..=6);
    let density = rng.gen_range(0.2..0.9);
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(density)).collect();
    Graph::new(n, edges).unwrap()
}

#[test]
fn search_agrees_with_naive_enumeration() {
    let mut rng = StdRng::seed_from_u64(41);
    let budget = SearchBudget { time_limit: Duration::from_secs(30), ..SearchBudget::default() };
    for _ in 0..200 {
        let g = random_graph(&mut rng);
        let want = naive_mbt(&g);
        for exec in [Execution::Sequential, Execution::Parallel] {
            let r = brute_force_mbt(&g, budget, exec);
            assert_eq!(r.value, MbtValue::Exact(want), "{:?} ({exec:?})", g.edges());
            assert!(want >= lower_bound(&g));
            if want > 0 {
                let w = r.witness.expect("exact value carries a witness");
                let report = validate(&g, &w).unwrap();
                assert!(report.is_valid());
                assert_eq!(report.pages_used, want);
            }
        }
    }
}

#[test]
fn exhausted_budget_never_answers() {
    let g = bookbind::circulant(9, &[1, 3]).unwrap();
    let budget = SearchBudget { max_orders: 1, max_nodes: 1, time_limit: Duration::from_secs(5) };
    let r = brute_force_mbt(&g, budget, Execution::Sequential);
    assert!(!matches!(r.value, MbtValue::Exact(_)));
}
