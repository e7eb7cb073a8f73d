use std::collections::BTreeMap;

use bookbind::{chords_cross, embed, validate, BookEmbedding, BundleSpec, CircularLayout, Edge, Embedded};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn layout_and_chords() -> impl Strategy<Value = (Vec<usize>, Edge, Edge)> {
    (4usize..24).prop_flat_map(|n| {
        let order = Just((0..n).collect::<Vec<_>>()).prop_shuffle();
        let pair = subsequence((0..n).collect::<Vec<_>>(), 2).prop_map(|p| Edge::new(p[0], p[1]));
        (order, pair.clone(), pair)
    })
}

/// Interleaving on positions, written out independently of the library.
fn interleaved(order: &[usize], a: Edge, b: Edge) -> bool {
    let pos = |v: usize| order.iter().position(|&w| w == v).unwrap();
    if a.shares_endpoint(b) {
        return false;
    }
    let (lo, hi) = (pos(a.u()).min(pos(a.v())), pos(a.u()).max(pos(a.v())));
    let inside = |v: usize| lo < pos(v) && pos(v) < hi;
    inside(b.u()) ^ inside(b.v())
}

fn specs() -> impl Strategy<Value = BundleSpec> {
    prop_oneof![
        "s=6,t=10,phi=shift:4",
        "s=5,t=12,phi=shift:4",
        "s=4,t=15,phi=shift:5",
        "s=5,t=12,phi=refl:none",
        "s=6,t=8,phi=refl:two",
        "s=6,t=9,phi=refl:one",
        "s=5,t=9,phi=refl:one",
    ]
    .prop_map(|s| s.parse().unwrap())
}

proptest! {
    #[test]
    fn crossing_is_symmetric_and_circular((order, a, b) in layout_and_chords(), shift in 0usize..64) {
        let base = chords_cross(&CircularLayout::new(order.clone()).unwrap(), a, b);
        prop_assert_eq!(base, chords_cross(&CircularLayout::new(order.clone()).unwrap(), b, a));
        prop_assert_eq!(base, interleaved(&order, a, b));

        let mut rotated = order.clone();
        rotated.rotate_left(shift % order.len());
        prop_assert_eq!(base, chords_cross(&CircularLayout::new(rotated).unwrap(), a, b));
        let mut mirrored = order;
        mirrored.reverse();
        prop_assert_eq!(base, chords_cross(&CircularLayout::new(mirrored).unwrap(), a, b));
    }

    #[test]
    fn verdict_survives_relabeling(spec in specs(), seed in any::<u64>(), flip in any::<bool>()) {
        let Embedded::Built(r) = embed(&spec).unwrap() else { panic!("{spec} unsupported") };
        let g = spec.graph();
        let mut emb = r.embedding;
        if flip {
            // move one edge onto a neighbour's page to get an invalid instance
            let e = g.edges()[seed as usize % g.edge_count()];
            let other = *g.edges().iter().find(|f| **f != e && f.shares_endpoint(e)).unwrap();
            let mut pages = emb.pages.clone();
            pages.insert(e, pages[&other]);
            emb = BookEmbedding::new(emb.layout.clone(), pages, emb.m).unwrap();
        }
        let before = validate(&g, &emb).unwrap();

        let n = g.vertex_count();
        let mut map: Vec<usize> = (0..n).collect();
        let mut perm: Vec<usize> = (0..emb.m).collect();
        let mut x = seed | 1;
        let mut next = || { x ^= x << 13; x ^= x >> 7; x ^= x << 17; x as usize };
        for i in (1..n).rev() { map.swap(i, next() % (i + 1)); }
        for i in (1..perm.len()).rev() { perm.swap(i, next() % (i + 1)); }

        let h = bookbind::Graph::new(n, g.edges().iter().map(|e| (map[e.u()], map[e.v()]))).unwrap();
        let order: Vec<usize> = emb.layout.order().iter().map(|&v| map[v]).collect();
        let pages: BTreeMap<Edge, usize> =
            emb.pages.iter().map(|(e, &p)| (Edge::new(map[e.u()], map[e.v()]), perm[p])).collect();
        let moved = BookEmbedding::new(CircularLayout::new(order).unwrap(), pages, emb.m).unwrap();
        let after = validate(&h, &moved).unwrap();

        prop_assert_eq!(before.is_valid(), after.is_valid());
        prop_assert_eq!(before.is_proper, after.is_proper);
        prop_assert_eq!(before.is_noncrossing, after.is_noncrossing);
        prop_assert_eq!(before.pages_used, after.pages_used);
        prop_assert_eq!(before.violations.len(), after.violations.len());
        prop_assert_eq!(before.is_valid(), !flip);
        prop_assert_eq!(before.is_valid(), before.is_proper && before.is_noncrossing);
        if before.is_valid() {
            prop_assert!(before.pages_used >= g.max_degree());
        }
    }
}
