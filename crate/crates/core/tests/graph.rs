use extreme_sets::fixtures::{cycle, dumbbell, random_connected_graph};
use extreme_sets::oracle::{brute_min_cut, cut_table};
use extreme_sets::{contract, contract_each, cross_weight, cut_value, steiner_mincut, steiner_mincut_fast};
use extreme_sets::{Epsilon, Error, Threshold, VertexSet, WeightedGraph};
use proptest::prelude::*;

fn graph_and_sets() -> impl Strategy<Value = (WeightedGraph, u64, u64)> {
    (2usize..10).prop_flat_map(|n| {
        let edge = (0..n as u32, 0..n as u32, 0u64..6);
        let full = (1u64 << n) - 1;
        (prop::collection::vec(edge, 0..30), 1..full, 1..full).prop_map(move |(edges, x, y)| (WeightedGraph::new(n, edges).unwrap(), x, y))
    })
}

proptest! {
    #[test]
    fn cuts_are_symmetric_submodular_and_posimodular((g, x, y) in graph_and_sets()) {
        let full = (1u64 << g.n()) - 1;
        let c = |b: u64| g.cut_of_bits(b);
        prop_assert_eq!(c(x), c(full & !x));
        prop_assert!(c(x) + c(y) >= c(x & y) + c(x | y));
        prop_assert!(c(x) + c(y) >= c(x & !y) + c(y & !x));
        let xs = VertexSet::from_bits(g.n(), x);
        prop_assert_eq!(cut_value(&g, &xs).unwrap(), c(x));
    }

    #[test]
    fn contraction_keeps_cuts_inside((g, keep, x) in graph_and_sets()) {
        let n = g.n();
        let keep_set = VertexSet::from_bits(n, keep);
        let (h, map) = contract(&g, &keep_set).unwrap();
        let inside = x & keep;
        prop_assume!(inside != 0);
        let image = VertexSet::new(h.n(), VertexSet::from_bits(n, inside).iter().map(|v| map.apply(v))).unwrap();
        prop_assert_eq!(h.cut_of_bits(image.to_bits()), g.cut_of_bits(inside));
        prop_assert_eq!(map.preimage(&image).to_bits(), inside);
    }

    #[test]
    fn cross_weight_matches_cut_identity((g, x, y) in graph_and_sets()) {
        prop_assume!(x & y == 0);
        let (xs, ys) = (VertexSet::from_bits(g.n(), x), VertexSet::from_bits(g.n(), y));
        let w = cross_weight(&g, &xs, &ys).unwrap();
        prop_assert_eq!(2 * w, g.cut_of_bits(x) + g.cut_of_bits(y) - g.cut_of_bits(x | y));
    }

    #[test]
    fn steiner_variants_agree((g, t, _y) in graph_and_sets()) {
        let n = g.n();
        let full = (1u64 << n) - 1;
        for bits in [full, full & !(1 << (t.trailing_zeros() as u64 % n as u64))] {
            let terms = VertexSet::from_bits(n, bits);
            if terms.len() < 2 {
                continue;
            }
            let (a, sa) = steiner_mincut(&g, &terms).unwrap();
            let (b, sb) = steiner_mincut_fast(&g, &terms).unwrap();
            prop_assert_eq!(a, b);
            for s in [sa, sb] {
                prop_assert_eq!(g.cut_of_bits(s.to_bits()), a);
                prop_assert!(s.intersects(&terms) && !terms.is_subset(&s));
            }
            if bits == full {
                prop_assert_eq!(Some(a), brute_min_cut(&g));
            }
        }
    }
}

#[test]
fn dumbbell_cut_examples() {
    let g = dumbbell();
    let set = |v: &[u32]| VertexSet::new(6, v.iter().copied()).unwrap();
    assert_eq!(cut_value(&g, &set(&[0, 1, 2])).unwrap(), 1);
    assert_eq!(cut_value(&g, &set(&[2, 3])).unwrap(), 5);
    assert_eq!(cross_weight(&g, &set(&[0, 1, 2]), &set(&[3, 4, 5])).unwrap(), 1);
    assert_eq!(cross_weight(&g, &set(&[1]), &set(&[3, 4, 5])).unwrap(), 0);
    assert_eq!(cut_value(&g, &VertexSet::empty(6)), Err(Error::InvalidSet("empty")));
    assert_eq!(cut_value(&g, &VertexSet::full(6)), Err(Error::InvalidSet("full")));
    assert_eq!(cross_weight(&g, &set(&[0, 1]), &set(&[1, 2])), Err(Error::Overlap));
}

#[test]
fn dumbbell_contraction() {
    let g = dumbbell();
    let (h, map) = contract(&g, &VertexSet::new(6, [0, 1, 2]).unwrap()).unwrap();
    assert_eq!(h.n(), 4);
    assert_eq!(map.c, Some(3));
    assert_eq!(h.degree(3), 1);
    let each = contract_each(&g, &[VertexSet::new(6, [0, 1, 2]).unwrap(), VertexSet::new(6, [3, 4, 5]).unwrap()]).unwrap();
    assert_eq!(each.len(), 2);
    for part in &each {
        assert_eq!(part.n(), 4);
        assert_eq!(part.degree(3), 1);
    }
}

#[test]
fn steiner_examples() {
    let g = dumbbell();
    let (v, side) = steiner_mincut(&g, &VertexSet::new(6, [1, 4]).unwrap()).unwrap();
    assert_eq!(v, 1);
    assert!(side == VertexSet::new(6, [0, 1, 2]).unwrap() || side == VertexSet::new(6, [3, 4, 5]).unwrap());
    assert_eq!(steiner_mincut_fast(&cycle(4), &VertexSet::full(4)).unwrap().0, 2);
    assert_eq!(steiner_mincut(&g, &VertexSet::new(6, [1]).unwrap()), Err(Error::TooFewTerminals));
}

#[test]
fn parallel_edges_merge_and_loops_vanish() {
    let g = WeightedGraph::new(3, [(0, 1, 2), (1, 0, 3), (2, 2, 7), (1, 2, 0)]).unwrap();
    assert_eq!(g.edges(), &[(0, 1, 5)]);
    assert_eq!(g.degree(2), 0);
    assert_eq!(g.components().len(), 2);
}

#[test]
fn construction_is_order_independent() {
    let mut r = extreme_sets::rng::rng(3);
    for _ in 0..20 {
        let g = random_connected_graph(&mut r, 40, 0.3, 9);
        let mut rev = g.edges().to_vec();
        rev.reverse();
        let h = WeightedGraph::new(40, rev.into_iter().map(|(u, v, w)| (v, u, w))).unwrap();
        assert_eq!(g, h);
    }
}

#[test]
fn edge_list_round_trip() {
    let g = dumbbell();
    let back: WeightedGraph = g.to_edge_list().parse().unwrap();
    assert_eq!(g, back);
    assert!(matches!("3 1\n0 5 1\n".parse::<WeightedGraph>(), Err(Error::Parse { line: 2, .. })));
    assert!(matches!("3 2\n0 1 1\n".parse::<WeightedGraph>(), Err(Error::Parse { .. })));
    assert!(matches!("".parse::<WeightedGraph>(), Err(Error::Parse { line: 1, .. })));
    assert_eq!(WeightedGraph::new(2, [(0, 1, 1u64 << 60)]), Err(Error::WeightOverflow));
}

#[test]
fn cut_table_matches_direct_cuts() {
    let g = dumbbell();
    let t = cut_table(&g);
    for b in 1u64..63 {
        assert_eq!(t[b as usize], g.cut_of_bits(b));
    }
}

#[test]
fn thresholds_are_exact() {
    let d = Threshold::near_mincut(100, Epsilon::default());
    assert!(d.is_weak(100));
    assert!(!d.is_weak(101));
    assert!(Threshold::near_mincut(0, Epsilon::default()).is_weak(0));
    assert!(!Threshold::integer(3).is_weak(3));
    assert_eq!(Epsilon::from_f64(0.25), Epsilon { num: 250_000, den: 1_000_000 });
}
