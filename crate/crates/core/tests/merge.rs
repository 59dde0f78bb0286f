mod common;

use common::*;
use extreme_sets::fixtures::dumbbell;
use extreme_sets::laminar::{build_tree, LaminarTree};
use extreme_sets::merge::*;
use extreme_sets::oracle::enumerate_extreme_sets;
use extreme_sets::{cut_value, VertexSet, WeightedGraph};
use rand::Rng;

fn cut_or_zero(g: &WeightedGraph, s: &VertexSet) -> i64 {
    if s.is_empty() || s.len() == s.universe() {
        0
    } else {
        cut_value(g, s).unwrap()
    }
}

fn minus(a: &VertexSet, b: &VertexSet) -> VertexSet {
    VertexSet::new(a.universe(), a.iter().filter(|&v| !b.contains(v))).unwrap()
}

/// Members U of `x` with no W in `y` such that W meets U, W does not contain
/// U, and cut(U \ W) <= cut(U).
fn brute_verify(g: &WeightedGraph, x: &[VertexSet], y: &[VertexSet]) -> Vec<VertexSet> {
    let mut out: Vec<VertexSet> = x
        .iter()
        .filter(|u| {
            let cu = cut_or_zero(g, u);
            !y.iter().any(|w| w.intersects(u) && !u.is_subset(w) && cut_or_zero(g, &minus(u, w)) <= cu)
        })
        .cloned()
        .collect();
    out.sort();
    out
}

#[test]
fn dumbbell_keeps_the_extreme_half() {
    let g = dumbbell();
    let x = build_tree(&[vs(6, &[0, 1, 2])], 6).unwrap();
    let y = build_tree(&[vs(6, &[2, 3])], 6).unwrap();
    assert_eq!(verify(&x, &y, &g).family(), vec![vs(6, &[0, 1, 2])]);
}

#[test]
fn dumbbell_drops_a_set_beaten_by_its_remainder() {
    let g = dumbbell();
    let x = build_tree(&[vs(6, &[2, 3])], 6).unwrap();
    let y = build_tree(&[vs(6, &[0, 1, 2])], 6).unwrap();
    assert_eq!(cut_value(&g, &vs(6, &[2, 3])).unwrap(), 5);
    assert_eq!(verify(&x, &y, &g).family_size(), 0);
}

#[test]
fn disjoint_families_are_untouched() {
    let g = dumbbell();
    let x = build_tree(&[vs(6, &[0]), vs(6, &[0, 1])], 6).unwrap();
    let y = build_tree(&[vs(6, &[4, 5])], 6).unwrap();
    assert_eq!(verify(&x, &y, &g), x);
}

#[test]
fn verify_matches_brute_force() {
    let mut r = rng(21);
    for _ in 0..400 {
        let n = 2 + r.gen_range(0..10);
        let g = random_graph(&mut r, n, 0.5, 4);
        let xf = random_laminar_family(&mut r, n, 2 * n);
        let yf = random_laminar_family(&mut r, n, 2 * n);
        let (x, y) = (build_tree(&xf, n).unwrap(), build_tree(&yf, n).unwrap());
        let (got, stats) = verify_with_stats(&x, &y, &g);
        assert_eq!(got.family(), brute_verify(&g, &xf, &yf));
        let bound = (usize::BITS - n.leading_zeros()) as usize + 1;
        assert!(stats.rounds <= bound, "{} rounds for n = {n}", stats.rounds);
    }
}

#[test]
fn consistency_state_tracks_every_node() {
    let mut r = rng(22);
    for _ in 0..150 {
        let n = 2 + r.gen_range(0..10);
        let g = random_graph(&mut r, n, 0.5, 4);
        let y = random_laminar_tree(&mut r, n, 2 * n);
        let mut state = ConsistencyState::new(&g, &y);
        for _ in 0..2 {
            let mut order: Vec<u32> = (0..n as u32).collect();
            rand::seq::SliceRandom::shuffle(&mut order[..], &mut r);
            order.truncate(r.gen_range(1..=n));
            let mut u = Vec::new();
            for &v in &order {
                state.insert(v);
                u.push(v);
                let uset = VertexSet::new(n, u.iter().copied()).unwrap();
                let cu = cut_or_zero(&g, &uset);
                let mut best: Option<i64> = None;
                for w in 1..y.node_count() as u32 {
                    let ws = y.node_set(w);
                    if uset.is_subset(&ws) {
                        continue;
                    }
                    let (val, flagged) = state.value(w);
                    assert_eq!(flagged, ws.intersects(&uset));
                    if flagged {
                        let want = cut_or_zero(&g, &minus(&uset, &ws)) - cu;
                        assert_eq!(val, want);
                        best = Some(best.map_or(want, |b: i64| b.min(want)));
                    }
                }
                assert_eq!(state.query(), best);
            }
            state.reset();
        }
    }
}

#[test]
fn merge_keeps_all_extreme_members_and_is_laminar() {
    let mut r = rng(23);
    for _ in 0..300 {
        let n = 2 + r.gen_range(0..9);
        let g = random_graph(&mut r, n, 0.5, 4);
        let extreme = enumerate_extreme_sets(&g).unwrap();
        let pick = |r: &mut rand_chacha::ChaCha8Rng| -> LaminarTree {
            // a random laminar family seeded with some extreme sets
            let mut fam: Vec<VertexSet> = Vec::new();
            for e in &extreme {
                if r.gen_bool(0.5) {
                    fam.push(e.clone());
                }
            }
            for cand in random_laminar_family(r, n, 2 * n) {
                let mut trial = fam.clone();
                trial.push(cand.clone());
                if !fam.contains(&cand) && is_laminar(&trial) {
                    fam = trial;
                }
            }
            build_tree(&fam, n).unwrap()
        };
        let x = pick(&mut r);
        let y = pick(&mut r);
        for out in [merge(&x, &y, &g), merge_lazy(&x, &y, &g)] {
            let fam = out.family();
            assert!(is_laminar(&fam));
            for e in &extreme {
                if x.family().contains(e) || y.family().contains(e) {
                    assert!(fam.contains(e), "lost extreme set {:?}", e.members());
                }
            }
            for s in &fam {
                assert!(x.family().contains(s) || y.family().contains(s));
            }
        }
        let vx = verify(&x, &y, &g).family();
        for e in x.family().iter().filter(|s| extreme.contains(s)) {
            assert!(vx.contains(e));
        }
    }
}

#[test]
fn merge_of_a_family_with_itself() {
    let mut r = rng(24);
    for _ in 0..100 {
        let n = 2 + r.gen_range(0..10);
        let g = random_graph(&mut r, n, 0.5, 4);
        let xf = random_laminar_family(&mut r, n, 2 * n);
        let x = build_tree(&xf, n).unwrap();
        assert_eq!(merge(&x, &x, &g).family(), brute_verify(&g, &xf, &xf));
        assert_eq!(merge_lazy(&x, &x, &g).family(), x.family());
        let e = build_tree(&enumerate_extreme_sets(&g).unwrap(), n).unwrap();
        assert_eq!(merge(&e, &e, &g).family(), e.family());
    }
}

#[test]
fn union_tree_matches_set_union() {
    let mut r = rng(25);
    let mut both = 0;
    for _ in 0..400 {
        let n = 1 + r.gen_range(0..12);
        let xf = random_laminar_family(&mut r, n, 2 * n);
        let yf = random_laminar_family(&mut r, n, 2 * n);
        let (x, y) = (build_tree(&xf, n).unwrap(), build_tree(&yf, n).unwrap());
        let mut all = xf.clone();
        for s in &yf {
            if !all.contains(s) {
                all.push(s.clone());
            }
        }
        match union_tree(&x, &y) {
            Ok(t) => {
                both += 1;
                assert!(is_laminar(&all));
                assert_eq!(t.family(), sorted(all));
            }
            Err(extreme_sets::Error::NotLaminar { a, b }) => {
                assert!(!is_laminar(&all));
                let (a, b) = (VertexSet::new(n, a).unwrap(), VertexSet::new(n, b).unwrap());
                assert!(a.crosses(&b));
            }
            Err(e) => panic!("unexpected error {e}"),
        }
    }
    assert!(both > 50);
}

#[test]
fn union_tree_examples() {
    let n = 6;
    let x = build_tree(&[vs(n, &[0, 1, 2]), vs(n, &[0])], n).unwrap();
    let y = build_tree(&[vs(n, &[0, 1]), vs(n, &[3, 4])], n).unwrap();
    let t = union_tree(&x, &y).unwrap();
    assert_eq!(t.family(), sorted(vec![vs(n, &[0]), vs(n, &[0, 1]), vs(n, &[0, 1, 2]), vs(n, &[3, 4])]));
    let crossing = build_tree(&[vs(n, &[2, 3])], n).unwrap();
    assert!(union_tree(&x, &crossing).is_err());
}
