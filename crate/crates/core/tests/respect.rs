mod common;

use common::*;
use extreme_sets::fixtures::{dumbbell, path, star};
use extreme_sets::hld::NONE;
use extreme_sets::laminar::LaminarTree;
use extreme_sets::oracle::{enumerate_2respecting, enumerate_extreme_sets};
use extreme_sets::respect::*;
use extreme_sets::{cut_value, VertexSet, WeightedGraph};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random spider: root 0, optional unspanned last vertex, remaining vertices
/// split into random branches (leaf first).
fn random_spider(r: &mut ChaCha8Rng, n: usize, with_c: bool) -> Spider {
    let g = random_graph(r, n, 0.5, 4);
    let spanned = n - usize::from(with_c);
    let mut rest: Vec<u32> = (1..spanned as u32).collect();
    rest.shuffle(r);
    let mut branches = Vec::new();
    while !rest.is_empty() {
        let len = r.gen_range(1..=rest.len());
        branches.push(rest.drain(..len).collect::<Vec<u32>>());
    }
    Spider::new(g, 0, branches, with_c.then_some(n as u32 - 1))
}

fn span_of(sp: &Spider) -> VertexSet {
    VertexSet::new(sp.n(), (0..sp.n() as u32).filter(|&v| Some(v) != sp.c)).unwrap()
}

/// Tree edges `(child, parent)` of the spider crossed by `x`.
fn crossed(sp: &Spider, x: &VertexSet) -> Vec<u32> {
    let parent = sp.parent_array();
    (0..sp.n() as u32).filter(|&v| parent[v as usize] != NONE && x.contains(v) != x.contains(parent[v as usize])).collect()
}

fn down(sp: &Spider, v: u32) -> Vec<u32> {
    let br = &sp.branches[sp.branch_of[v as usize] as usize];
    br[..=sp.pos[v as usize] as usize].to_vec()
}

fn contains(t: &LaminarTree, s: &VertexSet) -> bool {
    let x = t.home(s.members()[0]);
    let mut y = x;
    loop {
        if t.node_set(y) == *s {
            return true;
        }
        if y == 0 {
            return false;
        }
        y = t.parents()[y as usize];
    }
}

fn spider_extremes(sp: &Spider) -> Vec<VertexSet> {
    let span = span_of(sp);
    enumerate_extreme_sets(&sp.g).unwrap().into_iter().filter(|x| x.is_subset(&span) && *x != span).collect()
}

#[test]
fn universe1_is_all_subtrees() {
    let mut r = rng(31);
    for _ in 0..50 {
        let n = 2 + r.gen_range(0..9);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let fam = universe1(&sp);
        assert_eq!(fam.family_size(), sp.total_len());
        for br in &sp.branches {
            for &v in br {
                assert!(contains(&fam, &VertexSet::new(n, down(&sp, v)).unwrap()));
            }
        }
    }
}

#[test]
fn universe1_on_a_path() {
    let g = path(3);
    let sp = Spider::new(g, 0, vec![vec![2, 1]], None);
    assert_eq!(universe1(&sp).family(), sorted(vec![vs(3, &[2]), vs(3, &[1, 2])]));
}

#[test]
fn universe2_single_branch_is_all_complements() {
    let g = path(5);
    let sp = Spider::new(g, 0, vec![vec![4, 3, 2, 1]], None);
    let fam = universe2(&sp);
    assert_eq!(fam.family_size(), 4);
    for set in fam.family() {
        assert!(set.contains(0));
    }
}

#[test]
fn universe2_contains_extreme_complements() {
    let mut r = rng(32);
    for _ in 0..300 {
        let n = 2 + r.gen_range(0..9);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let fam = universe2(&sp);
        let span = span_of(&sp);
        for x in spider_extremes(&sp) {
            let c = crossed(&sp, &x);
            if c.len() == 1 && x.contains(0) {
                assert!(contains(&fam, &x), "missing complement {:?}", x.members());
            }
            let _ = &span;
        }
    }
}

#[test]
fn partner_example() {
    let g = WeightedGraph::new(3, [(0, 1, 1), (0, 2, 1), (1, 2, 3)]).unwrap();
    let sp = Spider::new(g, 0, vec![vec![1], vec![2]], None);
    let p = lowest_partners(&sp);
    assert_eq!(p.p[1], Some(2));
    assert_eq!(p.p[2], Some(1));
    assert_eq!(universe3(&sp).family(), vec![vs(3, &[1, 2])]);
}

#[test]
fn partner_undefined_when_foreign_weight_is_small() {
    let g = WeightedGraph::new(3, [(0, 1, 5), (0, 2, 1), (1, 2, 1)]).unwrap();
    let sp = Spider::new(g, 0, vec![vec![1], vec![2]], None);
    assert_eq!(lowest_partners(&sp).p[1], None);
}

#[test]
fn partners_match_brute_force() {
    let mut r = rng(33);
    for _ in 0..300 {
        let n = 2 + r.gen_range(0..9);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let got = lowest_partners(&sp);
        for br in &sp.branches {
            for &u in br {
                let du = VertexSet::new(n, down(&sp, u)).unwrap();
                let su = cut_value(&sp.g, &du).unwrap();
                let mut want = None;
                for (b2, br2) in sp.branches.iter().enumerate() {
                    if b2 == sp.branch_of[u as usize] as usize {
                        continue;
                    }
                    for &v in br2 {
                        let dv = VertexSet::new(n, down(&sp, v)).unwrap();
                        let w = extreme_sets::cross_weight(&sp.g, &du, &dv).unwrap();
                        if 2 * w > su && want.is_none() {
                            want = Some(v);
                        }
                    }
                }
                assert_eq!(got.p[u as usize], want);
            }
        }
        // extreme two-subtree sets have mutual partners
        for x in spider_extremes(&sp) {
            let c = crossed(&sp, &x);
            if c.len() == 2 && sp.branch_of[c[0] as usize] != sp.branch_of[c[1] as usize] && !x.contains(0) {
                let (u, v) = (c[0], c[1]);
                let pu = got.p[u as usize].expect("partner exists");
                assert_eq!(sp.branch_of[pu as usize], sp.branch_of[v as usize]);
                assert!(sp.pos[pu as usize] <= sp.pos[v as usize]);
            }
        }
    }
}

#[test]
fn bottlenecks_match_brute_force() {
    let mut r = rng(34);
    for _ in 0..300 {
        let n = 2 + r.gen_range(0..9);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let bt = bottlenecks(&sp);
        for br in &sp.branches {
            let mut run = INF;
            for (i, &u) in br.iter().enumerate() {
                let mut weak = INF;
                for j in 0..i {
                    let seg = VertexSet::new(n, br[j + 1..=i].iter().copied()).unwrap();
                    weak = weak.min(cut_value(&sp.g, &seg).unwrap());
                }
                run = run.min(weak);
                assert_eq!(bt.weak[u as usize], weak);
                assert_eq!(bt.b[u as usize], run);
                if i > 0 {
                    assert!(bt.b[u as usize] <= bt.b[br[i - 1] as usize]);
                }
            }
        }
    }
}

#[test]
fn universe3_contains_extreme_two_subtree_sets() {
    let mut r = rng(35);
    for _ in 0..500 {
        let n = 2 + r.gen_range(0..9);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let fam = universe3(&sp);
        for x in spider_extremes(&sp) {
            let c = crossed(&sp, &x);
            if c.len() == 2 && sp.branch_of[c[0] as usize] != sp.branch_of[c[1] as usize] && !x.contains(0) {
                assert!(contains(&fam, &x), "missing {:?}", x.members());
            }
        }
    }
}

#[test]
fn universe4_contains_extreme_complements_of_two_subtrees() {
    let mut r = rng(36);
    for _ in 0..500 {
        let n = 3 + r.gen_range(0..8);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let fam = universe4(&sp);
        for x in spider_extremes(&sp) {
            let c = crossed(&sp, &x);
            if c.len() == 2 && sp.branch_of[c[0] as usize] != sp.branch_of[c[1] as usize] && x.contains(0) {
                assert!(contains(&fam, &x), "missing {:?}", x.members());
            }
        }
    }
}

#[test]
fn universe4_on_a_constructed_instance() {
    // two heavy leaves hang off a six-cycle; the rest of the cycle is extreme
    let g =
        WeightedGraph::new(6, [(0, 1, 3), (1, 2, 3), (2, 0, 3), (0, 3, 1), (3, 4, 1), (4, 5, 1), (5, 0, 1), (1, 4, 1), (2, 5, 1)]).unwrap();
    let sp = Spider::new(g.clone(), 0, vec![vec![3, 1], vec![5, 4, 2]], None);
    let want = vs(6, &[0, 1, 2]);
    assert!(enumerate_extreme_sets(&g).unwrap().contains(&want));
    assert!(contains(&universe4(&sp), &want));
}

#[test]
fn spider_family_contains_one_respecting_and_incomparable_pairs() {
    let mut r = rng(37);
    for _ in 0..500 {
        let n = 2 + r.gen_range(0..9);
        let sp = {
            let c = r.gen_bool(0.5);
            random_spider(&mut r, n, c)
        };
        let fam = spider_family(&sp);
        assert!(is_laminar(&fam.family()));
        for x in spider_extremes(&sp) {
            let c = crossed(&sp, &x);
            let ok = c.len() == 1 || (c.len() == 2 && sp.branch_of[c[0] as usize] != sp.branch_of[c[1] as usize]);
            if ok {
                assert!(contains(&fam, &x), "missing {:?}", x.members());
            }
        }
    }
}

fn random_tree(r: &mut ChaCha8Rng, n: usize, with_c: bool) -> RootedTree {
    let spanned = n - usize::from(with_c);
    let mut perm: Vec<u32> = (0..spanned as u32).collect();
    perm.shuffle(r);
    let mut parent = vec![None; n];
    for i in 1..spanned {
        parent[perm[i] as usize] = Some(perm[r.gen_range(0..i)]);
    }
    RootedTree::new(perm[0], parent).unwrap()
}

#[test]
fn two_respecting_family_contains_oracle_sets() {
    let mut r = rng(38);
    for seed in 0..100 {
        let n = 2 + r.gen_range(0..9);
        let g = random_graph(&mut r, n, 0.5, 4);
        let tree = {
            let c = r.gen_bool(0.3);
            random_tree(&mut r, n, c)
        };
        let span = VertexSet::new(n, (0..n as u32).filter(|&v| Some(v) != tree.unspanned())).unwrap();
        let want = enumerate_2respecting(&g, &tree.parent, &span).unwrap();
        for leaf in [0, 8] {
            let cfg = RespectConfig { seed, leaf, ..Default::default() };
            let fam = two_respecting_family(&g, &tree, &cfg).unwrap();
            assert!(is_laminar(&fam.family()));
            for x in &want {
                assert!(contains(&fam, x), "seed {seed} leaf {leaf}: missing {:?}", x.members());
            }
        }
    }
}

#[test]
fn small_trees_find_everything_inside() {
    let g = dumbbell();
    let parent = vec![None, Some(0), Some(0)];
    let g3 = WeightedGraph::new(3, g.edges().iter().copied().filter(|&(u, v, _)| u < 3 && v < 3)).unwrap();
    let tree = RootedTree::new(0, parent).unwrap();
    let fam = two_respecting_family(&g3, &tree, &RespectConfig::default()).unwrap();
    for x in enumerate_extreme_sets(&g3).unwrap() {
        assert!(contains(&fam, &x));
    }
}

#[test]
fn dumbbell_bfs_tree() {
    let g = dumbbell();
    let parent = vec![None, Some(0), Some(0), Some(0), Some(3), Some(3)];
    let tree = RootedTree::new(0, parent.clone()).unwrap();
    for leaf in [0, 8] {
        let fam = two_respecting_family(&g, &tree, &RespectConfig { leaf, ..Default::default() }).unwrap();
        for x in enumerate_2respecting(&g, &parent, &VertexSet::full(6)).unwrap() {
            assert!(contains(&fam, &x));
        }
    }
}

#[test]
fn leaf_solver_returns_exactly_the_2respecting_sets() {
    let mut r = rng(41);
    for seed in 0..150 {
        let n = 2 + r.gen_range(0..7);
        let g = random_graph(&mut r, n, 0.6, 5);
        let tree = {
            let c = r.gen_bool(0.3);
            random_tree(&mut r, n, c)
        };
        let span = VertexSet::new(n, (0..n as u32).filter(|&v| Some(v) != tree.unspanned())).unwrap();
        let fam = two_respecting_family(&g, &tree, &RespectConfig { seed, leaf: 12, ..Default::default() }).unwrap();
        let mut got: Vec<Vec<u32>> = fam.family().iter().filter(|x| x.len() < span.len()).map(|x| x.members().to_vec()).collect();
        let mut want: Vec<Vec<u32>> =
            enumerate_2respecting(&g, &tree.parent, &span).unwrap().iter().map(|x| x.members().to_vec()).collect();
        got.sort();
        want.sort();
        assert_eq!(got, want, "seed {seed}");
    }
}

#[test]
fn rejects_non_trees() {
    assert!(RootedTree::new(0, vec![None, Some(2), Some(1)]).is_err());
    assert!(RootedTree::new(0, vec![None, None, None]).is_err());
    assert!(RootedTree::new(1, vec![None, Some(0), None]).is_err());
}

#[test]
fn centroid_examples() {
    let p5 = RootedTree::new(0, vec![None, Some(0), Some(1), Some(2), Some(3)]).unwrap();
    assert_eq!(centroid_split(&p5).0, 2);
    let s = RootedTree::new(1, vec![Some(1), None, Some(0), Some(0)]).unwrap();
    let _ = star(3);
    assert_eq!(centroid_split(&s).0, 0);
    let parent: Vec<Option<u32>> = (0..15u32).map(|v| if v == 0 { None } else { Some((v - 1) / 2) }).collect();
    let (c, groups) = centroid_split(&RootedTree::new(0, parent).unwrap());
    assert_eq!(c, 0);
    assert!(groups.iter().all(|g| g.len() <= 10));
    assert_eq!(groups[0].len() + groups[1].len(), 14);
}

#[test]
fn centroid_groups_are_balanced() {
    let mut r = rng(39);
    for _ in 0..200 {
        let n = 2 + r.gen_range(0..60);
        let tree = random_tree(&mut r, n, false);
        let (_, groups) = centroid_split(&tree);
        for g in &groups {
            assert!(3 * g.len() <= 2 * n, "group of {} in {n}", g.len());
        }
    }
}

#[test]
fn spider_sample_of_a_spider_is_itself() {
    let g = star(4);
    let tree = RootedTree::new(0, vec![None, Some(0), Some(0), Some(1), Some(2)]).unwrap();
    let g5 = WeightedGraph::new(5, g.edges().to_vec()).unwrap();
    let samples = spider_sample(&g5, &tree, 10, 1);
    assert_eq!(samples.len(), 1);
    assert_eq!(samples[0].spider.n(), 5);
    assert_eq!(samples[0].spider.branches.len(), 2);
}

#[test]
fn spider_sample_of_a_path_is_the_path() {
    let tree = RootedTree::new(0, vec![None, Some(0), Some(1), Some(2)]).unwrap();
    let s = spider_sample(&path(4), &tree, 5, 3);
    assert_eq!(s.len(), 1);
    assert_eq!(s[0].spider.branches, vec![vec![3, 2, 1]]);
}
