#![allow(dead_code)]

use extreme_sets::laminar::{build_tree, LaminarTree};
use extreme_sets::{VertexSet, WeightedGraph};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    extreme_sets::rng::rng(seed)
}

pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, wmax: u64) -> WeightedGraph {
    extreme_sets::fixtures::random_graph(rng, n, p, wmax)
}

pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, wmax: u64) -> WeightedGraph {
    extreme_sets::fixtures::random_connected_graph(rng, n, p, wmax)
}

/// Random laminar family built by repeatedly carving a new member out of an
/// existing node (some of its children plus some of its own vertices).
pub fn random_laminar_family(rng: &mut ChaCha8Rng, n: usize, attempts: usize) -> Vec<VertexSet> {
    let mut family: Vec<VertexSet> = Vec::new();
    for _ in 0..attempts {
        let t = build_tree(&family, n).unwrap();
        let x = rng.gen_range(0..t.node_count()) as u32;
        let mut members = Vec::new();
        for &c in t.children(x) {
            if rng.gen_bool(0.5) {
                members.extend(t.node_set(c).iter());
            }
        }
        for &v in t.assoc(x) {
            if rng.gen_bool(0.5) {
                members.push(v);
            }
        }
        let s = VertexSet::new(n, members).unwrap();
        if !s.is_empty() && s != t.node_set(x) && !family.contains(&s) && s.len() < n {
            family.push(s);
        }
    }
    family
}

pub fn random_laminar_tree(rng: &mut ChaCha8Rng, n: usize, attempts: usize) -> LaminarTree {
    build_tree(&random_laminar_family(rng, n, attempts), n).unwrap()
}

pub fn sorted(mut v: Vec<VertexSet>) -> Vec<VertexSet> {
    v.sort();
    v
}

pub fn vs(n: usize, m: &[u32]) -> VertexSet {
    VertexSet::new(n, m.iter().copied()).unwrap()
}

pub fn is_laminar(family: &[VertexSet]) -> bool {
    extreme_sets::oracle::crossing_pair(family).is_none()
}

/// The graph with one extra isolated vertex appended.
pub fn with_dummy(g: &WeightedGraph) -> WeightedGraph {
    WeightedGraph::new(g.n() + 1, g.edges().to_vec()).unwrap()
}
