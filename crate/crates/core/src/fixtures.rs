//! Small named graphs used by examples, tests and the self-check.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::WeightedGraph;

/// Two unit triangles {0,1,2} and {3,4,5} joined by the unit edge 0-3.
pub fn dumbbell() -> WeightedGraph {
    WeightedGraph::new(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1), (0, 3, 1)]).expect("valid graph")
}

pub fn triangle() -> WeightedGraph {
    WeightedGraph::new(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).expect("valid graph")
}

pub fn cycle(n: usize) -> WeightedGraph {
    WeightedGraph::new(n, (0..n as u32).map(|i| (i, (i + 1) % n as u32, 1))).expect("valid graph")
}

pub fn path(n: usize) -> WeightedGraph {
    WeightedGraph::new(n, (1..n as u32).map(|i| (i - 1, i, 1))).expect("valid graph")
}

/// Star with center 0 and `leaves` unit spokes.
pub fn star(leaves: usize) -> WeightedGraph {
    WeightedGraph::new(leaves + 1, (1..=leaves as u32).map(|i| (0, i, 1))).expect("valid graph")
}

/// Erdos-Renyi graph with weights in `1..=wmax`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64, wmax: u64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(1..=wmax)));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("valid graph")
}

/// Random graph made connected by adding a random spanning tree.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64, wmax: u64) -> WeightedGraph {
    let base = random_graph(rng, n, p, wmax);
    let mut edges = base.edges().to_vec();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(rng);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        edges.push((perm[i], perm[j], rng.gen_range(1..=wmax)));
    }
    WeightedGraph::new(n, edges).expect("valid graph")
}
