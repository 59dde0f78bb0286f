//! Cut-preserving edge sampling and greedy packing of low-overlap trees.

use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet, WeightedGraph};
use crate::rng::{derive, rng};
use crate::threshold::Epsilon;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparsifyConfig {
    pub epsilon: Epsilon,
    pub alpha: f64,
    pub seed: u64,
    /// Keep every edge (p = 1).
    pub force_identity: bool,
}

impl Default for SparsifyConfig {
    fn default() -> Self {
        SparsifyConfig { epsilon: Epsilon::default(), alpha: 64.0, seed: 0, force_identity: false }
    }
}

impl SparsifyConfig {
    /// Sampling probability for Steiner connectivity `lambda` on `n` vertices.
    pub fn probability(&self, n: usize, lambda: i64) -> f64 {
        if self.force_identity || lambda <= 0 {
            return 1.0;
        }
        (self.alpha * (n.max(2) as f64).ln() / lambda as f64).min(1.0)
    }
}

/// Samples every edge of `g` as `Binomial(w, p)`. When `c` is given and its
/// degree is below `eps * lambda`, its edges are dropped first, leaving it
/// isolated. Vertex ids are unchanged.
pub fn sample_preserving(g: &WeightedGraph, c: Option<Vertex>, lambda: i64, cfg: &SparsifyConfig) -> WeightedGraph {
    let drop_c = c.filter(|&c| {
        let eps = cfg.epsilon;
        (g.degree(c) as i128) * (eps.den as i128) < (lambda as i128) * (eps.num as i128)
    });
    let p = cfg.probability(g.n(), lambda);
    let mut r = rng(derive(cfg.seed, 0x5a4d));
    let edges = g.edges().iter().filter(|&&(u, v, _)| Some(u) != drop_c && Some(v) != drop_c);
    let sampled: Vec<(Vertex, Vertex, u64)> = if p >= 1.0 {
        edges.copied().collect()
    } else {
        edges
            .map(|&(u, v, w)| {
                let k = Binomial::new(w, p).expect("valid binomial").sample(&mut r);
                (u, v, k)
            })
            .collect()
    };
    WeightedGraph::from_raw(g.n(), sampled)
}

/// Trees rooted at `root`, each a parent array (`None` for the root and for
/// vertices the tree does not reach), with per-edge usage counts indexed like
/// the graph's edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreePacking {
    pub root: Vertex,
    pub trees: Vec<Vec<Option<Vertex>>>,
    pub usage: Vec<u64>,
    pub span: VertexSet,
}

/// Greedy load-balanced packing: up to `3 * count` trees, each a minimum
/// spanning forest under the current load `usage / w`, using an edge of
/// weight `w` at most `2w` times. Every tree must connect `root` to all of
/// `terminals`; fewer than `count` such trees is an error.
pub fn pack_trees(h: &WeightedGraph, root: Vertex, terminals: &VertexSet, count: usize, seed: u64) -> Result<TreePacking> {
    let n = h.n();
    let edges = h.edges();
    let mut usage = vec![0u64; edges.len()];
    let mut trees = Vec::new();
    let mut r = rng(derive(seed, 0x7ac4));
    let mut order: Vec<usize> = (0..edges.len()).collect();
    let mut tie = vec![0u64; edges.len()];
    let mut span = VertexSet::empty(n);
    while trees.len() < 3 * count {
        for t in tie.iter_mut() {
            *t = r.gen();
        }
        order.retain(|&e| usage[e] < 2 * edges[e].2);
        order.sort_by(|&a, &b| {
            let la = usage[a] as u128 * edges[b].2 as u128;
            let lb = usage[b] as u128 * edges[a].2 as u128;
            la.cmp(&lb).then(tie[a].cmp(&tie[b]))
        });
        let mut dsu = Dsu::new(n);
        let mut chosen = Vec::new();
        for &e in &order {
            let (u, v, _) = edges[e];
            if dsu.union(u, v).is_some() {
                chosen.push(e);
            }
        }
        let rr = dsu.find(root);
        if terminals.iter().any(|t| dsu.find(t) != rr) {
            break;
        }
        let mask: Vec<bool> = (0..n as u32).map(|v| dsu.find(v) == rr).collect();
        let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); n];
        for &e in &chosen {
            let (u, v, _) = edges[e];
            if mask[u as usize] {
                usage[e] += 1;
                adj[u as usize].push(v);
                adj[v as usize].push(u);
            }
        }
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        seen[root as usize] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &adj[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    parent[y as usize] = Some(x);
                    stack.push(y);
                }
            }
        }
        if trees.is_empty() {
            span = VertexSet::from_mask(&mask);
        }
        trees.push(parent);
    }
    if trees.len() < count {
        return Err(Error::Packing { built: trees.len(), wanted: count });
    }
    Ok(TreePacking { root, trees, usage, span })
}

impl TreePacking {
    /// Vertices reached by tree `i`.
    pub fn tree_span(&self, i: usize) -> VertexSet {
        let t = &self.trees[i];
        VertexSet::from_mask(&(0..t.len()).map(|v| v as Vertex == self.root || t[v].is_some()).collect::<Vec<_>>())
    }

    /// Number of edges of tree `i` with exactly one endpoint in `x`.
    pub fn crossings(&self, i: usize, x: &VertexSet) -> usize {
        self.trees[i].iter().enumerate().filter(|&(v, p)| p.is_some_and(|p| x.contains(v as Vertex) != x.contains(p))).count()
    }
}

/// Index of some tree crossed by at most two edges of the cut of `x`.
pub fn packing_covers(packing: &TreePacking, x: &VertexSet) -> Option<usize> {
    (0..packing.trees.len()).find(|&i| packing.crossings(i, x) <= 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn single_tree_spans() {
        let g = dumbbell();
        let p = pack_trees(&g, 0, &VertexSet::full(6), 1, 1).unwrap();
        assert!(!p.trees.is_empty());
        assert_eq!(p.tree_span(0), VertexSet::full(6));
        assert_eq!(p.trees[0].iter().filter(|x| x.is_some()).count(), 5);
    }

    #[test]
    fn identity_sampling_keeps_the_graph() {
        let g = dumbbell();
        let cfg = SparsifyConfig { force_identity: true, ..Default::default() };
        assert_eq!(sample_preserving(&g, None, 1, &cfg), g);
    }
}
