//! Minimum-weight edge connectivity augmentation from the extreme sets tree.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::graph::{Vertex, VertexSet, WeightedGraph};
use crate::laminar::{all_cut_values, LaminarTree};
use crate::mincut::steiner_mincut_fast;
use crate::pipeline::{extreme_sets_tree, PipelineConfig};

/// Deficiencies on the extreme sets tree: `dem[x] = max(0, tau - cut(x))` and
/// `total[x] = max(dem[x], sum of total over children)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DemandTree {
    pub tree: LaminarTree,
    pub tau: i64,
    pub dem: Vec<i64>,
    pub total: Vec<i64>,
}

impl DemandTree {
    /// Cut values are taken from the tree when present, otherwise from `g`.
    pub fn new(g: &WeightedGraph, tree: &LaminarTree, tau: i64) -> Self {
        let cuts = if tree.cuts().iter().all(|c| c.is_some()) {
            tree.cuts().iter().map(|c| c.unwrap_or(0)).collect()
        } else {
            all_cut_values(g, tree)
        };
        Self::from_cuts(tree, &cuts, tau)
    }

    fn from_cuts(tree: &LaminarTree, cuts: &[i64], tau: i64) -> Self {
        let k = tree.node_count();
        let dem: Vec<i64> = (0..k).map(|x| if x == 0 { 0 } else { (tau - cuts[x]).max(0) }).collect();
        let mut below = vec![0i64; k];
        let mut total = vec![0i64; k];
        for x in (0..k).rev() {
            total[x] = dem[x].max(below[x]);
            if x > 0 {
                below[tree.parents()[x] as usize] += total[x];
            }
        }
        DemandTree { tree: tree.clone(), tau, dem, total }
    }

    /// `ceil(D / 2)` for the total demand D at the root.
    pub fn bound(&self) -> i64 {
        (self.total[0] + 1) / 2
    }

    /// Demand per vertex: each node's excess over its children goes to its
    /// smallest vertex, so every node's set carries at least its total.
    pub fn vertex_demands(&self) -> Vec<i64> {
        let t = &self.tree;
        let k = t.node_count();
        let mut low = vec![u32::MAX; k];
        for v in (0..t.n() as u32).rev() {
            low[t.home(v) as usize] = v;
        }
        let mut child_sum = vec![0i64; k];
        for x in (1..k).rev() {
            let p = t.parents()[x] as usize;
            low[p] = low[p].min(low[x]);
            child_sum[p] += self.total[x];
        }
        let mut r = vec![0i64; t.n()];
        for x in 1..k {
            let extra = self.total[x] - child_sum[x];
            if extra > 0 {
                r[low[x] as usize] += extra;
            }
        }
        r
    }
}

/// Optimal augmentation weight for a tree carrying the extreme sets of `g`.
pub fn augmentation_bound(g: &WeightedGraph, tree: &LaminarTree, tau: i64) -> i64 {
    DemandTree::new(g, tree, tau).bound()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Augmentation {
    /// New edges `(u, v, w)` with `u < v`, sorted.
    pub edges: Vec<(Vertex, Vertex, u64)>,
    pub total_weight: i64,
    /// The bound from the demand tree.
    pub bound: i64,
}

/// Edges of least total weight whose addition makes `g` `tau`-edge-connected.
pub fn augment(g: &WeightedGraph, tau: i64, cfg: &PipelineConfig) -> Result<Augmentation> {
    let n = g.n();
    if tau <= 0 || n < 2 {
        return Ok(Augmentation { edges: Vec::new(), total_weight: 0, bound: 0 });
    }
    let tree = extreme_sets_tree(g, cfg)?;
    let demands = DemandTree::new(g, &tree, tau);
    let bound = demands.bound();
    let edges = if tau == 1 { connect_components(g) } else { split_off(g, tau, demands.vertex_demands())? };
    let total_weight = edges.iter().map(|&(_, _, w)| w as i64).sum();
    let out = Augmentation { edges, total_weight, bound };
    let joined = WeightedGraph::new(n, g.edges().iter().copied().chain(out.edges.iter().copied()))?;
    let (lambda, _) = steiner_mincut_fast(&joined, &VertexSet::full(n))?;
    assert!(lambda >= tau, "augmented graph has connectivity {lambda} < {tau}");
    if tau >= 2 {
        assert_eq!(out.total_weight, bound, "augmentation weight differs from the demand bound");
    }
    Ok(out)
}

/// A path through one vertex of every component.
fn connect_components(g: &WeightedGraph) -> Vec<(Vertex, Vertex, u64)> {
    let reps: Vec<Vertex> = g.components().iter().map(|c| c[0]).collect();
    let mut edges: Vec<_> = reps.windows(2).map(|w| (w[0].min(w[1]), w[0].max(w[1]), 1)).collect();
    edges.sort_unstable();
    edges
}

/// Attaches a new vertex s with edge weights `r` (made even in total) and
/// splits it off completely, each time pairing the largest remaining demand
/// with the largest partner that admits a positive split.
fn split_off(g: &WeightedGraph, tau: i64, mut r: Vec<i64>) -> Result<Vec<(Vertex, Vertex, u64)>> {
    let n = g.n();
    if r.iter().sum::<i64>() % 2 == 1 {
        let v = (0..n).max_by_key(|&v| (r[v], std::cmp::Reverse(v))).unwrap_or(0);
        r[v] += 1;
    }
    let mut added: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
    let terminals = VertexSet::new(n + 1, 0..n as Vertex)?;
    let build = |added: &BTreeMap<(Vertex, Vertex), u64>, r: &[i64]| {
        let s = n as Vertex;
        let extra = added.iter().map(|(&(u, v), &w)| (u, v, w));
        let spokes = (0..n).filter(|&v| r[v] > 0).map(|v| (v as Vertex, s, r[v] as u64));
        WeightedGraph::new(n + 1, g.edges().iter().copied().chain(extra).chain(spokes))
    };
    let admissible = |added: &BTreeMap<(Vertex, Vertex), u64>, r: &[i64], u: usize, v: usize, a: i64| -> Result<bool> {
        let mut r2 = r.to_vec();
        r2[u] -= a;
        r2[v] -= a;
        let mut add2 = added.clone();
        *add2.entry((u.min(v) as Vertex, u.max(v) as Vertex)).or_insert(0) += a as u64;
        let h = build(&add2, &r2)?;
        Ok(steiner_mincut_fast(&h, &terminals)?.0 >= tau)
    };
    while r.iter().any(|&x| x > 0) {
        let mut order: Vec<usize> = (0..n).filter(|&v| r[v] > 0).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(r[v]), v));
        let mut progressed = false;
        'pairs: for (i, &u) in order.iter().enumerate() {
            for &v in &order[i + 1..] {
                let (mut lo, mut hi) = (0i64, r[u].min(r[v]));
                while lo < hi {
                    let mid = (lo + hi + 1) / 2;
                    if admissible(&added, &r, u, v, mid)? {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                if lo > 0 {
                    r[u] -= lo;
                    r[v] -= lo;
                    *added.entry((u.min(v) as Vertex, u.max(v) as Vertex)).or_insert(0) += lo as u64;
                    progressed = true;
                    break 'pairs;
                }
            }
        }
        assert!(progressed, "no admissible split although tau >= 2");
    }
    Ok(added.into_iter().map(|((u, v), w)| (u, v, w)).collect())
}
