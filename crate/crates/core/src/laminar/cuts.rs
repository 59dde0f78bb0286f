use super::LaminarTree;
use crate::dsu::Dsu;
use crate::graph::WeightedGraph;

/// Cut value of every node (0 at the root). Each edge adds its weight at the
/// homes of both endpoints and subtracts twice the weight at their LCA; a
/// node's cut is the sum over its subtree. LCAs come from Tarjan's offline
/// algorithm.
pub fn all_cut_values(g: &WeightedGraph, t: &LaminarTree) -> Vec<i64> {
    assert_eq!(g.n(), t.n(), "tree and graph universes differ");
    let k = t.node_count();
    let mut label = vec![0i64; k];
    // queries per node: (other endpoint node, weight)
    let mut start = vec![0usize; k + 1];
    let mut pairs = Vec::new();
    for &(u, v, w) in g.edges() {
        let (a, b) = (t.home(u), t.home(v));
        if a != b {
            pairs.push((a, b, w as i64));
            start[a as usize + 1] += 1;
            start[b as usize + 1] += 1;
        }
    }
    for i in 0..k {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut queries = vec![(0u32, 0i64); 2 * pairs.len()];
    for &(a, b, w) in &pairs {
        queries[fill[a as usize]] = (b, w);
        fill[a as usize] += 1;
        queries[fill[b as usize]] = (a, w);
        fill[b as usize] += 1;
    }

    let mut dsu = Dsu::new(k);
    let mut anc: Vec<u32> = (0..k as u32).collect();
    let mut done = vec![false; k];
    let mut stack: Vec<(u32, usize)> = vec![(0, 0)];
    while let Some(&mut (x, ref mut i)) = stack.last_mut() {
        let kids = t.children(x);
        if *i < kids.len() {
            let c = kids[*i];
            *i += 1;
            stack.push((c, 0));
            continue;
        }
        stack.pop();
        done[x as usize] = true;
        for &(y, w) in &queries[start[x as usize]..start[x as usize + 1]] {
            label[x as usize] += w;
            if done[y as usize] {
                let lca = anc[dsu.find(y) as usize];
                label[lca as usize] -= 2 * w;
            }
        }
        if let Some(p) = t.parent(x) {
            dsu.union_into(p, x);
            let r = dsu.find(p);
            anc[r as usize] = p;
        }
    }
    for x in (1..k).rev() {
        let p = t.parents()[x] as usize;
        label[p] += label[x];
    }
    label[0] = 0;
    label
}
