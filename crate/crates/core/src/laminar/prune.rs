use super::{all_cut_values, LaminarTree};
use crate::graph::{VertexSet, WeightedGraph};
use crate::threshold::Threshold;

/// Keeps exactly the d-weak extreme sets contained in `s`, provided the input
/// contains all of them. Drops d-strong nodes and nodes leaving `s`, then in
/// post-order drops every node with a current child of no larger cut.
pub fn prune_non_extreme(g: &WeightedGraph, t: &LaminarTree, s: &VertexSet, d: Threshold) -> LaminarTree {
    let k = t.node_count();
    let cut = all_cut_values(g, t);
    let mut outside = vec![false; k];
    for v in 0..t.n() as u32 {
        if !s.contains(v) {
            let mut x = t.home(v);
            while !outside[x as usize] {
                outside[x as usize] = true;
                match t.parent(x) {
                    Some(p) => x = p,
                    None => break,
                }
            }
        }
    }
    let mut keep = vec![false; k];
    keep[0] = true;
    let mut child_min = vec![i64::MAX; k];
    for x in (1..k).rev() {
        let weak = !outside[x] && d.is_weak(cut[x]);
        keep[x] = weak && child_min[x] > cut[x];
        let up = if keep[x] { cut[x] } else { child_min[x] };
        let p = t.parents()[x] as usize;
        child_min[p] = child_min[p].min(up);
    }
    let mut out = t.retain(&keep);
    let cuts = all_cut_values(g, &out);
    out.set_cuts(cuts);
    out
}
