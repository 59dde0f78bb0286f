//! Merging two laminar families into one laminar family that keeps every
//! extreme member of either input.

mod consistency;

pub use consistency::ConsistencyState;

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::laminar::{LaminarTree, NONE};
use crate::rng::splitmix64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyStats {
    pub rounds: usize,
    pub removed: usize,
}

/// Members U of `x` such that some W in `y` meets U without containing it and
/// has `cut(U \ W) <= cut(U)` are removed; everything else is kept.
pub fn verify(x: &LaminarTree, y: &LaminarTree, g: &WeightedGraph) -> LaminarTree {
    verify_with_stats(x, y, g).0
}

pub fn verify_with_stats(x: &LaminarTree, y: &LaminarTree, g: &WeightedGraph) -> (LaminarTree, VerifyStats) {
    let k = x.node_count();
    let mut state = ConsistencyState::new(g, y);
    let mut kids: Vec<usize> = (0..k as u32).map(|i| x.children(i).len()).collect();
    let mut assoc: Vec<Vec<u32>> = (0..k as u32).map(|i| x.assoc(i).to_vec()).collect();
    let mut alive = vec![true; k];
    let mut removed = vec![false; k];
    let mut stats = VerifyStats::default();
    let mut leaves: Vec<u32> = (1..k as u32).filter(|&i| kids[i as usize] == 0).collect();
    while !leaves.is_empty() {
        stats.rounds += 1;
        let mut boughs = Vec::with_capacity(leaves.len());
        for &leaf in &leaves {
            let mut nodes = vec![leaf];
            let mut p = x.parents()[leaf as usize];
            while p != 0 && kids[p as usize] == 1 {
                nodes.push(p);
                p = x.parents()[p as usize];
            }
            boughs.push((nodes, p));
        }
        let mut next = Vec::new();
        for (nodes, stop) in boughs {
            for &node in &nodes {
                for &u in &assoc[node as usize] {
                    state.insert(u);
                }
                if state.query().is_some_and(|m| m <= 0) {
                    removed[node as usize] = true;
                    stats.removed += 1;
                }
            }
            state.reset();
            for &node in &nodes {
                alive[node as usize] = false;
                let moved = std::mem::take(&mut assoc[node as usize]);
                assoc[stop as usize].extend(moved);
            }
            kids[stop as usize] -= 1;
            if stop != 0 && kids[stop as usize] == 0 {
                next.push(stop);
            }
        }
        leaves = next;
    }
    debug_assert!(alive.iter().skip(1).all(|&a| !a));
    let keep: Vec<bool> = removed.iter().map(|&r| !r).collect();
    (x.retain(&keep), stats)
}

/// Verifies both directions and joins the survivors.
pub fn merge(x: &LaminarTree, y: &LaminarTree, g: &WeightedGraph) -> LaminarTree {
    let xs = verify(x, y, g);
    let ys = verify(y, x, g);
    union_tree(&xs, &ys).expect("survivors of both verify passes form a laminar family")
}

/// Returns the plain union when it is already laminar, otherwise [`merge`].
pub fn merge_lazy(x: &LaminarTree, y: &LaminarTree, g: &WeightedGraph) -> LaminarTree {
    if y.family_size() == 0 {
        return x.clone();
    }
    if x.family_size() == 0 {
        return y.clone();
    }
    union_inner(x, y).unwrap_or_else(|| merge(x, y, g))
}

struct Lift {
    up: Vec<Vec<u32>>,
    size: Vec<usize>,
}

impl Lift {
    fn new(t: &LaminarTree) -> Self {
        let k = t.node_count();
        let mut up = vec![t.parents().iter().map(|&p| if p == NONE { 0 } else { p }).collect::<Vec<u32>>()];
        let mut j = 1;
        while (1usize << j) < k {
            let prev = &up[j - 1];
            let next: Vec<u32> = (0..k).map(|x| prev[prev[x] as usize]).collect();
            up.push(next);
            j += 1;
        }
        Lift { up, size: t.sizes() }
    }

    /// Lowest ancestor-or-self of `a` whose set has at least `s` vertices.
    fn at_least(&self, mut a: u32, s: usize) -> u32 {
        if self.size[a as usize] >= s {
            return a;
        }
        for level in self.up.iter().rev() {
            let b = level[a as usize];
            if self.size[b as usize] < s {
                a = b;
            }
        }
        self.up[0][a as usize]
    }
}

fn vertex_hash(v: u32) -> u64 {
    splitmix64(v as u64 ^ 0x5bd1_e995_1234_abcd)
}

fn subtree_hashes(t: &LaminarTree) -> Vec<u64> {
    let mut h: Vec<u64> =
        (0..t.node_count() as u32).map(|x| t.assoc(x).iter().fold(0u64, |acc, &v| acc.wrapping_add(vertex_hash(v)))).collect();
    for x in (1..t.node_count()).rev() {
        let p = t.parents()[x] as usize;
        h[p] = h[p].wrapping_add(h[x]);
    }
    h
}

fn representatives(t: &LaminarTree) -> Vec<u32> {
    let mut rep = vec![u32::MAX; t.node_count()];
    for x in (0..t.node_count()).rev() {
        if let Some(&v) = t.assoc(x as u32).first() {
            rep[x] = v;
        } else if let Some(&c) = t.children(x as u32).first() {
            rep[x] = rep[c as usize];
        }
    }
    rep
}

/// Tree of the union of two families whose union is laminar. Equal sets are
/// kept once, preferring `xs`. A union that is not laminar is reported with a
/// crossing pair.
pub fn union_tree(xs: &LaminarTree, ys: &LaminarTree) -> Result<LaminarTree> {
    union_inner(xs, ys).ok_or_else(|| {
        let (a, b) = crate::oracle::crossing_pair(&[xs.sets(), ys.sets()].concat())
            .unwrap_or_else(|| unreachable!("fingerprint mismatch without a crossing pair"));
        Error::NotLaminar { a: a.members().to_vec(), b: b.members().to_vec() }
    })
}

fn union_inner(xs: &LaminarTree, ys: &LaminarTree) -> Option<LaminarTree> {
    assert_eq!(xs.n(), ys.n(), "families over different universes");
    let n = xs.n();
    let (kx, ky) = (xs.node_count(), ys.node_count());
    let (lx, ly) = (Lift::new(xs), Lift::new(ys));
    let (rx, ry) = (representatives(xs), representatives(ys));
    let (hx, hy) = (subtree_hashes(xs), subtree_hashes(ys));

    // union id of every Y node: its X twin or a fresh id
    let mut yid = vec![NONE; ky];
    yid[0] = 0;
    let mut fresh = kx as u32;
    for w in 1..ky as u32 {
        let s = ly.size[w as usize];
        let a = lx.at_least(xs.home(ry[w as usize]), s);
        if lx.size[a as usize] == s {
            if hx[a as usize] != hy[w as usize] {
                return None;
            }
            yid[w as usize] = a;
        } else {
            yid[w as usize] = fresh;
            fresh += 1;
        }
    }
    let total = fresh as usize;
    let mut parent = vec![NONE; total];
    let mut size = vec![n; total];
    let mut cut = vec![None; total];
    let mut source_hash = vec![0u64; total];
    for z in 0..kx as u32 {
        size[z as usize] = lx.size[z as usize];
        cut[z as usize] = xs.cut(z);
        source_hash[z as usize] = hx[z as usize];
    }
    for w in 0..ky as u32 {
        let id = yid[w as usize] as usize;
        if id >= kx {
            size[id] = ly.size[w as usize];
            cut[id] = ys.cut(w);
            source_hash[id] = hy[w as usize];
        }
    }
    for z in 1..kx as u32 {
        let s = lx.size[z as usize];
        let px = xs.parents()[z as usize];
        let yc = ly.at_least(ys.home(rx[z as usize]), s + 1);
        parent[z as usize] = if ly.size[yc as usize] < lx.size[px as usize] { yid[yc as usize] } else { px };
    }
    for w in 1..ky as u32 {
        let id = yid[w as usize] as usize;
        if id < kx {
            continue;
        }
        let s = ly.size[w as usize];
        let py = ys.parents()[w as usize];
        let xc = lx.at_least(xs.home(ry[w as usize]), s + 1);
        parent[id] = if ly.size[py as usize] < lx.size[xc as usize] { yid[py as usize] } else { xc };
    }
    let mut home = vec![0u32; n];
    for v in 0..n as u32 {
        let (a, b) = (xs.home(v), ys.home(v));
        home[v as usize] = if ly.size[b as usize] < lx.size[a as usize] { yid[b as usize] } else { a };
    }
    // parents have strictly larger sets, so increasing size visits children first
    let mut order: Vec<usize> = (1..total).collect();
    order.sort_by_key(|&i| size[i]);
    let mut hash = vec![0u64; total];
    let mut count = vec![0usize; total];
    for (v, &h) in home.iter().enumerate() {
        let h = h as usize;
        hash[h] = hash[h].wrapping_add(vertex_hash(v as u32));
        count[h] += 1;
    }
    for &i in &order {
        let p = parent[i] as usize;
        if size[p] <= size[i] || hash[i] != source_hash[i] || count[i] != size[i] {
            return None;
        }
        hash[p] = hash[p].wrapping_add(hash[i]);
        count[p] += count[i];
    }
    LaminarTree::from_parts(n, parent, home, Some(cut)).ok()
}
