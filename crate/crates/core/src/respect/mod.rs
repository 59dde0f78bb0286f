//! Laminar families containing every extreme set that crosses at most two
//! edges of a given tree.

mod spider;
mod universe;
mod universe4;

use std::collections::{HashMap, HashSet};

use rand::Rng;

pub use spider::Spider;
pub use universe::{bottlenecks, lowest_partners, universe1, universe2, universe3, BottleneckTable, PartnerTable, INF};
pub use universe4::universe4;

use spider::{chains_to_tree, filter_chains, Prep};
use universe::{universe1_chains, universe2_chains, universe3_chains};
use universe4::{scan, universe4_from_scan};

use crate::error::{Error, Result};
use crate::graph::{Vertex, WeightedGraph};
use crate::hld::{Csr, Hld, NONE};
use crate::laminar::LaminarTree;
use crate::merge::merge_lazy;
use crate::rng::{derive, derive2, rng};
use crate::threshold::Threshold;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RespectConfig {
    /// Spider trials per centroid are `ceil(beta * log2(n)^3)`.
    pub beta: f64,
    /// Overrides the trial count when set.
    pub trials: Option<usize>,
    /// Instances spanning at most this many vertices are solved by
    /// enumerating their vertex subsets (capped at [`MAX_LEAF`]).
    pub leaf: usize,
    pub seed: u64,
}

pub const MAX_LEAF: usize = 12;

impl Default for RespectConfig {
    fn default() -> Self {
        RespectConfig { beta: 2.0, trials: None, leaf: 8, seed: 0 }
    }
}

impl RespectConfig {
    pub fn trial_count(&self, n: usize) -> usize {
        self.trials.unwrap_or_else(|| {
            let l = (n.max(2) as f64).log2();
            (self.beta * l * l * l).ceil().max(1.0) as usize
        })
    }
}

/// A tree given by parent links. Vertices other than `root` without a parent
/// are not on the tree; at most one is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub root: Vertex,
    pub parent: Vec<Option<Vertex>>,
}

impl RootedTree {
    pub fn new(root: Vertex, parent: Vec<Option<Vertex>>) -> Result<Self> {
        let n = parent.len();
        if root as usize >= n || parent[root as usize].is_some() {
            return Err(Error::NotATree("root must be a vertex without parent".into()));
        }
        let mut children = vec![Vec::new(); n];
        for (v, p) in parent.iter().enumerate() {
            if let Some(p) = *p {
                if p as usize >= n || p as usize == v {
                    return Err(Error::NotATree(format!("bad parent {p} for {v}")));
                }
                children[p as usize].push(v as Vertex);
            }
        }
        let mut seen = vec![false; n];
        seen[root as usize] = true;
        let mut stack = vec![root];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &children[x as usize] {
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        let with_parent = parent.iter().filter(|p| p.is_some()).count();
        if count != with_parent + 1 {
            return Err(Error::NotATree("parent links do not form a single tree".into()));
        }
        if n - count > 1 {
            return Err(Error::NotATree(format!("{} vertices are off the tree", n - count)));
        }
        Ok(RootedTree { root, parent })
    }

    /// The vertex off the tree, if any.
    pub fn unspanned(&self) -> Option<Vertex> {
        (0..self.parent.len() as Vertex).find(|&v| v != self.root && self.parent[v as usize].is_none())
    }

    fn adjacency(&self) -> Csr {
        let edges: Vec<(u32, u32)> = self.parent.iter().enumerate().filter_map(|(v, p)| p.map(|p| (v as u32, p))).collect();
        Csr::undirected(self.parent.len(), &edges)
    }
}

/// Restricts output sets to those below a cut threshold and avoiding a vertex.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FamilyFilter {
    pub threshold: Option<Threshold>,
    pub avoid: Option<Vertex>,
}

/// A tree on a local graph: every vertex except `c` is on the tree.
struct Instance {
    g: WeightedGraph,
    adj: Csr,
    c: Option<u32>,
    avoid: Option<u32>,
    /// Vertex of this instance holding each vertex of the top-level graph,
    /// tracked only while spider caching is on.
    from_top: Option<Vec<Vertex>>,
}

pub const SPIDER_CACHE_LIMIT: usize = 256;

type SpiderKey = (Vec<Vertex>, Vec<Vec<Vertex>>, Option<Vertex>);

/// Filtered spider families keyed by how the spider arises from one graph.
/// Reusable across trees as long as the graph and the filter stay the same.
/// Keys cost a pass over the whole graph, so graphs above
/// [`SPIDER_CACHE_LIMIT`] vertices are not cached.
#[derive(Debug, Default)]
pub struct SpiderCache {
    owner: Option<(usize, FamilyFilter)>,
    families: HashMap<SpiderKey, LaminarTree>,
    pub hits: usize,
    pub misses: usize,
}

/// A sampled spider and the map from the caller's vertices to spider vertices.
#[derive(Clone, Debug)]
pub struct SpiderInstance {
    pub spider: Spider,
    pub map: Vec<Vertex>,
}

/// Laminar family containing every extreme set inside the tree's span that
/// crosses at most two tree edges.
pub fn two_respecting_family(g: &WeightedGraph, tree: &RootedTree, cfg: &RespectConfig) -> Result<LaminarTree> {
    two_respecting_family_filtered(g, tree, cfg, FamilyFilter::default())
}

/// As [`two_respecting_family`], keeping only sets that pass `filter`.
pub fn two_respecting_family_filtered(
    g: &WeightedGraph,
    tree: &RootedTree,
    cfg: &RespectConfig,
    filter: FamilyFilter,
) -> Result<LaminarTree> {
    two_respecting_family_cached(g, tree, cfg, filter, &mut SpiderCache::default())
}

/// As [`two_respecting_family_filtered`], reusing spider families from
/// earlier calls on the same graph with the same filter.
pub fn two_respecting_family_cached(
    g: &WeightedGraph,
    tree: &RootedTree,
    cfg: &RespectConfig,
    filter: FamilyFilter,
    cache: &mut SpiderCache,
) -> Result<LaminarTree> {
    if tree.parent.len() != g.n() {
        return Err(Error::NotATree("parent array length differs from vertex count".into()));
    }
    RootedTree::new(tree.root, tree.parent.clone())?;
    match cache.owner {
        None => cache.owner = Some((g.n(), filter)),
        Some(owner) => assert_eq!(owner, (g.n(), filter), "spider cache reused with another graph or filter"),
    }
    let inst = Instance {
        g: g.clone(),
        adj: tree.adjacency(),
        c: tree.unspanned(),
        avoid: filter.avoid,
        from_top: (g.n() <= SPIDER_CACHE_LIMIT).then(|| (0..g.n() as Vertex).collect()),
    };
    Ok(solve(&inst, cfg, filter.threshold, cfg.seed, cache))
}

fn solve(inst: &Instance, cfg: &RespectConfig, threshold: Option<Threshold>, seed: u64, cache: &mut SpiderCache) -> LaminarTree {
    let n = inst.g.n();
    let spanned = n - usize::from(inst.c.is_some());
    if spanned <= 1 {
        return LaminarTree::root_only(n);
    }
    if spanned <= cfg.leaf.min(MAX_LEAF) {
        return enumerate_leaf(inst, threshold);
    }
    let start = (0..n as u32).find(|&v| Some(v) != inst.c).expect("spanned vertex");
    let r = find_centroid(&inst.adj, start);
    let parent = root_at(&inst.adj, r);
    let mut fam = LaminarTree::root_only(n);
    for si in spider_sample_parent(&parent, r, inst.c, cfg.trial_count(spanned), derive(seed, 1)) {
        let key: Option<SpiderKey> =
            inst.from_top.as_ref().map(|ft| (ft.iter().map(|&v| si.map[v as usize]).collect(), si.branches.clone(), si.c));
        let local = match key.as_ref().and_then(|k| cache.families.get(k)) {
            Some(f) => {
                cache.hits += 1;
                f.clone()
            }
            None => {
                cache.misses += 1;
                let sp = Spider::new(inst.g.quotient(&si.map, si.k), 0, si.branches, si.c);
                let avoid = inst.avoid.map(|a| si.map[a as usize]);
                let f = filtered_spider_family(&sp, threshold, avoid);
                if let Some(k) = key {
                    cache.families.insert(k, f.clone());
                }
                f
            }
        };
        if local.family_size() > 0 {
            fam = merge_lazy(&fam, &local.lift(&si.map), &inst.g);
        }
    }
    let kids: Vec<u32> = inst.adj[r as usize].to_vec();
    if kids.len() >= 2 {
        for (gi, group) in split_groups(&parent, &kids).into_iter().enumerate() {
            let (child, map) = child_instance(inst, &parent, r, &group);
            let sub = solve(&child, cfg, threshold, derive2(seed, 2, gi as u64), cache);
            if sub.family_size() > 0 {
                fam = merge_lazy(&fam, &sub.lift(&map), &inst.g);
            }
        }
    }
    fam
}

/// Extreme sets of the instance graph inside the span that cross at most two
/// tree edges and pass the filter.
fn enumerate_leaf(inst: &Instance, threshold: Option<Threshold>) -> LaminarTree {
    let g = &inst.g;
    let n = g.n();
    let verts: Vec<u32> = (0..n as u32).filter(|&v| Some(v) != inst.c).collect();
    let s = verts.len();
    let mut idx = vec![NONE; n];
    for (i, &v) in verts.iter().enumerate() {
        idx[v as usize] = i as u32;
    }
    let mut w = vec![0i64; s * s];
    let mut tree_edges: Vec<u32> = Vec::new();
    for (i, &v) in verts.iter().enumerate() {
        for &(y, wt) in g.neighbors(v) {
            if idx[y as usize] != NONE {
                w[i * s + idx[y as usize] as usize] = wt as i64;
            }
        }
        for &y in &inst.adj[v as usize] {
            let j = idx[y as usize] as usize;
            if i < j {
                tree_edges.push((1 << i) | (1 << j));
            }
        }
    }
    let full = (1u32 << s) - 1;
    let mut cut = vec![0i64; 1 << s];
    let mut below = vec![i64::MAX; 1 << s];
    for x in 1..=full {
        let i = x.trailing_zeros() as usize;
        let rest = x & (x - 1);
        let inside: i64 = (0..s).filter(|&j| rest >> j & 1 == 1).map(|j| w[i * s + j]).sum();
        cut[x as usize] = cut[rest as usize] + g.degree(verts[i]) - 2 * inside;
        let mut m = i64::MAX;
        let mut bits = x;
        while bits != 0 {
            let y = x & !(1 << bits.trailing_zeros());
            bits &= bits - 1;
            if y != 0 {
                m = m.min(cut[y as usize]).min(below[y as usize]);
            }
        }
        below[x as usize] = m;
    }
    let avoid_bit = inst.avoid.map_or(0, |a| if idx[a as usize] == NONE { 0 } else { 1u32 << idx[a as usize] });
    let mut sets: Vec<u32> = (1..=full)
        .filter(|&x| {
            (x != full || inst.c.is_some())
                && x & avoid_bit == 0
                && cut[x as usize] < below[x as usize]
                && tree_edges.iter().filter(|&&e| (x & e).count_ones() == 1).count() <= 2
                && threshold.is_none_or(|d| d.is_weak(cut[x as usize]))
        })
        .collect();
    if sets.is_empty() {
        return LaminarTree::root_only(n);
    }
    sets.sort_by_key(|x| std::cmp::Reverse(x.count_ones()));
    let mut parent = vec![NONE];
    let mut cuts = vec![Some(0)];
    for (k, &x) in sets.iter().enumerate() {
        let p = (0..k).rev().find(|&j| sets[j] & x == x).map_or(0, |j| j as u32 + 1);
        parent.push(p);
        cuts.push(Some(cut[x as usize]));
    }
    let mut home = vec![0u32; n];
    for (i, &v) in verts.iter().enumerate() {
        if let Some(k) = (0..sets.len()).rev().find(|&k| sets[k] >> i & 1 == 1) {
            home[v as usize] = k as u32 + 1;
        }
    }
    LaminarTree::from_parts(n, parent, home, Some(cuts)).expect("extreme sets are laminar")
}

/// Union of the four universes on one spider.
pub fn spider_family(sp: &Spider) -> LaminarTree {
    filtered_spider_family(sp, None, None)
}

/// Each universe is filtered before merging; the filter is a per-set property,
/// so the extreme sets that pass it survive either way.
fn filtered_spider_family(sp: &Spider, threshold: Option<Threshold>, avoid: Option<u32>) -> LaminarTree {
    let prep = Prep::new(sp);
    let n = sp.n();
    let s = scan(sp, &prep);
    // universes 1 to 3 are skipped when their cheapest set fails the threshold
    let live = |v: i64| threshold.is_none_or(|d| v != i64::MAX && d.is_weak(v));
    let mut fam = LaminarTree::root_only(n);
    let mut others = Vec::with_capacity(4);
    if live(s.sub) {
        others.push(chains_to_tree(n, &filter_chains(&sp.g, universe1_chains(sp), threshold)));
    }
    if live(s.comp) {
        others.push(chains_to_tree(n, &filter_chains(&sp.g, universe2_chains(sp, &prep), threshold)));
    }
    if live(s.pair) {
        others.push(chains_to_tree(n, &filter_chains(&sp.g, universe3_chains(sp, &prep), threshold)));
    }
    others.push(universe4_from_scan(sp, &s, threshold));
    for other in others {
        if other.family_size() > 0 {
            fam = if fam.family_size() == 0 { other } else { merge_lazy(&fam, &other, &sp.g) };
        }
    }
    drop_containing(fam, avoid)
}

/// Removes every set containing `avoid`.
fn drop_containing(t: LaminarTree, avoid: Option<u32>) -> LaminarTree {
    let Some(a) = avoid else {
        return t;
    };
    let mut x = t.home(a);
    if x == 0 {
        return t;
    }
    let mut keep = vec![true; t.node_count()];
    while x != 0 {
        keep[x as usize] = false;
        x = t.parents()[x as usize];
    }
    t.retain(&keep)
}

/// A vertex whose removal leaves components of at most half the tree.
fn find_centroid(adj: &Csr, start: u32) -> u32 {
    let parent = root_at(adj, start);
    let order = bfs_order(adj, start);
    let total = order.len();
    let mut size = vec![1usize; adj.len()];
    for &x in order.iter().rev() {
        if parent[x as usize] != NONE {
            size[parent[x as usize] as usize] += size[x as usize];
        }
    }
    for &x in &order {
        let mut worst = total - size[x as usize];
        for &y in &adj[x as usize] {
            if parent[y as usize] == x {
                worst = worst.max(size[y as usize]);
            }
        }
        if 2 * worst <= total {
            return x;
        }
    }
    start
}

fn bfs_order(adj: &Csr, start: u32) -> Vec<u32> {
    let mut order = vec![start];
    let mut seen = vec![false; adj.len()];
    seen[start as usize] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x as usize] {
            if !seen[y as usize] {
                seen[y as usize] = true;
                order.push(y);
            }
        }
    }
    order
}

fn root_at(adj: &Csr, r: u32) -> Vec<u32> {
    let mut parent = vec![NONE; adj.len()];
    for x in bfs_order(adj, r) {
        for &y in &adj[x as usize] {
            if y != r && y != parent[x as usize] {
                parent[y as usize] = x;
            }
        }
    }
    parent
}

/// Splits the subtrees below `r` into two groups of at most two thirds of
/// the tree each; returns the vertices of each group.
fn split_groups(parent: &[u32], kids: &[u32]) -> [Vec<u32>; 2] {
    let n = parent.len();
    let links: Vec<(u32, u32)> = parent.iter().enumerate().filter(|&(_, &p)| p != NONE).map(|(x, &p)| (p, x as u32)).collect();
    let children = Csr::from_pairs(n, &links);
    let mut owner = vec![NONE; n];
    let mut sizes = vec![0usize; kids.len()];
    let mut stack = Vec::new();
    for (i, &k) in kids.iter().enumerate() {
        stack.push(k);
        while let Some(x) = stack.pop() {
            owner[x as usize] = i as u32;
            sizes[i] += 1;
            stack.extend_from_slice(&children[x as usize]);
        }
    }
    let mut idx: Vec<usize> = (0..kids.len()).collect();
    idx.sort_by_key(|&i| std::cmp::Reverse(sizes[i]));
    let mut side = vec![0u8; kids.len()];
    let mut load = [0usize; 2];
    for i in idx {
        let g = usize::from(load[0] > load[1]);
        side[i] = g as u8;
        load[g] += sizes[i];
    }
    let mut groups: [Vec<u32>; 2] = [Vec::with_capacity(load[0]), Vec::with_capacity(load[1])];
    for (x, &o) in owner.iter().enumerate() {
        if o != NONE {
            groups[side[o as usize] as usize].push(x as u32);
        }
    }
    groups
}

/// Instance on `group` with the centroid and all other vertices of the tree
/// contracted into one new root; `c` stays separate.
fn child_instance(inst: &Instance, parent: &[u32], r: u32, group: &[u32]) -> (Instance, Vec<Vertex>) {
    let n = inst.g.n();
    let a = group.len() as u32;
    let blob = a;
    let mut map = vec![blob; n];
    for (i, &v) in group.iter().enumerate() {
        map[v as usize] = i as u32;
    }
    let mut k = a as usize + 1;
    let c = inst.c.map(|c| {
        map[c as usize] = k as u32;
        k += 1;
        (k - 1) as u32
    });
    let g = inst.g.quotient(&map, k);
    let edges: Vec<(u32, u32)> = group
        .iter()
        .map(|&v| {
            let p = parent[v as usize];
            (map[v as usize], if p == r { blob } else { map[p as usize] })
        })
        .collect();
    let adj = Csr::undirected(k, &edges);
    let avoid = inst.avoid.map(|v| map[v as usize]);
    let from_top = inst.from_top.as_ref().map(|ft| ft.iter().map(|&v| map[v as usize]).collect());
    (Instance { g, adj, c, avoid, from_top }, map)
}

/// One sampled spider before its graph is built.
struct SpiderShape {
    map: Vec<Vertex>,
    k: usize,
    branches: Vec<Vec<Vertex>>,
    c: Option<Vertex>,
}

/// Samples spiders of the tree rooted at `r` (links in `parent`). Identical
/// samples are returned once.
fn spider_sample_parent(parent: &[u32], r: u32, c: Option<u32>, trials: usize, seed: u64) -> Vec<SpiderShape> {
    let n = parent.len();
    let hld = Hld::new(parent, r);
    let mut bfs = Vec::with_capacity(n);
    {
        bfs.push(r);
        let mut i = 0;
        while i < bfs.len() {
            let x = bfs[i];
            i += 1;
            bfs.extend_from_slice(&hld.children[x as usize]);
        }
    }
    let is_spider = bfs.iter().all(|&x| x == r || hld.children[x as usize].len() <= 1);
    let heads: Vec<u32> = bfs.iter().copied().filter(|&x| hld.head[x as usize] == x).collect();
    let mut head_idx = vec![NONE; n];
    for (i, &h) in heads.iter().enumerate() {
        head_idx[h as usize] = i as u32;
    }
    let mut light = vec![0u32; n];
    for &x in bfs.iter().skip(1) {
        let p = parent[x as usize];
        light[x as usize] = light[p as usize] + u32::from(hld.head[x as usize] == x);
    }
    let l = bfs.iter().map(|&x| light[x as usize]).max().unwrap_or(0);
    let q = 1.0 / (l as f64 + 1.0);

    let mut out = Vec::new();
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut r_gen = rng(seed);
    let rounds = if is_spider { 1 } else { trials };
    for _ in 0..rounds {
        let sampled: Vec<bool> = if is_spider { vec![true; heads.len()] } else { heads.iter().map(|_| r_gen.gen_bool(q)).collect() };
        // any sampled path through a proper ancestor other than r
        let mut above = vec![false; n];
        let mut kept_head = vec![false; heads.len()];
        for &x in &bfs {
            let h = hld.head[x as usize];
            let hs = sampled[head_idx[h as usize] as usize];
            if x == r {
                kept_head[head_idx[r as usize] as usize] = hs;
                continue;
            }
            let p = parent[x as usize];
            if h == x {
                kept_head[head_idx[x as usize] as usize] = hs && !above[p as usize];
            }
            above[x as usize] = above[p as usize] || hs;
        }
        if !seen.insert(kept_head.clone()) {
            continue;
        }
        let mut map = vec![0u32; n];
        let mut next = 1u32;
        let mut kept = vec![false; n];
        for &x in &bfs {
            if x == r {
                continue;
            }
            if kept_head[head_idx[hld.head[x as usize] as usize] as usize] {
                kept[x as usize] = true;
                map[x as usize] = next;
                next += 1;
            } else {
                map[x as usize] = map[parent[x as usize] as usize];
            }
        }
        let mut branches = Vec::new();
        for &h in &heads {
            if !kept_head[head_idx[h as usize] as usize] {
                continue;
            }
            let mut path = Vec::new();
            let mut x = if h == r { hld.heavy[r as usize] } else { h };
            while x != NONE {
                path.push(map[x as usize]);
                x = hld.heavy[x as usize];
            }
            if !path.is_empty() {
                path.reverse();
                branches.push(path);
            }
        }
        let mut k = next as usize;
        let sc = c.map(|c| {
            map[c as usize] = k as u32;
            k += 1;
            (k - 1) as u32
        });
        out.push(SpiderShape { map, k, branches, c: sc });
    }
    out
}

/// Spider samples of `tree` rooted at `tree.root` over the graph `g`.
pub fn spider_sample(g: &WeightedGraph, tree: &RootedTree, trials: usize, seed: u64) -> Vec<SpiderInstance> {
    let parent: Vec<u32> = tree.parent.iter().map(|p| p.unwrap_or(NONE)).collect();
    spider_sample_parent(&parent, tree.root, tree.unspanned(), trials, seed)
        .into_iter()
        .map(|s| SpiderInstance { spider: Spider::new(g.quotient(&s.map, s.k), 0, s.branches, s.c), map: s.map })
        .collect()
}

/// The centroid of the tree and the two groups of its child subtrees.
pub fn centroid_split(tree: &RootedTree) -> (Vertex, [Vec<Vertex>; 2]) {
    let adj = tree.adjacency();
    let r = find_centroid(&adj, tree.root);
    let parent = root_at(&adj, r);
    let kids = adj[r as usize].to_vec();
    (r, split_groups(&parent, &kids))
}
