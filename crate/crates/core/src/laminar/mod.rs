//! Rooted-tree representation of laminar families.
//!
//! Node 0 is the root and stands for the whole vertex set. Every vertex is
//! associated with the smallest node containing it; a node's set is the union
//! of the associated vertices in its subtree. Nodes are kept in DFS preorder,
//! so a parent always has a smaller id than its children.

mod attach;
mod bough;
mod cuts;
mod prune;
mod text;

pub use attach::{attach_local_results, attach_recursive_results};
pub use bough::{bough_decompose, Bough};
pub use cuts::all_cut_values;
pub use prune::prune_non_extreme;

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet};

pub const NONE: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaminarTree {
    n: usize,
    parent: Vec<u32>,
    children: Vec<Vec<u32>>,
    assoc: Vec<Vec<Vertex>>,
    home: Vec<u32>,
    cut: Vec<Option<i64>>,
}

impl LaminarTree {
    pub fn root_only(n: usize) -> Self {
        LaminarTree {
            n,
            parent: vec![NONE],
            children: vec![Vec::new()],
            assoc: vec![(0..n as Vertex).collect()],
            home: vec![0; n],
            cut: vec![Some(0)],
        }
    }

    /// Builds a tree from raw parent links (node 0 must be the root) and the
    /// home node of every vertex. Empty and duplicate nodes are dropped and the
    /// result is renumbered canonically.
    pub fn from_parts(n: usize, parent: Vec<u32>, home: Vec<u32>, cut: Option<Vec<Option<i64>>>) -> Result<Self> {
        let k = parent.len();
        if k == 0 || parent[0] != NONE {
            return Err(Error::MalformedTree("node 0 must be the root".into()));
        }
        if home.len() != n {
            return Err(Error::MalformedTree("home array length differs from vertex count".into()));
        }
        let cut = cut.unwrap_or_else(|| vec![None; k]);
        if cut.len() != k {
            return Err(Error::MalformedTree("cut array length differs from node count".into()));
        }
        canonical(n, &parent, &home, &cut, None)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// Number of non-root nodes, i.e. family members.
    pub fn family_size(&self) -> usize {
        self.parent.len() - 1
    }

    pub fn parent(&self, x: u32) -> Option<u32> {
        let p = self.parent[x as usize];
        (p != NONE).then_some(p)
    }

    pub fn parents(&self) -> &[u32] {
        &self.parent
    }

    pub fn children(&self, x: u32) -> &[u32] {
        &self.children[x as usize]
    }

    pub fn assoc(&self, x: u32) -> &[Vertex] {
        &self.assoc[x as usize]
    }

    pub fn home(&self, v: Vertex) -> u32 {
        self.home[v as usize]
    }

    pub fn homes(&self) -> &[u32] {
        &self.home
    }

    pub fn cut(&self, x: u32) -> Option<i64> {
        self.cut[x as usize]
    }

    pub fn cuts(&self) -> &[Option<i64>] {
        &self.cut
    }

    pub fn set_cuts(&mut self, cuts: Vec<i64>) {
        assert_eq!(cuts.len(), self.node_count());
        self.cut = cuts.into_iter().map(Some).collect();
    }

    /// Vertex count of every node's set.
    pub fn sizes(&self) -> Vec<usize> {
        let mut size: Vec<usize> = self.assoc.iter().map(|a| a.len()).collect();
        for x in (1..self.node_count()).rev() {
            size[self.parent[x] as usize] += size[x];
        }
        size
    }

    /// Keeps the marked nodes (the root always survives). Vertices of dropped
    /// nodes move to the nearest kept ancestor. The result is renumbered in
    /// canonical DFS order: children sorted by smallest member.
    pub fn retain(&self, keep: &[bool]) -> LaminarTree {
        self.rebuild(keep)
    }

    fn rebuild(&self, keep: &[bool]) -> LaminarTree {
        canonical(self.n, &self.parent, &self.home, &self.cut, Some(keep)).expect("a valid tree stays valid")
    }

    /// Members of node `x`.
    pub fn node_set(&self, x: u32) -> VertexSet {
        let mut members = Vec::new();
        let mut stack = vec![x];
        while let Some(y) = stack.pop() {
            members.extend_from_slice(&self.assoc[y as usize]);
            stack.extend_from_slice(&self.children[y as usize]);
        }
        members.sort_unstable();
        VertexSet::from_sorted(self.n, members)
    }

    /// All family members (non-root node sets), in node order.
    pub fn sets(&self) -> Vec<VertexSet> {
        (1..self.node_count() as u32).map(|x| self.node_set(x)).collect()
    }

    /// Family members sorted, for set comparisons.
    pub fn family(&self) -> Vec<VertexSet> {
        let mut s = self.sets();
        s.sort();
        s
    }

    /// Whether `v` lies in the set of node `x`.
    pub fn node_contains(&self, x: u32, v: Vertex) -> bool {
        let mut y = self.home[v as usize];
        loop {
            if y == x {
                return true;
            }
            if y == 0 {
                return false;
            }
            y = self.parent[y as usize];
        }
    }

    /// The same family over a larger universe: vertex `v` of the result takes
    /// the role of `map[v]` in `self`.
    pub fn lift(&self, map: &[Vertex]) -> LaminarTree {
        let home: Vec<u32> = map.iter().map(|&x| self.home[x as usize]).collect();
        LaminarTree::from_parts(map.len(), self.parent.clone(), home, Some(self.cut.clone())).expect("lifting preserves the tree shape")
    }

    /// The family restricted to vertices `0..n` (sets are intersected, empty and
    /// duplicate results dropped). Cut values are discarded.
    pub fn restrict_prefix(&self, n: usize) -> LaminarTree {
        LaminarTree::from_parts(n, self.parent.clone(), self.home[..n].to_vec(), None).expect("restriction keeps the shape")
    }
}

/// Builds the tree of a laminar family; members equal to V or duplicates are
/// merged. Non-laminar input yields a crossing pair.
pub fn build_tree(family: &[VertexSet], n: usize) -> Result<LaminarTree> {
    for s in family {
        if s.universe() != n {
            return Err(Error::InvalidSet("universe mismatch"));
        }
    }
    let mut order: Vec<usize> = (0..family.len()).filter(|&i| !family[i].is_empty()).collect();
    order.sort_by(|&a, &b| family[b].len().cmp(&family[a].len()).then_with(|| family[a].cmp(&family[b])));
    let mut parent = vec![NONE];
    let mut size = vec![n];
    let mut source: Vec<Option<usize>> = vec![None];
    let mut home = vec![0u32; n];
    for &i in &order {
        let x = &family[i];
        let h = home[x.members()[0] as usize];
        if let Some(v) = x.iter().find(|&v| home[v as usize] != h) {
            let other = home[v as usize];
            let pick = |node: u32| -> Option<VertexSet> { source[node as usize].map(|j| family[j].clone()).filter(|s| !x.is_subset(s)) };
            let witness = pick(h).or_else(|| pick(other)).expect("one of the homes crosses the set");
            return Err(Error::NotLaminar { a: witness.members().to_vec(), b: x.members().to_vec() });
        }
        if size[h as usize] == x.len() {
            continue;
        }
        let id = parent.len() as u32;
        parent.push(h);
        size.push(x.len());
        source.push(Some(i));
        for v in x.iter() {
            home[v as usize] = id;
        }
    }
    LaminarTree::from_parts(n, parent, home, None)
}

/// Renumbers a tree in canonical DFS order (children sorted by smallest
/// member). Nodes not in `keep` are dropped and their vertices move to the
/// nearest kept ancestor; without `keep`, empty nodes and nodes equal to their
/// parent are dropped.
fn canonical(n: usize, parent: &[u32], home: &[u32], cut: &[Option<i64>], keep: Option<&[bool]>) -> Result<LaminarTree> {
    let k = parent.len();
    let mut start = vec![0usize; k + 1];
    for (x, &p) in parent.iter().enumerate().skip(1) {
        if p == NONE || p as usize >= k {
            return Err(Error::MalformedTree(format!("node {x} has invalid parent")));
        }
        start[p as usize + 1] += 1;
    }
    for x in 0..k {
        start[x + 1] += start[x];
    }
    let mut fill = start.clone();
    let mut kids = vec![0u32; k.saturating_sub(1)];
    for (x, &p) in parent.iter().enumerate().skip(1) {
        kids[fill[p as usize]] = x as u32;
        fill[p as usize] += 1;
    }
    // reachability from the root also rules out cycles
    let mut order = Vec::with_capacity(k);
    let mut stack = vec![0u32];
    while let Some(x) = stack.pop() {
        order.push(x);
        stack.extend_from_slice(&kids[start[x as usize]..start[x as usize + 1]]);
    }
    if order.len() != k {
        return Err(Error::MalformedTree("parent links do not form a tree".into()));
    }
    let mut size = vec![0usize; k];
    for (v, &h) in home.iter().enumerate() {
        if h as usize >= k {
            return Err(Error::MalformedTree(format!("vertex {v} has invalid home")));
        }
        size[h as usize] += 1;
    }
    for &x in order.iter().rev().filter(|&&x| x != 0) {
        size[parent[x as usize] as usize] += size[x as usize];
    }
    let kept = |x: usize| match keep {
        Some(keep) => x == 0 || keep[x],
        None => x == 0 || (size[x] > 0 && size[x] < size[parent[x] as usize]),
    };
    let mut up = vec![0u32; k];
    for &x in &order {
        up[x as usize] = if kept(x as usize) { x } else { up[parent[x as usize] as usize] };
    }
    let mut low = vec![u32::MAX; k];
    for (v, &h) in home.iter().enumerate().rev() {
        low[up[h as usize] as usize] = v as u32;
    }
    let mut entries: Vec<(u32, u32, u32)> = Vec::new();
    for &x in order.iter().rev() {
        if x != 0 && kept(x as usize) {
            let p = up[parent[x as usize] as usize];
            low[p as usize] = low[p as usize].min(low[x as usize]);
            entries.push((p, low[x as usize], x));
        }
    }
    entries.reverse();
    entries.sort_unstable_by_key(|&(p, l, _)| (p, l));
    let mut kstart = vec![0usize; k + 1];
    for &(p, _, _) in &entries {
        kstart[p as usize + 1] += 1;
    }
    for x in 0..k {
        kstart[x + 1] += kstart[x];
    }
    let mut new_id = vec![NONE; k];
    let mut out_parent = Vec::new();
    let mut out_cut = Vec::new();
    let mut stack = vec![(0u32, NONE)];
    while let Some((x, p)) = stack.pop() {
        let id = out_parent.len() as u32;
        new_id[x as usize] = id;
        out_parent.push(p);
        out_cut.push(cut[x as usize]);
        for &(_, _, c) in entries[kstart[x as usize]..kstart[x as usize + 1]].iter().rev() {
            stack.push((c, id));
        }
    }
    let count = out_parent.len();
    let mut children = vec![Vec::new(); count];
    for x in 1..count {
        children[out_parent[x] as usize].push(x as u32);
    }
    let out_home: Vec<u32> = home.iter().map(|&h| new_id[up[h as usize] as usize]).collect();
    let mut fill = vec![0usize; count];
    for &x in &out_home {
        fill[x as usize] += 1;
    }
    let mut assoc: Vec<Vec<Vertex>> = fill.iter().map(|&c| Vec::with_capacity(c)).collect();
    for (v, &x) in out_home.iter().enumerate() {
        assoc[x as usize].push(v as Vertex);
    }
    Ok(LaminarTree { n, parent: out_parent, children, assoc, home: out_home, cut: out_cut })
}
