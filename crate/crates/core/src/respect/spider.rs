use crate::graph::{Vertex, WeightedGraph};
use crate::hld::NONE;
use crate::laminar::LaminarTree;
use crate::threshold::Threshold;

/// A rooted tree made of edge-disjoint root-to-leaf paths, over a local graph.
/// Branches are stored leaf first and exclude the root. An optional vertex `c`
/// is not on the tree.
#[derive(Clone, Debug)]
pub struct Spider {
    pub g: WeightedGraph,
    pub root: Vertex,
    pub branches: Vec<Vec<Vertex>>,
    pub c: Option<Vertex>,
    pub branch_of: Vec<u32>,
    pub pos: Vec<u32>,
    /// Start of every branch in the concatenation of all branches.
    pub offset: Vec<usize>,
}

impl Spider {
    pub fn new(g: WeightedGraph, root: Vertex, branches: Vec<Vec<Vertex>>, c: Option<Vertex>) -> Self {
        let n = g.n();
        let mut branch_of = vec![NONE; n];
        let mut pos = vec![NONE; n];
        let mut offset = Vec::with_capacity(branches.len() + 1);
        let mut at = 0;
        for (b, br) in branches.iter().enumerate() {
            offset.push(at);
            at += br.len();
            for (i, &v) in br.iter().enumerate() {
                assert_eq!(branch_of[v as usize], NONE, "vertex {v} on two branches");
                branch_of[v as usize] = b as u32;
                pos[v as usize] = i as u32;
            }
        }
        offset.push(at);
        let spanned = at + 1 + usize::from(c.is_some());
        assert_eq!(spanned, n, "spider must cover every vertex once");
        Spider { g, root, branches, c, branch_of, pos, offset }
    }

    pub fn n(&self) -> usize {
        self.g.n()
    }

    pub fn total_len(&self) -> usize {
        *self.offset.last().unwrap_or(&0)
    }

    pub fn global_pos(&self, v: Vertex) -> usize {
        self.offset[self.branch_of[v as usize] as usize] + self.pos[v as usize] as usize
    }

    pub fn on_branch(&self, v: Vertex) -> bool {
        self.branch_of[v as usize] != NONE
    }

    /// Parent of every vertex (`NONE` for the root and `c`).
    pub fn parent_array(&self) -> Vec<u32> {
        let mut parent = vec![NONE; self.n()];
        for br in &self.branches {
            for (i, &v) in br.iter().enumerate() {
                parent[v as usize] = br.get(i + 1).copied().unwrap_or(self.root);
            }
        }
        parent
    }
}

/// Per-vertex subtree quantities: `sub[v] = cut(v↓)` and `wc[v] = w(c, v↓)`.
pub(crate) struct Prep {
    pub sub: Vec<i64>,
    pub wc: Vec<i64>,
    pub deg_c: i64,
}

impl Prep {
    pub fn new(sp: &Spider) -> Self {
        let n = sp.n();
        let mut sub = vec![0i64; n];
        let mut wc = vec![0i64; n];
        for br in &sp.branches {
            let mut prev_sub = 0;
            let mut prev_wc = 0;
            for (i, &v) in br.iter().enumerate() {
                let mut below = 0i64;
                let mut to_c = 0i64;
                for &(y, w) in sp.g.neighbors(v) {
                    if sp.branch_of[y as usize] == sp.branch_of[v as usize] && (sp.pos[y as usize] as usize) < i {
                        below += w as i64;
                    }
                    if Some(y) == sp.c {
                        to_c += w as i64;
                    }
                }
                prev_sub += sp.g.degree(v) - 2 * below;
                prev_wc += to_c;
                sub[v as usize] = prev_sub;
                wc[v as usize] = prev_wc;
            }
        }
        let deg_c = sp.c.map_or(0, |c| sp.g.degree(c));
        Prep { sub, wc, deg_c }
    }

    /// Cut of the complement of `v↓` within the tree's span.
    pub fn comp(&self, v: Vertex) -> i64 {
        self.sub[v as usize] + self.deg_c - 2 * self.wc[v as usize]
    }
}

/// Builds a tree from vertex-disjoint chains. Each chain lists the vertices
/// added at each level, smallest set first; vertices in no chain stay at the
/// root.
pub(crate) fn chains_to_tree(n: usize, chains: &[Vec<Vec<Vertex>>]) -> LaminarTree {
    if chains.iter().all(|c| c.is_empty()) {
        return LaminarTree::root_only(n);
    }
    let mut parent = vec![NONE];
    let mut home = vec![0u32; n];
    for chain in chains {
        let base = parent.len() as u32;
        let levels = chain.len() as u32;
        // node base + j holds level levels-1-j, so the largest set comes first
        for j in 0..levels {
            parent.push(if j == 0 { 0 } else { base + j - 1 });
        }
        for (lvl, add) in chain.iter().enumerate() {
            let node = base + levels - 1 - lvl as u32;
            for &v in add {
                home[v as usize] = node;
            }
        }
    }
    LaminarTree::from_parts(n, parent, home, None).expect("chains form a tree")
}

/// Drops chain levels whose set fails `threshold`, folding their vertices
/// into the next kept level. Cuts are accumulated level by level, so the cost
/// is one pass over the edges of the chained vertices.
pub(crate) fn filter_chains(g: &WeightedGraph, chains: Vec<Vec<Vec<Vertex>>>, threshold: Option<Threshold>) -> Vec<Vec<Vec<Vertex>>> {
    let Some(d) = threshold else {
        return chains;
    };
    let mut rank = vec![0u32; g.n()];
    let mut owner = vec![NONE; g.n()];
    let mut out = Vec::with_capacity(chains.len());
    for (ci, chain) in chains.into_iter().enumerate() {
        let mut next = 1u32;
        let mut cut = 0i64;
        let mut kept: Vec<Vec<Vertex>> = Vec::new();
        let mut pending: Vec<Vertex> = Vec::new();
        for add in chain {
            for &v in &add {
                owner[v as usize] = ci as u32;
                rank[v as usize] = next;
                next += 1;
            }
            for &v in &add {
                let inside: i64 = g
                    .neighbors(v)
                    .iter()
                    .filter(|&&(y, _)| owner[y as usize] == ci as u32 && rank[y as usize] < rank[v as usize])
                    .map(|&(_, w)| w as i64)
                    .sum();
                cut += g.degree(v) - 2 * inside;
            }
            pending.extend(add);
            if d.is_weak(cut) {
                kept.push(std::mem::take(&mut pending));
            }
        }
        if !kept.is_empty() {
            out.push(kept);
        }
    }
    out
}
