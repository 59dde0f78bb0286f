//! Heavy-light decomposition of a rooted tree given by parent links.

use std::ops::Index;

pub const NONE: u32 = u32::MAX;

/// Adjacency lists packed into one array; `csr[x]` lists the neighbours of x.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Csr {
    start: Vec<u32>,
    list: Vec<u32>,
}

impl Csr {
    /// Lists for `k` nodes holding `b` after `a` for every pair `(a, b)`.
    pub fn from_pairs(k: usize, pairs: &[(u32, u32)]) -> Self {
        let mut start = vec![0u32; k + 1];
        for &(a, _) in pairs {
            start[a as usize + 1] += 1;
        }
        for i in 0..k {
            start[i + 1] += start[i];
        }
        let mut fill = start.clone();
        let mut list = vec![0u32; pairs.len()];
        for &(a, b) in pairs {
            list[fill[a as usize] as usize] = b;
            fill[a as usize] += 1;
        }
        Csr { start, list }
    }

    /// Both directions of every edge.
    pub fn undirected(k: usize, edges: &[(u32, u32)]) -> Self {
        let pairs: Vec<(u32, u32)> = edges.iter().flat_map(|&(a, b)| [(a, b), (b, a)]).collect();
        Self::from_pairs(k, &pairs)
    }

    pub fn len(&self) -> usize {
        self.start.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

impl Index<usize> for Csr {
    type Output = [u32];

    fn index(&self, x: usize) -> &[u32] {
        &self.list[self.start[x] as usize..self.start[x + 1] as usize]
    }
}

#[derive(Clone, Debug)]
pub struct Hld {
    pub parent: Vec<u32>,
    pub depth: Vec<u32>,
    pub head: Vec<u32>,
    pub pos: Vec<u32>,
    pub heavy: Vec<u32>,
    pub size: Vec<u32>,
    /// Node at each position.
    pub order: Vec<u32>,
    pub children: Csr,
}

impl Hld {
    /// `parent[root] == NONE`; nodes not reachable from `root` get no position.
    pub fn new(parent: &[u32], root: u32) -> Self {
        let k = parent.len();
        let links: Vec<(u32, u32)> = parent.iter().enumerate().filter(|&(_, &p)| p != NONE).map(|(x, &p)| (p, x as u32)).collect();
        let children = Csr::from_pairs(k, &links);
        let mut bfs = vec![root];
        let mut depth = vec![0u32; k];
        let mut i = 0;
        while i < bfs.len() {
            let x = bfs[i];
            i += 1;
            for &c in &children[x as usize] {
                depth[c as usize] = depth[x as usize] + 1;
                bfs.push(c);
            }
        }
        let mut size = vec![1u32; k];
        let mut heavy = vec![NONE; k];
        for &x in bfs.iter().rev() {
            let mut best = 0;
            for &c in &children[x as usize] {
                size[x as usize] += size[c as usize];
                if size[c as usize] > best {
                    best = size[c as usize];
                    heavy[x as usize] = c;
                }
            }
        }
        let mut head = vec![NONE; k];
        let mut pos = vec![NONE; k];
        let mut order = Vec::with_capacity(bfs.len());
        let mut stack = vec![root];
        head[root as usize] = root;
        while let Some(top) = stack.pop() {
            let mut x = top;
            loop {
                pos[x as usize] = order.len() as u32;
                order.push(x);
                for &c in &children[x as usize] {
                    if c != heavy[x as usize] {
                        head[c as usize] = c;
                        stack.push(c);
                    }
                }
                let h = heavy[x as usize];
                if h == NONE {
                    break;
                }
                head[h as usize] = head[x as usize];
                x = h;
            }
        }
        Hld { parent: parent.to_vec(), depth, head, pos, heavy, size, order, children }
    }

    pub fn lca(&self, mut a: u32, mut b: u32) -> u32 {
        while self.head[a as usize] != self.head[b as usize] {
            let (ha, hb) = (self.head[a as usize], self.head[b as usize]);
            if self.depth[ha as usize] > self.depth[hb as usize] {
                a = self.parent[ha as usize];
            } else {
                b = self.parent[hb as usize];
            }
        }
        if self.depth[a as usize] < self.depth[b as usize] {
            a
        } else {
            b
        }
    }

    /// Position ranges `[l, r)` covering the path from `x` up to its ancestor
    /// `anc`, with `anc` itself included only when `include_anc`.
    pub fn path_ranges(&self, mut x: u32, anc: u32, include_anc: bool, out: &mut Vec<(usize, usize)>) {
        while self.head[x as usize] != self.head[anc as usize] {
            let h = self.head[x as usize];
            out.push((self.pos[h as usize] as usize, self.pos[x as usize] as usize + 1));
            x = self.parent[h as usize];
        }
        let lo = self.pos[anc as usize] as usize + usize::from(!include_anc);
        let hi = self.pos[x as usize] as usize + 1;
        if lo < hi {
            out.push((lo, hi));
        }
    }

    /// Number of light edges on the path from `x` to the root.
    pub fn light_depth(&self, mut x: u32) -> u32 {
        let mut d = 0;
        loop {
            let h = self.head[x as usize];
            let p = self.parent[h as usize];
            if p == NONE {
                return d;
            }
            d += 1;
            x = p;
        }
    }
}
