//! Steiner minimum cuts: a flow-based reference and an exact contraction-based
//! variant for the case of at most one non-terminal vertex.

use std::collections::{BinaryHeap, VecDeque};

use crate::dsu::Dsu;
use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet, WeightedGraph};

struct Dinic {
    head: Vec<usize>,
    to: Vec<u32>,
    cap: Vec<i64>,
    next: Vec<usize>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl Dinic {
    fn new(g: &WeightedGraph) -> Self {
        let n = g.n();
        let mut d = Dinic {
            head: vec![NIL; n],
            to: Vec::with_capacity(2 * g.m()),
            cap: Vec::with_capacity(2 * g.m()),
            next: Vec::with_capacity(2 * g.m()),
            level: vec![0; n],
            iter: vec![0; n],
        };
        for &(u, v, w) in g.edges() {
            d.arc(u, v, w as i64);
            d.arc(v, u, w as i64);
        }
        d
    }

    fn arc(&mut self, u: u32, v: u32, c: i64) {
        self.to.push(v);
        self.cap.push(c);
        self.next.push(self.head[u as usize]);
        self.head[u as usize] = self.to.len() - 1;
    }

    fn bfs(&mut self, s: usize) {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            let mut e = self.head[x];
            while e != NIL {
                let y = self.to[e] as usize;
                if self.cap[e] > 0 && self.level[y] < 0 {
                    self.level[y] = self.level[x] + 1;
                    q.push_back(y);
                }
                e = self.next[e];
            }
        }
    }

    fn dfs(&mut self, x: usize, t: usize, f: i64) -> i64 {
        if x == t {
            return f;
        }
        while self.iter[x] != NIL {
            let e = self.iter[x];
            let y = self.to[e] as usize;
            if self.cap[e] > 0 && self.level[y] == self.level[x] + 1 {
                let got = self.dfs(y, t, f.min(self.cap[e]));
                if got > 0 {
                    self.cap[e] -= got;
                    self.cap[e ^ 1] += got;
                    return got;
                }
            }
            self.iter[x] = self.next[e];
        }
        0
    }

    /// Max flow value and the source side of a minimum cut.
    fn run(mut self, s: usize, t: usize) -> (i64, Vec<bool>) {
        let mut flow = 0;
        loop {
            self.bfs(s);
            if self.level[t] < 0 {
                break;
            }
            self.iter.clone_from(&self.head);
            loop {
                let f = self.dfs(s, t, i64::MAX);
                if f == 0 {
                    break;
                }
                flow += f;
            }
        }
        let side = self.level.iter().map(|&l| l >= 0).collect();
        (flow, side)
    }
}

/// Exact Steiner minimum cut by max flow from the first terminal to every other.
pub fn steiner_mincut(g: &WeightedGraph, terminals: &VertexSet) -> Result<(i64, VertexSet)> {
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    let r = terminals.members()[0] as usize;
    let mut best: Option<(i64, Vec<bool>)> = None;
    for t in terminals.iter().skip(1) {
        let (f, side) = Dinic::new(g).run(r, t as usize);
        if best.as_ref().is_none_or(|b| f < b.0) {
            best = Some((f, side));
        }
    }
    let (value, side) = best.expect("at least one other terminal");
    Ok((value, VertexSet::from_mask(&side)))
}

/// Exact Steiner minimum cut using maximum-adjacency orderings with
/// contraction of provably unseparated pairs. Requires at most one
/// non-terminal; falls back to [`steiner_mincut`] otherwise.
pub fn steiner_mincut_fast(g: &WeightedGraph, terminals: &VertexSet) -> Result<(i64, VertexSet)> {
    if terminals.len() < 2 {
        return Err(Error::TooFewTerminals);
    }
    let n = g.n();
    let outside: Vec<Vertex> = terminals.complement().members().to_vec();
    if outside.len() > 1 {
        return steiner_mincut(g, terminals);
    }
    let total_terms = terminals.len() as u32;
    let is_term = terminals.to_mask();
    let comps = g.components();
    let first = terminals.members()[0];
    if let Some(comp) = comps.iter().find(|c| c.contains(&first)) {
        if comp.iter().filter(|&&v| is_term[v as usize]).count() < terminals.len() {
            return Ok((0, VertexSet::from_sorted(n, comp.clone())));
        }
    }

    let mut node_of: Vec<u32> = (0..n as u32).collect();
    let mut term: Vec<u32> = is_term.iter().map(|&t| t as u32).collect();
    let mut cur = g.clone();
    let mut start = outside.first().copied().unwrap_or(0);
    // (value, node id, index into history) of the best side found so far
    let mut best: Option<(i64, u32, usize)> = None;
    let mut history: Vec<Vec<u32>> = Vec::new();

    loop {
        let k = cur.n();
        for x in 0..k as u32 {
            if term[x as usize] > 0 && term[x as usize] < total_terms {
                let d = cur.degree(x);
                if best.is_none_or(|b| d < b.0) {
                    best = Some((d, x, history.len()));
                }
            }
        }
        let bound = best.map_or(i64::MAX, |b| b.0);
        if k <= 2 || bound == 0 {
            break;
        }
        let mut dsu = Dsu::new(k);
        let mut r = vec![0i64; k];
        let mut visited = vec![false; k];
        let mut heap = BinaryHeap::new();
        let mut order = Vec::with_capacity(k);
        let mut next_unseen = 0usize;
        heap.push((0i64, std::cmp::Reverse(start)));
        while order.len() < k {
            let x = match heap.pop() {
                Some((key, std::cmp::Reverse(x))) => {
                    if visited[x as usize] || key != r[x as usize] {
                        continue;
                    }
                    x
                }
                None => {
                    while visited[next_unseen] {
                        next_unseen += 1;
                    }
                    next_unseen as u32
                }
            };
            visited[x as usize] = true;
            order.push(x);
            for &(y, w) in cur.neighbors(x) {
                if visited[y as usize] {
                    continue;
                }
                r[y as usize] += w as i64;
                heap.push((r[y as usize], std::cmp::Reverse(y)));
                if r[y as usize] >= bound {
                    dsu.union(x, y);
                }
            }
        }
        let s = order[k - 2];
        let t = order[k - 1];
        dsu.union(s, t);

        let mut id = vec![u32::MAX; k];
        let mut fresh = 0u32;
        let mut map = vec![0u32; k];
        for x in 0..k as u32 {
            let root = dsu.find(x) as usize;
            if id[root] == u32::MAX {
                id[root] = fresh;
                fresh += 1;
            }
            map[x as usize] = id[root];
        }
        let mut new_term = vec![0u32; fresh as usize];
        for x in 0..k {
            new_term[map[x] as usize] += term[x];
        }
        term = new_term;
        start = map[start as usize];
        cur = cur.quotient(&map, fresh as usize);
        history.push(map);
    }

    let (value, node, round) = best.expect("some node separates terminals");
    for map in &history[..round] {
        for x in node_of.iter_mut() {
            *x = map[*x as usize];
        }
    }
    let side: Vec<bool> = node_of.iter().map(|&x| x == node).collect();
    Ok((value, VertexSet::from_mask(&side)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn dumbbell_bridge() {
        let g = dumbbell();
        let t = VertexSet::new(6, [1, 4]).unwrap();
        let (v, side) = steiner_mincut(&g, &t).unwrap();
        assert_eq!(v, 1);
        assert_eq!(side.members(), &[0, 1, 2]);
        let (v2, side2) = steiner_mincut_fast(&g, &VertexSet::full(6)).unwrap();
        assert_eq!(v2, 1);
        assert_eq!(crate::graph::cut_value(&g, &side2).unwrap(), 1);
    }

    #[test]
    fn triangle_and_cycle() {
        let k3 = triangle();
        assert_eq!(steiner_mincut(&k3, &VertexSet::full(3)).unwrap().0, 2);
        let c4 = cycle(4);
        let (v, side) = steiner_mincut(&c4, &VertexSet::full(4)).unwrap();
        assert_eq!(v, 2);
        assert_eq!(crate::graph::cut_value(&c4, &side).unwrap(), 2);
    }

    #[test]
    fn too_few_terminals() {
        assert_eq!(steiner_mincut(&triangle(), &VertexSet::new(3, [0]).unwrap()), Err(Error::TooFewTerminals));
    }

    #[test]
    fn fast_variant_agrees_with_flows() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(2..12);
            let mut edges = Vec::new();
            for u in 0..n as u32 {
                for v in u + 1..n as u32 {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v, rng.gen_range(1..6)));
                    }
                }
            }
            let g = WeightedGraph::new(n, edges).unwrap();
            let terminals = if rng.gen_bool(0.5) && n > 2 { VertexSet::new(n, 0..n as u32 - 1).unwrap() } else { VertexSet::full(n) };
            let (a, _) = steiner_mincut(&g, &terminals).unwrap();
            let (b, side) = steiner_mincut_fast(&g, &terminals).unwrap();
            assert_eq!(a, b);
            assert_eq!(g.cut_of_mask(&side.to_mask()), b);
            assert!(side.iter().any(|v| terminals.contains(v)));
            assert!(terminals.iter().any(|v| !side.contains(v)));
        }
    }
}
