use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

pub type Vertex = u32;

const WEIGHT_LIMIT: u128 = 1 << 60;

/// Undirected graph with positive integer weights. Parallel edges are merged,
/// self-loops and zero-weight edges are dropped at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex, u64)>,
    start: Vec<usize>,
    adj: Vec<(Vertex, u64)>,
    degree: Vec<u64>,
    total: u64,
}

/// Stable sort of edges by a vertex key.
fn counting_sort(n: usize, list: &[(Vertex, Vertex, u64)], key: impl Fn(&(Vertex, Vertex, u64)) -> Vertex) -> Vec<(Vertex, Vertex, u64)> {
    let mut pos = vec![0usize; n + 1];
    for e in list {
        pos[key(e) as usize + 1] += 1;
    }
    for i in 0..n {
        pos[i + 1] += pos[i];
    }
    let mut out = vec![(0, 0, 0); list.len()];
    for e in list {
        let k = key(e) as usize;
        out[pos[k]] = *e;
        pos[k] += 1;
    }
    out
}

impl WeightedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex, u64)>) -> Result<Self> {
        let mut list = Vec::new();
        let mut sum: u128 = 0;
        for (u, v, w) in edges {
            for x in [u, v] {
                if x as usize >= n {
                    return Err(Error::VertexOutOfRange { vertex: x as u64, n });
                }
            }
            sum += w as u128;
            if sum >= WEIGHT_LIMIT {
                return Err(Error::WeightOverflow);
            }
            list.push((u, v, w));
        }
        Ok(Self::from_raw(n, list))
    }

    /// Builds without range or overflow checks. Callers guarantee both.
    pub(crate) fn from_raw(n: usize, mut list: Vec<(Vertex, Vertex, u64)>) -> Self {
        list.retain(|&(u, v, w)| u != v && w > 0);
        for e in list.iter_mut() {
            if e.0 > e.1 {
                std::mem::swap(&mut e.0, &mut e.1);
            }
        }
        if list.len() <= 32 {
            list.sort_unstable_by_key(|&(u, v, _)| (u, v));
        } else {
            list = counting_sort(n, &counting_sort(n, &list, |e| e.1), |e| e.0);
        }
        let mut edges: Vec<(Vertex, Vertex, u64)> = Vec::with_capacity(list.len());
        for (u, v, w) in list {
            match edges.last_mut() {
                Some(last) if last.0 == u && last.1 == v => last.2 += w,
                _ => edges.push((u, v, w)),
            }
        }
        let mut count = vec![0usize; n + 1];
        let mut degree = vec![0u64; n];
        let mut total = 0u64;
        for &(u, v, w) in &edges {
            count[u as usize + 1] += 1;
            count[v as usize + 1] += 1;
            degree[u as usize] += w;
            degree[v as usize] += w;
            total += w;
        }
        for i in 0..n {
            count[i + 1] += count[i];
        }
        let start = count.clone();
        let mut fill = count;
        let mut adj = vec![(0, 0); 2 * edges.len()];
        for &(u, v, w) in &edges {
            adj[fill[u as usize]] = (v, w);
            fill[u as usize] += 1;
            adj[fill[v as usize]] = (u, w);
            fill[v as usize] += 1;
        }
        WeightedGraph { n, edges, start, adj, degree, total }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Merged edges with `u < v`, sorted.
    pub fn edges(&self) -> &[(Vertex, Vertex, u64)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[(Vertex, u64)] {
        &self.adj[self.start[v as usize]..self.start[v as usize + 1]]
    }

    pub fn degree(&self, v: Vertex) -> i64 {
        self.degree[v as usize] as i64
    }

    pub fn total_weight(&self) -> i64 {
        self.total as i64
    }

    pub fn weight(&self, u: Vertex, v: Vertex) -> u64 {
        self.neighbors(u).iter().filter(|&&(x, _)| x == v).map(|&(_, w)| w).sum()
    }

    /// Graph on `target_n` vertices obtained by renaming every vertex through `map`.
    pub fn quotient(&self, map: &[Vertex], target_n: usize) -> WeightedGraph {
        let list = self.edges.iter().map(|&(u, v, w)| (map[u as usize], map[v as usize], w)).collect();
        WeightedGraph::from_raw(target_n, list)
    }

    /// Cut value of the set marked in `mask`, without the proper-subset check.
    pub fn cut_of_mask(&self, mask: &[bool]) -> i64 {
        self.edges.iter().filter(|&&(u, v, _)| mask[u as usize] != mask[v as usize]).map(|&(_, _, w)| w as i64).sum()
    }

    /// Cut value of a bitmask set, for graphs with at most 64 vertices.
    pub fn cut_of_bits(&self, bits: u64) -> i64 {
        self.edges.iter().filter(|&&(u, v, _)| (bits >> u & 1) != (bits >> v & 1)).map(|&(_, _, w)| w as i64).sum()
    }

    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s as Vertex];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                i += 1;
                for &(y, _) in self.neighbors(x) {
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("{} {}\n", self.n, self.edges.len());
        for &(u, v, w) in &self.edges {
            let _ = writeln!(s, "{u} {v} {w}");
        }
        s
    }
}

impl FromStr for WeightedGraph {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut last_line = 0;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            last_line = line_no;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: &str| Error::Parse { line: line_no, msg: msg.to_string() };
            let fields: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if fields.len() != 2 {
                        return Err(err("expected header `n m`"));
                    }
                    let n = fields[0].parse().map_err(|_| err("bad vertex count"))?;
                    let m = fields[1].parse().map_err(|_| err("bad edge count"))?;
                    header = Some((n, m));
                }
                Some((n, m)) => {
                    if edges.len() == m {
                        return Err(err("more edge lines than announced"));
                    }
                    if fields.len() != 3 {
                        return Err(err("expected `u v w`"));
                    }
                    let u: u64 = fields[0].parse().map_err(|_| err("bad vertex"))?;
                    let v: u64 = fields[1].parse().map_err(|_| err("bad vertex"))?;
                    let w: u64 = fields[2].parse().map_err(|_| err("bad weight"))?;
                    if u >= n as u64 || v >= n as u64 {
                        return Err(err("vertex out of range"));
                    }
                    edges.push((u as Vertex, v as Vertex, w));
                }
            }
        }
        let (n, m) = header.ok_or(Error::Parse { line: last_line.max(1), msg: "missing header".into() })?;
        if edges.len() != m {
            return Err(Error::Parse { line: last_line + 1, msg: format!("expected {m} edges, found {}", edges.len()) });
        }
        WeightedGraph::new(n, edges).map_err(|e| Error::Parse { line: last_line, msg: e.to_string() })
    }
}

/// Sorted set of vertices over a fixed universe `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    n: usize,
    members: Vec<Vertex>,
}

impl VertexSet {
    pub fn new(n: usize, members: impl IntoIterator<Item = Vertex>) -> Result<Self> {
        let mut members: Vec<Vertex> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&v| v as usize >= n) {
            return Err(Error::VertexOutOfRange { vertex: bad as u64, n });
        }
        members.sort_unstable();
        members.dedup();
        Ok(VertexSet { n, members })
    }

    pub(crate) fn from_sorted(n: usize, members: Vec<Vertex>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet { n, members }
    }

    pub fn empty(n: usize) -> Self {
        VertexSet { n, members: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        VertexSet { n, members: (0..n as Vertex).collect() }
    }

    pub fn from_bits(n: usize, bits: u64) -> Self {
        VertexSet { n, members: (0..n as Vertex).filter(|&v| bits >> v & 1 == 1).collect() }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        VertexSet { n: mask.len(), members: (0..mask.len()).filter(|&v| mask[v]).map(|v| v as Vertex).collect() }
    }

    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.members.is_empty() && self.members.len() < self.n
    }

    pub fn members(&self) -> &[Vertex] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.members.iter().copied()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn to_mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.n];
        for &v in &self.members {
            mask[v as usize] = true;
        }
        mask
    }

    pub fn to_bits(&self) -> u64 {
        self.members.iter().fold(0, |acc, &v| acc | 1 << v)
    }

    pub fn complement(&self) -> VertexSet {
        let mask = self.to_mask();
        VertexSet { n: self.n, members: (0..self.n).filter(|&v| !mask[v]).map(|v| v as Vertex).collect() }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members.iter().all(|&v| other.contains(v))
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        let (small, large) = if self.len() <= other.len() { (self, other) } else { (other, self) };
        small.members.iter().any(|&v| large.contains(v))
    }

    /// Two sets cross when they intersect and neither contains the other.
    pub fn crosses(&self, other: &VertexSet) -> bool {
        self.intersects(other) && !self.is_subset(other) && !other.is_subset(self)
    }
}

pub fn cut_value(g: &WeightedGraph, x: &VertexSet) -> Result<i64> {
    if x.is_empty() {
        return Err(Error::InvalidSet("empty"));
    }
    if x.len() >= g.n() {
        return Err(Error::InvalidSet("full"));
    }
    Ok(g.cut_of_mask(&x.to_mask()))
}

pub fn cross_weight(g: &WeightedGraph, x: &VertexSet, y: &VertexSet) -> Result<i64> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::InvalidSet("empty"));
    }
    if x.intersects(y) {
        return Err(Error::Overlap);
    }
    let mx = x.to_mask();
    let my = y.to_mask();
    Ok(g.edges()
        .iter()
        .filter(|&&(u, v, _)| (mx[u as usize] && my[v as usize]) || (my[u as usize] && mx[v as usize]))
        .map(|&(_, _, w)| w as i64)
        .sum())
}

/// Renaming of vertices onto a contracted graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionMap {
    pub map: Vec<Vertex>,
    pub target_n: usize,
    pub c: Option<Vertex>,
}

impl ContractionMap {
    pub fn identity(n: usize) -> Self {
        ContractionMap { map: (0..n as Vertex).collect(), target_n: n, c: None }
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.map[v as usize]
    }

    /// Vertices of the original graph that map into `set`.
    pub fn preimage(&self, set: &VertexSet) -> VertexSet {
        let mask = set.to_mask();
        VertexSet::from_sorted(self.map.len(), (0..self.map.len() as Vertex).filter(|&v| mask[self.map[v as usize] as usize]).collect())
    }
}

/// Keeps the vertices of `keep` (renumbered in increasing order) and merges the
/// rest into one vertex `c`, numbered last.
pub fn contract(g: &WeightedGraph, keep: &VertexSet) -> Result<(WeightedGraph, ContractionMap)> {
    if keep.is_empty() {
        return Err(Error::InvalidSet("empty"));
    }
    if keep.len() == g.n() {
        return Ok((g.clone(), ContractionMap::identity(g.n())));
    }
    let k = keep.len() as Vertex;
    let mut map = vec![k; g.n()];
    for (i, v) in keep.iter().enumerate() {
        map[v as usize] = i as Vertex;
    }
    let h = g.quotient(&map, keep.len() + 1);
    Ok((h, ContractionMap { map, target_n: keep.len() + 1, c: Some(k) }))
}

/// For each of the disjoint `classes`, the graph on that class (members
/// renumbered in increasing order) plus one vertex, numbered last, standing
/// for all other vertices. One pass over the edges.
pub fn contract_each(g: &WeightedGraph, classes: &[VertexSet]) -> Result<Vec<WeightedGraph>> {
    let n = g.n();
    let mut class_of = vec![u32::MAX; n];
    let mut idx = vec![0u32; n];
    for (ci, class) in classes.iter().enumerate() {
        if class.universe() != n {
            return Err(Error::InvalidSet("class universe differs from the graph"));
        }
        for (i, v) in class.iter().enumerate() {
            if class_of[v as usize] != u32::MAX {
                return Err(Error::Overlap);
            }
            class_of[v as usize] = ci as u32;
            idx[v as usize] = i as u32;
        }
    }
    let mut lists: Vec<Vec<(Vertex, Vertex, u64)>> = vec![Vec::new(); classes.len()];
    for &(u, v, w) in g.edges() {
        let (cu, cv) = (class_of[u as usize], class_of[v as usize]);
        if cu == cv {
            if cu != u32::MAX {
                lists[cu as usize].push((idx[u as usize], idx[v as usize], w));
            }
            continue;
        }
        if cu != u32::MAX {
            lists[cu as usize].push((idx[u as usize], classes[cu as usize].len() as Vertex, w));
        }
        if cv != u32::MAX {
            lists[cv as usize].push((idx[v as usize], classes[cv as usize].len() as Vertex, w));
        }
    }
    Ok(lists.into_iter().zip(classes).map(|(list, class)| WeightedGraph::from_raw(class.len() + 1, list)).collect())
}
