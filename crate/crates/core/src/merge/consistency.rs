use crate::graph::{Vertex, WeightedGraph};
use crate::hld::{Hld, NONE};
use crate::laminar::LaminarTree;
use crate::segtree::MinAddTree;

const BIG: i64 = 1 << 61;

/// Values `cut(U \ W) - cut(U)` for every node W of a fixed tree while a set U
/// grows one vertex at a time. Nodes not meeting U carry a large offset so one
/// range-minimum answers the flagged-minimum query.
pub struct ConsistencyState<'a> {
    g: &'a WeightedGraph,
    y: &'a LaminarTree,
    hld: Hld,
    seg: MinAddTree,
    flag_len: Vec<u32>,
    log: Vec<(usize, usize, i64)>,
    flag_log: Vec<(u32, u32)>,
    in_u: Vec<bool>,
    members: Vec<Vertex>,
    lca: u32,
    ranges: Vec<(usize, usize)>,
}

impl<'a> ConsistencyState<'a> {
    pub fn new(g: &'a WeightedGraph, y: &'a LaminarTree) -> Self {
        let hld = Hld::new(y.parents(), 0);
        let seg = MinAddTree::new(&vec![BIG; y.node_count()]);
        let mut flag_len = vec![0u32; y.node_count()];
        // the root never counts as flagged
        flag_len[0] = 1;
        ConsistencyState {
            g,
            y,
            hld,
            seg,
            flag_len,
            log: Vec::new(),
            flag_log: Vec::new(),
            in_u: vec![false; g.n()],
            members: Vec::new(),
            lca: NONE,
            ranges: Vec::new(),
        }
    }

    fn path_add(&mut self, from: u32, anc: u32, delta: i64) {
        self.ranges.clear();
        let mut ranges = std::mem::take(&mut self.ranges);
        self.hld.path_ranges(from, anc, false, &mut ranges);
        for &(l, r) in &ranges {
            self.seg.add(l, r, delta);
            self.log.push((l, r, delta));
        }
        self.ranges = ranges;
    }

    fn flag_to_root(&mut self, mut x: u32) {
        loop {
            let h = self.hld.head[x as usize];
            let start = self.hld.pos[h as usize];
            let want = self.hld.pos[x as usize] - start + 1;
            let have = self.flag_len[h as usize];
            if want > have {
                let (l, r) = ((start + have) as usize, (start + want) as usize);
                self.seg.add(l, r, -BIG);
                self.log.push((l, r, -BIG));
                self.flag_log.push((h, have));
                self.flag_len[h as usize] = want;
            }
            if h == 0 {
                break;
            }
            x = self.hld.parent[h as usize];
        }
    }

    pub fn insert(&mut self, u: Vertex) {
        let hu = self.y.home(u);
        let mut inner = 0i64;
        for &(v, w) in self.g.neighbors(u) {
            if self.in_u[v as usize] {
                let hv = self.y.home(v);
                let l = self.hld.lca(hu, hv);
                self.path_add(hv, l, 2 * w as i64);
                inner += w as i64;
            }
        }
        let a = 2 * inner - self.g.degree(u);
        self.path_add(hu, 0, a);
        self.flag_to_root(hu);
        self.in_u[u as usize] = true;
        self.members.push(u);
        self.lca = if self.lca == NONE { hu } else { self.hld.lca(self.lca, hu) };
    }

    /// Minimum of `cut(U \ W) - cut(U)` over nodes W meeting U without containing it.
    pub fn query(&mut self) -> Option<i64> {
        if self.lca == NONE {
            return None;
        }
        self.ranges.clear();
        let mut ranges = std::mem::take(&mut self.ranges);
        self.hld.path_ranges(self.lca, 0, true, &mut ranges);
        ranges.sort_unstable();
        let mut best = i64::MAX;
        let mut at = 0;
        for &(l, r) in &ranges {
            if let Some((m, _)) = self.seg.min(at, l) {
                best = best.min(m);
            }
            at = r;
        }
        if let Some((m, _)) = self.seg.min(at, self.y.node_count()) {
            best = best.min(m);
        }
        self.ranges = ranges;
        (best < BIG / 2).then_some(best)
    }

    /// Current value at node `w` and whether it is flagged.
    pub fn value(&self, w: u32) -> (i64, bool) {
        let raw = self.seg.get(self.hld.pos[w as usize] as usize);
        if raw >= BIG / 2 {
            (raw - BIG, false)
        } else {
            (raw, true)
        }
    }

    /// Empties U and restores the initial values.
    pub fn reset(&mut self) {
        while let Some((l, r, d)) = self.log.pop() {
            self.seg.add(l, r, -d);
        }
        while let Some((h, len)) = self.flag_log.pop() {
            self.flag_len[h as usize] = len;
        }
        for &u in &self.members {
            self.in_u[u as usize] = false;
        }
        self.members.clear();
        self.lca = NONE;
    }
}
