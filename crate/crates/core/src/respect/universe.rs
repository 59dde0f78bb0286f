//! Universes 1 to 3 on a spider: single subtrees, complements of single
//! subtrees, and unions of two subtrees on different branches.

use super::spider::{chains_to_tree, Prep, Spider};
use crate::graph::Vertex;
use crate::hld::NONE;
use crate::laminar::LaminarTree;
use crate::segtree::{Fenwick, MinAddTree};

pub const INF: i64 = 1 << 61;

/// All subtrees `v↓`.
pub fn universe1(sp: &Spider) -> LaminarTree {
    chains_to_tree(sp.n(), &universe1_chains(sp))
}

pub(crate) fn universe1_chains(sp: &Spider) -> Vec<Vec<Vec<Vertex>>> {
    sp.branches.iter().map(|br| br.iter().map(|&v| vec![v]).collect()).collect()
}

/// The chain of complements of `u↓` along the branch of the cheapest subtree
/// or subtree complement.
pub fn universe2(sp: &Spider) -> LaminarTree {
    chains_to_tree(sp.n(), &universe2_chains(sp, &Prep::new(sp)))
}

pub(crate) fn universe2_chains(sp: &Spider, prep: &Prep) -> Vec<Vec<Vec<Vertex>>> {
    let mut best: Option<(i64, Vertex)> = None;
    for br in &sp.branches {
        for &v in br {
            let val = prep.sub[v as usize].min(prep.comp(v));
            if best.is_none_or(|(b, _)| val < b) {
                best = Some((val, v));
            }
        }
    }
    let Some((_, u1)) = best else {
        return Vec::new();
    };
    let br = &sp.branches[sp.branch_of[u1 as usize] as usize];
    let len = br.len();
    let first: Vec<Vertex> = (0..sp.n() as Vertex)
        .filter(|&v| Some(v) != sp.c && !(sp.branch_of[v as usize] == sp.branch_of[u1 as usize] && v != sp.root))
        .collect();
    let mut chain = vec![first];
    for t in 1..len {
        chain.push(vec![br[len - t]]);
    }
    vec![chain]
}

/// Lowest partners `p(u)` and, where computed, optimal partners `opt(u)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartnerTable {
    pub p: Vec<Option<Vertex>>,
    pub opt: Vec<Option<Vertex>>,
}

/// For every branch vertex u, the deepest v on another branch with
/// `2 w(u↓, v↓) > cut(u↓)`.
pub fn lowest_partners(sp: &Spider) -> PartnerTable {
    lowest_partners_with(sp, &Prep::new(sp))
}

pub(crate) fn lowest_partners_with(sp: &Spider, prep: &Prep) -> PartnerTable {
    let n = sp.n();
    let mut p = vec![None; n];
    let mut fen = Fenwick::new(sp.total_len());
    let mut tot = vec![0i64; sp.branches.len()];
    let mut undo: Vec<(usize, i64)> = Vec::new();
    for (b, br) in sp.branches.iter().enumerate() {
        let mut best: Option<usize> = None;
        for &u in br {
            for &(y, w) in sp.g.neighbors(u) {
                let yb = sp.branch_of[y as usize];
                if yb == NONE || yb as usize == b {
                    continue;
                }
                let gp = sp.global_pos(y);
                fen.add(gp, w as i64);
                undo.push((gp, w as i64));
                tot[yb as usize] += w as i64;
                if best.is_none_or(|bb| tot[yb as usize] > tot[bb]) {
                    best = Some(yb as usize);
                }
            }
            let s = prep.sub[u as usize];
            if let Some(bb) = best {
                if 2 * tot[bb] > s {
                    let base = fen.prefix(sp.offset[bb]);
                    let gp = fen.lower_bound(base + s / 2 + 1).expect("branch total exceeds the target");
                    let v = sp.branches[bb][gp - sp.offset[bb]];
                    debug_assert_eq!(sp.branch_of[v as usize] as usize, bb);
                    p[u as usize] = Some(v);
                }
            }
        }
        for (gp, w) in undo.drain(..) {
            fen.add(gp, -w);
        }
        tot.iter_mut().for_each(|t| *t = 0);
    }
    PartnerTable { p, opt: vec![None; n] }
}

/// `weak[u] = min over w strictly below u of cut(u↓ \ w↓)` and `b[u]` its
/// minimum over `u↓`; both are [`INF`] where undefined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BottleneckTable {
    pub weak: Vec<i64>,
    pub b: Vec<i64>,
}

pub fn bottlenecks(sp: &Spider) -> BottleneckTable {
    bottlenecks_with(sp, &Prep::new(sp))
}

pub(crate) fn bottlenecks_with(sp: &Spider, prep: &Prep) -> BottleneckTable {
    let n = sp.n();
    let mut weak = vec![INF; n];
    let mut b = vec![INF; n];
    for (bi, br) in sp.branches.iter().enumerate() {
        let init: Vec<i64> = br.iter().map(|&w| -prep.sub[w as usize]).collect();
        let mut seg = MinAddTree::new(&init);
        let mut run = INF;
        for (i, &u) in br.iter().enumerate() {
            for &(y, w) in sp.g.neighbors(u) {
                if sp.branch_of[y as usize] as usize == bi && (sp.pos[y as usize] as usize) < i {
                    seg.add(sp.pos[y as usize] as usize, i, 2 * w as i64);
                }
            }
            if let Some((m, _)) = seg.min(0, i) {
                weak[u as usize] = m + prep.sub[u as usize];
            }
            run = run.min(weak[u as usize]);
            b[u as usize] = run;
        }
    }
    BottleneckTable { weak, b }
}

/// Branch pairs `(B, B')` with `f(B) = B'` and `f(B') = B`, where `f(B)` is the
/// branch of the partner of B's lowest vertex that has one.
pub(crate) fn paired_branches(sp: &Spider, p: &[Option<Vertex>]) -> Vec<(usize, usize)> {
    let f: Vec<Option<usize>> =
        sp.branches.iter().map(|br| br.iter().find_map(|&u| p[u as usize]).map(|v| sp.branch_of[v as usize] as usize)).collect();
    let mut out = Vec::new();
    for (b, fb) in f.iter().enumerate() {
        if let Some(b2) = *fb {
            if b < b2 && f[b2] == Some(b) {
                out.push((b, b2));
            }
        }
    }
    out
}

/// Pairs `(i, j)` of positions on `xb` and `yb` such that
/// `cut(x↓ ∪ y↓) < b(x)` and `b(y) >= b(x)` (or `>` when `strict`).
fn extract(sp: &Spider, prep: &Prep, bt: &BottleneckTable, xb: usize, yb: usize, strict: bool, out: &mut Vec<(usize, usize)>) {
    let xs = &sp.branches[xb];
    let ys = &sp.branches[yb];
    let init: Vec<i64> = ys.iter().map(|&v| prep.sub[v as usize]).collect();
    let mut seg = MinAddTree::new(&init);
    let len = ys.len();
    let mut bumped = Vec::new();
    for (i, &x) in xs.iter().enumerate() {
        for &(y, w) in sp.g.neighbors(x) {
            if sp.branch_of[y as usize] as usize == yb {
                seg.add(sp.pos[y as usize] as usize, len, -2 * w as i64);
            }
        }
        let bx = bt.b[x as usize];
        let t = ys.partition_point(|&v| if strict { bt.b[v as usize] > bx } else { bt.b[v as usize] >= bx });
        let thr = bx - prep.sub[x as usize];
        while let Some((val, j)) = seg.min(0, t) {
            if val >= thr {
                break;
            }
            out.push((i, j));
            seg.add(j, j + 1, INF);
            bumped.push(j);
        }
        for j in bumped.drain(..) {
            seg.add(j, j + 1, -INF);
        }
    }
}

/// Chain of two-subtree sets `B[..=i] ∪ B'[..=j]`, smallest first.
pub(crate) fn pair_chain(sp: &Spider, b1: usize, b2: usize, mut pairs: Vec<(usize, usize)>) -> Vec<Vec<Vertex>> {
    pairs.sort_unstable();
    pairs.dedup();
    let (xs, ys) = (&sp.branches[b1], &sp.branches[b2]);
    let mut chain = Vec::with_capacity(pairs.len());
    let (mut pi, mut pj) = (0usize, 0usize);
    for &(i, j) in &pairs {
        assert!(j + 1 >= pj, "two-subtree family is not laminar");
        let mut add: Vec<Vertex> = xs[pi..=i].to_vec();
        add.extend_from_slice(&ys[pj.min(j + 1)..=j]);
        chain.push(add);
        pi = i + 1;
        pj = j + 1;
    }
    chain
}

/// Sets `u↓ ∪ v↓` over paired branches with `cut < min(b(u), b(v))`.
pub fn universe3(sp: &Spider) -> LaminarTree {
    let prep = Prep::new(sp);
    chains_to_tree(sp.n(), &universe3_chains(sp, &prep))
}

pub(crate) fn universe3_chains(sp: &Spider, prep: &Prep) -> Vec<Vec<Vec<Vertex>>> {
    let p = lowest_partners_with(sp, prep).p;
    let bt = bottlenecks_with(sp, prep);
    universe3_chains_with(sp, prep, &p, &bt)
}

pub(crate) fn universe3_chains_with(sp: &Spider, prep: &Prep, p: &[Option<Vertex>], bt: &BottleneckTable) -> Vec<Vec<Vec<Vertex>>> {
    let mut chains = Vec::new();
    for (b1, b2) in paired_branches(sp, p) {
        let mut pairs = Vec::new();
        extract(sp, prep, bt, b1, b2, false, &mut pairs);
        let mut swapped = Vec::new();
        extract(sp, prep, bt, b2, b1, true, &mut swapped);
        pairs.extend(swapped.into_iter().map(|(j, i)| (i, j)));
        if !pairs.is_empty() {
            chains.push(pair_chain(sp, b1, b2, pairs));
        }
    }
    chains
}
