//! Universe 4: complements of two subtrees on different branches, found by
//! fixing a main branch and a second branch and reducing to a two-branch
//! spider where the sets become unions of subtrees.

use super::spider::{chains_to_tree, filter_chains, Prep, Spider};
use super::universe::{universe1_chains, universe3_chains};
use crate::graph::Vertex;
use crate::laminar::LaminarTree;
use crate::merge::merge_lazy;
use crate::segtree::MinAddTree;
use crate::threshold::Threshold;

/// Range-add min tree over the concatenated branches, with an undo log.
struct Sweep {
    seg: MinAddTree,
    log: Vec<(usize, usize, i64)>,
}

impl Sweep {
    fn new(init: &[i64]) -> Self {
        Sweep { seg: MinAddTree::new(init), log: Vec::new() }
    }

    fn add(&mut self, l: usize, r: usize, d: i64) {
        self.seg.add(l, r, d);
        self.log.push((l, r, d));
    }

    fn undo(&mut self) {
        while let Some((l, r, d)) = self.log.pop() {
            self.seg.add(l, r, -d);
        }
    }

    /// Minimum outside `[l, r)`.
    fn min_outside(&mut self, l: usize, r: usize, total: usize) -> Option<(i64, usize)> {
        match (self.seg.min(0, l), self.seg.min(r, total)) {
            (Some(a), Some(b)) => Some(if b.0 < a.0 { b } else { a }),
            (a, b) => a.or(b),
        }
    }
}

/// Adds the edges of `u` into other branches: `-k w` on `y↑` for every edge `(u, y)`.
fn add_edges(sp: &Spider, u: Vertex, k: i64, sweeps: &mut [(&mut Sweep, i64)]) {
    let own = sp.branch_of[u as usize];
    for &(y, w) in sp.g.neighbors(u) {
        let yb = sp.branch_of[y as usize];
        if !sp.on_branch(y) || yb == own {
            continue;
        }
        let l = sp.global_pos(y);
        let r = sp.offset[yb as usize + 1];
        for (s, mult) in sweeps.iter_mut() {
            s.add(l, r, -k * *mult * w as i64);
        }
    }
}

/// Cheapest cut per set type, and the branches holding an endpoint of the
/// overall cheapest set.
pub(crate) struct Scan {
    pub sub: i64,
    pub comp: i64,
    pub pair: i64,
    pub pair_comp: i64,
    pub main: Vec<usize>,
}

pub(crate) fn scan(sp: &Spider, prep: &Prep) -> Scan {
    let mut out = Scan { sub: i64::MAX, comp: i64::MAX, pair: i64::MAX, pair_comp: i64::MAX, main: Vec::new() };
    let mut best = i64::MAX;
    let mut offer = |out: &mut Scan, val: i64, bs: &[usize]| {
        if val < best {
            best = val;
            out.main = bs.to_vec();
        }
    };
    for (b, br) in sp.branches.iter().enumerate() {
        for &v in br {
            let (s, c) = (prep.sub[v as usize], prep.comp(v));
            out.sub = out.sub.min(s);
            out.comp = out.comp.min(c);
            offer(&mut out, s.min(c), &[b]);
        }
    }
    if sp.branches.len() >= 2 {
        let total = sp.total_len();
        let mut flat = vec![0i64; total];
        let mut flat_c = vec![0i64; total];
        for br in &sp.branches {
            for &v in br {
                let gp = sp.global_pos(v);
                flat[gp] = prep.sub[v as usize];
                flat_c[gp] = prep.sub[v as usize] - 2 * prep.wc[v as usize];
            }
        }
        let mut plain = Sweep::new(&flat);
        let mut with_c = Sweep::new(&flat_c);
        for (b, br) in sp.branches.iter().enumerate() {
            let (l, r) = (sp.offset[b], sp.offset[b + 1]);
            for &u in br {
                add_edges(sp, u, 2, &mut [(&mut plain, 1), (&mut with_c, 1)]);
                let su = prep.sub[u as usize];
                if let Some((val, gp)) = plain.min_outside(l, r, total) {
                    out.pair = out.pair.min(val + su);
                    offer(&mut out, val + su, &[b, branch_at(sp, gp)]);
                }
                if let Some((val, gp)) = with_c.min_outside(l, r, total) {
                    let cut = val + su + prep.deg_c - 2 * prep.wc[u as usize];
                    out.pair_comp = out.pair_comp.min(cut);
                    offer(&mut out, cut, &[b, branch_at(sp, gp)]);
                }
            }
            plain.undo();
            with_c.undo();
        }
    }
    out
}

fn branch_at(sp: &Spider, gp: usize) -> usize {
    sp.offset.partition_point(|&o| o <= gp) - 1
}

/// Universe-4 family for one main branch, over the spider's vertices.
pub(crate) fn universe4_main(sp: &Spider, mb: usize, threshold: Option<Threshold>) -> LaminarTree {
    let n = sp.n();
    // c becomes the leaf of the main branch
    let mut branches = sp.branches.clone();
    if let Some(c) = sp.c {
        branches[mb].insert(0, c);
    }
    let att = Spider::new(sp.g.clone(), sp.root, branches, None);
    let prep = Prep::new(&att);
    let total = att.total_len();
    let main = &att.branches[mb];
    let (ml, mr) = (att.offset[mb], att.offset[mb + 1]);

    // three smallest per-branch subtree minima outside the main branch
    let mut mins: Vec<(i64, usize)> = att
        .branches
        .iter()
        .enumerate()
        .filter(|&(b, br)| b != mb && !br.is_empty())
        .map(|(b, br)| (br.iter().map(|&v| prep.sub[v as usize]).min().unwrap_or(i64::MAX), b))
        .collect();
    mins.sort_unstable();
    mins.truncate(3);
    if mins.is_empty() {
        return LaminarTree::root_only(n);
    }

    let mut flat = vec![0i64; total];
    for br in &att.branches {
        for &v in br {
            flat[att.global_pos(v)] = prep.sub[v as usize];
        }
    }
    let mut once = Sweep::new(&flat);
    let mut twice = Sweep::new(&flat);
    let mut second: Option<usize> = None;
    for (i, &u) in main.iter().enumerate() {
        add_edges(&att, u, 1, &mut [(&mut once, 1), (&mut twice, 2)]);
        if i == 0 && sp.c.is_some() {
            continue;
        }
        let Some((_, pg)) = once.min_outside(ml, mr, total) else {
            continue;
        };
        let pb = branch_at(&att, pg);
        let Some((val, og)) = twice.seg.min(pg, att.offset[pb + 1]) else {
            continue;
        };
        let cut = val + prep.sub[u as usize];
        let ob = branch_at(&att, og);
        let others = mins.iter().find(|&&(_, b)| b != ob).map_or(i64::MAX, |&(m, _)| m);
        if others > cut {
            second = Some(ob);
        }
    }
    let Some(sb) = second else {
        return LaminarTree::root_only(n);
    };

    // reduced two-branch spider: root {main leaf, second leaf}, branch A is
    // the rest of the main branch hanging above the old root, branch B the
    // rest of the second branch cut off from the old root
    let sec = &att.branches[sb];
    let mut map = vec![u32::MAX; n];
    map[main[0] as usize] = 0;
    map[sec[0] as usize] = 0;
    let blob = 1u32;
    let mut next = 2u32;
    let mut a = vec![blob];
    for &v in main[1..].iter().rev() {
        map[v as usize] = next;
        a.push(next);
        next += 1;
    }
    let mut bb = Vec::new();
    for &v in sec[1..].iter().rev() {
        map[v as usize] = next;
        bb.push(next);
        next += 1;
    }
    for m in map.iter_mut() {
        if *m == u32::MAX {
            *m = blob;
        }
    }
    let k = next as usize;
    let rg = att.g.quotient(&map, k);
    let mut rbranches = vec![a];
    if !bb.is_empty() {
        rbranches.push(bb);
    }
    let reduced = Spider::new(rg, 0, rbranches, None);
    let rprep = Prep::new(&reduced);
    let c1 = filter_chains(&reduced.g, universe1_chains(&reduced), threshold);
    let c3 = filter_chains(&reduced.g, universe3_chains(&reduced, &rprep), threshold);
    if c1.is_empty() && c3.is_empty() {
        return LaminarTree::root_only(n);
    }
    let u1 = chains_to_tree(k, &c1);
    let u3 = chains_to_tree(k, &c3);
    let fam = if u3.family_size() == 0 { u1 } else { merge_lazy(&u1, &u3, &reduced.g) };
    fam.lift(&map)
}

/// Sets that are complements of `u↓ ∪ v↓` for u, v on different branches.
pub fn universe4(sp: &Spider) -> LaminarTree {
    universe4_from_scan(sp, &scan(sp, &Prep::new(sp)), None)
}

/// [`universe4`] restricted to sets passing `threshold`.
pub(crate) fn universe4_from_scan(sp: &Spider, s: &Scan, threshold: Option<Threshold>) -> LaminarTree {
    let mut fam = LaminarTree::root_only(sp.n());
    if sp.branches.iter().filter(|b| !b.is_empty()).count() < 2 {
        return fam;
    }
    let mut cands = s.main.clone();
    cands.dedup();
    for mb in cands {
        let part = universe4_main(sp, mb, threshold);
        if part.family_size() > 0 {
            fam = merge_lazy(&fam, &part, &sp.g);
        }
    }
    fam
}
