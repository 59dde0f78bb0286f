//! The extreme sets tree: near-mincut extreme sets per instance, canonical
//! partition, and recursion on the classes.

use crate::error::{Error, Result};
use crate::graph::{contract, contract_each, Vertex, VertexSet, WeightedGraph};
use crate::laminar::{all_cut_values, attach_local_results, build_tree, prune_non_extreme, LaminarTree};
use crate::merge::merge_lazy;
use crate::mincut::steiner_mincut_fast;
use crate::oracle::{enumerate_extreme_sets_with, OracleLimit};
use crate::respect::{two_respecting_family_cached, FamilyFilter, RespectConfig, RootedTree, SpiderCache};
use crate::rng::{derive, derive2};
use crate::sparsify::{pack_trees, sample_preserving, SparsifyConfig, TreePacking};
use crate::threshold::Threshold;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub sparsify: SparsifyConfig,
    pub respect: RespectConfig,
    /// Independent sample-and-pack rounds per instance, merged before pruning.
    pub repeats: usize,
    /// Compare the result with the exhaustive oracle (at most 18 vertices).
    pub oracle_check: bool,
    pub seed: u64,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig { sparsify: SparsifyConfig::default(), respect: RespectConfig::default(), repeats: 3, oracle_check: false, seed: 0 }
    }
}

impl PipelineConfig {
    pub fn with_seed(seed: u64) -> Self {
        PipelineConfig { seed, ..Default::default() }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PipelineStats {
    /// Instances solved, including singleton base cases.
    pub instances: usize,
    pub max_depth: usize,
    /// `(depth, lambda)` for every non-trivial instance.
    pub lambdas: Vec<(usize, i64)>,
    pub trees_packed: usize,
    /// Rounds that fell back to the unsampled graph.
    pub identity_fallbacks: usize,
    /// Packed trees skipped because an identical tree was already processed.
    pub duplicate_trees: usize,
    /// Spider families reused from earlier trees of the same instance.
    pub spider_hits: usize,
    pub spider_misses: usize,
}

const RESAMPLE_LIMIT: usize = 4;

/// The d-weak extreme sets inside `s` for `g` on `s ∪ {c}`, where `lambda` is
/// the Steiner connectivity of `s` and `d = threshold`.
pub fn near_mincut_extreme(
    g: &WeightedGraph,
    s: &VertexSet,
    c: Option<Vertex>,
    lambda: i64,
    d: Threshold,
    cfg: &PipelineConfig,
) -> Result<LaminarTree> {
    near_mincut_with_stats(g, s, c, lambda, d, cfg, cfg.seed, &mut PipelineStats::default())
}

#[allow(clippy::too_many_arguments)]
fn near_mincut_with_stats(
    g: &WeightedGraph,
    s: &VertexSet,
    c: Option<Vertex>,
    lambda: i64,
    d: Threshold,
    cfg: &PipelineConfig,
    seed: u64,
    stats: &mut PipelineStats,
) -> Result<LaminarTree> {
    let n = g.n();
    let mut fam = LaminarTree::root_only(n);
    if lambda == 0 {
        let comps: Vec<VertexSet> = g
            .components()
            .into_iter()
            .filter(|comp| c.is_none_or(|c| !comp.contains(&c)))
            .map(|comp| VertexSet::new(n, comp))
            .collect::<Result<_>>()?;
        fam = build_tree(&comps, n)?;
    } else {
        let root = s.members()[0];
        let filter = FamilyFilter { threshold: Some(d), avoid: c };
        let mut seen = std::collections::HashSet::new();
        let mut cache = SpiderCache::default();
        for rep in 0..cfg.repeats.max(1) {
            let rseed = derive2(seed, 7, rep as u64);
            let packing = sample_and_pack(g, s, c, lambda, cfg, rseed, stats)?;
            stats.trees_packed += packing.trees.len();
            for (ti, parent) in packing.trees.iter().enumerate() {
                if !seen.insert(parent.clone()) {
                    stats.duplicate_trees += 1;
                    continue;
                }
                let tree = RootedTree::new(root, parent.clone())?;
                let rcfg = RespectConfig { seed: derive2(rseed, 8, ti as u64), ..cfg.respect };
                let local = two_respecting_family_cached(g, &tree, &rcfg, filter, &mut cache)?;
                fam = merge_lazy(&fam, &local, g);
            }
        }
        stats.spider_hits += cache.hits;
        stats.spider_misses += cache.misses;
    }
    fam = merge_lazy(&fam, &build_tree(std::slice::from_ref(s), n)?, g);
    Ok(prune_non_extreme(g, &fam, s, d))
}

fn sample_and_pack(
    g: &WeightedGraph,
    s: &VertexSet,
    c: Option<Vertex>,
    lambda: i64,
    cfg: &PipelineConfig,
    seed: u64,
    stats: &mut PipelineStats,
) -> Result<TreePacking> {
    let root = s.members()[0];
    for attempt in 0..RESAMPLE_LIMIT {
        let scfg = SparsifyConfig { seed: derive2(seed, 9, attempt as u64), ..cfg.sparsify };
        let h = sample_preserving(g, c, lambda, &scfg);
        let (lp, _) = steiner_mincut_fast(&h, s)?;
        if lp == 0 {
            continue;
        }
        if let Ok(p) = pack_trees(&h, root, s, lp as usize, derive(scfg.seed, 1)) {
            return Ok(p);
        }
    }
    stats.identity_fallbacks += 1;
    let scfg = SparsifyConfig { force_identity: true, seed, ..cfg.sparsify };
    let h = sample_preserving(g, c, lambda, &scfg);
    let (lp, _) = steiner_mincut_fast(&h, s)?;
    pack_trees(&h, root, s, lp.max(1) as usize, derive(seed, 2))
}

/// Classes of `s` under "no set of `t` separates them", ordered by smallest
/// member.
pub fn canonical_partition(t: &LaminarTree, s: &VertexSet) -> Vec<VertexSet> {
    let mut slot = vec![usize::MAX; t.node_count()];
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for v in s.iter() {
        let x = t.home(v) as usize;
        if slot[x] == usize::MAX {
            slot[x] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[x]].push(v);
    }
    classes.into_iter().map(|m| VertexSet::new(t.n(), m).expect("members are in range")).collect()
}

/// Laminar tree of the extreme sets of `g` contained in `s`, a nonempty proper
/// subset of the vertices.
pub fn extreme_sets(g: &WeightedGraph, s: &VertexSet, cfg: &PipelineConfig) -> Result<LaminarTree> {
    extreme_sets_with_stats(g, s, cfg).map(|(t, _)| t)
}

pub fn extreme_sets_with_stats(g: &WeightedGraph, s: &VertexSet, cfg: &PipelineConfig) -> Result<(LaminarTree, PipelineStats)> {
    if s.is_empty() {
        return Err(Error::InvalidSet("empty"));
    }
    if s.len() == g.n() {
        return Err(Error::InvalidSet("must be a proper subset"));
    }
    let mut stats = PipelineStats::default();
    let (h, cm) = contract(g, s)?;
    let t = solve(&h, s.len(), cfg, cfg.seed, 0, None, &mut stats)?;
    Ok((t.lift(&cm.map), stats))
}

/// Extreme sets of `h` inside `0..k`, where `h` has one more vertex `k`
/// standing for everything outside. The result lives on `h`'s vertices.
fn solve(
    h: &WeightedGraph,
    k: usize,
    cfg: &PipelineConfig,
    seed: u64,
    depth: usize,
    parent_d: Option<Threshold>,
    stats: &mut PipelineStats,
) -> Result<LaminarTree> {
    stats.instances += 1;
    stats.max_depth = stats.max_depth.max(depth);
    let local = VertexSet::new(h.n(), 0..k as Vertex)?;
    if k == 1 {
        return build_tree(std::slice::from_ref(&local), h.n());
    }
    let c = k as Vertex;
    let (lambda, _) = steiner_mincut_fast(h, &local)?;
    stats.lambdas.push((depth, lambda));
    if let Some(pd) = parent_d {
        if pd.is_weak(lambda) {
            return Err(Error::LambdaChain { child: lambda, num: pd.num, den: pd.den });
        }
    }
    let d = Threshold::near_mincut(lambda, cfg.sparsify.epsilon);
    let weak = near_mincut_with_stats(h, &local, Some(c), lambda, d, cfg, derive(seed, 4), stats)?;
    let classes = canonical_partition(&weak, &local);
    let graphs = contract_each(h, &classes)?;
    let mut children = Vec::with_capacity(classes.len());
    for (i, (class, hc)) in classes.into_iter().zip(graphs).enumerate() {
        let sub = solve(&hc, class.len(), cfg, derive2(seed, 3, i as u64), depth + 1, Some(d), stats)?;
        children.push((class, sub));
    }
    attach_local_results(&weak, &children)
}

/// The extreme sets tree of `g`, with cut values.
pub fn extreme_sets_tree(g: &WeightedGraph, cfg: &PipelineConfig) -> Result<LaminarTree> {
    extreme_sets_tree_with_stats(g, cfg).map(|(t, _)| t)
}

pub fn extreme_sets_tree_with_stats(g: &WeightedGraph, cfg: &PipelineConfig) -> Result<(LaminarTree, PipelineStats)> {
    let n = g.n();
    if cfg.oracle_check {
        OracleLimit::default().check(n)?;
    }
    if n <= 1 {
        let mut t = LaminarTree::root_only(n);
        t.set_cuts(vec![0]);
        return Ok((t, PipelineStats { instances: 1, ..Default::default() }));
    }
    let padded = WeightedGraph::new(n + 1, g.edges().iter().copied())?;
    let s = VertexSet::new(n + 1, 0..n as Vertex)?;
    let (t, stats) = extreme_sets_with_stats(&padded, &s, cfg)?;
    let mut t = t.restrict_prefix(n);
    t.set_cuts(all_cut_values(g, &t));
    if cfg.oracle_check {
        let want = enumerate_extreme_sets_with(g, OracleLimit::default())?;
        let got = t.family();
        let missing = want.iter().filter(|x| !got.contains(x)).count();
        let extra = got.iter().filter(|x| !want.contains(x)).count();
        if missing + extra > 0 {
            return Err(Error::OracleMismatch { missing, extra });
        }
    }
    Ok((t, stats))
}
