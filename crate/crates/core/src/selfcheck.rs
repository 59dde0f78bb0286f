//! Oracle comparison runs on small random graphs.

use std::fmt;

use rand::Rng;

use crate::augment::augment;
use crate::error::{Error, Result};
use crate::fixtures::random_connected_graph;
use crate::graph::WeightedGraph;
use crate::oracle::{brute_augmentation_bound, brute_min_cut, enumerate_extreme_sets, OracleLimit};
use crate::pipeline::{extreme_sets_tree, PipelineConfig};
use crate::rng::{derive, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SelfcheckConfig {
    pub nmax: usize,
    pub seeds: u64,
    pub seed: u64,
}

impl Default for SelfcheckConfig {
    fn default() -> Self {
        SelfcheckConfig { nmax: 12, seeds: 300, seed: 0 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelfcheckReport {
    pub runs: u64,
    pub tree_matches: u64,
    /// Seeds whose tree differed from the oracle or failed.
    pub tree_failures: Vec<u64>,
    pub augment_runs: u64,
    pub augment_matches: u64,
    /// Seeds whose augmentation was not optimal or not tau-connected.
    pub augment_failures: Vec<u64>,
}

impl SelfcheckReport {
    /// Tree mismatches within 1% are tolerated; augmentation must be exact.
    pub fn passed(&self) -> bool {
        self.augment_failures.is_empty() && 100 * self.tree_failures.len() as u64 <= self.runs
    }
}

impl fmt::Display for SelfcheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}/{} extreme-tree matches", self.tree_matches, self.runs)?;
        if !self.tree_failures.is_empty() {
            writeln!(f, "  mismatching seeds: {:?}", self.tree_failures)?;
        }
        writeln!(f, "{}/{} optimal augmentations", self.augment_matches, self.augment_runs)?;
        if !self.augment_failures.is_empty() {
            writeln!(f, "  failing seeds: {:?}", self.augment_failures)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Random connected graph for selfcheck seed `seed`, with 4 to `nmax` vertices.
pub fn selfcheck_graph(cfg: &SelfcheckConfig, seed: u64) -> WeightedGraph {
    let mut r = rng(derive(cfg.seed, seed));
    let n = r.gen_range(4.min(cfg.nmax)..=cfg.nmax);
    random_connected_graph(&mut r, n, 0.5, 8)
}

pub fn run_selfcheck(cfg: &SelfcheckConfig) -> Result<SelfcheckReport> {
    OracleLimit::default().check(cfg.nmax)?;
    if cfg.nmax < 2 {
        return Err(Error::InvalidSet("nmax must be at least 2"));
    }
    let mut report = SelfcheckReport::default();
    for seed in 0..cfg.seeds {
        let g = selfcheck_graph(cfg, seed);
        report.runs += 1;
        let want = {
            let mut w = enumerate_extreme_sets(&g)?;
            w.sort();
            w
        };
        match extreme_sets_tree(&g, &PipelineConfig::with_seed(seed)) {
            Ok(t) if t.family() == want => report.tree_matches += 1,
            _ => report.tree_failures.push(seed),
        }
        if g.n() <= 10 {
            report.augment_runs += 1;
            let maxdeg = (0..g.n() as u32).map(|v| g.degree(v)).max().unwrap_or(0);
            let tau = rng(derive(seed, 0xa7)).gen_range(0..=2 * maxdeg);
            let ok = augment(&g, tau, &PipelineConfig::with_seed(seed)).is_ok_and(|a| {
                let joined = WeightedGraph::new(g.n(), g.edges().iter().copied().chain(a.edges.iter().copied()));
                joined.is_ok_and(|h| brute_min_cut(&h).unwrap_or(i64::MAX) >= tau)
                    && brute_augmentation_bound(&g, tau).is_ok_and(|b| b == a.total_weight)
            });
            if ok {
                report.augment_matches += 1;
            } else {
                report.augment_failures.push(seed);
            }
        }
    }
    Ok(report)
}
