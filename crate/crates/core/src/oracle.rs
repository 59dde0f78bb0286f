//! Exponential-time reference implementations over bitmask subsets.

use crate::error::{Error, Result};
use crate::graph::{Vertex, VertexSet, WeightedGraph};
use crate::threshold::Threshold;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleLimit {
    pub max_n: usize,
}

impl Default for OracleLimit {
    fn default() -> Self {
        OracleLimit { max_n: 18 }
    }
}

impl OracleLimit {
    pub fn check(self, n: usize) -> Result<()> {
        if n > self.max_n {
            Err(Error::TooLarge { n, limit: self.max_n })
        } else {
            Ok(())
        }
    }
}

/// Cut value of every bitmask subset.
pub fn cut_table(g: &WeightedGraph) -> Vec<i64> {
    let n = g.n();
    assert!(n < 31);
    let mut cut = vec![0i64; 1 << n];
    for mask in 1usize..1 << n {
        let v = mask.trailing_zeros();
        let prev = mask & (mask - 1);
        let inner: i64 = g.neighbors(v).iter().filter(|&&(y, _)| prev >> y & 1 == 1).map(|&(_, w)| w as i64).sum();
        cut[mask] = cut[prev] + g.degree(v) - 2 * inner;
    }
    cut
}

/// Extreme-set flags for every bitmask subset (the empty and full sets are never extreme).
pub fn extreme_table(g: &WeightedGraph, cut: &[i64]) -> Vec<bool> {
    let n = g.n();
    let full = (1usize << n) - 1;
    // best[X] = min cut over nonempty subsets of X
    let mut best = vec![i64::MAX; 1 << n];
    let mut extreme = vec![false; 1 << n];
    for mask in 1usize..=full {
        let mut proper = i64::MAX;
        let mut bits = mask;
        while bits != 0 {
            let v = bits.trailing_zeros();
            bits &= bits - 1;
            proper = proper.min(best[mask ^ (1 << v)]);
        }
        best[mask] = proper.min(cut[mask]);
        extreme[mask] = mask != full && (mask.count_ones() == 1 || cut[mask] < proper);
    }
    extreme
}

pub fn enumerate_extreme_sets(g: &WeightedGraph) -> Result<Vec<VertexSet>> {
    enumerate_extreme_sets_with(g, OracleLimit::default())
}

pub fn enumerate_extreme_sets_with(g: &WeightedGraph, limit: OracleLimit) -> Result<Vec<VertexSet>> {
    limit.check(g.n())?;
    let cut = cut_table(g);
    let extreme = extreme_table(g, &cut);
    Ok((1u64..(1 << g.n())).filter(|&m| extreme[m as usize]).map(|m| VertexSet::from_bits(g.n(), m)).collect())
}

/// Validates a parent array as a tree on `span` and returns its edges.
pub fn tree_edges(parent: &[Option<Vertex>], span: &VertexSet) -> Result<Vec<(Vertex, Vertex)>> {
    let n = span.universe();
    if parent.len() != n {
        return Err(Error::NotATree("parent array length differs from vertex count".into()));
    }
    let mut roots = 0;
    let mut edges = Vec::new();
    for v in 0..n as Vertex {
        match parent[v as usize] {
            Some(p) if span.contains(v) => {
                if !span.contains(p) || p == v {
                    return Err(Error::NotATree(format!("bad parent {p} for {v}")));
                }
                edges.push((v, p));
            }
            Some(_) => return Err(Error::NotATree(format!("vertex {v} outside the span has a parent"))),
            None if span.contains(v) => roots += 1,
            None => {}
        }
    }
    if roots != 1 {
        return Err(Error::NotATree(format!("{roots} roots")));
    }
    for v in span.iter() {
        let mut x = v;
        let mut steps = 0;
        while let Some(p) = parent[x as usize] {
            x = p;
            steps += 1;
            if steps > n {
                return Err(Error::NotATree("cycle in parent links".into()));
            }
        }
    }
    Ok(edges)
}

/// Extreme sets that are proper subsets of `span` and cross at most two tree edges.
pub fn enumerate_2respecting(g: &WeightedGraph, parent: &[Option<Vertex>], span: &VertexSet) -> Result<Vec<VertexSet>> {
    OracleLimit::default().check(g.n())?;
    let edges = tree_edges(parent, span)?;
    let span_bits = span.to_bits();
    Ok(enumerate_extreme_sets(g)?
        .into_iter()
        .filter(|x| {
            let b = x.to_bits();
            b & !span_bits == 0 && b != span_bits && edges.iter().filter(|&&(u, v)| (b >> u & 1) != (b >> v & 1)).count() <= 2
        })
        .collect())
}

/// Extreme sets that are d-weak and contained in `s`.
pub fn weak_extreme_sets(g: &WeightedGraph, s: &VertexSet, d: Threshold) -> Result<Vec<VertexSet>> {
    let s_bits = s.to_bits();
    let cut = {
        OracleLimit::default().check(g.n())?;
        cut_table(g)
    };
    let extreme = extreme_table(g, &cut);
    Ok((1u64..(1 << g.n()))
        .filter(|&m| extreme[m as usize] && m & !s_bits == 0 && d.is_weak(cut[m as usize]))
        .map(|m| VertexSet::from_bits(g.n(), m))
        .collect())
}

/// Classes of `s` under "not separated by any d-weak extreme set contained in s",
/// ordered by smallest member.
pub fn brute_canonical_partition(g: &WeightedGraph, s: &VertexSet, d: Threshold) -> Result<Vec<VertexSet>> {
    let weak = weak_extreme_sets(g, s, d)?;
    let mut classes: Vec<(Vec<bool>, Vec<Vertex>)> = Vec::new();
    for v in s.iter() {
        let sig: Vec<bool> = weak.iter().map(|x| x.contains(v)).collect();
        match classes.iter_mut().find(|(k, _)| *k == sig) {
            Some((_, members)) => members.push(v),
            None => classes.push((sig, vec![v])),
        }
    }
    Ok(classes.into_iter().map(|(_, m)| VertexSet::from_sorted(g.n(), m)).collect())
}

/// `ceil(D / 2)` where D is the largest total deficiency `sum max(0, tau - cut(X_i))`
/// over subpartitions of V into proper subsets.
pub fn brute_augmentation_bound(g: &WeightedGraph, tau: i64) -> Result<i64> {
    OracleLimit { max_n: 10 }.check(g.n())?;
    let n = g.n();
    let full = (1usize << n) - 1;
    let cut = cut_table(g);
    let dem: Vec<i64> = (0..=full).map(|m| if m == 0 || m == full { 0 } else { (tau - cut[m]).max(0) }).collect();
    let mut best = vec![0i64; full + 1];
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        let mut value = best[rest];
        let mut sub = rest;
        loop {
            let block = sub | low;
            if dem[block] > 0 {
                value = value.max(dem[block] + best[mask ^ block]);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[mask] = value;
    }
    Ok((best[full] + 1) / 2)
}

/// Brute-force global minimum cut; `None` for a single vertex.
pub fn brute_min_cut(g: &WeightedGraph) -> Option<i64> {
    let n = g.n();
    if n < 2 {
        return None;
    }
    let cut = cut_table(g);
    (1..(1usize << (n - 1))).map(|m| cut[m]).min()
}

/// First crossing pair in a family, if any.
pub fn crossing_pair(family: &[VertexSet]) -> Option<(VertexSet, VertexSet)> {
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            if a.crosses(b) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn sets(n: usize, list: &[&[u32]]) -> Vec<VertexSet> {
        let mut v: Vec<VertexSet> = list.iter().map(|s| VertexSet::new(n, s.iter().copied()).unwrap()).collect();
        v.sort();
        v
    }

    fn sorted(mut v: Vec<VertexSet>) -> Vec<VertexSet> {
        v.sort();
        v
    }

    #[test]
    fn triangle_extremes_are_singletons() {
        assert_eq!(sorted(enumerate_extreme_sets(&triangle()).unwrap()), sets(3, &[&[0], &[1], &[2]]));
    }

    #[test]
    fn dumbbell_extremes() {
        let want = sets(6, &[&[0], &[1], &[2], &[3], &[4], &[5], &[0, 1, 2], &[3, 4, 5]]);
        assert_eq!(sorted(enumerate_extreme_sets(&dumbbell()).unwrap()), want);
    }

    #[test]
    fn single_edge() {
        let g = WeightedGraph::new(2, [(0, 1, 5)]).unwrap();
        assert_eq!(sorted(enumerate_extreme_sets(&g).unwrap()), sets(2, &[&[0], &[1]]));
    }

    #[test]
    fn star_tree_leaves_respect_hub_does_not() {
        let g = star(3);
        let parent = vec![None, Some(0), Some(0), Some(0)];
        let got = sorted(enumerate_2respecting(&g, &parent, &VertexSet::full(4)).unwrap());
        // the hub crosses all three tree edges
        assert_eq!(got, sets(4, &[&[1], &[2], &[3]]));
    }

    #[test]
    fn canonical_partition_of_dumbbell_with_dummy() {
        let mut edges: Vec<_> = dumbbell().edges().to_vec();
        edges.push((0, 1, 0));
        let g = WeightedGraph::new(7, edges).unwrap();
        let s = VertexSet::new(7, 0..6).unwrap();
        let classes = brute_canonical_partition(&g, &s, Threshold::from_ratio(101, 100)).unwrap();
        assert_eq!(classes, sets(7, &[&[0, 1, 2], &[3, 4, 5]]));
    }

    #[test]
    fn augmentation_bounds_on_dumbbell() {
        let g = dumbbell();
        assert_eq!(brute_augmentation_bound(&g, 2).unwrap(), 1);
        assert_eq!(brute_augmentation_bound(&g, 3).unwrap(), 2);
        assert_eq!(brute_augmentation_bound(&g, 1).unwrap(), 0);
        assert_eq!(brute_min_cut(&g), Some(1));
    }

    #[test]
    fn limits_are_enforced() {
        let g = cycle(19);
        assert!(matches!(enumerate_extreme_sets(&g), Err(Error::TooLarge { .. })));
        assert!(matches!(brute_augmentation_bound(&cycle(11), 3), Err(Error::TooLarge { .. })));
    }
}
