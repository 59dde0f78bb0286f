use super::{LaminarTree, NONE};
use crate::error::{Error, Result};
use crate::graph::VertexSet;

/// Splices the trees returned for the classes of a canonical partition into
/// the tree of weak sets. Every child tree lives on the same universe and only
/// has sets inside its class. A class sits at the smallest node x containing
/// it; the child's sets hang below x, except a child set equal to x's own set,
/// whose children are spliced instead.
pub fn attach_recursive_results(parent_tree: &LaminarTree, child_trees: &[(VertexSet, LaminarTree)]) -> Result<LaminarTree> {
    attach(parent_tree, child_trees, false)
}

/// As [`attach_recursive_results`], but each child tree lives on its own class:
/// child vertex i stands for the i-th smallest member of the class, and any
/// vertices past the class size must sit at the child's root.
pub fn attach_local_results(parent_tree: &LaminarTree, child_trees: &[(VertexSet, LaminarTree)]) -> Result<LaminarTree> {
    attach(parent_tree, child_trees, true)
}

fn attach(parent_tree: &LaminarTree, child_trees: &[(VertexSet, LaminarTree)], local: bool) -> Result<LaminarTree> {
    let n = parent_tree.n();
    let sizes = parent_tree.sizes();
    let mut parent: Vec<u32> = parent_tree.parents().to_vec();
    let mut home: Vec<u32> = parent_tree.homes().to_vec();
    let mut cut: Vec<Option<i64>> = parent_tree.cuts().to_vec();
    for (class, child) in child_trees {
        if class.is_empty() {
            continue;
        }
        let x = parent_tree.home(class.members()[0]);
        if class.iter().any(|v| parent_tree.home(v) != x) {
            return Err(Error::ClassNotLocatable(class.members().to_vec()));
        }
        let child_sizes = child.sizes();
        // map child node -> node in the combined tree
        let mut id = vec![NONE; child.node_count()];
        id[0] = x;
        for c in 1..child.node_count() as u32 {
            let p = id[child.parents()[c as usize] as usize];
            if child_sizes[c as usize] == sizes[x as usize] {
                id[c as usize] = p;
                continue;
            }
            id[c as usize] = parent.len() as u32;
            parent.push(p);
            cut.push(child.cut(c));
        }
        for (i, v) in class.iter().enumerate() {
            let cv = if local { i as u32 } else { v };
            home[v as usize] = id[child.home(cv) as usize];
        }
    }
    LaminarTree::from_parts(n, parent, home, Some(cut))
}
