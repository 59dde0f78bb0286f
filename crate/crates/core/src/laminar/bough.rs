use super::LaminarTree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bough {
    /// Nodes from the leaf upward.
    pub nodes: Vec<u32>,
    /// The node where the walk stopped (first node with several children, or the root).
    pub stop: u32,
}

/// One bough per leaf: the leaf and its ancestors while they have a single
/// child, never including the root.
pub fn bough_decompose(t: &LaminarTree) -> Vec<Bough> {
    let mut out = Vec::new();
    for x in 1..t.node_count() as u32 {
        if !t.children(x).is_empty() {
            continue;
        }
        let mut nodes = vec![x];
        let mut p = t.parent(x).expect("non-root node");
        while p != 0 && t.children(p).len() == 1 {
            nodes.push(p);
            p = t.parent(p).expect("non-root node");
        }
        out.push(Bough { nodes, stop: p });
    }
    out
}
