//! Tree helpers: recognition, unique paths, Prüfer enumeration.

use crate::digraph::{Digraph, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Connected with exactly `n - 1` edges.
pub fn is_tree(g: &Digraph) -> bool {
    (g.n() == 0 && g.edge_count() == 0)
        || (g.n() > 0 && g.edge_count() == g.n() - 1 && g.is_connected())
}

pub fn require_tree(g: &Digraph) -> Result<()> {
    if is_tree(g) {
        Ok(())
    } else {
        Err(Error::NotATree(format!(
            "{} vertices, {} edges, connected: {}",
            g.n(),
            g.edge_count(),
            g.is_connected()
        )))
    }
}

/// A rooted view of a tree for repeated path queries.
#[derive(Clone, Debug)]
pub struct RootedTree {
    parent: Vec<Option<(VertexId, EdgeId)>>,
    depth: Vec<usize>,
}

impl RootedTree {
    /// Roots `g` (which must be a tree on the vertices it spans from `root`)
    /// at `root`. Vertices not reachable from `root` get no parent and
    /// `usize::MAX` depth.
    pub fn new(g: &Digraph, root: VertexId) -> Self {
        let adj = g.und_adjacency();
        let mut parent = vec![None; g.n()];
        let mut depth = vec![usize::MAX; g.n()];
        depth[root] = 0;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &(id, w) in &adj[v] {
                if depth[w] == usize::MAX {
                    depth[w] = depth[v] + 1;
                    parent[w] = Some((v, id));
                    stack.push(w);
                }
            }
        }
        RootedTree { parent, depth }
    }

    pub fn reaches(&self, v: VertexId) -> bool {
        self.depth[v] != usize::MAX
    }

    /// The unique path from `u` to `v`, as a list of `(edge, from, to)`
    /// steps in traversal order.
    pub fn path(&self, u: VertexId, v: VertexId) -> Vec<(EdgeId, VertexId, VertexId)> {
        let (mut a, mut b) = (u, v);
        let mut front = Vec::new();
        let mut back = Vec::new();
        while self.depth[a] > self.depth[b] {
            let (p, e) = self.parent[a].expect("vertex outside tree");
            front.push((e, a, p));
            a = p;
        }
        while self.depth[b] > self.depth[a] {
            let (p, e) = self.parent[b].expect("vertex outside tree");
            back.push((e, p, b));
            b = p;
        }
        while a != b {
            let (pa, ea) = self.parent[a].expect("vertex outside tree");
            let (pb, eb) = self.parent[b].expect("vertex outside tree");
            front.push((ea, a, pa));
            back.push((eb, pb, b));
            a = pa;
            b = pb;
        }
        back.reverse();
        front.extend(back);
        front
    }

    pub fn path_vertices(&self, u: VertexId, v: VertexId) -> Vec<VertexId> {
        let mut out = vec![u];
        out.extend(self.path(u, v).into_iter().map(|(_, _, to)| to));
        out
    }
}

/// Whether a traversal (as produced by [`RootedTree::path`]) is a directed
/// path of `t` in one of its two directions. The empty path is directed.
pub fn is_directed_path(t: &Digraph, path: &[(EdgeId, VertexId, VertexId)]) -> bool {
    let forward = path
        .iter()
        .all(|&(e, from, to)| t.edge(e).is_some_and(|a| a.tail == from && a.head == to));
    let backward = path
        .iter()
        .all(|&(e, from, to)| t.edge(e).is_some_and(|a| a.tail == to && a.head == from));
    forward || backward
}

/// The unique path of tree `t` between `u` and `v`.
pub fn tree_path(t: &Digraph, u: VertexId, v: VertexId) -> Result<Vec<(EdgeId, VertexId, VertexId)>> {
    require_tree(t)?;
    Ok(RootedTree::new(t, u).path(u, v))
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into tree edges.
pub fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(VertexId, VertexId)> {
    if n < 2 {
        return Vec::new();
    }
    assert_eq!(seq.len(), n - 2, "Prüfer sequence of wrong length");
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("no leaf");
        edges.push((leaf.min(s), leaf.max(s)));
        degree[leaf] = 0;
        degree[s] -= 1;
    }
    let rest: Vec<_> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// All labeled trees on `n` vertices, `n^(n-2)` of them, as edge lists.
pub fn labeled_trees(n: usize) -> impl Iterator<Item = Vec<(VertexId, VertexId)>> {
    let len = n.saturating_sub(2);
    let total = if n < 2 { 1 } else { n.pow(len as u32) };
    (0..total).map(move |mut code| {
        let mut seq = vec![0; len];
        for s in seq.iter_mut() {
            *s = code % n;
            code /= n;
        }
        prufer_decode(n, &seq)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn directed_path_examples() {
        let t = Digraph::from_edges(3, &[(0, 1), (2, 1)]);
        let rt = RootedTree::new(&t, 0);
        assert!(is_directed_path(&t, &rt.path(0, 0)));
        assert!(!is_directed_path(&t, &rt.path(0, 2)));
        let t = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let rt = RootedTree::new(&t, 1);
        assert!(is_directed_path(&t, &rt.path(0, 2)));
        assert!(is_directed_path(&t, &rt.path(2, 0)));
        assert_eq!(rt.path_vertices(2, 0), vec![2, 1, 0]);
    }

    #[test]
    fn prufer_counts() {
        for n in 1..=5 {
            let trees: Vec<_> = labeled_trees(n).collect();
            assert_eq!(trees.len(), if n < 2 { 1 } else { n.pow(n as u32 - 2) });
            let mut canon: Vec<_> = trees
                .iter()
                .map(|t| {
                    let mut t = t.clone();
                    t.sort();
                    t
                })
                .collect();
            canon.sort();
            canon.dedup();
            assert_eq!(canon.len(), trees.len(), "Prüfer decoding is a bijection");
            for t in &trees {
                assert!(is_tree(&Digraph::from_edges(n, t)));
            }
        }
    }

    #[test]
    fn non_tree_rejected() {
        let g = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert!(tree_path(&g, 0, 1).is_err());
    }
}
