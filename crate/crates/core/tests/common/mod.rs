//! Independent checkers shared by the integration tests.

#![allow(dead_code)]

use std::collections::BTreeSet;

use dijoin::embedding::RotationSystem;
use dijoin::tree::is_tree;
use dijoin::{Digraph, Directing, EdgeSet, VertexId, VertexSet};
use rand::Rng;

pub fn random_digraph<R: Rng>(n: usize, m: usize, rng: &mut R) -> Digraph {
    let mut g = Digraph::new(n);
    for _ in 0..m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        g.push_edge(u, v);
    }
    g
}

/// Outsets by testing every subset against the definition.
pub fn outsets_by_definition(g: &Digraph) -> BTreeSet<u128> {
    let n = g.n();
    (1..(1u128 << n) - 1)
        .filter(|&bits| {
            g.edges().all(|(_, e)| {
                let (t, h) = (bits >> e.tail & 1 == 1, bits >> e.head & 1 == 1);
                !(h && !t)
            })
        })
        .collect()
}

pub fn outsets_agree(g: &Digraph) -> bool {
    let mine: BTreeSet<u128> = g.outsets().iter().map(|x| x.bits()).collect();
    mine.len() == g.outsets().len() && mine == outsets_by_definition(g)
}

/// Whether `a` meets every directed cut, by subset scan.
pub fn meets_every_cut(g: &Digraph, a: &EdgeSet) -> bool {
    outsets_by_definition(g).into_iter().all(|bits| {
        g.edges().any(|(id, e)| a.contains(id) && bits >> e.tail & 1 == 1 && bits >> e.head & 1 == 0)
    })
}

/// The fast dijoin test agrees with the cut scan on every edge subset.
pub fn dijoin_tests_agree(g: &Digraph) -> bool {
    let ids: Vec<_> = g.edges().map(|(id, _)| id).collect();
    (0..1u64 << ids.len()).all(|mask| {
        let a = EdgeSet::from_iter(
            g.edge_space(),
            ids.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &id)| id),
        );
        let slow = meets_every_cut(g, &a);
        g.is_dijoin(&a) == slow && g.is_dijoin_definitional(&a) == slow
    })
}

/// The dual of the dual is the primal: faces of the dual correspond to
/// primal vertices, with the same edge ends and rotations.
pub fn dual_involution_holds(r: &RotationSystem) -> bool {
    let Ok((d, _)) = r.dual() else { return false };
    let Ok((dd, faces)) = d.dual() else { return false };
    if dd.n() != r.n() {
        return false;
    }
    let vmap: Vec<VertexId> = faces
        .walks
        .iter()
        .map(|w| w.first().map_or(0, |&d| r.vertex(d)))
        .collect();
    let ends_ok = r.edge_ids().all(|e| {
        let [a, b] = dd.ends(e).unwrap();
        [vmap[a], vmap[b]] == r.ends(e).unwrap()
    });
    let rot_ok = faces.walks.iter().enumerate().all(|(f, w)| {
        let v = vmap[f];
        let rr = r.rotation(v);
        if rr.len() != w.len() {
            return false;
        }
        let Some(&first) = w.first() else { return true };
        let p = r.position(first);
        (0..rr.len()).all(|k| rr[(p + k) % rr.len()] == w[k])
    });
    ends_ok && rot_ok
}

/// The edges outside a spanning tree form a spanning tree of the dual.
pub fn complement_is_dual_tree(r: &RotationSystem, tree: &EdgeSet) -> bool {
    let Ok((d, _)) = r.dual() else { return false };
    let mut co = Digraph::new(d.n());
    for e in d.edge_ids() {
        if !tree.contains(e) {
            let [a, b] = d.ends(e).unwrap();
            co.push_edge(a, b);
        }
    }
    is_tree(&co)
}

/// Whether consecutive spine vertices are joined by edges directed forward.
pub fn spine_directed(s: &Digraph, spine: &[VertexId], d: &Directing) -> bool {
    spine.windows(2).all(|w| {
        s.edges().any(|(id, e)| {
            ((e.tail == w[0] && e.head == w[1]) || (e.tail == w[1] && e.head == w[0])) && d.head(id) == Some(w[1])
        })
    })
}

/// Every member of `family` has at least one edge of `d` leaving and one
/// entering.
pub fn crosses_both_ways(s: &Digraph, family: &[VertexSet], d: &Directing) -> bool {
    let g = d.apply(s);
    family
        .iter()
        .all(|x| !g.out_cut(x).is_empty() && !g.in_cut(x).is_empty())
}

/// A canonical string for an unlabeled tree (minimum rooted encoding over
/// all roots).
pub fn tree_canon(n: usize, edges: &[(VertexId, VertexId)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    fn enc(adj: &[Vec<VertexId>], v: VertexId, p: Option<VertexId>) -> String {
        let mut kids: Vec<String> = adj[v].iter().filter(|&&w| Some(w) != p).map(|&w| enc(adj, w, Some(v))).collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    (0..n).map(|r| enc(&adj, r, None)).min().unwrap_or_default()
}
