//! Seeded random instances for the engines and the partition pipeline.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bias::outset_bias;
use crate::bitset::EdgeSet;
use crate::caterpillar::is_caterpillar_subdivision;
use crate::digraph::{Digraph, UnionFind, VertexId};
use crate::embedding::{embed, RotationSystem};
use crate::instance::Instance;
use crate::planar::planarthm_violation;
use crate::solver::check_cut_condition;
use crate::tree::prufer_decode;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random labeled tree on `n` vertices.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> Vec<(VertexId, VertexId)> {
    if n < 2 {
        return Vec::new();
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &seq)
}

/// A connected loopless planar multigraph: a random tree plus up to `extra`
/// random edges, each kept only if the graph stays planar. Ids are dense.
pub fn random_planar_multigraph<R: Rng>(n: usize, extra: usize, rng: &mut R) -> (Digraph, RotationSystem) {
    let mut g = Digraph::from_edges(n, &random_tree(n, rng));
    let mut emb = embed(&g).expect("trees are planar");
    if n >= 2 {
        for _ in 0..extra {
            let u = rng.gen_range(0..n);
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            let id = g.push_edge(u, v);
            match embed(&g) {
                Ok(e) => emb = e,
                Err(_) => {
                    g.remove_edge(id);
                }
            }
        }
    }
    // Removed edges leave holes; renumber densely.
    let mut dense = Digraph::new(n);
    for (_, e) in g.edges() {
        dense.push_edge(e.tail, e.head);
    }
    if dense.edge_space() != g.edge_space() {
        emb = embed(&dense).expect("subgraph of a planar graph");
    }
    (dense, emb)
}

/// A random spanning tree of a connected graph, as an edge-id set.
pub fn random_spanning_tree<R: Rng>(g: &Digraph, rng: &mut R) -> EdgeSet {
    let mut ids: Vec<_> = g.edges().map(|(i, _)| i).collect();
    ids.shuffle(rng);
    let mut uf = UnionFind::new(g.n());
    let mut out = g.empty_edges();
    for id in ids {
        let e = g.edge(id).unwrap();
        if uf.union(e.tail, e.head) {
            out.insert(id);
        }
    }
    out
}

/// Input to [`crate::planar::orient_planar`].
#[derive(Clone, Debug)]
pub struct PlanarOrientCase {
    pub s: Digraph,
    pub t: Digraph,
    pub emb: RotationSystem,
    pub root: VertexId,
    pub wedge: EdgeSet,
}

/// Splits a random embedded multigraph into a spanning tree `T` and `S` =
/// the rest, orienting `T` at random until every S-edge has a non-directed
/// tree path. Picks a random vertex and a random T-free wedge there.
pub fn planar_orient_case<R: Rng>(n: usize, extra: usize, tries: usize, rng: &mut R) -> Option<PlanarOrientCase> {
    let (g, emb) = random_planar_multigraph(n, extra, rng);
    let tree = random_spanning_tree(&g, rng);
    let space = g.edge_space();
    let mut s = Digraph::new(n);
    s.reserve_ids(space);
    for (id, e) in g.edges() {
        if !tree.contains(id) {
            s.insert_edge(id, e.tail, e.head);
        }
    }
    for _ in 0..tries {
        let mut t = Digraph::new(n);
        t.reserve_ids(space);
        let mut emb2 = emb.clone();
        let mut flipped = Vec::new();
        for id in tree.iter() {
            let e = g.edge(id).unwrap();
            if rng.gen_bool(0.5) {
                t.insert_edge(id, e.tail, e.head);
            } else {
                t.insert_edge(id, e.head, e.tail);
                flipped.push(id);
            }
        }
        if planarthm_violation(&s, &t).ok()? .is_some() {
            continue;
        }
        let union = s.union(&t).ok()?;
        if !flipped.is_empty() {
            emb2 = emb2.with_tails(&union).ok()?;
        }
        let root = rng.gen_range(0..n);
        let wedge = random_wedge(&emb2, &t, root, rng);
        return Some(PlanarOrientCase {
            s,
            t,
            emb: emb2,
            root,
            wedge,
        });
    }
    None
}

/// A random interval of S-darts at `v`, possibly empty.
pub fn random_wedge<R: Rng>(emb: &RotationSystem, t: &Digraph, v: VertexId, rng: &mut R) -> EdgeSet {
    let rot = emb.rotation(v);
    let mut w = EdgeSet::empty(emb.edge_space());
    let k = rot.len();
    if k == 0 || rng.gen_bool(0.25) {
        return w;
    }
    let start = rng.gen_range(0..k);
    let want = rng.gen_range(1..=k);
    for i in 0..want {
        let d = rot[(start + i) % k];
        if t.edge(d.edge).is_some() || w.contains(d.edge) {
            break;
        }
        w.insert(d.edge);
    }
    w
}

/// An embedded instance with `S` a spanning tree and `T` the remaining
/// edges, randomly directed (some doubled as 2-cycles), such that every
/// outset of `T` has at least two S-edges across it.
pub fn planar_outset_instance<R: Rng>(n: usize, extra: usize, rng: &mut R) -> Option<Instance> {
    let (g, _) = random_planar_multigraph(n, extra, rng);
    let tree = random_spanning_tree(&g, rng);
    let space = g.edge_space();
    let mut s = Digraph::new(n);
    s.reserve_ids(space);
    let mut t = Digraph::new(n);
    for (id, e) in g.edges() {
        if tree.contains(id) {
            s.insert_edge(id, e.tail, e.head);
        } else if rng.gen_bool(0.5) {
            t.insert_edge(id, e.tail, e.head);
        } else {
            t.insert_edge(id, e.head, e.tail);
        }
    }
    t.reserve_ids(space);
    if outset_bias(&t).first_below_cut_bound(&s, 2).is_some() {
        return None;
    }
    let inst = Instance::from_graphs(&s, &t, false).ok()?;
    let emb = embed(&inst.union_undirected()).ok()?;
    inst.with_embedding(emb).ok()
}

/// Which engine a random partition instance targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartitionKind {
    Caterpillar,
    Planar,
}

/// A fully directed instance with `S⁻` connected and every directed cut
/// holding at least two S-edges. Caterpillar instances have `S⁻` a
/// caterpillar subdivision plus a few edges parallel to it; planar ones
/// carry an embedding.
pub fn partition_instance<R: Rng>(kind: PartitionKind, n: usize, rng: &mut R) -> Option<Instance> {
    let (s, t) = match kind {
        PartitionKind::Caterpillar => {
            let edges = random_tree(n, rng);
            let tree = Digraph::from_edges(n, &edges);
            is_caterpillar_subdivision(&tree).ok()??;
            let mut s = Digraph::new(n);
            for &(a, b) in &edges {
                orient_push(&mut s, a, b, rng);
            }
            for _ in 0..rng.gen_range(0..=2) {
                let &(a, b) = edges.choose(rng)?;
                orient_push(&mut s, a, b, rng);
            }
            let mut t = Digraph::new(n);
            t.reserve_ids(s.edge_space());
            let mut next = s.edge_space();
            for _ in 0..rng.gen_range(0..=2 * n) {
                let u = rng.gen_range(0..n);
                let v = rng.gen_range(0..n);
                if u != v {
                    t.insert_edge(next, u, v);
                    next += 1;
                }
            }
            (s, t)
        }
        PartitionKind::Planar => {
            let (g, _) = random_planar_multigraph(n, rng.gen_range(0..=2 * n), rng);
            let tree = random_spanning_tree(&g, rng);
            let mut s = Digraph::new(n);
            let mut t = Digraph::new(n);
            for (id, e) in g.edges() {
                let (a, b) = if rng.gen_bool(0.5) { (e.tail, e.head) } else { (e.head, e.tail) };
                if tree.contains(id) || rng.gen_bool(0.3) {
                    s.insert_edge(id, a, b);
                } else {
                    t.insert_edge(id, a, b);
                }
            }
            s.reserve_ids(g.edge_space());
            t.reserve_ids(g.edge_space());
            (s, t)
        }
    };
    let inst = Instance::from_graphs(&s, &t, true).ok()?;
    if !check_cut_condition(&inst, 2).ok()?.is_ok() {
        return None;
    }
    match kind {
        PartitionKind::Caterpillar => Some(inst),
        PartitionKind::Planar => {
            let emb = embed(&inst.union_undirected()).ok()?;
            inst.with_embedding(emb).ok()
        }
    }
}

fn orient_push<R: Rng>(g: &mut Digraph, a: VertexId, b: VertexId, rng: &mut R) {
    if rng.gen_bool(0.5) {
        g.push_edge(a, b);
    } else {
        g.push_edge(b, a);
    }
}

/// Draws until `f` yields an instance or `attempts` run out.
pub fn retry<T, R: Rng>(attempts: usize, rng: &mut R, mut f: impl FnMut(&mut R) -> Option<T>) -> Option<T> {
    (0..attempts).find_map(|_| f(rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_reproducible() {
        let a = planar_orient_case(6, 6, 50, &mut rng(3)).map(|c| (c.s, c.t, c.root, c.wedge));
        let b = planar_orient_case(6, 6, 50, &mut rng(3)).map(|c| (c.s, c.t, c.root, c.wedge));
        assert_eq!(a, b);
    }

    #[test]
    fn planar_multigraphs_are_planar_and_dense() {
        let mut r = rng(11);
        for n in 1..8 {
            let (g, emb) = random_planar_multigraph(n, 3 * n, &mut r);
            assert!(g.is_connected());
            assert_eq!(g.edge_count(), g.edge_space());
            assert!(emb.matches_graph(&g));
            emb.require_sphere().unwrap();
        }
    }
}
