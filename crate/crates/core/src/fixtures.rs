//! Built-in instances and their machine-checked expectations.
//!
//! Vertices `v1, v2, ...` are numbered from 0. S-edges take the first ids,
//! T-edges follow.

use crate::bias::{is_bias, outset_bias, valid_directing, Bias};
use crate::bitset::{EdgeSet, VertexSet};
use crate::digraph::{vset, Digraph, Directing, VertexId};
use crate::embedding::embed;
use crate::error::{Error, Result};
use crate::instance::{Instance, SEdge, TEdge};
use crate::planar::{brute_force_bi_acyclic, check_planarthm_hypothesis};
use crate::solver::{brute_force_partition, check_cut_condition, BruteMode};
use crate::tree::{is_directed_path, RootedTree};

pub const NAMES: [&str; 5] = ["fig3", "fig4", "wedge5", "forest6", "schrijver"];

/// Vertices of wedge5 at which every valid directing heads some S-edge.
pub const WEDGE5_BAD_ROOTS: [VertexId; 1] = [2];

fn build(n: usize, s: &[(usize, usize)], t: &[(usize, usize)], s_heads: Option<&[usize]>) -> Instance {
    let s_edges = s
        .iter()
        .enumerate()
        .map(|(i, &(u, v))| SEdge {
            id: i,
            u,
            v,
            head: s_heads.map(|h| h[i]),
        })
        .collect();
    let t_edges = t
        .iter()
        .enumerate()
        .map(|(i, &(tail, head))| TEdge {
            id: s.len() + i,
            tail,
            head,
        })
        .collect();
    Instance::new(n, s_edges, t_edges).expect("fixture is well formed")
}

fn one_based(pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    pairs.iter().map(|&(a, b)| (a - 1, b - 1)).collect()
}

/// A star tree at `v1` with each spoke subdivided, and S-edges that make
/// the acyclic directing impossible without planarity.
pub fn fig3() -> Instance {
    build(
        7,
        &one_based(&[(1, 5), (1, 6), (1, 7), (2, 6), (2, 7), (3, 5), (3, 7), (4, 5), (4, 6)]),
        &one_based(&[(1, 2), (1, 3), (1, 4), (5, 2), (6, 3), (7, 4)]),
        None,
    )
}

/// Same tree as [`fig3`] with three S-edges; no directing of `S` works for
/// every admissible directing of the tree.
pub fn fig4() -> Instance {
    build(
        7,
        &one_based(&[(2, 6), (3, 7), (4, 5)]),
        &one_based(&[(1, 2), (1, 3), (1, 4), (5, 2), (6, 3), (7, 4)]),
        None,
    )
}

/// `K5` minus an edge: an alternating path as `T` and five S-edges.
pub fn wedge5() -> Instance {
    let inst = build(
        5,
        &one_based(&[(1, 3), (1, 4), (2, 4), (2, 5), (3, 5)]),
        &one_based(&[(1, 2), (3, 2), (3, 4), (5, 4)]),
        None,
    );
    let emb = embed(&inst.union_undirected()).expect("wedge5 is planar");
    inst.with_embedding(emb).expect("embedding matches")
}

/// Three disjoint edges with a four-member bias that no directing meets.
pub fn forest6() -> Instance {
    build(6, &one_based(&[(1, 2), (3, 4), (5, 6)]), &[], None)
        .with_bias(forest6_bias())
        .expect("bias width")
}

pub fn forest6_bias() -> Vec<VertexSet> {
    [[1, 3, 5], [1, 4, 6], [2, 3, 6], [2, 4, 5]]
        .iter()
        .map(|m| vset(6, &m.iter().map(|v| v - 1).collect::<Vec<_>>()))
        .collect()
}

/// Three directed paths of length three and twelve T-arcs, invariant under
/// the shift `v -> v + 4 (mod 12)`: every directed cut has two S-edges, yet
/// `S` holds no two disjoint dijoins. The graph is planar.
pub fn schrijver() -> Instance {
    let mut s = Vec::new();
    let mut t = Vec::new();
    for p in 0..3 {
        let b = 4 * p;
        s.extend([(b, b + 1), (b + 2, b + 1), (b + 2, b + 3)]);
        t.extend([(b, (b + 9) % 12), ((b + 10) % 12, b), ((b + 11) % 12, b + 1), (b + 2, (b + 11) % 12)]);
    }
    let heads: Vec<usize> = s.iter().map(|e| e.1).collect();
    let inst = build(12, &s, &t, Some(&heads));
    let emb = embed(&inst.union_undirected()).expect("schrijver is planar");
    inst.with_embedding(emb).expect("embedding matches")
}

pub fn by_name(name: &str) -> Option<Instance> {
    Some(match name {
        "fig3" => fig3(),
        "fig4" => fig4(),
        "wedge5" => wedge5(),
        "forest6" => forest6(),
        "schrijver" => schrijver(),
        _ => return None,
    })
}

/// One named expectation and whether it held.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

fn check(name: &str, ok: bool) -> Check {
    Check {
        name: name.to_string(),
        ok,
    }
}

/// Runs the expectations that ship with a fixture.
pub fn check_fixture(name: &str) -> Result<Vec<Check>> {
    let inst = by_name(name).ok_or_else(|| Error::Precondition(format!("unknown fixture {name}")))?;
    match name {
        "fig3" => {
            let (s, t) = (inst.s_undirected(), inst.t_graph());
            Ok(vec![
                check("hypothesis holds", check_planarthm_hypothesis(&s, &t)?),
                check("not planar", embed(&inst.union_undirected()).is_err()),
                check("no directing is bi-acyclic", brute_force_bi_acyclic(&s, &t, None)?.is_none()),
            ])
        }
        "fig4" => {
            let (s, t) = (inst.s_undirected(), inst.t_graph());
            Ok(vec![
                check("planar", embed(&inst.union_undirected()).is_ok()),
                check("no universal directing", universal_directing(&s, &t)?.is_none()),
            ])
        }
        "wedge5" => {
            let (s, t) = (inst.s_undirected(), inst.t_graph());
            let g = inst.union_undirected();
            let simple = (0..5).all(|a| (0..5).all(|b| a == b || g.edges().filter(|(_, e)| e.has_end(a) && e.has_end(b)).count() <= 1));
            let bad = wedge5_bad_roots(&s, &t)?;
            Ok(vec![
                check("K5 minus an edge", g.edge_count() == 9 && simple),
                check("planar", inst.embedding().is_some()),
                check("hypothesis holds", check_planarthm_hypothesis(&s, &t)?),
                check("a bi-acyclic directing exists", brute_force_bi_acyclic(&s, &t, None)?.is_some()),
                check("some vertex cannot avoid S-heads", !bad.is_empty()),
                check("bad vertices match the recorded set", bad == WEDGE5_BAD_ROOTS),
            ])
        }
        "forest6" => {
            let s = inst.s_undirected();
            let sets = forest6_bias();
            let bias = Bias::new(6, sets.clone())?;
            let all_fail = all_directings(&s).iter().all(|d| !valid_directing(&s, &bias, d));
            Ok(vec![
                check("is a bias", is_bias(&s, &sets)?),
                check("every member has three S-edges across", sets.iter().all(|x| s.und_cut(x).len() == 3)),
                check("all eight directings fail", all_fail),
            ])
        }
        "schrijver" => {
            let s = inst.s_undirected();
            Ok(vec![
                check("cut condition at k=2", check_cut_condition(&inst, 2)?.is_ok()),
                check(
                    "no two disjoint dijoins inside S",
                    brute_force_partition(&inst, BruteMode::DisjointPair)?.is_none(),
                ),
                check("S is three disjoint paths of length three", is_three_paths_of_length_three(&s)),
            ])
        }
        _ => unreachable!(),
    }
}

/// Every directing of `s`, in scan order.
pub fn all_directings(s: &Digraph) -> Vec<Directing> {
    let ids: Vec<_> = s.edges().collect();
    (0..1u64 << ids.len())
        .map(|rev| {
            ids.iter()
                .enumerate()
                .map(|(i, &(id, e))| (id, if rev >> i & 1 == 1 { e.reversed() } else { e }))
                .collect()
        })
        .collect()
}

/// Roots `t` of wedge5 where no bi-acyclic directing tails every S-edge at
/// `t`.
pub fn wedge5_bad_roots(s: &Digraph, t: &Digraph) -> Result<Vec<VertexId>> {
    let mut bad = Vec::new();
    for v in 0..s.n() {
        let w = EdgeSet::from_iter(s.edge_space(), s.incident(v).into_iter().map(|p| p.0));
        if brute_force_bi_acyclic(s, t, Some((v, &w)))?.is_none() {
            bad.push(v);
        }
    }
    Ok(bad)
}

/// Directings of the tree `t` (same ids) under which no S-edge joins the
/// ends of a directed path.
pub fn admissible_tree_directings(s: &Digraph, t: &Digraph) -> Vec<Digraph> {
    all_directings(t)
        .into_iter()
        .map(|d| d.apply(t))
        .filter(|tt| {
            s.edges().all(|(_, e)| {
                let p = RootedTree::new(tt, e.tail).path(e.tail, e.head);
                !is_directed_path(tt, &p)
            })
        })
        .collect()
}

/// A directing of `s` acyclic together with every admissible directing of
/// the tree `t`, if one exists.
pub fn universal_directing(s: &Digraph, t: &Digraph) -> Result<Option<Directing>> {
    crate::guard::check("|E(S)| for directing scan", s.edge_count(), crate::guard::cap(crate::guard::ORIENT_EDGES))?;
    let trees = admissible_tree_directings(s, t);
    Ok(all_directings(s).into_iter().find(|d| {
        let sd = d.apply(s);
        trees.iter().all(|tt| sd.union(tt).map(|g| g.is_acyclic()).unwrap_or(false))
    }))
}

/// For each directing of `s`, an admissible tree directing that closes a
/// directed cycle with it, if any.
pub fn universal_witnesses(s: &Digraph, t: &Digraph) -> Vec<(Directing, Option<Digraph>)> {
    let trees = admissible_tree_directings(s, t);
    all_directings(s)
        .into_iter()
        .map(|d| {
            let sd = d.apply(s);
            let w = trees
                .iter()
                .find(|tt| !sd.union(tt).map(|g| g.is_acyclic()).unwrap_or(true))
                .cloned();
            (d, w)
        })
        .collect()
}

fn is_three_paths_of_length_three(s: &Digraph) -> bool {
    if s.n() != 12 || s.edge_count() != 9 {
        return false;
    }
    let comp = components(s);
    let k = comp.iter().max().map_or(0, |m| m + 1);
    if k != 3 {
        return false;
    }
    (0..k).all(|c| {
        let vs: Vec<_> = (0..s.n()).filter(|&v| comp[v] == c).collect();
        let ends = vs.iter().filter(|&&v| s.degree(v) == 1).count();
        vs.len() == 4 && ends == 2 && vs.iter().all(|&v| s.degree(v) <= 2)
    })
}

fn components(g: &Digraph) -> Vec<usize> {
    let adj = g.und_adjacency();
    let mut comp = vec![usize::MAX; g.n()];
    let mut k = 0;
    for r in 0..g.n() {
        if comp[r] != usize::MAX {
            continue;
        }
        comp[r] = k;
        let mut stack = vec![r];
        while let Some(x) = stack.pop() {
            for &(_, y) in &adj[x] {
                if comp[y] == usize::MAX {
                    comp[y] = k;
                    stack.push(y);
                }
            }
        }
        k += 1;
    }
    comp
}

/// `T`'s outsets as a bias over `S`, or the stored bias if the instance
/// carries one.
pub fn instance_bias(inst: &Instance) -> Result<Bias> {
    match inst.bias() {
        Some(sets) => Bias::new(inst.vertices(), sets.to_vec()),
        None => Ok(outset_bias(&inst.t_graph())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_pass() {
        for name in ["fig3", "wedge5", "forest6", "schrijver"] {
            for c in check_fixture(name).unwrap() {
                assert!(c.ok, "{name}: {}", c.name);
            }
        }
    }

    #[test]
    fn fig4_edge_lists_admit_universal_directings() {
        // Only the two cyclic directings of the three S-edges close a cycle
        // with some admissible tree directing.
        let i = fig4();
        let (s, t) = (i.s_undirected(), i.t_graph());
        let w = universal_witnesses(&s, &t);
        assert_eq!(w.len(), 8);
        assert_eq!(w.iter().filter(|(_, x)| x.is_none()).count(), 6);
        assert_eq!(admissible_tree_directings(&s, &t).len(), 28);
        for (d, x) in &w {
            if let Some(tt) = x {
                assert!(!d.apply(&s).union(tt).unwrap().is_acyclic());
            }
        }
    }

    #[test]
    fn schrijver_is_an_orientation_counterexample_too() {
        let i = schrijver();
        let s = i.s_undirected();
        let bias = outset_bias(&i.t_graph());
        assert!(bias.first_below_cut_bound(&s, 2).is_none());
        assert!(all_directings(&s).iter().all(|d| !valid_directing(&s, &bias, d)));
    }

    #[test]
    fn round_trip() {
        for name in NAMES {
            let i = by_name(name).unwrap();
            assert_eq!(Instance::from_json(&i.to_json()).unwrap(), i);
        }
    }
}
