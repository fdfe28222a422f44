//! Splitting `E(S)` into two dijoins of `S ∪ T`.
//!
//! [`partition_two_dijoins`] reduces the instance by contraction until `S⁻`
//! is a tree whose every T-outset has two S-edges across it, asks an
//! orientation engine for a directing `S'`, and splits `S` by whether each
//! edge kept its head.

use std::ops::ControlFlow;

use serde::Serialize;

use crate::bias::outset_bias;
use crate::bitset::{EdgeSet, VertexSet};
use crate::caterpillar::{is_caterpillar_subdivision, orient_caterpillar_subdivision};
use crate::digraph::{Digraph, EdgeId, UnionFind, VertexId};
use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::guard;
use crate::instance::Instance;
use crate::planar::solve_orientthm_planar;

/// Whether every outset of `S ∪ T` has at least `k` S-edges leaving it.
/// On failure returns the first outset found with fewer.
pub fn check_cut_condition(inst: &Instance, k: usize) -> Result<std::result::Result<(), VertexSet>> {
    if !inst.is_fully_directed() {
        return Err(Error::Precondition("cut condition needs every S-edge directed".into()));
    }
    let g = inst.union_graph();
    Ok(cut_condition(&g, &inst.s_ids(), k))
}

fn cut_condition(g: &Digraph, s_ids: &EdgeSet, k: usize) -> std::result::Result<(), VertexSet> {
    match g.visit_outsets(|x| {
        if g.out_cut(&x).intersection(s_ids).len() < k {
            ControlFlow::Break(x)
        } else {
            ControlFlow::Continue(())
        }
    }) {
        ControlFlow::Break(x) => Err(x),
        ControlFlow::Continue(()) => Ok(()),
    }
}

/// Which orientation engine handles the reduced instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Caterpillar,
    Planar,
}

/// Engine selection for [`partition_with`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum EngineChoice {
    /// Caterpillar subdivision first, then planar.
    #[default]
    Auto,
    Only(Engine),
}

/// One reduction performed by the pipeline. Vertex sets are in the
/// numbering of the instance at that step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "snake_case")]
pub enum Step {
    /// A cycle of `S⁻` was contracted; `forward` edges went to A.
    ContractCycle { edges: Vec<EdgeId>, forward: Vec<EdgeId> },
    /// S-edges that became loops, assigned to A.
    DropLoops { edges: Vec<EdgeId> },
    /// The only S-edge across a T-outset, entering it, was contracted and
    /// assigned to A.
    ContractCut { edge: EdgeId, outset: Vec<VertexId> },
    /// An engine directed the remaining tree.
    Orient { engine: Engine, vertices: usize, tree_edges: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionResult {
    pub a: EdgeSet,
    pub b: EdgeSet,
    pub trace: Vec<Step>,
}

impl PartitionResult {
    /// `A`, `B` partition `E(S)` and both meet every directed cut, by the
    /// strong-connectivity test and by the outset scan.
    pub fn is_valid_for(&self, inst: &Instance) -> bool {
        let g = inst.union_graph();
        let s = inst.s_ids();
        self.a.is_disjoint(&self.b)
            && self.a.union(&self.b) == s
            && [&self.a, &self.b]
                .into_iter()
                .all(|x| g.is_dijoin(x) && g.is_dijoin_definitional(x))
    }
}

/// Working state: the union digraph with original edge ids, which of them
/// are S-edges, and the embedding if any (end 0 at each tail).
#[derive(Clone, Debug)]
struct Work {
    g: Digraph,
    s_ids: EdgeSet,
    emb: Option<RotationSystem>,
}

impl Work {
    fn s(&self) -> Digraph {
        self.g.restrict(&self.s_ids)
    }

    fn t(&self) -> Digraph {
        self.g.restrict(&self.s_ids.complement())
    }

    /// Contracts `f`; returns the S-edges outside `f` that became loops.
    fn contract(&self, f: &EdgeSet) -> (Work, Vec<EdgeId>) {
        let c = self.g.contract(f);
        let loops = self
            .s_ids
            .iter()
            .filter(|&id| !f.contains(id) && c.edge_map[id].is_none())
            .collect();
        let s_ids = self.s_ids.intersection(&c.graph.edge_ids());
        let emb = self.emb.as_ref().map(|e| {
            let (emb, map) = e.contract(f);
            debug_assert_eq!(map, c.vertex_map);
            emb
        });
        (
            Work {
                g: c.graph,
                s_ids,
                emb,
            },
            loops,
        )
    }
}

/// [`partition_with`] with automatic engine dispatch.
pub fn partition_two_dijoins(inst: &Instance) -> Result<PartitionResult> {
    partition_with(inst, EngineChoice::Auto)
}

/// Partitions `E(S)` into two dijoins of `S ∪ T`.
///
/// Requires every S-edge directed, every directed cut to hold two S-edges,
/// `S⁻` connected, and, once cycles of `S⁻` are contracted, either a
/// caterpillar subdivision or an embedding.
pub fn partition_with(inst: &Instance, engine: EngineChoice) -> Result<PartitionResult> {
    if let Err(x) = check_cut_condition(inst, 2)? {
        return Err(Error::Hypothesis {
            reason: "directed cut with fewer than two S-edges".into(),
            witness: x,
        });
    }
    if !inst.s_undirected().is_connected() {
        return Err(Error::Precondition("S is not connected".into()));
    }
    let g = inst.union_graph();
    let emb = match inst.embedding() {
        Some(e) => Some(e.with_tails(&g)?),
        None => None,
    };
    let work = Work {
        g,
        s_ids: inst.s_ids(),
        emb,
    };
    let mut trace = Vec::new();
    let space = inst.edge_space();
    let mut a = EdgeSet::empty(space);
    let mut b = EdgeSet::empty(space);
    reduce(work, engine, &mut a, &mut b, &mut trace)?;
    let out = PartitionResult { a, b, trace };
    if !out.is_valid_for(inst) {
        return Err(Error::Internal("partition fails the dijoin check".into()));
    }
    Ok(out)
}

fn reduce(w: Work, engine: EngineChoice, a: &mut EdgeSet, b: &mut EdgeSet, trace: &mut Vec<Step>) -> Result<()> {
    let loops: Vec<EdgeId> = w
        .s_ids
        .iter()
        .filter(|&id| w.g.edge(id).is_some_and(|e| e.is_loop()))
        .collect();
    if !loops.is_empty() {
        let f = EdgeSet::from_iter(w.g.edge_space(), loops.iter().copied());
        for &id in &loops {
            a.insert(id);
        }
        trace.push(Step::DropLoops { edges: loops });
        let (next, more) = w.contract(&f);
        debug_assert!(more.is_empty());
        return reduce(next, engine, a, b, trace);
    }

    if let Some(cycle) = first_cycle(&w.g, &w.s_ids) {
        let space = w.g.edge_space();
        let f = EdgeSet::from_iter(space, cycle.iter().map(|c| c.0));
        let forward: Vec<EdgeId> = cycle.iter().filter(|c| c.1).map(|c| c.0).collect();
        for &(id, fwd) in &cycle {
            if fwd {
                a.insert(id);
            } else {
                b.insert(id);
            }
        }
        trace.push(Step::ContractCycle {
            edges: cycle.iter().map(|c| c.0).collect(),
            forward,
        });
        let (next, loops) = w.contract(&f);
        if !loops.is_empty() {
            for &id in &loops {
                a.insert(id);
            }
            trace.push(Step::DropLoops { edges: loops });
        }
        assert_reduced(&next)?;
        return reduce(next, engine, a, b, trace);
    }

    // S⁻ is a spanning tree from here on.
    let s = w.s();
    let t = w.t();
    let single = t.visit_outsets(|x| {
        let cut = s.und_cut(&x);
        if cut.len() <= 1 {
            ControlFlow::Break((x, cut))
        } else {
            ControlFlow::Continue(())
        }
    });
    if let ControlFlow::Break((x, cut)) = single {
        let Some(id) = cut.first() else {
            return Err(Error::Hypothesis {
                reason: "outset of S ∪ T with no S-edge".into(),
                witness: x,
            });
        };
        let e = s.edge(id).unwrap();
        if x.contains(e.tail) {
            return Err(Error::Hypothesis {
                reason: "directed cut with one S-edge".into(),
                witness: x,
            });
        }
        a.insert(id);
        trace.push(Step::ContractCut {
            edge: id,
            outset: x.to_vec(),
        });
        let (next, loops) = w.contract(&EdgeSet::from_iter(w.g.edge_space(), [id]));
        debug_assert!(loops.is_empty());
        assert_reduced(&next)?;
        return reduce(next, engine, a, b, trace);
    }

    if s.n() == 1 {
        return Ok(());
    }
    let bias = outset_bias(&t);
    let use_cat = matches!(engine, EngineChoice::Auto | EngineChoice::Only(Engine::Caterpillar));
    let use_planar = matches!(engine, EngineChoice::Auto | EngineChoice::Only(Engine::Planar));
    let (which, d) = if use_cat && is_caterpillar_subdivision(&s)?.is_some() {
        (Engine::Caterpillar, orient_caterpillar_subdivision(&s, &bias)?)
    } else if let (true, Some(emb)) = (use_planar, w.emb.as_ref()) {
        (Engine::Planar, solve_orientthm_planar(&s, &t, emb)?)
    } else {
        return Err(Error::NoEngine(
            "reduced S is not a caterpillar subdivision and no embedding is available".into(),
        ));
    };
    trace.push(Step::Orient {
        engine: which,
        vertices: s.n(),
        tree_edges: s.edge_count(),
    });
    for (id, e) in s.edges() {
        if d.head(id) == Some(e.head) {
            a.insert(id);
        } else {
            b.insert(id);
        }
    }
    Ok(())
}

fn assert_reduced(w: &Work) -> Result<()> {
    if let Err(x) = cut_condition(&w.g, &w.s_ids, 2) {
        return Err(Error::Internal(format!(
            "cut condition lost after contraction, witness {x}"
        )));
    }
    Ok(())
}

/// A cycle of the underlying graph of the S-edges: the first edge (in id
/// order) closing a cycle with earlier edges, plus the forest path. Each
/// entry says whether the edge is traversed tail to head when the cycle is
/// walked starting along its lowest-id edge.
fn first_cycle(g: &Digraph, s_ids: &EdgeSet) -> Option<Vec<(EdgeId, bool)>> {
    let n = g.n();
    let mut uf = UnionFind::new(n);
    let mut adj: Vec<Vec<(EdgeId, VertexId)>> = vec![Vec::new(); n];
    for id in s_ids.iter() {
        let e = g.edge(id)?;
        if uf.union(e.tail, e.head) {
            adj[e.tail].push((id, e.head));
            adj[e.head].push((id, e.tail));
            continue;
        }
        // Forest path from head back to tail.
        let mut prev: Vec<Option<(EdgeId, VertexId)>> = vec![None; n];
        let mut seen = VertexSet::empty(n).with(e.head);
        let mut queue = std::collections::VecDeque::from([e.head]);
        while let Some(x) = queue.pop_front() {
            for &(f, y) in &adj[x] {
                if !seen.contains(y) {
                    seen.insert(y);
                    prev[y] = Some((f, x));
                    queue.push_back(y);
                }
            }
        }
        let mut walk = vec![(id, e.tail, e.head)];
        let mut back = Vec::new();
        let mut x = e.tail;
        while x != e.head {
            let (f, p) = prev[x]?;
            back.push((f, p, x));
            x = p;
        }
        back.reverse();
        walk.extend(back);
        // Rotate so the lowest id leads, and reverse if it runs backwards.
        let lead = walk.iter().enumerate().min_by_key(|(_, w)| w.0).unwrap().0;
        walk.rotate_left(lead);
        let fwd = |(f, from, to): (EdgeId, VertexId, VertexId)| {
            let arc = g.edge(f).unwrap();
            arc.tail == from && arc.head == to
        };
        let flip = !fwd(walk[0]);
        return Some(walk.into_iter().map(|w| (w.0, fwd(w) != flip)).collect());
    }
    None
}

/// How [`brute_force_partition`] scans.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteMode {
    /// Every bipartition `(A, E(S) ∖ A)`.
    Partition,
    /// Any two disjoint dijoins contained in `E(S)`, searched over the
    /// inclusion-minimal dijoins.
    DisjointPair,
}

/// Exhaustive search for two disjoint dijoins inside `E(S)`.
pub fn brute_force_partition(inst: &Instance, mode: BruteMode) -> Result<Option<PartitionResult>> {
    if !inst.is_fully_directed() {
        return Err(Error::Precondition("partition search needs every S-edge directed".into()));
    }
    let s_list: Vec<EdgeId> = inst.s_ids().iter().collect();
    let m = s_list.len();
    guard::check("S-edges for partition scan", m, guard::cap(guard::PARTITION_EDGES).min(30))?;
    let g = inst.union_graph();
    let space = g.edge_space();
    let subset = |mask: u64| {
        EdgeSet::from_iter(space, (0..m).filter(|&i| mask >> i & 1 == 1).map(|i| s_list[i]))
    };
    let all = (1u64 << m) - 1;
    match mode {
        BruteMode::Partition => {
            for mask in 0..=all {
                let (a, b) = (subset(mask), subset(all & !mask));
                if g.is_dijoin_definitional(&a) && g.is_dijoin_definitional(&b) {
                    return Ok(Some(PartitionResult {
                        a,
                        b,
                        trace: Vec::new(),
                    }));
                }
            }
            Ok(None)
        }
        BruteMode::DisjointPair => {
            let cuts = g.minimal_directed_cuts();
            let hits = |x: &EdgeSet| cuts.iter().all(|c| c.intersects(x));
            let dijoin_masks: Vec<u64> = (0..=all).filter(|&mask| hits(&subset(mask))).collect();
            let minimal: Vec<u64> = dijoin_masks
                .iter()
                .copied()
                .filter(|&m1| (0..m).all(|i| m1 >> i & 1 == 0 || !hits(&subset(m1 & !(1 << i)))))
                .collect();
            for (i, &x) in minimal.iter().enumerate() {
                for &y in &minimal[i..] {
                    if x & y == 0 {
                        return Ok(Some(PartitionResult {
                            a: subset(x),
                            b: subset(y),
                            trace: Vec::new(),
                        }));
                    }
                }
            }
            Ok(None)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{partition_instance, rng, PartitionKind};

    fn inst(n: usize, s: &[(usize, usize)], t: &[(usize, usize)]) -> Instance {
        let sg = Digraph::from_edges(n, s);
        let mut tg = Digraph::new(n);
        for (i, &(a, b)) in t.iter().enumerate() {
            tg.insert_edge(s.len() + i, a, b);
        }
        Instance::from_graphs(&sg, &tg, true).unwrap()
    }

    #[test]
    fn cut_condition_examples() {
        let one = inst(2, &[(0, 1)], &[]);
        assert_eq!(check_cut_condition(&one, 2).unwrap(), Err(VertexSet::from_iter(2, [0])));
        let sc = inst(3, &[(0, 1)], &[(1, 2), (2, 0)]);
        assert!(check_cut_condition(&sc, 5).unwrap().is_ok());
    }

    #[test]
    fn two_cycle_partitions() {
        let i = inst(2, &[(0, 1), (1, 0)], &[]);
        let p = partition_two_dijoins(&i).unwrap();
        // Both edges run the same way around the cycle.
        assert_eq!(p.a.to_vec(), vec![0, 1]);
        assert!(p.b.is_empty());
        assert!(p.is_valid_for(&i));
        assert!(matches!(p.trace[0], Step::ContractCycle { .. }));
        assert!(brute_force_partition(&i, BruteMode::Partition).unwrap().is_some());
        assert!(brute_force_partition(&i, BruteMode::DisjointPair).unwrap().is_some());
    }

    #[test]
    fn single_edge_cut_has_no_partition() {
        let i = inst(2, &[(0, 1)], &[]);
        assert!(brute_force_partition(&i, BruteMode::Partition).unwrap().is_none());
        assert!(matches!(partition_two_dijoins(&i), Err(Error::Hypothesis { .. })));
    }

    #[test]
    fn path_with_back_arcs() {
        // S: 0->1->2 and 2->1, 1->0 as a bidirected path; T empty.
        let i = inst(3, &[(0, 1), (1, 2), (2, 1), (1, 0)], &[]);
        let p = partition_two_dijoins(&i).unwrap();
        assert!(p.is_valid_for(&i));
    }

    #[test]
    fn middle_case_contracts_the_entering_edge() {
        // T: 1 -> 0; S path 0 - 1 - 2 with the cut of {1} outgoing twice
        // after doubling 1 - 2.
        let i = inst(3, &[(0, 1), (1, 2), (2, 1)], &[(1, 0), (0, 2)]);
        if check_cut_condition(&i, 2).unwrap().is_ok() {
            let p = partition_two_dijoins(&i).unwrap();
            assert!(p.is_valid_for(&i));
        }
    }

    #[test]
    fn random_instances_agree_with_brute_force() {
        let mut r = rng(5);
        let mut done = 0;
        for _ in 0..400 {
            let kind = if done % 2 == 0 { PartitionKind::Caterpillar } else { PartitionKind::Planar };
            let Some(i) = partition_instance(kind, 6, &mut r) else { continue };
            if i.s_ids().len() > 12 {
                continue;
            }
            let p = partition_two_dijoins(&i).unwrap();
            assert!(p.is_valid_for(&i));
            assert!(brute_force_partition(&i, BruteMode::Partition).unwrap().is_some());
            done += 1;
        }
        assert!(done > 20, "only {done} instances");
    }
}
