//! Directed multigraphs, cuts, outsets, dijoins and contraction.
//!
//! A [`Digraph`] numbers its edges from a shared *id space*: edge ids are
//! unique and below [`Digraph::edge_space`], but a subgraph keeps the ids of
//! its parent, so `S`, `T` and `S ∪ T` of one instance can be compared
//! edge-for-edge. An undirected graph is a `Digraph` read through the
//! undirected accessors ([`Digraph::und_cut`], [`Digraph::neighbors`], ...).

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, EdgeSet, VertexSet};
use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Edge { tail, head }
    }

    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }

    pub fn reversed(&self) -> Self {
        Edge::new(self.head, self.tail)
    }

    /// The end other than `v`. For a loop this is `v` itself.
    pub fn other(&self, v: VertexId) -> VertexId {
        if self.tail == v {
            self.head
        } else {
            self.tail
        }
    }

    pub fn has_end(&self, v: VertexId) -> bool {
        self.tail == v || self.head == v
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Digraph {
    n: usize,
    slots: Vec<Option<Edge>>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            slots: Vec::new(),
        }
    }

    /// A digraph whose edge ids are the positions in `edges`.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Self {
        let mut g = Digraph::new(n);
        for &(t, h) in edges {
            g.push_edge(t, h);
        }
        g
    }

    /// Appends an edge with the next free id.
    pub fn push_edge(&mut self, tail: VertexId, head: VertexId) -> EdgeId {
        let id = self.slots.len();
        self.insert_edge(id, tail, head);
        id
    }

    /// Inserts an edge with an explicit id. Panics if the id is taken or an
    /// end is out of range.
    pub fn insert_edge(&mut self, id: EdgeId, tail: VertexId, head: VertexId) {
        assert!(
            tail < self.n && head < self.n,
            "edge {id} ({tail},{head}) out of range for {} vertices",
            self.n
        );
        if id >= self.slots.len() {
            self.slots.resize(id + 1, None);
        }
        assert!(self.slots[id].is_none(), "duplicate edge id {id}");
        self.slots[id] = Some(Edge::new(tail, head));
    }

    /// Widens the id space without adding edges.
    pub fn reserve_ids(&mut self, edge_space: usize) {
        if edge_space > self.slots.len() {
            self.slots.resize(edge_space, None);
        }
    }

    pub fn remove_edge(&mut self, id: EdgeId) -> Option<Edge> {
        self.slots.get_mut(id).and_then(Option::take)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// One more than the largest id that may be used; the width of every
    /// [`EdgeSet`] over this graph.
    #[inline]
    pub fn edge_space(&self) -> usize {
        self.slots.len()
    }

    pub fn edge_count(&self) -> usize {
        self.slots.iter().filter(|s| s.is_some()).count()
    }

    #[inline]
    pub fn edge(&self, id: EdgeId) -> Option<Edge> {
        self.slots.get(id).copied().flatten()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.slots
            .iter()
            .enumerate()
            .filter_map(|(i, s)| s.map(|e| (i, e)))
    }

    pub fn edge_ids(&self) -> EdgeSet {
        EdgeSet::from_iter(self.edge_space(), self.edges().map(|(i, _)| i))
    }

    pub fn empty_vertices(&self) -> VertexSet {
        VertexSet::empty(self.n)
    }

    pub fn empty_edges(&self) -> EdgeSet {
        EdgeSet::empty(self.edge_space())
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Subgraph on the same vertices keeping only the edges in `keep`.
    pub fn restrict(&self, keep: &EdgeSet) -> Digraph {
        let mut g = Digraph::new(self.n);
        g.reserve_ids(self.edge_space());
        for (id, e) in self.edges() {
            if keep.contains(id) {
                g.insert_edge(id, e.tail, e.head);
            }
        }
        g
    }

    /// Edge-disjoint union over the same vertex set.
    pub fn union(&self, other: &Digraph) -> Result<Digraph> {
        if self.n != other.n {
            return Err(Error::InvalidGraph(format!(
                "union of graphs on {} and {} vertices",
                self.n, other.n
            )));
        }
        let mut g = self.clone();
        g.reserve_ids(other.edge_space());
        for (id, e) in other.edges() {
            if g.edge(id).is_some() {
                return Err(Error::InvalidGraph(format!(
                    "edge id {id} present in both graphs"
                )));
            }
            g.insert_edge(id, e.tail, e.head);
        }
        Ok(g)
    }

    /// Reverses every edge.
    pub fn reverse(&self) -> Digraph {
        Digraph {
            n: self.n,
            slots: self.slots.iter().map(|s| s.map(|e| e.reversed())).collect(),
        }
    }

    /// Reverses the edges in `which`.
    pub fn reverse_edges(&self, which: &EdgeSet) -> Digraph {
        let mut g = self.clone();
        for id in which.iter() {
            if let Some(slot) = g.slots.get_mut(id) {
                *slot = slot.map(|e| e.reversed());
            }
        }
        g
    }

    /// Undirected degree; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges()
            .map(|(_, e)| (e.tail == v) as usize + (e.head == v) as usize)
            .sum()
    }

    /// Undirected incidences `(edge id, other end)` at `v`.
    pub fn incident(&self, v: VertexId) -> Vec<(EdgeId, VertexId)> {
        self.edges()
            .filter(|(_, e)| e.has_end(v))
            .map(|(id, e)| (id, e.other(v)))
            .collect()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.incident(v).into_iter().map(|(_, w)| w).collect()
    }

    /// Undirected adjacency lists `(edge, other end)` for every vertex.
    pub fn und_adjacency(&self) -> Vec<Vec<(EdgeId, VertexId)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (id, e) in self.edges() {
            adj[e.tail].push((id, e.head));
            if !e.is_loop() {
                adj[e.head].push((id, e.tail));
            }
        }
        adj
    }

    fn out_adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = vec![Vec::new(); self.n];
        for (_, e) in self.edges() {
            adj[e.tail].push(e.head);
        }
        adj
    }

    /// D⁺(X): edges with tail in `x` and head outside.
    pub fn out_cut(&self, x: &VertexSet) -> EdgeSet {
        let mut c = self.empty_edges();
        for (id, e) in self.edges() {
            if x.contains(e.tail) && !x.contains(e.head) {
                c.insert(id);
            }
        }
        c
    }

    /// D⁻(X): edges with head in `x` and tail outside.
    pub fn in_cut(&self, x: &VertexSet) -> EdgeSet {
        let mut c = self.empty_edges();
        for (id, e) in self.edges() {
            if x.contains(e.head) && !x.contains(e.tail) {
                c.insert(id);
            }
        }
        c
    }

    /// D(X): edges with exactly one end in `x`, ignoring direction.
    pub fn und_cut(&self, x: &VertexSet) -> EdgeSet {
        let mut c = self.empty_edges();
        for (id, e) in self.edges() {
            if x.contains(e.tail) != x.contains(e.head) {
                c.insert(id);
            }
        }
        c
    }

    /// D(A,B): edges with an end in A∖B and an end in B∖A.
    pub fn und_cut_between(&self, a: &VertexSet, b: &VertexSet) -> EdgeSet {
        let ab = a.difference(b);
        let ba = b.difference(a);
        let mut c = self.empty_edges();
        for (id, e) in self.edges() {
            if (ab.contains(e.tail) && ba.contains(e.head))
                || (ba.contains(e.tail) && ab.contains(e.head))
            {
                c.insert(id);
            }
        }
        c
    }

    /// Size of D(A,B) without materialising it.
    pub fn und_cut_between_len(&self, a: &VertexSet, b: &VertexSet) -> usize {
        let ab = a.difference(b);
        let ba = b.difference(a);
        self.edges()
            .filter(|(_, e)| {
                (ab.contains(e.tail) && ba.contains(e.head))
                    || (ba.contains(e.tail) && ab.contains(e.head))
            })
            .count()
    }

    /// X is an outset if it is a proper nonempty subset with D⁻(X) = ∅.
    pub fn is_outset(&self, x: &VertexSet) -> bool {
        x.is_proper_nonempty()
            && self
                .edges()
                .all(|(_, e)| !(x.contains(e.head) && !x.contains(e.tail)))
    }

    /// Strongly connected components, numbered in a topological order of the
    /// condensation (every edge between components goes from a lower to a
    /// higher number).
    pub fn strong_components(&self) -> Vec<usize> {
        // Kosaraju: finish order on G, then sweep the reverse graph.
        let out = self.out_adjacency();
        let mut inn = vec![Vec::new(); self.n];
        for (_, e) in self.edges() {
            inn[e.head].push(e.tail);
        }
        let mut seen = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![(s, 0usize)];
            while let Some((v, i)) = stack.last_mut() {
                if *i < out[*v].len() {
                    let w = out[*v][*i];
                    *i += 1;
                    if !seen[w] {
                        seen[w] = true;
                        stack.push((w, 0));
                    }
                } else {
                    order.push(*v);
                    stack.pop();
                }
            }
        }
        let mut comp = vec![usize::MAX; self.n];
        let mut next = 0;
        for &s in order.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            comp[s] = next;
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &u in &inn[v] {
                    if comp[u] == usize::MAX {
                        comp[u] = next;
                        stack.push(u);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    pub fn is_strongly_connected(&self) -> bool {
        self.n <= 1 || self.strong_components().iter().all(|&c| c == 0)
    }

    /// Weak connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let adj = self.und_adjacency();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(_, w) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    /// No directed cycle; a loop is a cycle.
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n];
        for (_, e) in self.edges() {
            indeg[e.head] += 1;
        }
        let out = self.out_adjacency();
        let mut stack: Vec<_> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut removed = 0;
        while let Some(v) = stack.pop() {
            removed += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        removed == self.n
    }

    /// Visits every outset exactly once, as the nonempty proper ideals of the
    /// condensation: unions of strong components closed under predecessors.
    pub fn visit_outsets<B>(
        &self,
        mut f: impl FnMut(VertexSet) -> ControlFlow<B>,
    ) -> ControlFlow<B> {
        let comp = self.strong_components();
        let k = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut members = vec![VertexSet::empty(self.n); k];
        for (v, &c) in comp.iter().enumerate() {
            members[c].insert(v);
        }
        let mut preds = vec![0u128; k];
        for (_, e) in self.edges() {
            let (a, b) = (comp[e.tail], comp[e.head]);
            if a != b {
                preds[b] |= 1u128 << a;
            }
        }
        // Depth-first over components in topological order: a component may
        // be taken only if all its predecessors were.
        fn rec<B>(
            i: usize,
            k: usize,
            taken: u128,
            set: VertexSet,
            preds: &[u128],
            members: &[VertexSet],
            f: &mut impl FnMut(VertexSet) -> ControlFlow<B>,
        ) -> ControlFlow<B> {
            if i == k {
                if set.is_proper_nonempty() {
                    return f(set);
                }
                return ControlFlow::Continue(());
            }
            rec(i + 1, k, taken, set, preds, members, f)?;
            if preds[i] & !taken == 0 {
                rec(
                    i + 1,
                    k,
                    taken | (1u128 << i),
                    set.union(&members[i]),
                    preds,
                    members,
                    f,
                )?;
            }
            ControlFlow::Continue(())
        }
        rec(0, k, 0, VertexSet::empty(self.n), &preds, &members, &mut f)
    }

    /// All outsets, via condensation ideals. The output may be exponential
    /// in the number of strong components.
    pub fn outsets(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let _ = self.visit_outsets::<()>(|x| {
            out.push(x);
            ControlFlow::Continue(())
        });
        out.sort();
        out
    }

    /// All outsets by scanning every subset. Reference implementation for
    /// tests; refuses more than 20 vertices.
    pub fn outsets_bruteforce(&self) -> Result<Vec<VertexSet>> {
        if self.n > 20 {
            return Err(Error::TooLarge {
                what: "vertex count for subset scan",
                size: self.n,
                limit: 20,
            });
        }
        let mut out = Vec::new();
        for bits in 0..(1u128 << self.n) {
            let x = VertexSet::from_bits(self.n, bits);
            if self.is_outset(&x) {
                out.push(x);
            }
        }
        out.sort();
        Ok(out)
    }

    /// Inclusion-minimal directed cuts D⁺(X), deduplicated and sorted.
    pub fn minimal_directed_cuts(&self) -> Vec<EdgeSet> {
        let mut cuts: Vec<EdgeSet> = self.outsets().iter().map(|x| self.out_cut(x)).collect();
        cuts.sort_by_key(|c| (c.len(), *c));
        cuts.dedup();
        let mut minimal: Vec<EdgeSet> = Vec::new();
        for c in cuts {
            if !minimal.iter().any(|m| m.is_subset(&c)) {
                minimal.push(c);
            }
        }
        minimal.sort();
        minimal
    }

    /// Whether `a` meets every directed cut.
    ///
    /// Uses the reverse-augmentation test: adding a reversed copy of every
    /// edge of `a` yields a strongly connected digraph exactly when `a` is a
    /// dijoin.
    pub fn is_dijoin(&self, a: &EdgeSet) -> bool {
        let mut g = self.clone();
        let mut next = g.edge_space();
        for id in a.iter() {
            if let Some(e) = self.edge(id) {
                g.insert_edge(next, e.head, e.tail);
                next += 1;
            }
        }
        g.is_strongly_connected()
    }

    /// Definitional dijoin check against every minimal directed cut.
    pub fn is_dijoin_definitional(&self, a: &EdgeSet) -> bool {
        self.minimal_directed_cuts().iter().all(|c| c.intersects(a))
    }

    /// Contracts every edge of `f`. Vertices are renumbered by the smallest
    /// original vertex in each class; loops that arise, including the
    /// contracted edges themselves, are dropped; surviving edges keep their
    /// ids.
    pub fn contract(&self, f: &EdgeSet) -> Contraction {
        let mut uf = UnionFind::new(self.n);
        for id in f.iter() {
            if let Some(e) = self.edge(id) {
                uf.union(e.tail, e.head);
            }
        }
        let mut rep_index = BTreeMap::new();
        for v in 0..self.n {
            let r = uf.min_of(v);
            let len = rep_index.len();
            rep_index.entry(r).or_insert(len);
        }
        let vertex_map: Vec<VertexId> = (0..self.n).map(|v| rep_index[&uf.min_of(v)]).collect();
        let mut g = Digraph::new(rep_index.len());
        g.reserve_ids(self.edge_space());
        let mut edge_map = vec![None; self.edge_space()];
        for (id, e) in self.edges() {
            let (t, h) = (vertex_map[e.tail], vertex_map[e.head]);
            if t != h {
                g.insert_edge(id, t, h);
                edge_map[id] = Some(id);
            }
        }
        Contraction {
            graph: g,
            vertex_map,
            edge_map,
        }
    }
}

/// Result of [`Digraph::contract`].
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Digraph,
    /// Old vertex → new vertex.
    pub vertex_map: Vec<VertexId>,
    /// Old edge id → surviving id, `None` if the edge became a loop.
    pub edge_map: Vec<Option<EdgeId>>,
}

impl Contraction {
    /// Preimage of a vertex set of the quotient.
    pub fn pull_back(&self, x: &VertexSet) -> VertexSet {
        VertexSet::from_iter(
            self.vertex_map.len(),
            (0..self.vertex_map.len()).filter(|&v| x.contains(self.vertex_map[v])),
        )
    }
}

/// Union-find that also tracks the minimum element of each class.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    min: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            min: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        self.min[ra] = self.min[ra].min(self.min[rb]);
        true
    }

    pub fn min_of(&mut self, v: usize) -> usize {
        let r = self.find(v);
        self.min[r]
    }
}

/// An assignment of a head to every edge of an undirected graph. Each entry
/// stores the resulting `(tail, head)` so a directing can be reversed or
/// applied without the graph at hand.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Directing {
    arcs: BTreeMap<EdgeId, Edge>,
}

impl Directing {
    pub fn new() -> Self {
        Self::default()
    }

    /// Directs edge `id` of `g` so that `head` is its head.
    pub fn set_head(&mut self, g: &Digraph, id: EdgeId, head: VertexId) -> Result<()> {
        let e = g
            .edge(id)
            .ok_or_else(|| Error::InvalidGraph(format!("no edge {id}")))?;
        if !e.has_end(head) {
            return Err(Error::InvalidGraph(format!(
                "vertex {head} is not an end of edge {id}"
            )));
        }
        self.arcs.insert(id, Edge::new(e.other(head), head));
        Ok(())
    }

    pub fn set_arc(&mut self, id: EdgeId, tail: VertexId, head: VertexId) {
        self.arcs.insert(id, Edge::new(tail, head));
    }

    /// The directing that agrees with the stored orientation of `g`.
    pub fn as_stored(g: &Digraph) -> Self {
        Directing {
            arcs: g.edges().collect(),
        }
    }

    pub fn head(&self, id: EdgeId) -> Option<VertexId> {
        self.arcs.get(&id).map(|e| e.head)
    }

    pub fn arc(&self, id: EdgeId) -> Option<Edge> {
        self.arcs.get(&id).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (EdgeId, Edge)> + '_ {
        self.arcs.iter().map(|(&i, &e)| (i, e))
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Every edge reversed.
    pub fn reversed(&self) -> Directing {
        Directing {
            arcs: self.arcs.iter().map(|(&i, e)| (i, e.reversed())).collect(),
        }
    }

    /// Defined exactly on the edges of `g`, with each head an end of its edge.
    pub fn is_directing_of(&self, g: &Digraph) -> bool {
        self.arcs.len() == g.edge_count()
            && g.edges().all(|(id, e)| {
                self.arcs.get(&id).is_some_and(|a| {
                    (a.tail == e.tail && a.head == e.head) || (a.tail == e.head && a.head == e.tail)
                })
            })
    }

    /// The digraph `g` directed by `self`; edges of `g` without an entry keep
    /// their stored orientation.
    pub fn apply(&self, g: &Digraph) -> Digraph {
        let mut out = Digraph::new(g.n());
        out.reserve_ids(g.edge_space());
        for (id, e) in g.edges() {
            let a = self.arcs.get(&id).copied().unwrap_or(e);
            out.insert_edge(id, a.tail, a.head);
        }
        out
    }

    pub fn extend(&mut self, other: &Directing) {
        self.arcs.extend(other.arcs.iter().map(|(&i, &e)| (i, e)));
    }
}

impl FromIterator<(EdgeId, Edge)> for Directing {
    fn from_iter<I: IntoIterator<Item = (EdgeId, Edge)>>(iter: I) -> Self {
        Directing {
            arcs: iter.into_iter().collect(),
        }
    }
}

pub fn vset(n: usize, items: &[usize]) -> VertexSet {
    BitSet::from_iter(n, items.iter().copied())
}
