//! Rotation systems: combinatorial sphere embeddings.
//!
//! Edge `e` has two ends, `(e, 0)` and `(e, 1)`, called darts. For an edge
//! of a [`Digraph`] end 0 sits at the tail and end 1 at the head. Each
//! vertex carries the cyclic (clockwise) order of the darts at it.
//!
//! Faces are traced by `next(d) = succ(twin(d))`: leave along `d`, arrive
//! at the far end and continue with the dart following the arrival dart.
//! The corner between a dart `a` and `succ(a)` at a vertex therefore lies
//! on the face that leaves along `succ(a)`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::EdgeSet;
use crate::digraph::{Digraph, EdgeId, UnionFind, VertexId};
use crate::error::{Error, Result};

/// An edge end: `(edge id, 0 | 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Dart {
    pub edge: EdgeId,
    pub end: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, end: u8) -> Self {
        Dart { edge, end }
    }

    pub fn twin(self) -> Dart {
        Dart::new(self.edge, 1 - self.end)
    }

    fn index(self) -> usize {
        2 * self.edge + self.end as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    /// `ends[e] = Some([v0, v1])` for every edge present.
    ends: Vec<Option<[VertexId; 2]>>,
    rot: Vec<Vec<Dart>>,
    /// Position of each dart in the rotation of its vertex.
    pos: Vec<usize>,
}

/// Face structure of a rotation system.
#[derive(Clone, Debug)]
pub struct Faces {
    /// Each face as its dart cycle in walk order.
    pub walks: Vec<Vec<Dart>>,
    /// Face index of every dart, by `2 * edge + end`.
    of: Vec<usize>,
}

impl Faces {
    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }

    /// The face that leaves along `d`.
    pub fn face_of(&self, d: Dart) -> usize {
        self.of[d.index()]
    }
}

impl RotationSystem {
    /// Builds a rotation system. `ends` is indexed by edge id; `rot[v]` lists
    /// the darts at `v` in clockwise order.
    pub fn new(ends: Vec<Option<[VertexId; 2]>>, rot: Vec<Vec<Dart>>) -> Result<Self> {
        let n = rot.len();
        let mut pos = vec![usize::MAX; 2 * ends.len()];
        for (v, list) in rot.iter().enumerate() {
            for (i, &d) in list.iter().enumerate() {
                let e = ends
                    .get(d.edge)
                    .copied()
                    .flatten()
                    .ok_or_else(|| Error::InvalidEmbedding(format!("unknown edge {}", d.edge)))?;
                if d.end > 1 {
                    return Err(Error::InvalidEmbedding(format!("bad end index {}", d.end)));
                }
                if e[d.end as usize] != v {
                    return Err(Error::InvalidEmbedding(format!(
                        "end {} of edge {} listed at vertex {v}, belongs at {}",
                        d.end, d.edge, e[d.end as usize]
                    )));
                }
                if pos[d.index()] != usize::MAX {
                    return Err(Error::InvalidEmbedding(format!(
                        "end {} of edge {} listed twice",
                        d.end, d.edge
                    )));
                }
                pos[d.index()] = i;
            }
        }
        for (id, e) in ends.iter().enumerate() {
            if let Some([a, b]) = e {
                if *a >= n || *b >= n {
                    return Err(Error::InvalidEmbedding(format!("edge {id} leaves the vertex range")));
                }
                for end in 0..2 {
                    if pos[2 * id + end] == usize::MAX {
                        return Err(Error::InvalidEmbedding(format!(
                            "end {end} of edge {id} missing from the rotation"
                        )));
                    }
                }
            }
        }
        Ok(RotationSystem { ends, rot, pos })
    }

    /// Rotation data over the edges of `g` (end 0 at the tail).
    pub fn for_graph(g: &Digraph, rot: Vec<Vec<Dart>>) -> Result<Self> {
        if rot.len() != g.n() {
            return Err(Error::InvalidEmbedding(format!(
                "rotation lists {} vertices, graph has {}",
                rot.len(),
                g.n()
            )));
        }
        RotationSystem::new(Self::ends_of(g), rot)
    }

    fn ends_of(g: &Digraph) -> Vec<Option<[VertexId; 2]>> {
        let mut ends = vec![None; g.edge_space()];
        for (id, e) in g.edges() {
            ends[id] = Some([e.tail, e.head]);
        }
        ends
    }

    pub fn n(&self) -> usize {
        self.rot.len()
    }

    pub fn edge_space(&self) -> usize {
        self.ends.len()
    }

    pub fn edge_count(&self) -> usize {
        self.ends.iter().flatten().count()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|_| i))
    }

    pub fn ends(&self, e: EdgeId) -> Option<[VertexId; 2]> {
        self.ends.get(e).copied().flatten()
    }

    pub fn has_edge(&self, e: EdgeId) -> bool {
        self.ends(e).is_some()
    }

    /// The vertex a dart sits at.
    pub fn vertex(&self, d: Dart) -> VertexId {
        self.ends[d.edge].expect("dart of a missing edge")[d.end as usize]
    }

    pub fn rotation(&self, v: VertexId) -> &[Dart] {
        &self.rot[v]
    }

    pub fn position(&self, d: Dart) -> usize {
        self.pos[d.index()]
    }

    /// The dart after `d` in clockwise order at its vertex.
    pub fn succ(&self, d: Dart) -> Dart {
        let r = &self.rot[self.vertex(d)];
        r[(self.position(d) + 1) % r.len()]
    }

    pub fn pred(&self, d: Dart) -> Dart {
        let r = &self.rot[self.vertex(d)];
        r[(self.position(d) + r.len() - 1) % r.len()]
    }

    /// The dart of edge `e` at vertex `v` (end 0 first for loops).
    pub fn dart_at(&self, e: EdgeId, v: VertexId) -> Option<Dart> {
        let [a, b] = self.ends(e)?;
        if a == v {
            Some(Dart::new(e, 0))
        } else if b == v {
            Some(Dart::new(e, 1))
        } else {
            None
        }
    }

    pub fn faces(&self) -> Faces {
        let mut of = vec![usize::MAX; 2 * self.ends.len()];
        let mut walks = Vec::new();
        for e in self.edge_ids() {
            for end in 0..2u8 {
                let start = Dart::new(e, end);
                if of[start.index()] != usize::MAX {
                    continue;
                }
                let f = walks.len();
                let mut walk = Vec::new();
                let mut d = start;
                loop {
                    of[d.index()] = f;
                    walk.push(d);
                    d = self.succ(d.twin());
                    if d == start {
                        break;
                    }
                }
                walks.push(walk);
            }
        }
        Faces { walks, of }
    }

    /// Whether the underlying graph is connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut uf = UnionFind::new(n);
        let mut parts = n;
        for e in self.edge_ids() {
            let [a, b] = self.ends[e].unwrap();
            if uf.union(a, b) {
                parts -= 1;
            }
        }
        parts == 1
    }

    /// Connected and `V - E + F = 2`, i.e. a sphere embedding. A single
    /// vertex with no edges counts as one face.
    pub fn euler_check(&self) -> bool {
        if self.n() == 0 || !self.is_connected() {
            return false;
        }
        let f = if self.edge_count() == 0 { 1 } else { self.faces().len() };
        self.n() + f == self.edge_count() + 2
    }

    pub fn require_sphere(&self) -> Result<()> {
        if !self.is_connected() {
            return Err(Error::InvalidEmbedding("underlying graph is disconnected".into()));
        }
        if !self.euler_check() {
            return Err(Error::InvalidEmbedding(format!(
                "Euler check fails: V={} E={} F={}",
                self.n(),
                self.edge_count(),
                self.faces().len()
            )));
        }
        Ok(())
    }

    /// Whether the rotation covers exactly the edges of `g` with matching
    /// ends.
    pub fn matches_graph(&self, g: &Digraph) -> bool {
        self.n() == g.n()
            && self.edge_count() == g.edge_count()
            && g.edges().all(|(id, e)| self.ends(id) == Some([e.tail, e.head]))
    }

    /// The planar dual. Dual vertex `f` is face `f`; dual edge `e` joins the
    /// faces of darts `(e,0)` and `(e,1)` (end 0 at the face of `(e,0)`),
    /// and the rotation at a dual vertex is the walk order of its face.
    pub fn dual(&self) -> Result<(RotationSystem, Faces)> {
        self.require_sphere()?;
        let mut faces = self.faces();
        if self.edge_count() == 0 {
            // A lone vertex has one face and its dual is a lone vertex.
            faces.walks.push(Vec::new());
        }
        let mut ends = vec![None; self.ends.len()];
        for e in self.edge_ids() {
            ends[e] = Some([
                faces.face_of(Dart::new(e, 0)),
                faces.face_of(Dart::new(e, 1)),
            ]);
        }
        let rot = faces.walks.clone();
        Ok((RotationSystem::new(ends, rot)?, faces))
    }

    /// Removes edge `e` from the rotation.
    pub fn delete_edge(&mut self, e: EdgeId) {
        let Some([a, b]) = self.ends(e) else { return };
        self.ends[e] = None;
        for v in [a, b] {
            self.rot[v].retain(|d| d.edge != e);
            self.reindex(v);
        }
        self.pos[2 * e] = usize::MAX;
        self.pos[2 * e + 1] = usize::MAX;
    }

    fn reindex(&mut self, v: VertexId) {
        for (i, d) in self.rot[v].iter().enumerate() {
            self.pos[d.index()] = i;
        }
    }

    /// Contracts a non-loop edge `e = xy` into `x`, keeping vertex ids
    /// (vertex `y` is left with an empty rotation). The merged rotation is
    /// the darts of `x` after `e`, then the darts of `y` after `e`. Edges
    /// that become loops are deleted.
    fn contract_in_place(&mut self, e: EdgeId) {
        let [x, y] = self.ends(e).expect("contracting a missing edge");
        assert_ne!(x, y, "contracting a loop");
        let dx = Dart::new(e, 0);
        let dy = Dart::new(e, 1);
        let rx = &self.rot[x];
        let ry = &self.rot[y];
        let px = self.position(dx);
        let py = self.position(dy);
        let mut merged = Vec::with_capacity(rx.len() + ry.len() - 2);
        merged.extend((1..rx.len()).map(|k| rx[(px + k) % rx.len()]));
        merged.extend((1..ry.len()).map(|k| ry[(py + k) % ry.len()]));
        for d in &merged {
            if let Some(ends) = self.ends[d.edge].as_mut() {
                ends[d.end as usize] = x;
            }
        }
        self.rot[x] = merged;
        self.rot[y].clear();
        self.ends[e] = None;
        self.pos[dx.index()] = usize::MAX;
        self.pos[dy.index()] = usize::MAX;
        self.reindex(x);
        let loops: Vec<EdgeId> = self.rot[x]
            .iter()
            .filter(|d| {
                let [a, b] = self.ends[d.edge].unwrap();
                a == b
            })
            .map(|d| d.edge)
            .collect();
        for l in loops {
            self.delete_edge(l);
        }
    }

    /// Contracts every edge of `f`, numbering the quotient vertices exactly
    /// as [`Digraph::contract`] does. Edges that become loops are dropped.
    /// Returns the old → new vertex map.
    pub fn contract(&self, f: &EdgeSet) -> (RotationSystem, Vec<VertexId>) {
        let mut work = self.clone();
        let mut uf = UnionFind::new(self.n());
        for e in f.iter() {
            let Some([a, b]) = self.ends(e) else { continue };
            uf.union(a, b);
        }
        for e in f.iter() {
            if let Some([a, b]) = work.ends(e) {
                if a == b {
                    work.delete_edge(e);
                } else {
                    work.contract_in_place(e);
                }
            }
        }
        // Class representatives, in order of their least member.
        let mut index = BTreeMap::new();
        for v in 0..self.n() {
            let r = uf.min_of(v);
            let len = index.len();
            index.entry(r).or_insert(len);
        }
        let map: Vec<VertexId> = (0..self.n()).map(|v| index[&uf.min_of(v)]).collect();
        let mut rot = vec![Vec::new(); index.len()];
        for v in 0..self.n() {
            if !work.rot[v].is_empty() {
                rot[map[v]] = std::mem::take(&mut work.rot[v]);
            }
        }
        let ends = work
            .ends
            .iter()
            .map(|e| e.map(|[a, b]| [map[a], map[b]]))
            .collect();
        let out = RotationSystem::new(ends, rot).expect("contraction keeps a valid rotation");
        (out, map)
    }

    /// Rotation with edges outside `keep` deleted.
    pub fn restrict(&self, keep: &EdgeSet) -> RotationSystem {
        let mut out = self.clone();
        for e in self.edge_ids() {
            if !keep.contains(e) {
                out.delete_edge(e);
            }
        }
        out
    }

    /// The rotation as JSON-friendly data: vertex → `[edge, end]` list.
    pub fn to_map(&self) -> BTreeMap<VertexId, Vec<[usize; 2]>> {
        self.rot
            .iter()
            .enumerate()
            .map(|(v, r)| (v, r.iter().map(|d| [d.edge, d.end as usize]).collect()))
            .collect()
    }

    pub fn from_map(g: &Digraph, map: &BTreeMap<VertexId, Vec<[usize; 2]>>) -> Result<Self> {
        let mut rot = vec![Vec::new(); g.n()];
        for (&v, list) in map {
            if v >= g.n() {
                return Err(Error::InvalidEmbedding(format!("vertex {v} out of range")));
            }
            rot[v] = list
                .iter()
                .map(|&[e, end]| {
                    if end > 1 {
                        Err(Error::InvalidEmbedding(format!("bad end index {end}")))
                    } else {
                        Ok(Dart::new(e, end as u8))
                    }
                })
                .collect::<Result<_>>()?;
        }
        RotationSystem::for_graph(g, rot)
    }

    /// The same rotation with end 0 of each edge moved to its tail in `g`.
    pub fn with_tails(&self, g: &Digraph) -> Result<Self> {
        let mut map = self.to_map();
        for darts in map.values_mut() {
            for d in darts.iter_mut() {
                let (Some([a, _]), Some(e)) = (self.ends(d[0]), g.edge(d[0])) else {
                    return Err(Error::InvalidEmbedding(format!("edge {} not in both", d[0])));
                };
                if e.tail != a {
                    d[1] ^= 1;
                }
            }
        }
        RotationSystem::from_map(g, &map)
    }
}

/// A contiguous interval of the rotation at `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Wedge {
    pub t: VertexId,
    pub edges: EdgeSet,
    /// Position of the first dart of the interval in the rotation at `t`.
    pub start: usize,
    pub len: usize,
}

impl Wedge {
    /// Checks that `edges` are incident with `t` (no loops) and occupy a
    /// cyclic interval of its rotation.
    pub fn new(emb: &RotationSystem, t: VertexId, edges: EdgeSet) -> Result<Wedge> {
        let rot = emb.rotation(t);
        for e in edges.iter() {
            match emb.ends(e) {
                Some([a, b]) if (a == t) != (b == t) => {}
                Some(_) => {
                    return Err(Error::InvalidWedge(format!(
                        "edge {e} is not a non-loop edge at {t}"
                    )))
                }
                None => return Err(Error::InvalidWedge(format!("no edge {e}"))),
            }
        }
        let k = edges.len();
        if k == 0 {
            return Ok(Wedge {
                t,
                edges,
                start: 0,
                len: 0,
            });
        }
        let inside = |i: usize| edges.contains(rot[i % rot.len()].edge);
        let starts: Vec<usize> = (0..rot.len())
            .filter(|&i| inside(i) && !inside(i + rot.len() - 1))
            .collect();
        match starts.as_slice() {
            [] => Ok(Wedge {
                t,
                edges,
                start: 0,
                len: rot.len(),
            }),
            [s] => Ok(Wedge {
                t,
                edges,
                start: *s,
                len: k,
            }),
            _ => Err(Error::InvalidWedge(format!(
                "edges {edges} do not form an interval of the rotation at {t}"
            ))),
        }
    }
}

/// Computes a sphere embedding of the underlying graph of `g`, or reports
/// that it is not planar. The graph must be connected.
///
/// Blocks of the simple underlying graph are embedded one at a time by
/// path insertion into faces (Demoucron, Malgrange, Pertuiset). Block
/// rotations are concatenated at cut vertices; parallel edges are placed
/// next to their representative and loops anywhere.
pub fn embed(g: &Digraph) -> Result<RotationSystem> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidEmbedding("empty graph".into()));
    }
    if !g.is_connected() {
        return Err(Error::InvalidEmbedding("underlying graph is disconnected".into()));
    }
    let mut rep: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    let mut parallel = Vec::new();
    let mut loops = Vec::new();
    for (id, e) in g.edges() {
        if e.is_loop() {
            loops.push(id);
            continue;
        }
        let key = (e.tail.min(e.head), e.tail.max(e.head));
        match rep.get(&key) {
            Some(&r) => parallel.push((id, r)),
            None => {
                rep.insert(key, id);
            }
        }
    }
    let mut adj = vec![Vec::new(); n];
    for (&(a, b), &id) in &rep {
        adj[a].push((b, id));
        adj[b].push((a, id));
    }
    let dart_at = |id: EdgeId, v: VertexId| {
        let e = g.edge(id).unwrap();
        Dart::new(id, if e.tail == v { 0 } else { 1 })
    };

    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for block in blocks(n, &adj) {
        if block.len() == 1 {
            let id = block[0];
            let e = g.edge(id).unwrap();
            rot[e.tail].push(Dart::new(id, 0));
            rot[e.head].push(Dart::new(id, 1));
            continue;
        }
        let succ = embed_block(n, &block, g)?;
        // Rotation per vertex of the block from the successor map.
        let mut seen = std::collections::HashSet::new();
        let mut verts: Vec<VertexId> = block
            .iter()
            .flat_map(|&id| {
                let e = g.edge(id).unwrap();
                [e.tail, e.head]
            })
            .collect();
        verts.sort();
        verts.dedup();
        for v in verts {
            let start = block
                .iter()
                .copied()
                .find(|&id| g.edge(id).unwrap().has_end(v))
                .unwrap();
            let first = dart_at(start, v);
            let mut d = first;
            loop {
                if !seen.insert(d) {
                    break;
                }
                rot[v].push(d);
                d = succ[&d];
                if d == first {
                    break;
                }
            }
        }
    }
    for (id, r) in parallel {
        let e = g.edge(id).unwrap();
        let re = g.edge(r).unwrap();
        // Put the new edge just after r at one end and just before r at the
        // other, so the two bound a digon.
        let (a, b) = (re.tail, re.head);
        let ra = dart_at(r, a);
        let rb = dart_at(r, b);
        let ia = rot[a].iter().position(|&d| d == ra).unwrap();
        rot[a].insert(ia + 1, Dart::new(id, if e.tail == a { 0 } else { 1 }));
        let ib = rot[b].iter().position(|&d| d == rb).unwrap();
        rot[b].insert(ib, Dart::new(id, if e.tail == b { 0 } else { 1 }));
    }
    for id in loops {
        let v = g.edge(id).unwrap().tail;
        rot[v].push(Dart::new(id, 0));
        rot[v].push(Dart::new(id, 1));
    }
    let out = RotationSystem::for_graph(g, rot)?;
    if !out.euler_check() {
        return Err(Error::Internal("computed embedding fails the Euler check".into()));
    }
    Ok(out)
}

/// Blocks (biconnected components) of a simple graph as edge-id lists.
fn blocks(n: usize, adj: &[Vec<(VertexId, EdgeId)>]) -> Vec<Vec<EdgeId>> {
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut stack: Vec<EdgeId> = Vec::new();
    let mut out = Vec::new();
    // Iterative DFS: frames of (vertex, parent edge, next neighbour index).
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut frames: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        while let Some(&mut (v, pe, ref mut i)) = frames.last_mut() {
            if *i < adj[v].len() {
                let (w, id) = adj[v][*i];
                *i += 1;
                if Some(id) == pe {
                    continue;
                }
                if disc[w] == usize::MAX {
                    stack.push(id);
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    frames.push((w, Some(id), 0));
                } else if disc[w] < disc[v] {
                    stack.push(id);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let Some(&(u, _, _)) = frames.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let pe = pe.unwrap();
                        let mut comp = Vec::new();
                        while let Some(id) = stack.pop() {
                            comp.push(id);
                            if id == pe {
                                break;
                            }
                        }
                        comp.sort();
                        out.push(comp);
                    }
                }
            }
        }
    }
    out
}

/// Embeds a biconnected simple block with at least two edges. Returns the
/// clockwise successor of every dart of the block.
fn embed_block(n: usize, block: &[EdgeId], g: &Digraph) -> Result<BTreeMap<Dart, Dart>> {
    let mut in_block = vec![false; g.edge_space()];
    let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
    let mut between: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for &id in block {
        in_block[id] = true;
        let e = g.edge(id).unwrap();
        adj[e.tail].push((e.head, id));
        adj[e.head].push((e.tail, id));
        between.insert((e.tail, e.head), id);
        between.insert((e.head, e.tail), id);
    }
    let mut placed_v = vec![false; n];
    let mut placed_e = vec![false; g.edge_space()];

    // Initial cycle: DFS from the first block vertex until a back edge.
    let cycle = find_cycle(&adj, g.edge(block[0]).unwrap().tail);
    for w in 0..cycle.len() {
        let (a, b) = (cycle[w], cycle[(w + 1) % cycle.len()]);
        placed_v[a] = true;
        placed_e[between[&(a, b)]] = true;
    }
    let mut faces: Vec<Vec<VertexId>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];

    loop {
        let frags = fragments(n, &adj, &placed_v, &placed_e, block);
        if frags.is_empty() {
            break;
        }
        let admissible: Vec<Vec<usize>> = frags
            .iter()
            .map(|fr| {
                (0..faces.len())
                    .filter(|&f| fr.attach.iter().all(|a| faces[f].contains(a)))
                    .collect()
            })
            .collect();
        if admissible.iter().any(|a| a.is_empty()) {
            return Err(Error::NotPlanar);
        }
        let k = admissible
            .iter()
            .position(|a| a.len() == 1)
            .unwrap_or(0);
        let f = admissible[k][0];
        let path = frags[k].path(&adj, &placed_v, &placed_e);
        for w in path.windows(2) {
            placed_e[between[&(w[0], w[1])]] = true;
        }
        for &v in &path {
            placed_v[v] = true;
        }
        // Split face f along the path.
        let face = &faces[f];
        let (p0, pm) = (path[0], *path.last().unwrap());
        let i0 = face.iter().position(|&v| v == p0).unwrap();
        let im = face.iter().position(|&v| v == pm).unwrap();
        let walk = |from: usize, to: usize| {
            let mut out = Vec::new();
            let mut i = from;
            loop {
                out.push(face[i]);
                if i == to {
                    break;
                }
                i = (i + 1) % face.len();
            }
            out
        };
        let inner: Vec<VertexId> = path[1..path.len() - 1].to_vec();
        let mut fa = walk(i0, im); // p0 .. pm along the face
        fa.extend(inner.iter().rev());
        let mut fb = walk(im, i0); // pm .. p0 along the face
        fb.extend(inner.iter());
        faces[f] = fa;
        faces.push(fb);
    }

    let mut succ = BTreeMap::new();
    let dart = |a: VertexId, b: VertexId| {
        let id = between[&(a, b)];
        Dart::new(id, if g.edge(id).unwrap().tail == a { 0 } else { 1 })
    };
    for face in &faces {
        let k = face.len();
        for i in 0..k {
            let (u, v, w) = (face[(i + k - 1) % k], face[i], face[(i + 1) % k]);
            succ.insert(dart(v, u), dart(v, w));
        }
    }
    Ok(succ)
}

fn find_cycle(adj: &[Vec<(VertexId, EdgeId)>], start: VertexId) -> Vec<VertexId> {
    let n = adj.len();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    let mut stack = vec![(start, usize::MAX, 0usize)];
    depth[start] = 0;
    while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
        if *i == adj[v].len() {
            stack.pop();
            continue;
        }
        let (w, id) = adj[v][*i];
        *i += 1;
        if id == pe {
            continue;
        }
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, id, 0));
        } else if depth[w] < depth[v] {
            let mut cyc = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cyc.push(x);
            }
            cyc.reverse();
            return cyc;
        }
    }
    unreachable!("biconnected block without a cycle")
}

struct Fragment {
    /// Non-embedded vertices (empty for a single chord edge).
    inner: Vec<VertexId>,
    /// A chord edge when `inner` is empty.
    chord: Option<(VertexId, VertexId)>,
    attach: Vec<VertexId>,
}

impl Fragment {
    /// A path through the fragment between two distinct attachments.
    fn path(
        &self,
        adj: &[Vec<(VertexId, EdgeId)>],
        placed_v: &[bool],
        placed_e: &[bool],
    ) -> Vec<VertexId> {
        if let Some((a, b)) = self.chord {
            return vec![a, b];
        }
        let n = adj.len();
        let a1 = self.attach[0];
        // BFS from a1 through inner vertices to another attachment.
        let mut prev = vec![usize::MAX; n];
        let mut queue = std::collections::VecDeque::new();
        let in_frag = |v: VertexId| self.inner.binary_search(&v).is_ok();
        for &(w, id) in &adj[a1] {
            if !placed_e[id] && in_frag(w) && prev[w] == usize::MAX {
                prev[w] = a1;
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(w, id) in &adj[v] {
                if placed_e[id] {
                    continue;
                }
                if placed_v[w] && w != a1 {
                    let mut path = vec![w, v];
                    let mut x = v;
                    while prev[x] != a1 {
                        x = prev[x];
                        path.push(x);
                    }
                    path.push(a1);
                    path.reverse();
                    return path;
                }
                if in_frag(w) && prev[w] == usize::MAX {
                    prev[w] = v;
                    queue.push_back(w);
                }
            }
        }
        unreachable!("fragment of a biconnected block has two attachments")
    }
}

fn fragments(
    n: usize,
    adj: &[Vec<(VertexId, EdgeId)>],
    placed_v: &[bool],
    placed_e: &[bool],
    block: &[EdgeId],
) -> Vec<Fragment> {
    let mut out = Vec::new();
    let mut block_v = vec![false; n];
    for v in 0..n {
        block_v[v] = adj[v].iter().any(|&(_, id)| block.contains(&id));
    }
    // Chords.
    for v in 0..n {
        for &(w, id) in &adj[v] {
            if v < w && !placed_e[id] && placed_v[v] && placed_v[w] {
                out.push(Fragment {
                    inner: Vec::new(),
                    chord: Some((v, w)),
                    attach: vec![v, w],
                });
            }
        }
    }
    // Components of unplaced vertices.
    let mut comp = vec![usize::MAX; n];
    for s in 0..n {
        if !block_v[s] || placed_v[s] || comp[s] != usize::MAX {
            continue;
        }
        let c = out.len();
        let mut inner = vec![s];
        let mut attach = Vec::new();
        comp[s] = c;
        let mut i = 0;
        while i < inner.len() {
            let v = inner[i];
            i += 1;
            for &(w, _) in &adj[v] {
                if placed_v[w] {
                    attach.push(w);
                } else if comp[w] == usize::MAX {
                    comp[w] = c;
                    inner.push(w);
                }
            }
        }
        inner.sort();
        attach.sort();
        attach.dedup();
        out.push(Fragment {
            inner,
            chord: None,
            attach,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(g: &Digraph) -> RotationSystem {
        let r = embed(g).unwrap();
        assert!(r.matches_graph(g));
        assert!(r.euler_check());
        r
    }

    #[test]
    fn face_examples() {
        let g = Digraph::from_edges(2, &[(0, 1)]);
        let r = check(&g);
        let f = r.faces();
        assert_eq!(f.len(), 1);
        assert_eq!(f.walks[0].len(), 2);

        let tri = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(check(&tri).faces().len(), 2);

        let par = Digraph::from_edges(2, &[(0, 1), (0, 1)]);
        let f = check(&par).faces();
        assert_eq!(f.len(), 2);
        assert!(f.walks.iter().all(|w| w.len() == 2));
    }

    #[test]
    fn dual_examples() {
        let par = Digraph::from_edges(2, &[(0, 1), (1, 0)]);
        let (d, _) = check(&par).dual().unwrap();
        assert_eq!((d.n(), d.edge_count()), (2, 2));
        let tri = Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]);
        let (d, _) = check(&tri).dual().unwrap();
        assert_eq!(d.n(), 2);
        for e in 0..3 {
            let [a, b] = d.ends(e).unwrap();
            assert_ne!(a, b);
        }
        assert!(d.euler_check());
        // A tree's dual is a single vertex with loops.
        let path = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let (d, _) = check(&path).dual().unwrap();
        assert_eq!(d.n(), 1);
    }

    #[test]
    fn dual_of_dual_is_primal_up_to_face_numbering() {
        let k4 = Digraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]);
        let r = check(&k4);
        let (d, _) = r.dual().unwrap();
        let (dd, faces) = d.dual().unwrap();
        // Dual-dual vertex f corresponds to the primal vertex of its darts.
        let vmap: Vec<VertexId> = faces.walks.iter().map(|w| r.vertex(w[0])).collect();
        for e in r.edge_ids() {
            let [a, b] = dd.ends(e).unwrap();
            assert_eq!([vmap[a], vmap[b]], r.ends(e).unwrap());
        }
        for (f, w) in faces.walks.iter().enumerate() {
            let v = vmap[f];
            assert!(w.iter().all(|&x| r.vertex(x) == v));
            let p = r.position(w[0]);
            let rr = r.rotation(v);
            let rotated: Vec<Dart> = (0..rr.len()).map(|k| rr[(p + k) % rr.len()]).collect();
            assert_eq!(&rotated, w);
        }
    }

    #[test]
    fn nonplanar_graphs_rejected() {
        let mut k5 = Vec::new();
        for a in 0..5 {
            for b in a + 1..5 {
                k5.push((a, b));
            }
        }
        assert!(matches!(embed(&Digraph::from_edges(5, &k5)), Err(Error::NotPlanar)));
        let mut k33 = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                k33.push((a, b));
            }
        }
        assert!(matches!(embed(&Digraph::from_edges(6, &k33)), Err(Error::NotPlanar)));
        k5.pop();
        check(&Digraph::from_edges(5, &k5));
    }

    #[test]
    fn blocks_loops_and_parallels() {
        // Two triangles sharing a vertex, a pendant edge, a loop, a parallel.
        let g = Digraph::from_edges(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (4, 5), (5, 5), (1, 0)],
        );
        check(&g);
    }

    #[test]
    fn contraction_splice() {
        let k4 = Digraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]);
        let r = check(&k4);
        let f = EdgeSet::from_iter(6, [0]);
        let (c, map) = r.contract(&f);
        let cg = k4.contract(&f);
        assert_eq!(map, cg.vertex_map);
        // Edges parallel to the contracted one vanish only if they were
        // loops; here none are, so K4/e is a triangle with two doubled
        // sides.
        assert_eq!(c.edge_count(), 5);
        assert!(c.euler_check());
        let del = r.restrict(&EdgeSet::from_iter(6, [1, 2, 3, 4, 5]));
        assert!(del.euler_check());
    }

    #[test]
    fn wedge_intervals() {
        let star = Digraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let rot = vec![
            vec![Dart::new(0, 0), Dart::new(1, 0), Dart::new(2, 0)],
            vec![Dart::new(0, 1)],
            vec![Dart::new(1, 1)],
            vec![Dart::new(2, 1)],
        ];
        let r = RotationSystem::for_graph(&star, rot).unwrap();
        let w = Wedge::new(&r, 0, EdgeSet::from_iter(3, [2, 0])).unwrap();
        assert_eq!((w.start, w.len), (2, 2));
        assert!(Wedge::new(&r, 1, EdgeSet::from_iter(3, [1])).is_err());
        let r4 = Digraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let rot = vec![
            (0..4).map(|e| Dart::new(e, 0)).collect(),
            vec![Dart::new(0, 1)],
            vec![Dart::new(1, 1)],
            vec![Dart::new(2, 1)],
            vec![Dart::new(3, 1)],
        ];
        let r = RotationSystem::for_graph(&r4, rot).unwrap();
        assert!(Wedge::new(&r, 0, EdgeSet::from_iter(4, [0, 2])).is_err());
    }

    #[test]
    fn bad_rotations_rejected() {
        let g = Digraph::from_edges(2, &[(0, 1)]);
        assert!(RotationSystem::for_graph(&g, vec![vec![Dart::new(0, 1)], vec![Dart::new(0, 0)]]).is_err());
        assert!(RotationSystem::for_graph(&g, vec![vec![Dart::new(0, 0)], vec![]]).is_err());
        // A K4 rotation that is a torus embedding fails Euler.
        let k4 = Digraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]);
        let r = embed(&k4).unwrap();
        let mut rot: Vec<Vec<Dart>> = (0..4).map(|v| r.rotation(v).to_vec()).collect();
        rot[0].swap(0, 1);
        let bad = RotationSystem::for_graph(&k4, rot).unwrap();
        assert!(!bad.euler_check());
    }
}
