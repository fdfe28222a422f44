//! Compatible pairs `(S, T)` and their JSON file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::{EdgeSet, VertexSet};
use crate::digraph::{Digraph, Directing, EdgeId, VertexId};
use crate::embedding::RotationSystem;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SEdge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub head: Option<VertexId>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TEdge {
    pub id: EdgeId,
    pub tail: VertexId,
    pub head: VertexId,
}

/// A graph `S` (each edge optionally directed) and a digraph `T` on the
/// same vertices with disjoint edge ids, plus optional extras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    vertices: usize,
    s_edges: Vec<SEdge>,
    t_edges: Vec<TEdge>,
    embedding: Option<RotationSystem>,
    bias: Option<Vec<VertexSet>>,
}

/// On-disk form of an [`Instance`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub vertices: usize,
    #[serde(default)]
    pub s_edges: Vec<SEdge>,
    #[serde(default)]
    pub t_edges: Vec<TEdge>,
    /// Vertex → clockwise list of `[edge id, end]`; end 0 is `u` for
    /// S-edges and the tail for T-edges.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<BTreeMap<VertexId, Vec<[usize; 2]>>>,
    /// A family of vertex sets over `S` used instead of the outsets of `T`
    /// by orientation commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bias: Option<Vec<Vec<VertexId>>>,
}

impl Instance {
    pub fn new(vertices: usize, s_edges: Vec<SEdge>, t_edges: Vec<TEdge>) -> Result<Self> {
        let mut seen = std::collections::BTreeSet::new();
        let check = |v: VertexId, id: EdgeId| {
            if v >= vertices {
                Err(Error::InvalidGraph(format!("edge {id} has endpoint {v} >= {vertices}")))
            } else {
                Ok(())
            }
        };
        for e in &s_edges {
            check(e.u, e.id)?;
            check(e.v, e.id)?;
            if let Some(h) = e.head {
                if h != e.u && h != e.v {
                    return Err(Error::InvalidGraph(format!(
                        "head {h} of S-edge {} is not an endpoint",
                        e.id
                    )));
                }
            }
            if !seen.insert(e.id) {
                return Err(Error::InvalidGraph(format!("duplicate edge id {}", e.id)));
            }
        }
        for e in &t_edges {
            check(e.tail, e.id)?;
            check(e.head, e.id)?;
            if !seen.insert(e.id) {
                return Err(Error::InvalidGraph(format!(
                    "edge id {} used twice (S and T edge ids must be disjoint)",
                    e.id
                )));
            }
        }
        if let Some(&max) = seen.last() {
            if max >= crate::bitset::MAX_WIDTH || vertices > crate::bitset::MAX_WIDTH {
                return Err(Error::TooLarge {
                    what: "edge id space or vertex count",
                    size: (max + 1).max(vertices),
                    limit: crate::bitset::MAX_WIDTH,
                });
            }
        }
        Ok(Instance {
            vertices,
            s_edges,
            t_edges,
            embedding: None,
            bias: None,
        })
    }

    /// An instance with `S` and `T` as digraphs on a shared id space. `S`
    /// edges keep their stored orientation as heads when `directed`.
    pub fn from_graphs(s: &Digraph, t: &Digraph, directed: bool) -> Result<Self> {
        if s.n() != t.n() {
            return Err(Error::InvalidGraph("S and T have different vertex counts".into()));
        }
        let s_edges = s
            .edges()
            .map(|(id, e)| SEdge {
                id,
                u: e.tail,
                v: e.head,
                head: directed.then_some(e.head),
            })
            .collect();
        let t_edges = t
            .edges()
            .map(|(id, e)| TEdge {
                id,
                tail: e.tail,
                head: e.head,
            })
            .collect();
        Instance::new(s.n(), s_edges, t_edges)
    }

    pub fn with_embedding(mut self, emb: RotationSystem) -> Result<Self> {
        let g = self.union_undirected();
        if !emb.matches_graph(&g) {
            return Err(Error::InvalidEmbedding(
                "rotation does not cover exactly the edges of S and T".into(),
            ));
        }
        emb.require_sphere()?;
        self.embedding = Some(emb);
        Ok(self)
    }

    pub fn without_embedding(mut self) -> Self {
        self.embedding = None;
        self
    }

    pub fn with_bias(mut self, sets: Vec<VertexSet>) -> Result<Self> {
        for s in &sets {
            if s.width() != self.vertices {
                return Err(Error::WidthMismatch {
                    left: self.vertices,
                    right: s.width(),
                });
            }
        }
        self.bias = Some(sets);
        Ok(self)
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn s_edges(&self) -> &[SEdge] {
        &self.s_edges
    }

    pub fn t_edges(&self) -> &[TEdge] {
        &self.t_edges
    }

    pub fn embedding(&self) -> Option<&RotationSystem> {
        self.embedding.as_ref()
    }

    pub fn bias(&self) -> Option<&[VertexSet]> {
        self.bias.as_deref()
    }

    /// One more than the largest edge id.
    pub fn edge_space(&self) -> usize {
        self.s_edges
            .iter()
            .map(|e| e.id + 1)
            .chain(self.t_edges.iter().map(|e| e.id + 1))
            .max()
            .unwrap_or(0)
    }

    pub fn s_ids(&self) -> EdgeSet {
        EdgeSet::from_iter(self.edge_space(), self.s_edges.iter().map(|e| e.id))
    }

    /// Every S-edge carries a head.
    pub fn is_fully_directed(&self) -> bool {
        self.s_edges.iter().all(|e| e.head.is_some())
    }

    /// `S` with edges stored `u → v`, ignoring heads.
    pub fn s_undirected(&self) -> Digraph {
        let mut g = Digraph::new(self.vertices);
        g.reserve_ids(self.edge_space());
        for e in &self.s_edges {
            g.insert_edge(e.id, e.u, e.v);
        }
        g
    }

    /// `S` directed by its heads; edges without a head are stored `u → v`.
    pub fn s_graph(&self) -> Digraph {
        let mut g = Digraph::new(self.vertices);
        g.reserve_ids(self.edge_space());
        for e in &self.s_edges {
            match e.head {
                Some(h) if h == e.u && e.u != e.v => g.insert_edge(e.id, e.v, e.u),
                _ => g.insert_edge(e.id, e.u, e.v),
            }
        }
        g
    }

    pub fn t_graph(&self) -> Digraph {
        let mut g = Digraph::new(self.vertices);
        g.reserve_ids(self.edge_space());
        for e in &self.t_edges {
            g.insert_edge(e.id, e.tail, e.head);
        }
        g
    }

    /// `S ∪ T` with S directed by its heads.
    pub fn union_graph(&self) -> Digraph {
        self.s_graph()
            .union(&self.t_graph())
            .expect("instance ids are disjoint")
    }

    /// `S⁻ ∪ T` with S stored `u → v`; the graph an embedding refers to.
    pub fn union_undirected(&self) -> Digraph {
        self.s_undirected()
            .union(&self.t_graph())
            .expect("instance ids are disjoint")
    }

    /// The heads of `S` as a directing, if fully directed.
    pub fn s_directing(&self) -> Option<Directing> {
        self.is_fully_directed().then(|| Directing::as_stored(&self.s_graph()))
    }

    /// `S' ∪ T` for a directing of `S`.
    pub fn apply_directing(&self, d: &Directing) -> Result<Digraph> {
        if !d.is_directing_of(&self.s_undirected()) {
            return Err(Error::Precondition("directing does not match the edges of S".into()));
        }
        Ok(d.apply(&self.s_undirected())
            .union(&self.t_graph())
            .expect("instance ids are disjoint"))
    }

    /// The same instance with S-edge heads set from `d`.
    pub fn with_directing(&self, d: &Directing) -> Result<Instance> {
        if !d.is_directing_of(&self.s_undirected()) {
            return Err(Error::Precondition("directing does not match the edges of S".into()));
        }
        let mut out = self.clone();
        for e in &mut out.s_edges {
            e.head = d.head(e.id);
        }
        Ok(out)
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            vertices: self.vertices,
            s_edges: self.s_edges.clone(),
            t_edges: self.t_edges.clone(),
            embedding: self.embedding.as_ref().map(|r| r.to_map()),
            bias: self.bias.as_ref().map(|b| b.iter().map(|x| x.to_vec()).collect()),
        }
    }

    pub fn from_file(f: &InstanceFile) -> Result<Instance> {
        let mut inst = Instance::new(f.vertices, f.s_edges.clone(), f.t_edges.clone())?;
        if let Some(map) = &f.embedding {
            let emb = RotationSystem::from_map(&inst.union_undirected(), map)?;
            inst = inst.with_embedding(emb)?;
        }
        if let Some(sets) = &f.bias {
            let mut family = Vec::with_capacity(sets.len());
            for s in sets {
                if let Some(&v) = s.iter().find(|&&v| v >= f.vertices) {
                    return Err(Error::InvalidGraph(format!("bias member mentions vertex {v}")));
                }
                family.push(VertexSet::from_iter(f.vertices, s.iter().copied()));
            }
            inst = inst.with_bias(family)?;
        }
        Ok(inst)
    }

    pub fn from_json(text: &str) -> Result<Instance> {
        let f: InstanceFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Instance::from_file(&f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("instance serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::embed;

    fn sample() -> Instance {
        Instance::new(
            3,
            vec![
                SEdge { id: 0, u: 0, v: 2, head: None },
                SEdge { id: 3, u: 1, v: 2, head: Some(1) },
            ],
            vec![
                TEdge { id: 1, tail: 0, head: 1 },
                TEdge { id: 2, tail: 1, head: 2 },
            ],
        )
        .unwrap()
    }

    #[test]
    fn graphs_of_an_instance() {
        let i = sample();
        assert_eq!(i.edge_space(), 4);
        let s = i.s_graph();
        assert_eq!(s.edge(3).unwrap().head, 1);
        assert!(!i.is_fully_directed());
        assert_eq!(i.union_graph().edge_count(), 4);
        assert_eq!(i.s_ids().to_vec(), vec![0, 3]);
    }

    #[test]
    fn invalid_instances_rejected() {
        let t = vec![TEdge { id: 0, tail: 0, head: 1 }];
        let s = vec![SEdge { id: 0, u: 0, v: 1, head: None }];
        assert!(Instance::new(2, s, t.clone()).is_err());
        let s = vec![SEdge { id: 1, u: 0, v: 1, head: Some(2) }];
        assert!(Instance::new(3, s, t.clone()).is_err());
        let s = vec![SEdge { id: 1, u: 0, v: 5, head: None }];
        assert!(Instance::new(3, s, t).is_err());
        assert!(matches!(Instance::from_json("{\"vertices\": 2,"), Err(Error::Parse(_))));
        assert!(matches!(
            Instance::from_json("{\"vertices\": 2, \"extra\": 1}"),
            Err(Error::Parse(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let i = sample();
        let emb = embed(&i.union_undirected()).unwrap();
        let i = i
            .with_embedding(emb)
            .unwrap()
            .with_bias(vec![VertexSet::from_iter(3, [0])])
            .unwrap();
        let back = Instance::from_json(&i.to_json()).unwrap();
        assert_eq!(back, i);
        assert_eq!(back.to_json(), i.to_json());
    }

    #[test]
    fn directings_apply() {
        let i = sample();
        let mut d = Directing::new();
        d.set_arc(0, 2, 0);
        d.set_arc(3, 2, 1);
        let g = i.apply_directing(&d).unwrap();
        assert_eq!(g.edge(0).unwrap().head, 0);
        let j = i.with_directing(&d).unwrap();
        assert!(j.is_fully_directed());
        assert_eq!(j.s_directing().unwrap(), d);
        let mut bad = Directing::new();
        bad.set_arc(0, 0, 1);
        assert!(i.apply_directing(&bad).is_err());
    }
}
