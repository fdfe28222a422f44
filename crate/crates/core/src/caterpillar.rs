//! Caterpillars and their orientation.
//!
//! A *spine* of a tree is a path such that every other vertex is adjacent
//! to it; a tree with a spine is a caterpillar. [`orient_caterpillar`]
//! directs a caterpillar so that every member of a bias has an edge leaving
//! and an edge entering it, with the spine a directed path.
//!
//! The construction works spine vertex by spine vertex. Deleting the first
//! spine vertex `p1` leaves a caterpillar whose bias is
//! `{ X \ {p1} : X in B, p1 in X iff p2 in X }`. A directing of the smaller
//! tree, turned so that `p2` starts its spine, is extended by `p1 → p2`;
//! then leg edges are flipped away from the spine one at a time while the
//! inherited constraints stay satisfied.

use crate::bias::{
    brute_force_orient, check_bias, lift_series, series_reduce, valid_directing, Bias,
    OrientConstraints, SeriesContext,
};
use crate::bitset::VertexSet;
use crate::digraph::{Digraph, Directing, EdgeId, VertexId};
use crate::error::{Error, Result};
use crate::tree::{require_tree, RootedTree};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpineDecomposition {
    pub spine: Vec<VertexId>,
    /// `legs[i]`: non-spine vertices adjacent to `spine[i]`.
    pub legs: Vec<Vec<VertexId>>,
}

impl SpineDecomposition {
    /// Checks that `spine` is a spine of the tree `s` and computes its legs.
    pub fn new(s: &Digraph, spine: Vec<VertexId>) -> Result<Self> {
        require_tree(s)?;
        if spine.is_empty() {
            return Err(Error::Precondition("empty spine".into()));
        }
        let mut on = VertexSet::empty(s.n());
        for &p in &spine {
            if p >= s.n() || on.contains(p) {
                return Err(Error::Precondition(format!("spine repeats or leaves the tree at {p}")));
            }
            on.insert(p);
        }
        let adj = s.und_adjacency();
        for w in spine.windows(2) {
            if !adj[w[0]].iter().any(|&(_, x)| x == w[1]) {
                return Err(Error::Precondition(format!("spine step {}-{} is not an edge", w[0], w[1])));
            }
        }
        let mut legs = vec![Vec::new(); spine.len()];
        for v in 0..s.n() {
            if on.contains(v) {
                continue;
            }
            let i = spine
                .iter()
                .position(|&p| adj[v].iter().any(|&(_, x)| x == p))
                .ok_or(Error::NotCaterpillar)?;
            legs[i].push(v);
        }
        Ok(SpineDecomposition { spine, legs })
    }

    /// Extends the spine at both ends by a leg while one exists, so the end
    /// vertices have no legs.
    pub fn maximal(mut self) -> Self {
        if self.spine.len() == 1 && !self.legs[0].is_empty() {
            let q = self.legs[0].remove(0);
            self.spine.insert(0, q);
            self.legs.insert(0, Vec::new());
        }
        if !self.legs[0].is_empty() {
            let q = self.legs[0].remove(0);
            self.spine.insert(0, q);
            self.legs.insert(0, Vec::new());
        }
        let last = self.spine.len() - 1;
        if !self.legs[last].is_empty() {
            let q = self.legs[last].remove(0);
            self.spine.push(q);
            self.legs.push(Vec::new());
        }
        self
    }
}

/// A maximal spine of the tree `s`, or `None` if `s` is not a caterpillar.
pub fn find_spine(s: &Digraph) -> Result<Option<SpineDecomposition>> {
    require_tree(s)?;
    let n = s.n();
    if n <= 2 {
        return Ok(Some(SpineDecomposition::new(s, (0..n).collect())?));
    }
    let adj = s.und_adjacency();
    let inner: Vec<VertexId> = (0..n).filter(|&v| adj[v].len() >= 2).collect();
    let is_inner = |v: VertexId| adj[v].len() >= 2;
    let inner_degree = |v: VertexId| adj[v].iter().filter(|&&(_, w)| is_inner(w)).count();
    if inner.iter().any(|&v| inner_degree(v) > 2) {
        return Ok(None);
    }
    // The inner vertices form a subtree with maximum degree two: a path.
    let start = inner
        .iter()
        .copied()
        .find(|&v| inner_degree(v) <= 1)
        .expect("a finite path has an end");
    let mut spine = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&(_, next)) = adj[cur]
        .iter()
        .find(|&&(_, w)| is_inner(w) && w != prev)
    {
        spine.push(next);
        prev = cur;
        cur = next;
    }
    Ok(Some(SpineDecomposition::new(s, spine)?.maximal()))
}

/// Shape of the spine of a caterpillar subdivision after suppressing its
/// degree-two vertices: the series reductions applied, in order, and the
/// reduced tree with its spine.
struct Suppression {
    steps: Vec<SeriesContext>,
    tree: Digraph,
    bias: Bias,
    spine: Option<SpineDecomposition>,
}

fn suppress(s: &Digraph, bias: &Bias) -> Result<Suppression> {
    require_tree(s)?;
    let mut tree = s.clone();
    let mut bias = bias.clone();
    let mut steps = Vec::new();
    loop {
        let v = (0..tree.n()).find(|&v| {
            let inc = tree.incident(v);
            inc.len() == 2 && inc[0].1 != inc[1].1
        });
        let Some(v) = v else { break };
        let r = series_reduce(&tree, &bias, v)?;
        tree = r.tree;
        bias = r.bias;
        steps.push(r.context);
    }
    let spine = find_spine(&tree)?;
    Ok(Suppression {
        steps,
        tree,
        bias,
        spine,
    })
}

/// Whether every vertex of degree at least three lies on one path. On
/// success returns such a path as a vertex sequence.
pub fn is_caterpillar_subdivision(s: &Digraph) -> Result<Option<Vec<VertexId>>> {
    let sup = suppress(s, &Bias::empty(s.n()))?;
    let Some(spine) = sup.spine else {
        return Ok(None);
    };
    let lift = |mut v: VertexId| {
        for ctx in sup.steps.iter().rev() {
            v = ctx.lift_vertex(v);
        }
        v
    };
    let a = lift(spine.spine[0]);
    let b = lift(*spine.spine.last().unwrap());
    Ok(Some(RootedTree::new(s, a).path_vertices(a, b)))
}

fn check_hypothesis(s: &Digraph, bias: &Bias) -> Result<()> {
    if bias.ground() != s.n() {
        return Err(Error::WidthMismatch {
            left: s.n(),
            right: bias.ground(),
        });
    }
    if let Some(x) = bias.first_below_cut_bound(s, 2) {
        return Err(Error::Hypothesis {
            reason: "bias member with fewer than two S-edges across it".into(),
            witness: x,
        });
    }
    if let Err(v) = check_bias(s, bias.sets())? {
        let witness = match v {
            crate::bias::BiasViolation::Trivial(x) => x,
            crate::bias::BiasViolation::Pair { a, .. } => a,
        };
        return Err(Error::Hypothesis {
            reason: format!("family is not a bias: {v:?}"),
            witness,
        });
    }
    Ok(())
}

/// One level of the spine recursion, in original vertex ids.
#[derive(Clone, Debug)]
struct Level {
    active: VertexSet,
    spine: Vec<VertexId>,
    sets: Vec<VertexSet>,
}

fn active_edges(s: &Digraph, active: &VertexSet) -> Vec<(EdgeId, VertexId, VertexId)> {
    s.edges()
        .filter(|(_, e)| active.contains(e.tail) && active.contains(e.head))
        .map(|(id, e)| (id, e.tail, e.head))
        .collect()
}

fn crosses_both_ways(d: &Directing, edges: &[(EdgeId, VertexId, VertexId)], x: &VertexSet) -> bool {
    let mut out = false;
    let mut inn = false;
    for &(id, _, _) in edges {
        let a = d.arc(id).expect("directing covers the active tree");
        let (t, h) = (x.contains(a.tail), x.contains(a.head));
        out |= t && !h;
        inn |= h && !t;
    }
    out && inn
}

/// Directs the caterpillar `s` so that every member of `bias` has an edge
/// out and an edge in, and the (maximalized) spine is a directed path from
/// its first vertex. Checks the hypotheses first.
pub fn orient_caterpillar(s: &Digraph, spine: &SpineDecomposition, bias: &Bias) -> Result<Directing> {
    check_hypothesis(s, bias)?;
    let spine = SpineDecomposition::new(s, spine.spine.clone())?.maximal();
    let adj = s.und_adjacency();

    // Forward pass: peel spine vertices.
    let mut levels = vec![Level {
        active: s.all_vertices(),
        spine: spine.spine.clone(),
        sets: bias.sets().to_vec(),
    }];
    while levels.last().unwrap().spine.len() > 1 {
        let cur = levels.last().unwrap();
        let (p1, p2) = (cur.spine[0], cur.spine[1]);
        let active = cur.active.without(p1);
        let mut sets: Vec<VertexSet> = cur
            .sets
            .iter()
            .filter(|x| x.contains(p1) == x.contains(p2))
            .map(|x| x.without(p1))
            .collect();
        sets.sort();
        sets.dedup();
        let mut next_spine = cur.spine[1..].to_vec();
        // Keep the spine maximal: a leg of the new first vertex is prepended.
        let first = next_spine[0];
        let leg = adj[first]
            .iter()
            .map(|&(_, w)| w)
            .filter(|&w| active.contains(w) && !next_spine.contains(&w))
            .min();
        if let Some(q) = leg {
            next_spine.insert(0, q);
        }
        levels.push(Level {
            active,
            spine: next_spine,
            sets,
        });
    }
    let base = levels.last().unwrap();
    debug_assert_eq!(base.active.len(), 1);

    // Backward pass.
    let mut d = Directing::new();
    for j in (0..levels.len() - 1).rev() {
        let lv = &levels[j];
        let (p1, p2) = (lv.spine[0], lv.spine[1]);
        if lv.spine.len() >= 3 {
            let id = edge_between(&adj, p2, lv.spine[2]);
            if d.head(id) == Some(p2) {
                d = d.reversed();
            }
        }
        d.set_arc(edge_between(&adj, p1, p2), p1, p2);

        let edges = active_edges(s, &lv.active);
        let inherited: Vec<VertexSet> = lv
            .sets
            .iter()
            .copied()
            .filter(|x| x.contains(p1) == x.contains(p2))
            .collect();
        let on_spine = VertexSet::from_iter(s.n(), lv.spine.iter().copied());
        // Leg edges by spine index, then leg vertex.
        let mut legs: Vec<(EdgeId, VertexId, VertexId)> = Vec::new();
        for &p in &lv.spine {
            let mut here: Vec<(VertexId, EdgeId)> = adj[p]
                .iter()
                .filter(|&&(_, w)| lv.active.contains(w) && !on_spine.contains(w))
                .map(|&(id, w)| (w, id))
                .collect();
            here.sort();
            legs.extend(here.into_iter().map(|(w, id)| (id, p, w)));
        }
        loop {
            let mut flipped = false;
            for &(id, p, w) in &legs {
                if d.head(id) != Some(p) {
                    continue;
                }
                d.set_arc(id, p, w);
                if inherited.iter().all(|x| crosses_both_ways(&d, &edges, x)) {
                    flipped = true;
                } else {
                    d.set_arc(id, w, p);
                }
            }
            if !flipped {
                break;
            }
        }
        if !lv.sets.iter().all(|x| crosses_both_ways(&d, &edges, x)) {
            log::warn!(
                "caterpillar level {j}: flip fixpoint is not valid, using the brute-force oracle"
            );
            d = fallback(s, lv)?;
        }
    }

    if !valid_directing(s, bias, &d) {
        return Err(Error::Internal("caterpillar directing is not valid".into()));
    }
    Ok(d)
}

fn edge_between(adj: &[Vec<(EdgeId, VertexId)>], a: VertexId, b: VertexId) -> EdgeId {
    adj[a]
        .iter()
        .find(|&&(_, w)| w == b)
        .map(|&(id, _)| id)
        .expect("consecutive spine vertices are adjacent")
}

/// Solves one level with the oracle, on the subtree induced by the active
/// vertices.
fn fallback(s: &Digraph, lv: &Level) -> Result<Directing> {
    let verts: Vec<VertexId> = lv.active.iter().collect();
    let index = |v: VertexId| verts.binary_search(&v).unwrap();
    let mut sub = Digraph::new(verts.len());
    sub.reserve_ids(s.edge_space());
    for (id, a, b) in active_edges(s, &lv.active) {
        sub.insert_edge(id, index(a), index(b));
    }
    let sets = lv
        .sets
        .iter()
        .map(|x| VertexSet::from_iter(verts.len(), x.iter().map(index)));
    let b = Bias::new(verts.len(), sets)?;
    let c = OrientConstraints {
        required_path: Some(lv.spine.iter().map(|&v| index(v)).collect()),
        forbidden_head: None,
    };
    let mut d = brute_force_orient(&sub, &b, &c)?
        .ok_or_else(|| Error::Internal("no valid directing with a directed spine".into()))?;
    if lv.spine.len() >= 2 {
        let id = edge_between(&s.und_adjacency(), lv.spine[0], lv.spine[1]);
        if d.head(id) == Some(index(lv.spine[0])) {
            d = d.reversed();
        }
    }
    Ok(d.arcs().map(|(id, a)| (id, crate::digraph::Edge::new(verts[a.tail], verts[a.head]))).collect())
}

/// Directs a caterpillar subdivision: suppress degree-two vertices, orient
/// the resulting caterpillar, and lift back through each suppression.
pub fn orient_caterpillar_subdivision(s: &Digraph, bias: &Bias) -> Result<Directing> {
    check_hypothesis(s, bias)?;
    let sup = suppress(s, bias)?;
    let spine = sup.spine.ok_or(Error::NotCaterpillarSubdivision)?;
    let mut d = orient_caterpillar(&sup.tree, &spine, &sup.bias)?;
    for ctx in sup.steps.iter().rev() {
        d = lift_series(ctx, &d)?;
    }
    if !valid_directing(s, bias, &d) {
        return Err(Error::Internal("lifted caterpillar directing is not valid".into()));
    }
    Ok(d)
}

/// Leg edges of the spine that could still be flipped to point away from
/// the spine without breaking validity. Empty for flip-maximal directings.
pub fn improvable_legs(
    s: &Digraph,
    spine: &SpineDecomposition,
    bias: &Bias,
    d: &Directing,
) -> Vec<EdgeId> {
    let adj = s.und_adjacency();
    let mut out = Vec::new();
    for (i, legs) in spine.legs.iter().enumerate() {
        let p = spine.spine[i];
        for &w in legs {
            let id = edge_between(&adj, p, w);
            if d.head(id) == Some(p) {
                let mut e = d.clone();
                e.set_arc(id, p, w);
                if valid_directing(s, bias, &e) {
                    out.push(id);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bias::{enumerate_outset_families, outset_bias};
    use crate::digraph::vset;
    use crate::tree::labeled_trees;

    fn spine_directed(s: &Digraph, spine: &[VertexId], d: &Directing) -> bool {
        let adj = s.und_adjacency();
        spine
            .windows(2)
            .all(|w| d.head(edge_between(&adj, w[0], w[1])) == Some(w[1]))
    }

    #[test]
    fn spine_examples() {
        let star = Digraph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]);
        let sp = find_spine(&star).unwrap().unwrap();
        assert_eq!(sp.spine.len(), 3);
        assert_eq!(sp.spine[1], 0);
        assert_eq!(sp.legs.iter().map(Vec::len).sum::<usize>(), 1);

        let path = Digraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        let sp = find_spine(&path).unwrap().unwrap();
        assert_eq!(sp.spine, vec![0, 1, 2, 3]);
        assert!(sp.legs.iter().all(Vec::is_empty));

        let spider = Digraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        assert_eq!(find_spine(&spider).unwrap(), None);
        assert!(is_caterpillar_subdivision(&spider).unwrap().is_some());

        let fig4 = Digraph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (4, 1), (5, 2), (6, 3)]);
        let w = is_caterpillar_subdivision(&fig4).unwrap().unwrap();
        assert!(w.contains(&0));
        assert!(find_spine(&Digraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)])).is_err());
    }

    #[test]
    fn non_subdivision_detected() {
        // A centre with three branches, each ending in a degree-3 vertex.
        let edges = [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 6), (2, 7), (3, 8), (3, 9)];
        let s = Digraph::from_edges(10, &edges);
        assert_eq!(is_caterpillar_subdivision(&s).unwrap(), None);
        assert!(matches!(
            orient_caterpillar_subdivision(&s, &Bias::empty(10)),
            Err(Error::NotCaterpillarSubdivision)
        ));
    }

    #[test]
    fn path_example() {
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let sp = find_spine(&s).unwrap().unwrap();
        // {p2} has a one-edge cut on each side only if it has two edges.
        let b = Bias::new(3, [vset(3, &[1])]).unwrap();
        let d = orient_caterpillar(&s, &sp, &b).unwrap();
        assert_eq!((d.head(0), d.head(1)), (Some(1), Some(2)));
        let d = orient_caterpillar(&s, &sp, &Bias::empty(3)).unwrap();
        assert!(spine_directed(&s, &sp.spine, &d));
    }

    #[test]
    fn hypothesis_violations_reported() {
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let sp = find_spine(&s).unwrap().unwrap();
        let b = Bias::new(3, [vset(3, &[0])]).unwrap();
        assert!(matches!(
            orient_caterpillar(&s, &sp, &b),
            Err(Error::Hypothesis { witness, .. }) if witness == vset(3, &[0])
        ));
    }

    #[test]
    fn all_small_caterpillars_against_oracle() {
        for n in 1..=5 {
            for edges in labeled_trees(n) {
                let s = Digraph::from_edges(n, &edges);
                let Some(sp) = find_spine(&s).unwrap() else { continue };
                for fam in enumerate_outset_families(n).unwrap() {
                    if fam.iter().any(|x| s.und_cut(x).len() < 2) {
                        continue;
                    }
                    let b = Bias::new(n, fam).unwrap();
                    let d = orient_caterpillar(&s, &sp, &b).unwrap();
                    assert!(valid_directing(&s, &b, &d));
                    let sp2 = sp.clone().maximal();
                    assert!(spine_directed(&s, &sp2.spine, &d));
                    assert!(improvable_legs(&s, &sp2, &b, &d).is_empty());
                }
            }
        }
    }

    #[test]
    fn subdivisions_against_oracle() {
        // Spider with three legs of length two and random outset biases.
        let s = Digraph::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]);
        for edges in labeled_trees(7).step_by(997).take(60) {
            let t = Digraph::from_edges(7, &edges);
            let b = outset_bias(&t);
            if b.first_below_cut_bound(&s, 2).is_some() {
                continue;
            }
            let d = orient_caterpillar_subdivision(&s, &b).unwrap();
            assert!(valid_directing(&s, &b, &d));
        }
        let d = orient_caterpillar_subdivision(&s, &Bias::empty(7)).unwrap();
        assert!(d.is_directing_of(&s));
    }
}
