//! Biases: families of vertex subsets of a graph `S` closed, in a weak
//! sense, under union and intersection across small cuts.
//!
//! A family `B` over `V(S)` is a bias when
//!
//! 1. no member is `∅` or `V(S)`;
//! 2. if `A, B ∈ B` and `D(A,B) = ∅` then `A ∩ B` and `A ∪ B` both lie in
//!    `B ∪ {∅, V(S)}`;
//! 3. if `A, B ∈ B` and `|D(A,B)| = 1` then at least one of them does.
//!
//! [`Bias`] does not assume these axioms; [`check_bias`] verifies them.

use std::collections::HashSet;

use crate::bitset::{EdgeSet, VertexSet};
use crate::digraph::{Digraph, Directing, Edge, EdgeId, VertexId};
use crate::error::{Error, Result};
use crate::guard;

/// A deduplicated, sorted family of vertex sets of a fixed ground width.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bias {
    ground: usize,
    sets: Vec<VertexSet>,
}

impl Bias {
    pub fn new(ground: usize, sets: impl IntoIterator<Item = VertexSet>) -> Result<Self> {
        let mut v: Vec<VertexSet> = sets.into_iter().collect();
        for s in &v {
            if s.width() != ground {
                return Err(Error::WidthMismatch {
                    left: ground,
                    right: s.width(),
                });
            }
        }
        v.sort();
        v.dedup();
        Ok(Bias { ground, sets: v })
    }

    pub fn empty(ground: usize) -> Self {
        Bias {
            ground,
            sets: Vec::new(),
        }
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn sets(&self) -> &[VertexSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, x: &VertexSet) -> bool {
        self.sets.binary_search(x).is_ok()
    }

    /// The family of complements.
    pub fn reverse(&self) -> Bias {
        let mut sets: Vec<_> = self.sets.iter().map(|x| x.complement()).collect();
        sets.sort();
        Bias {
            ground: self.ground,
            sets,
        }
    }

    /// Members `X` with `|D_S(X)| < bound`, the first one if any.
    pub fn first_below_cut_bound(&self, s: &Digraph, bound: usize) -> Option<VertexSet> {
        self.sets.iter().copied().find(|x| s.und_cut(x).len() < bound)
    }
}

/// Which axiom a family breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BiasViolation {
    /// A member equal to `∅` or the ground set.
    Trivial(VertexSet),
    /// A pair with `|D(A,B)| = cross ≤ 1` whose meet and join are not
    /// sufficiently present.
    Pair {
        a: VertexSet,
        b: VertexSet,
        cross: usize,
    },
}

/// Checks the three bias axioms for `family` over the graph `s`.
pub fn check_bias(s: &Digraph, family: &[VertexSet]) -> Result<std::result::Result<(), BiasViolation>> {
    let n = s.n();
    for x in family {
        if x.width() != n {
            return Err(Error::WidthMismatch {
                left: n,
                right: x.width(),
            });
        }
    }
    for x in family {
        if !x.is_proper_nonempty() {
            return Ok(Err(BiasViolation::Trivial(*x)));
        }
    }
    let members: HashSet<u128> = family.iter().map(|x| x.bits()).collect();
    let allowed = |x: &VertexSet| x.is_empty() || x.is_full() || members.contains(&x.bits());
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            let cross = s.und_cut_between_len(a, b);
            if cross > 1 {
                continue;
            }
            let meet = allowed(&a.intersection(b));
            let join = allowed(&a.union(b));
            let ok = if cross == 0 { meet && join } else { meet || join };
            if !ok {
                return Ok(Err(BiasViolation::Pair {
                    a: *a,
                    b: *b,
                    cross,
                }));
            }
        }
    }
    Ok(Ok(()))
}

pub fn is_bias(s: &Digraph, family: &[VertexSet]) -> Result<bool> {
    Ok(check_bias(s, family)?.is_ok())
}

/// The family of all outsets of `t`. It is a bias over any graph on the
/// same vertex set.
pub fn outset_bias(t: &Digraph) -> Bias {
    Bias {
        ground: t.n(),
        sets: t.outsets(),
    }
}

/// Every member has an `S`-edge leaving it and one entering it under `d`.
pub fn valid_directing(s: &Digraph, bias: &Bias, d: &Directing) -> bool {
    let arcs: Vec<Edge> = s
        .edges()
        .map(|(id, e)| d.arc(id).unwrap_or(e))
        .collect();
    bias.sets().iter().all(|x| {
        let out = arcs
            .iter()
            .any(|a| x.contains(a.tail) && !x.contains(a.head));
        let inn = arcs
            .iter()
            .any(|a| x.contains(a.head) && !x.contains(a.tail));
        out && inn
    })
}

/// Members of `bias` violated by `d`, in order.
pub fn violated_members(s: &Digraph, bias: &Bias, d: &Directing) -> Vec<VertexSet> {
    bias.sets()
        .iter()
        .copied()
        .filter(|x| !valid_directing(s, &Bias { ground: bias.ground, sets: vec![*x] }, d))
        .collect()
}

/// Extra requirements for [`brute_force_orient`].
#[derive(Clone, Debug, Default)]
pub struct OrientConstraints {
    /// A path of `S`, as a vertex sequence, that must become a directed path
    /// (in either direction).
    pub required_path: Option<Vec<VertexId>>,
    /// `(t, W)`: no edge of `W` may have head `t`.
    pub forbidden_head: Option<(VertexId, EdgeSet)>,
}

/// Precomputed crossing masks for fast scans over all directings of `s`.
///
/// Bit `i` of a directing mask reverses the `i`-th edge of `s` (in id
/// order) against its stored orientation.
pub(crate) struct Scanner {
    pub ids: Vec<EdgeId>,
    pub stored: Vec<Edge>,
    fwd: Vec<u64>,
    bwd: Vec<u64>,
}

impl Scanner {
    pub fn new(s: &Digraph, sets: &[VertexSet]) -> Self {
        let (ids, stored): (Vec<_>, Vec<_>) = s.edges().unzip();
        let mut fwd = Vec::with_capacity(sets.len());
        let mut bwd = Vec::with_capacity(sets.len());
        for x in sets {
            let (mut f, mut b) = (0u64, 0u64);
            for (i, e) in stored.iter().enumerate() {
                let (t, h) = (x.contains(e.tail), x.contains(e.head));
                if t && !h {
                    f |= 1 << i;
                } else if h && !t {
                    b |= 1 << i;
                }
            }
            fwd.push(f);
            bwd.push(b);
        }
        Scanner {
            ids,
            stored,
            fwd,
            bwd,
        }
    }

    #[inline]
    pub fn valid(&self, rev: u64) -> bool {
        self.fwd.iter().zip(&self.bwd).all(|(&f, &b)| {
            let out = (f & !rev) | (b & rev);
            let inn = (f & rev) | (b & !rev);
            out != 0 && inn != 0
        })
    }

    pub fn directing(&self, rev: u64) -> Directing {
        self.ids
            .iter()
            .zip(&self.stored)
            .enumerate()
            .map(|(i, (&id, &e))| (id, if rev >> i & 1 == 1 { e.reversed() } else { e }))
            .collect()
    }
}

/// Finds a directing valid for `bias` (and the optional side conditions) by
/// scanning all `2^|E(S)|` directings in order; `None` if there is none.
pub fn brute_force_orient(
    s: &Digraph,
    bias: &Bias,
    constraints: &OrientConstraints,
) -> Result<Option<Directing>> {
    let m = s.edge_count();
    guard::check("|E(S)| for directing scan", m, guard::cap(guard::ORIENT_EDGES).min(63))?;
    let scan = Scanner::new(s, bias.sets());
    let position = |id: EdgeId| scan.ids.iter().position(|&x| x == id);

    // Path edges as (position, stored orientation agrees with path order).
    let mut path_steps: Vec<(usize, bool)> = Vec::new();
    if let Some(path) = &constraints.required_path {
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let i = scan
                .stored
                .iter()
                .position(|e| (e.tail == a && e.head == b) || (e.tail == b && e.head == a))
                .ok_or_else(|| Error::Precondition(format!("no edge {a}-{b} on required path")))?;
            path_steps.push((i, scan.stored[i].tail == a));
        }
    }
    // Forbidden heads as (position, head stays at the vertex when stored).
    let mut forbidden: Vec<(usize, bool)> = Vec::new();
    if let Some((t, w)) = &constraints.forbidden_head {
        for id in w.iter() {
            let i = position(id)
                .ok_or_else(|| Error::Precondition(format!("edge {id} is not in S")))?;
            let e = scan.stored[i];
            if !e.has_end(*t) {
                return Err(Error::Precondition(format!("edge {id} is not incident with {t}")));
            }
            forbidden.push((i, e.head == *t));
        }
    }

    for rev in 0..(1u64 << m) {
        if !path_steps.is_empty() {
            let along = |&(i, agrees): &(usize, bool)| (rev >> i & 1 == 0) == agrees;
            let fwd = path_steps.iter().all(along);
            let bwd = path_steps.iter().all(|p| !along(p));
            if !fwd && !bwd {
                continue;
            }
        }
        // Stored head at t is fine only if the edge is reversed.
        if forbidden
            .iter()
            .any(|&(i, head_at_t)| (rev >> i & 1 == 1) != head_at_t)
        {
            continue;
        }
        if scan.valid(rev) {
            return Ok(Some(scan.directing(rev)));
        }
    }
    Ok(None)
}

/// The ingredients needed to lift a directing back through a series
/// reduction.
#[derive(Clone, Debug)]
pub struct SeriesContext {
    /// The tree before reduction.
    pub original: Digraph,
    pub original_bias: Bias,
    pub u: VertexId,
    pub v: VertexId,
    pub w: VertexId,
    /// Edge ids of `uv` and `vw` in the original tree.
    pub uv: EdgeId,
    pub vw: EdgeId,
    /// Id of the new edge `uw` in the reduced tree.
    pub uw: EdgeId,
}

impl SeriesContext {
    /// Reduced vertex id → original vertex id.
    pub fn lift_vertex(&self, x: VertexId) -> VertexId {
        if x < self.v {
            x
        } else {
            x + 1
        }
    }

    /// Original vertex id → reduced vertex id (`None` for the deleted vertex).
    pub fn reduce_vertex(&self, x: VertexId) -> Option<VertexId> {
        match x.cmp(&self.v) {
            std::cmp::Ordering::Less => Some(x),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(x - 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesReduction {
    pub tree: Digraph,
    pub bias: Bias,
    pub context: SeriesContext,
}

/// Whether `x ∩ {u, v, w}` is one of ∅, {u}, {u,v}, {u,v,w}, {v,w}, {w}.
pub fn is_linear(x: &VertexSet, u: VertexId, v: VertexId, w: VertexId) -> bool {
    let (a, b, c) = (x.contains(u), x.contains(v), x.contains(w));
    // Exactly the patterns where v is in X only if u or w is, and v is in X
    // whenever both u and w are.
    !(b && !a && !c) && !(a && c && !b)
}

/// Suppresses the degree-two vertex `v` of tree `s`, joining its neighbours
/// by a new edge, and keeps the linear members of `bias` restricted to the
/// remaining vertices.
pub fn series_reduce(s: &Digraph, bias: &Bias, v: VertexId) -> Result<SeriesReduction> {
    let inc = s.incident(v);
    if inc.len() != 2 || inc[0].1 == v || inc[1].1 == v || inc[0].1 == inc[1].1 {
        return Err(Error::Precondition(format!(
            "vertex {v} does not have degree two with distinct neighbours"
        )));
    }
    let (uv, u) = inc[0];
    let (vw, w) = inc[1];
    let reduce = |x: VertexId| if x < v { x } else { x - 1 };
    let mut tree = Digraph::new(s.n() - 1);
    let uw = s.edge_space();
    tree.reserve_ids(uw + 1);
    for (id, e) in s.edges() {
        if id != uv && id != vw {
            tree.insert_edge(id, reduce(e.tail), reduce(e.head));
        }
    }
    tree.insert_edge(uw, reduce(u), reduce(w));

    let sets = bias
        .sets()
        .iter()
        .filter(|x| is_linear(x, u, v, w))
        .map(|x| VertexSet::from_iter(s.n() - 1, x.iter().filter(|&y| y != v).map(reduce)));
    let reduced = Bias::new(s.n() - 1, sets)?;
    Ok(SeriesReduction {
        tree,
        bias: reduced,
        context: SeriesContext {
            original: s.clone(),
            original_bias: bias.clone(),
            u,
            v,
            w,
            uv,
            vw,
            uw,
        },
    })
}

/// Lifts a directing of the reduced tree back to the original: every edge
/// other than `uv, vw` keeps its head; of `uv, vw`, one is headed at `v` and
/// the other at the head of `uw`. The result is checked against the original
/// bias.
pub fn lift_series(ctx: &SeriesContext, reduced: &Directing) -> Result<Directing> {
    let mut d = Directing::new();
    for (id, a) in reduced.arcs() {
        if id == ctx.uw {
            continue;
        }
        d.set_arc(id, ctx.lift_vertex(a.tail), ctx.lift_vertex(a.head));
    }
    let head = reduced
        .head(ctx.uw)
        .map(|h| ctx.lift_vertex(h))
        .ok_or_else(|| Error::Precondition("reduced directing misses the new edge".into()))?;
    if head == ctx.w {
        d.set_arc(ctx.uv, ctx.u, ctx.v);
        d.set_arc(ctx.vw, ctx.v, ctx.w);
    } else {
        d.set_arc(ctx.vw, ctx.w, ctx.v);
        d.set_arc(ctx.uv, ctx.v, ctx.u);
    }
    if !valid_directing(&ctx.original, &ctx.original_bias, &d) {
        return Err(Error::Internal(format!(
            "lifted directing through vertex {} is not valid",
            ctx.v
        )));
    }
    Ok(d)
}

/// Largest vertex count [`OutsetFamilies`] can represent.
pub const MAX_FAMILY_VERTICES: usize = 8;

/// Iterator over the outset families of all preorders on `n` labeled
/// vertices. A family is the list of proper nonempty down-sets of a
/// preorder, which is exactly the outset family of the digraph of the
/// preorder; every outset family of an `n`-vertex digraph appears.
///
/// Preorders are built one element at a time: a preorder on `k + 1`
/// elements is a preorder on `k` elements plus a down-closed set `D` of
/// elements below the new one and an up-closed set `U` above it with every
/// element of `D` below every element of `U`.
pub struct OutsetFamilies {
    n: usize,
    stack: Vec<Frame>,
}

struct Frame {
    k: usize,
    le: [u8; MAX_FAMILY_VERTICES],
    downs: Vec<u8>,
    di: usize,
    ui: usize,
}

/// Enumerates outset families with the default vertex guard.
pub fn enumerate_outset_families(n: usize) -> Result<OutsetFamilies> {
    enumerate_outset_families_capped(n, guard::cap(guard::FAMILY_VERTICES))
}

pub fn enumerate_outset_families_capped(n: usize, cap: usize) -> Result<OutsetFamilies> {
    guard::check("vertices for preorder enumeration", n, cap.min(MAX_FAMILY_VERTICES))?;
    Ok(OutsetFamilies {
        n,
        stack: vec![Frame {
            k: 0,
            le: [0; MAX_FAMILY_VERTICES],
            downs: vec![0],
            di: 0,
            ui: 0,
        }],
    })
}

impl Iterator for OutsetFamilies {
    type Item = Vec<VertexSet>;

    fn next(&mut self) -> Option<Vec<VertexSet>> {
        let n = self.n;
        loop {
            let top = self.stack.last_mut()?;
            if top.k == n {
                let full = ((1u16 << n) - 1) as u8;
                let family = top
                    .downs
                    .iter()
                    .filter(|&&d| d != 0 && d != full)
                    .map(|&d| VertexSet::from_bits(n, d as u128))
                    .collect();
                self.stack.pop();
                return Some(family);
            }
            let k = top.k;
            let full = ((1u16 << k) - 1) as u8;
            // Next (D, U) pair; up-sets are complements of down-sets.
            let mut found = None;
            while top.di < top.downs.len() {
                let d = top.downs[top.di];
                while top.ui < top.downs.len() {
                    let u = full & !top.downs[top.ui];
                    top.ui += 1;
                    let ok = (0..k).all(|b| u >> b & 1 == 0 || d & !top.le[b] == 0);
                    if ok {
                        found = Some((d, u));
                        break;
                    }
                }
                if found.is_some() {
                    break;
                }
                top.di += 1;
                top.ui = 0;
            }
            let Some((d, u)) = found else {
                self.stack.pop();
                continue;
            };
            let bit = 1u8 << k;
            let mut le = top.le;
            le[k] = d | bit;
            for b in 0..k {
                if u >> b & 1 == 1 {
                    le[b] |= bit;
                }
            }
            let mut downs = Vec::with_capacity(top.downs.len() * 2);
            downs.extend(top.downs.iter().filter(|&&y| y & u == 0).copied());
            downs.extend(top.downs.iter().filter(|&&y| d & !y == 0).map(|&y| y | bit));
            self.stack.push(Frame {
                k: k + 1,
                le,
                downs,
                di: 0,
                ui: 0,
            });
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::vset;

    fn forest6() -> (Digraph, Vec<VertexSet>) {
        let s = Digraph::from_edges(6, &[(0, 1), (2, 3), (4, 5)]);
        let fam = vec![
            vset(6, &[0, 2, 4]),
            vset(6, &[0, 3, 5]),
            vset(6, &[1, 2, 5]),
            vset(6, &[1, 3, 4]),
        ];
        (s, fam)
    }

    #[test]
    fn forest6_is_an_unorientable_bias() {
        let (s, fam) = forest6();
        assert!(is_bias(&s, &fam).unwrap());
        let b = Bias::new(6, fam).unwrap();
        assert!(b.sets().iter().all(|x| s.und_cut(x).len() == 3));
        assert_eq!(
            brute_force_orient(&s, &b, &OrientConstraints::default()).unwrap(),
            None
        );
    }

    #[test]
    fn trivial_member_violates_axiom_one() {
        let s = Digraph::from_edges(2, &[(0, 1)]);
        assert_eq!(
            check_bias(&s, &[vset(2, &[])]).unwrap(),
            Err(BiasViolation::Trivial(vset(2, &[])))
        );
        // {v1},{v2} cross in one edge; their meet is empty, which is allowed.
        assert!(is_bias(&s, &[vset(2, &[0]), vset(2, &[1])]).unwrap());
        assert!(matches!(
            check_bias(&s, &[vset(3, &[0])]),
            Err(Error::WidthMismatch { .. })
        ));
    }

    #[test]
    fn pair_violation_is_reported() {
        // On a path a-b-c, {a} and {c} cross in zero edges; their union
        // {a,c} is missing.
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let fam = [vset(3, &[0]), vset(3, &[2])];
        assert_eq!(
            check_bias(&s, &fam).unwrap(),
            Err(BiasViolation::Pair {
                a: vset(3, &[0]),
                b: vset(3, &[2]),
                cross: 0
            })
        );
    }

    #[test]
    fn outset_bias_examples() {
        let cyc = Digraph::from_edges(2, &[(0, 1), (1, 0)]);
        assert!(outset_bias(&cyc).is_empty());
        assert_eq!(
            outset_bias(&Digraph::from_edges(2, &[(0, 1)])).sets(),
            &[vset(2, &[0])]
        );
        assert_eq!(
            outset_bias(&Digraph::from_edges(3, &[(0, 1), (1, 2)])).sets(),
            &[vset(3, &[0]), vset(3, &[0, 1])]
        );
    }

    #[test]
    fn reverse_bias_examples() {
        let b = Bias::new(2, [vset(2, &[0])]).unwrap();
        assert_eq!(b.reverse().sets(), &[vset(2, &[1])]);
        assert_eq!(b.reverse().reverse(), b);
    }

    #[test]
    fn valid_directing_examples() {
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        assert!(valid_directing(&s, &Bias::empty(3), &Directing::as_stored(&s)));
        let b = Bias::new(3, [vset(3, &[1])]).unwrap();
        let d = Directing::as_stored(&s);
        assert_eq!((d.head(0), d.head(1)), (Some(1), Some(2)));
        assert!(valid_directing(&s, &b, &d));
        let (f, fam) = forest6();
        let fb = Bias::new(6, fam).unwrap();
        for rev in 0..8u32 {
            let d: Directing = f
                .edges()
                .map(|(id, e)| (id, if rev >> id & 1 == 1 { e.reversed() } else { e }))
                .collect();
            assert!(!valid_directing(&f, &fb, &d));
        }
    }

    #[test]
    fn brute_force_with_required_path() {
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = Bias::new(3, [vset(3, &[1])]).unwrap();
        let c = OrientConstraints {
            required_path: Some(vec![0, 1, 2]),
            forbidden_head: None,
        };
        let d = brute_force_orient(&s, &b, &c).unwrap().unwrap();
        assert_eq!((d.head(0), d.head(1)), (Some(1), Some(2)));
        // Empty bias: the first directing in scan order is the stored one.
        let d = brute_force_orient(&s, &Bias::empty(3), &OrientConstraints::default())
            .unwrap()
            .unwrap();
        assert_eq!(d, Directing::as_stored(&s));
    }

    #[test]
    fn brute_force_with_forbidden_head() {
        let s = Digraph::from_edges(3, &[(0, 1), (2, 1)]);
        let c = OrientConstraints {
            required_path: None,
            forbidden_head: Some((1, EdgeSet::full(2))),
        };
        let d = brute_force_orient(&s, &Bias::empty(3), &c).unwrap().unwrap();
        assert_eq!((d.head(0), d.head(1)), (Some(0), Some(2)));
    }

    #[test]
    fn linearity_table() {
        let (u, v, w) = (0, 1, 2);
        let lin = |xs: &[usize]| is_linear(&vset(3, xs), u, v, w);
        for ok in [&[][..], &[0], &[0, 1], &[0, 1, 2], &[1, 2], &[2]] {
            assert!(lin(ok), "{ok:?}");
        }
        assert!(!lin(&[1]));
        assert!(!lin(&[0, 2]));
    }

    #[test]
    fn series_reduce_examples() {
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        let r = series_reduce(&s, &Bias::new(3, [vset(3, &[0])]).unwrap(), 1).unwrap();
        assert_eq!(r.tree.n(), 2);
        assert_eq!(r.tree.edge_count(), 1);
        assert_eq!(r.bias.sets(), &[vset(2, &[0])]);

        let r = series_reduce(&s, &Bias::new(3, [vset(3, &[1])]).unwrap(), 1).unwrap();
        assert!(r.bias.is_empty());

        // T = {c -> a} over a-b-c: its only outset {c} is linear.
        let t = Digraph::from_edges(3, &[(2, 0)]);
        let r = series_reduce(&s, &outset_bias(&t), 1).unwrap();
        assert_eq!(r.bias.sets(), &[vset(2, &[1])]);

        assert!(series_reduce(&s, &Bias::empty(3), 0).is_err());
    }

    #[test]
    fn lift_series_two_cases() {
        let s = Digraph::from_edges(3, &[(0, 1), (1, 2)]);
        // {a, c} is not linear, so the reduced bias is empty.
        let b = Bias::new(3, [vset(3, &[0, 2])]).unwrap();
        let r = series_reduce(&s, &b, 1).unwrap();
        assert!(r.bias.is_empty());
        let uw = r.context.uw;
        let mut d = Directing::new();
        d.set_arc(uw, 0, 1); // a -> c in reduced numbering
        let lifted = lift_series(&r.context, &d).unwrap();
        assert_eq!((lifted.head(0), lifted.head(1)), (Some(1), Some(2)));

        let mut d = Directing::new();
        d.set_arc(uw, 1, 0);
        let lifted = lift_series(&r.context, &d).unwrap();
        assert_eq!((lifted.head(0), lifted.head(1)), (Some(0), Some(1)));
    }

    #[test]
    fn family_counts_match_preorder_counts() {
        // Number of preorders on n labeled points.
        let expected = [1usize, 1, 4, 29, 355, 6942];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(enumerate_outset_families(n).unwrap().count(), e, "n = {n}");
        }
        assert!(enumerate_outset_families_capped(7, 6).is_err());
    }

    #[test]
    fn two_point_families() {
        let mut fams: Vec<Vec<VertexSet>> = enumerate_outset_families(2).unwrap().collect();
        fams.sort();
        let mut want = vec![
            vec![],
            vec![vset(2, &[0])],
            vec![vset(2, &[1])],
            vec![vset(2, &[0]), vset(2, &[1])],
        ];
        want.sort();
        assert_eq!(fams, want);
        assert_eq!(enumerate_outset_families(1).unwrap().collect::<Vec<_>>(), vec![vec![]]);
    }

    #[test]
    fn every_four_point_family_is_a_bias() {
        // Any graph works for the axioms; use the complete graph so D(A,B) is
        // as large as possible and the path so it is small.
        let s = Digraph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]);
        for fam in enumerate_outset_families(4).unwrap() {
            assert!(is_bias(&s, &fam).unwrap(), "{fam:?}");
        }
    }
}
