//! Exhaustive small-scale checks of the tree orientation conjectures.
//!
//! Every labeled tree on at most `max_n` vertices is crossed with every
//! outset family on its vertex set (labeled preorders), and the oracle
//! looks for a directing meeting every member in both directions.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bias::{brute_force_orient, check_bias, enumerate_outset_families, Bias, OrientConstraints};
use crate::bitset::VertexSet;
use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};
use crate::guard;
use crate::instance::{Instance, InstanceFile};
use crate::tree::{labeled_trees, RootedTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    /// Outset families of a digraph `T`, all members crossed by at least
    /// two tree edges.
    Mainconj,
    /// The members of an outset family crossed by at least two tree edges,
    /// whenever they form a bias.
    BiasconjOutset,
    /// As `BiasconjOutset`, and additionally every path of the tree must be
    /// directable.
    Pathbias,
}

impl Conjecture {
    pub const ALL: [Conjecture; 3] = [Conjecture::Mainconj, Conjecture::BiasconjOutset, Conjecture::Pathbias];

    pub fn name(self) -> &'static str {
        match self {
            Conjecture::Mainconj => "mainconj",
            Conjecture::BiasconjOutset => "biasconj-outset",
            Conjecture::Pathbias => "pathbias",
        }
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Conjecture {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown conjecture {s:?}")))
    }
}

/// A tree (or forest) and family with no valid directing.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub instance: InstanceFile,
    /// The path that could not be made directed, for `pathbias`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path: Option<Vec<VertexId>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub conjecture: Conjecture,
    pub max_n: usize,
    pub trees: u64,
    pub families: u64,
    /// (tree, family) pairs meeting the hypothesis.
    pub cases: u64,
    /// Oracle runs; one per case, or one per path for `pathbias`.
    pub checks: u64,
    pub counterexamples: Vec<Counterexample>,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    /// The hypothesis fails; nothing to check.
    Skipped,
    /// Checked with this many oracle runs, all successful.
    Holds(u64),
    Counterexample(Counterexample),
}

/// The family the conjecture is about, or `None` if the case is outside
/// its hypothesis.
fn hypothesis_family(conj: Conjecture, s: &Digraph, family: &[VertexSet]) -> Result<Option<Vec<VertexSet>>> {
    let crossed = |x: &VertexSet| s.und_cut(x).len() >= 2;
    match conj {
        Conjecture::Mainconj => Ok(family.iter().all(crossed).then(|| family.to_vec())),
        Conjecture::BiasconjOutset | Conjecture::Pathbias => {
            let kept: Vec<VertexSet> = family.iter().filter(|x| crossed(x)).cloned().collect();
            Ok(check_bias(s, &kept)?.is_ok().then_some(kept))
        }
    }
}

fn dump(s: &Digraph, family: Vec<VertexSet>, path: Option<Vec<VertexId>>) -> Result<Counterexample> {
    let inst = Instance::from_graphs(s, &Digraph::new(s.n()), false)?.with_bias(family)?;
    Ok(Counterexample {
        instance: inst.to_file(),
        path,
    })
}

/// Checks one graph `s` against one family.
pub fn check_case(conj: Conjecture, s: &Digraph, family: &[VertexSet]) -> Result<Outcome> {
    let Some(members) = hypothesis_family(conj, s, family)? else {
        return Ok(Outcome::Skipped);
    };
    let bias = Bias::new(s.n(), members.clone())?;
    if conj != Conjecture::Pathbias {
        return Ok(match brute_force_orient(s, &bias, &OrientConstraints::default())? {
            Some(_) => Outcome::Holds(1),
            None => Outcome::Counterexample(dump(s, members, None)?),
        });
    }
    let mut runs = 0;
    for u in 0..s.n() {
        let rooted = RootedTree::new(s, u);
        for v in u + 1..s.n() {
            if !rooted.reaches(v) {
                continue;
            }
            let path = rooted.path_vertices(u, v);
            let c = OrientConstraints {
                required_path: Some(path.clone()),
                forbidden_head: None,
            };
            runs += 1;
            if brute_force_orient(s, &bias, &c)?.is_none() {
                return Ok(Outcome::Counterexample(dump(s, members, Some(path))?));
            }
        }
    }
    Ok(Outcome::Holds(runs))
}

/// Runs `conj` on all trees with at most `max_n` vertices.
pub fn conjecture_check(conj: Conjecture, max_n: usize) -> Result<Report> {
    guard::check("max-n for the conjecture harness", max_n, guard::cap(guard::FAMILY_VERTICES))?;
    let mut report = Report {
        conjecture: conj,
        max_n,
        trees: 0,
        families: 0,
        cases: 0,
        checks: 0,
        counterexamples: Vec::new(),
    };
    for n in 1..=max_n {
        let families: Vec<Vec<VertexSet>> = enumerate_outset_families(n)?.collect();
        report.families += families.len() as u64;
        for edges in labeled_trees(n) {
            report.trees += 1;
            let s = Digraph::from_edges(n, &edges);
            for family in &families {
                match check_case(conj, &s, family)? {
                    Outcome::Skipped => {}
                    Outcome::Holds(runs) => {
                        report.cases += 1;
                        report.checks += runs;
                    }
                    Outcome::Counterexample(c) => {
                        report.cases += 1;
                        report.counterexamples.push(c);
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Runs `conj` on a single given graph and family, such as a forest.
pub fn check_given(conj: Conjecture, s: &Digraph, family: &[VertexSet]) -> Result<Report> {
    let mut report = Report {
        conjecture: conj,
        max_n: s.n(),
        trees: 1,
        families: 1,
        cases: 0,
        checks: 0,
        counterexamples: Vec::new(),
    };
    match check_case(conj, s, family)? {
        Outcome::Skipped => {}
        Outcome::Holds(runs) => {
            report.cases = 1;
            report.checks = runs;
        }
        Outcome::Counterexample(c) => {
            report.cases = 1;
            report.counterexamples.push(c);
        }
    }
    Ok(report)
}
