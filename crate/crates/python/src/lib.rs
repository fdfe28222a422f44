//! Python bindings: instances, the dijoin partition solver, the orientation
//! engines and the conjecture harness.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dijoin::bias::{brute_force_orient, valid_directing, OrientConstraints};
use dijoin::caterpillar::orient_caterpillar_subdivision;
use dijoin::fixtures::{self, instance_bias};
use dijoin::harness::{conjecture_check as run_check, Conjecture};
use dijoin::instance::Instance;
use dijoin::planar::{brute_force_bi_acyclic, is_bi_acyclic, orient_planar, solve_orientthm_planar};
use dijoin::solver::{self, Engine, EngineChoice};
use dijoin::tree::is_tree;
use dijoin::{Directing, EdgeSet, Error};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Internal(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn arcs(d: &Directing) -> Vec<(usize, usize, usize)> {
    d.arcs().map(|(id, a)| (id, a.tail, a.head)).collect()
}

/// A graph S and a digraph T on the same vertices.
#[pyclass(name = "Instance", module = "dijoin_py", frozen)]
struct PyInstance {
    inner: Instance,
}

#[pymethods]
impl PyInstance {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Instance::from_json(text).map(|inner| PyInstance { inner }).map_err(py_err)
    }

    /// A built-in fixture: fig3, fig4, wedge5, forest6 or schrijver.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name)
            .map(|inner| PyInstance { inner })
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture {name}")))
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn vertices(&self) -> usize {
        self.inner.vertices()
    }

    /// S-edges as `(id, u, v, head)`.
    fn s_edges(&self) -> Vec<(usize, usize, usize, Option<usize>)> {
        self.inner.s_edges().iter().map(|e| (e.id, e.u, e.v, e.head)).collect()
    }

    /// T-edges as `(id, tail, head)`.
    fn t_edges(&self) -> Vec<(usize, usize, usize)> {
        self.inner.t_edges().iter().map(|e| (e.id, e.tail, e.head)).collect()
    }

    fn has_embedding(&self) -> bool {
        self.inner.embedding().is_some()
    }

    fn to_dot(&self) -> String {
        dijoin::dot::to_dot(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!(
            "Instance(vertices={}, s_edges={}, t_edges={})",
            self.inner.vertices(),
            self.inner.s_edges().len(),
            self.inner.t_edges().len()
        )
    }
}

/// `None` if every directed cut has at least `k` S-edges, else the vertex
/// set of a violating outset.
#[pyfunction]
#[pyo3(signature = (inst, k = 2))]
fn check_cut_condition(inst: PyRef<'_, PyInstance>, k: usize) -> PyResult<Option<Vec<usize>>> {
    let r = solver::check_cut_condition(&inst.inner, k).map_err(py_err)?;
    Ok(r.err().map(|x| x.to_vec()))
}

/// Whether the given edge ids meet every directed cut of S ∪ T.
#[pyfunction]
fn is_dijoin(inst: PyRef<'_, PyInstance>, edges: Vec<usize>) -> PyResult<bool> {
    let space = inst.inner.edge_space();
    if let Some(&bad) = edges.iter().find(|&&e| e >= space) {
        return Err(PyValueError::new_err(format!("edge id {bad} out of range")));
    }
    let g = inst.inner.union_graph();
    let a = EdgeSet::from_iter(space, edges);
    let (fast, slow) = (g.is_dijoin(&a), g.is_dijoin_definitional(&a));
    if fast != slow {
        return Err(PyRuntimeError::new_err("dijoin checks disagree"));
    }
    Ok(fast)
}

/// Splits the S-edges into two dijoins; returns `(a, b)` as edge-id lists.
#[pyfunction]
#[pyo3(signature = (inst, engine = "auto"))]
fn partition_two_dijoins(inst: PyRef<'_, PyInstance>, engine: &str) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let choice = match engine {
        "auto" => EngineChoice::Auto,
        "caterpillar" => EngineChoice::Only(Engine::Caterpillar),
        "planar" => EngineChoice::Only(Engine::Planar),
        _ => return Err(PyValueError::new_err(format!("unknown engine {engine}"))),
    };
    let r = solver::partition_with(&inst.inner, choice).map_err(py_err)?;
    if !r.is_valid_for(&inst.inner) {
        return Err(PyRuntimeError::new_err("result is not a dijoin partition"));
    }
    Ok((r.a.to_vec(), r.b.to_vec()))
}

/// Directs S with the chosen engine ("caterpillar", "planar" or "oracle").
/// Returns `(id, tail, head)` triples, or `None` if the oracle finds no
/// directing.
#[pyfunction]
#[pyo3(signature = (inst, engine = "oracle", t = None, wedge = Vec::new(), require_path = None))]
fn orient(
    inst: PyRef<'_, PyInstance>,
    engine: &str,
    t: Option<usize>,
    wedge: Vec<usize>,
    require_path: Option<Vec<usize>>,
) -> PyResult<Option<Vec<(usize, usize, usize)>>> {
    let inst = &inst.inner;
    let s = inst.s_undirected();
    let tg = inst.t_graph();
    let tree_form = inst.bias().is_none() && inst.vertices() > 0 && is_tree(&tg);
    let root = t.unwrap_or(0);
    if root >= inst.vertices().max(1) || wedge.iter().any(|&id| s.edge(id).is_none_or(|e| !e.has_end(root))) {
        return Err(PyValueError::new_err("invalid wedge"));
    }
    let w = EdgeSet::from_iter(inst.edge_space(), wedge);
    let bias = instance_bias(inst).map_err(py_err)?;
    let d = match engine {
        "caterpillar" => Some(orient_caterpillar_subdivision(&s, &bias).map_err(py_err)?),
        "planar" => {
            let emb = inst
                .embedding()
                .ok_or_else(|| PyValueError::new_err("the planar engine needs an embedding"))?;
            let emb = emb.with_tails(&s.union(&tg).map_err(py_err)?).map_err(py_err)?;
            if tree_form {
                Some(orient_planar(&s, &tg, &emb, root, &w).map_err(py_err)?)
            } else {
                Some(solve_orientthm_planar(&s, &tg, &emb).map_err(py_err)?)
            }
        }
        "oracle" if tree_form && require_path.is_none() => {
            brute_force_bi_acyclic(&s, &tg, t.map(|v| (v, &w))).map_err(py_err)?
        }
        "oracle" => {
            let c = OrientConstraints {
                required_path: require_path,
                forbidden_head: t.map(|v| (v, w.clone())),
            };
            brute_force_orient(&s, &bias, &c).map_err(py_err)?
        }
        _ => return Err(PyValueError::new_err(format!("unknown engine {engine}"))),
    };
    if let Some(d) = &d {
        let ok = if tree_form && engine != "caterpillar" {
            is_bi_acyclic(&s, &tg, d)
        } else {
            valid_directing(&s, &bias, d)
        };
        if !ok {
            return Err(PyRuntimeError::new_err("directing failed validation"));
        }
    }
    Ok(d.as_ref().map(arcs))
}

/// Runs a conjecture on all trees with at most `max_n` vertices; returns
/// `(cases, counterexamples)`.
#[pyfunction]
fn conjecture_check(name: &str, max_n: usize) -> PyResult<(u64, usize)> {
    let conj: Conjecture = name.parse().map_err(py_err)?;
    let r = run_check(conj, max_n).map_err(py_err)?;
    Ok((r.cases, r.counterexamples.len()))
}

/// Names and outcomes of a fixture's built-in expectations.
#[pyfunction]
fn check_fixture(name: &str) -> PyResult<Vec<(String, bool)>> {
    let checks = fixtures::check_fixture(name).map_err(py_err)?;
    Ok(checks.into_iter().map(|c| (c.name, c.ok)).collect())
}

#[pyfunction]
fn fixture_names() -> Vec<&'static str> {
    fixtures::NAMES.to_vec()
}

#[pymodule]
fn dijoin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyInstance>()?;
    m.add_function(wrap_pyfunction!(check_cut_condition, m)?)?;
    m.add_function(wrap_pyfunction!(is_dijoin, m)?)?;
    m.add_function(wrap_pyfunction!(partition_two_dijoins, m)?)?;
    m.add_function(wrap_pyfunction!(orient, m)?)?;
    m.add_function(wrap_pyfunction!(conjecture_check, m)?)?;
    m.add_function(wrap_pyfunction!(check_fixture, m)?)?;
    m.add_function(wrap_pyfunction!(fixture_names, m)?)?;
    Ok(())
}
