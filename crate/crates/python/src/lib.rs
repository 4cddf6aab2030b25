//! Python bindings for `turan-core`.
//!
//! Hypergraphs cross the boundary as the `Hypergraph` class; patterns may be
//! given either as spec strings or as `Hypergraph` values. Exact bounds come
//! back as `fractions.Fraction`.

#![allow(clippy::useless_conversion)]

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use turan_core::bounds::{self, Rational};
use turan_core::constructions;
use turan_core::embed;
use turan_core::search::{self, BoundKind, Engine, SearchOptions, SearchProblem};

create_exception!(
    pyturan,
    TuranError,
    PyValueError,
    "Raised for invalid input or an infeasible request."
);

fn err(e: turan_core::Error) -> PyErr {
    TuranError::new_err(e.to_string())
}

/// An r-uniform hypergraph on vertices `0..n` with sorted edges.
#[pyclass(name = "Hypergraph", module = "pyturan", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq, Eq)]
pub struct PyHypergraph {
    inner: turan_core::Hypergraph,
}

impl From<turan_core::Hypergraph> for PyHypergraph {
    fn from(inner: turan_core::Hypergraph) -> Self {
        PyHypergraph { inner }
    }
}

#[pymethods]
impl PyHypergraph {
    #[new]
    fn new(n: usize, r: usize, edges: Vec<Vec<usize>>) -> PyResult<Self> {
        turan_core::Hypergraph::new(n, r, edges)
            .map(Self::from)
            .map_err(err)
    }

    /// Complete r-graph on n vertices.
    #[staticmethod]
    fn complete(n: usize, r: usize) -> PyResult<Self> {
        turan_core::Hypergraph::complete(n, r)
            .map(Self::from)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        turan_core::Hypergraph::from_json(s)
            .map(Self::from)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn r(&self) -> usize {
        self.inner.r()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<usize>> {
        self.inner.edges().to_vec()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn degree(&self, v: usize) -> PyResult<usize> {
        if v >= self.inner.n() {
            return Err(err(turan_core::Error::OutOfRange {
                vertex: v,
                n: self.inner.n(),
            }));
        }
        Ok(self.inner.degree(v))
    }

    fn min_degree(&self) -> usize {
        self.inner.min_degree()
    }

    fn has_edge(&self, edge: Vec<usize>) -> bool {
        let mut e = edge;
        e.sort_unstable();
        self.inner.has_edge(&e)
    }

    fn is_linear(&self) -> bool {
        self.inner.is_linear()
    }

    fn induced(&self, vertices: Vec<usize>) -> PyResult<Self> {
        self.inner.induced(&vertices).map(Self::from).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.inner.edge_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph(n={}, r={}, edges={:?})",
            self.inner.n(),
            self.inner.r(),
            self.inner.edges()
        )
    }
}

/// A pattern argument: a spec string such as `"S3(P3+K2)"` or a hypergraph.
#[derive(FromPyObject)]
enum Pattern {
    Spec(String),
    Graph(PyHypergraph),
}

impl Pattern {
    fn build(self) -> PyResult<turan_core::Hypergraph> {
        match self {
            Pattern::Spec(s) => turan_core::make_pattern(&s).map_err(err),
            Pattern::Graph(g) => Ok(g.inner),
        }
    }
}

fn fraction<'py>(py: Python<'py>, x: Rational) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*x.numer(), *x.denom()))
}

fn rational(value: &Bound<'_, PyAny>) -> PyResult<Rational> {
    let numer: i128 = value.getattr("numerator")?.extract()?;
    let denom: i128 = value.getattr("denominator")?.extract()?;
    if denom == 0 {
        return Err(PyValueError::new_err("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

/// Builds the (hyper)graph described by a pattern spec.
#[pyfunction]
fn make_pattern(spec: &str) -> PyResult<PyHypergraph> {
    turan_core::make_pattern(spec)
        .map(PyHypergraph::from)
        .map_err(err)
}

#[pyfunction]
fn suspend(graph: Pattern, r: usize) -> PyResult<PyHypergraph> {
    turan_core::suspend(&graph.build()?, r)
        .map(PyHypergraph::from)
        .map_err(err)
}

#[pyfunction]
fn link(h: &PyHypergraph, vertices: Vec<usize>) -> PyResult<PyHypergraph> {
    turan_core::link(&h.inner, &vertices)
        .map(PyHypergraph::from)
        .map_err(err)
}

#[pyfunction]
fn blowup(h: &PyHypergraph, sizes: Vec<i64>) -> PyResult<PyHypergraph> {
    turan_core::blowup(&h.inner, &sizes)
        .map(PyHypergraph::from)
        .map_err(err)
}

/// Link class of `v` in a 3-graph, e.g. `"matching"` or `"star"`.
#[pyfunction]
fn classify_link(h: &PyHypergraph, v: usize) -> PyResult<String> {
    turan_core::classify_link(&h.inner, v)
        .map(|c| c.to_string())
        .map_err(err)
}

/// An embedding of the pattern as a list `pattern vertex -> host vertex`, or None.
#[pyfunction]
fn contains(host: &PyHypergraph, pattern: Pattern) -> PyResult<Option<Vec<usize>>> {
    Ok(embed::contains(&host.inner, &pattern.build()?)
        .map_err(err)?
        .map(|e| e.map))
}

#[pyfunction]
fn is_free(host: &PyHypergraph, pattern: Pattern) -> PyResult<bool> {
    embed::is_free(&host.inner, &pattern.build()?).map_err(err)
}

#[pyfunction]
fn count_copies(host: &PyHypergraph, pattern: Pattern) -> PyResult<u64> {
    embed::count_copies(&host.inner, &pattern.build()?).map_err(err)
}

#[pyfunction]
fn suspension_free_via_links(host: &PyHypergraph, graph: Pattern) -> PyResult<bool> {
    embed::suspension_free_via_links(&host.inner, &graph.build()?).map_err(err)
}

#[pyfunction]
fn is_isomorphic(a: &PyHypergraph, b: &PyHypergraph) -> PyResult<bool> {
    embed::is_isomorphic(&a.inner, &b.inner).map_err(err)
}

#[pyfunction]
fn canonical_form(h: &PyHypergraph) -> PyResult<PyHypergraph> {
    embed::canonical_form(&h.inner)
        .map(|c| c.into_hypergraph().into())
        .map_err(err)
}

#[pyfunction]
fn automorphism_count(h: &PyHypergraph) -> PyResult<u128> {
    embed::automorphism_count(&h.inner).map_err(err)
}

/// A map `V(H') -> V(H)` showing that `H'` lies in a blowup of `H`, or None.
#[pyfunction]
fn blowup_contains(h: &PyHypergraph, hprime: Pattern) -> PyResult<Option<Vec<usize>>> {
    Ok(embed::blowup_contains(&h.inner, &hprime.build()?)
        .map_err(err)?
        .map(|w| w.map))
}

#[pyfunction]
fn steiner_triple_system(m: usize) -> PyResult<PyHypergraph> {
    constructions::steiner_triple_system(m)
        .map(PyHypergraph::from)
        .map_err(err)
}

#[pyfunction]
fn fores_construction(n: usize) -> PyResult<PyHypergraph> {
    constructions::fores_construction(n)
        .map(PyHypergraph::from)
        .map_err(err)
}

#[pyfunction]
fn validate_design(h: &PyHypergraph, k: usize, lam: usize) -> PyResult<bool> {
    constructions::validate_design(&h.inner, k, lam).map_err(err)
}

/// Exact `ex_r(n, family)`. Returns `(value, witness)`.
#[pyfunction]
#[pyo3(signature = (n, r, forbidden, engine="bnb", workers=1, node_limit=None, compatible_bound=false))]
fn max_edges(
    n: usize,
    r: usize,
    forbidden: Vec<Pattern>,
    engine: &str,
    workers: usize,
    node_limit: Option<u64>,
    compatible_bound: bool,
) -> PyResult<(usize, PyHypergraph)> {
    let engine = match engine {
        "oracle" => Engine::Oracle,
        "bnb" => Engine::BranchAndBound,
        other => return Err(PyValueError::new_err(format!("unknown engine {other:?}"))),
    };
    let forbidden = forbidden
        .into_iter()
        .map(Pattern::build)
        .collect::<PyResult<Vec<_>>>()?;
    let problem = SearchProblem::new(n, r, forbidden, engine).map_err(err)?;
    let opts = SearchOptions {
        workers: workers.max(1),
        bound: if compatible_bound {
            BoundKind::Compatible
        } else {
            BoundKind::Remaining
        },
        node_limit,
        ..Default::default()
    };
    let res = search::solve_with(&problem, &opts).map_err(err)?;
    Ok((res.value, res.witness.into()))
}

/// Partition and claim verdicts for a 3-graph, as a dict.
#[pyfunction]
#[pyo3(signature = (h, must_be_free=false))]
fn verify_fores_structure<'py>(
    py: Python<'py>,
    h: &PyHypergraph,
    must_be_free: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let rep = search::verify_fores_structure(&h.inner, must_be_free).map_err(err)?;
    let d = PyDict::new(py);
    d.set_item("M", rep.partition.m.clone())?;
    d.set_item("S1", rep.partition.s1.clone())?;
    d.set_item("S2", rep.partition.s2.clone())?;
    let claims = PyDict::new(py);
    for c in &rep.claims {
        claims.set_item(c.claim.label(), c.passed)?;
    }
    d.set_item("claims", claims)?;
    d.set_item("all_passed", rep.all_passed())?;
    Ok(d)
}

#[pyfunction]
fn simpli_bound<'py>(
    py: Python<'py>,
    n: usize,
    r: usize,
    k: usize,
    base: &Bound<'py, PyAny>,
) -> PyResult<Bound<'py, PyAny>> {
    fraction(
        py,
        bounds::simpli_bound(n, r, k, rational(base)?).map_err(err)?,
    )
}

#[pyfunction]
fn kalai_bound(py: Python<'_>, n: usize, r: usize, t: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, bounds::kalai_bound(n, r, t).map_err(err)?)
}

#[pyfunction]
fn tree_suspension_bound(
    py: Python<'_>,
    n: usize,
    r: usize,
    t: usize,
) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, bounds::tree_suspension_bound(n, r, t).map_err(err)?)
}

#[pyfunction]
fn gs_bound(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, bounds::gs_bound(n).map_err(err)?)
}

#[pyfunction]
fn fores_bound(py: Python<'_>, n: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, bounds::fores_bound(n).map_err(err)?)
}

#[pyfunction]
fn erdos_sos_bound(py: Python<'_>, n: usize, t: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, bounds::erdos_sos_bound(n, t).map_err(err)?)
}

#[pyfunction]
fn stein_bound(py: Python<'_>, n: usize, t: usize) -> PyResult<Bound<'_, PyAny>> {
    fraction(py, bounds::stein_bound(n, t).map_err(err)?)
}

/// The bounds table for a family as CSV text.
#[pyfunction]
#[pyo3(signature = (family, n_from, n_to, search=false))]
fn bounds_report(family: &str, n_from: usize, n_to: usize, search: bool) -> PyResult<String> {
    let rows = bounds::bounds_report(family, n_from, n_to, search).map_err(err)?;
    Ok(bounds::report_csv(&rows))
}

#[pymodule]
fn pyturan(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("TuranError", m.py().get_type::<TuranError>())?;
    m.add_class::<PyHypergraph>()?;

    m.add_function(wrap_pyfunction!(make_pattern, m)?)?;
    m.add_function(wrap_pyfunction!(suspend, m)?)?;
    m.add_function(wrap_pyfunction!(link, m)?)?;
    m.add_function(wrap_pyfunction!(blowup, m)?)?;
    m.add_function(wrap_pyfunction!(classify_link, m)?)?;

    m.add_function(wrap_pyfunction!(contains, m)?)?;
    m.add_function(wrap_pyfunction!(is_free, m)?)?;
    m.add_function(wrap_pyfunction!(count_copies, m)?)?;
    m.add_function(wrap_pyfunction!(suspension_free_via_links, m)?)?;
    m.add_function(wrap_pyfunction!(is_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(automorphism_count, m)?)?;
    m.add_function(wrap_pyfunction!(blowup_contains, m)?)?;

    m.add_function(wrap_pyfunction!(steiner_triple_system, m)?)?;
    m.add_function(wrap_pyfunction!(fores_construction, m)?)?;
    m.add_function(wrap_pyfunction!(validate_design, m)?)?;

    m.add_function(wrap_pyfunction!(max_edges, m)?)?;
    m.add_function(wrap_pyfunction!(verify_fores_structure, m)?)?;

    m.add_function(wrap_pyfunction!(simpli_bound, m)?)?;
    m.add_function(wrap_pyfunction!(kalai_bound, m)?)?;
    m.add_function(wrap_pyfunction!(tree_suspension_bound, m)?)?;
    m.add_function(wrap_pyfunction!(gs_bound, m)?)?;
    m.add_function(wrap_pyfunction!(fores_bound, m)?)?;
    m.add_function(wrap_pyfunction!(erdos_sos_bound, m)?)?;
    m.add_function(wrap_pyfunction!(stein_bound, m)?)?;
    m.add_function(wrap_pyfunction!(bounds_report, m)?)?;
    Ok(())
}
