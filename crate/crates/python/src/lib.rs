//! Python bindings: exposes the graph type, the exact solvers, both
//! kernelizations, and the instance generators as the `dpvc` module.
//!
//! Build `libdpvc.so` with cargo and import it as `dpvc` (see
//! `python/smoke_test.py` for a self-contained driver).

use std::collections::BTreeSet;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use dpvc_core::graph::{Graph, VertexId};
use dpvc_core::instance::PvcInstance;
use dpvc_core::instances;
use dpvc_core::io;
use dpvc_core::kernel_general::kernelize_general;
use dpvc_core::kernel_small::kernelize_small;
use dpvc_core::matching;
use dpvc_core::oracle;
use dpvc_core::paths::{self, PackingOutcome};

fn value_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err<E: std::fmt::Display>(e: E) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn ids(vs: impl IntoIterator<Item = VertexId>) -> Vec<u32> {
    vs.into_iter().map(|v| v.0).collect()
}

/// Simple undirected graph with stable vertex ids.
#[pyclass(name = "Graph", skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

#[pymethods]
impl PyGraph {
    /// Creates a graph with vertices `0..n` and no edges.
    #[new]
    #[pyo3(signature = (n = 0))]
    fn new(n: usize) -> Self {
        PyGraph {
            inner: Graph::with_vertices(n),
        }
    }

    /// Parses the DIMACS-like text format (`p edge n m` header).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        Ok(PyGraph {
            inner: io::parse_graph(text).map_err(value_err)?,
        })
    }

    /// Canonical text form with vertices compacted to 1..n.
    fn to_text(&self) -> String {
        io::write_graph(&self.inner)
    }

    fn add_vertex(&mut self) -> u32 {
        self.inner.add_vertex().0
    }

    fn add_edge(&mut self, u: u32, v: u32) -> PyResult<()> {
        self.inner
            .add_edge(VertexId(u), VertexId(v))
            .map_err(value_err)
    }

    fn delete_vertex(&mut self, v: u32) -> PyResult<()> {
        self.inner.delete_vertex(VertexId(v)).map_err(value_err)
    }

    fn delete_edge(&mut self, u: u32, v: u32) -> PyResult<()> {
        self.inner
            .delete_edge(VertexId(u), VertexId(v))
            .map_err(value_err)
    }

    fn has_edge(&self, u: u32, v: u32) -> bool {
        self.inner.has_edge(VertexId(u), VertexId(v))
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<u32> {
        ids(self.inner.vertices())
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        if !self.inner.has_vertex(VertexId(v)) {
            return Err(PyValueError::new_err(format!("vertex {v} does not exist")));
        }
        Ok(ids(self.inner.neighbors(VertexId(v))))
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges().map(|(u, v)| (u.0, v.0)).collect()
    }

    fn connected_components(&self) -> Vec<Vec<u32>> {
        self.inner
            .connected_components()
            .into_iter()
            .map(ids)
            .collect()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(n={}, m={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

/// Outcome of a kernelization run.
#[pyclass(name = "KernelResult")]
struct PyKernelResult {
    /// `True`/`False` when decided during reduction, `None` otherwise.
    #[pyo3(get)]
    decided: Option<bool>,
    /// Parameter after reduction (rules may decrement it).
    #[pyo3(get)]
    k: usize,
    graph: Graph,
    stats_json: String,
}

#[pymethods]
impl PyKernelResult {
    /// The reduced graph (empty for decided instances).
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph {
            inner: self.graph.clone(),
        }
    }

    /// The STATS record as a JSON string.
    fn stats_json(&self) -> &str {
        &self.stats_json
    }

    fn __repr__(&self) -> String {
        match self.decided {
            Some(answer) => format!("KernelResult(decided={answer})"),
            None => format!(
                "KernelResult(n={}, m={}, k={})",
                self.graph.vertex_count(),
                self.graph.edge_count(),
                self.k
            ),
        }
    }
}

/// Exact decision by the branching oracle; returns `(yes, witness)` where
/// the witness is a vertex list on YES.
#[pyfunction]
fn solve(graph: &PyGraph, d: usize, k: usize) -> PyResult<(bool, Option<Vec<u32>>)> {
    let decision = oracle::solve_branching(&graph.inner, d, k).map_err(value_err)?;
    Ok((decision.yes, decision.witness.map(ids)))
}

/// Exact minimum d-path vertex cover size by subset enumeration.
#[pyfunction]
fn min_pvc(graph: &PyGraph, d: usize) -> PyResult<usize> {
    oracle::min_pvc(&graph.inner, d).map_err(value_err)
}

/// Kernelizes an instance. `method` is `"small"`, `"general"`, or
/// `"auto"` (small for d in {4, 5}, general otherwise).
#[pyfunction]
#[pyo3(signature = (graph, d, k, method = "auto"))]
fn kernelize(graph: &PyGraph, d: usize, k: usize, method: &str) -> PyResult<PyKernelResult> {
    let resolved = match method {
        "small" => "small",
        "general" => "general",
        "auto" => {
            if d == 4 || d == 5 {
                "small"
            } else {
                "general"
            }
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown method {other:?}; use small, general, or auto"
            )))
        }
    };
    let inst = PvcInstance::new(graph.inner.clone(), d, k);
    let (reduced, stats) = if resolved == "small" {
        let (red, _, stats) = kernelize_small(&inst).map_err(runtime_err)?;
        (red, stats)
    } else {
        kernelize_general(&inst).map_err(runtime_err)?
    };
    Ok(PyKernelResult {
        decided: reduced.decided,
        k: reduced.k,
        graph: reduced.graph,
        stats_json: stats.to_json(),
    })
}

/// Greedy maximal d-path packing; returns `(status, paths)` with status
/// `"yes"`, `"no"`, or `"packing"`.
#[pyfunction]
fn greedy_packing(graph: &PyGraph, d: usize, k: usize) -> PyResult<(String, Vec<Vec<u32>>)> {
    match paths::greedy_packing(&graph.inner, d, k).map_err(value_err)? {
        PackingOutcome::PathFree => Ok(("yes".into(), vec![])),
        PackingOutcome::Exceeded => Ok(("no".into(), vec![])),
        PackingOutcome::Packing(p) => Ok((
            "packing".into(),
            p.paths()
                .iter()
                .map(|path| ids(path.vertices().iter().copied()))
                .collect(),
        )),
    }
}

/// Finds one d-path avoiding the given vertices, or `None`.
#[pyfunction]
#[pyo3(signature = (graph, d, forbidden = vec![]))]
fn find_d_path(graph: &PyGraph, d: usize, forbidden: Vec<u32>) -> PyResult<Option<Vec<u32>>> {
    let forbidden: BTreeSet<VertexId> = forbidden.into_iter().map(VertexId).collect();
    Ok(paths::find_d_path(&graph.inner, d, &forbidden)
        .map_err(value_err)?
        .map(|p| ids(p.vertices().iter().copied())))
}

/// Maximum matching (blossom algorithm); returns the matched edge list.
#[pyfunction]
fn maximum_matching(graph: &PyGraph) -> Vec<(u32, u32)> {
    matching::maximum_matching(&graph.inner)
        .edges()
        .iter()
        .map(|&(u, v)| (u.0, v.0))
        .collect()
}

#[pyfunction]
fn random_instance(n: usize, m: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: instances::random_instance(n, m, seed).map_err(value_err)?,
    })
}

#[pyfunction]
fn star(q: usize) -> PyGraph {
    PyGraph {
        inner: instances::star(q),
    }
}

#[pyfunction]
fn triangle() -> PyGraph {
    PyGraph {
        inner: instances::triangle(),
    }
}

#[pyfunction]
fn di_star(p: usize, q: usize) -> PyGraph {
    PyGraph {
        inner: instances::di_star(p, q),
    }
}

#[pyfunction]
fn star_with_triangle(q: usize) -> PyGraph {
    PyGraph {
        inner: instances::star_with_triangle(q),
    }
}

/// Vertex Cover to d-PVC transform: pendant (d-2)-path on every vertex.
#[pyfunction]
fn vc_to_dpvc(graph: &PyGraph, d: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: instances::vc_to_dpvc(&graph.inner, d).map_err(value_err)?,
    })
}

#[pymodule]
fn dpvc(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyKernelResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(min_pvc, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_packing, m)?)?;
    m.add_function(wrap_pyfunction!(find_d_path, m)?)?;
    m.add_function(wrap_pyfunction!(maximum_matching, m)?)?;
    m.add_function(wrap_pyfunction!(random_instance, m)?)?;
    m.add_function(wrap_pyfunction!(star, m)?)?;
    m.add_function(wrap_pyfunction!(triangle, m)?)?;
    m.add_function(wrap_pyfunction!(di_star, m)?)?;
    m.add_function(wrap_pyfunction!(star_with_triangle, m)?)?;
    m.add_function(wrap_pyfunction!(vc_to_dpvc, m)?)?;
    Ok(())
}
