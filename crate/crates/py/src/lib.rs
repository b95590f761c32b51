//! Python bindings: arrangements, conflict graphs, exact coloring, the
//! bounded-measure strategies, and the certificate checks.

use std::collections::BTreeMap;
use std::time::Duration;

use boxchrom::bounds::{color_by_level, color_by_own_dim, color_by_surface, color_by_volume, RunConfig};
use boxchrom::certify::{certify_z as run_certify_z, check_claim1 as run_claim1, check_claim2 as run_claim2};
use boxchrom::certify::CertifyOptions;
use boxchrom::constructions::{
    build_figure1, build_gadget_x, build_gadget_y, build_z_abstract, build_z_geometric, gen_random_guillotine,
    Gadget,
};
use boxchrom::geometry::{Coord, Interval};
use boxchrom::solver::{self, Coloring, Verdict};
use boxchrom::{build_graph, Error, SearchLimits};
use pyo3::exceptions::{PyRuntimeError, PyTimeoutError, PyValueError};
use pyo3::prelude::*;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Timeout(_) => PyTimeoutError::new_err(e.to_string()),
        Error::Internal(_) | Error::SolverCrash(_) | Error::Io(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn limits(timeout: Option<f64>) -> PyResult<SearchLimits> {
    match timeout {
        None => Ok(SearchLimits::UNLIMITED),
        Some(t) if t.is_finite() && t > 0.0 => Ok(SearchLimits::with_time_limit(Duration::from_secs_f64(t))),
        Some(t) => Err(PyValueError::new_err(format!("timeout must be positive, got {t}"))),
    }
}

fn colors_out(c: &Coloring) -> BTreeMap<String, usize> {
    c.iter().map(|(id, k)| (id.0.clone(), k)).collect()
}

fn colors_in(colors: BTreeMap<String, usize>) -> Coloring {
    colors.into_iter().map(|(id, k)| (id.into(), k)).collect()
}

/// A set of interior-disjoint integer boxes with named regions.
#[pyclass(name = "Arrangement", module = "boxchrom")]
struct PyArrangement {
    inner: boxchrom::Arrangement,
}

#[pymethods]
impl PyArrangement {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyArrangement {
            inner: boxchrom::Arrangement::from_json(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn box_ids(&self) -> Vec<String> {
        self.inner.boxes.iter().map(|b| b.id.0.clone()).collect()
    }

    /// `{id: ((x0, x1), (y0, y1), (z0, z1))}`
    fn extents(&self) -> BTreeMap<String, [(Coord, Coord); 3]> {
        self.inner
            .boxes
            .iter()
            .map(|b| (b.id.0.clone(), b.extent.map(|e| (e.lo, e.hi))))
            .collect()
    }

    fn regions(&self) -> BTreeMap<String, Vec<String>> {
        self.inner
            .regions
            .iter()
            .map(|(name, ids)| (name.clone(), ids.iter().map(|id| id.0.clone()).collect()))
            .collect()
    }

    /// Human-readable violations; empty when the arrangement is valid.
    fn validate(&self) -> Vec<String> {
        self.inner.validate().violations.iter().map(ToString::to_string).collect()
    }

    fn content_hash(&self) -> String {
        self.inner.content_hash()
    }

    fn graph(&self) -> PyResult<PyConflictGraph> {
        Ok(PyConflictGraph {
            inner: build_graph(&self.inner).map_err(to_py)?,
        })
    }

    fn __repr__(&self) -> String {
        format!("Arrangement({} boxes, {} regions)", self.inner.len(), self.inner.regions.len())
    }
}

/// Contact graph with one vertex per box id.
#[pyclass(name = "ConflictGraph", module = "boxchrom")]
struct PyConflictGraph {
    inner: boxchrom::ConflictGraph,
}

#[pymethods]
impl PyConflictGraph {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyConflictGraph {
            inner: boxchrom::ConflictGraph::from_edges_json(text).map_err(to_py)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_edges_json()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertices().iter().map(|id| id.0.clone()).collect()
    }

    fn edges(&self) -> Vec<(String, String)> {
        self.inner.edge_ids().into_iter().map(|(a, b)| (a.0, b.0)).collect()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn has_edge(&self, a: &str, b: &str) -> bool {
        self.inner.has_edge_ids(&a.into(), &b.into())
    }

    fn components(&self) -> Vec<Vec<String>> {
        self.inner
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|v| self.inner.id(v).0.clone()).collect())
            .collect()
    }

    fn degeneracy(&self) -> usize {
        self.inner.degeneracy().value
    }

    #[pyo3(signature = (timeout=None))]
    fn clique_number(&self, timeout: Option<f64>) -> PyResult<usize> {
        self.inner.clique_number(limits(timeout)?).map_err(to_py)
    }

    fn content_hash(&self) -> String {
        self.inner.content_hash()
    }

    fn __repr__(&self) -> String {
        format!("ConflictGraph({} vertices, {} edges)", self.inner.len(), self.inner.edge_count())
    }
}

fn wrap(arr: boxchrom::Arrangement) -> PyArrangement {
    PyArrangement { inner: arr }
}

#[pyfunction]
fn gadget_x() -> PyArrangement {
    wrap(build_gadget_x())
}

#[pyfunction]
fn gadget_y() -> PyArrangement {
    wrap(build_gadget_y())
}

#[pyfunction]
fn figure1() -> PyArrangement {
    wrap(build_figure1())
}

#[pyfunction]
fn z_geometric() -> PyResult<PyArrangement> {
    Ok(wrap(build_z_geometric().map_err(to_py)?))
}

/// The abstract two-floor graph and its copy/demand structure as JSON.
#[pyfunction]
fn z_abstract() -> PyResult<(PyConflictGraph, String)> {
    let (g, zs) = build_z_abstract().map_err(to_py)?;
    Ok((PyConflictGraph { inner: g }, zs.to_json()))
}

#[pyfunction]
#[pyo3(signature = (seed, count, bbox=(16, 16, 16), min_side=1))]
fn random_guillotine(seed: u64, count: usize, bbox: (Coord, Coord, Coord), min_side: Coord) -> PyResult<PyArrangement> {
    let bounds = [bbox.0, bbox.1, bbox.2].map(|len| Interval::new(0, len));
    Ok(wrap(gen_random_guillotine(seed, count, bounds, min_side).map_err(to_py)?))
}

#[pyfunction]
fn build_conflict_graph(arr: &PyArrangement) -> PyResult<PyConflictGraph> {
    arr.graph()
}

#[pyfunction]
#[pyo3(signature = (graph, timeout=None))]
fn chromatic_number(graph: &PyConflictGraph, timeout: Option<f64>) -> PyResult<(usize, BTreeMap<String, usize>)> {
    let (chi, c) = solver::chromatic_number(&graph.inner, limits(timeout)?).map_err(to_py)?;
    Ok((chi, colors_out(&c)))
}

/// A proper coloring with at most `k` colors, or `None`.
#[pyfunction]
#[pyo3(signature = (graph, k, timeout=None, jobs=1))]
fn k_colorable(
    graph: &PyConflictGraph,
    k: usize,
    timeout: Option<f64>,
    jobs: usize,
) -> PyResult<Option<BTreeMap<String, usize>>> {
    match solver::k_colorable_par(&graph.inner, k, limits(timeout)?, jobs).map_err(to_py)? {
        Verdict::Sat(c) => Ok(Some(colors_out(&c))),
        Verdict::Unsat => Ok(None),
    }
}

#[pyfunction]
fn verify_coloring(graph: &PyConflictGraph, coloring: BTreeMap<String, usize>) -> PyResult<bool> {
    Ok(solver::verify_coloring(&graph.inner, &colors_in(coloring))
        .map_err(to_py)?
        .is_proper())
}

#[pyfunction]
fn greedy_coloring(graph: &PyConflictGraph) -> BTreeMap<String, usize> {
    colors_out(&solver::greedy_degeneracy_coloring(&graph.inner))
}

/// DIMACS encoding of k-colorability, optionally seeded with a maximum clique.
#[pyfunction]
#[pyo3(signature = (graph, k, seeded=true))]
fn export_cnf(graph: &PyConflictGraph, k: usize, seeded: bool) -> PyResult<String> {
    if seeded {
        solver::export_cnf_seeded(&graph.inner, k, SearchLimits::UNLIMITED)
    } else {
        solver::export_cnf(&graph.inner, k, &[])
    }
    .map_err(to_py)
}

/// Runs a bounded-measure strategy; returns the coloring and the report JSON.
#[pyfunction]
#[pyo3(signature = (arr, strategy, bound, axis=None, jobs=1))]
fn color(
    arr: &PyArrangement,
    strategy: &str,
    bound: Coord,
    axis: Option<usize>,
    jobs: usize,
) -> PyResult<(BTreeMap<String, usize>, String)> {
    let cfg = RunConfig {
        limits: SearchLimits::UNLIMITED,
        jobs,
    };
    let a = &arr.inner;
    let (c, report) = match strategy {
        "level" => color_by_level(a, axis.or(a.floor_axis).unwrap_or(2), bound, cfg),
        "own-dim" => color_by_own_dim(a, bound, cfg),
        "surface" => color_by_surface(a, bound, cfg),
        "volume" => color_by_volume(a, bound, cfg),
        other => return Err(PyValueError::new_err(format!("unknown strategy `{other}`"))),
    }
    .map_err(to_py)?;
    let report = serde_json::to_string(&report).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    Ok((colors_out(&c), report))
}

#[pyfunction]
fn check_claim1() -> PyResult<String> {
    let r = run_claim1(&Gadget::x()).map_err(to_py)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

#[pyfunction]
#[pyo3(signature = (timeout=None))]
fn check_claim2(timeout: Option<f64>) -> PyResult<String> {
    let r = run_claim2(&Gadget::y(), limits(timeout)?).map_err(to_py)?;
    serde_json::to_string(&r).map_err(|e| PyRuntimeError::new_err(e.to_string()))
}

/// Full certificate JSON for the two-floor eight-chromatic arrangement.
#[pyfunction]
#[pyo3(signature = (jobs=1, cnf_path=None))]
fn certify_z(py: Python<'_>, jobs: usize, cnf_path: Option<String>) -> PyResult<String> {
    let opts = CertifyOptions {
        limits: SearchLimits::UNLIMITED,
        jobs,
        cnf_path: cnf_path.map(Into::into),
    };
    let cert = py.detach(|| run_certify_z(&opts)).map_err(to_py)?;
    Ok(cert.to_json())
}

#[pymodule(name = "boxchrom")]
fn boxchrom_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyArrangement>()?;
    m.add_class::<PyConflictGraph>()?;
    m.add_function(wrap_pyfunction!(gadget_x, m)?)?;
    m.add_function(wrap_pyfunction!(gadget_y, m)?)?;
    m.add_function(wrap_pyfunction!(figure1, m)?)?;
    m.add_function(wrap_pyfunction!(z_geometric, m)?)?;
    m.add_function(wrap_pyfunction!(z_abstract, m)?)?;
    m.add_function(wrap_pyfunction!(random_guillotine, m)?)?;
    m.add_function(wrap_pyfunction!(build_conflict_graph, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    m.add_function(wrap_pyfunction!(k_colorable, m)?)?;
    m.add_function(wrap_pyfunction!(verify_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(greedy_coloring, m)?)?;
    m.add_function(wrap_pyfunction!(export_cnf, m)?)?;
    m.add_function(wrap_pyfunction!(color, m)?)?;
    m.add_function(wrap_pyfunction!(check_claim1, m)?)?;
    m.add_function(wrap_pyfunction!(check_claim2, m)?)?;
    m.add_function(wrap_pyfunction!(certify_z, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn timeouts_must_be_positive() {
        assert!(limits(None).is_ok());
        assert!(limits(Some(1.5)).is_ok());
        assert!(limits(Some(0.0)).is_err());
        assert!(limits(Some(f64::NAN)).is_err());
    }

    #[test]
    fn colorings_round_trip_through_maps() {
        let c = solver::greedy_degeneracy_coloring(&build_graph(&build_figure1()).unwrap());
        assert_eq!(colors_in(colors_out(&c)), c);
    }
}
