//! Python bindings: graphs, recognition, spectra, the forbidden-subgraph
//! catalog and the reproduction checks.

use std::collections::BTreeMap;
use std::path::PathBuf;

use num_bigint::BigInt;
use pyo3::exceptions::{PyIndexError, PyValueError};
use pyo3::prelude::*;

use hoffman_core::canon::canonical_form;
use hoffman_core::enumeration::{self, KPart};
use hoffman_core::figures::{Figure, FigureSource};
use hoffman_core::recognition::{self, StrictCover};
use hoffman_core::spectral;
use hoffman_core::verify::{self as core_verify, Claim, MfsCatalog, VerificationReport};
use hoffman_core::{contains_induced, HoffmanGraph};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A Hoffman graph. Slim vertices are numbered first, fat vertices after.
#[pyclass(name = "Graph", module = "hoffman", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGraph(HoffmanGraph);

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (slim, fat = 0, edges = Vec::new()))]
    fn new(slim: usize, fat: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        HoffmanGraph::build(slim, fat, &edges).map(PyGraph).map_err(value_error)
    }

    #[staticmethod]
    fn from_graph6(s: &str) -> PyResult<Self> {
        enumeration::parse_graph6(s.trim()).map(PyGraph).map_err(value_error)
    }

    /// Parses the text format: `s=<slim> f=<fat>` then one `u v` per line.
    #[staticmethod]
    fn from_text(s: &str) -> PyResult<Self> {
        HoffmanGraph::from_text(s).map(PyGraph).map_err(value_error)
    }

    #[getter]
    fn slim_count(&self) -> usize {
        self.0.slim_count()
    }

    #[getter]
    fn fat_count(&self) -> usize {
        self.0.fat_count()
    }

    #[getter]
    fn order(&self) -> usize {
        self.0.order()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.edges()
    }

    fn is_connected(&self) -> bool {
        self.0.is_connected()
    }

    fn slim_subgraph(&self) -> Self {
        PyGraph(self.0.slim_subgraph())
    }

    fn delete_slim(&self, vertices: Vec<usize>) -> PyResult<Self> {
        let mut mask = 0u64;
        for v in vertices {
            if v >= self.0.slim_count() {
                return Err(PyIndexError::new_err(format!("{v} is not a slim vertex")));
            }
            mask |= 1 << v;
        }
        self.0.delete_slim(mask).map(PyGraph).map_err(value_error)
    }

    fn to_graph6(&self) -> PyResult<String> {
        enumeration::write_graph6(&self.0).map_err(value_error)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[pyo3(signature = (name = "G"))]
    fn to_dot(&self, name: &str) -> String {
        self.0.to_dot(name)
    }

    /// Hex string equal for isomorphic graphs and only for them.
    fn canonical_form(&self) -> String {
        canonical_form(&self.0).to_hex()
    }

    /// Whether `pattern` is an induced, colour-preserving subgraph.
    fn contains(&self, pattern: &PyGraph) -> bool {
        contains_induced(&self.0, &pattern.0)
    }

    fn __repr__(&self) -> String {
        format!("Graph(slim={}, fat={}, edges={:?})", self.0.slim_count(), self.0.fat_count(), self.0.edges())
    }
}

/// A strict cover: a sum of `H2`, `H3`, `H5` parts whose slim graph is the
/// covered graph.
#[pyclass(name = "Cover", module = "hoffman", frozen)]
struct PyCover(StrictCover);

#[pymethods]
impl PyCover {
    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph(self.0.cover.clone())
    }

    #[getter]
    fn parts(&self) -> Vec<Vec<usize>> {
        self.0.decomposition.parts.clone()
    }

    #[getter]
    fn kinds(&self) -> Vec<String> {
        self.0.part_kinds().iter().map(|k| format!("{k:?}")).collect()
    }

    fn __repr__(&self) -> String {
        format!("Cover(kinds={:?}, parts={:?})", self.kinds(), self.0.decomposition.parts)
    }
}

/// Smallest eigenvalue bracket and its position relative to `-1 - sqrt(2)`.
#[pyclass(name = "Eigen", module = "hoffman", frozen, get_all)]
struct PyEigen {
    lower: f64,
    upper: f64,
    exact: bool,
    /// "below", "equal" or "above".
    threshold: String,
    /// Characteristic polynomial, constant term first.
    char_poly: Vec<BigInt>,
}

#[pymethods]
impl PyEigen {
    fn __repr__(&self) -> String {
        format!("Eigen(lower={}, upper={}, exact={}, threshold={:?})", self.lower, self.upper, self.exact, self.threshold)
    }
}

#[pyclass(name = "Catalog", module = "hoffman", frozen)]
struct PyCatalog(MfsCatalog);

#[pymethods]
impl PyCatalog {
    /// Minimal forbidden subgraphs on up to `n_max` vertices.
    #[staticmethod]
    fn build(py: Python<'_>, n_max: usize) -> PyResult<Self> {
        py.detach(|| MfsCatalog::build(n_max)).map(PyCatalog).map_err(value_error)
    }

    #[staticmethod]
    fn load(path: PathBuf) -> PyResult<Self> {
        MfsCatalog::load(&path).map(PyCatalog).map_err(value_error)
    }

    fn save(&self, path: PathBuf) -> PyResult<()> {
        self.0.save(&path).map_err(value_error)
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.0.n_max
    }

    #[getter]
    fn checksum(&self) -> String {
        self.0.checksum.clone()
    }

    fn counts(&self) -> BTreeMap<usize, usize> {
        self.0.counts()
    }

    fn members(&self) -> Vec<PyGraph> {
        self.0.members.iter().map(|m| PyGraph(m.graph.clone())).collect()
    }

    /// True iff no member is contained in `g`.
    fn screen(&self, g: &PyGraph) -> PyResult<bool> {
        self.0.screen(&g.0).map_err(value_error)
    }

    /// Members contained in `g`.
    fn contained_in(&self, g: &PyGraph) -> Vec<PyGraph> {
        self.0.contained_in(&g.0).into_iter().map(|i| PyGraph(self.0.members[i].graph.clone())).collect()
    }

    fn __len__(&self) -> usize {
        self.0.members.len()
    }
}

#[pyfunction]
fn is_h_line(py: Python<'_>, g: &PyGraph) -> bool {
    py.detach(|| recognition::is_h_line_graph(&g.0))
}

/// The least strict cover, or None when the graph is not an
/// `{H2, H3, H5}`-line graph.
#[pyfunction]
fn strict_cover(py: Python<'_>, g: &PyGraph) -> Option<PyCover> {
    py.detach(|| recognition::is_h_line(&g.0)).map(PyCover)
}

/// One strict cover per equivalence class.
#[pyfunction]
fn strict_covers(py: Python<'_>, g: &PyGraph) -> Vec<PyCover> {
    py.detach(|| recognition::enumerate_strict_covers(&g.0)).into_iter().map(PyCover).collect()
}

#[pyfunction]
fn smallest_eigenvalue(py: Python<'_>, g: &PyGraph) -> PyResult<PyEigen> {
    let (e, t) = py.detach(|| spectral::certify(&g.0)).map_err(value_error)?;
    Ok(PyEigen {
        lower: e.lower_f64(),
        upper: e.upper_f64(),
        exact: e.exact,
        threshold: t.label().to_string(),
        char_poly: e.char_poly.0.clone(),
    })
}

#[pyfunction]
#[pyo3(signature = (n, connected = true))]
fn graphs(py: Python<'_>, n: usize, connected: bool) -> PyResult<Vec<PyGraph>> {
    if !(1..=9).contains(&n) {
        return Err(PyValueError::new_err("n must be between 1 and 9"));
    }
    let stream = py.detach(|| if connected { enumeration::connected_slim_graphs(n) } else { enumeration::all_slim_graphs(n) });
    Ok(stream.into_iter().map(PyGraph).collect())
}

/// A transcribed figure by name, e.g. "H5" or "F7".
#[pyfunction]
#[pyo3(signature = (name, data_dir = None))]
fn figure(name: &str, data_dir: Option<PathBuf>) -> PyResult<PyGraph> {
    let fig: Figure = name.parse().map_err(value_error)?;
    let source = data_dir.map_or(FigureSource::Builtin, FigureSource::Dir);
    source.get(fig).map(PyGraph).map_err(value_error)
}

/// Connected sums `F ⊎ K` with `slim_k` slim vertices in `K` and
/// `components_k` components, one per isomorphism class.
#[pyfunction]
#[pyo3(signature = (f, slim_k, components_k = 1, parts = vec!["H1".to_string(), "H2".into(), "H3".into(), "H5".into()]))]
fn sums(py: Python<'_>, f: &PyGraph, slim_k: usize, components_k: usize, parts: Vec<String>) -> PyResult<Vec<PyGraph>> {
    let parts = parts
        .iter()
        .map(|p| match p.as_str() {
            "H1" => Ok(KPart::H1),
            "H2" => Ok(KPart::H2),
            "H3" => Ok(KPart::H3),
            "H5" => Ok(KPart::H5),
            other => Err(PyValueError::new_err(format!("unknown part class {other:?}"))),
        })
        .collect::<PyResult<Vec<_>>>()?;
    let stream = py.detach(|| enumeration::enumerate_sums(&f.0, slim_k, &parts, components_k));
    Ok(stream.into_iter().map(PyGraph).collect())
}

fn report_to_py<'py>(py: Python<'py>, r: &VerificationReport) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(r).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// Runs a reproduction check and returns its reports as dictionaries.
/// `claim` is one of eq2, prop2.1, table1, lemma4.10, lemma4.11,
/// lemma4.12, uniqueness, eigen, oracle.
#[pyfunction]
#[pyo3(signature = (claim, n_max = None, sample = None, seed = 0, catalog = None))]
fn verify<'py>(
    py: Python<'py>,
    claim: &str,
    n_max: Option<usize>,
    sample: Option<usize>,
    seed: u64,
    catalog: Option<&PyCatalog>,
) -> PyResult<Vec<Bound<'py, PyAny>>> {
    let claim: Claim = claim.parse().map_err(PyValueError::new_err)?;
    let source = FigureSource::Builtin;
    let cat = |n: usize| -> PyResult<MfsCatalog> {
        match catalog {
            Some(c) => Ok(c.0.clone()),
            None => MfsCatalog::build(n).map_err(value_error),
        }
    };
    let reports: Vec<VerificationReport> = match claim {
        Claim::FiveVertex => vec![core_verify::verify_five_vertex()],
        Claim::CatalogCounts => vec![core_verify::verify_catalog_counts(&cat(n_max.unwrap_or(8))?)],
        Claim::Eigen => vec![core_verify::verify_eigen_claims(&cat(n_max.unwrap_or(8))?, 7)],
        Claim::ScreenOracle => {
            let n = n_max.unwrap_or(7);
            vec![core_verify::verify_screen_oracle(&cat(n.min(9))?, n)]
        }
        Claim::SumTable => core_verify::verify_table(&cat(n_max.unwrap_or(7))?, &source).map_err(value_error)?,
        Claim::TwoSlimFat | Claim::ApexFat | Claim::SingleFat => {
            vec![core_verify::verify_fat_classification(claim, &source).map_err(value_error)?]
        }
        Claim::CoverUniqueness => vec![core_verify::verify_cover_uniqueness(n_max.unwrap_or(8), sample, seed)],
    };
    reports.iter().map(|r| report_to_py(py, r)).collect()
}

/// Special matrix of a Hoffman graph as nested lists.
#[pyfunction]
fn special_matrix(g: &PyGraph) -> Vec<Vec<i64>> {
    let m = spectral::SpecialMatrix::of(&g.0);
    (0..m.n).map(|i| (0..m.n).map(|j| m.get(i, j)).collect()).collect()
}

#[pymodule]
fn hoffman(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyCover>()?;
    m.add_class::<PyEigen>()?;
    m.add_class::<PyCatalog>()?;
    m.add_function(wrap_pyfunction!(is_h_line, m)?)?;
    m.add_function(wrap_pyfunction!(strict_cover, m)?)?;
    m.add_function(wrap_pyfunction!(strict_covers, m)?)?;
    m.add_function(wrap_pyfunction!(smallest_eigenvalue, m)?)?;
    m.add_function(wrap_pyfunction!(special_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(graphs, m)?)?;
    m.add_function(wrap_pyfunction!(figure, m)?)?;
    m.add_function(wrap_pyfunction!(sums, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
