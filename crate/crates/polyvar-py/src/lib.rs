//! Python bindings: the `polyvar` extension module.
//!
//! Thin wrappers over the Rust crate; all numerical work happens there.
//! Build the cdylib and rename it to `polyvar.so` (see `python/smoke_test.py`
//! for a loader that does this automatically).

use polyvar::families;
use polyvar::geometry;
use polyvar::reilly;
use polyvar::spectral;
use polyvar::transfer;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn pyerr(e: polyvar::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A validated closed polygon in R^N.
#[pyclass(name = "Polygon", module = "polyvar", frozen, skip_from_py_object)]
pub struct PyPolygon {
    inner: geometry::Polygon,
}

#[pymethods]
impl PyPolygon {
    /// Validate a vertex list (cyclic, n >= 3) and build the polygon.
    #[new]
    fn new(vertices: Vec<Vec<f64>>) -> PyResult<Self> {
        geometry::Polygon::new(vertices)
            .map(|inner| PyPolygon { inner })
            .map_err(pyerr)
    }

    #[getter]
    fn vertices(&self) -> Vec<Vec<f64>> {
        self.inner.vertices().to_vec()
    }

    #[getter]
    fn edge_lengths(&self) -> Vec<f64> {
        self.inner.edge_lengths().to_vec()
    }

    #[getter]
    fn perimeter(&self) -> f64 {
        self.inner.perimeter()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn __len__(&self) -> usize {
        self.inner.vertex_count()
    }

    fn __repr__(&self) -> String {
        format!(
            "Polygon(n={}, dim={}, perimeter={})",
            self.inner.vertex_count(),
            self.inner.dim(),
            self.inner.perimeter()
        )
    }

    /// Curvature vector at each vertex.
    fn curvature_vectors(&self) -> Vec<Vec<f64>> {
        geometry::curvature_vectors(&self.inner).vectors
    }

    /// Sum of squared curvature magnitudes.
    fn curvature_energy(&self) -> f64 {
        geometry::curvature_vectors(&self.inner).energy()
    }

    /// Copy translated so that the vertex barycenter is the origin.
    fn centered(&self) -> PyPolygon {
        PyPolygon {
            inner: geometry::center_at_vertex_barycenter(&self.inner),
        }
    }

    /// Dimension of the affine span of the vertices.
    fn planar_dimension(&self) -> usize {
        geometry::planar_dimension(&self.inner)
    }

    /// `(eigenvalues, multiplicities)` of the cycle Laplacian.
    #[pyo3(signature = (cluster_tol = None))]
    fn spectrum(&self, cluster_tol: Option<f64>) -> PyResult<(Vec<f64>, Vec<usize>)> {
        let tol = cluster_tol.unwrap_or(spectral::DEFAULT_CLUSTER_TOL);
        let sol = spectral::polygon_spectrum(&self.inner, tol).map_err(pyerr)?;
        Ok((sol.spectrum.eigenvalues, sol.spectrum.multiplicities))
    }

    /// Nonzero `(eigenvalues, multiplicities)` from the transfer-matrix
    /// root scan; an independent route to the same spectrum.
    #[pyo3(signature = (grid_points = transfer::DEFAULT_GRID_POINTS, tol = transfer::DEFAULT_ROOT_TOL))]
    fn transfer_eigenvalues(
        &self,
        grid_points: usize,
        tol: f64,
    ) -> PyResult<(Vec<f64>, Vec<usize>)> {
        let s = transfer::find_eigenvalues_transfer(self.inner.edge_lengths(), grid_points, tol)
            .map_err(pyerr)?;
        Ok((s.eigenvalues, s.multiplicities))
    }

    /// Reilly report: lambda1, total length, curvature energy, residual,
    /// equality flag, and the equality class.
    #[pyo3(signature = (tol = reilly::DEFAULT_EQUALITY_TOL))]
    fn reilly_report(&self, tol: f64) -> PyResult<PyReillyReport> {
        reilly::reilly_report_polygon(&self.inner, tol)
            .map(PyReillyReport::from)
            .map_err(pyerr)
    }

    /// Equality-class label.
    #[pyo3(signature = (tol = reilly::DEFAULT_EQUALITY_TOL))]
    fn classify(&self, tol: f64) -> String {
        reilly::classify_equality(&self.inner, tol).to_string()
    }

    /// `|sum <A_i, H_i> - perimeter|`.
    fn hsiung_minkowski_residual(&self) -> f64 {
        reilly::hsiung_minkowski_residual(&self.inner)
    }
}

/// A star-shaped graph: one center joined to n >= 2 leaves.
#[pyclass(name = "StarGraph", module = "polyvar", frozen, skip_from_py_object)]
pub struct PyStarGraph {
    inner: geometry::StarGraph,
}

#[pymethods]
impl PyStarGraph {
    #[new]
    fn new(center: Vec<f64>, leaves: Vec<Vec<f64>>) -> PyResult<Self> {
        geometry::StarGraph::new(center, leaves)
            .map(|inner| PyStarGraph { inner })
            .map_err(pyerr)
    }

    #[getter]
    fn center(&self) -> Vec<f64> {
        self.inner.center().clone()
    }

    #[getter]
    fn leaves(&self) -> Vec<Vec<f64>> {
        self.inner.leaves().to_vec()
    }

    #[getter]
    fn edge_lengths(&self) -> Vec<f64> {
        self.inner.edge_lengths().to_vec()
    }

    #[getter]
    fn total_length(&self) -> f64 {
        self.inner.total_length()
    }

    fn __repr__(&self) -> String {
        format!(
            "StarGraph(n={}, dim={})",
            self.inner.leaf_count(),
            self.inner.dim()
        )
    }

    /// Curvature vectors: index 0 is the center, then the leaves.
    fn curvature_vectors(&self) -> Vec<Vec<f64>> {
        geometry::curvature_vectors_star(&self.inner).vectors
    }

    /// `(eigenvalues, multiplicities)` of the star Laplacian.
    #[pyo3(signature = (cluster_tol = None))]
    fn spectrum(&self, cluster_tol: Option<f64>) -> PyResult<(Vec<f64>, Vec<usize>)> {
        let tol = cluster_tol.unwrap_or(spectral::DEFAULT_CLUSTER_TOL);
        let sol = spectral::star_spectrum(&self.inner, tol).map_err(pyerr)?;
        Ok((sol.spectrum.eigenvalues, sol.spectrum.multiplicities))
    }

    #[pyo3(signature = (tol = reilly::DEFAULT_EQUALITY_TOL))]
    fn reilly_report(&self, tol: f64) -> PyResult<PyReillyReport> {
        reilly::reilly_report_star(&self.inner, tol)
            .map(PyReillyReport::from)
            .map_err(pyerr)
    }
}

#[pyclass(name = "ReillyReport", module = "polyvar", frozen, skip_from_py_object)]
pub struct PyReillyReport {
    #[pyo3(get)]
    lambda1: f64,
    #[pyo3(get)]
    total_length: f64,
    #[pyo3(get)]
    curvature_energy: f64,
    #[pyo3(get)]
    residual: f64,
    #[pyo3(get)]
    equality: bool,
    #[pyo3(get)]
    classification: String,
}

impl From<reilly::ReillyReport> for PyReillyReport {
    fn from(r: reilly::ReillyReport) -> Self {
        PyReillyReport {
            lambda1: r.lambda1,
            total_length: r.total_length,
            curvature_energy: r.curvature_energy,
            residual: r.residual,
            equality: r.equality,
            classification: r.classification.to_string(),
        }
    }
}

#[pymethods]
impl PyReillyReport {
    fn __repr__(&self) -> String {
        format!(
            "ReillyReport(lambda1={}, total_length={}, curvature_energy={}, residual={}, equality={}, classification='{}')",
            self.lambda1,
            self.total_length,
            self.curvature_energy,
            self.residual,
            self.equality,
            self.classification
        )
    }
}

#[pyfunction]
fn regular_polygon(n: usize, side: f64) -> PyResult<PyPolygon> {
    families::regular_polygon(n, side)
        .map(|inner| PyPolygon { inner })
        .map_err(pyerr)
}

#[pyfunction]
fn trapeze(theta: f64) -> PyResult<PyPolygon> {
    families::trapeze(theta)
        .map(|inner| PyPolygon { inner })
        .map_err(pyerr)
}

#[pyfunction]
fn losange(side: f64, theta: f64) -> PyResult<PyPolygon> {
    families::losange(side, theta)
        .map(|inner| PyPolygon { inner })
        .map_err(pyerr)
}

#[pyfunction]
fn fake_regular(n: usize) -> PyResult<PyPolygon> {
    families::fake_regular(n)
        .map(|inner| PyPolygon { inner })
        .map_err(pyerr)
}

#[pyfunction]
fn star_stationary(n: usize, length: f64) -> PyResult<PyStarGraph> {
    families::star_stationary(n, length)
        .map(|inner| PyStarGraph { inner })
        .map_err(pyerr)
}

#[pyfunction]
fn random_simple_polygon(n: usize, seed: u64, rmin: f64, rmax: f64) -> PyResult<PyPolygon> {
    families::random_simple_polygon(n, seed, rmin, rmax)
        .map(|inner| PyPolygon { inner })
        .map_err(pyerr)
}

/// Closed-form Reilly data of the multiplicity-`mult` round sphere in R^dim:
/// `(lambda1, mass, energy, residual)`.
#[pyfunction]
fn sphere_reference(dim: usize, radius: f64, mult: usize) -> PyResult<(f64, f64, f64, f64)> {
    let r = reilly::sphere_reference(dim, radius, mult).map_err(pyerr)?;
    Ok((r.lambda1, r.mass, r.energy, r.residual))
}

/// `(eigenvalues, multiplicities)` of the weighted cycle Laplacian with the
/// given edge lengths.
#[pyfunction]
#[pyo3(signature = (lengths, cluster_tol = spectral::DEFAULT_CLUSTER_TOL))]
fn cycle_spectrum(lengths: Vec<f64>, cluster_tol: f64) -> PyResult<(Vec<f64>, Vec<usize>)> {
    let m = spectral::cycle_laplacian(&lengths).map_err(pyerr)?;
    let sol = spectral::eigensolve(&m, cluster_tol).map_err(pyerr)?;
    Ok((sol.spectrum.eigenvalues, sol.spectrum.multiplicities))
}

/// `(eigenvalues, multiplicities)` of the star Laplacian with the given
/// leg lengths.
#[pyfunction]
#[pyo3(signature = (lengths, cluster_tol = spectral::DEFAULT_CLUSTER_TOL))]
fn star_graph_spectrum(lengths: Vec<f64>, cluster_tol: f64) -> PyResult<(Vec<f64>, Vec<usize>)> {
    let m = spectral::star_laplacian(&lengths).map_err(pyerr)?;
    let sol = spectral::eigensolve(&m, cluster_tol).map_err(pyerr)?;
    Ok((sol.spectrum.eigenvalues, sol.spectrum.multiplicities))
}

/// `det(M(lambda) - I)` for the cycle with the given edge lengths.
#[pyfunction]
fn characteristic(lambda: f64, lengths: Vec<f64>) -> PyResult<f64> {
    transfer::characteristic(lambda, &lengths).map_err(pyerr)
}

#[pymodule(name = "polyvar")]
fn polyvar_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolygon>()?;
    m.add_class::<PyStarGraph>()?;
    m.add_class::<PyReillyReport>()?;
    m.add_function(wrap_pyfunction!(regular_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(trapeze, m)?)?;
    m.add_function(wrap_pyfunction!(losange, m)?)?;
    m.add_function(wrap_pyfunction!(fake_regular, m)?)?;
    m.add_function(wrap_pyfunction!(star_stationary, m)?)?;
    m.add_function(wrap_pyfunction!(random_simple_polygon, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_reference, m)?)?;
    m.add_function(wrap_pyfunction!(cycle_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(star_graph_spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(characteristic, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
