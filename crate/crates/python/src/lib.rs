//! Python bindings. Graphs are `Hypergraph` objects; reports come back as
//! plain dicts and lists built from the library's JSON output.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyComplex;

use hd::{ErrorConfiguration, Modulus, VertexId};

fn err(e: hd::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn modulus(d: u64) -> PyResult<Modulus> {
    Modulus::new(d).map_err(err)
}

fn ids(raw: &[u32]) -> Vec<VertexId> {
    raw.iter().copied().map(VertexId).collect()
}

/// Converts a serializable report into native Python objects.
fn to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (text,))?.unbind())
}

#[pyclass(frozen, module = "hyperdetect")]
struct Hypergraph {
    inner: hd::Hypergraph,
}

impl Hypergraph {
    fn resolve(&self, d: Option<u64>) -> PyResult<Modulus> {
        d.map_or(Ok(self.inner.modulus()), modulus)
    }

    fn errors(&self, errors: Vec<u32>) -> PyResult<ErrorConfiguration> {
        ErrorConfiguration::new(&self.inner, errors).map_err(err)
    }
}

#[pymethods]
impl Hypergraph {
    #[new]
    #[pyo3(signature = (modulus, inputs, outputs, edges, implicit_input_adjacency = false))]
    fn new(
        modulus: u64,
        inputs: Vec<u32>,
        outputs: Vec<u32>,
        edges: Vec<Vec<u32>>,
        implicit_input_adjacency: bool,
    ) -> PyResult<Self> {
        let inner = hd::Hypergraph::new(
            self::modulus(modulus)?,
            inputs,
            outputs,
            edges,
            implicit_input_adjacency,
        )
        .map_err(err)?;
        Ok(Hypergraph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = hd::Hypergraph::from_json(text).map_err(err)?;
        Ok(Hypergraph { inner })
    }

    /// The 15-output example code with one input adjacent to every output.
    #[staticmethod]
    fn fixture() -> Self {
        Hypergraph {
            inner: hd::fixture::fifteen_vertex(),
        }
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn modulus(&self) -> u32 {
        self.inner.modulus().get()
    }

    #[getter]
    fn inputs(&self) -> Vec<u32> {
        self.inner.inputs().iter().map(|v| v.0).collect()
    }

    #[getter]
    fn outputs(&self) -> Vec<u32> {
        self.inner.outputs().iter().map(|v| v.0).collect()
    }

    #[getter]
    fn edges(&self) -> Vec<Vec<u32>> {
        self.inner
            .edges()
            .iter()
            .map(|e| e.iter().map(|v| v.0).collect())
            .collect()
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        let n = self.inner.neighbors(VertexId(v)).map_err(err)?;
        Ok(n.iter().map(|u| u.0).collect())
    }

    fn f(&self, x: u32, y: u32) -> PyResult<u8> {
        self.inner.f(VertexId(x), VertexId(y)).map_err(err)
    }

    fn gamma(&self, vertices: Vec<u32>) -> PyResult<u8> {
        self.inner.gamma(&ids(&vertices)).map_err(err)
    }

    /// Linear detection verdict as a dict with `detected`, `witness`
    /// (non-zero entries only) and `forced_relations`.
    #[pyo3(signature = (errors, modulus = None))]
    fn is_detected(&self, py: Python<'_>, errors: Vec<u32>, modulus: Option<u64>) -> PyResult<Py<PyAny>> {
        let m = self.resolve(modulus)?;
        let e = self.errors(errors)?;
        let verdict = hd::is_detected(&self.inner, &e, m).map_err(err)?;
        let out = serde_json::json!({
            "detected": verdict.detected,
            "witness": verdict.witness.as_ref().map(hd::detection::witness_map),
            "forced_relations": verdict.forced_relations,
        });
        to_py(py, &out)
    }

    #[pyo3(signature = (size, modulus = None))]
    fn enumerate_detected(&self, py: Python<'_>, size: usize, modulus: Option<u64>) -> PyResult<Py<PyAny>> {
        let m = self.resolve(modulus)?;
        let report = py
            .detach(|| hd::enumerate_detected(&self.inner, size, m))
            .map_err(err)?;
        to_py(py, &report)
    }

    #[pyo3(signature = (modulus = None))]
    fn detection_radius(&self, py: Python<'_>, modulus: Option<u64>) -> PyResult<i64> {
        let m = self.resolve(modulus)?;
        py.detach(|| hd::detection_radius(&self.inner, m)).map_err(err)
    }

    /// Amplitudes of the hypergraph state, sites in ascending vertex order.
    #[pyo3(signature = (modulus = None))]
    fn state<'py>(&self, py: Python<'py>, modulus: Option<u64>) -> PyResult<Vec<Bound<'py, PyComplex>>> {
        let m = self.resolve(modulus)?;
        let state = hd::hypergraph_state(&self.inner, m).map_err(err)?;
        Ok(state
            .amplitudes()
            .iter()
            .map(|a| PyComplex::from_doubles(py, a.re, a.im))
            .collect())
    }

    fn verify_stabilizer(&self, vertex: u32) -> PyResult<bool> {
        hd::verify_stabilizer(&self.inner, VertexId(vertex)).map_err(err)
    }

    /// Brute-force check on the encoding map; dict with `factorizes`,
    /// `max_deviation` and `offending`.
    #[pyo3(signature = (errors, modulus = None))]
    fn kl_factorization_check(&self, py: Python<'_>, errors: Vec<u32>, modulus: Option<u64>) -> PyResult<Py<PyAny>> {
        let m = self.resolve(modulus)?;
        let e = self.errors(errors)?;
        let report = py
            .detach(|| hd::kl_factorization_check(&self.inner, &e, m))
            .map_err(err)?;
        to_py(py, &report)
    }

    fn gate_cost(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &hd::compare(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("Hypergraph({})", self.inner.to_json())
    }

    fn __eq__(&self, other: &Hypergraph) -> bool {
        self.inner == other.inner
    }
}

/// `chi(g1, ..., gk)` on `Z_d`.
#[pyfunction]
fn bicharacter<'py>(py: Python<'py>, modulus: u64, args: Vec<u64>) -> PyResult<Bound<'py, PyComplex>> {
    let m = self::modulus(modulus)?;
    let elements = args
        .into_iter()
        .map(|a| hd::GroupElement::new(a, m))
        .collect::<hd::Result<Vec<_>>>()
        .map_err(err)?;
    let z = hd::bicharacter(&elements).map_err(err)?;
    Ok(PyComplex::from_doubles(py, z.re, z.im))
}

/// Generators of `{g : A g = 0 mod d}` for an integer matrix with
/// `columns` columns.
#[pyfunction]
fn kernel_mod_d(modulus: u64, matrix: Vec<Vec<i64>>, columns: usize) -> PyResult<Vec<Vec<u32>>> {
    let m = self::modulus(modulus)?;
    if let Some(row) = matrix.iter().find(|r| r.len() != columns) {
        return Err(PyValueError::new_err(format!(
            "row has {} entries, expected {columns}",
            row.len()
        )));
    }
    let labels = ids(&(0..columns as u32).collect::<Vec<_>>());
    let rows = matrix
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            let reduced = r.into_iter().map(|x| m.reduce(x)).collect();
            (VertexId(i as u32), reduced)
        })
        .collect();
    let system = hd::LinearSystem::new(m, labels, rows);
    Ok(hd::kernel_mod_d(&system)
        .generators()
        .iter()
        .map(|g| g.values().to_vec())
        .collect())
}

#[pyfunction]
fn hyper_cost(k: i64) -> PyResult<u64> {
    hd::hyper_cost(k).map_err(err)
}

#[pyfunction]
fn clique_cost(k: i64) -> PyResult<u64> {
    hd::clique_cost(k).map_err(err)
}

#[pymodule]
fn hyperdetect(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Hypergraph>()?;
    m.add_function(wrap_pyfunction!(bicharacter, m)?)?;
    m.add_function(wrap_pyfunction!(kernel_mod_d, m)?)?;
    m.add_function(wrap_pyfunction!(hyper_cost, m)?)?;
    m.add_function(wrap_pyfunction!(clique_cost, m)?)?;
    Ok(())
}
