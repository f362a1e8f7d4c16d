//! Python bindings. Exact values cross the boundary as strings (`"7/45"`,
//! `"-21*c"`); partitions are tuples of descending parts.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyTuple};

use pontryagin::algebra::parse_rational;
use pontryagin::charnum::{char_vector, pontryagin_number, s_number, Basis};
use pontryagin::cohomology::DEFAULT_BASIS_GUARD;
use pontryagin::json::{lgenus_from_json, lgenus_to_json};
use pontryagin::lsolver::{classify_combo, Classification, Combo, GeneratorAssignment, LGenusResult};
use pontryagin::manifolds::{ManifoldModel, ManifoldSpec};
use pontryagin::partitions::Partition;
use pontryagin::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Singular { .. } | Error::NotConfluent(_) | Error::BasisGuard { .. } => {
            PyArithmeticError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(to_py)
}

fn assignment(spec: Option<&str>) -> PyResult<GeneratorAssignment> {
    match spec {
        Some(s) => GeneratorAssignment::parse(s).map_err(to_py),
        None => Ok(GeneratorAssignment::default()),
    }
}

/// A closed manifold given by a product specification such as
/// `"cp:m=1*xc:k=1,c=@c"`.
#[pyclass(frozen, name = "Manifold")]
struct PyManifold {
    spec: ManifoldSpec,
    model: ManifoldModel,
}

#[pymethods]
impl PyManifold {
    #[new]
    #[pyo3(signature = (spec, max_basis = DEFAULT_BASIS_GUARD))]
    fn new(spec: &str, max_basis: usize) -> PyResult<Self> {
        let spec: ManifoldSpec = spec.parse().map_err(to_py)?;
        let model = spec.build(max_basis).map_err(to_py)?;
        Ok(PyManifold { spec, model })
    }

    /// Real dimension divided by 4.
    #[getter]
    fn dim4(&self) -> u32 {
        self.model.dim4
    }

    #[getter]
    fn params(&self) -> Vec<String> {
        self.model.params.iter().cloned().collect()
    }

    #[getter]
    fn signature(&self) -> String {
        self.model.signature.to_string()
    }

    fn pontryagin_number(&self, parts: Vec<u32>) -> PyResult<String> {
        Ok(pontryagin_number(&self.model, &partition(parts)?).map_err(to_py)?.to_string())
    }

    fn s_number(&self) -> PyResult<String> {
        Ok(s_number(&self.model, self.model.dim4).map_err(to_py)?.to_string())
    }

    /// `{partition: value}` in basis `"p"` or `"s"`.
    #[pyo3(signature = (basis = "p"))]
    fn char_vector<'py>(&self, py: Python<'py>, basis: &str) -> PyResult<Bound<'py, PyDict>> {
        let basis: Basis = basis.parse().map_err(to_py)?;
        let v = char_vector(&self.model, basis);
        let out = PyDict::new(py);
        for (j, value) in &v.values {
            out.set_item(PyTuple::new(py, j.parts())?, value.to_string())?;
        }
        Ok(out)
    }

    fn __repr__(&self) -> String {
        format!("Manifold('{}')", self.spec)
    }
}

/// Coefficients of `L_i = Σ_J λ_J p_J`.
#[pyclass(frozen, name = "LGenus")]
struct PyLGenus {
    inner: LGenusResult,
    source: Option<String>,
}

#[pymethods]
impl PyLGenus {
    #[getter]
    fn i(&self) -> u32 {
        self.inner.i
    }

    #[getter]
    fn source(&self) -> Option<String> {
        self.source.clone()
    }

    /// `{partition: "n/d"}`.
    fn coefficients<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let out = PyDict::new(py);
        for (j, r) in &self.inner.coeffs {
            out.set_item(PyTuple::new(py, j.parts())?, r.to_string())?;
        }
        Ok(out)
    }

    fn pretty(&self) -> String {
        self.inner.pretty()
    }

    fn to_json(&self) -> String {
        lgenus_to_json(&self.inner, self.source.as_deref())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (inner, source) = lgenus_from_json(text).map_err(to_py)?;
        Ok(PyLGenus { inner, source })
    }

    /// Value on a manifold of the same dimension.
    fn evaluate(&self, manifold: &PyManifold) -> PyResult<String> {
        let v = char_vector(&manifold.model, Basis::P);
        Ok(self.inner.evaluate(&v).map_err(to_py)?.to_string())
    }

    fn __eq__(&self, other: &PyLGenus) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        self.inner.pretty()
    }
}

/// `L_i` by solving the linear system over the generator basis.
/// `c_assignment` looks like `"2:1,3:-3/2"`.
#[pyfunction]
#[pyo3(signature = (i, c_assignment = None))]
fn solve_l(i: u32, c_assignment: Option<&str>) -> PyResult<PyLGenus> {
    let a = assignment(c_assignment)?;
    let inner = pontryagin::lsolver::solve_l(i, &a).map_err(to_py)?;
    Ok(PyLGenus { inner, source: None })
}

/// `L_i` from the power series of `x / tanh(x)`.
#[pyfunction]
fn oracle_l(i: u32) -> PyResult<PyLGenus> {
    let inner = pontryagin::oracle::oracle_l(i).map_err(to_py)?;
    Ok(PyLGenus {
        inner,
        source: Some("oracle".into()),
    })
}

/// `{"kind": "multiple", "ratio": ...}` or
/// `{"kind": "witness", "partition": ..., "value": ...}`.
#[pyfunction]
#[pyo3(signature = (combo, i = None))]
fn classify<'py>(py: Python<'py>, combo: &str, i: Option<u32>) -> PyResult<Bound<'py, PyDict>> {
    let f = match i {
        Some(i) => Combo::parse(combo, i),
        None => Combo::parse_inferred(combo),
    }
    .map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("i", f.i)?;
    match classify_combo(&f).map_err(to_py)? {
        Classification::MultipleOfSignature { ratio } => {
            out.set_item("kind", "multiple")?;
            out.set_item("ratio", ratio.to_string())?;
        }
        Classification::Witness { partition, value } => {
            out.set_item("kind", "witness")?;
            out.set_item("partition", PyTuple::new(py, partition.parts())?)?;
            out.set_item("value", value.to_string())?;
        }
    }
    Ok(out)
}

/// Whether the s-number is nonzero after substituting `values`
/// (`{"c": "2"}`); unassigned parameters stay formal.
#[pyfunction]
#[pyo3(signature = (manifold, values = None))]
fn certify(manifold: &PyManifold, values: Option<BTreeMap<String, String>>) -> PyResult<bool> {
    let s = s_number(&manifold.model, manifold.model.dim4).map_err(to_py)?;
    let mut map = BTreeMap::new();
    for (k, v) in values.unwrap_or_default() {
        map.insert(k, parse_rational(&v).map_err(to_py)?);
    }
    Ok(!s.substitute(&map).is_zero())
}

/// Runs the self-check report; returns `[(name, passed, detail), ...]`.
#[pyfunction]
#[pyo3(signature = (max_i = 6, max_k = 8))]
fn verify(py: Python<'_>, max_i: u32, max_k: u32) -> Vec<(String, bool, String)> {
    let opts = pontryagin::verify::VerifyOptions {
        max_i,
        max_k,
        ..Default::default()
    };
    let report = py.detach(|| pontryagin::verify::run(&opts));
    report
        .checks
        .into_iter()
        .map(|c| (c.name, c.passed, c.detail))
        .collect()
}

#[pymodule]
fn pypontryagin(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyManifold>()?;
    m.add_class::<PyLGenus>()?;
    m.add_function(wrap_pyfunction!(solve_l, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_l, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
