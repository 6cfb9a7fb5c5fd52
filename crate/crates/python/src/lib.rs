//! Python module `funtf`.
//!
//! Indices are 1-based and signs are the integers `1` / `-1`, as in the JSON
//! documents. Reports expose their main fields as attributes and the full
//! record through `to_json()`.

use funtf_core as core;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err<E: std::fmt::Display>(e: E) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(name = "SignedInvolution", frozen, eq, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PySignedInvolution(core::SignedInvolution);

#[pymethods]
impl PySignedInvolution {
    #[new]
    fn new(pairing: Vec<usize>, signs: Vec<i64>) -> PyResult<Self> {
        core::SignedInvolution::from_ints(pairing.len(), &pairing, &signs)
            .map(Self)
            .map_err(err)
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn pairing(&self) -> Vec<usize> {
        self.0.pairing()
    }

    #[getter]
    fn signs(&self) -> Vec<i8> {
        self.0.signs().iter().map(|s| s.value()).collect()
    }

    fn apply(&self, a: Vec<f64>) -> PyResult<Vec<f64>> {
        self.0.apply(&a).map_err(err)
    }

    fn tangency_defect(&self, a: Vec<f64>) -> PyResult<f64> {
        self.0.tangency_defect(&a).map_err(err)
    }

    fn sign_flip(&self, p: usize) -> PyResult<Self> {
        core::sign_flip_bijection(&self.0, p).map(Self).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("SignedInvolution{}", self.0)
    }
}

#[pyclass(name = "OperatorSet", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOperatorSet(core::OperatorSet);

#[pymethods]
impl PyOperatorSet {
    #[new]
    fn new(dim: usize, operators: Vec<PySignedInvolution>) -> PyResult<Self> {
        core::OperatorSet::new(dim, operators.into_iter().map(|u| u.0).collect())
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        core::document::read_set(text).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        core::OperatorSetDocument::from_set(&self.0, None).to_json()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn operators(&self) -> Vec<PySignedInvolution> {
        self.0.iter().cloned().map(PySignedInvolution).collect()
    }

    fn images(&self, a: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
        self.0.images(&a).map_err(err)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("OperatorSet(dim={}, len={})", self.0.dim(), self.0.len())
    }
}

#[pyclass(name = "BalanceReport", frozen)]
struct PyBalanceReport(core::BalanceReport);

#[pymethods]
impl PyBalanceReport {
    #[getter]
    fn balanced(&self) -> bool {
        self.0.balanced
    }

    #[getter]
    fn set_size(&self) -> usize {
        self.0.set_size
    }

    /// `(p, q, observed, "required")` tuples.
    #[getter]
    fn condition_i_failures(&self) -> Vec<(usize, usize, usize, String)> {
        self.0
            .condition_i_failures
            .iter()
            .map(|f| (f.p, f.q, f.observed, f.required.to_string()))
            .collect()
    }

    /// `(p, q, r, s, plus, minus)` tuples.
    #[getter]
    fn condition_ii_failures(&self) -> Vec<(usize, usize, usize, usize, usize, usize)> {
        self.0
            .condition_ii_failures
            .iter()
            .map(|f| (f.p, f.q, f.r, f.s, f.plus, f.minus))
            .collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("report serializes")
    }
}

#[pyclass(name = "FrameReport", frozen)]
struct PyFrameReport(core::FrameReport);

#[pymethods]
impl PyFrameReport {
    #[getter]
    fn tight(&self) -> bool {
        self.0.tight
    }

    #[getter]
    fn frame_constant(&self) -> f64 {
        self.0.frame_constant
    }

    #[getter]
    fn theoretical_constant(&self) -> Option<f64> {
        self.0.theoretical_constant
    }

    #[getter]
    fn max_offdiag(&self) -> f64 {
        self.0.max_offdiag
    }

    #[getter]
    fn max_diag_dev(&self) -> f64 {
        self.0.max_diag_dev
    }

    #[getter]
    fn points_checked(&self) -> usize {
        self.0.points_checked
    }

    #[getter]
    fn worst_point(&self) -> Option<Vec<f64>> {
        self.0.worst_point.clone()
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("report serializes")
    }
}

#[pyclass(name = "UnbalancedWitness", frozen)]
struct PyUnbalancedWitness(core::UnbalancedWitness);

#[pymethods]
impl PyUnbalancedWitness {
    #[getter]
    fn point(&self) -> Vec<f64> {
        self.0.point.clone()
    }

    #[getter]
    fn probe_pair(&self) -> (usize, usize) {
        self.0.probe_pair
    }

    /// `(numerator, denominator)` of the exact defect.
    #[getter]
    fn defect(&self) -> (i64, i64) {
        (*self.0.defect.numer(), *self.0.defect.denom())
    }

    #[getter]
    fn defect_value(&self) -> f64 {
        self.0.defect_value
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("witness serializes")
    }
}

#[pyfunction]
#[pyo3(signature = (n, cap = core::DEFAULT_ENUMERATION_CAP))]
fn enumerate_full(n: usize, cap: usize) -> PyResult<PyOperatorSet> {
    core::enumerate_full_with_cap(n, cap).map(PyOperatorSet).map_err(err)
}

#[pyfunction]
fn build_minimal_balanced(n: usize) -> PyResult<PyOperatorSet> {
    core::build_minimal_balanced(n).map(PyOperatorSet).map_err(err)
}

#[pyfunction]
fn build_pairing_matrix(n: usize) -> PyResult<Vec<Vec<usize>>> {
    core::build_pairing_matrix(n).map(|m| m.rows().to_vec()).map_err(err)
}

#[pyfunction]
fn extract_pairings(matrix: Vec<Vec<usize>>) -> PyResult<Vec<Vec<usize>>> {
    let m = core::PairingMatrix::new(matrix).map_err(err)?;
    Ok(core::extract_pairings(&m).pairings())
}

#[pyfunction]
fn is_balanced(set: &PyOperatorSet) -> PyResult<PyBalanceReport> {
    core::is_balanced(&set.0).map(PyBalanceReport).map_err(err)
}

#[pyfunction]
fn count_pair_slice(set: &PyOperatorSet, p: usize, q: usize) -> PyResult<usize> {
    core::count_pair_slice(&set.0, p, q).map_err(err)
}

#[pyfunction]
fn count_sign_slice(set: &PyOperatorSet, p: usize, q: usize, r: usize, s: usize, eps: i64) -> PyResult<usize> {
    let eps = core::Sign::try_from(eps).map_err(err)?;
    core::count_sign_slice(&set.0, p, q, r, s, eps).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (set, num_samples = 100, seed = 0, tol = core::DEFAULT_TOLERANCE))]
fn verify_moving_funtf(set: &PyOperatorSet, num_samples: usize, seed: u64, tol: f64) -> PyResult<PyFrameReport> {
    core::verify_moving_funtf(&set.0, num_samples, seed, tol)
        .map(PyFrameReport)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (vectors, tol = core::DEFAULT_TOLERANCE))]
fn check_tight(vectors: Vec<Vec<f64>>, tol: f64) -> PyResult<PyFrameReport> {
    core::check_tight(&vectors, tol).map(PyFrameReport).map_err(err)
}

#[pyfunction]
fn frame_operator(vectors: Vec<Vec<f64>>) -> PyResult<Vec<Vec<f64>>> {
    let s = core::frame_operator(&vectors).map_err(err)?;
    Ok(s.row_iter().map(|r| r.iter().copied().collect()).collect())
}

#[pyfunction]
fn augment_with_normal(set: &PyOperatorSet, a: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    core::augment_with_normal(&set.0, &a).map_err(err)
}

#[pyfunction]
fn frame_coefficients(set: &PyOperatorSet, a: Vec<f64>, x: Vec<f64>) -> PyResult<Vec<f64>> {
    core::frame_coefficients(&set.0, &a, &x).map_err(err)
}

#[pyfunction]
fn reconstruct(set: &PyOperatorSet, a: Vec<f64>, coefficients: Vec<f64>, c: f64) -> PyResult<Vec<f64>> {
    core::reconstruct(&set.0, &a, &coefficients, c).map_err(err)
}

#[pyfunction]
fn witness_unbalanced(set: &PyOperatorSet) -> PyResult<PyUnbalancedWitness> {
    let report = core::is_balanced(&set.0).map_err(err)?;
    core::witness_unbalanced(&set.0, &report)
        .map(PyUnbalancedWitness)
        .map_err(err)
}

#[pyfunction]
fn random_sphere_point(dim: usize, seed: u64) -> PyResult<Vec<f64>> {
    core::random_sphere_point(dim, seed)
        .map(|p| p.into_coords())
        .map_err(err)
}

#[pyfunction]
fn project_tangent(a: Vec<f64>, x: Vec<f64>) -> PyResult<Vec<f64>> {
    let a = core::SpherePoint::new(a).map_err(err)?;
    core::project_tangent(&a, &x).map_err(err)
}

#[pyfunction]
fn tangent_basis(a: Vec<f64>) -> PyResult<Vec<Vec<f64>>> {
    let a = core::SpherePoint::new(a).map_err(err)?;
    Ok(core::tangent_basis(&a))
}

#[pymodule]
fn funtf(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySignedInvolution>()?;
    m.add_class::<PyOperatorSet>()?;
    m.add_class::<PyBalanceReport>()?;
    m.add_class::<PyFrameReport>()?;
    m.add_class::<PyUnbalancedWitness>()?;
    m.add_function(wrap_pyfunction!(enumerate_full, m)?)?;
    m.add_function(wrap_pyfunction!(build_minimal_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(build_pairing_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(extract_pairings, m)?)?;
    m.add_function(wrap_pyfunction!(is_balanced, m)?)?;
    m.add_function(wrap_pyfunction!(count_pair_slice, m)?)?;
    m.add_function(wrap_pyfunction!(count_sign_slice, m)?)?;
    m.add_function(wrap_pyfunction!(verify_moving_funtf, m)?)?;
    m.add_function(wrap_pyfunction!(check_tight, m)?)?;
    m.add_function(wrap_pyfunction!(frame_operator, m)?)?;
    m.add_function(wrap_pyfunction!(augment_with_normal, m)?)?;
    m.add_function(wrap_pyfunction!(frame_coefficients, m)?)?;
    m.add_function(wrap_pyfunction!(reconstruct, m)?)?;
    m.add_function(wrap_pyfunction!(witness_unbalanced, m)?)?;
    m.add_function(wrap_pyfunction!(random_sphere_point, m)?)?;
    m.add_function(wrap_pyfunction!(project_tangent, m)?)?;
    m.add_function(wrap_pyfunction!(tangent_basis, m)?)?;
    m.add("DEFAULT_TOLERANCE", core::DEFAULT_TOLERANCE)?;
    Ok(())
}
