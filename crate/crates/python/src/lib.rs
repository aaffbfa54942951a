//! Python bindings: `import toric_poisson`.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;

use toric_poisson as tp;

fn err(e: tp::Error) -> PyErr {
    match e {
        tp::Error::DivisionByZero => PyZeroDivisionError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn strings(m: &tp::DenseMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(ToString::to_string).collect()).collect()
}

/// Exact element of Q(i).
#[pyclass(name = "GaussianRational", module = "toric_poisson", skip_from_py_object, frozen, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PyGaussianRational(tp::GaussianRational);

fn coerce(value: &Bound<'_, PyAny>) -> PyResult<tp::GaussianRational> {
    if let Ok(g) = value.cast::<PyGaussianRational>() {
        return Ok(g.get().0.clone());
    }
    if let Ok(k) = value.extract::<i64>() {
        return Ok(k.into());
    }
    let text: String = value.extract()?;
    tp::GaussianRational::parse(&text).map_err(err)
}

#[pymethods]
impl PyGaussianRational {
    #[new]
    fn new(value: &Bound<'_, PyAny>) -> PyResult<Self> {
        coerce(value).map(Self)
    }

    #[getter]
    fn re(&self) -> String {
        self.0.re().to_string()
    }

    #[getter]
    fn im(&self) -> String {
        self.0.im().to_string()
    }

    fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 + &coerce(other)?))
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&coerce(other)? + &self.0))
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 - &coerce(other)?))
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&coerce(other)? - &self.0))
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&self.0 * &coerce(other)?))
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(&coerce(other)? * &self.0))
    }

    fn __truediv__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.checked_div(&coerce(other)?).map(Self).map_err(err)
    }

    fn __neg__(&self) -> Self {
        Self(-&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GaussianRational('{}')", self.0)
    }
}

/// Coefficient matrix `B`; Hermitian unless built with `raw=True`.
#[pyclass(name = "HermitianForm", module = "toric_poisson", skip_from_py_object, frozen)]
#[derive(Clone)]
pub struct PyHermitianForm(tp::HermitianForm);

#[pymethods]
impl PyHermitianForm {
    #[new]
    #[pyo3(signature = (text, raw = false))]
    fn new(text: &str, raw: bool) -> PyResult<Self> {
        let m = tp::DenseMatrix::parse(text).map_err(err)?;
        let form = if raw { tp::HermitianForm::raw(m) } else { tp::HermitianForm::new(m).map_err(err)? };
        Ok(Self(form))
    }

    #[staticmethod]
    fn preset(name: &str) -> PyResult<Self> {
        tp::preset(name).map(Self).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn entries(&self) -> Vec<Vec<String>> {
        strings(self.0.entries())
    }

    fn determinant(&self) -> PyGaussianRational {
        PyGaussianRational(self.0.determinant().clone())
    }

    fn is_hermitian(&self) -> bool {
        self.0.is_hermitian()
    }

    fn is_symmetric(&self) -> bool {
        self.0.is_symmetric()
    }

    fn is_invertible(&self) -> bool {
        self.0.is_invertible()
    }

    fn scale(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(self.0.scale(&coerce(c)?)))
    }

    fn congruence(&self, p: Vec<Vec<i64>>) -> PyResult<Self> {
        tp::congruence_transform(&self.0, &p).map(Self).map_err(err)
    }

    /// `(classification, exponent matrix)` of the group-valued momentum map.
    fn hamiltonian(&self) -> PyResult<(String, Vec<Vec<String>>)> {
        let class = tp::hamiltonian_classify(&self.0).map_err(err)?;
        Ok((class.classification.to_string(), strings(&class.exponent_matrix)))
    }

    /// The bivector `pi_B`.
    fn bivector(&self) -> PyMultiVector {
        PyMultiVector(tp::build_pi(&self.0).bivector().clone())
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("HermitianForm('{}')", self.0)
    }
}

/// Polynomial multivector field on C^{2n}.
#[pyclass(name = "MultiVector", module = "toric_poisson", skip_from_py_object, frozen, eq)]
#[derive(Clone, PartialEq)]
pub struct PyMultiVector(tp::MultiVector);

#[pymethods]
impl PyMultiVector {
    /// `coeff * zeta^exps * d_{indices}`, with `exps` over `z1..zn, w1..wn`
    /// and 0-based wedge indices.
    #[staticmethod]
    #[pyo3(signature = (exps, indices, coeff = None))]
    fn term(exps: Vec<u32>, indices: Vec<usize>, coeff: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        if !exps.len().is_multiple_of(2) || exps.is_empty() {
            return Err(PyValueError::new_err("exponent vector must have even positive length 2n"));
        }
        let wedge = tp::WedgeIndex::new(&indices).map_err(err)?;
        if indices.iter().any(|&i| i >= exps.len()) {
            return Err(PyValueError::new_err("wedge index out of range"));
        }
        let c = match coeff {
            Some(c) => coerce(c)?,
            None => 1.into(),
        };
        Ok(Self(tp::MultiVector::term(tp::Monomial::from_zeta(exps), wedge, c)))
    }

    #[staticmethod]
    fn zero(n: usize) -> Self {
        Self(tp::MultiVector::zero(n))
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn terms(&self) -> Vec<String> {
        self.0.term_strings()
    }

    /// Set of `(polynomial degree, wedge degree)` pairs.
    fn grade(&self) -> Vec<(u32, usize)> {
        self.0.grade().into_iter().collect()
    }

    fn wedge(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.wedge(&other.0).map(Self).map_err(err)
    }

    fn scale(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(Self(self.0.scale(&coerce(c)?)))
    }

    fn generator_type(&self) -> String {
        tp::classify_generator(&self.0).to_string()
    }

    fn __add__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.add(&other.0).map(Self).map_err(err)
    }

    fn __sub__(&self, other: PyRef<'_, Self>) -> PyResult<Self> {
        self.0.sub(&other.0).map(Self).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MultiVector('{}')", self.0)
    }
}

#[pyfunction]
fn schouten_bracket(x: PyRef<'_, PyMultiVector>, y: PyRef<'_, PyMultiVector>) -> PyResult<PyMultiVector> {
    tp::schouten_bracket(&x.0, &y.0).map(PyMultiVector).map_err(err)
}

/// `sigma(y) = [y, pi_B]`.
#[pyfunction]
fn sigma(y: PyRef<'_, PyMultiVector>, b: PyRef<'_, PyHermitianForm>) -> PyResult<PyMultiVector> {
    tp::sigma(&y.0, &tp::build_pi(&b.0)).map(PyMultiVector).map_err(err)
}

/// Rows `d = 0..=dmax` of `dim H^p_[d]`.
#[pyfunction]
#[pyo3(signature = (b, dmax = 8, jobs = None))]
fn cohomology_table(py: Python<'_>, b: PyRef<'_, PyHermitianForm>, dmax: i64, jobs: Option<usize>) -> PyResult<Vec<Vec<usize>>> {
    if dmax < 0 {
        return Err(PyValueError::new_err("dmax must be >= 0"));
    }
    let pi = tp::build_pi(&b.0);
    let opts = tp::TableOptions { jobs, ..Default::default() };
    py.detach(|| tp::full_table(&pi, dmax, &opts)).map(|s| s.grid()).map_err(err)
}

#[pyfunction]
fn cohomology_dim(b: PyRef<'_, PyHermitianForm>, d: i64, p: i64) -> PyResult<usize> {
    tp::cohomology_dim(b.0.n(), d, p, &tp::build_pi(&b.0)).map_err(err)
}

#[pyfunction]
fn representatives(b: PyRef<'_, PyHermitianForm>, d: i64, p: i64) -> PyResult<Vec<PyMultiVector>> {
    let reps = tp::cohomology_representatives(b.0.n(), d, p, &tp::build_pi(&b.0)).map_err(err)?;
    Ok(reps.into_iter().map(PyMultiVector).collect())
}

/// Coordinates of the class of `v` in the representative basis of its
/// cell, or `None` if `v` is not a cocycle.
#[pyfunction]
fn class_coordinates(
    b: PyRef<'_, PyHermitianForm>,
    d: i64,
    p: i64,
    v: PyRef<'_, PyMultiVector>,
) -> PyResult<Option<Vec<PyGaussianRational>>> {
    let coh = tp::CellCohomology::compute(b.0.n(), d, p, &tp::build_pi(&b.0)).map_err(err)?;
    let coords = coh.class_coordinates(&v.0).map_err(err)?;
    Ok(coords.map(|c| c.into_iter().map(PyGaussianRational).collect()))
}

/// `(rows, columns)` of the matrix of `sigma^p_[d]`.
#[pyfunction]
fn sigma_matrix_shape(b: PyRef<'_, PyHermitianForm>, d: i64, p: i64) -> PyResult<(usize, usize)> {
    tp::assemble_sigma_matrix(b.0.n(), d, p, &tp::build_pi(&b.0)).map(|m| m.shape()).map_err(err)
}

#[pyfunction]
fn cell_dimension(n: usize, d: i64, p: i64) -> usize {
    tp::cell_dimension(n, d, p)
}

#[pymodule]
#[pyo3(name = "toric_poisson")]
pub fn toric_poisson_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussianRational>()?;
    m.add_class::<PyHermitianForm>()?;
    m.add_class::<PyMultiVector>()?;
    m.add_function(wrap_pyfunction!(schouten_bracket, m)?)?;
    m.add_function(wrap_pyfunction!(sigma, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_table, m)?)?;
    m.add_function(wrap_pyfunction!(cohomology_dim, m)?)?;
    m.add_function(wrap_pyfunction!(representatives, m)?)?;
    m.add_function(wrap_pyfunction!(class_coordinates, m)?)?;
    m.add_function(wrap_pyfunction!(sigma_matrix_shape, m)?)?;
    m.add_function(wrap_pyfunction!(cell_dimension, m)?)?;
    m.add("PRESET_NAMES", tp::PRESET_NAMES.to_vec())?;
    Ok(())
}
