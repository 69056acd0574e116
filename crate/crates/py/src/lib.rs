//! Python bindings for the `z2q` core.

use std::sync::Arc;

use num_rational::BigRational;
use pyo3::exceptions::{PyTypeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyTuple;

use z2q::calculus::{coaction, de_rham, Side};
use z2q::engine::check_local_confluence;
use z2q::expr::{eval_str, Value};
use z2q::hopf::{antipode, coproduct, counit};
use z2q::operators::apply_partial;
use z2q::verify::run_suite;

fn err(e: z2q::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn degree_tuple<'py>(py: Python<'py>, d: Option<z2q::Degree>) -> PyResult<Option<Bound<'py, PyTuple>>> {
    d.map(|d| PyTuple::new(py, d.entries())).transpose()
}

#[pyclass(name = "Presentation", module = "z2q_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPresentation {
    inner: Arc<z2q::Presentation>,
}

#[pymethods]
impl PyPresentation {
    /// Loads a builtin by name, a JSON file, or a file found on `Z2Q_PRESENTATION_PATH`.
    #[new]
    fn new(name_or_path: &str) -> PyResult<Self> {
        Ok(Self { inner: z2q::Presentation::load(name_or_path).map_err(err)? })
    }

    #[staticmethod]
    fn builtins() -> Vec<&'static str> {
        z2q::engine::BUILTIN_NAMES.to_vec()
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: z2q::Presentation::from_json(text).map_err(err)? })
    }

    #[getter]
    fn name(&self) -> &str {
        self.inner.name()
    }

    #[getter]
    fn generators(&self) -> Vec<String> {
        self.inner.generators().iter().map(|g| g.symbol.clone()).collect()
    }

    fn degree_of<'py>(&self, py: Python<'py>, symbol: &str) -> PyResult<Bound<'py, PyTuple>> {
        let i = self
            .inner
            .index_of(symbol)
            .ok_or_else(|| PyValueError::new_err(format!("unknown generator `{symbol}`")))?;
        PyTuple::new(py, self.inner.generator(i).degree.entries())
    }

    fn is_confluent(&self) -> bool {
        check_local_confluence(&self.inner).passed()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&self.inner.to_spec()).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// Parses and normalizes `expr`.
    fn parse(&self, py: Python<'_>, expr: &str) -> PyResult<Py<PyAny>> {
        value_to_py(py, eval_str(expr, &self.inner).map_err(err)?)
    }

    fn generator(&self, symbol: &str) -> PyResult<PyElement> {
        Ok(PyElement { inner: z2q::Element::generator(&self.inner, symbol).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        format!("Presentation({:?})", self.inner.name())
    }
}

#[pyclass(name = "Scalar", module = "z2q_py", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyScalar {
    inner: z2q::QScalar,
}

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(Self { inner: text.parse().map_err(err)? })
    }

    /// Evaluates at `q = num/den` and returns `(numerator, denominator)` as strings.
    #[pyo3(signature = (num, den = 1))]
    fn eval(&self, num: i64, den: i64) -> PyResult<(String, String)> {
        if den == 0 {
            return Err(PyValueError::new_err("zero denominator"));
        }
        let r = self.inner.eval(&BigRational::new(num.into(), den.into())).map_err(err)?;
        Ok((r.numer().to_string(), r.denom().to_string()))
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({:?})", self.inner.to_string())
    }
}

#[pyclass(name = "Element", module = "z2q_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyElement {
    inner: z2q::Element,
}

fn element_operand(other: &Bound<'_, PyAny>, like: &z2q::Element) -> PyResult<z2q::Element> {
    if let Ok(e) = other.cast::<PyElement>() {
        return Ok(e.get().inner.clone());
    }
    if let Ok(s) = other.cast::<PyScalar>() {
        return Ok(z2q::Element::scalar(like.presentation(), s.get().inner.clone()));
    }
    if let Ok(n) = other.extract::<i64>() {
        return Ok(z2q::Element::scalar(like.presentation(), z2q::QScalar::from_int(n)));
    }
    Err(PyTypeError::new_err("expected an Element, Scalar or int"))
}

#[pymethods]
impl PyElement {
    #[getter]
    fn algebra(&self) -> &str {
        self.inner.presentation().name()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// `(monomial, coefficient)` pairs in display order.
    fn terms(&self) -> Vec<(String, String)> {
        let p = self.inner.presentation();
        self.inner.terms().map(|(m, c)| (m.render(p), c.to_string())).collect()
    }

    /// The degree tuple, or `None` when inhomogeneous.
    fn degree<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyTuple>>> {
        degree_tuple(py, self.inner.homogeneous_degree())
    }

    fn d(&self) -> PyResult<Self> {
        Ok(Self { inner: de_rham(&self.inner).map_err(err)? })
    }

    fn coproduct(&self) -> PyResult<PyTensor> {
        Ok(PyTensor { inner: coproduct(&self.inner).map_err(err)? })
    }

    fn counit(&self) -> PyResult<PyScalar> {
        Ok(PyScalar { inner: counit(&self.inner).map_err(err)? })
    }

    fn antipode(&self) -> PyResult<Self> {
        Ok(Self { inner: antipode(&self.inner).map_err(err)? })
    }

    /// Left (`"left"`) or right (`"right"`) coaction on a form.
    #[pyo3(signature = (side = "left"))]
    fn coaction(&self, side: &str) -> PyResult<PyTensor> {
        let side = match side {
            "left" => Side::Left,
            "right" => Side::Right,
            other => return Err(PyValueError::new_err(format!("side must be 'left' or 'right', not {other:?}"))),
        };
        Ok(PyTensor { inner: coaction(side, &self.inner).map_err(err)? })
    }

    /// Applies the partial derivative named `Dx`, `Dxi`, `Dtheta` or `Dz`.
    fn partial(&self, name: &str) -> PyResult<Self> {
        Ok(Self { inner: apply_partial(name, &self.inner).map_err(err)? })
    }

    fn __add__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = element_operand(other, &self.inner)?;
        Ok(Self { inner: self.inner.try_add(&o).map_err(err)? })
    }

    fn __radd__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(other)
    }

    fn __sub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = element_operand(other, &self.inner)?;
        Ok(Self { inner: self.inner.try_sub(&o).map_err(err)? })
    }

    fn __rsub__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = element_operand(other, &self.inner)?;
        Ok(Self { inner: o.try_sub(&self.inner).map_err(err)? })
    }

    fn __mul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = element_operand(other, &self.inner)?;
        Ok(Self { inner: self.inner.try_mul(&o).map_err(err)? })
    }

    fn __rmul__(&self, other: &Bound<'_, PyAny>) -> PyResult<Self> {
        let o = element_operand(other, &self.inner)?;
        Ok(Self { inner: o.try_mul(&self.inner).map_err(err)? })
    }

    fn __neg__(&self) -> Self {
        Self { inner: -&self.inner }
    }

    fn __pow__(&self, exp: u32, modulo: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        if modulo.is_some() {
            return Err(PyTypeError::new_err("modular power is not supported"));
        }
        Ok(Self { inner: self.inner.pow(exp) })
    }

    fn __eq__(&self, other: &Bound<'_, PyAny>) -> bool {
        element_operand(other, &self.inner).is_ok_and(|o| o == self.inner)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Element({:?}, {:?})", self.inner.presentation().name(), self.inner.to_string())
    }
}

#[pyclass(name = "Tensor", module = "z2q_py", frozen, skip_from_py_object, eq)]
#[derive(Clone, PartialEq)]
struct PyTensor {
    inner: z2q::TensorElement,
}

#[pymethods]
impl PyTensor {
    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn degree<'py>(&self, py: Python<'py>) -> PyResult<Option<Bound<'py, PyTuple>>> {
        degree_tuple(py, self.inner.homogeneous_degree())
    }

    /// Multiplies the slots together with the graded sign.
    fn contract(&self) -> PyResult<PyElement> {
        Ok(PyElement { inner: self.inner.contract().map_err(err)? })
    }

    fn swap(&self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.swap().map_err(err)? })
    }

    fn __mul__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.try_mul(&other.inner).map_err(err)? })
    }

    fn __add__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.try_add(&other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &Self) -> PyResult<Self> {
        Ok(Self { inner: self.inner.try_sub(&other.inner).map_err(err)? })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Tensor({:?})", self.inner.to_string())
    }
}

fn value_to_py(py: Python<'_>, v: Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Scalar(s) => Py::new(py, PyScalar { inner: s })?.into_any(),
        Value::Element(e) => Py::new(py, PyElement { inner: e })?.into_any(),
        Value::Tensor(t) => Py::new(py, PyTensor { inner: t })?.into_any(),
    })
}

/// Normal form of `expr` rendered as text.
#[pyfunction]
#[pyo3(signature = (expr, algebra = "dqsp"))]
fn normalize(expr: &str, algebra: &str) -> PyResult<String> {
    let p = z2q::Presentation::load(algebra).map_err(err)?;
    Ok(eval_str(expr, &p).map_err(err)?.to_string())
}

/// Parses and normalizes `expr`, returning an Element, Tensor or Scalar.
#[pyfunction]
#[pyo3(signature = (expr, algebra = "dqsp"))]
fn parse(py: Python<'_>, expr: &str, algebra: &str) -> PyResult<Py<PyAny>> {
    let p = z2q::Presentation::load(algebra).map_err(err)?;
    value_to_py(py, eval_str(expr, &p).map_err(err)?)
}

/// Runs a verification suite and returns the report as JSON text.
#[pyfunction]
#[pyo3(signature = (suite = "all", bound = 4))]
fn verify(py: Python<'_>, suite: &str, bound: u32) -> PyResult<String> {
    let suite = suite.to_string();
    py.detach(move || run_suite(&suite, bound)).map(|r| r.to_json()).map_err(err)
}

#[pymodule]
pub fn z2q_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPresentation>()?;
    m.add_class::<PyElement>()?;
    m.add_class::<PyTensor>()?;
    m.add_class::<PyScalar>()?;
    m.add_function(wrap_pyfunction!(normalize, m)?)?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
