//! Python bindings: polynomials, crossed products, certificates, lifts and
//! SU(1,1) conjugation. Certificates and reports cross the boundary as
//! dictionaries decoded from the same JSON the command line writes.

use ltsr_core::bounds::{bounds_report, BoundsInput};
use ltsr_core::certificate::{self, Certificate, VerifyError};
use ltsr_core::elimination::{determinant_winding, eliminate, ltsr_lower_obstruction, ltsr_upper_certificate};
use ltsr_core::liftrank::{lift_lnk, theorem_basic_lift, DiskOracle};
use ltsr_core::moebius::{self, rep_pi};
use ltsr_core::random::{crossed_element, rng_from_seed};
use ltsr_core::{json, AlgMatrix, Complex64};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn to_py<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = json::to_string(value).map_err(value_err)?;
    py.import("json")?.call_method1("loads", (text,))
}

fn from_py<T: serde::de::DeserializeOwned>(obj: &Bound<'_, PyAny>) -> PyResult<T> {
    let text: String = if let Ok(s) = obj.extract::<String>() {
        s
    } else {
        obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?
    };
    json::from_str(&text).map_err(value_err)
}

#[pyclass(module = "ltsr", frozen, from_py_object)]
#[derive(Clone)]
struct Poly(ltsr_core::Poly);

#[pymethods]
impl Poly {
    #[new]
    fn new(coeffs: Vec<Complex64>) -> Self {
        Poly(ltsr_core::Poly::new(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<Complex64> {
        self.0.coeffs().to_vec()
    }

    #[getter]
    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval(&self, z: Complex64) -> Complex64 {
        self.0.eval(z)
    }

    fn wiener_norm(&self) -> f64 {
        self.0.wiener_norm()
    }

    fn roots(&self) -> PyResult<Vec<Complex64>> {
        self.0.roots().map_err(runtime_err)
    }

    fn __add__(&self, other: &Poly) -> Poly {
        Poly(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &Poly) -> Poly {
        Poly(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &Poly) -> Poly {
        Poly(&self.0 * &other.0)
    }

    fn __eq__(&self, other: &Poly) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("Poly({:?})", self.0.coeffs())
    }
}

#[pyclass(module = "ltsr", frozen, from_py_object)]
#[derive(Clone)]
struct GroupSpec(ltsr_core::GroupSpec);

#[pymethods]
impl GroupSpec {
    #[new]
    #[pyo3(signature = (n, m = 1))]
    fn new(n: usize, m: i64) -> PyResult<Self> {
        ltsr_core::GroupSpec::new(n, m).map(GroupSpec).map_err(value_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn m(&self) -> i64 {
        self.0.m()
    }

    #[getter]
    fn omega(&self) -> Complex64 {
        self.0.omega()
    }

    fn __eq__(&self, other: &GroupSpec) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("GroupSpec(n={}, m={})", self.0.n(), self.0.m())
    }
}

/// Element `sum_g f_g delta^g` of the crossed product.
#[pyclass(module = "ltsr", frozen, from_py_object)]
#[derive(Clone)]
struct CrossedElement(ltsr_core::CrossedElement);

#[pymethods]
impl CrossedElement {
    #[new]
    fn new(spec: &GroupSpec, comps: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let comps = comps.into_iter().map(ltsr_core::Poly::new).collect();
        ltsr_core::CrossedElement::new(spec.0.clone(), comps)
            .map(CrossedElement)
            .map_err(value_err)
    }

    #[staticmethod]
    fn one(spec: &GroupSpec) -> Self {
        CrossedElement(ltsr_core::CrossedElement::one(&spec.0))
    }

    #[staticmethod]
    #[pyo3(signature = (spec, degree, seed))]
    fn random(spec: &GroupSpec, degree: usize, seed: u64) -> Self {
        CrossedElement(crossed_element(&mut rng_from_seed(seed), &spec.0, degree))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        json::from_str(text).map(CrossedElement).map_err(value_err)
    }

    fn to_json(&self) -> PyResult<String> {
        json::to_string(&self.0).map_err(value_err)
    }

    #[getter]
    fn spec(&self) -> GroupSpec {
        GroupSpec(self.0.spec().clone())
    }

    #[getter]
    fn comps(&self) -> Vec<Poly> {
        self.0.comps().iter().cloned().map(Poly).collect()
    }

    fn l1_norm(&self) -> f64 {
        self.0.l1_norm()
    }

    fn expectation(&self) -> Self {
        CrossedElement(self.0.expectation())
    }

    /// `(min |det|, winding)` of the matrix embedding on the unit circle.
    #[pyo3(signature = (samples = 1024))]
    fn winding(&self, samples: usize) -> PyResult<(f64, i64)> {
        determinant_winding(&self.0, samples).map_err(runtime_err)
    }

    /// Top polynomial `a^(n-1,1)_0` of the elimination cascade.
    fn eliminate(&self) -> PyResult<Poly> {
        eliminate(&self.0)
            .map(|t| Poly(t.top_poly().clone()))
            .map_err(value_err)
    }

    fn __mul__(&self, other: &CrossedElement) -> PyResult<Self> {
        self.0.convolve(&other.0).map(CrossedElement).map_err(value_err)
    }

    fn __add__(&self, other: &CrossedElement) -> PyResult<Self> {
        self.0.try_add(&other.0).map(CrossedElement).map_err(value_err)
    }

    fn __sub__(&self, other: &CrossedElement) -> PyResult<Self> {
        self.0.try_sub(&other.0).map(CrossedElement).map_err(value_err)
    }

    fn __eq__(&self, other: &CrossedElement) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("CrossedElement(n={}, m={}, l1={:e})", self.0.spec().n(), self.0.spec().m(), self.0.l1_norm())
    }
}

#[pyclass(module = "ltsr", frozen, from_py_object)]
#[derive(Clone)]
struct SU11Element(moebius::SU11Element);

#[pymethods]
impl SU11Element {
    #[new]
    fn new(a: Complex64, b: Complex64) -> PyResult<Self> {
        moebius::SU11Element::new(a, b).map(SU11Element).map_err(value_err)
    }

    #[staticmethod]
    fn rotation(theta: f64) -> Self {
        SU11Element(moebius::SU11Element::rotation(theta))
    }

    #[staticmethod]
    fn random(seed: u64, max_t: f64) -> Self {
        SU11Element(moebius::SU11Element::random(&mut rng_from_seed(seed), max_t))
    }

    #[getter]
    fn a(&self) -> Complex64 {
        self.0.a()
    }

    #[getter]
    fn b(&self) -> Complex64 {
        self.0.b()
    }

    fn apply(&self, z: Complex64) -> Complex64 {
        self.0.mobius_apply(z)
    }

    fn inverse(&self) -> Self {
        SU11Element(self.0.inverse())
    }

    /// `C^-1 g C` in SL(2, R), row major.
    fn rep_pi(&self) -> PyResult<[[f64; 2]; 2]> {
        let m = rep_pi(&self.0).map_err(value_err)?.matrix();
        Ok([[m[(0, 0)], m[(0, 1)]], [m[(1, 0)], m[(1, 1)]]])
    }

    fn __mul__(&self, other: &SU11Element) -> Self {
        SU11Element(self.0.mul(&other.0))
    }

    fn __repr__(&self) -> String {
        format!("SU11Element({})", self.0)
    }
}

/// Bezout certificate for a pair within `epsilon` of `(x, y)`.
#[pyfunction]
#[pyo3(signature = (x, y, epsilon = 0.1, seed = 0))]
fn upper_certificate<'py>(
    py: Python<'py>,
    x: &CrossedElement,
    y: &CrossedElement,
    epsilon: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let mut cert = ltsr_upper_certificate(&x.0, &y.0, epsilon, &mut rng_from_seed(seed)).map_err(runtime_err)?;
    cert.seed = Some(seed);
    to_py(py, &Certificate::Bezout(cert))
}

/// Winding obstruction around `z delta^0` at radius `delta`.
#[pyfunction]
#[pyo3(signature = (spec, delta = 0.05, samples = 1024, seed = 0, margin_exponent = None))]
fn lower_obstruction<'py>(
    py: Python<'py>,
    spec: &GroupSpec,
    delta: f64,
    samples: usize,
    seed: u64,
    margin_exponent: Option<u32>,
) -> PyResult<Bound<'py, PyAny>> {
    let mut obs = ltsr_lower_obstruction(&spec.0, delta, samples, margin_exponent, &mut rng_from_seed(seed))
        .map_err(value_err)?;
    obs.seed = Some(seed);
    to_py(py, &Certificate::Winding(obs))
}

/// Re-verifies a certificate (dict or JSON text). Returns the recomputed
/// quantities; raises `ValueError` if malformed and `RuntimeError` if a check fails.
#[pyfunction]
fn verify<'py>(py: Python<'py>, cert: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let cert: Certificate = from_py(cert)?;
    match certificate::verify(&cert).and_then(|v| v.into_result()) {
        Ok(v) => to_py(py, &v),
        Err(VerifyError::Malformed(m)) => Err(PyValueError::new_err(m)),
        Err(e) => Err(runtime_err(e)),
    }
}

#[pyfunction]
#[pyo3(signature = (ltsr_a = 2, n = 2, matrix_size = 1, ltsr_b = None))]
fn bounds<'py>(
    py: Python<'py>,
    ltsr_a: u64,
    n: u64,
    matrix_size: u64,
    ltsr_b: Option<u64>,
) -> PyResult<Bound<'py, PyAny>> {
    let report = bounds_report(BoundsInput {
        ltsr_a,
        n,
        matrix_size,
        ltsr_b,
    })
    .map_err(value_err)?;
    to_py(py, &report)
}

/// Left-invertible approximation of a tall polynomial matrix given as rows
/// of coefficient lists. Returns `(output, left_inverse, distance, residual)`.
#[pyfunction]
#[pyo3(signature = (rows, epsilon = 0.1, seed = 0))]
#[allow(clippy::type_complexity)]
fn lift_matrix(
    rows: Vec<Vec<Vec<Complex64>>>,
    epsilon: f64,
    seed: u64,
) -> PyResult<(Vec<Vec<Poly>>, Vec<Vec<Poly>>, f64, f64)> {
    let cols = rows.first().map_or(0, Vec::len);
    let height = rows.len();
    let entries = rows.into_iter().flatten().map(ltsr_core::Poly::new).collect();
    let t = AlgMatrix::new(height, cols, entries).map_err(value_err)?;
    let mut rng = rng_from_seed(seed);
    let lift = lift_lnk(&t, epsilon, &mut DiskOracle::new(&mut rng)).map_err(runtime_err)?;
    let nested = |m: &AlgMatrix<ltsr_core::Poly>| {
        (0..m.rows())
            .map(|i| m.row(i).into_iter().map(Poly).collect())
            .collect()
    };
    Ok((nested(&lift.output), nested(&lift.left_inverse), lift.distance, lift.residual))
}

/// Approximates a `(1+n)`-tuple by a generating one. Returns `(outputs, witness, residual)`.
#[pyfunction]
#[pyo3(signature = (tuple, epsilon = 0.1, seed = 0))]
fn lift_tuple(
    tuple: Vec<CrossedElement>,
    epsilon: f64,
    seed: u64,
) -> PyResult<(Vec<CrossedElement>, Vec<CrossedElement>, f64)> {
    let b: Vec<_> = tuple.into_iter().map(|x| x.0).collect();
    let lift = theorem_basic_lift(&b, epsilon, &mut rng_from_seed(seed)).map_err(runtime_err)?;
    let wrap = |v: Vec<ltsr_core::CrossedElement>| v.into_iter().map(CrossedElement).collect();
    Ok((wrap(lift.outputs), wrap(lift.witness), lift.residual))
}

/// `h j h^-1` for the rotation `j` of angle `pi m / order`, as a subgroup dict.
#[pyfunction]
#[pyo3(signature = (order, h, m = 1))]
fn make_subgroup<'py>(py: Python<'py>, order: usize, h: &SU11Element, m: i64) -> PyResult<Bound<'py, PyAny>> {
    let k = moebius::make_finite_subgroup(order, &h.0, m).map_err(value_err)?;
    to_py(py, &k)
}

/// Rotation action equivalent to a finite subgroup, with its group spec.
#[pyfunction]
fn conjugate<'py>(py: Python<'py>, subgroup: &Bound<'py, PyAny>) -> PyResult<Bound<'py, PyAny>> {
    let k: moebius::FiniteCyclicSubgroup = from_py(subgroup)?;
    let action = moebius::rotation_action_of(&k).map_err(runtime_err)?;
    to_py(py, &action)
}

#[pymodule]
fn ltsr(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Poly>()?;
    m.add_class::<GroupSpec>()?;
    m.add_class::<CrossedElement>()?;
    m.add_class::<SU11Element>()?;
    m.add_function(wrap_pyfunction!(upper_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(lower_obstruction, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(lift_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(lift_tuple, m)?)?;
    m.add_function(wrap_pyfunction!(make_subgroup, m)?)?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    Ok(())
}
