//! Python bindings. Reports cross the boundary as plain dicts, built from the
//! same JSON the CLI prints.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use wexp_core::commands;
use wexp_core::psl::{psl2_wexp_classifier, psl_chainsaw, MaxType};
use wexp_core::structure::exponent as group_exponent;
use wexp_core::{Caps, Error};

create_exception!(wexp, OverCapError, PyException);

fn to_py(e: Error) -> PyErr {
    if e.is_over_cap() {
        OverCapError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn caps(lattice_cap: Option<u128>, element_cap: Option<u128>) -> Caps {
    let mut c = Caps::default();
    if let Some(v) = lattice_cap {
        c.lattice_cap = v;
    }
    if let Some(v) = element_cap {
        c.element_cap = v;
    }
    c
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Permutation", module = "wexp", frozen, from_py_object)]
#[derive(Clone)]
struct PyPermutation(wexp_core::Permutation);

#[pymethods]
impl PyPermutation {
    #[new]
    fn new(cycles: &str, degree: usize) -> PyResult<Self> {
        wexp_core::Permutation::parse(cycles, degree).map(PyPermutation).map_err(to_py)
    }

    #[staticmethod]
    fn from_images(images: Vec<u32>) -> PyResult<Self> {
        wexp_core::Permutation::from_images_1based(&images).map(PyPermutation).map_err(to_py)
    }

    #[getter]
    fn degree(&self) -> usize {
        self.0.degree()
    }

    /// 1-based images.
    fn images(&self) -> Vec<u32> {
        self.0.images_1based()
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn cycle_type(&self) -> Vec<usize> {
        self.0.cycle_type()
    }

    fn inverse(&self) -> Self {
        PyPermutation(self.0.inverse())
    }

    fn power(&self, k: i64) -> Self {
        PyPermutation(self.0.power(k))
    }

    /// `x^g = g⁻¹xg`.
    fn conjugate(&self, by: &PyPermutation) -> PyResult<Self> {
        self.0.conjugate(&by.0).map(PyPermutation).map_err(to_py)
    }

    /// Apply `self` first, then `other`.
    fn __mul__(&self, other: &PyPermutation) -> PyResult<Self> {
        self.0.compose(&other.0).map(PyPermutation).map_err(to_py)
    }

    fn __eq__(&self, other: &PyPermutation) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Permutation('{}', {})", self.0, self.0.degree())
    }
}

#[pyclass(name = "Group", module = "wexp", frozen)]
struct PyGroup {
    spec: String,
    group: wexp_core::PermGroup,
}

#[pymethods]
impl PyGroup {
    /// Builds from a spec such as "S:5", "PSL2:7", "A:5*A:5" or a group file path.
    #[new]
    fn new(spec: &str) -> PyResult<Self> {
        let b = commands::build_group(spec, &Caps::default()).map_err(to_py)?;
        Ok(PyGroup {
            spec: b.spec,
            group: b.group,
        })
    }

    #[staticmethod]
    fn from_generators(generators: Vec<PyPermutation>, degree: usize) -> PyResult<Self> {
        let gens = generators.into_iter().map(|p| p.0).collect();
        let group = wexp_core::PermGroup::new(gens, degree).map_err(to_py)?;
        Ok(PyGroup {
            spec: "generators".into(),
            group,
        })
    }

    #[getter]
    fn spec(&self) -> &str {
        &self.spec
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree()
    }

    fn order(&self) -> u128 {
        self.group.order()
    }

    fn generators(&self) -> Vec<PyPermutation> {
        self.group.generators().iter().cloned().map(PyPermutation).collect()
    }

    fn contains(&self, p: &PyPermutation) -> PyResult<bool> {
        self.group.contains(&p.0).map_err(to_py)
    }

    fn orbits(&self) -> Vec<Vec<usize>> {
        self.group.orbits()
    }

    #[pyo3(signature = (element_cap=None))]
    fn exponent(&self, element_cap: Option<u128>) -> PyResult<u64> {
        group_exponent(&self.group, &caps(None, element_cap)).map_err(to_py)
    }

    fn __len__(&self) -> PyResult<usize> {
        usize::try_from(self.group.order()).map_err(|_| PyValueError::new_err("order does not fit"))
    }

    fn __repr__(&self) -> String {
        format!("Group('{}', degree={}, order={})", self.spec, self.group.degree(), self.group.order())
    }
}

/// Runs one predicate and returns the report as a dict.
#[pyfunction]
#[pyo3(signature = (group, predicate, subgroup=None, lattice_cap=None, element_cap=None))]
fn check<'py>(
    py: Python<'py>,
    group: &str,
    predicate: &str,
    subgroup: Option<&str>,
    lattice_cap: Option<u128>,
    element_cap: Option<u128>,
) -> PyResult<Bound<'py, PyAny>> {
    let (report, _) = commands::run_check(group, predicate, subgroup, &caps(lattice_cap, element_cap)).map_err(to_py)?;
    to_dict(py, &report)
}

#[pyfunction]
#[pyo3(signature = (q_max, full_cap=5000))]
fn survey_psl(py: Python<'_>, q_max: u64, full_cap: u128) -> PyResult<Bound<'_, PyAny>> {
    let (report, _) = commands::run_survey_psl(q_max, full_cap, &Caps::default()).map_err(to_py)?;
    to_dict(py, &report)
}

/// `(n, w(n), π(n), ratio)` rows at logarithmic checkpoints.
#[pyfunction]
fn prime_density(n_max: u64) -> PyResult<Vec<(u64, u64, u64, f64)>> {
    let r = commands::run_density(n_max, &Caps::default()).map_err(to_py)?;
    Ok(r.rows.iter().map(|d| (d.n, d.w, d.pi, d.ratio)).collect())
}

#[pyfunction]
#[pyo3(signature = (group, what="subgroups"))]
fn lattice<'py>(py: Python<'py>, group: &str, what: &str) -> PyResult<Bound<'py, PyAny>> {
    let r = commands::run_lattice(group, what, &Caps::default()).map_err(to_py)?;
    to_dict(py, &r)
}

/// `(verdict, route)` from the mod-120 classifier for PSL(2,q).
#[pyfunction]
fn psl2_classifier(q: u64) -> PyResult<(bool, String)> {
    let c = psl2_wexp_classifier(q).map_err(to_py)?;
    Ok((c.verdict, c.route.to_string()))
}

/// `(k, l, |x^m|, |y^m|)` for the maximal subgroup type "A5", "A4" or "S4".
#[pyfunction]
fn chainsaw(p: u64, max_type: &str) -> PyResult<(u64, u64, u64, u64)> {
    let t: MaxType = max_type.parse().map_err(to_py)?;
    let c = psl_chainsaw(p, t).map_err(to_py)?;
    Ok((c.k, c.l, c.order_x_power, c.order_y_power))
}

/// Re-checks every certificate in a report (JSON text). Raises on rejection.
#[pyfunction]
fn verify_certificate(json: &str) -> PyResult<Vec<String>> {
    commands::verify_document(json).map_err(PyValueError::new_err)
}

#[pymodule]
fn wexp(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("OverCapError", m.py().get_type::<OverCapError>())?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyPermutation>()?;
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(survey_psl, m)?)?;
    m.add_function(wrap_pyfunction!(prime_density, m)?)?;
    m.add_function(wrap_pyfunction!(lattice, m)?)?;
    m.add_function(wrap_pyfunction!(psl2_classifier, m)?)?;
    m.add_function(wrap_pyfunction!(chainsaw, m)?)?;
    m.add_function(wrap_pyfunction!(verify_certificate, m)?)?;
    Ok(())
}
