//! Python bindings: systems, conic families, certificates, sweeps, regions
//! and the numeric cycle oracle. Structured results are returned as the same
//! JSON documents the command line writes, decoded into Python dicts.

use std::collections::BTreeMap;
use std::path::PathBuf;

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pbconic::conicfit::{classify, Conic, ConicFamily};
use pbconic::equilibria::solve_equilibria;
use pbconic::exactalg::{rational_string, rational_to_f64, Rational};
use pbconic::infinity::equator_equilibria;
use pbconic::localseries::Axis;
use pbconic::numoracle::{find_cycle, Section};
use pbconic::pipeline::{load_system, PipelineError, Setup};
use pbconic::report;
use pbconic::sysparse::{parse_rational, parse_system, ConicForm, SystemSpec};

create_exception!(pbconic, PbconicError, PyValueError);

fn err(e: PipelineError) -> PyErr {
    PbconicError::new_err(e.to_string())
}

fn rational(text: &str) -> PyResult<Rational> {
    parse_rational(text).map_err(|e| PbconicError::new_err(format!("invalid rational `{text}`: {e}")))
}

fn bindings(params: Option<BTreeMap<String, String>>) -> PyResult<BTreeMap<String, Rational>> {
    params
        .unwrap_or_default()
        .into_iter()
        .map(|(k, v)| Ok((k, rational(&v)?)))
        .collect()
}

fn axis(name: &str) -> PyResult<Axis> {
    match name {
        "x" => Ok(Axis::XAxis),
        "y" => Ok(Axis::YAxis),
        other => Err(PbconicError::new_err(format!("axis must be \"x\" or \"y\", got {other:?}"))),
    }
}

fn form(name: Option<&str>, sys: &SystemSpec) -> PyResult<ConicForm> {
    match name {
        None => Ok(sys.default_conic_form()),
        Some("centered") => Ok(ConicForm::Centered),
        Some("general") => Ok(ConicForm::General),
        Some(other) => Err(PbconicError::new_err(format!("form must be \"centered\" or \"general\", got {other:?}"))),
    }
}

fn to_py(py: Python<'_>, kind: &str, body: serde_json::Value) -> PyResult<Py<PyAny>> {
    let text = report::render(&report::document(kind, body));
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

/// A planar polynomial vector field with exact rational coefficients.
#[pyclass(name = "System", module = "pbconic", frozen)]
struct PySystem {
    inner: SystemSpec,
}

#[pymethods]
impl PySystem {
    #[new]
    #[pyo3(signature = (text, params=None))]
    fn new(text: &str, params: Option<BTreeMap<String, String>>) -> PyResult<Self> {
        let given = bindings(params)?;
        let inner = parse_system(text, &given).map_err(|e| err(e.into()))?;
        Ok(PySystem { inner })
    }

    #[staticmethod]
    #[pyo3(signature = (path, params=None))]
    fn from_file(path: PathBuf, params: Option<BTreeMap<String, String>>) -> PyResult<Self> {
        let given = bindings(params)?;
        let inner = load_system(&path, &given).map_err(err)?;
        Ok(PySystem { inner })
    }

    #[getter]
    fn dx(&self) -> String {
        self.inner.p.to_string()
    }

    #[getter]
    fn dy(&self) -> String {
        self.inner.q.to_string()
    }

    #[getter]
    fn degree(&self) -> u32 {
        self.inner.degree()
    }

    #[getter]
    fn params(&self) -> BTreeMap<String, String> {
        self.inner.params.iter().map(|(k, v)| (k.clone(), rational_string(v))).collect()
    }

    /// Glues the local series along an axis into a one-parameter conic family.
    #[pyo3(signature = (axis="x", offset="0", form=None, order=None))]
    fn glue(&self, axis: &str, offset: &str, form: Option<&str>, order: Option<usize>) -> PyResult<PyFamily> {
        let mut setup = Setup::new(self.inner.clone(), self::axis(axis)?);
        setup.offset = rational(offset)?;
        setup.form = self::form(form, &self.inner)?;
        if let Some(n) = order {
            setup.order = n;
        }
        let family = setup.family().map_err(err)?;
        Ok(PyFamily { setup, family })
    }

    /// All finite equilibria with their exact location and linear type.
    fn equilibria(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let set = solve_equilibria(&self.inner).map_err(|e| err(e.into()))?;
        to_py(py, "equilibria", report::equilibria(&self.inner, &set))
    }

    /// Equilibria on the equator of the Poincaré compactification, with the
    /// sign of an optional conic there.
    #[pyo3(signature = (conic=None))]
    fn infinity(&self, py: Python<'_>, conic: Option<&PyConic>) -> PyResult<Py<PyAny>> {
        let rep = equator_equilibria(&self.inner, conic.map(|c| &c.inner));
        to_py(py, "infinity", report::infinity(&rep))
    }

    /// Locates a limit cycle numerically from a seed on an axis; a negative
    /// seed uses the negative half-axis.
    #[pyo3(signature = (seed, axis="x"))]
    fn find_cycle(&self, py: Python<'_>, seed: f64, axis: &str) -> PyResult<Py<PyAny>> {
        let section = Section {
            axis: self::axis(axis)?,
            positive: seed > 0.0,
        };
        let c = find_cycle(&self.inner, section, seed.abs()).map_err(|e| err(e.into()))?;
        to_py(py, "cycle", report::cycle(&c))
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, "system", report::system(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("System(dx = {}, dy = {})", self.inner.p, self.inner.q)
    }
}

/// The conic family glued along one axis of a system.
#[pyclass(name = "Family", module = "pbconic", frozen)]
struct PyFamily {
    setup: Setup,
    family: ConicFamily,
}

impl PyFamily {
    fn values(&self, a0: &[String]) -> PyResult<Vec<Rational>> {
        a0.iter().map(|a| rational(a)).collect()
    }
}

#[pymethods]
impl PyFamily {
    #[getter]
    fn f(&self) -> String {
        self.family.display_f(self.family.axis.symbol())
    }

    #[getter]
    fn achieved_order(&self) -> usize {
        self.family.achieved_order
    }

    /// The member of the family through the base point at `a0`.
    fn conic(&self, a0: &str) -> PyResult<PyConic> {
        let inner = self.family.specialize(&rational(a0)?).map_err(|e| err(e.into()))?;
        Ok(PyConic { inner })
    }

    /// Exact transversality verdict for the member at `a0`.
    fn certify(&self, py: Python<'_>, a0: &str) -> PyResult<Py<PyAny>> {
        let v = self.setup.certify(&self.family, &rational(a0)?).map_err(err)?;
        to_py(py, "certify", report::verdict(&v))
    }

    /// Maximal certified bands of `a0` values inside `[lo, hi]`.
    #[pyo3(signature = (lo, hi, resolution="1/1000"))]
    fn sweep(&self, py: Python<'_>, lo: &str, hi: &str, resolution: &str) -> PyResult<Py<PyAny>> {
        let (lo, hi, res) = (rational(lo)?, rational(hi)?, rational(resolution)?);
        let (bands, stats, profile) = self.setup.sweep(&self.family, (&lo, &hi), &res).map_err(err)?;
        to_py(py, "sweep", report::sweep(&bands, &stats, &profile, self.family.axis.symbol()))
    }

    /// Certifies one or two members and assembles the region they bound.
    fn region(&self, py: Python<'_>, a0: Vec<String>) -> PyResult<Py<PyAny>> {
        let certs = self.setup.certify_all(&self.family, &self.values(&a0)?).map_err(err)?;
        let rep = self.setup.region(&certs).map_err(err)?;
        to_py(py, "region", report::region(&rep))
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, "family", report::family(&self.family))
    }

    fn __repr__(&self) -> String {
        format!("Family(f = {})", self.f())
    }
}

/// A conic `f(x, y) = 0` with exact coefficients.
#[pyclass(name = "Conic", module = "pbconic", frozen)]
struct PyConic {
    inner: Conic,
}

#[pymethods]
impl PyConic {
    #[getter]
    fn f(&self) -> String {
        self.inner.f().to_string()
    }

    #[getter]
    fn coefficients(&self) -> Vec<String> {
        self.inner.s.iter().map(rational_string).collect()
    }

    #[getter]
    fn base_point(&self) -> (f64, f64) {
        (rational_to_f64(&self.inner.base.0), rational_to_f64(&self.inner.base.1))
    }

    /// `"Ellipse"`, `"Hyperbola"` or `"Parabola"`, or `None` when degenerate.
    #[getter]
    fn kind(&self) -> Option<String> {
        classify(&self.inner).ok().map(|c| format!("{:?}", c.kind))
    }

    fn __call__(&self, x: f64, y: f64) -> f64 {
        self.inner.eval_f64(x, y)
    }

    fn to_dict(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, "conic", report::conic(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("Conic({} = 0)", self.f())
    }
}

#[pymodule]
#[pyo3(name = "pbconic")]
fn pbconic_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystem>()?;
    m.add_class::<PyFamily>()?;
    m.add_class::<PyConic>()?;
    m.add("PbconicError", m.py().get_type::<PbconicError>())?;
    m.add("SCHEMA", report::SCHEMA)?;
    Ok(())
}
