//! Python bindings. Structured results come back as plain dicts and lists
//! built from the same canonical JSON the CLI prints.

use leonard_core::awrel::{aw_params, bipartite_flags, upsilon_report, Which};
use leonard_core::explorer::{run_census, CensusJob, RunOptions};
use leonard_core::leonard::{affine_transform, krawtchouk_family, validate};
use leonard_core::serial::{canonical_json, matrix_to_json, system_from_json, system_to_json};
use leonard_core::xspace::{compute_x, verify_main_theorem};
use leonard_core::{FieldSpec, LeonardError};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::{json, Value};

create_exception!(
    leonard_py,
    AxiomError,
    PyValueError,
    "The input violates a Leonard system axiom."
);

fn leonard_err(e: LeonardError) -> PyErr {
    if e.axiom().is_some() {
        AxiomError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?
        .call_method1("loads", (canonical_json(v),))
}

fn parse_field(s: &str) -> PyResult<FieldSpec> {
    s.parse::<FieldSpec>().map_err(value_err)
}

/// A validated Leonard system.
#[pyclass(name = "LeonardSystem", frozen)]
struct PyLeonardSystem {
    inner: leonard_core::LeonardSystem,
}

#[pymethods]
impl PyLeonardSystem {
    /// Krawtchouk system of diameter `d` over `field` ("Q" or "GF(p)").
    #[staticmethod]
    #[pyo3(signature = (d, field = "Q"))]
    fn krawtchouk(d: usize, field: &str) -> PyResult<Self> {
        let c = krawtchouk_family(d, parse_field(field)?).map_err(leonard_err)?;
        Ok(PyLeonardSystem {
            inner: validate(&c).map_err(leonard_err)?,
        })
    }

    /// Parses and validates a candidate or system JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: Value = serde_json::from_str(text).map_err(value_err)?;
        Ok(PyLeonardSystem {
            inner: system_from_json(&v).map_err(leonard_err)?,
        })
    }

    /// Canonical JSON of the system, idempotents included.
    fn to_json(&self) -> String {
        canonical_json(&system_to_json(&self.inner))
    }

    /// `(uA + vI, u*A* + v*I)`; scalars may be ints or strings like "1/2".
    fn affine(
        &self,
        u: &Bound<'_, PyAny>,
        v: &Bound<'_, PyAny>,
        us: &Bound<'_, PyAny>,
        vs: &Bound<'_, PyAny>,
    ) -> PyResult<Self> {
        let f = self.inner.field();
        let s = |x: &Bound<'_, PyAny>| -> PyResult<_> {
            f.parse_scalar(&x.str()?.to_string()).map_err(value_err)
        };
        let c = affine_transform(self.inner.candidate(), &s(u)?, &s(v)?, &s(us)?, &s(vs)?)
            .map_err(leonard_err)?;
        Ok(PyLeonardSystem {
            inner: validate(&c).map_err(leonard_err)?,
        })
    }

    #[getter]
    fn d(&self) -> usize {
        self.inner.d()
    }

    #[getter]
    fn field(&self) -> String {
        self.inner.field().to_string()
    }

    /// Dimension of X.
    fn xspace_dim(&self) -> usize {
        compute_x(&self.inner).dim()
    }

    /// `{"dim", "basis", "spans", "independent"}`.
    fn xspace<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let xb = compute_x(&self.inner);
        let rep = verify_main_theorem(&xb);
        let doc = json!({
            "dim": xb.dim(),
            "basis": xb.basis().iter().map(matrix_to_json).collect::<Vec<_>>(),
            "spans": rep.spans,
            "independent": rep.independent,
        });
        to_py(py, &doc)
    }

    /// `(spans, independent)`.
    fn verify_main_theorem(&self) -> (bool, bool) {
        let rep = verify_main_theorem(&compute_x(&self.inner));
        (rep.spans, rep.independent)
    }

    fn aw_params<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let p = aw_params(&self.inner).map_err(value_err)?;
        to_py(py, &p.to_json())
    }

    #[pyo3(signature = (star = false))]
    fn upsilon_report<'py>(&self, py: Python<'py>, star: bool) -> PyResult<Bound<'py, PyAny>> {
        let p = aw_params(&self.inner).map_err(value_err)?;
        let which = if star {
            Which::UpsilonStar
        } else {
            Which::Upsilon
        };
        let rep = upsilon_report(&self.inner, &p, which).map_err(value_err)?;
        to_py(py, &rep.to_json())
    }

    /// `(bipartite, dual_bipartite)`.
    fn bipartite_flags(&self) -> (bool, bool) {
        let f = bipartite_flags(&self.inner);
        (f.bipartite, f.dual_bipartite)
    }

    fn __repr__(&self) -> String {
        format!(
            "LeonardSystem(d={}, field={})",
            self.inner.d(),
            self.inner.field()
        )
    }
}

/// Runs a census job given as JSON; returns `{"complete", "scanned",
/// "skipped", "summary", "records"}`.
#[pyfunction]
#[pyo3(signature = (job, workers = 1))]
fn census<'py>(py: Python<'py>, job: &str, workers: usize) -> PyResult<Bound<'py, PyAny>> {
    let job = CensusJob::from_json(job).map_err(value_err)?;
    let opts = RunOptions {
        workers: workers.max(1),
        ..Default::default()
    };
    let out = py
        .detach(|| run_census(&job, &opts))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let doc = json!({
        "complete": out.complete,
        "scanned": out.scanned,
        "skipped": out.skipped,
        "summary": serde_json::to_value(&out.summary).map_err(value_err)?,
        "records": serde_json::to_value(&out.records).map_err(value_err)?,
    });
    to_py(py, &doc)
}

#[pymodule]
fn leonard_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLeonardSystem>()?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add("AxiomError", m.py().get_type::<AxiomError>())?;
    Ok(())
}
