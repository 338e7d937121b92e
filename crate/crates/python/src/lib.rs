//! Python bindings. Reports cross the boundary as JSON text with the same
//! schema as the command-line tool.

use std::collections::HashMap;
use std::fs::File;
use std::io::BufWriter;

use minsurf::algebra::{ExactComplex, Polynomial, Precision, RationalMap, SpherePoint};
use minsurf::audit::audit;
use minsurf::catalog::{instantiate, list_families, ParamValue, Params, Surface};
use minsurf::mesh::{immerse_surface, write_obj, write_ply, MeshOptions, MeshSpec};
use minsurf::ramification::{ramification_profile, PuncturedSphere};
use minsurf::report;
use minsurf::weierstrass::{VerificationReport, VerifyOptions};
use minsurf::{wdata, Error};
use pyo3::exceptions::{PyIOError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

fn py_err(e: Error) -> PyErr {
    match e {
        Error::Schema { .. }
        | Error::Parse(_)
        | Error::ConstraintViolated(_)
        | Error::UnknownFamily(_)
        | Error::DuplicatePuncture(_)
        | Error::InvalidTopology(_)
        | Error::ZeroDenominator
        | Error::ZeroMap
        | Error::ConstantMap => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn param_value(v: &Bound<'_, PyAny>) -> PyResult<ParamValue> {
    if let Ok(s) = v.extract::<String>() {
        let z: ExactComplex = s.parse().map_err(py_err)?;
        return Ok(ParamValue::exact(z));
    }
    if let Ok(n) = v.extract::<i64>() {
        return Ok(ParamValue::exact(ExactComplex::from_int(n)));
    }
    let x: f64 = v.extract()?;
    ParamValue::from_f64(x).map_err(py_err)
}

fn exact_list(v: &[String]) -> PyResult<Vec<ExactComplex>> {
    v.iter().map(|s| s.parse().map_err(py_err)).collect()
}

fn options(precision: u32, tol: f64) -> VerifyOptions {
    VerifyOptions { prec: Precision::digits(precision), tol, ..VerifyOptions::default() }
}

/// Weierstrass data of a genus-zero minimal surface in R³ or R⁴.
#[pyclass(name = "Surface", module = "minsurf", frozen)]
struct PySurface {
    inner: Surface,
}

impl PySurface {
    fn verification(&self, opts: &VerifyOptions) -> PyResult<VerificationReport> {
        match &self.inner {
            Surface::R3(w) => minsurf::r3::verify(w, opts),
            Surface::R4(w) => minsurf::r4::verify4(w, opts),
        }
        .map_err(py_err)
    }
}

#[pymethods]
impl PySurface {
    /// Built-in family; parameter values are exact strings ("1/2", "3i"),
    /// integers or floats.
    #[staticmethod]
    #[pyo3(signature = (name, params=None))]
    fn family(name: &str, params: Option<HashMap<String, Bound<'_, PyAny>>>) -> PyResult<Self> {
        let mut p = Params::new();
        for (k, v) in params.unwrap_or_default() {
            p.insert(k, param_value(&v)?);
        }
        Ok(Self { inner: instantiate(name, &p).map_err(py_err)? })
    }

    /// W-data JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Self { inner: wdata::from_json_str(text).map_err(py_err)? })
    }

    /// Explicit W-data JSON; `Surface.from_json` restores an equal value.
    fn to_json(&self) -> String {
        wdata::to_json_string(&self.inner)
    }

    #[getter]
    fn space(&self) -> &'static str {
        report::space_name(self.inner.space())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    #[pyo3(signature = (precision=64, tol=1e-10))]
    fn verify(&self, precision: u32, tol: f64) -> PyResult<String> {
        let r = self.verification(&options(precision, tol))?;
        Ok(report::to_string(&report::verification_json(self.inner.space(), &r)))
    }

    #[pyo3(signature = (precision=64))]
    fn analyze(&self, precision: u32) -> PyResult<String> {
        Ok(report::to_string(&report::analysis_json(&self.inner, Precision::digits(precision)).map_err(py_err)?))
    }

    #[pyo3(signature = (precision=64, tol=1e-10))]
    fn audit(&self, precision: u32, tol: f64) -> PyResult<String> {
        Ok(report::to_string(&report::audit_json(&audit(&self.inner, &options(precision, tol)).map_err(py_err)?)))
    }

    #[pyo3(signature = (outer_radius=100.0, exclude_radius=0.01, grid=report::DEFAULT_QUADRATURE_GRID, precision=64))]
    fn curvature(&self, outer_radius: f64, exclude_radius: f64, grid: (usize, usize), precision: u32) -> PyResult<String> {
        let verified = self.verification(&options(precision, 1e-10))?.overall;
        let v = report::curvature_report(&self.inner, Precision::digits(precision), outer_radius, exclude_radius, grid, verified)
            .map_err(py_err)?;
        Ok(report::to_string(&v))
    }

    /// Immersion on the default grid region. Returns the mesh summary JSON
    /// (positions, faces, closure error); writes OBJ or PLY when `path` is given.
    #[pyo3(signature = (grid=(64, 64), exclude_radius=0.01, outer_radius=100.0, path=None, format="obj"))]
    fn mesh(
        &self,
        grid: (usize, usize),
        exclude_radius: f64,
        outer_radius: f64,
        path: Option<&str>,
        format: &str,
    ) -> PyResult<String> {
        let spec = MeshSpec::default_for(self.inner.domain(), grid, exclude_radius, outer_radius);
        let mut opts = MeshOptions::new(spec);
        opts.exclude_radius = exclude_radius;
        opts.curvature = true;
        let mesh = immerse_surface(&self.inner, &opts, &VerifyOptions::default()).map_err(py_err)?;
        if let Some(p) = path {
            let out = BufWriter::new(File::create(p).map_err(|e| PyIOError::new_err(e.to_string()))?);
            match format {
                "obj" => write_obj(&mesh, out),
                "ply" => write_ply(&mesh, out),
                other => return Err(PyValueError::new_err(format!("unknown mesh format {other:?}"))),
            }
            .map_err(|e| PyIOError::new_err(e.to_string()))?;
        }
        Ok(report::to_string(&report::mesh_summary_json(&mesh)))
    }

    fn __repr__(&self) -> String {
        format!("Surface(space={})", self.space())
    }
}

/// Families with parameters, defaults and constraints, as JSON.
#[pyfunction]
fn families() -> String {
    report::to_string(&report::families_json(&list_families()))
}

/// Ramification profile of `num/den` on the sphere minus `punctures`.
/// Coefficients ascend by power as exact strings; punctures are exact
/// strings or "inf".
#[pyfunction]
#[pyo3(signature = (num, den, punctures, precision=64))]
fn ramification(num: Vec<String>, den: Vec<String>, punctures: Vec<String>, precision: u32) -> PyResult<String> {
    let f = RationalMap::new(Polynomial::new(exact_list(&num)?), Polynomial::new(exact_list(&den)?)).map_err(py_err)?;
    let pts = punctures
        .iter()
        .map(|s| if s == "inf" { Ok(SpherePoint::Infinity) } else { s.parse().map(SpherePoint::exact).map_err(py_err) })
        .collect::<PyResult<Vec<_>>>()?;
    let sigma = PuncturedSphere::new(pts).map_err(py_err)?;
    let p = ramification_profile(&f, &sigma, Precision::digits(precision)).map_err(py_err)?;
    Ok(report::to_string(&report::profile_json(&p)))
}

#[pymodule(name = "minsurf")]
fn minsurf_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySurface>()?;
    m.add_function(wrap_pyfunction!(families, m)?)?;
    m.add_function(wrap_pyfunction!(ramification, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
