//! Python bindings for the orecalc engine.
//!
//! The module exposes one class, `Algebra`, wrapping a loaded presentation (builtin
//! or JSON definition file) with the same evaluation surface as the command line:
//! canonical forms, equality checks, graded dimensions, and the report suites.
//! Strings in and strings out — canonical text is the interchange format, so Python
//! sees exactly what the CLI prints.

use std::collections::BTreeMap;
use std::path::Path;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use orecalc::builtin::{builtin, builtin_summaries, BUILTIN_NAMES};
use orecalc::deffile::{load_algebra_file, AlgebraEntry, PresentationKind};
use orecalc::error::Error;
use orecalc::lie::Metric;

/// Definition-side problems (bad input text, bad files, unknown names) become
/// `ValueError`; engine-side problems (caps, ring clashes) become `RuntimeError`.
fn to_py_err(err: Error) -> PyErr {
    match err {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidDefinition(_)
        | Error::UnknownGenerator { .. }
        | Error::UnknownEndomorphism { .. }
        | Error::NoStarStructure { .. }
        | Error::NeedsComplexRing { .. } => PyValueError::new_err(err.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

/// A loaded algebra: presentation, aliases, endomorphisms, and star structure.
#[pyclass(module = "orecalc", frozen)]
struct Algebra {
    entry: AlgebraEntry,
}

#[pymethods]
impl Algebra {
    /// Loads a builtin by name; `metric` is `"mostly-minus"` or `"mostly-plus"`.
    #[new]
    #[pyo3(signature = (name, metric = "mostly-minus"))]
    fn new(name: &str, metric: &str) -> PyResult<Self> {
        let metric = Metric::from_name(metric)
            .ok_or_else(|| PyValueError::new_err(format!("unknown metric `{metric}`")))?;
        builtin(name, metric).map(|entry| Algebra { entry }).map_err(to_py_err)
    }

    /// Loads a JSON definition file.
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        load_algebra_file(Path::new(path)).map(|entry| Algebra { entry }).map_err(to_py_err)
    }

    #[getter]
    fn name(&self) -> String {
        self.entry.name.clone()
    }

    #[getter]
    fn kind(&self) -> String {
        self.entry.kind.kind_name().to_string()
    }

    #[getter]
    fn ring(&self) -> String {
        self.entry.kind.algebra().ring().to_string()
    }

    #[getter]
    fn metric(&self) -> Option<String> {
        self.entry.metric.map(|m| m.name().to_string())
    }

    #[getter]
    fn has_star(&self) -> bool {
        self.entry.star.is_some()
    }

    /// Generator names in straightening order (smaller names move left).
    fn generators(&self) -> Vec<String> {
        self.entry.kind.algebra().generator_names().to_vec()
    }

    /// Names usable in expressions beyond the generators.
    fn aliases(&self) -> Vec<String> {
        self.entry.aliases.keys().cloned().collect()
    }

    /// Maps applicable in expressions: validated endomorphisms plus declared twists.
    fn endomorphisms(&self) -> Vec<String> {
        self.entry.eval_endos().keys().cloned().collect()
    }

    /// The defining relations as `(label, element)` strings; empty for free algebras.
    fn relations(&self) -> Vec<(String, String)> {
        self.entry
            .kind
            .relations()
            .iter()
            .map(|(label, element)| (label.clone(), element.to_string()))
            .collect()
    }

    /// Validation verdict for every declared endomorphism: name -> (passed, report).
    fn endomorphism_reports(&self) -> BTreeMap<String, (bool, String)> {
        self.entry
            .endo_reports
            .iter()
            .map(|(name, report)| (name.clone(), (report.passed(), report.to_string())))
            .collect()
    }

    /// Canonical form of an expression, rendered exactly as the CLI prints it.
    fn normalize(&self, expr: &str) -> PyResult<String> {
        self.entry.eval(expr).map(|e| e.to_string()).map_err(to_py_err)
    }

    /// True when both sides straighten to the same canonical form.
    fn check(&self, lhs: &str, rhs: &str) -> PyResult<bool> {
        let left = self.entry.eval(lhs).map_err(to_py_err)?;
        let right = self.entry.eval(rhs).map_err(to_py_err)?;
        Ok(left == right)
    }

    /// Number of canonical monomials of exact degree `degree`.
    fn grade(&self, degree: usize) -> PyResult<u128> {
        self.entry.kind.graded_dimension(degree).map_err(to_py_err)
    }

    /// Jacobi-identity report for bracket presentations: (passed, rendered report).
    fn jacobi_check(&self) -> PyResult<(bool, String)> {
        let PresentationKind::Lie(pres) = &self.entry.kind else {
            return Err(PyValueError::new_err(format!(
                "`{}` is not a bracket presentation",
                self.entry.name
            )));
        };
        let report = pres.jacobi_check().map_err(to_py_err)?;
        Ok((report.passed(), report.to_string()))
    }

    /// Exchange-algebra suite: residuals, adjoint compatibility, and (in the
    /// four-pair case) the invariance and closure reports. Returns
    /// (all_passed, rendered reports).
    fn check_skew_ccr(&self) -> PyResult<(bool, String)> {
        let PresentationKind::SkewCcr(ctx) = &self.entry.kind else {
            return Err(PyValueError::new_err(format!(
                "`{}` is not an exchange algebra",
                self.entry.name
            )));
        };
        let mut reports = vec![ctx.ccr_check(), ctx.hermiticity_check()];
        if ctx.pairs() == 4 {
            reports.push(ctx.bilinear_invariance_check());
            reports.push(ctx.lorentz_realization_check());
            reports.push(ctx.skewed_closure_counterexample());
        }
        let mut passed = true;
        let mut text = String::new();
        for report in reports {
            let report = report.map_err(to_py_err)?;
            passed &= report.passed();
            text.push_str(&report.to_string());
            text.push('\n');
        }
        Ok((passed, text))
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(name={:?}, kind={:?}, generators={})",
            self.entry.name,
            self.entry.kind.kind_name(),
            self.entry.kind.algebra().generator_count()
        )
    }
}

/// Names of the built-in algebras, in menu order.
#[pyfunction]
fn builtin_names() -> Vec<String> {
    BUILTIN_NAMES.iter().map(|n| n.to_string()).collect()
}

/// `(name, one-line summary)` pairs for the built-in algebras.
#[pyfunction]
fn builtin_menu() -> Vec<(String, String)> {
    builtin_summaries().into_iter().map(|(n, s)| (n.to_string(), s.to_string())).collect()
}

#[pymodule(name = "orecalc")]
fn orecalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(builtin_names, m)?)?;
    m.add_function(wrap_pyfunction!(builtin_menu, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
