//! Python bindings: `bass.Adf` and `bass.Solver`.
//!
//! Interpretations are returned as `dict[str, str]` mapping argument names to `"1"`, `"0"` or
//! `"*"`, the same symbols the command-line tool prints.

use bass_core::encoding::Interpretation;
use bass_core::formula::{self, DEFAULT_NODE_BUDGET};
use bass_core::semantics::{Semantics, SymbolicAdf};
use bass_core::solutions::{self, SampleSeed};
use num_bigint::BigUint;
use pyo3::exceptions::{PyOSError, PyValueError};
use pyo3::prelude::*;
use std::collections::BTreeMap;

fn value_error(error: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(error.to_string())
}

fn parse_semantics(name: &str) -> PyResult<Semantics> {
    name.parse().map_err(value_error)
}

fn named(arguments: &[String], interpretation: &Interpretation) -> BTreeMap<String, String> {
    arguments
        .iter()
        .zip(interpretation.values())
        .map(|(name, value)| (name.clone(), value.to_string()))
        .collect()
}

/// An abstract dialectical framework: named arguments with acceptance conditions.
#[pyclass(name = "Adf", module = "bass", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyAdf {
    inner: formula::Adf,
}

#[pymethods]
impl PyAdf {
    /// Parses ADF text, or bnet text with `format="bnet"`.
    #[staticmethod]
    #[pyo3(signature = (text, format = "adf"))]
    fn parse(text: &str, format: &str) -> PyResult<Self> {
        let inner = match format {
            "adf" => formula::parse_adf(text),
            "bnet" => formula::parse_bnet(text),
            other => return Err(value_error(format!("unknown format `{other}`"))),
        }
        .map_err(value_error)?;
        Ok(PyAdf { inner })
    }

    /// Reads a file, choosing the format from its extension (`.bnet` or ADF otherwise).
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyOSError::new_err(format!("{path}: {e}")))?;
        let format = if path.to_ascii_lowercase().ends_with(".bnet") { "bnet" } else { "adf" };
        Self::parse(&text, format)
    }

    #[getter]
    fn arguments(&self) -> Vec<String> {
        self.inner.arguments().to_vec()
    }

    /// Arguments whose condition is the argument itself.
    #[getter]
    fn free_inputs(&self) -> Vec<String> {
        self.inner
            .free_inputs()
            .into_iter()
            .map(|i| self.inner.arguments()[i].clone())
            .collect()
    }

    fn condition(&self, argument: &str) -> PyResult<String> {
        let i = self
            .inner
            .index_of(argument)
            .ok_or_else(|| value_error(format!("unknown argument `{argument}`")))?;
        Ok(self.inner.condition(i).to_string())
    }

    fn to_adf(&self) -> String {
        formula::write_adf(&self.inner)
    }

    #[pyo3(signature = (budget = DEFAULT_NODE_BUDGET))]
    fn to_bnet(&self, budget: usize) -> PyResult<String> {
        formula::write_bnet(&self.inner, budget).map_err(value_error)
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Adf({} arguments)", self.inner.len())
    }
}

/// Symbolic solver over one framework. Semantics are named `adm`, `com`, `grd`, `prf`, `2v`
/// and `stb`.
#[pyclass(name = "Solver", module = "bass")]
pub struct PySolver {
    inner: SymbolicAdf,
}

#[pymethods]
impl PySolver {
    #[new]
    fn new(adf: &PyAdf) -> PyResult<Self> {
        let inner = SymbolicAdf::new(adf.inner.clone()).map_err(value_error)?;
        Ok(PySolver { inner })
    }

    #[pyo3(signature = (semantics, restrict_inputs = true))]
    fn count(&mut self, semantics: &str, restrict_inputs: bool) -> PyResult<BigUint> {
        let set = self.inner.solve(parse_semantics(semantics)?, restrict_inputs).set;
        Ok(solutions::count(&self.inner, &set))
    }

    #[pyo3(signature = (semantics, limit = None, restrict_inputs = true))]
    fn enumerate(
        &mut self,
        semantics: &str,
        limit: Option<usize>,
        restrict_inputs: bool,
    ) -> PyResult<Vec<BTreeMap<String, String>>> {
        let set = self.inner.solve(parse_semantics(semantics)?, restrict_inputs).set;
        let names = self.inner.adf().arguments();
        Ok(solutions::enumerate(&self.inner, &set, limit)
            .map(|i| named(names, &i))
            .collect())
    }

    /// `n` independent uniform draws, reproducible for a given seed.
    #[pyo3(signature = (semantics, n, seed = 0, restrict_inputs = true))]
    fn sample(
        &mut self,
        semantics: &str,
        n: usize,
        seed: u64,
        restrict_inputs: bool,
    ) -> PyResult<Vec<BTreeMap<String, String>>> {
        let set = self.inner.solve(parse_semantics(semantics)?, restrict_inputs).set;
        let draws = solutions::sample_uniform(&self.inner, &set, n, SampleSeed(seed)).map_err(value_error)?;
        let names = self.inner.adf().arguments();
        Ok(draws.iter().map(|i| named(names, i)).collect())
    }

    fn grounded(&self) -> BTreeMap<String, String> {
        named(self.inner.adf().arguments(), &self.inner.grounded())
    }
}

#[pymodule]
fn bass(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAdf>()?;
    m.add_class::<PySolver>()?;
    let names: Vec<&str> = Semantics::ALL.iter().map(|s| s.short_name()).collect();
    m.add("SEMANTICS", names)?;
    Ok(())
}
