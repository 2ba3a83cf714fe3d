//! Python module `morse_smale`. Structured results cross the boundary as
//! JSON and are decoded with the standard `json` module, so they arrive as
//! plain dicts and lists.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

use morse_smale::generate::{seeded_diagram, AnnotationMode, GeneratorConfig};
use morse_smale::ordering::behaviour;
use morse_smale::{
    build_certificate, build_filtration, canonical_numbering, classify, compute_order, count_numberings, decide,
    emit_document, examples, induced_inverse_numbering, parse_document, validate, OrbitId, Report, Sections,
};

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn value_error(e: impl ToString) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A diagram of periodic orbits and their intersections.
#[pyclass(name = "Diagram", module = "morse_smale", frozen)]
struct PyDiagram {
    inner: morse_smale::Diagram,
}

impl PyDiagram {
    fn order(&self) -> PyResult<morse_smale::OrderRelation> {
        compute_order(&self.inner).map_err(value_error)
    }

    fn filtration_parts(&self) -> PyResult<(morse_smale::Numbering, morse_smale::Filtration)> {
        let numbering = canonical_numbering(&self.inner, &self.order()?);
        let filtration = build_filtration(&self.inner, &numbering).map_err(value_error)?;
        Ok((numbering, filtration))
    }
}

#[pymethods]
impl PyDiagram {
    #[getter]
    fn name(&self) -> &str {
        &self.inner.name
    }

    /// Orbit ids in document order.
    #[getter]
    fn orbits(&self) -> Vec<String> {
        self.inner.orbits.iter().map(|o| o.id.to_string()).collect()
    }

    /// Violations as dicts; empty when the diagram is valid.
    fn validate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &validate(&self.inner))
    }

    fn is_valid(&self) -> bool {
        validate(&self.inner).is_empty()
    }

    fn inverse(&self) -> PyDiagram {
        PyDiagram {
            inner: self.inner.inverse(),
        }
    }

    /// Orbit ids sorted by Morse index, behaviour and id.
    fn canonical_numbering(&self) -> PyResult<Vec<String>> {
        let numbering = canonical_numbering(&self.inner, &self.order()?);
        Ok(numbering.iter().map(|id| id.to_string()).collect())
    }

    fn induced_inverse_numbering(&self) -> PyResult<Vec<String>> {
        let numbering = induced_inverse_numbering(&canonical_numbering(&self.inner, &self.order()?));
        Ok(numbering.iter().map(|id| id.to_string()).collect())
    }

    /// Longest chain from `lower` up to `upper`, 0 when unrelated.
    fn behaviour(&self, upper: &str, lower: &str) -> PyResult<u32> {
        behaviour(&self.order()?, &OrbitId::new(upper), &OrbitId::new(lower))
            .map_err(|e| PyKeyError::new_err(e.to_string()))
    }

    /// Pairs `(lower, upper)` of the transitive order.
    fn order_pairs(&self) -> PyResult<Vec<(String, String)>> {
        Ok(self
            .order()?
            .strict_pairs()
            .into_iter()
            .map(|(l, u)| (l.to_string(), u.to_string()))
            .collect())
    }

    fn count_numberings(&self) -> PyResult<num_bigint::BigUint> {
        Ok(count_numberings(&self.inner, &self.order()?))
    }

    fn filtration(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.filtration_parts()?.1)
    }

    /// `{"class": ..., "m": ...}`; raises ValueError when no class applies.
    fn classify(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &classify(&self.inner).map_err(value_error)?)
    }

    fn decide(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let (_, filtration) = self.filtration_parts()?;
        to_py(py, &decide(&self.inner, &filtration, None).map_err(value_error)?)
    }

    /// Raises ValueError unless the verdict is `Exists`.
    fn certificate(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let (numbering, filtration) = self.filtration_parts()?;
        to_py(
            py,
            &build_certificate(&self.inner, &numbering, &filtration).map_err(value_error)?,
        )
    }

    fn to_json(&self) -> String {
        emit_document(&self.inner)
    }

    /// Full report as `"text"`, `"json"` or `"dot"`.
    #[pyo3(signature = (format = "json"))]
    fn report(&self, format: &str) -> PyResult<String> {
        let report = Report::build(&self.inner, Sections::ALL);
        match format {
            "text" => Ok(report.to_text()),
            "json" => Ok(report.to_json()),
            "dot" => Ok(report.to_dot(&self.inner)),
            other => Err(PyValueError::new_err(format!("unknown format `{other}`"))),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(name={:?}, orbits={})",
            self.inner.name,
            self.inner.orbits.len()
        )
    }
}

/// Parses a JSON document.
#[pyfunction]
fn parse(text: &str) -> PyResult<PyDiagram> {
    parse_document(text.as_bytes())
        .map(|inner| PyDiagram { inner })
        .map_err(value_error)
}

/// A built-in diagram by name, e.g. `"pixton"` or `"chain-3"`.
#[pyfunction]
fn example(name: &str) -> PyResult<PyDiagram> {
    examples::by_name(name)
        .map(|inner| PyDiagram { inner })
        .ok_or_else(|| PyKeyError::new_err(format!("unknown example `{name}`")))
}

#[pyfunction]
fn example_names() -> Vec<&'static str> {
    examples::BUILTIN_NAMES.to_vec()
}

/// Deterministic random valid diagram. `annotations` is `"random"`,
/// `"tight"` or `"strong"`.
#[pyfunction]
#[pyo3(signature = (seed, max_tree_steps = 4, max_genus = 2, heteroclinic_curves = true, annotations = "random"))]
fn random_diagram(
    seed: u64,
    max_tree_steps: usize,
    max_genus: u32,
    heteroclinic_curves: bool,
    annotations: &str,
) -> PyResult<PyDiagram> {
    let annotations = match annotations {
        "random" => AnnotationMode::Random,
        "tight" => AnnotationMode::AllTight,
        "strong" => AnnotationMode::AllStrong,
        other => return Err(PyValueError::new_err(format!("unknown annotation mode `{other}`"))),
    };
    let config = GeneratorConfig {
        max_tree_steps,
        max_genus,
        heteroclinic_curves,
        annotations,
        ..GeneratorConfig::default()
    };
    Ok(PyDiagram {
        inner: seeded_diagram(seed, &config),
    })
}

#[pymodule]
#[pyo3(name = "morse_smale")]
fn init_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(example, m)?)?;
    m.add_function(wrap_pyfunction!(example_names, m)?)?;
    m.add_function(wrap_pyfunction!(random_diagram, m)?)?;
    Ok(())
}
