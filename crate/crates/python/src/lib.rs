//! Python bindings: trees, pattern counting, series, the Schröder
//! bijection and the verification harness.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use gnc::count::Method;
use gnc::patterns::{avoids, census_sharded, PatternSet};
use gnc::schroder::{decode_path, encode_tree, SchroderPath};
use gnc::series::{render_text, Family, Solutions};
use gnc::trees::enumerate_gnc;
use gnc::verify::{Suite, VerifyOptions};
use gnc::Limits;

create_exception!(gnctrees, GncError, PyValueError);

fn err(e: gnc::Error) -> PyErr {
    GncError::new_err(e.to_string())
}

fn patterns(avoid: &str) -> PyResult<PatternSet> {
    avoid.parse().map_err(err)
}

/// A generalized non-crossing tree.
#[pyclass(name = "GncTree", frozen, eq, hash, skip_from_py_object, module = "gnctrees")]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGncTree(gnc::GncTree);

#[pymethods]
impl PyGncTree {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        gnc::GncTree::from_json_str(text).map(PyGncTree).map_err(err)
    }

    /// Builds a tree from its edges on points `0..=n` and its jump gaps.
    #[new]
    #[pyo3(signature = (n, edges, jumps = Vec::new()))]
    fn new(n: usize, edges: Vec<(usize, usize)>, jumps: Vec<usize>) -> PyResult<Self> {
        let base = gnc::NcTree::new(n + 1, &edges).map_err(err)?;
        gnc::trees::make_gnc(base, &jumps).map(PyGncTree).map_err(err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("tree json")
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.0.base().edges().to_vec()
    }

    #[getter]
    fn jumps(&self) -> Vec<usize> {
        self.0.jumps().gaps()
    }

    #[getter]
    fn labels(&self) -> Vec<u32> {
        self.0.labels()
    }

    /// `(ascents, levels, descents)`.
    fn stats(&self) -> (usize, usize, usize) {
        let s = self.0.stats();
        (s.u, s.h, s.d)
    }

    /// Edge classes on the path from the root to `v`, as a word over u, h, d.
    fn path_word(&self, v: usize) -> PyResult<String> {
        if v > self.0.n() {
            return Err(GncError::new_err(format!("point {v} out of range 0..={}", self.0.n())));
        }
        Ok(self.0.path_word(v).to_string())
    }

    fn avoids(&self, avoid: &str) -> PyResult<bool> {
        Ok(avoids(&self.0, &patterns(avoid)?))
    }

    /// Little Schröder path of an increasing tree.
    fn encode(&self) -> PyResult<String> {
        encode_tree(&self.0).map(|p| p.to_string()).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("GncTree({})", self.to_json())
    }
}

/// Outcome of a verification run.
#[pyclass(name = "VerificationReport", frozen, module = "gnctrees")]
struct PyReport(gnc::verify::VerificationReport);

#[pymethods]
impl PyReport {
    #[getter]
    fn suite(&self) -> String {
        self.0.suite.to_string()
    }

    #[getter]
    fn passed(&self) -> bool {
        self.0.pass
    }

    #[getter]
    fn total(&self) -> usize {
        self.0.summary.total
    }

    #[getter]
    fn failed(&self) -> usize {
        self.0.summary.failed
    }

    /// `(id, params, expected, observed)` for each failing check.
    fn failures(&self) -> Vec<(String, String, String, String)> {
        self.0
            .failures()
            .map(|r| (r.id.clone(), r.params.clone(), r.expected.clone(), r.observed.clone()))
            .collect()
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    fn __repr__(&self) -> String {
        format!(
            "VerificationReport(suite={:?}, total={}, failed={})",
            self.suite(),
            self.total(),
            self.failed()
        )
    }
}

/// Number of trees with `n` edges avoiding `avoid` (comma-separated words).
#[pyfunction]
#[pyo3(signature = (n, avoid = "", method = "brute", jobs = 1))]
fn count(py: Python<'_>, n: usize, avoid: &str, method: &str, jobs: usize) -> PyResult<BigInt> {
    let set = patterns(avoid)?;
    let method: Method = method.parse().map_err(err)?;
    py.detach(|| gnc::count::count(n, &set, method, &Limits::default(), jobs.max(1)))
        .map_err(err)
}

/// Joint distribution `{(u, h, d): count}` of the avoiders.
#[pyfunction]
#[pyo3(signature = (n, avoid = "", star = false, jobs = 1))]
fn census(
    py: Python<'_>,
    n: usize,
    avoid: &str,
    star: bool,
    jobs: usize,
) -> PyResult<BTreeMap<(usize, usize, usize), BigInt>> {
    let set = patterns(avoid)?;
    let c = py
        .detach(|| census_sharded(n, &set, star, &Limits::default(), jobs.max(1)))
        .map_err(err)?;
    Ok(c.rows().into_iter().map(|(s, v)| ((s.u, s.h, s.d), v)).collect())
}

/// Every tree with `n` edges avoiding `avoid`, in canonical order.
#[pyfunction]
#[pyo3(signature = (n, avoid = ""))]
fn trees(n: usize, avoid: &str) -> PyResult<Vec<PyGncTree>> {
    let set = patterns(avoid)?;
    let all = enumerate_gnc(n, &Limits::default()).map_err(err)?;
    Ok(all.iter().filter(|t| avoids(t, &set)).map(PyGncTree).collect())
}

/// Members of a series family. With `at = (x, y, z)` each member is a list
/// of integer coefficients, otherwise its canonical text rendering.
#[pyfunction]
#[pyo3(signature = (family, order = 12, at = None))]
fn series(
    py: Python<'_>,
    family: &str,
    order: usize,
    at: Option<(i64, i64, i64)>,
) -> PyResult<BTreeMap<&'static str, Py<PyAny>>> {
    let family: Family = family.parse().map_err(err)?;
    let s = py.detach(|| Solutions::new(order));
    let members = match family {
        Family::Master => vec![("master", &s.master.main)],
        Family::Star => vec![("star", &s.star)],
        Family::Ternary => vec![("ternary", &s.ternary)],
        Family::UuDd => vec![("uu", s.uu()), ("dd", s.dd())],
        Family::UdDu => vec![("ud", s.ud()), ("du", s.du())],
        Family::Uudd => vec![("uudd", &s.uudd.main)],
    };
    members
        .into_iter()
        .map(|(name, series)| {
            let value = match at {
                Some((x, y, z)) => series.eval_int(x, y, z).into_pyobject(py)?.into_any().unbind(),
                None => render_text(series).into_pyobject(py)?.into_any().unbind(),
            };
            Ok((name, value))
        })
        .collect()
}

/// Tree for a path written over U, D, F.
#[pyfunction]
fn decode(path: &str) -> PyResult<PyGncTree> {
    let path: SchroderPath = path.parse().map_err(err)?;
    decode_path(&path).map(PyGncTree).map_err(err)
}

/// Values `a(0), ..., a(max_n)` of a named sequence.
#[pyfunction]
fn sequence(name: &str, max_n: u64) -> PyResult<Vec<BigInt>> {
    Ok(gnc::sequences::lookup(name).map_err(err)?.prefix(max_n))
}

/// Names accepted by [`sequence`].
#[pyfunction]
fn sequence_names() -> Vec<&'static str> {
    gnc::sequences::REGISTRY.iter().map(|s| s.name).collect()
}

#[pyfunction]
#[pyo3(signature = (suite = "all", max_n = 7, order = 12, jobs = 1))]
fn verify(py: Python<'_>, suite: &str, max_n: usize, order: usize, jobs: usize) -> PyResult<PyReport> {
    let suite: Suite = suite.parse().map_err(err)?;
    let opts = VerifyOptions {
        max_n,
        order,
        jobs: jobs.max(1),
        ..VerifyOptions::default()
    };
    py.detach(|| gnc::verify::run(suite, &opts)).map(PyReport).map_err(err)
}

#[pymodule]
pub fn gnctrees(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("GncError", m.py().get_type::<GncError>())?;
    m.add_class::<PyGncTree>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(census, m)?)?;
    m.add_function(wrap_pyfunction!(trees, m)?)?;
    m.add_function(wrap_pyfunction!(series, m)?)?;
    m.add_function(wrap_pyfunction!(decode, m)?)?;
    m.add_function(wrap_pyfunction!(sequence, m)?)?;
    m.add_function(wrap_pyfunction!(sequence_names, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
