//! Python bindings. Polynomials cross the boundary as expression strings in
//! the CLI syntax, reports and tables as plain dicts.

use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use qmat_core::action::{self, HiddenAction as CoreAction};
use qmat_core::cli::{self, parse_poly, Ambient};
use qmat_core::freealg::NCPoly;
use qmat_core::pairing::{self, Minor};
use qmat_core::qmatcalc::{build_calculus, OmegaPresentation, RHat};
use qmat_core::report::Report;
use qmat_core::scalars::{parse_rational, Field, QRat};
use qmat_core::uq;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (v.to_string(),))?.unbind())
}

fn report_to_py(py: Python<'_>, r: &Report) -> PyResult<Py<PyAny>> {
    to_py(py, &serde_json::to_value(r).map_err(err)?)
}

fn rational(q0: &str) -> PyResult<BigRational> {
    parse_rational(q0).ok_or_else(|| err(format!("'{q0}' is not a rational number")))
}

/// The differential calculus on the quantum matrix space `Mat(m, n)`.
#[pyclass(frozen)]
struct Calculus {
    inner: OmegaPresentation,
}

impl Calculus {
    fn parse(&self, expr: &str) -> PyResult<NCPoly<QRat>> {
        let amb = Ambient::Calculus {
            m: self.inner.m(),
            n: self.inner.n(),
        };
        parse_poly(expr, amb).map_err(err)
    }
}

#[pymethods]
impl Calculus {
    #[new]
    fn new(m: usize, n: usize) -> PyResult<Self> {
        Ok(Calculus {
            inner: build_calculus(m, n, 2).map_err(err)?,
        })
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    fn rules(&self) -> Vec<String> {
        self.inner.calculus.rules.render()
    }

    fn nf(&self, expr: &str) -> PyResult<String> {
        Ok(self.inner.calculus.nf(&self.parse(expr)?).map_err(err)?.to_string())
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        let p = self.inner.calculus.mul(&self.parse(a)?, &self.parse(b)?).map_err(err)?;
        Ok(p.to_string())
    }

    /// `d` applied to an expression, in normal form.
    fn d(&self, expr: &str) -> PyResult<String> {
        let p = self.inner.calculus.nf(&self.parse(expr)?).map_err(err)?;
        Ok(self.inner.calculus.differential(&p).map_err(err)?.to_string())
    }

    /// Normal monomials of polynomial degree `d` and form degree `k`.
    fn basis(&self, d: usize, k: usize) -> Vec<String> {
        self.inner.calculus.basis(d, k).iter().map(|w| w.to_string()).collect()
    }

    /// Rows `(d, k, normal_words, oracle_dim, classical)`.
    fn flatness(&self, maxdeg: usize) -> PyResult<Vec<(usize, usize, usize, usize, usize)>> {
        let rows = self.inner.flatness_table(maxdeg).map_err(err)?;
        Ok(rows
            .into_iter()
            .map(|r| (r.d, r.k, r.normal_words, r.oracle_dim, r.classical))
            .collect())
    }

    fn differential_report(&self, py: Python<'_>, maxdeg: usize) -> PyResult<Py<PyAny>> {
        report_to_py(py, &self.inner.differential_report(maxdeg).map_err(err)?)
    }

    fn __repr__(&self) -> String {
        format!("Calculus(m={}, n={})", self.inner.m(), self.inner.n())
    }
}

/// The derived U_q sl_{m+n} action on the calculus.
#[pyclass(frozen)]
struct HiddenAction {
    inner: CoreAction,
}

#[pymethods]
impl HiddenAction {
    /// Derives the table, at exactly `L` when given, otherwise raising the
    /// cutoff from 3 until every entry is rank certified.
    #[new]
    #[pyo3(signature = (m, n, L=None))]
    #[allow(non_snake_case)]
    fn new(py: Python<'_>, m: usize, n: usize, L: Option<usize>) -> PyResult<Self> {
        let inner = py
            .detach(|| match L {
                Some(l) => CoreAction::build_at(m, n, l),
                None => CoreAction::build(m, n, 3),
            })
            .map_err(err)?;
        Ok(HiddenAction { inner })
    }

    #[getter(L)]
    fn max_len(&self) -> usize {
        self.inner.table().max_len
    }

    fn table(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &self.inner.table().to_json())
    }

    /// Applies a U_q element (an expression in E_i, F_i, K_i, Ki_i) to an
    /// element of the calculus.
    fn act(&self, element: &str, expr: &str) -> PyResult<String> {
        let c = self.inner.action.calculus();
        let amb = Ambient::Calculus { m: c.m, n: c.n };
        let u = parse_poly(element, amb).map_err(err)?;
        if u.terms().any(|(w, _)| w.letters().iter().any(|g| !g.is_uq())) {
            return Err(err("the acting element must be a polynomial in E, F, K, Ki"));
        }
        let p = c.nf(&parse_poly(expr, amb).map_err(err)?).map_err(err)?;
        Ok(self.inner.action.act(&u, &p).map_err(err)?.to_string())
    }

    fn verify(&self, py: Python<'_>, maxdeg: usize) -> PyResult<Py<PyAny>> {
        let r = py.detach(|| self.inner.verify(maxdeg)).map_err(err)?;
        report_to_py(py, &r)
    }

    fn verify_equivariance(&self, py: Python<'_>, maxdeg: usize) -> PyResult<Py<PyAny>> {
        let r = py.detach(|| self.inner.verify_equivariance(maxdeg)).map_err(err)?;
        report_to_py(py, &r)
    }

    fn verify_grading(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        report_to_py(py, &self.inner.verify_grading())
    }

    /// Re-runs the module-algebra suite with `q` replaced by a rational.
    fn specialize(&self, py: Python<'_>, q0: &str, maxdeg: usize) -> PyResult<Py<PyAny>> {
        let q0 = rational(q0)?;
        let r = py.detach(|| self.inner.specialize(&q0, maxdeg)).map_err(err)?;
        report_to_py(py, &r)
    }
}

#[pyfunction]
#[pyo3(name = "rhat")]
#[allow(non_snake_case)]
fn rhat_report(py: Python<'_>, N: usize) -> PyResult<Py<PyAny>> {
    if N < 2 {
        return Err(err("N must be at least 2"));
    }
    report_to_py(py, &RHat::unchecked(N).report())
}

/// `<func, element>` for a polynomial in `u[i,j]` and a U_q sl_N element.
#[pyfunction]
#[allow(non_snake_case)]
fn pair(N: usize, func: &str, element: &str) -> PyResult<String> {
    let amb = Ambient::Uq { n: N };
    let p = parse_poly(func, amb).map_err(err)?;
    let u = parse_poly(element, amb).map_err(err)?;
    let mut v = QRat::zero();
    for (w, c) in u.terms() {
        v = v.add(&c.mul(&pairing::pair(&p, w)));
    }
    Ok(v.to_string())
}

#[pyfunction]
#[allow(non_snake_case)]
fn minor(N: usize, cols: Vec<usize>) -> PyResult<String> {
    Ok(Minor::new(cols, N).map_err(err)?.expand().to_string())
}

#[pyfunction]
#[allow(non_snake_case)]
fn embed_check(py: Python<'_>, m: usize, n: usize, L: usize, D: usize) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| pairing::embed_check(m, n, L, D)).map_err(err)?;
    report_to_py(py, &r)
}

#[pyfunction]
fn uniqueness_probe(py: Python<'_>, m: usize, n: usize, l1: usize, l2: usize) -> PyResult<Py<PyAny>> {
    let r = py.detach(|| action::uniqueness_probe(m, n, l1, l2)).map_err(err)?;
    report_to_py(py, &r)
}

#[pyfunction]
#[allow(non_snake_case)]
fn verify_hopf(py: Python<'_>, N: usize, k_max: usize) -> PyResult<Py<PyAny>> {
    report_to_py(py, &py.detach(|| uq::verify_hopf_in_rep(N, k_max)))
}

/// Runs the command line in-process; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::run(std::iter::once("qmat".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
pub fn qmat(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Calculus>()?;
    m.add_class::<HiddenAction>()?;
    m.add_function(wrap_pyfunction!(rhat_report, m)?)?;
    m.add_function(wrap_pyfunction!(pair, m)?)?;
    m.add_function(wrap_pyfunction!(minor, m)?)?;
    m.add_function(wrap_pyfunction!(embed_check, m)?)?;
    m.add_function(wrap_pyfunction!(uniqueness_probe, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hopf, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
