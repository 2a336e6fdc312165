//! Python bindings: scenarios, modules and the main checks.

use std::collections::BTreeMap;
use std::sync::Arc;

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use ema_weyl::cli::expr::{eval, parse_expr};
use ema_weyl::cli::scenario::{self, Scenario as Inner};
use ema_weyl::cli::{max_dim_from_env, run_captured};
use ema_weyl::homology::{candidate_functions, characterization_battery, ext1_ladder};
use ema_weyl::repmod::{
    canonical_transversal, common_algebra, composition_length, is_isomorphic, multiplicities, transport,
    FiniteModule,
};
use ema_weyl::weyl::{head, twisted_weyl, WeylOptions};
use ema_weyl::EmaError;

create_exception!(ema_weyl, MathError, PyException);

fn to_py(e: EmaError) -> PyErr {
    if e.is_input_error() {
        PyValueError::new_err(e.to_string())
    } else {
        MathError::new_err(e.to_string())
    }
}

fn options() -> PyResult<WeylOptions> {
    Ok(WeylOptions::with_max_dim(max_dim_from_env().map_err(to_py)?))
}

/// A validated scenario file.
#[pyclass(frozen, module = "ema_weyl")]
struct Scenario {
    inner: Arc<Inner>,
    digest: String,
}

fn build(text: &str) -> PyResult<(Option<Inner>, Vec<scenario::Check>)> {
    scenario::build(scenario::parse(text).map_err(to_py)?).map_err(to_py)
}

#[pymethods]
impl Scenario {
    /// Parses JSON scenario text; raises ValueError listing failed validators.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let (sc, checks) = build(text)?;
        match sc {
            Some(sc) => Ok(Scenario { inner: Arc::new(sc), digest: scenario::digest(text) }),
            None => {
                let failed: Vec<String> =
                    checks.iter().filter(|c| !c.ok).map(|c| format!("{}: {}", c.name, c.detail)).collect();
                Err(PyValueError::new_err(format!("scenario rejected: {}", failed.join("; "))))
            }
        }
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| PyValueError::new_err(format!("{path}: {e}")))?;
        Self::from_json(&text)
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.file.name.clone()
    }

    #[getter]
    fn digest(&self) -> String {
        self.digest.clone()
    }

    fn functions(&self) -> Vec<String> {
        self.inner.psi.keys().cloned().collect()
    }

    /// W_Γ(ψ) on the canonical transversal for equivariant ψ, else W(ψ).
    fn weyl(&self, name: &str) -> PyResult<Module> {
        self.module(&format!("W({name})"))
    }

    fn irreducible(&self, name: &str) -> PyResult<Module> {
        self.module(&format!("V({name})"))
    }

    /// Evaluates a module expression such as "head(W(a)) + V(b) * W(c)".
    fn module(&self, expr: &str) -> PyResult<Module> {
        let e = parse_expr(expr).map_err(to_py)?;
        let m = eval(&self.inner, &e, &options()?).map_err(to_py)?;
        Ok(Module { scenario: self.inner.clone(), inner: m })
    }

    /// Equivariant irreducible classes on the named orbits, as strings.
    fn irreps(&self, bound: i64) -> PyResult<Vec<String>> {
        let s = &self.inner.setting;
        let found = candidate_functions(&self.inner.orbit_representatives(), &s.g.datum, &s.gamma, bound, None)
            .map_err(to_py)?;
        Ok(found.iter().map(|p| p.to_string()).collect())
    }

    /// Runs the characterization battery for equivariant ψ against W_Γ(ψ)
    /// or the given module.
    #[pyo3(signature = (name, bound=None, rungs=3, module=None))]
    fn battery<'py>(
        &self,
        py: Python<'py>,
        name: &str,
        bound: Option<i64>,
        rungs: usize,
        module: Option<&Module>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let s = &self.inner.setting;
        let psi = self.inner.psi(name).map_err(to_py)?;
        let bound = bound.unwrap_or_else(|| psi.values.values().flat_map(|w| w.coords.clone()).max().unwrap_or(0));
        let m = match module {
            Some(m) => m.inner.clone(),
            None => twisted_weyl(s, psi, &canonical_transversal(psi, &s.gamma), &options()?).map_err(to_py)?.module,
        };
        let report = characterization_battery(s, &m, psi, bound, rungs).map_err(to_py)?;
        let out = PyDict::new(py);
        out.set_item("pass", report.pass)?;
        let entries = report
            .entries
            .iter()
            .map(|e| {
                let d = PyDict::new(py);
                d.set_item("phi", e.phi.to_string())?;
                d.set_item("height", e.height.to_string())?;
                d.set_item("hom", e.hom_dim)?;
                d.set_item("ext", e.ext.iter().map(|(_, k)| *k).collect::<Vec<_>>())?;
                Ok(d)
            })
            .collect::<PyResult<Vec<_>>>()?;
        out.set_item("entries", entries)?;
        Ok(out)
    }
}

/// A finite-dimensional module over a truncated or invariant algebra.
#[pyclass(frozen, module = "ema_weyl")]
struct Module {
    scenario: Arc<Inner>,
    inner: FiniteModule,
}

impl Module {
    fn paired(&self, other: &Module) -> PyResult<(FiniteModule, FiniteModule)> {
        let s = &self.scenario.setting;
        let target = common_algebra(s, &self.inner.algebra, &other.inner.algebra).map_err(to_py)?;
        Ok((
            transport(&self.inner, &target).map_err(to_py)?,
            transport(&other.inner, &target).map_err(to_py)?,
        ))
    }

    fn wrap(&self, m: FiniteModule) -> Module {
        Module { scenario: self.scenario.clone(), inner: m }
    }
}

#[pymethods]
impl Module {
    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim
    }

    #[getter]
    fn algebra(&self) -> String {
        self.inner.algebra.key()
    }

    /// Action matrices, one per algebra basis element, entries as strings.
    fn actions(&self) -> Vec<Vec<Vec<String>>> {
        self.inner
            .actions
            .iter()
            .map(|a| (0..a.rows).map(|r| (0..a.cols).map(|c| a[(r, c)].to_string()).collect()).collect())
            .collect()
    }

    fn is_representation(&self) -> bool {
        self.inner.check_representation()
    }

    /// Composition multiplicities keyed by the printed ψ.
    fn multiplicities(&self) -> PyResult<BTreeMap<String, usize>> {
        let table = multiplicities(&self.scenario.setting, &self.inner).map_err(to_py)?;
        Ok(table.iter().map(|(p, n)| (p.to_string(), *n)).collect())
    }

    fn composition_length(&self) -> PyResult<usize> {
        Ok(composition_length(&multiplicities(&self.scenario.setting, &self.inner).map_err(to_py)?))
    }

    fn head(&self) -> PyResult<Module> {
        Ok(self.wrap(head(&self.scenario.setting, &self.inner).map_err(to_py)?))
    }

    fn is_isomorphic(&self, other: &Module) -> PyResult<bool> {
        let (a, b) = self.paired(other)?;
        is_isomorphic(&a, &b).map_err(to_py)
    }

    /// dim Ext¹(self, other) on `rungs` successive truncations.
    #[pyo3(signature = (other, rungs=3))]
    fn ext1(&self, other: &Module, rungs: usize) -> PyResult<Vec<usize>> {
        let (a, b) = self.paired(other)?;
        let ladder = ext1_ladder(&self.scenario.setting, &a, &b, rungs).map_err(to_py)?;
        Ok(ladder.rungs.into_iter().map(|(_, d)| d).collect())
    }

    fn __add__(&self, other: &Module) -> PyResult<Module> {
        let (a, b) = self.paired(other)?;
        Ok(self.wrap(a.direct_sum(&b).map_err(to_py)?))
    }

    fn __mul__(&self, other: &Module) -> PyResult<Module> {
        let (a, b) = self.paired(other)?;
        Ok(self.wrap(a.tensor(&b).map_err(to_py)?))
    }

    fn __repr__(&self) -> String {
        format!("<Module dim={} over {}>", self.inner.dim, self.inner.algebra.key())
    }
}

/// Runs the command-line interface; returns (exit code, stdout + stderr).
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String) {
    let (code, out, err) = run_captured(std::iter::once("ema-weyl".to_string()).chain(args));
    (code, out + &err)
}

#[pymodule]
#[pyo3(name = "ema_weyl")]
fn ema_weyl_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Scenario>()?;
    m.add_class::<Module>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("MathError", m.py().get_type::<MathError>())?;
    Ok(())
}
